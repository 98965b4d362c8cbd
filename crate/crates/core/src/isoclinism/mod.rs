//! Isoclinism of algebras and of central extensions.

pub mod extension;
pub mod morphism;
pub mod properties;
pub mod reduce;
pub mod search;

pub use extension::{
    is_stem, make_extension, pullback_extension, stem_criterion, CentralExtension, Pullback,
    StemCriterion,
};
pub use morphism::{is_isoclinic_morphism, ExtensionMorphism, IsoclinicMorphismReport};
pub use properties::{verify_witness_properties, WitnessProperties};
pub use reduce::{stem_reduce, StemReduction};
pub use search::{
    find_extension_isoclinism, find_isoclinism, invert_witness, verify_extension_isoclinism,
    verify_frames, verify_isoclinism, Frame, IsoclinismWitness, WitnessKind,
};

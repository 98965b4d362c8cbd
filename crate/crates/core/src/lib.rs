//! Finite multiplicative Lie algebras given by tables: axiom validation,
//! ideals and quotients, morphisms, non-abelian tensor squares, and
//! isoclinism of algebras and central extensions.

pub mod algebra;
pub mod axioms;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod isoclinism;
pub mod morph;
pub mod structure;
pub mod suite;
pub mod tensor;

pub use algebra::{ElementId, FiniteMla, GroupTable, MlaTables, UncheckedMla, DEFAULT_MAX_ORDER};
pub use axioms::{validate_axioms, validate_axioms_parallel, Axiom, ValidationReport, Violation};
pub use error::{MlaError, Result};
pub use morph::MlaMap;
pub use structure::SubSet;

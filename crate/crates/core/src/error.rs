use thiserror::Error;

use crate::axioms::ValidationReport;

#[derive(Debug, Error)]
pub enum MlaError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("{what} bound exceeded: order {order} > {bound}")]
    BoundExceeded {
        what: &'static str,
        order: usize,
        bound: usize,
    },

    #[error("coset enumeration did not close within {budget} live rows")]
    BudgetExceeded { budget: usize },

    #[error("star table violates the axioms: {0}")]
    AxiomFailure(ValidationReport),

    #[error("subset is not an ideal: {0}")]
    NotIdeal(String),

    #[error("subset is not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("kernel is not central: {0}")]
    NotCentral(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not a morphism of extensions: {0}")]
    NotAMorphism(String),

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("corpus entry {path}: {source}")]
    CorpusEntry {
        path: String,
        #[source]
        source: Box<MlaError>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = MlaError> = std::result::Result<T, E>;

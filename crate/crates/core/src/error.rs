use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    ShapeMismatch { context: String, expected: usize, found: usize },

    #[error("composite of consecutive differentials is nonzero at degree {degree:?}, entry ({row}, {col})")]
    CompositionNonzero { degree: Option<i64>, row: usize, col: usize },

    #[error("Tate weight floor must be <= 0, got {0}")]
    FloorTooHigh(i64),

    #[error("generator {0} has nonzero degree; a discrete Lie algebra is required")]
    NotDiscrete(String),

    #[error("axiom failure: {0}")]
    AxiomFailure(String),

    #[error("not a morphism of dg Lie algebras: {0}")]
    NotLieMorphism(String),

    #[error("invalid representation: {0}")]
    RepInvalid(String),

    #[error("input failed validation: {0}")]
    NotValidated(String),

    #[error("truncation overflow: {0}")]
    Overflow(String),
}

/// A failed structural check, naming the law and where it first fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

impl Violation {
    pub fn new(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation { law: law.into(), witness: witness.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at {}", self.law, self.witness)
    }
}

impl std::error::Error for Violation {}

//! Error types shared across the crate.

use thiserror::Error;

/// Which cap a reflection or localisation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    MaxDim,
    MaxIter,
}

impl std::fmt::Display for CapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapKind::MaxDim => write!(f, "max-dim"),
            CapKind::MaxIter => write!(f, "max-iter"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown arrow: {0}")]
    UnknownArrow(String),

    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("irreducible words persist at degree cap {cap}; cannot certify finite dimension")]
    NotAdmissibleUpToCap { cap: usize },

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("resolution cap {cap} exceeded")]
    ResolutionCapExceeded { cap: usize },

    #[error("projective dimension too large: {0}")]
    ProjectiveDimensionTooLarge(String),

    /// A reflection (and hence a localisation) hit a cap. The dimension
    /// history is kept so a divergence can be inspected; the localised ring
    /// may genuinely be infinite-dimensional.
    #[error("cap exceeded ({which}) while reflecting ({context}); dimension history {history:?}")]
    CapExceeded {
        which: CapKind,
        history: Vec<usize>,
        context: String,
    },

    #[error("not a finite ring epimorphism")]
    NotFinite,

    /// Theorem-A style preconditions that failed, by name.
    #[error("hypotheses not met: {0:?}")]
    HypothesesNotMet(Vec<String>),

    /// Recollement hypothesis failures, by name.
    #[error("hypothesis failed: {0:?}")]
    HypothesisFailed(Vec<String>),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

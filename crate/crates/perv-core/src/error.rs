//! Errors for the diagram category, split by severity class.
//!
//! `Input` means the data is structurally broken (wrong shapes, counts,
//! unparsable entries) — the caller supplied garbage. `Axiom` means the data
//! is structurally fine but fails a validation axiom; `NotMorphism` likewise
//! for commutation. The command-line layer maps the first class to usage
//! errors and the second to property-violation exits, so the distinction is
//! load-bearing.

use exact_linalg::LinalgError;
use thiserror::Error;

/// Which axiom of the diagram category failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// `id + var∘can` must be an automorphism of the named branch component.
    BranchMonodromy { branch: usize },
    /// `id + Σ can∘var` must be an automorphism of the vanishing component.
    VanishingMonodromy,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::BranchMonodromy { branch } => write!(
                f,
                "branch monodromy axiom (id + var∘can invertible) at branch {branch}"
            ),
            Axiom::VanishingMonodromy => {
                write!(f, "vanishing monodromy axiom (id + Σ can∘var invertible)")
            }
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum PervError {
    /// Structurally malformed input: shape/count/ring/parse problems.
    #[error("input error: {0}")]
    Input(String),

    /// Structurally valid data violating a validation axiom.
    #[error("{axiom} is violated: {detail}")]
    Axiom { axiom: Axiom, detail: String },

    /// Component maps that do not commute with the structure maps.
    #[error("not a morphism: {0}")]
    NotMorphism(String),

    /// An internal algebraic step failed; indicates a bug, surfaced honestly.
    #[error("algebra error: {0}")]
    Algebra(String),

    /// The requested computation is not defined over the given ring
    /// (e.g. characteristic cycles need field coefficients).
    #[error("unsupported ring: {0}")]
    Unsupported(String),
}

impl From<LinalgError> for PervError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotWellDefined { .. } => PervError::Input(e.to_string()),
            other => PervError::Input(other.to_string()),
        }
    }
}

impl PervError {
    /// True for the class of errors that mean "your input file or request is
    /// broken" rather than "your object fails validation".
    pub fn is_input_error(&self) -> bool {
        matches!(self, PervError::Input(_) | PervError::Unsupported(_))
    }
}

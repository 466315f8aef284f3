use thiserror::Error;

use crate::group::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("cannot read Cayley table `{path}`: {reason}")]
    File { path: String, reason: String },

    #[error("invalid Cayley table: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("trace of `{rep}` varies over conjugacy class {class} by {spread:.3e}")]
    ClassInconsistent { rep: String, class: usize, spread: f64 },

    #[error("eigenspace splitting stalled on a block of dimension {dim} after {attempts} attempts")]
    Convergence { dim: usize, attempts: usize },

    #[error("representation `{0}` is not irreducible")]
    TauNotIrreducible(String),

    #[error("duplicate (equivalent) irreducible `{0}` in isotype set")]
    DuplicateTau(String),

    #[error("multiplicity {value:.6} is not within tolerance of an integer")]
    NonIntegralMultiplicity { value: f64 },

    #[error("character test passed but no unitary intertwiner found (residual {residual:.3e})")]
    WitnessFailure { residual: f64 },

    #[error("group algebra elements use different normalising subgroups or groups")]
    MeasureMismatch,

    #[error("isotype V(F) is zero")]
    EmptyIsotype,

    #[error("operator does not commute with the representation; worst element {element} (residual {residual:.3e})")]
    NotCommuting { element: usize, residual: f64 },

    #[error("operator commutes but is not of the form 1 (x) S (residual {residual:.3e})")]
    LargeResidual { residual: f64 },

    #[error("candidate representation does not occur in the host (Hom space is zero)")]
    EmptyHomSpace,

    #[error("beta^dagger alpha is not scalar (deviation {deviation:.3e})")]
    NotScalar { deviation: f64 },

    #[error("representation `{0}` is not irreducible")]
    NotIrreducible(String),

    #[error("factorization stage `{stage}` exceeded tolerance (residual {residual:.3e})")]
    FactorizationResidual { stage: &'static str, residual: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0}")]
    Invalid(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

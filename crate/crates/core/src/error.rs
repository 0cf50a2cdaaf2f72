use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    Dimension {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A dense solve met a pivot below the singularity tolerance.
    #[error("matrix is singular to working precision (pivot {pivot:.3e})")]
    SingularMatrix { pivot: f64 },

    /// The constraint fields lost linear independence.
    #[error("constraint fields are rank deficient: {0}")]
    RankDeficient(String),

    #[error("non-finite value from {context} at component {component}")]
    NonFinite {
        context: &'static str,
        component: usize,
    },

    #[error("Newton iteration stalled after {iterations} iterations (residual {residual:.3e})")]
    NewtonDivergence { residual: f64, iterations: usize },

    /// The stage Jacobian is singular, i.e. the index-1 condition failed
    /// at a visited state.
    #[error("index-1 condition violated: stage system singular (pivot {pivot:.3e})")]
    IndexViolation { pivot: f64 },

    #[error("step {step} failed: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    /// A RATTLE multiplier projection (position or velocity level) failed.
    #[error("{phase} projection failed: {source}")]
    ProjectionFailed {
        phase: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// A finite-difference probe of the flow map could not complete a step.
    #[error("perturbation of component {component} failed: {source}")]
    PerturbationFailed {
        component: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Error {
        Error::StepFailed {
            step,
            source: Box::new(self),
        }
    }
}

use thiserror::Error;

/// Errors produced by the shell model and its solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates its construction invariants.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Adaptive quadrature ran out of subdivisions before meeting tolerance.
    #[error(
        "quadrature did not converge on [{lower}, {upper}]: estimated error {error_estimate:e} \
         after {intervals} intervals (requested {tolerance:e})"
    )]
    QuadratureNonConvergence {
        lower: f64,
        upper: f64,
        error_estimate: f64,
        tolerance: f64,
        intervals: usize,
    },

    /// The two integral forms of the internal pressure disagree.
    #[error("pressure forms disagree: current-radius form {current_form}, reference-radius form {reference_form}")]
    DualFormMismatch { current_form: f64, reference_form: f64 },

    /// The requested pressure lies outside what the bracket can reach.
    #[error("no bracket: target pressure {target} Pa outside achievable range [{min}, {max}] Pa")]
    NoBracket { target: f64, min: f64, max: f64 },

    /// The root finder exhausted its iteration budget.
    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    RootNonConvergence { iterations: usize, residual: f64 },

    /// A correction command exceeds the mechanism's displacement envelope.
    #[error("displacement {displacement} m exceeds the ±{limit} m envelope")]
    Envelope { displacement: f64, limit: f64 },

    /// A per-actuator failure inside a batch solve.
    #[error("actuator {id}: {source}")]
    Actuator {
        id: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by iterative numerics rather than bad input.
    pub fn is_convergence_failure(&self) -> bool {
        match self {
            Error::QuadratureNonConvergence { .. }
            | Error::RootNonConvergence { .. }
            | Error::DualFormMismatch { .. } => true,
            Error::Actuator { source, .. } => source.is_convergence_failure(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

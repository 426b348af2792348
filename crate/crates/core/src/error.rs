use thiserror::Error;

/// Errors produced by the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function or problem description is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// A function evaluated to NaN or infinity.
    #[error("non-finite value {value} at t = {t}")]
    NonFinite { t: f64, value: f64 },

    /// `I - F` is numerically singular.
    #[error("singular system at pivot {pivot} (condition estimate {condition:e})")]
    Singular { pivot: usize, condition: f64 },

    /// An iterative routine hit its iteration cap.
    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    /// No closed-form antiderivative is known for the function.
    #[error("no closed-form reference for {0}")]
    Unsupported(String),

    /// Adaptive integration could not continue.
    #[error("integration failed at t = {t} (step size {step:e})")]
    IntegrationFailure { t: f64, step: f64, last_value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

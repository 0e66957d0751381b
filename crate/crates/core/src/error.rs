use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} lies outside the domain [{1}, {2}]")]
    OutsideDomain(f64, f64, f64),

    #[error("length mismatch: expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("function not resolved to tolerance {tol:e} with {points} points")]
    NotResolved { tol: f64, points: usize },

    #[error("no convergence after {iterations} iterations (defect {defect:e}, error {error:e})")]
    NoConvergence {
        iterations: usize,
        error: f64,
        defect: f64,
    },

    #[error("pole at x = {0} inside the approximation domain")]
    PoleOnDomain(f64),

    #[error("singular linear system")]
    Singular,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("{0}")]
    Unresolvable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

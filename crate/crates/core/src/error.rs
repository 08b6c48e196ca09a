use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deformation parameter tau = {tau} is invalid: {reason}")]
    InvalidDeformation { tau: f64, reason: &'static str },

    #[error("level index {index} exceeds n_max = {n_max}")]
    LevelOutOfRange { index: usize, n_max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("theta = N*tau = {theta} lies outside the feasible window ({lower}, {upper})")]
    Infeasible { theta: f64, lower: f64, upper: f64 },

    #[error(
        "no root of the matching equation for N = {big_n}, 2k+3 = {target} in the feasible window"
    )]
    NoRootInWindow { big_n: u32, target: u32 },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("eigenvalue {index} is degenerate within {gap:e}")]
    DegenerateEigenvalue { index: usize, gap: f64 },

    #[error("grid too coarse: level {level} changes by {estimate:e} between h and h/2 (tolerance {tolerance:e})")]
    GridTooCoarse {
        level: usize,
        estimate: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

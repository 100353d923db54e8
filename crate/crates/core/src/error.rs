use thiserror::Error;

/// Errors raised by the numerical routines and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {value} outside domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    #[error("no sign change on [{a}, {b}]: f(a) = {fa}, f(b) = {fb}")]
    Bracket { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("integration diverged: step size underflow at t = {at}")]
    Divergence { at: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("non-positive pivot at s = {s} with {nodes} nodes; increase the node count")]
    Resolution { s: f64, nodes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

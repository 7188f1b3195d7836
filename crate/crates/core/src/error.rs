use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ideals from different ring instances: {0} vs {1}")]
    MixedInstances(String, String),
    #[error("{0} is not an ideal of {1}")]
    InvalidIdeal(String, String),
    #[error("product {0} leaves the window (max degree {1})")]
    Overflow(String, u32),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid operation: {0}")]
    InvalidOp(String),
    #[error("parse error at `{input}`: {msg}")]
    Parse { input: String, msg: String },
    #[error("window has {ideals} ideals, enumeration guard is {limit} (search space up to ~{estimate:.1e} maps)")]
    WindowTooLarge { ideals: usize, limit: usize, estimate: f64 },
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

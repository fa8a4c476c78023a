use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument lies outside the domain of the operation
    /// (negative probability, bad normalization, fidelity outside [0, 1]).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input such as a bit string of the wrong length.
    #[error("usage error: {0}")]
    Usage(String),

    /// A dense enumeration or block size exceeds the supported bound.
    #[error("capacity error: {what} = {got} exceeds the supported range {min}..={max}")]
    Capacity {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },

    /// Post-selection succeeded with probability zero.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

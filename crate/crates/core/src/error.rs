use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbounded region: {0}")]
    UnboundedRegion(String),
    #[error("the image of the disk contains infinity")]
    UnboundedImage,
    #[error("indeterminate value: {0}")]
    Indeterminate(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("recomputed value disagrees: {0}")]
    Mismatch(String),
    #[error("contour passes through a zero (|Z| ratio {ratio:e} at q = {re}+{im}i)")]
    ContourThroughZero { re: f64, im: f64, ratio: f64 },
    #[error("no certificate found (best slack {best_slack:e})")]
    NotFound { best_slack: f64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

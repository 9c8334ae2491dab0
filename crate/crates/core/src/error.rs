use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid subsystem dimensions: {0}")]
    InvalidDims(String),
    #[error("digit {digit} out of range for subsystem {subsystem} (dimension {dim})")]
    DigitRange {
        subsystem: usize,
        digit: usize,
        dim: usize,
    },
    #[error("flat index {index} out of range for total dimension {total}")]
    IndexRange { index: usize, total: usize },
    #[error("incompatible dimensions: {0}")]
    Incompatible(String),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("trace {trace} deviates from 1")]
    Trace { trace: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },
    #[error("state vector is not normalized (squared norm {norm_sq})")]
    Normalization { norm_sq: f64 },
    #[error("invalid transpose: {0}")]
    InvalidTranspose(String),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NumericFailure { sweeps: usize, off_norm: f64 },
    #[error("out of scope: {0}")]
    Scope(String),
    #[error("parameter {name} = {value} out of range")]
    ParameterRange { name: &'static str, value: f64 },
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("family {0} is not a pure state")]
    NotPure(&'static str),
    #[error("state is not pure (largest eigenvalue {largest})")]
    Purity { largest: f64 },
}

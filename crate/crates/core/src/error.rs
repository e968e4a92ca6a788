use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible.
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A matrix or vector was requested with a zero dimension.
    EmptyDimension,
    /// A NaN or infinite entry was supplied.
    NonFinite { index: usize },
    /// Least squares found a pivot that is too small.
    RankDeficient { column: usize },
    /// OMP hit a rank-deficient selected submatrix.
    DegenerateSupport { support: Vec<usize> },
    /// Input to `sym_eig` is not symmetric.
    Asymmetric { max_deviation: f64 },
    /// Jacobi sweeps did not converge.
    NoConvergence { sweeps: usize },
    /// Column cannot be normalized.
    ZeroColumn { column: usize },
    /// Column is not unit norm.
    NotUnitNorm { column: usize, norm: f64 },
    /// Index out of range, repeated, or not increasing.
    InvalidIndex { index: usize, bound: usize },
    /// Sparse signal has an explicit zero value.
    ZeroValue { index: usize },
    /// An index set that must be nonempty was empty.
    EmptySupport,
    /// Sparsity level outside its allowed range.
    InvalidSparsity { k: usize, max: usize },
    /// Operation needs at least two columns.
    TooFewColumns { n: usize },
    /// Brute force would enumerate too many supports.
    CombinatorialCap { supports: u64, cap: u64 },
    /// Welch bound requested with `n <= m`.
    WelchUndefined { m: usize, n: usize },
    /// Isometry constant too large for the requested inequality.
    DeltaTooLarge { delta: f64 },
    /// The boundary construction did not find exactly one zero eigenvalue.
    Construction { zero_eigenvalues: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, expected, found } => write!(
                f,
                "{op}: dimension mismatch, expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::EmptyDimension => write!(f, "dimensions must be positive"),
            Error::NonFinite { index } => write!(f, "non-finite entry at flat index {index}"),
            Error::RankDeficient { column } => {
                write!(f, "matrix is rank deficient at column {column}")
            }
            Error::DegenerateSupport { support } => {
                write!(f, "selected columns {support:?} are linearly dependent")
            }
            Error::Asymmetric { max_deviation } => {
                write!(f, "matrix is not symmetric (max deviation {max_deviation:e})")
            }
            Error::NoConvergence { sweeps } => {
                write!(f, "Jacobi iteration did not converge in {sweeps} sweeps")
            }
            Error::ZeroColumn { column } => write!(f, "column {column} has zero norm"),
            Error::NotUnitNorm { column, norm } => {
                write!(f, "column {column} has norm {norm}, expected 1")
            }
            Error::InvalidIndex { index, bound } => {
                write!(f, "index {index} is invalid (bound {bound}, must be distinct and increasing)")
            }
            Error::ZeroValue { index } => write!(f, "signal value at index {index} is zero"),
            Error::EmptySupport => write!(f, "index set must be nonempty"),
            Error::InvalidSparsity { k, max } => {
                write!(f, "sparsity {k} outside allowed range 1..={max}")
            }
            Error::TooFewColumns { n } => write!(f, "need at least two columns, got {n}"),
            Error::CombinatorialCap { supports, cap } => write!(
                f,
                "brute force needs {supports} supports (cap {cap}); use a smaller instance"
            ),
            Error::WelchUndefined { m, n } => {
                write!(f, "Welch bound needs n > m (got m = {m}, n = {n})")
            }
            Error::DeltaTooLarge { delta } => {
                write!(f, "isometry constant {delta} is not below 1")
            }
            Error::Construction { zero_eigenvalues } => write!(
                f,
                "boundary Gram matrix has {zero_eigenvalues} zero eigenvalues, expected exactly 1"
            ),
        }
    }
}

impl core::error::Error for Error {}

//! Numerical tolerances, all in one place.
//!
//! Relative tolerances are scaled by the quantity named in their doc comment.

/// Maximum `|S[i,j] - S[j,i]|` accepted as "symmetric" by [`crate::densela::sym_eig`].
pub const SYMMETRY: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius mass is below this times `||S||_F`.
pub const JACOBI_OFFDIAG: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// A Householder pivot `|R[j,j]|` below this times the largest pivot is rank deficient.
pub const RANK_PIVOT: f64 = 1e-12;

/// Allowed deviation of a sensing-matrix column norm from one.
pub const UNIT_NORM: f64 = 1e-10;

/// A raw column with norm at or below this cannot be normalized.
pub const ZERO_COLUMN: f64 = 1e-12;

/// Eigenvalues below this times the largest eigenvalue count as zero.
pub const ZERO_EIGENVALUE: f64 = 1e-10;

/// Relative accuracy (times `max(1, ||x||_2)`) required for exact recovery.
pub const EXACT_RECOVERY: f64 = 1e-8;

/// Correlations within this fraction of the largest one are treated as tied;
/// ties go to the lowest column index.
pub const ARGMAX_TIE: f64 = 1e-12;

/// Optional OMP early exit: stop once `||r||_2 <= RESIDUAL_EXIT * ||y||_2`.
pub const RESIDUAL_EXIT: f64 = 1e-12;

/// Measured coherence within this distance below `1/(2K-1)` is reported as
/// sitting on the boundary, where the incoherence condition does not hold.
pub const COHERENCE_BOUNDARY: f64 = 1e-12;

/// Slack used when checking the inequality chains.
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// Slack used for the first-iteration correlation bounds.
pub const CORRELATION_SLACK: f64 = 1e-10;

/// Largest `C(n, K)` the brute-force isometry constant will enumerate.
pub const RIC_MAX_SUPPORTS: u64 = 200_000;

/// Largest sparsity accepted by the boundary construction.
pub const COUNTEREXAMPLE_MAX_K: usize = 64;

/// Threshold below which signal values are rejected as "not really nonzero"
/// by random signal generators.
pub const MIN_SIGNAL_MAGNITUDE: f64 = 1e-6;

//! Orthogonal matching pursuit together with the numerical machinery needed to
//! audit its mutual-incoherence recovery guarantee.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! * [`densela`]: a small dense linear-algebra kernel (products, Householder
//!   least squares, cyclic Jacobi eigendecomposition, spectral/max norms).
//! * [`sensing`]: unit-norm sensing matrices, sparse signals, coherence, Gram
//!   blocks, brute-force restricted isometry constants and seeded ensembles.
//! * [`omp`]: orthogonal matching pursuit with a full per-iteration trace.
//! * [`guarantees`]: coherence/RIP predicates, checks of the supporting
//!   inequalities and the boundary counterexample at `mu = 1/(2K-1)`.
//!
//! All tolerances live in [`tol`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod densela;
pub mod error;
pub mod guarantees;
pub mod omp;
pub mod sensing;
pub mod tol;

pub use densela::{Matrix, Vector};
pub use error::{Error, Result};
pub use guarantees::{
    check_lemma2, check_lemma3_decomposition, construct_counterexample,
    construct_counterexample_with, demonstrate_failure,
    evaluate_guarantees, CounterexampleBundle, CounterexampleShape, FailureReport,
    GuaranteeReport, Lemma2Check, Lemma3Decomposition, RecoveryOutcome, RicStatus,
};
pub use omp::{
    exact_recovery, first_iteration_diagnostics, omp_recover, omp_recover_with, ExactRecovery,
    FirstIterationBounds, IterationRecord, OffSupportBound, OmpOptions, RecoveryResult,
};
pub use sensing::{
    coherence, gaussian_ensemble, gram, normalize_columns, ric_bruteforce, welch_bound,
    CoherenceReport, GaussianSource, SensingMatrix, SparseSignal,
};

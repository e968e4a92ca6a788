use alloc::vec::Vec;

use super::vec_norm;
use crate::densela::{gram_of, max_norm, sym_eig, Matrix, Vector};
use crate::error::{Error, Result};
use crate::omp::{omp_recover, RecoveryResult};
use crate::sensing::{coherence, SensingMatrix, SparseSignal};
use crate::tol;

/// Row layout of the constructed matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CounterexampleShape {
    /// `(2K-1) x 2K`: the row belonging to the zero eigenvalue is dropped.
    #[default]
    Trimmed,
    /// `2K x 2K` with a trailing zero row.
    Square,
}

/// A boundary matrix with `mu = 1/(2K-1)` and two `K`-sparse signals it cannot tell apart.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleBundle {
    pub k: usize,
    pub phi: SensingMatrix,
    /// Eigenvalues of the target Gram matrix, descending.
    pub eigenvalues: Vector,
    /// Number of eigenvalues above the zero threshold.
    pub rank: usize,
    pub mu: f64,
    /// Null vector of `Phi`, unit norm, positive entries.
    pub z: Vector,
    /// First `K` coordinates of `z`.
    pub x1: SparseSignal,
    /// Minus the last `K` coordinates of `z`, so that `z = x1 - x2`.
    pub x2: SparseSignal,
    /// `||Phi' Phi - G||_max`
    pub gram_error: f64,
    /// `||Phi z||_2`
    pub null_residual: f64,
    /// `||Phi x1 - Phi x2||_2`
    pub ambiguity_gap: f64,
}

/// `2K x 2K` matrix with unit diagonal and every off-diagonal `-1/(2K-1)`.
pub fn boundary_gram(k: usize) -> Result<Matrix> {
    if k == 0 {
        return Err(Error::InvalidSparsity { k, max: tol::COUNTEREXAMPLE_MAX_K });
    }
    let off = -1.0 / (2.0 * k as f64 - 1.0);
    Matrix::from_fn(2 * k, 2 * k, |i, j| if i == j { 1.0 } else { off })
}

pub fn construct_counterexample(k: usize) -> Result<CounterexampleBundle> {
    construct_counterexample_with(k, CounterexampleShape::Trimmed)
}

/// Factors the boundary Gram matrix as `G = U L U'`, takes
/// `Phi = sqrt(L) U'` and splits the null vector into two `K`-sparse halves.
pub fn construct_counterexample_with(k: usize, shape: CounterexampleShape) -> Result<CounterexampleBundle> {
    if k == 0 || k > tol::COUNTEREXAMPLE_MAX_K {
        return Err(Error::InvalidSparsity { k, max: tol::COUNTEREXAMPLE_MAX_K });
    }
    let n = 2 * k;
    let g = boundary_gram(k)?;
    let eig = sym_eig(&g)?;
    let largest = eig.values[0];
    let zero_cut = tol::ZERO_EIGENVALUE * largest;
    let rank = eig.values.iter().filter(|&&v| v >= zero_cut).count();
    let zero_eigenvalues = n - rank;
    if zero_eigenvalues != 1 {
        return Err(Error::Construction { zero_eigenvalues });
    }

    let rows = match shape {
        CounterexampleShape::Trimmed => rank,
        CounterexampleShape::Square => n,
    };
    let phi = Matrix::from_fn(rows, n, |i, j| {
        if i < rank {
            libm::sqrt(eig.values[i]) * eig.vectors.get(j, i)
        } else {
            0.0
        }
    })?;
    let phi = SensingMatrix::new(phi)?;

    let mut z: Vec<f64> = eig.vectors.column(n - 1).into_vec();
    if z.iter().sum::<f64>() < 0.0 {
        z.iter_mut().for_each(|v| *v = -*v);
    }
    let x1 = SparseSignal::new(n, (0..k).collect(), z[..k].to_vec())?;
    let x2 = SparseSignal::new(n, (k..n).collect(), z[k..].iter().map(|v| -v).collect())?;
    let z = Vector::new(z)?;

    let gram_error = max_norm(&gram_of(phi.phi()).sub(&g)?);
    let null_residual = phi.phi().mul_vec(&z)?.norm();
    let y1 = phi.measure(&x1)?;
    let y2 = phi.measure(&x2)?;
    let ambiguity_gap = y1.sub(&y2)?.norm();
    let mu = coherence(&phi)?.mu;

    Ok(CounterexampleBundle {
        k,
        phi,
        eigenvalues: eig.values,
        rank,
        mu,
        z,
        x1,
        x2,
        gram_error,
        null_residual,
        ambiguity_gap,
    })
}

/// What OMP returned for one of the two measurements.
#[derive(Debug, Clone, PartialEq)]
pub enum RecoveryOutcome {
    RecoveredX1(RecoveryResult),
    RecoveredX2(RecoveryResult),
    Neither(RecoveryResult),
    /// OMP stopped on a dependent selection.
    Failed(Error),
}

impl RecoveryOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            RecoveryOutcome::RecoveredX1(_) => "x1",
            RecoveryOutcome::RecoveredX2(_) => "x2",
            RecoveryOutcome::Neither(_) => "neither",
            RecoveryOutcome::Failed(_) => "failed",
        }
    }

    pub fn result(&self) -> Option<&RecoveryResult> {
        match self {
            RecoveryOutcome::RecoveredX1(r) | RecoveryOutcome::RecoveredX2(r) | RecoveryOutcome::Neither(r) => Some(r),
            RecoveryOutcome::Failed(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureReport {
    pub k: usize,
    /// `||Phi x1 - Phi x2||_2`
    pub measurement_gap: f64,
    /// Gap within [`tol::INEQUALITY_SLACK`]: no method can separate the two signals.
    pub indistinguishable: bool,
    /// OMP run on `Phi x1`.
    pub from_x1: RecoveryOutcome,
    /// OMP run on `Phi x2`.
    pub from_x2: RecoveryOutcome,
    pub x1_recovered: bool,
    pub x2_recovered: bool,
}

impl FailureReport {
    pub fn at_least_one_unrecovered(&self) -> bool {
        !(self.x1_recovered && self.x2_recovered)
    }
}

/// Runs OMP on both measurements of a boundary bundle and classifies the outputs.
pub fn demonstrate_failure(bundle: &CounterexampleBundle) -> FailureReport {
    let phi = &bundle.phi;
    let run = |x: &SparseSignal| -> RecoveryOutcome {
        let y = match phi.measure(x) {
            Ok(y) => y,
            Err(e) => return RecoveryOutcome::Failed(e),
        };
        match omp_recover(phi, &y, bundle.k) {
            Ok(r) if matches_signal(&r, &bundle.x1) => RecoveryOutcome::RecoveredX1(r),
            Ok(r) if matches_signal(&r, &bundle.x2) => RecoveryOutcome::RecoveredX2(r),
            Ok(r) => RecoveryOutcome::Neither(r),
            Err(e) => RecoveryOutcome::Failed(e),
        }
    };
    let from_x1 = run(&bundle.x1);
    let from_x2 = run(&bundle.x2);
    let measurement_gap = match (phi.measure(&bundle.x1), phi.measure(&bundle.x2)) {
        (Ok(a), Ok(b)) => a.sub(&b).map(|d| d.norm()).unwrap_or(f64::INFINITY),
        _ => f64::INFINITY,
    };
    let x1_recovered = matches!(from_x1, RecoveryOutcome::RecoveredX1(_));
    let x2_recovered = matches!(from_x2, RecoveryOutcome::RecoveredX2(_));
    FailureReport {
        k: bundle.k,
        measurement_gap,
        indistinguishable: measurement_gap <= tol::INEQUALITY_SLACK,
        from_x1,
        from_x2,
        x1_recovered,
        x2_recovered,
    }
}

fn matches_signal(r: &RecoveryResult, x: &SparseSignal) -> bool {
    if r.support != x.support() {
        return false;
    }
    let err: Vec<f64> = x
        .to_dense()
        .iter()
        .zip(r.estimate.iter())
        .map(|(a, b)| a - b)
        .collect();
    let worst = err.iter().fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
    worst <= tol::EXACT_RECOVERY * vec_norm(x.values()).max(1.0)
}

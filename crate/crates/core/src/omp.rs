//! Orthogonal matching pursuit.
//!
//! Each of the `K` iterations runs four steps on the current residual
//! `r^{k-1}` (with `r^0 = y` and an empty support):
//!
//! 1. identify `t^k = argmax_j |<r^{k-1}, phi_j>|` over all `n` columns,
//! 2. augment `T^k = T^{k-1} + {t^k}`,
//! 3. estimate `x_{T^k} = argmin ||y - Phi_{T^k} x||_2`,
//! 4. update `r^k = y - Phi_{T^k} x_{T^k}`.
//!
//! Ties in step 1 go to the lowest column index. Correlations within
//! [`tol::ARGMAX_TIE`] of the maximum count as tied, so rounding noise cannot
//! reorder columns whose correlations are equal in exact arithmetic.

use alloc::vec::Vec;

use crate::densela::{least_squares, Vector};
use crate::error::{Error, Result};
use crate::sensing::{coherence, SensingMatrix, SparseSignal};
use crate::tol;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OmpOptions {
    /// Stop before `K` iterations once `||r||_2 <= tol::RESIDUAL_EXIT * ||y||_2`.
    pub early_exit: bool,
}

/// Everything one OMP iteration computed.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationRecord {
    /// 1-based iteration index.
    pub k: usize,
    /// `|<r^{k-1}, phi_j>|` for every column `j`.
    pub correlations: Vector,
    pub selected: usize,
    /// `T^k` in selection order.
    pub support_so_far: Vec<usize>,
    /// Least-squares coefficients aligned with `support_so_far`.
    pub estimate: Vector,
    pub residual: Vector,
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecoveryResult {
    /// Final support, ascending.
    pub support: Vec<usize>,
    /// Full-length estimate, zero off the support.
    pub estimate: Vector,
    pub trace: Vec<IterationRecord>,
    pub residual_norm: f64,
    /// Max difference between the output re-solve on the final support and
    /// the last iteration's estimate (zero in exact arithmetic).
    pub output_discrepancy: f64,
}

impl RecoveryResult {
    /// Selected indices in the order they were picked.
    pub fn selection_order(&self) -> Vec<usize> {
        self.trace.iter().map(|r| r.selected).collect()
    }
}

/// OMP with default options (exactly `k` iterations).
pub fn omp_recover(phi: &SensingMatrix, y: &Vector, k: usize) -> Result<RecoveryResult> {
    omp_recover_with(phi, y, k, OmpOptions::default())
}

pub fn omp_recover_with(
    phi: &SensingMatrix,
    y: &Vector,
    k: usize,
    options: OmpOptions,
) -> Result<RecoveryResult> {
    let (m, n) = (phi.m(), phi.n());
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            op: "omp_recover",
            expected: (m, 1),
            found: (y.len(), 1),
        });
    }
    let max_k = m.min(n);
    if k == 0 || k > max_k {
        return Err(Error::InvalidSparsity { k, max: max_k });
    }

    let y_norm = y.norm();
    let mut residual = y.clone();
    let mut support: Vec<usize> = Vec::with_capacity(k);
    let mut trace: Vec<IterationRecord> = Vec::with_capacity(k);

    for iteration in 1..=k {
        let correlations = phi.abs_correlations(&residual)?;
        let selected = identify(&correlations, &support);
        support.push(selected);

        let sub = phi.phi().select_columns(&support)?;
        let estimate = least_squares(&sub, y).map_err(|e| match e {
            Error::RankDeficient { .. } => Error::DegenerateSupport { support: support.clone() },
            other => other,
        })?;
        residual = y.sub(&sub.mul_vec(&estimate)?)?;
        let residual_norm = residual.norm();

        trace.push(IterationRecord {
            k: iteration,
            correlations,
            selected,
            support_so_far: support.clone(),
            estimate,
            residual: residual.clone(),
            residual_norm,
        });

        if options.early_exit && residual_norm <= tol::RESIDUAL_EXIT * y_norm {
            break;
        }
    }

    // Output step: least squares over the final support as a set.
    let mut final_support = support.clone();
    final_support.sort_unstable();
    let sub = phi.phi().select_columns(&final_support)?;
    let coefficients = least_squares(&sub, y)
        .map_err(|_| Error::DegenerateSupport { support: final_support.clone() })?;
    let mut estimate = alloc::vec![0.0; n];
    for (&j, &c) in final_support.iter().zip(coefficients.iter()) {
        estimate[j] = c;
    }

    let last = trace.last().expect("at least one iteration");
    let output_discrepancy = last
        .support_so_far
        .iter()
        .zip(last.estimate.iter())
        .map(|(&j, &c)| libm::fabs(estimate[j] - c))
        .fold(0.0, f64::max);
    let residual_norm = y.sub(&sub.mul_vec(&coefficients)?)?.norm();

    Ok(RecoveryResult {
        support: final_support,
        estimate: Vector::new(estimate)?,
        trace,
        residual_norm,
        output_discrepancy,
    })
}

/// Lowest-index column within the tie band of the largest correlation.
///
/// A previously selected column can only reach the band when the residual is
/// numerically zero; in that case the best unselected column is taken so
/// that supports stay distinct.
fn identify(correlations: &Vector, selected: &[usize]) -> usize {
    let c = correlations.as_slice();
    let best = c.iter().fold(0.0f64, |acc, v| acc.max(*v));
    let floor = best - tol::ARGMAX_TIE * best;
    if let Some(j) = (0..c.len()).find(|&j| c[j] >= floor && !selected.contains(&j)) {
        return j;
    }
    let mut pick = None;
    for j in (0..c.len()).filter(|j| !selected.contains(j)) {
        match pick {
            Some(p) if c[j] <= c[p] => {}
            _ => pick = Some(j),
        }
    }
    pick.expect("k <= n leaves an unselected column")
}

/// Outcome of running OMP on `y = Phi x` for a known signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecovery {
    /// Support matches and `max |x_hat - x| <= tol::EXACT_RECOVERY * max(1, ||x||_2)`.
    pub recovered: bool,
    pub max_error: f64,
    pub result: RecoveryResult,
}

pub fn exact_recovery(phi: &SensingMatrix, x: &SparseSignal) -> Result<ExactRecovery> {
    let y = phi.measure(x)?;
    let result = omp_recover(phi, &y, x.sparsity())?;
    let truth = x.to_dense();
    let max_error = result.estimate.sub(&truth)?.max_abs();
    let recovered = result.support == x.support()
        && max_error <= tol::EXACT_RECOVERY * x.norm().max(1.0);
    Ok(ExactRecovery { recovered, max_error, result })
}

/// Off-support half of [`FirstIterationBounds`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OffSupportBound {
    /// `max_{t not in T} |<phi_t, y>|`
    pub max: f64,
    /// `sqrt(K) mu ||x_T||_2`
    pub bound: f64,
}

/// First-iteration correlation bounds for `y = Phi x`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FirstIterationBounds {
    pub mu: f64,
    pub k: usize,
    /// `(1 - (K-1) mu) ||x_T||_2 / sqrt(K)`
    pub lower: f64,
    /// `(K-1) mu >= 1`: the lower bound says nothing.
    pub lower_vacuous: bool,
    /// `max_i |<phi_i, y>|`
    pub max_corr: f64,
    /// `None` when the support covers every column.
    pub offsupport: Option<OffSupportBound>,
}

impl FirstIterationBounds {
    pub fn lower_holds(&self) -> bool {
        self.max_corr >= self.lower - tol::CORRELATION_SLACK
    }

    pub fn offsupport_holds(&self) -> bool {
        self.offsupport.is_none_or(|o| o.max <= o.bound + tol::CORRELATION_SLACK)
    }

    /// The guaranteed on-support correlation beats every possible off-support one.
    pub fn separated(&self) -> bool {
        let bound = self.offsupport.map_or(0.0, |o| o.bound);
        self.lower > bound
    }
}

pub fn first_iteration_diagnostics(phi: &SensingMatrix, x: &SparseSignal) -> Result<FirstIterationBounds> {
    let mu = coherence(phi)?.mu;
    let k = x.sparsity();
    let kf = k as f64;
    let x_norm = x.norm();
    let y = phi.measure(x)?;
    let corr = phi.abs_correlations(&y)?;

    let factor = 1.0 - (kf - 1.0) * mu;
    let lower = factor * x_norm / libm::sqrt(kf);
    let max_corr = corr.max_abs();
    let offsupport = (0..phi.n())
        .filter(|j| x.support().binary_search(j).is_err())
        .map(|j| corr[j])
        .reduce(f64::max)
        .map(|max| OffSupportBound { max, bound: libm::sqrt(kf) * mu * x_norm });

    Ok(FirstIterationBounds {
        mu,
        k,
        lower,
        lower_vacuous: factor <= 0.0,
        max_corr,
        offsupport,
    })
}

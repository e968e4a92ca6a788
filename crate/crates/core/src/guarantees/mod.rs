//! Recovery conditions and numerical checks of the inequalities behind them.
//!
//! * [`evaluate_guarantees`]: the coherence condition `mu < 1/(2K-1)`, the
//!   isometry constants `delta_K`, `delta_{K+1}` and the two RIP conditions
//!   `delta_{K+1} < 1/(3 sqrt K)` and `delta_{K+1} < 1/(sqrt K + 1)`.
//! * [`check_lemma2`]: `(1-delta)||u|| <= ||Phi_I' Phi_I u|| <= (1+delta)||u||`.
//! * [`check_lemma3_decomposition`]: `Phi_T' Phi_T = (1-mu) I + A` with
//!   `||A||_max <= mu` and the resulting bound `1 + (K-1) mu`.
//! * [`construct_counterexample`] / [`demonstrate_failure`]: a matrix with
//!   `mu = 1/(2K-1)` on which two different `K`-sparse signals produce the
//!   same measurements.

mod counterexample;

use crate::densela::{max_norm, norm2, spectral_norm, Matrix, Vector};
use crate::error::{Error, Result};
use crate::sensing::{coherence, gram, ric_bruteforce, validate_index_set, SensingMatrix};
use crate::tol;

pub use counterexample::{
    boundary_gram, construct_counterexample, construct_counterexample_with, demonstrate_failure,
    CounterexampleBundle, CounterexampleShape, FailureReport, RecoveryOutcome,
};

/// `1 / (2K - 1)`
pub fn coherence_threshold(k: usize) -> f64 {
    1.0 / (2.0 * k as f64 - 1.0)
}

/// Whether a measured coherence satisfies `mu < 1/(2K-1)`.
///
/// Coherence is only known to rounding accuracy, so values within
/// [`tol::COHERENCE_BOUNDARY`] below the threshold are treated as lying on
/// it, where the condition fails.
pub fn incoherence_condition(mu: f64, k: usize) -> bool {
    k >= 1 && mu < coherence_threshold(k) - tol::COHERENCE_BOUNDARY
}

/// `delta_{K+1} < 1 / (3 sqrt K)`
pub fn rip_condition_davenport(delta_k_plus_1: f64, k: usize) -> bool {
    delta_k_plus_1 < 1.0 / (3.0 * libm::sqrt(k as f64))
}

/// `delta_{K+1} < 1 / (sqrt K + 1)`
pub fn rip_condition_wang_shim(delta_k_plus_1: f64, k: usize) -> bool {
    delta_k_plus_1 < 1.0 / (libm::sqrt(k as f64) + 1.0)
}

/// Whether the brute-force isometry constants were computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RicStatus {
    NotRequested,
    Computed,
    /// `C(n, K)` exceeds the enumeration cap, or `K > n`.
    Unavailable,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GuaranteeReport {
    pub k: usize,
    pub mu: f64,
    pub mu_threshold: f64,
    pub theorem1_holds: bool,
    pub ric: RicStatus,
    pub delta_bruteforce: Option<f64>,
    pub delta_k_plus_1: Option<f64>,
    pub rip_davenport_holds: Option<bool>,
    pub rip_wang_shim_holds: Option<bool>,
    /// `(K-1) mu - delta_K`; nonnegative up to rounding.
    pub lemma3_slack: Option<f64>,
}

pub fn evaluate_guarantees(phi: &SensingMatrix, k: usize, with_ric: bool) -> Result<GuaranteeReport> {
    if k == 0 {
        return Err(Error::InvalidSparsity { k, max: phi.n() });
    }
    let mu = coherence(phi)?.mu;
    let mut report = GuaranteeReport {
        k,
        mu,
        mu_threshold: coherence_threshold(k),
        theorem1_holds: incoherence_condition(mu, k),
        ric: if with_ric { RicStatus::Unavailable } else { RicStatus::NotRequested },
        delta_bruteforce: None,
        delta_k_plus_1: None,
        rip_davenport_holds: None,
        rip_wang_shim_holds: None,
        lemma3_slack: None,
    };
    if !with_ric {
        return Ok(report);
    }

    match ric_bruteforce(phi, k) {
        Ok(delta) => {
            report.ric = RicStatus::Computed;
            report.delta_bruteforce = Some(delta);
            report.lemma3_slack = Some((k as f64 - 1.0) * mu - delta);
        }
        Err(Error::CombinatorialCap { .. } | Error::InvalidSparsity { .. }) => return Ok(report),
        Err(e) => return Err(e),
    }
    match ric_bruteforce(phi, k + 1) {
        Ok(delta) => {
            report.delta_k_plus_1 = Some(delta);
            report.rip_davenport_holds = Some(rip_condition_davenport(delta, k));
            report.rip_wang_shim_holds = Some(rip_condition_wang_shim(delta, k));
        }
        Err(Error::CombinatorialCap { .. } | Error::InvalidSparsity { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Both sides of the two-sided Gram bound for one `(I, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Check {
    /// `||Phi_I' Phi_I u||_2`
    pub value: f64,
    /// `(1 - delta) ||u||_2`
    pub lower: f64,
    /// `(1 + delta) ||u||_2`
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// `delta` must be `delta_{|I|}` and below one.
pub fn check_lemma2(phi: &SensingMatrix, indices: &[usize], u: &Vector, delta: f64) -> Result<Lemma2Check> {
    if delta.is_nan() || delta >= 1.0 {
        return Err(Error::DeltaTooLarge { delta });
    }
    let g = gram(phi, indices)?;
    let value = g.mul_vec(u)?.norm();
    let u_norm = u.norm();
    let lower = (1.0 - delta) * u_norm;
    let upper = (1.0 + delta) * u_norm;
    Ok(Lemma2Check {
        value,
        lower,
        upper,
        lower_ok: value >= lower - tol::INEQUALITY_SLACK,
        upper_ok: value <= upper + tol::INEQUALITY_SLACK,
    })
}

/// `Phi_T' Phi_T = (1 - mu) I + A` and the spectral bound it yields.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Decomposition {
    /// Global coherence of `Phi`.
    pub mu: f64,
    pub a: Matrix,
    /// `||A||_max`; at most `mu`, equal to it when the coherence pair lies in `T`.
    pub a_maxnorm: f64,
    /// `1 + (K-1) mu`
    pub bound: f64,
    /// `||Phi_T' Phi_T||_2`
    pub gram_norm: f64,
    pub within_bound: bool,
    pub coherence_pair_inside: bool,
}

pub fn check_lemma3_decomposition(phi: &SensingMatrix, support: &[usize]) -> Result<Lemma3Decomposition> {
    validate_index_set(support, phi.n())?;
    let report = coherence(phi)?;
    let mu = report.mu;
    let g = gram(phi, support)?;
    let k = support.len();
    let shift = Matrix::identity(k).scale(1.0 - mu);
    let a = g.sub(&shift)?;
    let a_maxnorm = max_norm(&a);
    let bound = 1.0 + (k as f64 - 1.0) * mu;
    let gram_norm = spectral_norm(&g);
    let (p, q) = report.argpair;
    Ok(Lemma3Decomposition {
        mu,
        a,
        a_maxnorm,
        bound,
        gram_norm,
        within_bound: gram_norm <= bound + tol::INEQUALITY_SLACK,
        coherence_pair_inside: support.contains(&p) && support.contains(&q),
    })
}

pub(crate) fn vec_norm(v: &[f64]) -> f64 {
    norm2(v)
}

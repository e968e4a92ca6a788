//! Sensing matrices and sparse signals, plus the matrix-level quantities the
//! recovery guarantees are stated in: coherence, Gram blocks and restricted
//! isometry constants.

mod ric;
mod rng;

use alloc::vec::Vec;

use crate::densela::{dot, gram_of, matmul, norm2, Matrix, Vector};
use crate::error::{Error, Result};
use crate::tol;

pub use ric::{binomial, ric_bruteforce, ric_bruteforce_capped};
pub use rng::{splitmix64, GaussianSource};

/// `m x n` measurement matrix whose columns have unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SensingMatrix {
    phi: Matrix,
}

impl SensingMatrix {
    /// Wraps `phi`, rejecting it unless every column norm is within
    /// [`tol::UNIT_NORM`] of one. Use [`normalize_columns`] to rescale.
    pub fn new(phi: Matrix) -> Result<Self> {
        for j in 0..phi.cols() {
            let norm = norm2(&phi.column_vec(j));
            if libm::fabs(norm - 1.0) > tol::UNIT_NORM {
                return Err(Error::NotUnitNorm { column: j, norm });
            }
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn into_matrix(self) -> Matrix {
        self.phi
    }

    /// Number of measurements.
    pub fn m(&self) -> usize {
        self.phi.rows()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.phi.cols()
    }

    pub fn column(&self, j: usize) -> Vector {
        self.phi.column(j)
    }

    /// `y = Phi x`
    pub fn measure(&self, x: &SparseSignal) -> Result<Vector> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                op: "measure",
                expected: (self.n(), 1),
                found: (x.n(), 1),
            });
        }
        let mut y = alloc::vec![0.0; self.m()];
        for (&j, &v) in x.support().iter().zip(x.values()) {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi += self.phi.get(i, j) * v;
            }
        }
        Vector::new(y)
    }

    /// Correlations `|<v, phi_j>|` for every column.
    pub fn abs_correlations(&self, v: &Vector) -> Result<Vector> {
        let c = self.phi.tr_mul_vec(v)?;
        Vector::new(c.iter().map(|x| libm::fabs(*x)).collect())
    }
}

/// Exactly `K`-sparse vector in `R^n`, stored as its support and the values on it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SparseSignal {
    n: usize,
    support: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSignal {
    /// Support must be nonempty, strictly increasing and below `n`; values
    /// must be finite and nonzero.
    pub fn new(n: usize, support: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if support.len() != values.len() {
            return Err(Error::DimensionMismatch {
                op: "SparseSignal::new",
                expected: (support.len(), 1),
                found: (values.len(), 1),
            });
        }
        for (pos, &idx) in support.iter().enumerate() {
            if idx >= n || (pos > 0 && support[pos - 1] >= idx) {
                return Err(Error::InvalidIndex { index: idx, bound: n });
            }
        }
        for (&idx, &v) in support.iter().zip(&values) {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: idx });
            }
            if v == 0.0 {
                return Err(Error::ZeroValue { index: idx });
            }
        }
        Ok(Self { n, support, values })
    }

    /// Collects the nonzero entries of a dense vector.
    pub fn from_dense(x: &[f64]) -> Result<Self> {
        let (support, values) = x
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i, *v))
            .unzip();
        Self::new(x.len(), support, values)
    }

    /// Random signal on `n` coordinates with `k` nonzeros: support uniform
    /// without replacement, values standard normal redrawn while
    /// `|v| <` [`tol::MIN_SIGNAL_MAGNITUDE`].
    pub fn random(source: &mut GaussianSource, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidSparsity { k, max: n });
        }
        let support = source.sample_indices(n, k);
        let values = (0..k)
            .map(|_| loop {
                let v = source.normal();
                if libm::fabs(v) >= tol::MIN_SIGNAL_MAGNITUDE {
                    break v;
                }
            })
            .collect();
        Self::new(n, support, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sparsity level `K = |T|`.
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `||x_T||_2`
    pub fn norm(&self) -> f64 {
        norm2(&self.values)
    }

    pub fn to_dense(&self) -> Vector {
        let mut x = alloc::vec![0.0; self.n];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            x[i] = v;
        }
        Vector::new(x).expect("n >= 1 and finite values")
    }
}

/// Mutual coherence of a sensing matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherenceReport {
    /// `max_{i != j} |<phi_i, phi_j>|` from pairwise column products.
    pub mu: f64,
    /// Lexicographically smallest pair attaining `mu` (to within [`tol::ARGMAX_TIE`]).
    pub argpair: (usize, usize),
    /// Same quantity computed from the off-diagonal of `Phi' Phi`.
    pub gram_offdiag_max: f64,
}

/// Rescales every column to unit Euclidean norm.
pub fn normalize_columns(raw: &Matrix) -> Result<SensingMatrix> {
    let norms: Vec<f64> = (0..raw.cols()).map(|j| norm2(&raw.column_vec(j))).collect();
    if let Some(column) = norms.iter().position(|&n| n <= tol::ZERO_COLUMN) {
        return Err(Error::ZeroColumn { column });
    }
    let phi = Matrix::from_fn(raw.rows(), raw.cols(), |i, j| raw.get(i, j) / norms[j])?;
    SensingMatrix::new(phi)
}

pub fn coherence(phi: &SensingMatrix) -> Result<CoherenceReport> {
    let n = phi.n();
    if n < 2 {
        return Err(Error::TooFewColumns { n });
    }
    let columns: Vec<Vec<f64>> = (0..n).map(|j| phi.phi().column_vec(j)).collect();
    let mut products = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            products.push(((i, j), libm::fabs(dot(&columns[i], &columns[j]))));
        }
    }
    let mu = products.iter().fold(0.0f64, |acc, (_, c)| acc.max(*c));
    // Pairs are in lexicographic order; near-ties count as ties.
    let floor = mu - tol::ARGMAX_TIE * mu;
    let argpair = products
        .iter()
        .find(|(_, c)| *c >= floor)
        .map(|(p, _)| *p)
        .expect("n >= 2");

    let full = matmul(&phi.phi().transpose(), phi.phi())?;
    let mut gram_offdiag_max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gram_offdiag_max = gram_offdiag_max.max(libm::fabs(full.get(i, j)));
            }
        }
    }
    Ok(CoherenceReport { mu, argpair, gram_offdiag_max })
}

/// `Phi_I' Phi_I` for a nonempty set of distinct column indices (any order).
pub fn gram(phi: &SensingMatrix, indices: &[usize]) -> Result<Matrix> {
    validate_index_set(indices, phi.n())?;
    Ok(gram_of(&phi.phi().select_columns(indices)?))
}

pub(crate) fn validate_index_set(indices: &[usize], n: usize) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::EmptySupport);
    }
    for (pos, &i) in indices.iter().enumerate() {
        if i >= n || indices[..pos].contains(&i) {
            return Err(Error::InvalidIndex { index: i, bound: n });
        }
    }
    Ok(())
}

/// Welch lower bound `sqrt((n - m) / (m (n - 1)))` on the coherence of any
/// `m x n` unit-norm frame.
pub fn welch_bound(m: usize, n: usize) -> Result<f64> {
    if m == 0 || n <= m {
        return Err(Error::WelchUndefined { m, n });
    }
    let (m, n) = (m as f64, n as f64);
    Ok(libm::sqrt((n - m) / (m * (n - 1.0))))
}

/// I.i.d. standard normal `m x n` matrix from `seed`, column-normalized.
pub fn gaussian_ensemble(m: usize, n: usize, seed: u64) -> Result<SensingMatrix> {
    gaussian_ensemble_from(&mut GaussianSource::from_seed(seed), m, n)
}

/// As [`gaussian_ensemble`], drawing from an existing source (row-major fill).
pub fn gaussian_ensemble_from(source: &mut GaussianSource, m: usize, n: usize) -> Result<SensingMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyDimension);
    }
    let raw: Vec<f64> = (0..m * n).map(|_| source.normal()).collect();
    normalize_columns(&Matrix::new(m, n, raw)?)
}

//! Shared helpers for integration tests: independent oracles and a planted
//! low-coherence ensemble.
#![allow(dead_code)]

use incoherence_core::densela::Matrix;
use incoherence_core::omp::RecoveryResult;
use incoherence_core::sensing::{GaussianSource, SensingMatrix};
use incoherence_core::Vector;

/// Entry-by-entry triple loop.
pub fn naive_matmul(a: &Matrix, b: &Matrix) -> Vec<f64> {
    let mut out = vec![0.0; a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0.0;
            for k in 0..a.cols() {
                s += a.get(i, k) * b.get(k, j);
            }
            out[i * b.cols() + j] = s;
        }
    }
    out
}

pub fn random_matrix(src: &mut GaussianSource, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| src.normal()).unwrap()
}

pub fn random_vector(src: &mut GaussianSource, len: usize) -> Vector {
    Vector::new((0..len).map(|_| src.normal()).collect()).unwrap()
}

pub fn random_unit_vector(src: &mut GaussianSource, len: usize) -> Vector {
    let v = random_vector(src, len);
    let n = v.norm();
    v.scale(1.0 / n)
}

/// Haar-distributed orthogonal matrix: modified Gram-Schmidt (applied twice)
/// on a Gaussian matrix, with column signs fixed by the projection.
pub fn random_orthogonal(src: &mut GaussianSource, n: usize) -> Vec<Vec<f64>> {
    let mut cols: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| src.normal()).collect()).collect();
    for j in 0..n {
        for _ in 0..2 {
            for p in 0..j {
                let d: f64 = cols[j].iter().zip(&cols[p]).map(|(a, b)| a * b).sum();
                let prev = cols[p].clone();
                for (x, q) in cols[j].iter_mut().zip(&prev) {
                    *x -= d * q;
                }
            }
        }
        let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|x| *x /= norm);
    }
    cols
}

/// Sylvester Hadamard matrix of order `n` (power of two), entries +-1.
pub fn hadamard(n: usize) -> Vec<Vec<f64>> {
    assert!(n.is_power_of_two());
    let mut h = vec![vec![1.0]];
    while h.len() < n {
        let s = h.len();
        let mut next = vec![vec![0.0; 2 * s]; 2 * s];
        for i in 0..s {
            for j in 0..s {
                next[i][j] = h[i][j];
                next[i][j + s] = h[i][j];
                next[i + s][j] = h[i][j];
                next[i + s][j + s] = -h[i][j];
            }
        }
        h = next;
    }
    h
}

/// Planted low-coherence sensing matrix:
///
/// * `n == m`: a random orthogonal matrix (`mu` at rounding level);
/// * `n == 2m`, `m` a power of two: `Q [I | H / sqrt(m)]` with a random
///   rotation `Q`, random column signs and a random column order
///   (`mu = 1/sqrt(m)` exactly).
///
/// Other shapes return `None`.
pub fn planted(m: usize, n: usize, seed: u64) -> Option<SensingMatrix> {
    let mut src = GaussianSource::from_seed(seed);
    let q = random_orthogonal(&mut src, m);
    let base: Vec<Vec<f64>> = if n == m {
        (0..m).map(|j| (0..m).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    } else if n == 2 * m && m.is_power_of_two() {
        let h = hadamard(m);
        let scale = 1.0 / (m as f64).sqrt();
        let mut cols: Vec<Vec<f64>> =
            (0..m).map(|j| (0..m).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        cols.extend((0..m).map(|j| (0..m).map(|i| h[i][j] * scale).collect::<Vec<f64>>()));
        cols
    } else {
        return None;
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = src.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let signs: Vec<f64> = (0..n).map(|_| if src.next_u64() & 1 == 0 { 1.0 } else { -1.0 }).collect();
    let phi = Matrix::from_fn(m, n, |i, j| {
        let col = &base[perm[j]];
        let rotated: f64 = (0..m).map(|k| q[k][i] * col[k]).sum();
        signs[j] * rotated
    })
    .unwrap();
    Some(incoherence_core::sensing::normalize_columns(&phi).unwrap())
}

/// OMP trace invariants; returns a description of the first violation.
pub fn check_trace(phi: &SensingMatrix, y: &Vector, k: usize, r: &RecoveryResult) -> Result<(), String> {
    let y_norm = y.norm();
    if r.trace.len() != k {
        return Err(format!("{} iterations, expected {k}", r.trace.len()));
    }
    let first = phi.abs_correlations(y).unwrap();
    if first != r.trace[0].correlations {
        return Err("first correlations are not taken against r^0 = y".into());
    }
    let mut prev_norm = y_norm;
    for (idx, rec) in r.trace.iter().enumerate() {
        if rec.k != idx + 1 || rec.support_so_far.len() != rec.k {
            return Err(format!("bad bookkeeping at iteration {}", idx + 1));
        }
        let mut sorted = rec.support_so_far.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != rec.k {
            return Err(format!("repeated selection at iteration {}", rec.k));
        }
        for &j in &rec.support_so_far {
            let c = rec.residual.dot(&phi.column(j)).unwrap().abs();
            if c > 1e-10 * y_norm {
                return Err(format!("residual not orthogonal to column {j} at iteration {}: {c:e}", rec.k));
            }
        }
        if rec.residual_norm > prev_norm * (1.0 + 1e-12) + 1e-14 * y_norm {
            return Err(format!("residual norm increased at iteration {}", rec.k));
        }
        prev_norm = rec.residual_norm;
    }
    Ok(())
}

use alloc::vec::Vec;

use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::tol;

/// Eigendecomposition `S = U diag(values) U'` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEig {
    /// Sorted descending.
    pub values: Vector,
    /// Orthogonal; column `i` pairs with `values[i]`.
    pub vectors: Matrix,
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps over every off-diagonal pair until the off-diagonal Frobenius mass
/// drops to [`tol::JACOBI_OFFDIAG`] times `||S||_F`, for at most
/// [`tol::JACOBI_MAX_SWEEPS`] sweeps. Eigenvalues come back in descending
/// order with the eigenvector columns permuted to match.
pub fn sym_eig(s: &Matrix) -> Result<SymEig> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch {
            op: "sym_eig",
            expected: (s.rows(), s.rows()),
            found: s.shape(),
        });
    }
    let max_deviation = s.asymmetry().unwrap_or(0.0);
    if max_deviation > tol::SYMMETRY {
        return Err(Error::Asymmetric { max_deviation });
    }

    let n = s.rows();
    // Work on the symmetrized copy so tiny asymmetries cannot bias rotations.
    let mut a: Vec<f64> = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (s.get(i, j) + s.get(j, i));
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = tol::JACOBI_OFFDIAG * s.frobenius_norm();

    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_mass(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.entries_mut(), n, p, q);
            }
        }
    }
    if !converged && off_diagonal_mass(&a, n) > threshold {
        return Err(Error::NoConvergence { sweeps: tol::JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = Vector::from_raw(order.iter().map(|&i| a[i * n + i]).collect());
    let vectors = v.select_columns(&order)?;
    Ok(SymEig { values, vectors })
}

fn off_diagonal_mass(a: &[f64], n: usize) -> f64 {
    let mut ssq = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                ssq += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(ssq)
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = if libm::fabs(theta) > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // A <- A J
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    // A <- J' A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    // V <- V J
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

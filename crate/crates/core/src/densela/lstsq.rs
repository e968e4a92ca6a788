use alloc::vec::Vec;

use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::tol;

/// Solves `min_x ||A x - b||_2` for a tall, full-column-rank `A` using
/// Householder triangularization.
///
/// Rank is judged on the diagonal of `R`: a pivot smaller than
/// [`tol::RANK_PIVOT`] times the largest pivot is reported as
/// [`Error::RankDeficient`] naming that column. Wide matrices are rank
/// deficient at column `rows`.
pub fn least_squares(a: &Matrix, b: &Vector) -> Result<Vector> {
    let (m, p) = a.shape();
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            op: "least_squares",
            expected: (m, 1),
            found: (b.len(), 1),
        });
    }
    if p > m {
        return Err(Error::RankDeficient { column: m });
    }

    // Column-major working copy; Householder vectors are applied in place.
    let mut cols: Vec<Vec<f64>> = (0..p).map(|j| a.column_vec(j)).collect();
    let mut rhs = b.as_slice().to_vec();
    let mut diag = alloc::vec![0.0; p];

    for j in 0..p {
        let x = &cols[j][j..];
        let norm = super::vector::norm2(x);
        if norm == 0.0 {
            diag[j] = 0.0;
            continue;
        }
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = x.to_vec();
        v[0] -= alpha;
        let vtv: f64 = v.iter().map(|t| t * t).sum();
        diag[j] = alpha;
        if vtv == 0.0 {
            continue;
        }
        let reflect = |target: &mut [f64]| {
            let s: f64 = v.iter().zip(target.iter()).map(|(vi, ti)| vi * ti).sum();
            let f = 2.0 * s / vtv;
            for (t, vi) in target.iter_mut().zip(&v) {
                *t -= f * vi;
            }
        };
        for col in cols.iter_mut().skip(j + 1) {
            reflect(&mut col[j..]);
        }
        reflect(&mut rhs[j..]);
        cols[j][j] = alpha;
        for t in cols[j][j + 1..].iter_mut() {
            *t = 0.0;
        }
    }

    let largest = diag.iter().fold(0.0f64, |acc, d| acc.max(libm::fabs(*d)));
    if largest == 0.0 {
        return Err(Error::RankDeficient { column: 0 });
    }
    if let Some(column) = diag
        .iter()
        .position(|d| libm::fabs(*d) < tol::RANK_PIVOT * largest)
    {
        return Err(Error::RankDeficient { column });
    }

    let mut x = alloc::vec![0.0; p];
    for i in (0..p).rev() {
        let mut s = rhs[i];
        for (k, xk) in x.iter().enumerate().skip(i + 1) {
            s -= cols[k][i] * xk;
        }
        x[i] = s / diag[i];
    }
    Ok(Vector::from_raw(x))
}

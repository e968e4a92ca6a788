//! Dense linear algebra: just enough for least squares, Gram spectra and the
//! norm inequalities used elsewhere in the crate.

mod eig;
mod lstsq;
mod matrix;
mod vector;

pub use eig::{sym_eig, SymEig};
pub use lstsq::least_squares;
pub use matrix::{gram_of, matmul, Matrix};
pub use vector::Vector;

pub(crate) use vector::{dot, norm2};

/// Largest singular value, `sqrt(lambda_max(A'A))`.
pub fn spectral_norm(a: &Matrix) -> f64 {
    let g = gram_of(a);
    match sym_eig(&g) {
        Ok(e) => libm::sqrt(e.values[0].max(0.0)),
        // Gram matrices are exactly symmetric; only non-convergence can land here.
        Err(_) => power_fallback(&g),
    }
}

/// Power iteration on a PSD matrix; only used if Jacobi fails to converge.
fn power_fallback(g: &Matrix) -> f64 {
    let n = g.rows();
    let mut v = Vector::from_raw(alloc::vec![1.0 / libm::sqrt(n as f64); n]);
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let w = g.mul_vec(&v).expect("square");
        let nw = w.norm();
        if nw == 0.0 {
            return 0.0;
        }
        lambda = nw;
        v = w.scale(1.0 / nw);
    }
    libm::sqrt(lambda)
}

/// `max_{i,j} |a_ij|`
pub fn max_norm(a: &Matrix) -> f64 {
    a.as_slice().iter().fold(0.0, |acc, v| acc.max(libm::fabs(*v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity_and_scalar() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]]).unwrap();
        assert_eq!(matmul(&Matrix::identity(3), &a).unwrap(), a);
        let p = matmul(&Matrix::from_rows(&[[2.0]]).unwrap(), &Matrix::from_rows(&[[3.0]]).unwrap()).unwrap();
        assert_eq!(p.as_slice(), &[6.0]);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(matmul(&a, &a), Err(crate::Error::DimensionMismatch { .. })));
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&Matrix::identity(4)) - 1.0).abs() < 1e-15);
        assert_eq!(spectral_norm(&Matrix::zeros(2, 3)), 0.0);
        let a = Matrix::from_rows(&[[0.0, 2.0], [0.0, 0.0]]).unwrap();
        assert!((spectral_norm(&a) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn max_norm_examples() {
        assert_eq!(max_norm(&Matrix::identity(3)), 1.0);
        assert_eq!(max_norm(&Matrix::from_rows(&[[-5.0, 2.0]]).unwrap()), 5.0);
        let mu = 0.2;
        let a = Matrix::from_rows(&[[mu, -0.15, 0.2], [-0.15, mu, 0.05], [0.2, 0.05, mu]]).unwrap();
        assert_eq!(max_norm(&a), mu);
    }

    #[test]
    fn gram_of_is_symmetric() {
        let a = Matrix::from_rows(&[[0.3, -1.7, 2.2], [1.1, 0.4, -0.9]]).unwrap();
        let g = gram_of(&a);
        assert_eq!(g.asymmetry(), Some(0.0));
        let direct = matmul(&a.transpose(), &a).unwrap();
        assert!(max_norm(&g.sub(&direct).unwrap()) < 1e-15);
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(Matrix::new(0, 2, alloc::vec![]), Err(crate::Error::EmptyDimension));
        assert!(Matrix::new(1, 2, alloc::vec![1.0]).is_err());
        assert_eq!(
            Matrix::new(1, 2, alloc::vec![1.0, f64::NAN]),
            Err(crate::Error::NonFinite { index: 1 })
        );
        assert_eq!(Vector::new(alloc::vec![]), Err(crate::Error::EmptyDimension));
    }
}

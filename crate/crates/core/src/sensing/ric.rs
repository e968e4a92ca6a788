use alloc::vec::Vec;

use super::SensingMatrix;
use crate::densela::{gram_of, sym_eig, Matrix};
use crate::error::{Error, Result};
use crate::tol;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Restricted isometry constant `delta_K` by exhaustive enumeration.
///
/// `delta_K = max_{|I| = K} max(lambda_max(G_I) - 1, 1 - lambda_min(G_I))`
/// with `G_I = Phi_I' Phi_I`. Supports smaller than `K` never do worse: the
/// spectrum of a principal submatrix is interlaced by that of the larger
/// one, so size exactly `K` already gives the max over `|I| <= K`.
pub fn ric_bruteforce(phi: &SensingMatrix, k: usize) -> Result<f64> {
    ric_bruteforce_capped(phi, k, tol::RIC_MAX_SUPPORTS)
}

/// [`ric_bruteforce`] with an explicit cap on `C(n, K)`.
pub fn ric_bruteforce_capped(phi: &SensingMatrix, k: usize, cap: u64) -> Result<f64> {
    let n = phi.n();
    if k == 0 || k > n {
        return Err(Error::InvalidSparsity { k, max: n });
    }
    let supports = binomial(n, k);
    if supports > cap {
        return Err(Error::CombinatorialCap { supports, cap });
    }

    let full = gram_of(phi.phi());
    let mut subset: Vec<usize> = (0..k).collect();
    let mut delta = 0.0f64;
    loop {
        let block = Matrix::from_fn(k, k, |a, b| full.get(subset[a], subset[b]))?;
        let eig = sym_eig(&block)?;
        let hi = eig.values[0];
        let lo = eig.values[k - 1];
        delta = delta.max(hi - 1.0).max(1.0 - lo);
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(delta)
}

/// Advances `subset` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::gaussian_ensemble;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn combinations_enumerated() {
        let mut s = alloc::vec![0, 1];
        let mut count = 1;
        while next_combination(&mut s, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
        assert_eq!(s, alloc::vec![3, 4]);
    }

    #[test]
    fn orthonormal_is_isometry() {
        let id = SensingMatrix::new(Matrix::identity(5)).unwrap();
        for k in 1..=5 {
            assert!(ric_bruteforce(&id, k).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn order_one_is_zero_for_unit_columns() {
        let s = gaussian_ensemble(4, 9, 2).unwrap();
        assert!(ric_bruteforce(&s, 1).unwrap() < 1e-14);
    }

    #[test]
    fn cap_and_range() {
        let s = gaussian_ensemble(4, 30, 2).unwrap();
        assert!(matches!(ric_bruteforce_capped(&s, 5, 1000), Err(Error::CombinatorialCap { .. })));
        assert!(matches!(ric_bruteforce(&s, 0), Err(Error::InvalidSparsity { .. })));
        assert!(matches!(ric_bruteforce(&s, 31), Err(Error::InvalidSparsity { .. })));
    }
}

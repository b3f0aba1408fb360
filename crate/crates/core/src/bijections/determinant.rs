//! The determinant formula for `|NN_{N;k}|` and its alternating recurrence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counting::{binomial_signed, raney, BigCount};
use crate::error::{Error, Result};

/// `M_{n;k} = (C((n−j)k+2, j−i+1))_{1≤i,j≤n}`.
pub fn path_matrix(n: usize, k: usize) -> Vec<Vec<BigInt>> {
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| binomial_signed(((n - j) * k + 2) as i64, j as i64 - i as i64 + 1))
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if m[p][p].is_zero() {
            match (p + 1..n).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `det M_{n;k}`, which counts `NN_{N;k}`.
pub fn determinant_count(n: usize, k: usize) -> Result<BigCount> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParams(format!("n={n}, k={k}: both must be positive")));
    }
    Ok(bareiss_determinant(path_matrix(n, k)))
}

/// `Σ_{i=1}^{n−1} (−1)^{i+1} C((n−i)k+2, i) Ran(n−i, k+1, 2)`, which
/// equals `Ran(n, k+1, 2)` for `n > 2`.
pub fn alternating_recurrence(n: usize, k: usize) -> Result<BigCount> {
    let mut total = BigInt::zero();
    for i in 1..n {
        let term = binomial_signed(((n - i) * k + 2) as i64, i as i64) * raney((n - i) as u64, k as i64 + 1, 2)?;
        if i % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        for k in 1..=5 {
            assert_eq!(determinant_count(1, k).unwrap(), BigInt::from(2));
        }
        assert_eq!(determinant_count(3, 2).unwrap(), BigInt::from(30));
        assert_eq!(alternating_recurrence(3, 2).unwrap(), BigInt::from(30));
        assert_eq!(determinant_count(4, 3).unwrap(), BigInt::from(340));
    }

    #[test]
    fn determinant_is_raney() {
        for n in 1..=8 {
            for k in 1..=4 {
                let r = raney(n as u64, k as i64 + 1, 2).unwrap();
                assert_eq!(determinant_count(n, k).unwrap(), r, "n={n} k={k}");
                if n > 2 {
                    assert_eq!(alternating_recurrence(n, k).unwrap(), r, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn bareiss_agrees_with_cofactors() {
        let m = |rows: &[[i64; 3]]| rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<_>>>();
        assert_eq!(bareiss_determinant(m(&[[0, 1, 2], [3, 4, 5], [6, 7, 9]])), BigInt::from(-3));
        assert_eq!(bareiss_determinant(m(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]])), BigInt::zero());
        assert_eq!(bareiss_determinant(m(&[[2, 0, 0], [0, 3, 0], [0, 0, 4]])), BigInt::from(24));
    }
}

//! Exact closed-form numerics.
//!
//! Everything here returns [`BigCount`]; divisions are performed on big
//! integers and checked for exactness, never through rationals or floats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed count.
pub type BigCount = BigInt;

/// Generalized binomial coefficient `C(top, bottom)` via the falling
/// factorial, so any integer `top` is allowed.
pub fn binomial(top: i64, bottom: u64) -> BigCount {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..bottom {
        num *= BigInt::from(top) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    // falling factorial over factorial is always integral
    num / den
}

/// Binomial with a possibly negative lower index; zero when `bottom < 0`.
pub fn binomial_signed(top: i64, bottom: i64) -> BigCount {
    if bottom < 0 {
        BigInt::zero()
    } else {
        binomial(top, bottom as u64)
    }
}

/// `num / den`, failing unless the division is exact.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::NonIntegral(format!("{num} / 0")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{num} / {den}")));
    }
    Ok(q)
}

/// Raney number `Ran(n, p, r) = r / (np + r) * C(np + r, n)`.
///
/// `p` and `r` may be negative. The value `r * C(np + r, n)` is formed first
/// and then divided by `np + r` with an exactness check.
pub fn raney(n: u64, p: i64, r: i64) -> Result<BigCount> {
    let top = (n as i64)
        .checked_mul(p)
        .and_then(|x| x.checked_add(r))
        .ok_or_else(|| Error::InvalidParams(format!("overflow in Ran({n},{p},{r})")))?;
    if top == 0 {
        return Err(Error::Pole { n, p, r });
    }
    let num = BigInt::from(r) * binomial(top, n);
    exact_div(&num, &BigInt::from(top))
}

/// Fuss–Catalan number `Ran(n, p, 1)`.
pub fn fuss_catalan(n: u64, p: i64) -> Result<BigCount> {
    raney(n, p, 1)
}

/// Checks `Ran(n,p,r+s) = Σ_i Ran(i,p,r) Ran(n-i,p,s)` exactly.
pub fn raney_convolution_check(n: u64, p: i64, r: i64, s: i64) -> Result<bool> {
    let lhs = raney(n, p, r + s)?;
    let mut rhs = BigInt::zero();
    for i in 0..=n {
        rhs += raney(i, p, r)? * raney(n - i, p, s)?;
    }
    Ok(lhs == rhs)
}

/// Checks `Σ_{n_1+…+n_r=n} Π Ran(n_i, b, a_i) = Ran(n, b, Σ a_i)` exactly.
pub fn multifold_convolution_check(n: u64, b: i64, parts: &[i64]) -> Result<bool> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty part list".into()));
    }
    let a: i64 = parts.iter().sum();
    let lhs = raney(n, b, a)?;
    let mut rhs = BigInt::zero();
    for comp in weak_compositions(n as usize, parts.len()) {
        let mut term = BigInt::one();
        for (&ni, &ai) in comp.iter().zip(parts) {
            term *= raney(ni as u64, b, ai)?;
        }
        rhs += term;
    }
    Ok(lhs == rhs)
}

/// All weak compositions of `total` into exactly `parts` nonnegative parts,
/// in lexicographic order.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=rest {
            cur.push(v);
            rec(rest - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// `base^exp` as a big integer.
pub fn pow(base: u64, exp: u64) -> BigCount {
    num_traits::pow(BigInt::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(10, 3), b(120));
        assert_eq!(binomial(5, 0), b(1));
        assert_eq!(binomial(-3, 2), b(6));
        assert_eq!(binomial(-3, 2), binomial(4, 2));
        assert_eq!(binomial(3, 5), b(0));
        assert_eq!(binomial_signed(4, -1), b(0));
    }

    #[test]
    fn negation_identity() {
        // C(-a, b) = (-1)^b C(a+b-1, b)
        for a in 1..8i64 {
            for bb in 0..8u64 {
                let sign = if bb % 2 == 0 { 1 } else { -1 };
                assert_eq!(binomial(-a, bb), b(sign) * binomial(a + bb as i64 - 1, bb));
            }
        }
    }

    #[test]
    fn raney_examples() {
        assert_eq!(raney(3, 3, 2).unwrap(), b(30));
        assert_eq!(raney(4, 4, 2).unwrap(), b(340));
        assert_eq!(raney(0, 7, 3).unwrap(), b(1));
        assert_eq!(raney(0, -2, 5).unwrap(), b(1));
        // Catalan numbers
        let cat = [1, 1, 2, 5, 14, 42, 132];
        for (n, &c) in cat.iter().enumerate() {
            assert_eq!(raney(n as u64, 2, 1).unwrap(), b(c));
        }
        assert_eq!(raney(3, 4, 1).unwrap(), b(22));
        assert_eq!(raney(1, -1, 7).unwrap(), b(7));
        assert_eq!(raney(2, -1, 7).unwrap(), b(14));
    }

    #[test]
    fn raney_pole_is_reported() {
        assert_eq!(raney(1, -1, 1), Err(Error::Pole { n: 1, p: -1, r: 1 }));
        assert!(raney(0, 3, 0).is_err());
    }

    #[test]
    fn convolutions() {
        assert!(raney_convolution_check(3, 3, 1, 1).unwrap());
        assert!(raney_convolution_check(0, 5, 2, 3).unwrap());
        assert!(raney_convolution_check(3, -1, 7, 14).unwrap());
        for n in 0..7 {
            for p in 1..5 {
                for r in 1..4 {
                    for s in 1..4 {
                        assert!(raney_convolution_check(n, p, r, s).unwrap());
                    }
                }
            }
        }
        assert!(multifold_convolution_check(3, -1, &[7, 7, 7]).unwrap());
        assert!(multifold_convolution_check(4, 3, &[1, 2]).unwrap());
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(weak_compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
    }
}

//! Type-B experiments: Hurwitz orbit of the grouped Coxeter factorization,
//! the set of its prefixes, and the zeta values of absolute order on that
//! set. Everything here is observed and compared, never asserted.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::counting::{binomial, pow};
use crate::error::{Error, Result};
use crate::poset::big_as_string;
use crate::verify::Status;

/// Signed permutation of `{±1, …, ±m}`, stored as the images of `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(m: usize) -> Self {
        SignedPermutation { images: (1..=m as i8).collect() }
    }

    pub fn from_images(images: &[i32]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > m || std::mem::replace(&mut seen[a], true) {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
        }
        Ok(SignedPermutation { images: images.iter().map(|&x| x as i8).collect() })
    }

    /// `s_0` changes the sign of 1; `s_i` swaps `i` and `i+1`.
    pub fn simple(m: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, max: m - 1 });
        }
        let mut w = Self::identity(m);
        if i == 0 {
            w.images[0] = -1;
        } else {
            w.images.swap(i - 1, i);
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: i32) -> i32 {
        let v = self.images[x.unsigned_abs() as usize - 1] as i32;
        if x < 0 {
            -v
        } else {
            v
        }
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation { images: other.images.iter().map(|&x| self.apply(x as i32) as i8).collect() }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0i8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            let v = (i + 1) as i8;
            images[x.unsigned_abs() as usize - 1] = if x < 0 { -v } else { v };
        }
        SignedPermutation { images }
    }

    /// Reflection length `m − #(cycles of |w| with an even number of sign
    /// changes)`, the codimension of the fixed space.
    pub fn reflection_length(&self) -> usize {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut positive = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut negs = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                let x = self.images[i];
                negs += usize::from(x < 0);
                i = x.unsigned_abs() as usize - 1;
            }
            positive += usize::from(negs % 2 == 0);
        }
        m - positive
    }

    /// `u ≤ w` in absolute order.
    pub fn below(&self, w: &SignedPermutation) -> bool {
        self.reflection_length() + self.inverse().compose(w).reflection_length() == w.reflection_length()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn product(m: usize, factors: &[SignedPermutation]) -> SignedPermutation {
    factors.iter().fold(SignedPermutation::identity(m), |acc, t| acc.compose(t))
}

/// `(s_0⋯s_{k−1})(s_k⋯s_{2k−1})⋯(s_{kn−k}⋯s_{kn−1})` in `B_{kn}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupedFactorization {
    pub k: usize,
    pub n: usize,
    pub factors: Vec<SignedPermutation>,
}

impl GroupedFactorization {
    pub fn degree(&self) -> usize {
        self.k * self.n
    }

    pub fn product(&self) -> SignedPermutation {
        product(self.degree(), &self.factors)
    }
}

pub fn coxeter_element(m: usize) -> SignedPermutation {
    let simples: Vec<SignedPermutation> = (0..m).map(|i| SignedPermutation::simple(m, i).expect("in range")).collect();
    product(m, &simples)
}

pub fn build_grouped(k: usize, n: usize) -> Result<GroupedFactorization> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("k={k}, n={n}: both must be positive")));
    }
    let m = k * n;
    let factors = (0..n)
        .map(|j| {
            let simples: Vec<SignedPermutation> =
                (j * k..(j + 1) * k).map(|i| SignedPermutation::simple(m, i)).collect::<Result<_>>()?;
            Ok(product(m, &simples))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupedFactorization { k, n, factors })
}

/// `σ_i` (or its inverse) on positions `i, i+1` (0-based `i`).
fn hurwitz_move(t: &mut [SignedPermutation], i: usize, inverse: bool) {
    let (a, b) = (t[i].clone(), t[i + 1].clone());
    if inverse {
        t[i] = a.compose(&b).compose(&a.inverse());
        t[i + 1] = a;
    } else {
        t[i + 1] = b.inverse().compose(&a).compose(&b);
        t[i] = b;
    }
}

/// The orbit and whether every move kept the product.
pub fn b_hurwitz_orbit(f: &GroupedFactorization, max_states: u64) -> Result<(Vec<Vec<SignedPermutation>>, bool)> {
    let target = f.product();
    let m = f.degree();
    let mut seen: HashSet<Vec<SignedPermutation>> = HashSet::from([f.factors.clone()]);
    let mut queue = VecDeque::from([f.factors.clone()]);
    let mut preserved = true;
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            for inverse in [false, true] {
                let mut next = cur.clone();
                hurwitz_move(&mut next, i, inverse);
                preserved &= product(m, &next) == target;
                if !seen.contains(&next) {
                    if seen.len() as u64 >= max_states {
                        return Err(Error::BoundExceeded { what: "type-B orbit states", value: seen.len() as u64 + 1, bound: max_states });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let mut orbit: Vec<_> = seen.into_iter().collect();
    orbit.sort();
    Ok((orbit, preserved))
}

/// Distinct `t_1⋯t_j` over the orbit, `0 ≤ j ≤ n`.
pub fn prefix_set(orbit: &[Vec<SignedPermutation>], m: usize) -> Vec<SignedPermutation> {
    let mut set = HashSet::new();
    for t in orbit {
        let mut acc = SignedPermutation::identity(m);
        set.insert(acc.clone());
        for x in t {
            acc = acc.compose(x);
            set.insert(acc.clone());
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}

/// Multichains `x_1 ≤ ⋯ ≤ x_{q−1}` of `elements` in absolute order.
pub fn restricted_zeta(elements: &[SignedPermutation], q: usize) -> BigInt {
    if q == 0 {
        return BigInt::from(0);
    }
    let below: Vec<Vec<usize>> = elements
        .iter()
        .map(|y| (0..elements.len()).filter(|&x| elements[x].below(y)).collect())
        .collect();
    if q == 1 {
        return BigInt::from(1);
    }
    let mut f = vec![BigInt::from(1); elements.len()];
    for _ in 2..q {
        f = below.iter().map(|xs| xs.iter().map(|&x| &f[x]).sum()).collect();
    }
    f.into_iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub what: String,
    #[serde(serialize_with = "big_as_string")]
    pub observed: BigInt,
    #[serde(serialize_with = "big_as_string")]
    pub conjectured: BigInt,
    pub status: Status,
}

impl Comparison {
    fn new(what: impl Into<String>, observed: BigInt, conjectured: BigInt) -> Self {
        let status = if observed == conjectured { Status::Pass } else { Status::Open };
        Comparison { what: what.into(), observed, conjectured, status }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeBReport {
    pub k: usize,
    pub n: usize,
    pub product_preserved: bool,
    pub comparisons: Vec<Comparison>,
}

/// Orbit size, prefix count and zeta values for `q ≤ max_q`.
pub fn typeb_report(k: usize, n: usize, max_q: usize, max_states: u64) -> Result<TypeBReport> {
    let f = build_grouped(k, n)?;
    let (orbit, product_preserved) = b_hurwitz_orbit(&f, max_states)?;
    let mut comparisons = vec![Comparison::new(
        "orbit size",
        BigInt::from(orbit.len()),
        pow(k as u64, n as u64 - 1) * pow(n as u64, n as u64),
    )];
    let prefixes = prefix_set(&orbit, f.degree());
    let nk = (n * k) as i64;
    comparisons.push(Comparison::new(
        "prefix count",
        BigInt::from(prefixes.len()),
        2 * binomial(nk + n as i64 - 1, n as u64 - 1),
    ));
    for q in 1..=max_q {
        let observed = restricted_zeta(&prefixes, q);
        let conjectured = BigInt::from(q) * binomial(nk * (q as i64 - 1) + n as i64 - 1, n as u64 - 1);
        comparisons.push(Comparison::new(format!("zeta q={q}"), observed, conjectured));
    }
    Ok(TypeBReport { k, n, product_preserved, comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_relations() {
        let s0 = SignedPermutation::simple(2, 0).unwrap();
        let s1 = SignedPermutation::simple(2, 1).unwrap();
        let x = s0.compose(&s1);
        let mut p = SignedPermutation::identity(2);
        for _ in 0..4 {
            p = p.compose(&x);
        }
        assert_eq!(p, SignedPermutation::identity(2));
        assert_ne!(x.compose(&x), SignedPermutation::identity(2));
        assert_eq!(s0.reflection_length(), 1);
        assert_eq!(coxeter_element(4).reflection_length(), 4);
    }

    #[test]
    fn grouped_products() {
        for (k, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2)] {
            let f = build_grouped(k, n).unwrap();
            assert_eq!(f.factors.len(), n);
            assert_eq!(f.product(), coxeter_element(k * n));
        }
    }

    #[test]
    fn inverse_and_order() {
        let w = SignedPermutation::from_images(&[-3, 1, 2]).unwrap();
        assert_eq!(w.compose(&w.inverse()), SignedPermutation::identity(3));
        assert!(SignedPermutation::identity(3).below(&w));
        assert!(SignedPermutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn smallest_report() {
        let r = typeb_report(1, 1, 3, 1000).unwrap();
        assert!(r.product_preserved);
        assert!(r.comparisons.iter().all(|c| c.status == Status::Pass), "{r:?}");
    }

    #[test]
    fn reports_are_complete() {
        for (k, n) in [(1, 2), (2, 2), (1, 3), (2, 1), (1, 4), (4, 1), (3, 1)] {
            let r = typeb_report(k, n, 3, 1_000_000).unwrap();
            assert!(r.product_preserved);
            assert_eq!(r.comparisons.len(), 5);
        }
    }
}

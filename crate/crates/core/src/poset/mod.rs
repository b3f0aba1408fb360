//! The poset `NC_{N;k}` and the closed forms for its census, chains,
//! zeta polynomial and Möbius invariant.

mod export;
mod hasse;

use num_bigint::BigInt;
use num_traits::One;

use crate::counting::{binomial, exact_div, raney, weak_compositions, BigCount};
use crate::error::{Error, Result};
use crate::nc::{ell_k_known, enumerate_nc_bounded, is_k_indivisible_iii, NoncrossingElement};
use crate::perm::{refines_labels, KParams, Permutation};

pub(crate) use export::big_as_string;
pub use export::{census_csv, to_dot};
pub use hasse::HasseDiagram;

/// Default cap on `N` for full poset builds.
pub const DEFAULT_POSET_MAX_DEGREE: usize = 13;
/// Default cap on the element count of a full poset build.
pub const DEFAULT_POSET_MAX_ELEMENTS: u64 = 20_000;

/// A rank jump vector `(r_1, …, r_{q+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankJumpVector(pub Vec<usize>);

impl RankJumpVector {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.is_empty() || parts.iter().sum::<usize>() != n {
            return Err(Error::Precondition(format!("jumps {parts:?} must sum to {n}")));
        }
        Ok(RankJumpVector(parts))
    }

    /// Every jump vector with `q + 1` parts summing to `n`.
    pub fn all(n: usize, q: usize) -> Vec<RankJumpVector> {
        weak_compositions(n, q + 1).into_iter().map(RankJumpVector).collect()
    }

    pub fn q(&self) -> usize {
        self.0.len() - 1
    }
}

/// Builds `NC_{N;k}` ordered by refinement, with covers between
/// comparable elements of adjacent rank.
pub fn build_poset(params: KParams) -> Result<HasseDiagram<NoncrossingElement>> {
    build_poset_bounded(params, DEFAULT_POSET_MAX_DEGREE, DEFAULT_POSET_MAX_ELEMENTS)
}

pub fn build_poset_bounded(
    params: KParams,
    max_degree: usize,
    max_elements: u64,
) -> Result<HasseDiagram<NoncrossingElement>> {
    let elements = enumerate_nc_bounded(params, max_degree, max_elements)?;
    let rank: Vec<usize> = elements.iter().map(NoncrossingElement::rank).collect();
    let labels: Vec<Vec<u8>> = elements.iter().map(|e| e.perm().block_labels()).collect();
    Ok(HasseDiagram::from_graded_order(elements, rank, |a, b| refines_labels(&labels[a], &labels[b])))
}

/// `u ≤_k w` decided by length additivity `ℓ_k(u) + ℓ_k(u⁻¹w) = ℓ_k(w)`,
/// independent of refinement. Lengths come from the closed form or, for tiny
/// degrees, from search; a factor past both has `ℓ_k > ℓ_1/k` and breaks
/// additivity.
pub fn leq_by_length(u: &Permutation, w: &Permutation, k: usize) -> bool {
    let q = &u.inverse() * w;
    match (ell_k_known(u, k), ell_k_known(&q, k), ell_k_known(w, k)) {
        (Some(a), Some(b), Some(c)) => a + b == c,
        _ => false,
    }
}

/// Elements of rank `l` by the closed form
/// `N / ((N−(k−1)l)(N−(k−1)(n−l))) · C(N−(k−1)l, l) · C(N−(k−1)(n−l), n−l)`.
pub fn count_by_rank(params: KParams, l: usize) -> Result<BigCount> {
    let (k, n, big_n) = (params.k as i64, params.n as i64, params.big_n() as i64);
    if l > params.n {
        return Err(Error::IndexOutOfRange { index: l, max: params.n });
    }
    let l = l as i64;
    let a = big_n - (k - 1) * l;
    let b = big_n - (k - 1) * (n - l);
    let num = BigInt::from(big_n) * binomial(a, l as u64) * binomial(b, (n - l) as u64);
    exact_div(&num, &(BigInt::from(a) * BigInt::from(b)))
}

/// `|NC_{N;k}| = Ran(n, k+1, 2)`.
pub fn count_elements(params: KParams) -> Result<BigCount> {
    raney(params.n as u64, params.k as i64 + 1, 2)
}

/// `N^{n−1}` maximal chains.
pub fn count_maximal_chains(params: KParams) -> BigCount {
    crate::counting::pow(params.big_n() as u64, params.n as u64 - 1)
}

/// `(1/N) · Π Ran(r_i, 1−k, N)` multichains with jump vector `r`.
pub fn count_multichains_by_jump(params: KParams, r: &RankJumpVector) -> Result<BigCount> {
    if r.0.iter().sum::<usize>() != params.n {
        return Err(Error::Precondition(format!("jumps {:?} must sum to {}", r.0, params.n)));
    }
    let big_n = params.big_n() as i64;
    let mut prod = BigInt::one();
    for &ri in &r.0 {
        prod *= raney(ri as u64, 1 - params.k as i64, big_n)?;
    }
    exact_div(&prod, &BigInt::from(big_n))
}

/// The zeta polynomial `Z(x)`: for `x = q + 1 ≥ 1` the number of
/// `q`-multichains. Evaluated as `(q+1)·(Nq+2)(Nq+3)⋯(Nq+n)/n!`, which is
/// the closed form with the factor `Nq+1` cancelled, so every integer `x` is legal.
pub fn zeta(params: KParams, x: i64) -> BigCount {
    scaled_zeta(params.big_n() as i64, params.n, 1, x - 1)
}

/// `(mq+1)·C(mNq+n, n)/(mNq+1)` with the pole-free cancellation.
pub(crate) fn scaled_zeta(big_n: i64, n: usize, m: i64, q: i64) -> BigCount {
    let mut num = BigInt::from(m * q + 1);
    let mut den = BigInt::one();
    for i in 2..=n as i64 {
        num *= BigInt::from(m * big_n * q + i);
        den *= BigInt::from(i);
    }
    exact_div(&num, &den).expect("integer-valued polynomial")
}

/// `(−1)^n · Ran(n, 2k, 1)`.
pub fn mobius_invariant(params: KParams) -> Result<BigCount> {
    let v = raney(params.n as u64, 2 * params.k as i64, 1)?;
    Ok(if params.n % 2 == 0 { v } else { -v })
}

/// `(u_1, …, u_q) ↦ (u_0⁻¹u_1, …, u_q⁻¹u_{q+1})` with `u_0 = id`, `u_{q+1} = c_N`.
pub fn multichain_to_factorization(params: KParams, chain: &[Permutation]) -> Result<Vec<Permutation>> {
    let big_n = params.big_n();
    for (i, u) in chain.iter().enumerate() {
        if !is_k_indivisible_iii(u, params) {
            return Err(Error::InvalidInput(format!("chain entry {} ({u}) not in NC", i + 1)));
        }
    }
    if chain.windows(2).any(|w| !w[0].refines(&w[1])) {
        return Err(Error::InvalidInput("chain is not weakly increasing".into()));
    }
    let mut padded = vec![Permutation::identity(big_n)];
    padded.extend(chain.iter().cloned());
    padded.push(params.long_cycle());
    Ok(padded.windows(2).map(|w| &w[0].inverse() * &w[1]).collect())
}

/// Prefix products of a factorization of `c_N`, dropping the final `c_N`.
pub fn factorization_to_multichain(params: KParams, factors: &[Permutation]) -> Result<Vec<Permutation>> {
    let big_n = params.big_n();
    if factors.is_empty() {
        return Err(Error::InvalidInput("empty factorization".into()));
    }
    let mut acc = Permutation::identity(big_n);
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        acc = acc.compose(f)?;
        out.push(acc.clone());
    }
    if out.pop().as_ref() != Some(&params.long_cycle()) {
        return Err(Error::InvalidInput("factors do not multiply to the long cycle".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(k: usize, n: usize) -> KParams {
        KParams::new(k, n).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn nc72_structure() {
        let p = build_poset(kp(2, 3)).unwrap();
        assert_eq!(p.len(), 30);
        assert_eq!(p.rank_profile(), vec![1, 14, 14, 1]);
        assert!(p.is_graded());
        assert_eq!(p.maximal_chains(), b(49));
        assert_eq!(p.mobius().unwrap(), b(-22));
        assert_eq!(p.multichains(2), b(136));
        assert!(p.element(p.bottom().unwrap()).perm().is_identity());
        assert_eq!(p.element(p.top().unwrap()).perm(), &Permutation::long_cycle(7));
        // not a lattice for k > 1
        assert!(!p.is_lattice());
    }

    #[test]
    fn small_builds() {
        let p = build_poset(kp(1, 1)).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.covers(), vec![(0, 1)]);
        assert_eq!(build_poset(kp(3, 2)).unwrap().len(), 9);
        assert_eq!(build_poset(kp(1, 3)).unwrap().maximal_chains(), b(16));
        assert!(build_poset(kp(1, 3)).unwrap().is_lattice());
    }

    #[test]
    fn build_refuses_large() {
        assert!(matches!(build_poset(kp(1, 13)), Err(Error::BoundExceeded { .. })));
        assert!(matches!(build_poset(kp(1, 11)), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn closed_forms() {
        let p = kp(2, 3);
        assert_eq!(count_by_rank(p, 1).unwrap(), b(14));
        assert_eq!(count_by_rank(p, 2).unwrap(), b(14));
        assert_eq!(count_by_rank(p, 0).unwrap(), b(1));
        assert!(count_by_rank(p, 4).is_err());
        assert_eq!(count_maximal_chains(p), b(49));
        assert_eq!(count_maximal_chains(kp(5, 1)), b(1));
        assert_eq!(count_maximal_chains(kp(1, 3)), b(16));
        assert_eq!(zeta(p, 2), b(30));
        assert_eq!(zeta(p, 3), b(136));
        assert_eq!(zeta(p, -1), b(-22));
        assert_eq!(zeta(p, 1), b(1));
        assert_eq!(mobius_invariant(p).unwrap(), b(-22));
        assert_eq!(mobius_invariant(kp(1, 1)).unwrap(), b(-1));
    }

    #[test]
    fn jump_counts() {
        let p = kp(2, 3);
        let r = |v: Vec<usize>| RankJumpVector::new(v, 3).unwrap();
        assert_eq!(count_multichains_by_jump(p, &r(vec![1, 2])).unwrap(), b(14));
        assert_eq!(count_multichains_by_jump(p, &r(vec![3])).unwrap(), b(1));
        assert_eq!(count_multichains_by_jump(p, &r(vec![1, 1, 1])).unwrap(), b(49));
        assert!(RankJumpVector::new(vec![1, 1], 3).is_err());
        assert!(count_multichains_by_jump(p, &RankJumpVector(vec![1])).is_err());
    }

    #[test]
    fn rank_symmetry_and_totals() {
        for k in 1..=4 {
            for n in 1..=16 {
                if k * n + 1 > 17 {
                    continue;
                }
                let p = kp(k, n);
                let mut total = BigInt::from(0);
                for l in 0..=n {
                    let c = count_by_rank(p, l).unwrap();
                    assert_eq!(c, count_by_rank(p, n - l).unwrap());
                    total += c;
                }
                assert_eq!(total, count_elements(p).unwrap());
            }
        }
    }

    #[test]
    fn jump_sums_equal_zeta() {
        for k in 1..=4 {
            for n in 1..=6 {
                let p = kp(k, n);
                for q in 0..=4 {
                    let s: BigInt = RankJumpVector::all(n, q)
                        .iter()
                        .map(|r| count_multichains_by_jump(p, r).unwrap())
                        .sum();
                    assert_eq!(s, zeta(p, q as i64 + 1), "k={k} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn refinement_equals_length_order() {
        for (k, n) in [(1, 3), (1, 6), (2, 3), (3, 2), (2, 2), (6, 1)] {
            let p = build_poset(kp(k, n)).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let (u, w) = (p.element(x).perm(), p.element(y).perm());
                    assert_eq!(p.leq(x, y), leq_by_length(u, w, k), "{u} vs {w}");
                }
            }
        }
    }

    #[test]
    fn multichain_factorization_round_trip() {
        let p = kp(2, 3);
        let c = p.long_cycle();
        let id = Permutation::identity(7);
        assert_eq!(multichain_to_factorization(p, std::slice::from_ref(&id)).unwrap(), vec![id.clone(), c.clone()]);
        assert_eq!(multichain_to_factorization(p, &[]).unwrap(), vec![c.clone()]);
        let w = Permutation::parse("(2 3 6)", 7).unwrap();
        let f = multichain_to_factorization(p, std::slice::from_ref(&w)).unwrap();
        assert_eq!(f, vec![w.clone(), &w.inverse() * &c]);
        assert!(f.iter().all(|v| v.is_one_mod_k(2)));
        assert_eq!(factorization_to_multichain(p, &f).unwrap(), vec![w.clone()]);
        assert!(multichain_to_factorization(p, &[c.clone(), w]).is_err());
    }
}

//! The m-divisible poset on m-multichains of `NC_{N;k}`, ordered through
//! delta sequences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::counting::{binomial, exact_div, pow, raney, BigCount};
use crate::error::{Error, Result};
use crate::nc::is_k_indivisible_iii;
use crate::perm::{KParams, Permutation};
use crate::poset::{build_poset, leq_by_length, scaled_zeta, HasseDiagram, RankJumpVector};

/// Default cap on the number of m-multichains in a build.
pub const DEFAULT_MPOSET_MAX_ELEMENTS: u64 = 5_000;

/// Which bounded completion of the m-divisible poset to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiusVariant {
    /// A new minimum adjoined below everything.
    Hat,
    /// All minimal elements merged into one.
    Bar,
}

/// A chain `x_1 ≤ … ≤ x_m` in `NC_{N;k}` with its deltas `(d_0; d_1, …, d_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultichainElement {
    params: KParams,
    chain: Vec<Permutation>,
    delta: Vec<Permutation>,
}

impl MultichainElement {
    pub fn new(params: KParams, chain: Vec<Permutation>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        for x in &chain {
            if !is_k_indivisible_iii(x, params) {
                return Err(Error::InvalidInput(format!("{x} is not in NC")));
            }
        }
        if chain.windows(2).any(|w| !w[0].refines(&w[1])) {
            return Err(Error::InvalidInput("chain is not weakly increasing".into()));
        }
        let mut padded = vec![Permutation::identity(params.big_n())];
        padded.extend(chain.iter().cloned());
        padded.push(params.long_cycle());
        // d_i = x_i⁻¹ x_{i+1}, i = 0..m; d_0 = x_1
        let delta = padded.windows(2).map(|w| &w[0].inverse() * &w[1]).collect();
        Ok(MultichainElement { params, chain, delta })
    }

    pub fn m(&self) -> usize {
        self.chain.len()
    }

    pub fn chain(&self) -> &[Permutation] {
        &self.chain
    }

    /// `(d_0, d_1, …, d_m)`.
    pub fn delta(&self) -> &[Permutation] {
        &self.delta
    }

    /// `ℓ_k(x_1)`.
    pub fn rank(&self) -> usize {
        self.chain[0].ell_1() / self.params.k
    }
}

impl fmt::Display for MultichainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chain.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" <= "))
    }
}

/// `C ≤ C'` iff `d_i ≥_k d'_i` for `1 ≤ i ≤ m`; `d_0` is unconstrained.
pub fn mposet_leq(c: &MultichainElement, c2: &MultichainElement) -> Result<bool> {
    if c.params != c2.params || c.m() != c2.m() {
        return Err(Error::InvalidParams("multichains from different posets".into()));
    }
    let k = c.params.k;
    Ok((1..=c.m()).all(|i| leq_by_length(&c2.delta[i], &c.delta[i], k)))
}

/// All m-multichains of `NC_{N;k}`, in lexicographic order of index tuples.
pub fn enumerate_multichains(params: KParams, m: usize) -> Result<Vec<MultichainElement>> {
    let base = build_poset(params)?;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        base: &HasseDiagram<crate::nc::NoncrossingElement>,
        m: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let candidates: Vec<usize> = match cur.last() {
            None => (0..base.len()).collect(),
            Some(&x) => base.up_set(x).ones().collect(),
        };
        for y in candidates {
            cur.push(y);
            rec(base, m, cur, out);
            cur.pop();
        }
    }
    let mut tuples = Vec::new();
    rec(&base, m, &mut cur, &mut tuples);
    for t in tuples {
        let chain = t.iter().map(|&i| base.element(i).perm().clone()).collect();
        out.push(MultichainElement::new(params, chain)?);
    }
    Ok(out)
}

/// Builds the m-divisible poset; the rank stored is the height.
pub fn build_mposet(params: KParams, m: usize) -> Result<HasseDiagram<MultichainElement>> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    let expected = mzeta(params, m, 1);
    if expected > BigInt::from(DEFAULT_MPOSET_MAX_ELEMENTS) {
        return Err(Error::BoundExceeded {
            what: "m-multichains",
            value: u64::try_from(&expected).unwrap_or(u64::MAX),
            bound: DEFAULT_MPOSET_MAX_ELEMENTS,
        });
    }
    let elements = enumerate_multichains(params, m)?;
    let k = params.k;
    // d'_i ≤_k d_i for i ≥ 1, with the per-element deltas precomputed
    let deltas: Vec<&[Permutation]> = elements.iter().map(|e| &e.delta[1..]).collect();
    let leq = |a: usize, b: usize| deltas[a].iter().zip(deltas[b]).all(|(da, db)| leq_by_length(db, da, k));
    let rows: Vec<Vec<bool>> = (0..elements.len())
        .map(|a| (0..elements.len()).map(|b| leq(a, b)).collect())
        .collect();
    HasseDiagram::from_order(elements, |a, b| rows[a][b])
}

/// `(mq+1)/(mNq+1) · C(mNq+n, n)`: the number of q-multichains of the m-divisible poset.
pub fn mzeta(params: KParams, m: usize, q: i64) -> BigCount {
    scaled_zeta(params.big_n() as i64, params.n, m as i64, q)
}

/// `m^n · N^{n−1}`.
pub fn m_maximal_chains(params: KParams, m: usize) -> BigCount {
    pow(m as u64, params.n as u64) * pow(params.big_n() as u64, params.n as u64 - 1)
}

/// Möbius invariant of the two bounded completions, by closed form.
pub fn m_mobius(params: KParams, m: usize, variant: MobiusVariant) -> Result<BigCount> {
    let (k, n, big_n, m) = (params.k as i64, params.n as u64, params.big_n() as i64, m as i64);
    let sign = |v: BigInt, e: u64| if e % 2 == 0 { v } else { -v };
    match variant {
        MobiusVariant::Hat => {
            let top = big_n * m - 1;
            let v = exact_div(&(BigInt::from(m - 1) * binomial(top, n)), &BigInt::from(top))?;
            Ok(sign(v, n + 1))
        }
        MobiusVariant::Bar => {
            let v = raney(n, k * (m + 1), m)? - raney(n, k * m, m - 1)?;
            Ok(sign(v, n))
        }
    }
}

/// `(1/N) · Ran(r_1, 1−k, N) · Π_{i≥2} Ran(r_i, 1−k, mN)`.
pub fn m_rank_jump_count(params: KParams, m: usize, r: &RankJumpVector) -> Result<BigCount> {
    if r.0.iter().sum::<usize>() != params.n {
        return Err(Error::Precondition(format!("jumps {:?} must sum to {}", r.0, params.n)));
    }
    let (k, big_n) = (params.k as i64, params.big_n() as i64);
    let mut prod = BigInt::one();
    for (i, &ri) in r.0.iter().enumerate() {
        let scale = if i == 0 { big_n } else { m as i64 * big_n };
        prod *= raney(ri as u64, 1 - k, scale)?;
    }
    exact_div(&prod, &BigInt::from(big_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::enumerate_nc;
    use crate::poset::zeta;

    fn kp(k: usize, n: usize) -> KParams {
        KParams::new(k, n).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mzeta(kp(1, 2), 2, 1), b(12));
        assert_eq!(mzeta(kp(2, 3), 2, 1), b(136));
        assert_eq!(mzeta(kp(2, 3), 1, 4), zeta(kp(2, 3), 5));
        assert_eq!(m_maximal_chains(kp(1, 2), 2), b(12));
        assert_eq!(m_maximal_chains(kp(2, 2), 2), b(20));
        assert_eq!(m_maximal_chains(kp(2, 3), 1), b(49));
        assert_eq!(m_mobius(kp(1, 2), 2, MobiusVariant::Hat).unwrap(), b(-2));
        assert_eq!(m_mobius(kp(1, 2), 2, MobiusVariant::Bar).unwrap(), b(5));
        assert_eq!(m_mobius(kp(2, 3), 1, MobiusVariant::Hat).unwrap(), b(0));
        let r = RankJumpVector::new(vec![0, 2], 2).unwrap();
        assert_eq!(m_rank_jump_count(kp(1, 2), 2, &r).unwrap(), b(5));
        let total: BigInt = RankJumpVector::all(2, 1)
            .iter()
            .map(|r| m_rank_jump_count(kp(1, 2), 2, r).unwrap())
            .sum();
        assert_eq!(total, b(12));
    }

    #[test]
    fn m_equals_one_specializes() {
        for (k, n) in [(1, 3), (2, 3), (3, 2)] {
            let p = kp(k, n);
            for q in 0..4 {
                for r in RankJumpVector::all(n, q) {
                    assert_eq!(
                        m_rank_jump_count(p, 1, &r).unwrap(),
                        crate::poset::count_multichains_by_jump(p, &r).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn deltas_lie_in_nc() {
        let p = kp(2, 2);
        for e in enumerate_multichains(p, 3).unwrap() {
            let prod = e.delta().iter().fold(Permutation::identity(5), |acc, d| &acc * d);
            assert_eq!(prod, p.long_cycle());
            for d in e.delta() {
                assert!(is_k_indivisible_iii(d, p), "{d}");
            }
        }
    }

    #[test]
    fn small_mposet() {
        let p = build_mposet(kp(1, 2), 2).unwrap();
        assert_eq!(p.len(), 12);
        assert!(p.is_graded());
        assert_eq!(p.maximal_chains(), b(12));
        assert_eq!(p.minima().len(), 5);
        let top = p.top().unwrap();
        assert!(p.element(top).chain().iter().all(|x| x == &Permutation::long_cycle(3)));
        for i in 0..p.len() {
            assert_eq!(p.rank(i), p.element(i).rank());
        }
        assert_eq!(p.mobius_with_merged_minima().unwrap(), b(5));
    }

    #[test]
    fn m_one_is_the_base_poset() {
        let params = kp(2, 3);
        let mp = build_mposet(params, 1).unwrap();
        let base = enumerate_nc(params).unwrap();
        assert_eq!(mp.len(), base.len());
        for i in 0..mp.len() {
            for j in 0..mp.len() {
                let (x, y) = (&mp.element(i).chain()[0], &mp.element(j).chain()[0]);
                assert_eq!(mp.leq(i, j), x.refines(y));
            }
        }
    }

    #[test]
    fn mismatched_leq_is_an_error() {
        let a = MultichainElement::new(kp(1, 2), vec![Permutation::identity(3)]).unwrap();
        let b2 = MultichainElement::new(kp(1, 2), vec![Permutation::identity(3); 2]).unwrap();
        assert!(mposet_leq(&a, &b2).is_err());
        assert!(mposet_leq(&a, &a).unwrap());
    }
}

#[cfg(test)]
mod sweep {
    use super::*;

    #[test]
    fn closed_forms_against_brute_force() {
        for k in 1..=2 {
            for n in 1..=3 {
                for m in 1..=3 {
                    let params = KParams::new(k, n).unwrap();
                    let p = build_mposet(params, m).unwrap();
                    let hat = p.mobius_with_new_bottom().unwrap();
                    let bar = p.mobius_with_merged_minima().unwrap();
                    assert!(p.is_graded());
                    assert_eq!(p.maximal_chains(), m_maximal_chains(params, m));
                    assert_eq!(hat, m_mobius(params, m, MobiusVariant::Hat).unwrap());
                    assert_eq!(bar, m_mobius(params, m, MobiusVariant::Bar).unwrap());
                    for q in 0..=3 {
                        assert_eq!(p.multichains(q), mzeta(params, m, q as i64), "zeta q={q}");
                        for r in RankJumpVector::all(n, q) {
                            assert_eq!(
                                p.multichains_by_jump(&r.0, n).unwrap(),
                                m_rank_jump_count(params, m, &r).unwrap(),
                                "jump {r:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}

//! Reduced factorizations of the long cycle into `(k+1)`-cycles, the
//! Hurwitz action on them and the induced symmetric-group action.
//!
//! Every factor of a reduced factorization of `c_N` is an increasing cycle,
//! so a factor is stored as the bit mask of its support (bit `i` = entry `i+1`).

mod commutation;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{product, KParams, Permutation};

pub use commutation::{class_members, commutation_classes, CommClass};
pub(crate) use commutation::factor_cmp;

/// Default cap on the states visited by an orbit search.
pub const DEFAULT_MAX_STATES: u64 = 10_000_000;

/// Smallest element of a nonempty mask, 1-based.
#[inline]
pub fn mask_min(mask: u64) -> usize {
    mask.trailing_zeros() as usize + 1
}

/// Entries of a mask, 1-based and increasing.
pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Next larger element of `mask` after bit `x`, wrapping to the smallest.
#[inline]
fn succ_in(mask: u64, x: u32) -> u32 {
    let above = mask & !((2u64 << x) - 1);
    if above != 0 {
        above.trailing_zeros()
    } else {
        mask.trailing_zeros()
    }
}

/// Next smaller element of `mask` before bit `x`, wrapping to the largest.
#[inline]
fn pred_in(mask: u64, x: u32) -> u32 {
    let below = mask & ((1u64 << x) - 1);
    if below != 0 {
        63 - below.leading_zeros()
    } else {
        63 - mask.leading_zeros()
    }
}

/// Support of `g⁻¹ t g` when `g` is the increasing cycle on `g_mask`:
/// entries of `t` lying in `g` step back along `g`.
#[inline]
fn conj_back(t: u64, g_mask: u64) -> u64 {
    let mut out = t & !g_mask;
    let mut shared = t & g_mask;
    while shared != 0 {
        let x = shared.trailing_zeros();
        shared &= shared - 1;
        out |= 1 << pred_in(g_mask, x);
    }
    out
}

/// Support of `g t g⁻¹`: entries of `t` lying in `g` step forward along `g`.
#[inline]
fn conj_forward(t: u64, g_mask: u64) -> u64 {
    let mut out = t & !g_mask;
    let mut shared = t & g_mask;
    while shared != 0 {
        let x = shared.trailing_zeros();
        shared &= shared - 1;
        out |= 1 << succ_in(g_mask, x);
    }
    out
}

/// `σ_i` (or its inverse) on a mask tuple, `i` 0-based.
#[inline]
fn sigma_masks(masks: &mut [u64], i: usize, inverse: bool) {
    let (a, b) = (masks[i], masks[i + 1]);
    if inverse {
        // (g_i g_{i+1} g_i⁻¹, g_i)
        masks[i] = conj_forward(b, a);
        masks[i + 1] = a;
    } else {
        // (g_{i+1}, g_{i+1}⁻¹ g_i g_{i+1})
        masks[i] = b;
        masks[i + 1] = conj_back(a, b);
    }
}

/// An ordered factorization `t_1 ⋯ t_n = c_N` into increasing `(k+1)`-cycles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    params: KParams,
    masks: Vec<u64>,
}

impl Factorization {
    /// Validates factor shape and the product.
    pub fn new(params: KParams, factors: &[Permutation]) -> Result<Self> {
        let big_n = params.big_n();
        if factors.len() != params.n {
            return Err(Error::InvalidInput(format!("expected {} factors, got {}", params.n, factors.len())));
        }
        let mut masks = Vec::with_capacity(factors.len());
        for t in factors {
            if t.degree() != big_n {
                return Err(Error::DegreeMismatch { left: t.degree(), right: big_n });
            }
            let cyc = t.nontrivial_cycles();
            if cyc.len() != 1 || cyc[0].len() != params.k + 1 || cyc[0].windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidInput(format!("{t} is not an increasing {}-cycle", params.k + 1)));
            }
            masks.push(t.support_mask());
        }
        if product(big_n, factors) != params.long_cycle() {
            return Err(Error::InvalidInput("factors do not multiply to the long cycle".into()));
        }
        Ok(Factorization { params, masks })
    }

    /// From support masks; the product is checked.
    pub fn from_masks(params: KParams, masks: Vec<u64>) -> Result<Self> {
        if masks.iter().any(|m| m.count_ones() as usize != params.k + 1 || *m >> params.big_n() != 0) {
            return Err(Error::InvalidInput("mask has wrong size".into()));
        }
        let factors: Vec<Permutation> = masks.iter().map(|&m| Permutation::from_mask(params.big_n(), m)).collect();
        Self::new(params, &factors)
    }

    pub(crate) fn from_masks_unchecked(params: KParams, masks: Vec<u64>) -> Self {
        Factorization { params, masks }
    }

    /// Parses `(1 2 3)|(3 4 5)`.
    pub fn parse(params: KParams, text: &str) -> Result<Self> {
        let factors = text
            .split('|')
            .map(|s| Permutation::parse(s, params.big_n()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, &factors)
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn factors(&self) -> Vec<Permutation> {
        self.masks.iter().map(|&m| Permutation::from_mask(self.params.big_n(), m)).collect()
    }

    pub fn product(&self) -> Permutation {
        product(self.params.big_n(), &self.factors())
    }

    /// `(t_{1,1}, …, t_{n,1})`.
    pub fn minima(&self) -> Vec<usize> {
        self.masks.iter().map(|&m| mask_min(m)).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.len().saturating_sub(1) });
        }
        Ok(())
    }

    /// The Hurwitz generator `σ_i` or `σ_i⁻¹`, `1 ≤ i ≤ n−1`.
    pub fn sigma(&self, i: usize, inverse: bool) -> Result<Factorization> {
        self.check_index(i)?;
        let mut masks = self.masks.clone();
        sigma_masks(&mut masks, i - 1, inverse);
        Ok(Factorization { params: self.params, masks })
    }

    /// The adjacent transposition `s_i` acting as `σ_i` when
    /// `t_{i,1} < t_{i+1,1}`, as `σ_i⁻¹` when greater, trivially when equal.
    pub fn sym_action(&self, i: usize) -> Result<Factorization> {
        self.check_index(i)?;
        let (a, b) = (mask_min(self.masks[i - 1]), mask_min(self.masks[i]));
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.sigma(i, false),
            std::cmp::Ordering::Greater => self.sigma(i, true),
            std::cmp::Ordering::Equal => Ok(self.clone()),
        }
    }
}

/// Lexicographic on factors, each factor compared by its entry list.
impl Ord for Factorization {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        commutation::seq_cmp(&self.masks, &other.masks).then_with(|| (self.params.k, self.params.n).cmp(&(other.params.k, other.params.n)))
    }
}

impl PartialOrd for Factorization {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors().iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Hurwitz move on arbitrary permutation tuples (no shape assumptions).
pub fn hurwitz_sigma_general(factors: &[Permutation], i: usize, inverse: bool) -> Result<Vec<Permutation>> {
    if i == 0 || i >= factors.len() {
        return Err(Error::IndexOutOfRange { index: i, max: factors.len().saturating_sub(1) });
    }
    let mut out = factors.to_vec();
    let (a, b) = (&factors[i - 1], &factors[i]);
    if inverse {
        out[i - 1] = b.conjugate_by(&a.inverse());
        out[i] = a.clone();
    } else {
        out[i - 1] = b.clone();
        out[i] = a.conjugate_by(b);
    }
    Ok(out)
}

/// Ways to cut an increasing block into `k+1` increasing blocks with sizes
/// 1 mod k: the chosen `(k+1)`-subset and the resulting nontrivial blocks.
fn cuts(block: u64, k: usize) -> Vec<(u64, Vec<u64>)> {
    let elems: Vec<u32> = (0..64).filter(|i| block >> i & 1 == 1).collect();
    let len = elems.len();
    let mut out = Vec::new();
    if len < k + 1 {
        return out;
    }
    for idx in (0..len).combinations(k + 1) {
        let ok = (0..=k).all(|s| {
            let next = if s == k { idx[0] + len } else { idx[s + 1] };
            (next - idx[s]) % k == 1 % k
        });
        if !ok {
            continue;
        }
        let t = idx.iter().fold(0u64, |m, &j| m | 1 << elems[j]);
        let mut pieces = Vec::new();
        for s in 0..=k {
            let next = if s == k { idx[0] + len } else { idx[s + 1] };
            let piece = (idx[s] + 1..=next).fold(0u64, |m, j| m | 1 << elems[j % len]);
            if piece.count_ones() > 1 {
                pieces.push(piece);
            }
        }
        out.push((t, pieces));
    }
    out
}

/// Calls `f` with every factorization's masks `(t_1, …, t_n)`.
/// Factors are peeled off from the right: `u = w·t⁻¹` cuts one block of `w`.
pub fn for_each_factorization(params: KParams, mut f: impl FnMut(&[u64])) {
    let full = (1u64 << params.big_n()) - 1;
    let mut cut_cache: HashMap<u64, Vec<(u64, Vec<u64>)>> = HashMap::new();
    let mut rev = Vec::with_capacity(params.n);
    let mut buf = vec![0u64; params.n];
    fn rec(
        blocks: &[u64],
        k: usize,
        n: usize,
        rev: &mut Vec<u64>,
        buf: &mut [u64],
        cache: &mut HashMap<u64, Vec<(u64, Vec<u64>)>>,
        f: &mut dyn FnMut(&[u64]),
    ) {
        if blocks.is_empty() {
            for (i, &m) in rev.iter().rev().enumerate() {
                buf[i] = m;
            }
            f(buf);
            return;
        }
        for (bi, &b) in blocks.iter().enumerate() {
            let options = cache.entry(b).or_insert_with(|| cuts(b, k)).clone();
            for (t, pieces) in options {
                let mut next: Vec<u64> = blocks[..bi].to_vec();
                next.extend_from_slice(&blocks[bi + 1..]);
                next.extend(pieces);
                rev.push(t);
                rec(&next, k, n, rev, buf, cache, f);
                rev.pop();
            }
        }
    }
    rec(&[full], params.k, params.n, &mut rev, &mut buf, &mut cut_cache, &mut f);
}

/// All of `Fact_k(c_N)`, sorted.
pub fn enumerate_factorizations(params: KParams, max: u64) -> Result<Vec<Factorization>> {
    let count = count_factorizations(params);
    if count > BigInt::from(max) {
        return Err(Error::BoundExceeded {
            what: "factorizations",
            value: u64::try_from(&count).unwrap_or(u64::MAX),
            bound: max,
        });
    }
    let mut out = Vec::new();
    for_each_factorization(params, |m| out.push(Factorization::from_masks_unchecked(params, m.to_vec())));
    out.sort();
    Ok(out)
}

/// `|Fact_k(c_N)|` by memoized recursion over the multiset of block sizes.
pub fn count_factorizations(params: KParams) -> BigInt {
    fn rec(sizes: Vec<usize>, k: usize, memo: &mut HashMap<Vec<usize>, BigInt>) -> BigInt {
        if sizes.is_empty() {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&sizes) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (bi, &len) in sizes.iter().enumerate() {
            let block = (1u64 << len) - 1;
            for (_, pieces) in cuts(block, k) {
                let mut next: Vec<usize> = sizes[..bi].to_vec();
                next.extend_from_slice(&sizes[bi + 1..]);
                next.extend(pieces.iter().map(|p| p.count_ones() as usize));
                next.sort_unstable();
                total += rec(next, k, memo);
            }
        }
        memo.insert(sizes, total.clone());
        total
    }
    rec(vec![params.big_n()], params.k, &mut HashMap::new())
}

/// Packs a mask tuple into one integer, one subset rank per factor.
struct Packer {
    bits: u32,
    rank_of: HashMap<u64, u64>,
    unrank: Vec<u64>,
}

impl Packer {
    fn new(params: KParams) -> Self {
        let subsets: Vec<u64> = (0..params.big_n())
            .combinations(params.k + 1)
            .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
            .collect();
        let bits = (usize::BITS - (subsets.len().max(2) - 1).leading_zeros()).max(1);
        let rank_of = subsets.iter().enumerate().map(|(i, &m)| (m, i as u64)).collect();
        Packer { bits, rank_of, unrank: subsets }
    }

    fn pack(&self, masks: &[u64]) -> u128 {
        masks.iter().fold(0u128, |acc, m| acc << self.bits | self.rank_of[m] as u128)
    }

    fn unpack(&self, mut key: u128, out: &mut [u64]) {
        let lim = (1u128 << self.bits) - 1;
        for slot in out.iter_mut().rev() {
            *slot = self.unrank[(key & lim) as usize];
            key >>= self.bits;
        }
    }
}

fn orbit_keys<K: Copy + Eq + Hash>(
    start: &Factorization,
    max_states: u64,
    to_key: impl Fn(u128) -> K,
    from_key: impl Fn(K) -> u128,
) -> Result<HashSet<K>> {
    let packer = Packer::new(start.params);
    let n = start.len();
    let mut seen: HashSet<K> = HashSet::new();
    let k0 = to_key(packer.pack(&start.masks));
    seen.insert(k0);
    let mut queue = VecDeque::from([k0]);
    let mut cur = vec![0u64; n];
    let mut next = vec![0u64; n];
    while let Some(key) = queue.pop_front() {
        packer.unpack(from_key(key), &mut cur);
        for i in 0..n.saturating_sub(1) {
            for inverse in [false, true] {
                next.copy_from_slice(&cur);
                sigma_masks(&mut next, i, inverse);
                let nk = to_key(packer.pack(&next));
                if seen.insert(nk) {
                    if seen.len() as u64 > max_states {
                        return Err(Error::BoundExceeded { what: "orbit states", value: seen.len() as u64, bound: max_states });
                    }
                    queue.push_back(nk);
                }
            }
        }
    }
    Ok(seen)
}

fn packed_bits(params: KParams) -> u32 {
    Packer::new(params).bits * params.n as u32
}

/// Size of the Hurwitz orbit of `f`, by breadth-first search.
pub fn hurwitz_orbit_size(f: &Factorization, max_states: u64) -> Result<u64> {
    let bits = packed_bits(f.params);
    if bits <= 64 {
        Ok(orbit_keys(f, max_states, |k| k as u64, |k| k as u128)?.len() as u64)
    } else if bits <= 128 {
        Ok(orbit_keys(f, max_states, |k| k, |k| k)?.len() as u64)
    } else {
        Err(Error::BoundExceeded { what: "packed key bits", value: bits as u64, bound: 128 })
    }
}

/// The Hurwitz orbit of `f`, sorted.
pub fn hurwitz_orbit(f: &Factorization, max_states: u64) -> Result<Vec<Factorization>> {
    let bits = packed_bits(f.params);
    if bits > 128 {
        return Err(Error::BoundExceeded { what: "packed key bits", value: bits as u64, bound: 128 });
    }
    let packer = Packer::new(f.params);
    let keys = orbit_keys(f, max_states, |k| k, |k| k)?;
    let mut out: Vec<Factorization> = keys
        .into_iter()
        .map(|key| {
            let mut m = vec![0u64; f.len()];
            packer.unpack(key, &mut m);
            Factorization::from_masks_unchecked(f.params, m)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// JSON orbit summary.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub start: String,
    pub orbit_size: u64,
    pub expected: String,
    pub transitive: bool,
}

pub fn orbit_report(f: &Factorization, max_states: u64) -> Result<OrbitReport> {
    let size = hurwitz_orbit_size(f, max_states)?;
    let expected = crate::poset::count_maximal_chains(f.params);
    Ok(OrbitReport {
        start: f.to_string(),
        orbit_size: size,
        transitive: BigInt::from(size) == expected,
        expected: expected.to_string(),
    })
}

/// The factorization with consecutive factors `(1…k+1)(k+1…2k+1)⋯`.
pub fn staircase(params: KParams) -> Factorization {
    let k = params.k;
    let masks = (0..params.n).map(|j| ((1u64 << (k + 1)) - 1) << (j * k)).collect();
    Factorization::from_masks_unchecked(params, masks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(k: usize, n: usize) -> KParams {
        KParams::new(k, n).unwrap()
    }

    fn fact(k: usize, n: usize, s: &str) -> Factorization {
        Factorization::parse(kp(k, n), s).unwrap()
    }

    #[test]
    fn sigma_example() {
        let f = fact(1, 3, "(1 2)|(2 3)|(3 4)");
        let g = f.sigma(1, false).unwrap();
        assert_eq!(g, fact(1, 3, "(2 3)|(1 3)|(3 4)"));
        assert_eq!(g.product(), Permutation::long_cycle(4));
        assert_eq!(g.sigma(1, true).unwrap(), f);
        assert!(f.sigma(0, false).is_err());
        assert!(f.sigma(3, false).is_err());
    }

    #[test]
    fn sym_action_example() {
        let f = fact(2, 2, "(1 2 3)|(3 4 5)");
        let g = f.sym_action(1).unwrap();
        assert_eq!(g, fact(2, 2, "(3 4 5)|(1 2 5)"));
        assert_eq!(g.minima(), vec![3, 1]);
        assert_eq!(g.sym_action(1).unwrap(), f);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Factorization::parse(kp(1, 2), "(1 2)|(1 3)").is_err());
        assert!(Factorization::parse(kp(1, 2), "(1 2)").is_err());
        assert!(Factorization::parse(kp(2, 2), "(1 3 2)|(3 4 5)").is_err());
        assert_eq!(fact(2, 2, "(1 2 3)|(3 4 5)").to_string(), "(1 2 3)|(3 4 5)");
    }

    #[test]
    fn factorization_counts() {
        assert_eq!(enumerate_factorizations(kp(2, 3), 1000).unwrap().len(), 49);
        assert_eq!(enumerate_factorizations(kp(4, 1), 1000).unwrap().len(), 1);
        assert_eq!(enumerate_factorizations(kp(1, 3), 1000).unwrap().len(), 16);
        for k in 1..=4 {
            for n in 1..=5 {
                assert_eq!(count_factorizations(kp(k, n)), crate::poset::count_maximal_chains(kp(k, n)));
            }
        }
        assert!(enumerate_factorizations(kp(1, 8), 1000).is_err());
    }

    #[test]
    fn enumeration_yields_valid_distinct_factorizations() {
        for (k, n) in [(1, 4), (2, 3), (3, 3)] {
            let all = enumerate_factorizations(kp(k, n), 100_000).unwrap();
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for f in &all {
                assert!(Factorization::new(f.params(), &f.factors()).is_ok(), "{f}");
            }
        }
    }

    #[test]
    fn mask_moves_match_permutation_moves() {
        for (k, n) in [(1, 4), (2, 3), (3, 2), (2, 2)] {
            for f in enumerate_factorizations(kp(k, n), 100_000).unwrap() {
                for i in 1..n {
                    for inverse in [false, true] {
                        let by_mask = f.sigma(i, inverse).unwrap().factors();
                        let general = hurwitz_sigma_general(&f.factors(), i, inverse).unwrap();
                        assert_eq!(by_mask, general);
                        assert_eq!(product(f.params().big_n(), &general), f.params().long_cycle());
                    }
                }
            }
        }
    }

    #[test]
    fn orbits_are_everything() {
        for (k, n) in [(2, 3), (1, 3), (1, 4), (3, 2)] {
            let params = kp(k, n);
            let all = enumerate_factorizations(params, 100_000).unwrap();
            for f in &all {
                assert_eq!(hurwitz_orbit(f, 100_000).unwrap(), all);
            }
        }
        let single = staircase(kp(3, 1));
        assert_eq!(hurwitz_orbit_size(&single, 10).unwrap(), 1);
    }

    #[test]
    fn orbit_bound_is_reported() {
        let f = staircase(kp(1, 4));
        assert!(matches!(hurwitz_orbit_size(&f, 10), Err(Error::BoundExceeded { .. })));
        let rep = orbit_report(&f, 1000).unwrap();
        assert!(rep.transitive);
        assert_eq!(rep.orbit_size, 125);
    }

    #[test]
    fn sym_action_is_an_action() {
        let params = kp(2, 3);
        for f in enumerate_factorizations(params, 1000).unwrap() {
            for i in 1..3 {
                let g = f.sym_action(i).unwrap();
                assert_eq!(g.sym_action(i).unwrap(), f);
                let mut mins = f.minima();
                mins.swap(i - 1, i);
                assert_eq!(g.minima(), mins);
            }
            // braid relation s1 s2 s1 = s2 s1 s2
            let a = f.sym_action(1).unwrap().sym_action(2).unwrap().sym_action(1).unwrap();
            let b = f.sym_action(2).unwrap().sym_action(1).unwrap().sym_action(2).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn staircase_is_a_factorization() {
        for (k, n) in [(1, 3), (2, 4), (3, 2)] {
            let f = staircase(kp(k, n));
            assert!(Factorization::new(f.params(), &f.factors()).is_ok());
        }
    }
}

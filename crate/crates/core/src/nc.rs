//! Membership in `NC_{N;k}`, the Kreweras complement and enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::counting::raney;
use crate::error::{Error, Result};
use crate::perm::{ell_k_oracle, EllK, KParams, Permutation, DEFAULT_ORACLE_BOUND};

/// Largest degree for which membership test (i) asks the search oracle.
pub const ORACLE_MAX_DEGREE: usize = 8;
/// Default cap on `N` for enumeration.
pub const DEFAULT_MAX_DEGREE: usize = 17;
/// Default cap on the number of enumerated elements.
pub const DEFAULT_MAX_ELEMENTS: u64 = 2_000_000;

/// Why a permutation fails to be a k-indivisible noncrossing partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossingWitness {
    /// `a < c < b < d` with `a, b` in one cycle and `c, d` in another.
    Crossing { a: usize, b: usize, c: usize, d: usize },
    /// A cycle whose length is not 1 mod k.
    CycleLength { cycle: Vec<usize> },
    /// Consecutive entries `i < j` of a cycle with `j - i` not 1 mod k.
    Gap { cycle: Vec<usize>, i: usize, j: usize },
    /// The cycle entries do not increase (only possible for crossing-free
    /// but non-increasing cycles, such as `(1 3 2)`).
    NotIncreasing { cycle: Vec<usize> },
}

impl CrossingWitness {
    /// Re-checks the witness against `w`.
    pub fn holds_for(&self, w: &Permutation, k: usize) -> bool {
        let labels = w.block_labels();
        let same = |x: usize, y: usize| labels[x - 1] == labels[y - 1];
        let is_cycle = |cycle: &[usize]| {
            w.cycles().iter().any(|c| c == cycle)
        };
        match self {
            CrossingWitness::Crossing { a, b, c, d } => {
                a < c && c < b && b < d && same(*a, *b) && same(*c, *d) && !same(*a, *c)
            }
            CrossingWitness::CycleLength { cycle } => is_cycle(cycle) && cycle.len() % k != 1 % k,
            CrossingWitness::Gap { cycle, i, j } => {
                is_cycle(cycle) && i < j && w.apply(*i) == *j && (j - i) % k != 1 % k
            }
            CrossingWitness::NotIncreasing { cycle } => {
                is_cycle(cycle) && cycle.windows(2).any(|p| p[0] > p[1])
            }
        }
    }
}

impl fmt::Display for CrossingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingWitness::Crossing { a, b, c, d } => {
                write!(f, "blocks cross: {a}<{c}<{b}<{d}")
            }
            CrossingWitness::CycleLength { cycle } => write!(f, "cycle {cycle:?} has bad length"),
            CrossingWitness::Gap { cycle, i, j } => write!(f, "gap {i}->{j} in {cycle:?}"),
            CrossingWitness::NotIncreasing { cycle } => write!(f, "cycle {cycle:?} not increasing"),
        }
    }
}

/// Stack scan over block labels; `true` iff no two blocks cross.
pub fn is_noncrossing(w: &Permutation) -> bool {
    let labels = w.block_labels();
    let n = labels.len();
    let mut last = vec![0usize; n];
    for (x, &l) in labels.iter().enumerate() {
        last[l as usize] = x;
    }
    let mut stack: Vec<u8> = Vec::new();
    for (x, &l) in labels.iter().enumerate() {
        if l as usize == x {
            if last[x] > x {
                stack.push(l);
            }
        } else {
            if stack.last() != Some(&l) {
                return false;
            }
            if last[l as usize] == x {
                stack.pop();
            }
        }
    }
    true
}

/// A crossing quadruple `a < c < b < d`, if any.
pub fn crossing_witness(w: &Permutation) -> Option<CrossingWitness> {
    let labels = w.block_labels();
    let n = labels.len();
    for a in 0..n {
        for c in a + 1..n {
            if labels[c] == labels[a] {
                continue;
            }
            for b in c + 1..n {
                if labels[b] != labels[a] {
                    continue;
                }
                if let Some(d) = (b + 1..n).find(|&d| labels[d] == labels[c]) {
                    return Some(CrossingWitness::Crossing { a: a + 1, b: b + 1, c: c + 1, d: d + 1 });
                }
            }
        }
    }
    None
}

/// `Krew(w) = w⁻¹ c_N`.
pub fn kreweras(w: &Permutation) -> Permutation {
    &w.inverse() * &Permutation::long_cycle(w.degree())
}

/// First reason `w` violates characterization (iii), or `None` if it passes.
pub fn indivisibility_witness(w: &Permutation, params: KParams) -> Option<CrossingWitness> {
    let k = params.k;
    if let Some(x) = crossing_witness(w) {
        return Some(x);
    }
    for cycle in w.cycles() {
        if cycle.len() % k != 1 % k {
            return Some(CrossingWitness::CycleLength { cycle });
        }
        if cycle.windows(2).any(|p| p[0] > p[1]) {
            return Some(CrossingWitness::NotIncreasing { cycle });
        }
        for p in cycle.windows(2) {
            if (p[1] - p[0]) % k != 1 % k {
                return Some(CrossingWitness::Gap { cycle: cycle.clone(), i: p[0], j: p[1] });
            }
        }
    }
    None
}

/// Characterization (iii): noncrossing, cycles of length 1 mod k, and
/// consecutive cycle entries differing by 1 mod k.
pub fn is_k_indivisible_iii(w: &Permutation, params: KParams) -> bool {
    if w.degree() != params.big_n() || !is_noncrossing(w) {
        return false;
    }
    let k = params.k;
    w.cycles().iter().all(|c| {
        c.len() % k == 1 % k && c.windows(2).all(|p| p[0] < p[1] && (p[1] - p[0]) % k == 1 % k)
    })
}

/// Noncrossing blocks, each cycle read clockwise (increasing from its
/// minimum). Only these permutations stand for noncrossing partitions.
pub fn is_noncrossing_partition(w: &Permutation) -> bool {
    is_noncrossing(w) && w.cycles().iter().all(|c| c.windows(2).all(|p| p[0] < p[1]))
}

/// Characterization (ii): a noncrossing partition with `w` and `Krew(w)`
/// both 1 mod k.
pub fn is_k_indivisible_ii(w: &Permutation, params: KParams) -> bool {
    w.degree() == params.big_n()
        && is_noncrossing_partition(w)
        && w.is_one_mod_k(params.k)
        && kreweras(w).is_one_mod_k(params.k)
}

/// Exact `ℓ_k(w)` where cheaply known: closed form on 1 mod k inputs,
/// search for tiny degrees. `None` outside the generated subgroup or when
/// neither route applies.
pub(crate) fn ell_k_known(w: &Permutation, k: usize) -> Option<usize> {
    match w.ell_k(k) {
        Ok(EllK::Value(v)) => Some(v),
        Ok(EllK::UndefinedFast) if w.degree() <= ORACLE_MAX_DEGREE => {
            ell_k_oracle(w, k, DEFAULT_ORACLE_BOUND).ok()
        }
        _ => None,
    }
}

/// Characterization (i): `w ≤_k c_N`, tested as `ℓ_k(w) + ℓ_k(w⁻¹c_N) = n`.
///
/// For degrees past the search oracle, a factor that is not 1 mod k has
/// `ℓ_k > ℓ_1 / k`, and `ℓ_1(w) + ℓ_1(w⁻¹c_N) ≥ kn`, so the sum exceeds `n`.
pub fn is_k_indivisible_i(w: &Permutation, params: KParams) -> bool {
    if w.degree() != params.big_n() {
        return false;
    }
    let k = params.k;
    let v = kreweras(w);
    if k % 2 == 0 && (!w.is_even() || !v.is_even()) {
        return false;
    }
    match (ell_k_known(w, k), ell_k_known(&v, k)) {
        (Some(a), Some(b)) => a + b == params.n,
        _ => false,
    }
}

/// An element of `NC_{N;k}`; construction re-validates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NoncrossingElement {
    perm: Permutation,
    params: KParams,
}

impl NoncrossingElement {
    pub fn new(perm: Permutation, params: KParams) -> Result<Self> {
        if perm.degree() != params.big_n() {
            return Err(Error::DegreeMismatch { left: perm.degree(), right: params.big_n() });
        }
        if let Some(why) = indivisibility_witness(&perm, params) {
            return Err(Error::InvalidInput(format!("{perm} not in NC: {why}")));
        }
        Ok(NoncrossingElement { perm, params })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn rank(&self) -> usize {
        self.perm.ell_1() / self.params.k
    }

    pub fn kreweras(&self) -> NoncrossingElement {
        NoncrossingElement { perm: kreweras(&self.perm), params: self.params }
    }

    pub fn record(&self) -> ElementRecord {
        ElementRecord { n: self.params.n, k: self.params.k, cycles: self.perm.cycles() }
    }
}

impl fmt::Display for NoncrossingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.perm.fmt(f)
    }
}

/// JSON form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub n: usize,
    pub k: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl ElementRecord {
    pub fn to_element(&self) -> Result<NoncrossingElement> {
        let params = KParams::new(self.k, self.n)?;
        NoncrossingElement::new(Permutation::from_cycles(params.big_n(), &self.cycles)?, params)
    }
}

/// Partitions of `{0..len}` meeting condition (iii), as block-minimum labels.
/// The block of 0 picks entries with gaps 1 mod k; gaps and the tail are
/// filled recursively.
fn interval_partitions(len: usize, k: usize, memo: &mut HashMap<usize, Arc<Vec<Vec<u8>>>>) -> Arc<Vec<Vec<u8>>> {
    if let Some(v) = memo.get(&len) {
        return v.clone();
    }
    let mut out: Vec<Vec<u8>> = Vec::new();
    if len == 0 {
        out.push(Vec::new());
    } else {
        let mut blocks = Vec::new();
        let mut cur = vec![0usize];
        block_choices(len, k, &mut cur, &mut blocks);
        for block in blocks {
            // sub-intervals: gaps between block entries, then the tail
            let mut pieces: Vec<(usize, usize)> = block
                .windows(2)
                .map(|p| (p[0] + 1, p[1] - p[0] - 1))
                .collect();
            let last = *block.last().unwrap();
            pieces.push((last + 1, len - last - 1));
            let fills: Vec<Arc<Vec<Vec<u8>>>> =
                pieces.iter().map(|&(_, l)| interval_partitions(l, k, memo)).collect();
            // block entries keep label 0, the minimum
            let base = vec![0u8; len];
            let mut idx = vec![0usize; pieces.len()];
            'outer: loop {
                let mut labels = base.clone();
                for (p, &(start, l)) in pieces.iter().enumerate() {
                    let fill = &fills[p][idx[p]];
                    for i in 0..l {
                        labels[start + i] = fill[i] + start as u8;
                    }
                }
                out.push(labels);
                for p in (0..pieces.len()).rev() {
                    idx[p] += 1;
                    if idx[p] < fills[p].len() {
                        continue 'outer;
                    }
                    idx[p] = 0;
                }
                break;
            }
        }
    }
    let out = Arc::new(out);
    memo.insert(len, out.clone());
    out
}

fn block_choices(len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() % k == 1 % k {
        out.push(cur.clone());
    }
    let last = *cur.last().unwrap();
    let mut next = last + 1;
    while next < len {
        cur.push(next);
        block_choices(len, k, cur, out);
        cur.pop();
        next += k;
    }
}

fn labels_to_perm(labels: &[u8]) -> Permutation {
    let n = labels.len();
    let mut image = vec![0u8; n];
    for x in 0..n {
        let next = (x + 1..n).find(|&y| labels[y] == labels[x]);
        image[x] = next.unwrap_or(labels[x] as usize) as u8;
    }
    Permutation::from_raw(image)
}

/// All of `NC_{N;k}` sorted by rank, then by image table.
pub fn enumerate_nc(params: KParams) -> Result<Vec<NoncrossingElement>> {
    enumerate_nc_bounded(params, DEFAULT_MAX_DEGREE, DEFAULT_MAX_ELEMENTS)
}

pub fn enumerate_nc_bounded(
    params: KParams,
    max_degree: usize,
    max_elements: u64,
) -> Result<Vec<NoncrossingElement>> {
    let big_n = params.big_n();
    if big_n > max_degree {
        return Err(Error::BoundExceeded { what: "N", value: big_n as u64, bound: max_degree as u64 });
    }
    let expected = raney(params.n as u64, params.k as i64 + 1, 2)?;
    if expected > max_elements.into() {
        return Err(Error::BoundExceeded {
            what: "|NC|",
            value: u64::try_from(&expected).unwrap_or(u64::MAX),
            bound: max_elements,
        });
    }
    let mut memo = HashMap::new();
    let parts = interval_partitions(big_n, params.k, &mut memo);
    let mut out: Vec<NoncrossingElement> = parts
        .iter()
        .map(|l| NoncrossingElement { perm: labels_to_perm(l), params })
        .collect();
    sort_elements(&mut out);
    Ok(out)
}

fn sort_elements(v: &mut [NoncrossingElement]) {
    v.sort_by(|a, b| (a.rank(), a.perm.raw()).cmp(&(b.rank(), b.perm.raw())));
}

/// Reference enumeration: filter all of `S_N` through characterization (iii).
pub fn enumerate_nc_by_filter(params: KParams) -> Result<Vec<NoncrossingElement>> {
    let big_n = params.big_n();
    if big_n > 8 {
        return Err(Error::BoundExceeded { what: "N", value: big_n as u64, bound: 8 });
    }
    let mut out = Vec::new();
    for_each_permutation(big_n, |w| {
        if is_k_indivisible_iii(w, params) {
            out.push(NoncrossingElement { perm: w.clone(), params });
        }
    });
    sort_elements(&mut out);
    Ok(out)
}

/// Calls `f` on every permutation of degree `degree` (Heap's algorithm).
pub fn for_each_permutation(degree: usize, mut f: impl FnMut(&Permutation)) {
    let mut img: Vec<u8> = (0..degree as u8).collect();
    let mut c = vec![0usize; degree];
    f(&Permutation::from_raw(img.clone()));
    let mut i = 0;
    while i < degree {
        if c[i] < i {
            if i % 2 == 0 {
                img.swap(0, i);
            } else {
                img.swap(c[i], i);
            }
            f(&Permutation::from_raw(img.clone()));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

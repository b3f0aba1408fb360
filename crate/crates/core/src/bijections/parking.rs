//! k-parking functions and the minima map from factorizations.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hurwitz::Factorization;
use crate::perm::KParams;

/// A tuple whose sorted copy `b` has `b_i ≤ k(i−1)+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction {
    k: usize,
    entries: Vec<usize>,
}

/// True when `entries` is a `k`-parking function.
pub fn is_parking(entries: &[usize], k: usize) -> bool {
    let mut b = entries.to_vec();
    b.sort_unstable();
    b.iter().enumerate().all(|(i, &x)| x >= 1 && x <= k * i + 1)
}

impl ParkingFunction {
    pub fn new(k: usize, entries: Vec<usize>) -> Result<Self> {
        if k == 0 || entries.is_empty() {
            return Err(Error::InvalidParams("k and the length must be positive".into()));
        }
        if !is_parking(&entries, k) {
            return Err(Error::InvalidInput(format!("{entries:?} is not a {k}-parking function")));
        }
        Ok(ParkingFunction { k, entries })
    }

    /// Parses a comma list such as `1,3,1`.
    pub fn parse(k: usize, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|s| usize::from_str(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn params(&self) -> KParams {
        KParams::new(self.k, self.entries.len()).expect("validated on construction")
    }

    /// `s_i` swaps entries `i` and `i+1` (1-based).
    pub fn swap(&self, i: usize) -> Result<ParkingFunction> {
        if i == 0 || i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.len() - 1 });
        }
        let mut entries = self.entries.clone();
        entries.swap(i - 1, i);
        Ok(ParkingFunction { k: self.k, entries })
    }
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

/// Every `k`-parking function of length `n`, lexicographically.
pub fn enumerate_parking(params: KParams, max: u64) -> Result<Vec<ParkingFunction>> {
    let big_n = params.big_n();
    let space = (big_n as u64).checked_pow(params.n as u32).unwrap_or(u64::MAX);
    if space > max {
        return Err(Error::BoundExceeded { what: "tuples to scan", value: space, bound: max });
    }
    Ok((0..params.n)
        .map(|_| 1..=big_n)
        .multi_cartesian_product()
        .filter(|t| is_parking(t, params.k))
        .map(|entries| ParkingFunction { k: params.k, entries })
        .collect())
}

/// The minima `(t_{1,1}, …, t_{n,1})`.
pub fn phi(f: &Factorization) -> ParkingFunction {
    ParkingFunction { k: f.params().k, entries: f.minima() }
}

/// Masks for the nondecreasing factorization with nondecreasing minima `p`:
/// the last factor is `(a a+1 … a+k)`, the rest lives on the long cycle
/// that remains once its interior is removed.
fn sorted_masks(k: usize, p: &[usize]) -> Vec<u64> {
    let Some((&a, rest)) = p.split_last() else {
        return Vec::new();
    };
    let low = (1u64 << a) - 1;
    let mut masks: Vec<u64> = sorted_masks(k, rest)
        .into_iter()
        .map(|m| (m & low) | (m >> a) << (a + k))
        .collect();
    masks.push(((1u64 << (k + 1)) - 1) << (a - 1));
    masks
}

/// The unique factorization with minima `p`.
pub fn phi_inverse(p: &ParkingFunction) -> Result<Factorization> {
    let params = p.params();
    let mut sorted = p.entries.clone();
    sorted.sort_unstable();
    let mut f = Factorization::from_masks(params, sorted_masks(params.k, &sorted))?;
    // move each target value into place with adjacent transpositions
    let mut cur = sorted;
    for i in 0..cur.len() {
        let j = (i..cur.len()).find(|&j| cur[j] == p.entries[i]).expect("same multiset");
        for s in (i..j).rev() {
            f = f.sym_action(s + 1)?;
            cur.swap(s, s + 1);
        }
    }
    debug_assert_eq!(f.minima(), p.entries);
    Ok(f)
}

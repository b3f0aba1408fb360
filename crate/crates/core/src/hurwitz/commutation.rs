//! Commutation classes: factorizations equal up to swapping adjacent
//! factors with disjoint supports.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;

use super::{count_factorizations, for_each_factorization, Factorization};
use crate::error::{Error, Result};
use crate::perm::KParams;

/// Compares two equal-size supports by their increasing entry lists.
#[inline]
pub(crate) fn factor_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if (a ^ b) & (a ^ b).wrapping_neg() & a != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub(crate) fn seq_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.iter().zip(b).map(|(&x, &y)| factor_cmp(x, y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Least member of the class of `masks`: the greedy lexicographically least
/// topological sort of the "shares an entry and comes earlier" order.
pub(crate) fn canonical_masks(masks: &[u64]) -> Vec<u64> {
    let n = masks.len();
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if placed[j] {
                continue;
            }
            let blocked = (0..j).any(|i| !placed[i] && masks[i] & masks[j] != 0);
            if blocked {
                continue;
            }
            if best.is_none_or(|b| factor_cmp(masks[j], masks[b]).is_lt()) {
                best = Some(j);
            }
        }
        let b = best.expect("dependency order is acyclic");
        placed[b] = true;
        out.push(masks[b]);
    }
    out
}

/// One commutation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommClass {
    pub representative: Factorization,
    pub size: u64,
}

impl CommClass {
    /// The class of `f`, with its members counted.
    pub fn of(f: &Factorization) -> CommClass {
        let rep = Factorization::from_masks_unchecked(f.params(), canonical_masks(f.masks()));
        let size = class_members(&rep).len() as u64;
        CommClass { representative: rep, size }
    }
}

/// All members of the class of `f`, by breadth-first search over swaps.
pub fn class_members(f: &Factorization) -> Vec<Factorization> {
    let mut seen: HashSet<Vec<u64>> = HashSet::from([f.masks().to_vec()]);
    let mut queue = VecDeque::from([f.masks().to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i] & cur[i + 1] == 0 {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
    out.sort_by(|a, b| seq_cmp(a, b));
    out.into_iter().map(|m| Factorization::from_masks_unchecked(f.params(), m)).collect()
}

/// Every class of `Fact_k(c_N)`, ordered by representative.
pub fn commutation_classes(params: KParams, max_factorizations: u64) -> Result<Vec<CommClass>> {
    let total = count_factorizations(params);
    if total > BigInt::from(max_factorizations) {
        return Err(Error::BoundExceeded {
            what: "factorizations",
            value: u64::try_from(&total).unwrap_or(u64::MAX),
            bound: max_factorizations,
        });
    }
    let mut sizes: HashMap<Vec<u64>, u64> = HashMap::new();
    for_each_factorization(params, |m| *sizes.entry(canonical_masks(m)).or_insert(0) += 1);
    let mut out: Vec<CommClass> = sizes
        .into_iter()
        .map(|(m, size)| CommClass { representative: Factorization::from_masks_unchecked(params, m), size })
        .collect();
    out.sort_by(|a, b| seq_cmp(a.representative.masks(), b.representative.masks()));
    Ok(out)
}

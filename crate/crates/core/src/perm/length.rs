//! Exhaustive `ℓ_k` by breadth-first search over `S_K`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::Permutation;
use crate::error::{Error, Result};

/// Largest state space the oracle will explore unless told otherwise (9! fits).
pub const DEFAULT_ORACLE_BOUND: u64 = 400_000;

const UNSEEN: u8 = u8::MAX;

struct DistanceTable {
    dist: Vec<u8>,
}

type Cache = Mutex<HashMap<(usize, usize), Arc<DistanceTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn lehmer_rank(p: &[u8], fact: &[u64]) -> usize {
    let k = p.len();
    let mut r = 0u64;
    for i in 0..k {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count() as u64;
        r += smaller * fact[k - 1 - i];
    }
    r as usize
}

fn lehmer_unrank(mut r: u64, k: usize, fact: &[u64], out: &mut Vec<u8>) {
    let mut pool: Vec<u8> = (0..k as u8).collect();
    out.clear();
    for i in 0..k {
        let f = fact[k - 1 - i];
        let idx = (r / f) as usize;
        r %= f;
        out.push(pool.remove(idx));
    }
}

/// All `(k+1)`-cycles on `{1..K}` as 0-based image tables.
fn cycle_generators(degree: usize, k: usize) -> Vec<Vec<u8>> {
    let mut gens = Vec::new();
    for subset in (0..degree).combinations(k + 1) {
        for rest in subset[1..].iter().copied().permutations(k) {
            let mut entries = vec![subset[0]];
            entries.extend(rest);
            let mut img: Vec<u8> = (0..degree as u8).collect();
            for (i, &x) in entries.iter().enumerate() {
                img[x] = entries[(i + 1) % entries.len()] as u8;
            }
            gens.push(img);
        }
    }
    gens
}

fn build_table(degree: usize, k: usize) -> DistanceTable {
    let fact: Vec<u64> = (0..=degree).map(factorial).collect();
    let total = fact[degree] as usize;
    let mut dist = vec![UNSEEN; total];
    let gens = cycle_generators(degree, k);
    let id: Vec<u8> = (0..degree as u8).collect();
    let start = lehmer_rank(&id, &fact);
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut cur = Vec::with_capacity(degree);
    let mut next = vec![0u8; degree];
    while let Some(r) = queue.pop_front() {
        lehmer_unrank(r as u64, degree, &fact, &mut cur);
        let d = dist[r];
        for g in &gens {
            // w·t: t acts first
            for (x, slot) in next.iter_mut().enumerate() {
                *slot = cur[g[x] as usize];
            }
            let s = lehmer_rank(&next, &fact);
            if dist[s] == UNSEEN {
                dist[s] = d + 1;
                queue.push_back(s);
            }
        }
    }
    DistanceTable { dist }
}

/// Minimum number of `(k+1)`-cycles whose product is `w`, by exhaustive
/// search. `bound` caps the number of states (`K!`) the search may visit.
pub fn ell_k_oracle(w: &Permutation, k: usize, bound: u64) -> Result<usize> {
    let degree = w.degree();
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let states = if degree > 20 { u64::MAX } else { factorial(degree) };
    if states > bound {
        return Err(Error::OracleBound { states, bound });
    }
    if k + 1 > degree {
        return if w.is_identity() { Ok(0) } else { Err(Error::NotInGroup { cycle_len: k + 1 }) };
    }
    let table = {
        let mut guard = cache().lock().expect("oracle cache poisoned");
        guard
            .entry((degree, k))
            .or_insert_with(|| Arc::new(build_table(degree, k)))
            .clone()
    };
    let fact: Vec<u64> = (0..=degree).map(factorial).collect();
    match table.dist[lehmer_rank(w.raw(), &fact)] {
        UNSEEN => Err(Error::NotInGroup { cycle_len: k + 1 }),
        d => Ok(d as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::EllK;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse(s, deg).unwrap()
    }

    #[test]
    fn rank_unrank_round_trip() {
        let fact: Vec<u64> = (0..=5).map(factorial).collect();
        let mut buf = Vec::new();
        for r in 0..120 {
            lehmer_unrank(r, 5, &fact, &mut buf);
            assert_eq!(lehmer_rank(&buf, &fact) as u64, r);
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(ell_k_oracle(&p(3, "(1 2 3)"), 2, 1000).unwrap(), 1);
        assert_eq!(ell_k_oracle(&p(5, "(1 2 3 4 5)"), 2, 1000).unwrap(), 2);
        assert_eq!(ell_k_oracle(&p(4, "(1 2)(3 4)"), 2, 1000).unwrap(), 2);
        assert_eq!(ell_k_oracle(&Permutation::identity(6), 3, 1000).unwrap(), 0);
    }

    #[test]
    fn oracle_reports_bound_and_group() {
        assert_eq!(
            ell_k_oracle(&Permutation::identity(8), 1, 1000),
            Err(Error::OracleBound { states: 40320, bound: 1000 })
        );
        assert_eq!(
            ell_k_oracle(&p(4, "(1 2)"), 2, 1000),
            Err(Error::NotInGroup { cycle_len: 3 })
        );
    }

    #[test]
    fn closed_form_agrees_with_search() {
        // every 1 mod k permutation of degree <= 7
        for deg in 1..=7usize {
            for k in 1..=3usize {
                for img in (1..=deg).permutations(deg) {
                    let w = Permutation::from_images(&img).unwrap();
                    match w.ell_k(k) {
                        Ok(EllK::Value(v)) => {
                            assert_eq!(ell_k_oracle(&w, k, 10_000).unwrap(), v, "{w:?} k={k}")
                        }
                        Ok(EllK::UndefinedFast) | Err(_) => {}
                    }
                }
            }
        }
    }

    #[test]
    fn joining_a_cycle_loses_at_most_k_cycles() {
        for deg in 2..=6usize {
            for k in 1..deg {
                let gens = cycle_generators(deg, k);
                for img in (1..=deg).permutations(deg) {
                    let w = Permutation::from_images(&img).unwrap();
                    for g in &gens {
                        let t = Permutation::from_raw(g.clone());
                        assert!((&w * &t).cycle_count() + k >= w.cycle_count());
                    }
                }
            }
        }
    }

    #[test]
    fn covers_match_length_additivity() {
        // u ⋖ w iff ℓ(u) + ℓ(u⁻¹w) = ℓ(w) and ℓ(u⁻¹w) = 1
        for (deg, k) in [(5usize, 2usize), (7, 3), (4, 1), (5, 1), (7, 2)] {
            let bound = 10_000;
            let w = Permutation::long_cycle(deg);
            let lw = ell_k_oracle(&w, k, bound).unwrap();
            let covers = w.covers_below(k).unwrap();
            let mut expected = Vec::new();
            for img in (1..=deg).permutations(deg) {
                let u = Permutation::from_images(&img).unwrap();
                let (Ok(lu), Ok(lq)) =
                    (ell_k_oracle(&u, k, bound), ell_k_oracle(&(&u.inverse() * &w), k, bound))
                else {
                    continue;
                };
                if lu + lq == lw && lq == 1 {
                    expected.push(u);
                }
            }
            expected.sort();
            assert_eq!(covers, expected, "deg={deg} k={k}");
        }
    }
}

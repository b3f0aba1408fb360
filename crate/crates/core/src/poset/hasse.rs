//! Finite posets stored as up-set bit rows plus cover lists.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A finite poset with its Hasse diagram. Immutable once built.
#[derive(Clone, Debug)]
pub struct HasseDiagram<T> {
    elements: Vec<T>,
    rank: Vec<usize>,
    up: Vec<FixedBitSet>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    order: Vec<usize>,
}

fn order_rows(n: usize, rank: Option<&[usize]>, leq: impl Fn(usize, usize) -> bool + Sync) -> Vec<FixedBitSet> {
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for y in 0..n {
                if y == x {
                    continue;
                }
                if let Some(r) = rank {
                    if r[y] <= r[x] {
                        continue;
                    }
                }
                if leq(x, y) {
                    row.insert(y);
                }
            }
            row
        })
        .collect()
}

/// A linear extension: elements sorted by down-set size.
fn linear_extension(up: &[FixedBitSet]) -> Vec<usize> {
    let n = up.len();
    let mut below = vec![0usize; n];
    for row in up {
        for y in row.ones() {
            below[y] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (below[x], x));
    order
}

impl<T> HasseDiagram<T> {
    /// Graded poset: `rank` is a rank function, so covers are the
    /// comparable pairs whose ranks differ by one. `leq` takes indices.
    pub fn from_graded_order(elements: Vec<T>, rank: Vec<usize>, leq: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let up = order_rows(elements.len(), Some(&rank), leq);
        let n = elements.len();
        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].ones() {
                if rank[y] == rank[x] + 1 {
                    covers_up[x].push(y);
                    covers_down[y].push(x);
                }
            }
        }
        let order = linear_extension(&up);
        HasseDiagram { elements, rank, up, covers_up, covers_down, order }
    }

    /// Any finite poset given by its order relation. Covers are derived from
    /// the relation; `rank` is the height (longest chain down to a minimum).
    /// `leq` takes indices.
    pub fn from_order(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool + Sync) -> Result<Self> {
        let up = order_rows(elements.len(), None, leq);
        Self::from_up_rows(elements, up)
    }

    /// A poset given by its cover relation; the order is the reflexive
    /// transitive closure. Fails on directed cycles.
    pub fn from_covers(elements: Vec<T>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("cover ({a},{b}) outside 0..{n}")));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn order, then closure in reverse
        let mut topo = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidInput("cover relation has a cycle".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Self::from_up_rows(elements, up)
    }

    fn from_up_rows(elements: Vec<T>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = elements.len();
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::InvalidInput(format!("relation not antisymmetric at ({x},{y})")));
                }
            }
        }
        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = up[x].clone();
            strict.set(x, false);
            for y in strict.ones() {
                // y covers x iff nothing strictly between
                let between = strict.ones().any(|z| z != y && up[z].contains(y));
                if !between {
                    covers_up[x].push(y);
                    covers_down[y].push(x);
                }
            }
        }
        let order = linear_extension(&up);
        let mut rank = vec![0usize; n];
        for &y in &order {
            rank[y] = covers_down[y].iter().map(|&x| rank[x] + 1).max().unwrap_or(0);
        }
        Ok(HasseDiagram { elements, rank, up, covers_up, covers_down, order })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn covers_above(&self, x: usize) -> &[usize] {
        &self.covers_up[x]
    }

    pub fn covers_below(&self, x: usize) -> &[usize] {
        &self.covers_down[x]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .covers_up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..) - 1).sum()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers_down[x].is_empty()).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers_up[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minima().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maxima().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// `true` iff every cover raises the rank by exactly one and all minima
    /// sit at rank 0 and all maxima share one rank.
    pub fn is_graded(&self) -> bool {
        let covers_ok = self.covers().iter().all(|&(x, y)| self.rank[y] == self.rank[x] + 1);
        let max_ranks: Vec<usize> = self.maxima().iter().map(|&x| self.rank[x]).collect();
        covers_ok
            && self.minima().iter().all(|&x| self.rank[x] == 0)
            && max_ranks.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of elements at each rank.
    pub fn rank_profile(&self) -> Vec<usize> {
        let top = self.rank.iter().copied().max().unwrap_or(0);
        let mut prof = vec![0usize; top + 1];
        for &r in &self.rank {
            prof[r] += 1;
        }
        prof
    }

    /// Number of multichains `x_1 ≤ … ≤ x_q`, by summing over down-sets `q` times.
    pub fn multichains(&self, q: usize) -> BigInt {
        if q == 0 {
            return BigInt::one();
        }
        let n = self.len();
        let mut f = vec![BigInt::one(); n];
        for _ in 1..q {
            let mut g = vec![BigInt::zero(); n];
            for x in 0..n {
                for y in self.up[x].ones() {
                    g[y] += &f[x];
                }
            }
            f = g;
        }
        f.into_iter().sum()
    }

    /// Multichains `x_1 ≤ … ≤ x_q` with prescribed rank jumps, measured from
    /// rank 0 and up to `top_rank`: `r = (rk x_1, rk x_2 − rk x_1, …, top_rank − rk x_q)`.
    pub fn multichains_by_jump(&self, r: &[usize], top_rank: usize) -> Result<BigInt> {
        if r.is_empty() || r.iter().sum::<usize>() != top_rank {
            return Err(Error::Precondition(format!("jump vector {r:?} does not sum to {top_rank}")));
        }
        let q = r.len() - 1;
        if q == 0 {
            return Ok(BigInt::one());
        }
        let n = self.len();
        let mut f: Vec<BigInt> = (0..n)
            .map(|x| if self.rank[x] == r[0] { BigInt::one() } else { BigInt::zero() })
            .collect();
        for &jump in &r[1..q] {
            let mut g = vec![BigInt::zero(); n];
            for x in 0..n {
                if f[x].is_zero() {
                    continue;
                }
                for y in self.up[x].ones() {
                    if self.rank[y] == self.rank[x] + jump {
                        g[y] += &f[x];
                    }
                }
            }
            f = g;
        }
        let last = r[q];
        Ok((0..n).filter(|&x| self.rank[x] + last == top_rank).map(|x| f[x].clone()).sum())
    }

    /// Number of maximal chains (cover paths from a minimal to a maximal element).
    pub fn maximal_chains(&self) -> BigInt {
        let n = self.len();
        let mut paths = vec![BigInt::zero(); n];
        for &x in self.order.iter().rev() {
            paths[x] = if self.covers_up[x].is_empty() {
                BigInt::one()
            } else {
                self.covers_up[x].iter().map(|&y| paths[y].clone()).sum()
            };
        }
        self.minima().into_iter().map(|x| paths[x].clone()).sum()
    }

    /// `μ(x, top)` for every `x`, zero where `x ≰ top`.
    fn mobius_to(&self, top: usize) -> Vec<BigInt> {
        mobius_to_rows(&self.up, &self.order, top)
    }

    /// `μ(bottom, top)`; needs a unique minimum and maximum.
    pub fn mobius(&self) -> Result<BigInt> {
        let (b, t) = self.bounds()?;
        Ok(self.mobius_to(t)[b].clone())
    }

    /// `μ` of the poset with a new minimum adjoined below everything.
    pub fn mobius_with_new_bottom(&self) -> Result<BigInt> {
        let t = self.top().ok_or_else(|| Error::Precondition("no unique maximum".into()))?;
        let mu = self.mobius_to(t);
        Ok(-mu.into_iter().sum::<BigInt>())
    }

    /// `μ` of the quotient in which all minimal elements are merged into one.
    pub fn mobius_with_merged_minima(&self) -> Result<BigInt> {
        let t = self.top().ok_or_else(|| Error::Precondition("no unique maximum".into()))?;
        let minima = self.minima();
        let n = self.len();
        // quotient: node 0 is the merged minimum, the rest keep their order
        let keep: Vec<usize> = (0..n).filter(|x| !minima.contains(x)).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i + 1;
        }
        let m = keep.len() + 1;
        let mut rows = vec![FixedBitSet::with_capacity(m); m];
        rows[0].insert_range(..);
        for (i, &x) in keep.iter().enumerate() {
            for y in self.up[x].ones() {
                rows[i + 1].insert(index[y]);
            }
        }
        let order = linear_extension(&rows);
        let mu = mobius_to_rows(&rows, &order, index[t]);
        Ok(mu[0].clone())
    }

    fn bounds(&self) -> Result<(usize, usize)> {
        let b = self.bottom().ok_or_else(|| Error::Precondition("no unique minimum".into()))?;
        let t = self.top().ok_or_else(|| Error::Precondition("no unique maximum".into()))?;
        Ok((b, t))
    }

    fn down_rows(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in self.up[x].ones() {
                down[y].insert(x);
            }
        }
        down
    }

    /// Least upper bound of `x` and `y`, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.up[x].clone();
        common.intersect_with(&self.up[y]);
        least_in(&common, &self.up, &self.order)
    }

    /// Greatest lower bound of `x` and `y`, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let down = self.down_rows();
        meet_with(&down, &self.order, x, y)
    }

    /// Checks that every pair has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        let down = self.down_rows();
        (0..n).all(|x| {
            (x + 1..n).all(|y| self.join(x, y).is_some() && meet_with(&down, &self.order, x, y).is_some())
        })
    }

    /// Index of the first element equal under `f`.
    pub fn position(&self, f: impl Fn(&T) -> bool) -> Option<usize> {
        self.elements.iter().position(f)
    }
}

fn least_in(set: &FixedBitSet, up: &[FixedBitSet], order: &[usize]) -> Option<usize> {
    let z = *order.iter().find(|&&z| set.contains(z))?;
    set.is_subset(&up[z]).then_some(z)
}

fn meet_with(down: &[FixedBitSet], order: &[usize], x: usize, y: usize) -> Option<usize> {
    let mut common = down[x].clone();
    common.intersect_with(&down[y]);
    let z = *order.iter().rev().find(|&&z| common.contains(z))?;
    common.is_subset(&down[z]).then_some(z)
}

fn mobius_to_rows(up: &[FixedBitSet], order: &[usize], top: usize) -> Vec<BigInt> {
    let n = up.len();
    let mut mu = vec![BigInt::zero(); n];
    for &x in order.iter().rev() {
        if !up[x].contains(top) {
            continue;
        }
        if x == top {
            mu[x] = BigInt::one();
            continue;
        }
        let mut s = BigInt::zero();
        for y in up[x].ones() {
            if y != x {
                s += &mu[y];
            }
        }
        mu[x] = -s;
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(n: usize) -> HasseDiagram<usize> {
        let els: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let e = els.clone();
        HasseDiagram::from_order(els, move |a, b| e[b] % e[a] == 0).unwrap()
    }

    fn chain(len: usize) -> HasseDiagram<usize> {
        let covers: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        HasseDiagram::from_covers((0..len).collect(), &covers).unwrap()
    }

    #[test]
    fn divisor_lattice() {
        let p = divisors(12);
        assert_eq!(p.len(), 6);
        assert_eq!(p.rank_profile(), vec![1, 2, 2, 1]);
        assert!(p.is_graded());
        assert!(p.is_lattice());
        // μ(1, 12) = 0 since 12 is not squarefree
        assert_eq!(p.mobius().unwrap(), BigInt::zero());
        assert_eq!(divisors(30).mobius().unwrap(), BigInt::from(-1));
        assert_eq!(p.maximal_chains(), BigInt::from(3));
    }

    #[test]
    fn chains_multichains() {
        let c = chain(3);
        // multichains of length q in a 3-chain: C(q+2, 2)
        assert_eq!(c.multichains(1), BigInt::from(3));
        assert_eq!(c.multichains(2), BigInt::from(6));
        assert_eq!(c.multichains(3), BigInt::from(10));
        assert_eq!(c.mobius().unwrap(), BigInt::zero());
        assert_eq!(chain(2).mobius().unwrap(), BigInt::from(-1));
        assert_eq!(c.multichains_by_jump(&[1, 0, 1], 2).unwrap(), BigInt::from(1));
        assert!(c.multichains_by_jump(&[1, 0], 2).is_err());
    }

    #[test]
    fn covers_detect_cycles() {
        assert!(HasseDiagram::from_covers(vec![0, 1], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn boolean_lattice_with_bottom_tricks() {
        // the two-element antichain plus a top
        let p = HasseDiagram::from_covers(vec![0, 1, 2], &[(0, 2), (1, 2)]).unwrap();
        assert!(p.bottom().is_none());
        // adjoining a bottom gives the boolean lattice B_2: μ = 1
        assert_eq!(p.mobius_with_new_bottom().unwrap(), BigInt::one());
        // merging minima gives a 2-chain: μ = -1
        assert_eq!(p.mobius_with_merged_minima().unwrap(), BigInt::from(-1));
        assert!(!p.is_lattice());
    }

    #[test]
    fn pentagon_is_lattice_not_graded() {
        let p = HasseDiagram::from_covers((0..5).collect(), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(p.is_lattice());
        assert!(!p.is_graded());
        assert_eq!(p.join(1, 3), Some(4));
        assert_eq!(p.meet(2, 3), Some(0));
        assert_eq!(p.maximal_chains(), BigInt::from(2));
    }
}

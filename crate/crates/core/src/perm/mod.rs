//! Permutations of `{1..K}` with right-first composition.

mod length;
mod notation;

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;

use crate::error::{Error, Result};

pub use length::{ell_k_oracle, DEFAULT_ORACLE_BOUND};

/// A permutation of `{1..K}`. Images are stored 0-based internally.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

/// Multiset of cycle lengths, sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
}

/// The parameters `k`, `n` and the derived degree `N = kn + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KParams {
    pub k: usize,
    pub n: usize,
}

impl KParams {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("k={k}, n={n}: both must be positive")));
        }
        if k * n + 1 > 64 {
            return Err(Error::InvalidParams(format!("N = {} exceeds 64", k * n + 1)));
        }
        Ok(KParams { k, n })
    }

    /// The degree `N = kn + 1`.
    #[inline]
    pub fn big_n(&self) -> usize {
        self.k * self.n + 1
    }

    pub fn long_cycle(&self) -> Permutation {
        Permutation::long_cycle(self.big_n())
    }
}

impl fmt::Display for KParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} N={}", self.k, self.n, self.big_n())
    }
}

/// Result of the closed-form length: only defined on 1 mod k permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllK {
    Value(usize),
    UndefinedFast,
}

impl EllK {
    pub fn value(self) -> Option<usize> {
        match self {
            EllK::Value(v) => Some(v),
            EllK::UndefinedFast => None,
        }
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= 255, "degree {degree} too large");
        Permutation { image: (0..degree as u8).collect() }
    }

    /// The long cycle `(1 2 … K)`.
    pub fn long_cycle(degree: usize) -> Self {
        assert!((1..=255).contains(&degree), "degree {degree} out of range");
        let d = degree as u8;
        Permutation { image: (0..d).map(|i| (i + 1) % d).collect() }
    }

    /// From 1-based images `[w(1), …, w(K)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k == 0 || k > 255 {
            return Err(Error::NotAPermutation(format!("degree {k}")));
        }
        let mut seen = vec![false; k];
        let mut image = Vec::with_capacity(k);
        for &v in images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
            image.push((v - 1) as u8);
        }
        Ok(Permutation { image })
    }

    /// From disjoint cycles written with 1-based entries. Missing points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        if degree == 0 || degree > 255 {
            return Err(Error::NotAPermutation(format!("degree {degree}")));
        }
        let mut image: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            let cyc = cyc.as_ref();
            for &x in cyc {
                if x == 0 || x > degree {
                    return Err(Error::NotAPermutation(format!("entry {x} outside 1..={degree}")));
                }
                if used[x - 1] {
                    return Err(Error::NotAPermutation(format!("entry {x} repeated")));
                }
                used[x - 1] = true;
            }
            for (i, &x) in cyc.iter().enumerate() {
                let y = cyc[(i + 1) % cyc.len()];
                image[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Permutation { image })
    }

    /// A single cycle on the given 1-based entries.
    pub fn cycle(degree: usize, entries: &[usize]) -> Result<Self> {
        Self::from_cycles(degree, &[entries])
    }

    /// The increasing cycle on the elements of a 0-based bit mask.
    pub fn from_mask(degree: usize, mask: u64) -> Self {
        let elems: Vec<usize> = (0..degree).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        Self::cycle(degree, &elems).expect("mask inside degree")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// `w(x)` for 1-based `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1] as usize + 1
    }

    /// 0-based image table.
    #[inline]
    pub fn raw(&self) -> &[u8] {
        &self.image
    }

    pub(crate) fn from_raw(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize + 1).collect()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        &(&g.inverse() * self) * g
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Canonical cycles, 1-based, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.image[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = [false; 256];
        let mut count = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lens)
    }

    /// `ℓ_1(w) = K − cyc(w)`, the transposition length.
    pub fn ell_1(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn is_even(&self) -> bool {
        self.ell_1() % 2 == 0
    }

    pub fn is_one_mod_k(&self, k: usize) -> bool {
        self.cycles().iter().all(|c| c.len() % k == 1 % k)
    }

    /// Closed-form `ℓ_k`, defined on 1 mod k permutations.
    pub fn ell_k(&self, k: usize) -> Result<EllK> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be positive".into()));
        }
        if k % 2 == 0 && !self.is_even() {
            return Err(Error::NotInGroup { cycle_len: k + 1 });
        }
        if self.is_one_mod_k(k) {
            Ok(EllK::Value(self.ell_1() / k))
        } else {
            Ok(EllK::UndefinedFast)
        }
    }

    /// Every `u` with `u ⋖_k w`: one cycle of `w` cut into `k+1` cycles of
    /// length 1 mod k. Found as `u = w·t⁻¹` over all `(k+1)`-cycles `t`
    /// supported inside a single cycle of `w`.
    pub fn covers_below(&self, k: usize) -> Result<Vec<Permutation>> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be positive".into()));
        }
        if !self.is_one_mod_k(k) {
            return Err(Error::Precondition(format!("{self} is not 1 mod {k}")));
        }
        let deg = self.degree();
        let target = self.cycle_count() + k;
        let mut out = Vec::new();
        for cyc in self.cycles() {
            if cyc.len() < k + 1 {
                continue;
            }
            for subset in cyc.iter().copied().combinations(k + 1) {
                let first = subset[0];
                for rest in subset[1..].iter().copied().permutations(k) {
                    let mut entries = vec![first];
                    entries.extend(rest);
                    let t = Permutation::cycle(deg, &entries)?;
                    let u = self * &t.inverse();
                    if u.cycle_count() == target && u.is_one_mod_k(k) {
                        out.push(u);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Bit mask of the support (non-fixed points), 0-based.
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.degree() <= 64);
        self.image
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i != v as usize)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Block labels: entry `x` holds the 0-based minimum of its cycle.
    pub fn block_labels(&self) -> Vec<u8> {
        let mut labels = vec![u8::MAX; self.degree()];
        for start in 0..self.degree() {
            if labels[start] != u8::MAX {
                continue;
            }
            let mut x = start;
            loop {
                labels[x] = start as u8;
                x = self.image[x] as usize;
                if x == start {
                    break;
                }
            }
        }
        labels
    }

    /// Refinement order: every cycle of `self` lies inside a cycle of `other`.
    pub fn refines(&self, other: &Permutation) -> bool {
        let a = self.block_labels();
        let b = other.block_labels();
        refines_labels(&a, &b)
    }
}

/// Refinement test on block-label arrays as produced by `block_labels`.
#[inline]
pub fn refines_labels(fine: &[u8], coarse: &[u8]) -> bool {
    fine.iter().zip(coarse).all(|(&f, &c)| coarse[f as usize] == c)
}

/// Right-first product. Panics on degree mismatch; use `compose` for a checked version.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation { image: rhs.image.iter().map(|&x| self.image[x as usize]).collect() }
    }
}

/// Product `g_1 · g_2 ⋯ g_r` of a nonempty sequence.
pub fn product<'a, I>(degree: usize, factors: I) -> Permutation
where
    I: IntoIterator<Item = &'a Permutation>,
{
    factors.into_iter().fold(Permutation::identity(degree), |acc, g| &acc * g)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

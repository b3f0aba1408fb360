//! North-east paths above `UR(UR^k)^n`, their order-ideal form, and the
//! splitting into two k-Dyck paths.

use std::fmt;

use super::trees::{expand_and_join, gj_tree, split_and_contract, PlaneTree};
use crate::error::{Error, Result};
use crate::nc::NoncrossingElement;
use crate::perm::KParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    R,
}

fn parse_word(text: &str) -> Result<Vec<Step>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'U' => Ok(Step::U),
            'R' => Ok(Step::R),
            _ => Err(Error::Parse(format!("unexpected step {c:?}"))),
        })
        .collect()
}

fn write_word(steps: &[Step], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for s in steps {
        f.write_str(match s {
            Step::U => "U",
            Step::R => "R",
        })?;
    }
    Ok(())
}

/// Heights of the east steps, in order.
fn east_heights(steps: &[Step]) -> Vec<usize> {
    let mut h = 0;
    let mut out = Vec::new();
    for s in steps {
        match s {
            Step::U => h += 1,
            Step::R => out.push(h),
        }
    }
    out
}

/// Height of the `j`-th east step (1-based) of `UR(UR^k)^n`.
fn boundary_height(j: usize, k: usize) -> usize {
    if j == 1 {
        1
    } else {
        1 + (j - 1).div_ceil(k)
    }
}

/// Path from `(0,0)` to `(N, n+1)` weakly above `UR(UR^k)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    params: KParams,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(params: KParams, steps: Vec<Step>) -> Result<Self> {
        let ups = steps.iter().filter(|s| **s == Step::U).count();
        let h = east_heights(&steps);
        if ups != params.n + 1 || h.len() != params.big_n() {
            return Err(Error::InvalidInput(format!("path must end at ({}, {})", params.big_n(), params.n + 1)));
        }
        if let Some(j) = (1..=h.len()).find(|&j| h[j - 1] < boundary_height(j, params.k)) {
            return Err(Error::InvalidInput(format!("east step {j} dips below the boundary")));
        }
        Ok(LatticePath { params, steps })
    }

    pub fn parse(params: KParams, text: &str) -> Result<Self> {
        Self::new(params, parse_word(text)?)
    }

    /// `UR(UR^k)^n`.
    pub fn boundary(params: KParams) -> Self {
        let mut steps = vec![Step::U, Step::R];
        for _ in 0..params.n {
            steps.push(Step::U);
            steps.extend(std::iter::repeat_n(Step::R, params.k));
        }
        LatticePath { params, steps }
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Whether the `j`-th east steps of the path and the boundary agree.
    pub fn touches(&self, j: usize) -> bool {
        east_heights(&self.steps)[j - 1] == boundary_height(j, self.params.k)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(&self.steps, f)
    }
}

/// Path from `(0,0)` to `(ki, i)` weakly above `(UR^k)^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    k: usize,
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(k: usize, steps: Vec<Step>) -> Result<Self> {
        let h = east_heights(&steps);
        let ups = steps.len() - h.len();
        if h.len() != k * ups {
            return Err(Error::InvalidInput(format!("{} east steps for height {ups}", h.len())));
        }
        if let Some(j) = (1..=h.len()).find(|&j| h[j - 1] < j.div_ceil(k)) {
            return Err(Error::InvalidInput(format!("east step {j} dips below the boundary")));
        }
        Ok(DyckPath { k, steps })
    }

    pub fn parse(k: usize, text: &str) -> Result<Self> {
        Self::new(k, parse_word(text)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn height(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::U).count()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(&self.steps, f)
    }
}

/// All k-Dyck paths of height `i`.
pub fn enumerate_dyck(k: usize, i: usize) -> Vec<DyckPath> {
    fn rec(k: usize, ups: usize, rs: usize, target: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if ups == target && rs == k * target {
            out.push(DyckPath { k, steps: cur.clone() });
            return;
        }
        if ups < target {
            cur.push(Step::U);
            rec(k, ups + 1, rs, target, cur, out);
            cur.pop();
        }
        if rs < k * ups {
            cur.push(Step::R);
            rec(k, ups, rs + 1, target, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 0, 0, i, &mut Vec::new(), &mut out);
    out
}

/// Splits at the least `i` whose east step `ik+1` touches the boundary,
/// dropping the first north step and that east step.
pub fn path_decompose(p: &LatticePath) -> (DyckPath, DyckPath) {
    let k = p.params.k;
    let i = (0..=p.params.n).find(|&i| p.touches(i * k + 1)).expect("the last east steps always touch");
    let cut = p
        .steps
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Step::R)
        .nth(i * k)
        .map(|(pos, _)| pos)
        .expect("east step exists");
    let p1 = DyckPath { k, steps: p.steps[1..cut].to_vec() };
    let p2 = DyckPath { k, steps: p.steps[cut + 1..].to_vec() };
    (p1, p2)
}

/// Inverse of [`path_decompose`]: `U p1 R p2`.
pub fn path_recombine(params: KParams, p1: &DyckPath, p2: &DyckPath) -> Result<LatticePath> {
    if p1.k != params.k || p2.k != params.k || p1.height() + p2.height() != params.n {
        return Err(Error::InvalidInput("heights must sum to n with matching k".into()));
    }
    let mut steps = vec![Step::U];
    steps.extend_from_slice(&p1.steps);
    steps.push(Step::R);
    steps.extend_from_slice(&p2.steps);
    LatticePath::new(params, steps)
}

/// Order ideal of `Δ_{N;k}`: pairs `(a,b)` with `a ≡ 1 (mod k)`,
/// `a < b ≤ K = N−k+1`, closed under moving `a` up and `b` down. Row
/// `j` (with `a_j = (j−1)k+1`) is `{(a_j, b) : a_j < b ≤ tops[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal {
    params: KParams,
    tops: Vec<usize>,
}

fn row_start(j: usize, k: usize) -> usize {
    j * k + 1
}

fn big_k(params: KParams) -> usize {
    params.big_n() - (params.k - 1)
}

impl OrderIdeal {
    /// From row tops; `tops[j] = jk+1` leaves row `j` (0-based) empty.
    pub fn from_tops(params: KParams, tops: Vec<usize>) -> Result<Self> {
        let kk = big_k(params);
        if tops.len() != params.n {
            return Err(Error::InvalidInput(format!("expected {} rows", params.n)));
        }
        for (j, &m) in tops.iter().enumerate() {
            if m < row_start(j, params.k) || m > kk {
                return Err(Error::InvalidInput(format!("row {} top {m} out of range", j + 1)));
            }
        }
        if tops.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("not down-closed".into()));
        }
        Ok(OrderIdeal { params, tops })
    }

    /// From explicit pairs, checking membership and down-closure.
    pub fn from_pairs(params: KParams, pairs: &[(usize, usize)]) -> Result<Self> {
        let k = params.k;
        let mut tops: Vec<usize> = (0..params.n).map(|j| row_start(j, k)).collect();
        for &(a, b) in pairs {
            if a % k != 1 % k || a >= b || b > big_k(params) {
                return Err(Error::InvalidInput(format!("({a},{b}) is not in the poset")));
            }
            let j = (a - 1) / k;
            tops[j] = tops[j].max(b);
        }
        let ideal = Self::from_tops(params, tops)?;
        if ideal.pairs().len() != pairs.iter().collect::<std::collections::HashSet<_>>().len() {
            return Err(Error::InvalidInput("not down-closed".into()));
        }
        Ok(ideal)
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let k = self.params.k;
        a % k == 1 % k && a < b && (a - 1) / k < self.tops.len() && b <= self.tops[(a - 1) / k]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let k = self.params.k;
        (0..self.params.n)
            .flat_map(|j| (row_start(j, k) + 1..=self.tops[j]).map(move |b| (row_start(j, k), b)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Every order ideal of `Δ_{N;k}`, ordered by row tops.
pub fn enumerate_ideals(params: KParams) -> Vec<OrderIdeal> {
    fn rec(params: KParams, kk: usize, cur: &mut Vec<usize>, out: &mut Vec<OrderIdeal>) {
        let j = cur.len();
        if j == params.n {
            out.push(OrderIdeal { params, tops: cur.clone() });
            return;
        }
        let lo = row_start(j, params.k).max(cur.last().copied().unwrap_or(0));
        for m in lo..=kk {
            cur.push(m);
            rec(params, kk, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(params, big_k(params), &mut Vec::new(), &mut out);
    out
}

/// The `t`-th north step (t ≥ 2) sits after `K − tops[n+1−t]` east steps;
/// the empty ideal gives the boundary, the full one `U^{n+1}R^N`.
pub fn ideal_to_path(ideal: &OrderIdeal) -> LatticePath {
    let params = ideal.params;
    let kk = big_k(params);
    let mut steps = vec![Step::U];
    let mut x = 0;
    for &m in ideal.tops.iter().rev() {
        let target = kk - m;
        steps.extend(std::iter::repeat_n(Step::R, target - x));
        steps.push(Step::U);
        x = target;
    }
    steps.extend(std::iter::repeat_n(Step::R, params.big_n() - x));
    LatticePath { params, steps }
}

pub fn path_to_ideal(p: &LatticePath) -> OrderIdeal {
    let params = p.params;
    let kk = big_k(params);
    let mut before = Vec::new();
    let mut x = 0;
    for s in &p.steps {
        match s {
            Step::R => x += 1,
            Step::U => before.push(x),
        }
    }
    let tops = before[1..].iter().rev().map(|&x| kk - x).collect();
    OrderIdeal { params, tops }
}

/// Preorder word of a `(k+1)`-ary tree: internal vertices `U`, leaves `R`,
/// the final leaf dropped.
pub fn tree_to_dyck(t: &PlaneTree, k: usize) -> Result<DyckPath> {
    if !t.is_k_ary(k) {
        return Err(Error::InvalidInput(format!("tree is not {}-ary", k + 1)));
    }
    fn walk(t: &PlaneTree, out: &mut Vec<Step>) {
        if t.is_leaf() {
            out.push(Step::R);
        } else {
            out.push(Step::U);
            t.children.iter().for_each(|c| walk(c, out));
        }
    }
    let mut steps = Vec::new();
    walk(t, &mut steps);
    steps.pop();
    Ok(DyckPath { k, steps })
}

pub fn dyck_to_tree(p: &DyckPath) -> PlaneTree {
    fn read(steps: &[Step], pos: &mut usize, k: usize) -> PlaneTree {
        let s = steps.get(*pos).copied().unwrap_or(Step::R);
        *pos += 1;
        match s {
            Step::R => PlaneTree::leaf(),
            Step::U => PlaneTree::node((0..=k).map(|_| read(steps, pos, k)).collect()),
        }
    }
    read(&p.steps, &mut 0, p.k)
}

/// `w` → tree → two `(k+1)`-ary trees → two k-Dyck paths → one path →
/// order ideal. The white half gives the first path.
pub fn nc_to_nn(w: &NoncrossingElement) -> Result<OrderIdeal> {
    let params = w.params();
    let (a, b) = split_and_contract(&gj_tree(w))?;
    let p = path_recombine(params, &tree_to_dyck(&a, params.k)?, &tree_to_dyck(&b, params.k)?)?;
    Ok(path_to_ideal(&p))
}

pub fn nn_to_nc(ideal: &OrderIdeal) -> Result<NoncrossingElement> {
    let (p1, p2) = path_decompose(&ideal_to_path(ideal));
    expand_and_join(ideal.params, &dyck_to_tree(&p1), &dyck_to_tree(&p2))
}

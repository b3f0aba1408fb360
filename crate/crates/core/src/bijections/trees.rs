//! Bicolored trees of `w · Krew(w)` and the plane trees obtained by cutting
//! the root edge.

use std::fmt;

use crate::error::{Error, Result};
use crate::nc::NoncrossingElement;
use crate::perm::{KParams, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeVertex {
    pub color: Color,
    /// Incident edges in clockwise order, up to rotation.
    pub rotation: Vec<usize>,
}

/// Plane edge-rooted tree with alternately colored vertices. Edge ids are
/// storage indices; labels come from the tour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicoloredTree {
    params: KParams,
    vertices: Vec<TreeVertex>,
    /// `(white end, black end)` of each edge.
    edges: Vec<(usize, usize)>,
    root: usize,
}

/// Builds the tree of the factorization `c_N = w · Krew(w)`: white vertices
/// are the cycles of `w`, black ones the cycles of `Krew(w)`, and edge `j`
/// joins the two cycles containing `j`. The root edge is `1`.
pub fn gj_tree(w: &NoncrossingElement) -> BicoloredTree {
    let params = w.params();
    let big_n = params.big_n();
    let mut vertices = Vec::new();
    let mut end = vec![(0, 0); big_n];
    for (color, perm) in [(Color::White, w.perm().clone()), (Color::Black, w.kreweras().perm().clone())] {
        for cycle in perm.cycles() {
            let v = vertices.len();
            for &j in &cycle {
                match color {
                    Color::White => end[j - 1].0 = v,
                    Color::Black => end[j - 1].1 = v,
                }
            }
            vertices.push(TreeVertex { color, rotation: cycle.iter().map(|j| j - 1).collect() });
        }
    }
    BicoloredTree { params, vertices, edges: end, root: 0 }
}

impl BicoloredTree {
    /// Checks size, colors, connectivity and degrees.
    pub fn validate(&self) -> Result<()> {
        let big_n = self.params.big_n();
        let k = self.params.k;
        let bad = |why: String| Err(Error::InvalidInput(format!("malformed tree: {why}")));
        if self.edges.len() != big_n || self.vertices.len() != big_n + 1 {
            return bad(format!("{} edges and {} vertices", self.edges.len(), self.vertices.len()));
        }
        for (e, &(w, b)) in self.edges.iter().enumerate() {
            if self.vertices[w].color != Color::White || self.vertices[b].color != Color::Black {
                return bad(format!("edge {e} does not join white to black"));
            }
            if !self.vertices[w].rotation.contains(&e) || !self.vertices[b].rotation.contains(&e) {
                return bad(format!("edge {e} missing from a rotation"));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.rotation.len() % k != 1 % k {
                return bad(format!("vertex {v} has degree {}", vert.rotation.len()));
            }
        }
        let degree_sum: usize = self.vertices.iter().map(|v| v.rotation.len()).sum();
        if degree_sum != 2 * big_n {
            return bad("rotations list extra edges".into());
        }
        // N edges on N+1 vertices: connected iff a tree
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![self.edges[self.root].0];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &e in &self.vertices[v].rotation {
                let (w, b) = self.edges[e];
                stack.push(if w == v { b } else { w });
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("not connected".into());
        }
        Ok(())
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn next_around(&self, v: usize, e: usize) -> usize {
        let rot = &self.vertices[v].rotation;
        let i = rot.iter().position(|&x| x == e).expect("edge at vertex");
        rot[(i + 1) % rot.len()]
    }

    /// Tour labels: walk from the root edge, white to black, turning to the
    /// next edge clockwise at every vertex; each edge is labelled by the
    /// order in which it is crossed from white to black.
    pub fn labels(&self) -> Vec<usize> {
        let big_n = self.edges.len();
        let mut label = vec![0; big_n];
        let mut e = self.root;
        for l in 1..=big_n {
            label[e] = l;
            let back = self.next_around(self.edges[e].1, e);
            e = self.next_around(self.edges[back].0, back);
        }
        label
    }

    fn read(&self, color: Color) -> Permutation {
        let label = self.labels();
        let cycles: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .filter(|v| v.color == color)
            .map(|v| v.rotation.iter().map(|&e| label[e]).collect())
            .collect();
        Permutation::from_cycles(self.edges.len(), &cycles).expect("labels form a permutation")
    }

    /// Cycles read clockwise around the white vertices.
    pub fn white_permutation(&self) -> Permutation {
        self.read(Color::White)
    }

    pub fn black_permutation(&self) -> Permutation {
        self.read(Color::Black)
    }

    fn subtree(&self, v: usize, parent: usize) -> PlaneTree {
        let rot = &self.vertices[v].rotation;
        let at = rot.iter().position(|&x| x == parent).expect("parent edge at vertex");
        let children = (1..rot.len())
            .map(|i| {
                let e = rot[(at + i) % rot.len()];
                let (w, b) = self.edges[e];
                self.subtree(if w == v { b } else { w }, e)
            })
            .collect();
        PlaneTree { children }
    }

    /// Deletes the root edge; each half is rooted at its end of that edge,
    /// children listed clockwise starting after the deleted edge.
    pub fn split(&self) -> (PlaneTree, PlaneTree) {
        let (w, b) = self.edges[self.root];
        (self.subtree(w, self.root), self.subtree(b, self.root))
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(params: KParams, white: &PlaneTree, black: &PlaneTree) -> Result<BicoloredTree> {
        let k = params.k;
        if !white.is_k_divisible(k) || !black.is_k_divisible(k) {
            return Err(Error::InvalidInput("both halves must be k-divisible".into()));
        }
        if white.vertex_count() + black.vertex_count() != params.big_n() + 1 {
            return Err(Error::InvalidInput(format!(
                "halves have {} + {} vertices, expected {}",
                white.vertex_count(),
                black.vertex_count(),
                params.big_n() + 1
            )));
        }
        let mut t = BicoloredTree { params, vertices: Vec::new(), edges: vec![(0, 0)], root: 0 };
        let wv = t.attach(white, Color::White, 0);
        let bv = t.attach(black, Color::Black, 0);
        t.edges[0] = (wv, bv);
        t.validate()?;
        Ok(t)
    }

    fn attach(&mut self, tree: &PlaneTree, color: Color, parent: usize) -> usize {
        let v = self.vertices.len();
        self.vertices.push(TreeVertex { color, rotation: vec![parent] });
        let other = match color {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        for child in &tree.children {
            let e = self.edges.len();
            self.edges.push((0, 0));
            self.vertices[v].rotation.push(e);
            let c = self.attach(child, other, e);
            self.edges[e] = match color {
                Color::White => (v, c),
                Color::Black => (c, v),
            };
        }
        v
    }
}

/// Plane rooted tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFlavor {
    /// Every vertex has a multiple of `k` children.
    KDivisible,
    /// Every non-leaf has exactly `k+1` children.
    KAry,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree::default()
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::vertex_count).sum::<usize>()
    }

    pub fn internal_count(&self) -> usize {
        usize::from(!self.is_leaf()) + self.children.iter().map(PlaneTree::internal_count).sum::<usize>()
    }

    pub fn is_k_divisible(&self, k: usize) -> bool {
        self.children.len() % k == 0 && self.children.iter().all(|c| c.is_k_divisible(k))
    }

    pub fn is_k_ary(&self, k: usize) -> bool {
        (self.is_leaf() || self.children.len() == k + 1) && self.children.iter().all(|c| c.is_k_ary(k))
    }

    pub fn has_flavor(&self, flavor: TreeFlavor, k: usize) -> bool {
        match flavor {
            TreeFlavor::KDivisible => self.is_k_divisible(k),
            TreeFlavor::KAry => self.is_k_ary(k),
        }
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> PlaneTree {
        PlaneTree { children: self.children.iter().rev().map(PlaneTree::mirror).collect() }
    }

    /// Parses the nested-parenthesis form, e.g. `(()(()))`.
    pub fn parse(text: &str) -> Result<PlaneTree> {
        let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let t = parse_at(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in {text:?}")));
        }
        Ok(t)
    }
}

fn parse_at(s: &[u8], pos: &mut usize) -> Result<PlaneTree> {
    if s.get(*pos) != Some(&b'(') {
        return Err(Error::Parse(format!("expected '(' at {pos}")));
    }
    *pos += 1;
    let mut children = Vec::new();
    while s.get(*pos) == Some(&b'(') {
        children.push(parse_at(s, pos)?);
    }
    if s.get(*pos) != Some(&b')') {
        return Err(Error::Parse(format!("expected ')' at {pos}")));
    }
    *pos += 1;
    Ok(PlaneTree { children })
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            c.fmt(f)?;
        }
        f.write_str(")")
    }
}

/// k-divisible to (k+1)-ary: keep the first `k` children, hang the rest
/// under a new last child, repeat.
pub fn contract(t: &PlaneTree, k: usize) -> PlaneTree {
    contract_list(&t.children, k)
}

fn contract_list(children: &[PlaneTree], k: usize) -> PlaneTree {
    if children.is_empty() {
        return PlaneTree::leaf();
    }
    let mut out: Vec<PlaneTree> = children[..k].iter().map(|c| contract(c, k)).collect();
    out.push(contract_list(&children[k..], k));
    PlaneTree { children: out }
}

/// Inverse of [`contract`]: merge along right-most children.
pub fn expand(t: &PlaneTree, k: usize) -> PlaneTree {
    PlaneTree { children: expand_list(t, k) }
}

fn expand_list(t: &PlaneTree, k: usize) -> Vec<PlaneTree> {
    if t.is_leaf() {
        return Vec::new();
    }
    let mut out: Vec<PlaneTree> = t.children[..k].iter().map(|c| expand(c, k)).collect();
    out.extend(expand_list(&t.children[k], k));
    out
}

/// Cuts the tree of `w` at the root edge and contracts both halves to
/// `(k+1)`-ary trees, white half first.
pub fn split_and_contract(t: &BicoloredTree) -> Result<(PlaneTree, PlaneTree)> {
    t.validate()?;
    let k = t.params.k;
    let (w, b) = t.split();
    Ok((contract(&w, k), contract(&b, k)))
}

/// Rebuilds `w` from a pair of `(k+1)`-ary trees with `n` internal vertices
/// in total.
pub fn expand_and_join(params: KParams, white: &PlaneTree, black: &PlaneTree) -> Result<NoncrossingElement> {
    let k = params.k;
    if !white.is_k_ary(k) || !black.is_k_ary(k) {
        return Err(Error::InvalidInput(format!("both trees must be {}-ary", k + 1)));
    }
    let t = BicoloredTree::join(params, &expand(white, k), &expand(black, k))?;
    NoncrossingElement::new(t.white_permutation(), params)
}

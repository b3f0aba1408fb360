//! Commutation classes as `(2k+2)`-angulations of a `2N`-gon.
//!
//! Polygon positions run clockwise `1..=2N`; entry `i` sits at `2i-1` and the
//! barred vertex `ī` (between `i` and `i+1`) at `2i`. A diagonal is stored as
//! `(odd, even)` positions.

mod cambrian;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hurwitz::{CommClass, Factorization};
use crate::perm::KParams;

pub use cambrian::{build_cambrian, cambrian_maximum, cambrian_minimum, CambrianElement};

pub type Diagonal = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Cw,
    Ccw,
}

/// A set of noncrossing odd-even diagonals cutting the `2N`-gon into `(2k+2)`-gons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dissection {
    params: KParams,
    diagonals: BTreeSet<Diagonal>,
}

fn normalize(d: Diagonal) -> Diagonal {
    if d.0 % 2 == 1 {
        d
    } else {
        (d.1, d.0)
    }
}

/// Strictly between `a` and `b` going clockwise.
fn strictly_between(a: usize, b: usize, x: usize, m: usize) -> bool {
    let dx = (x + m - a) % m;
    let db = (b + m - a) % m;
    dx > 0 && dx < db
}

fn crosses(d: Diagonal, e: Diagonal, m: usize) -> bool {
    let shared = d.0 == e.0 || d.0 == e.1 || d.1 == e.0 || d.1 == e.1;
    !shared && strictly_between(d.0, d.1, e.0, m) != strictly_between(d.0, d.1, e.1, m)
}

impl Dissection {
    /// Validates parity, crossing and face sizes.
    pub fn new(params: KParams, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let m = 2 * params.big_n();
        let diagonals: BTreeSet<Diagonal> = diagonals.into_iter().map(normalize).collect();
        for &(u, v) in &diagonals {
            if u == 0 || v == 0 || u > m || v > m || u % 2 != 1 || v % 2 != 0 {
                return Err(Error::InvalidInput(format!("({u},{v}) is not an odd-even chord of the {m}-gon")));
            }
            if (u % m) + 1 == v || (v % m) + 1 == u {
                return Err(Error::InvalidInput(format!("({u},{v}) is a polygon edge")));
            }
        }
        let list: Vec<Diagonal> = diagonals.iter().copied().collect();
        for (i, &d) in list.iter().enumerate() {
            if let Some(&e) = list[i + 1..].iter().find(|&&e| crosses(d, e, m)) {
                return Err(Error::InvalidInput(format!("{d:?} crosses {e:?}")));
            }
        }
        let out = Dissection { params, diagonals };
        if let Some(f) = out.faces().iter().find(|f| f.len() != 2 * params.k + 2) {
            return Err(Error::InvalidInput(format!("face of size {} instead of {}", f.len(), 2 * params.k + 2)));
        }
        Ok(out)
    }

    pub fn params(&self) -> KParams {
        self.params
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    /// Number of polygon vertices, `2N`.
    pub fn two_n(&self) -> usize {
        2 * self.params.big_n()
    }

    /// Faces as clockwise position lists, each starting at its least position.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces: Vec<Vec<usize>> = vec![(1..=self.two_n()).collect()];
        for &(u, v) in &self.diagonals {
            let fi = faces
                .iter()
                .position(|f| f.contains(&u) && f.contains(&v))
                .expect("noncrossing diagonals split one face");
            let f = faces.swap_remove(fi);
            let (pu, pv) = (f.iter().position(|&x| x == u).unwrap(), f.iter().position(|&x| x == v).unwrap());
            let (lo, hi) = (pu.min(pv), pu.max(pv));
            let inner = f[lo..=hi].to_vec();
            let mut outer = f[hi..].to_vec();
            outer.extend_from_slice(&f[..=lo]);
            faces.push(inner);
            faces.push(outer);
        }
        for f in &mut faces {
            let p = f.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
            f.rotate_left(p);
        }
        faces.sort();
        faces
    }

    /// The two faces meeting along `d`, glued into one clockwise polygon.
    fn union_polygon(&self, d: Diagonal) -> Result<Vec<usize>> {
        let d = normalize(d);
        if !self.diagonals.contains(&d) {
            return Err(Error::InvalidInput(format!("{d:?} is not a diagonal")));
        }
        let faces = self.faces();
        let mut verts: Vec<usize> = faces
            .iter()
            .filter(|f| f.contains(&d.0) && f.contains(&d.1))
            .flatten()
            .copied()
            .collect();
        verts.sort_unstable();
        verts.dedup();
        Ok(verts)
    }

    /// Moves both ends of `d` one step along the union of its two faces.
    pub fn rotate(&self, d: Diagonal, dir: Direction) -> Result<Dissection> {
        let d = normalize(d);
        let q = self.union_polygon(d)?;
        let len = q.len();
        let step = |x: usize| {
            let p = q.iter().position(|&y| y == x).unwrap();
            match dir {
                Direction::Cw => q[(p + 1) % len],
                Direction::Ccw => q[(p + len - 1) % len],
            }
        };
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(&d);
        diagonals.insert(normalize((step(d.0), step(d.1))));
        Ok(Dissection { params: self.params, diagonals })
    }

    /// Entry/bar labels, `[a, b]` meaning the chord from `a` to `b̄`.
    pub fn to_json(&self) -> DissectionJson {
        DissectionJson {
            two_n: self.two_n(),
            diagonals: self.diagonals.iter().map(|&(u, v)| [u.div_ceil(2), v / 2]).collect(),
        }
    }

    pub fn from_json(params: KParams, json: &DissectionJson) -> Result<Self> {
        if json.two_n != 2 * params.big_n() {
            return Err(Error::InvalidInput(format!("two_n {} does not match N={}", json.two_n, params.big_n())));
        }
        Self::new(params, json.diagonals.iter().map(|&[a, b]| (2 * a - 1, 2 * b)))
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|(u, v)| format!("({u},{v})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionJson {
    pub two_n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

/// Hulls through entry `a`, clockwise: `(mask, first, last)` with distances
/// measured clockwise from `a` in entry steps.
fn hulls_at(masks: &[u64], a: usize, big_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize)> = masks
        .iter()
        .enumerate()
        .filter(|(_, &m)| m >> (a - 1) & 1 == 1)
        .map(|(j, &m)| {
            let dists = crate::hurwitz::mask_elements(m).into_iter().map(|x| (x + big_n - a) % big_n).filter(|&d| d > 0);
            let (lo, hi) = dists.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
            (j, lo, hi)
        })
        .collect();
    out.sort_by_key(|h| h.1);
    out
}

/// The diagonal at `a` separating two clockwise-consecutive hulls.
fn opposite(masks: &[u64], a: usize, big_n: usize, last: usize, next_first: usize) -> Result<Diagonal> {
    let dist = |x: usize| (x + big_n - a) % big_n;
    let mut found = None;
    for db in last..next_first {
        let b = (a - 1 + db) % big_n + 1;
        let clear = masks.iter().all(|&m| {
            if m >> (a - 1) & 1 == 1 {
                return true;
            }
            let xs = crate::hurwitz::mask_elements(m);
            let left = xs.iter().any(|&x| dist(x) <= db);
            let right = xs.iter().any(|&x| dist(x) > db);
            !(left && right)
        });
        if clear {
            if found.is_some() {
                return Err(Error::InvalidInput(format!("no unique opposite vertex at {a}")));
            }
            found = Some((2 * a - 1, 2 * b));
        }
    }
    found.ok_or_else(|| Error::InvalidInput(format!("no opposite vertex at {a}")))
}

/// Each diagonal of `Θ` with the two factors it separates, earlier factor first.
fn theta_labeled(f: &Factorization) -> Result<Vec<(Diagonal, usize, usize)>> {
    let big_n = f.params().big_n();
    let masks = f.masks();
    let mut out = Vec::new();
    for a in 1..=big_n {
        let hulls = hulls_at(masks, a, big_n);
        for w in hulls.windows(2) {
            let d = opposite(masks, a, big_n, w[0].2, w[1].1)?;
            // counterclockwise around a is product order
            out.push((d, w[1].0.min(w[0].0), w[1].0.max(w[0].0)));
        }
    }
    Ok(out)
}

/// `Θ` of the class of `f`.
pub fn theta(f: &Factorization) -> Result<Dissection> {
    let diags = theta_labeled(f)?.into_iter().map(|(d, _, _)| d);
    Dissection::new(f.params(), diags)
}

pub fn theta_class(c: &CommClass) -> Result<Dissection> {
    theta(&c.representative)
}

/// The diagonal between factors `i` and `i+1` (1-based), if they share an entry.
pub fn shared_diagonal(f: &Factorization, i: usize) -> Result<Option<Diagonal>> {
    if i == 0 || i >= f.len() {
        return Err(Error::IndexOutOfRange { index: i, max: f.len().saturating_sub(1) });
    }
    Ok(theta_labeled(f)?.into_iter().find(|&(_, x, y)| (x, y) == (i - 1, i)).map(|(d, _, _)| d))
}

/// `Θ⁻¹`: faces give factors, the clockwise order at shared entries gives
/// the factor order (reversed).
pub fn theta_inverse(d: &Dissection) -> Result<CommClass> {
    let params = d.params;
    let big_n = params.big_n();
    let masks: Vec<u64> = d
        .faces()
        .iter()
        .map(|f| f.iter().filter(|&&p| p % 2 == 1).fold(0u64, |m, &p| m | 1 << ((p - 1) / 2)))
        .collect();
    if masks.iter().any(|m| m.count_ones() as usize != params.k + 1) {
        return Err(Error::InvalidInput("face does not carry k+1 entries".into()));
    }
    let n = masks.len();
    let mut before = vec![Vec::new(); n];
    for a in 1..=big_n {
        let hulls = hulls_at(&masks, a, big_n);
        for w in hulls.windows(2) {
            before[w[0].0].push(w[1].0);
        }
    }
    let mut indeg: Vec<usize> = vec![0; n];
    let mut succ: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, preds) in before.iter().enumerate() {
        indeg[j] = preds.len();
        for &p in preds {
            succ.entry(p).or_default().push(j);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    for _ in 0..n {
        let j = (0..n)
            .filter(|&j| !done[j] && indeg[j] == 0)
            .min_by(|&x, &y| crate::hurwitz::factor_cmp(masks[x], masks[y]))
            .ok_or_else(|| Error::InvalidInput("cyclic factor order".into()))?;
        done[j] = true;
        order.push(masks[j]);
        for &s in succ.get(&j).map(Vec::as_slice).unwrap_or(&[]) {
            indeg[s] -= 1;
        }
    }
    let f = Factorization::from_masks(params, order)?;
    Ok(CommClass::of(&f))
}

/// All `(2k+2)`-angulations, built face by face: each pending polygon gets
/// the face through its first and last vertex.
pub fn enumerate_dissections(params: KParams) -> Vec<Dissection> {
    fn faces_on(poly: &[usize], k: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let l = poly.len();
        let last = *idx.last().unwrap();
        if idx.len() == 2 * k + 1 {
            if (l - 2 - last) % (2 * k) == 0 {
                let mut face = idx.clone();
                face.push(l - 1);
                out.push(face);
            }
            return;
        }
        let mut next = last + 1;
        while next < l - 1 {
            idx.push(next);
            faces_on(poly, k, idx, out);
            idx.pop();
            next += 2 * k;
        }
    }
    fn rec(mut pending: Vec<Vec<usize>>, k: usize, acc: &mut Vec<Diagonal>, out: &mut Vec<Vec<Diagonal>>) {
        let Some(poly) = pending.pop() else {
            out.push(acc.clone());
            return;
        };
        let mut choices = Vec::new();
        faces_on(&poly, k, &mut vec![0], &mut choices);
        for face in choices {
            let mut next = pending.clone();
            let before = acc.len();
            for w in face.windows(2) {
                if w[1] > w[0] + 1 {
                    next.push(poly[w[0]..=w[1]].to_vec());
                    acc.push(normalize((poly[w[0]], poly[w[1]])));
                }
            }
            rec(next, k, acc, out);
            acc.truncate(before);
        }
    }
    let m = 2 * params.big_n();
    let mut poly: Vec<usize> = vec![m];
    poly.extend(1..m);
    let mut raw = Vec::new();
    rec(vec![poly], params.k, &mut Vec::new(), &mut raw);
    let mut out: Vec<Dissection> = raw
        .into_iter()
        .map(|ds| Dissection { params, diagonals: ds.into_iter().collect() })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::raney;
    use crate::hurwitz::{class_members, commutation_classes};
    use num_bigint::BigInt;

    fn kp(k: usize, n: usize) -> KParams {
        KParams::new(k, n).unwrap()
    }

    const PARAMS: [(usize, usize); 8] = [(1, 2), (1, 3), (2, 2), (3, 2), (1, 4), (2, 3), (1, 5), (2, 4)];

    #[test]
    fn small_theta() {
        let f = Factorization::parse(kp(1, 3), "(1 2)|(2 3)|(3 4)").unwrap();
        let d = theta(&f).unwrap();
        assert_eq!(d.diagonals().iter().copied().collect::<Vec<_>>(), vec![(3, 8), (5, 8)]);
        let single = Factorization::parse(kp(2, 1), "(1 2 3)").unwrap();
        assert!(theta(&single).unwrap().diagonals().is_empty());
        assert_eq!(theta_inverse(&theta(&single).unwrap()).unwrap().representative, single);
    }

    /// Hulls and diagonals read off the `n=5, k=3` illustration.
    fn figure_pair() -> [(Vec<u64>, Vec<Diagonal>); 2] {
        let hull = |xs: &[usize]| xs.iter().fold(0u64, |m, &x| m | 1 << (x - 1));
        let bottom = vec![
            hull(&[4, 5, 15, 16]),
            hull(&[1, 2, 3, 16]),
            hull(&[10, 11, 12, 13]),
            hull(&[5, 6, 13, 14]),
            hull(&[6, 7, 8, 9]),
        ];
        let mut top = bottom.clone();
        top[4] = hull(&[7, 8, 9, 13]);
        [
            (bottom, vec![(31, 6), (9, 28), (11, 18), (25, 18)]),
            (top, vec![(31, 6), (9, 28), (25, 12), (25, 18)]),
        ]
    }

    #[test]
    fn illustration_round_trip() {
        let params = kp(3, 5);
        for (hulls, diags) in figure_pair() {
            let d = Dissection::new(params, diags).unwrap();
            let class = theta_inverse(&d).unwrap();
            let mut got: Vec<u64> = class.representative.masks().to_vec();
            let mut want = hulls.clone();
            got.sort_unstable();
            want.sort_unstable();
            assert_eq!(got, want);
            assert_eq!(theta(&class.representative).unwrap(), d);
        }
        // bottom to top is one clockwise move
        let [(_, bottom), (_, top)] = figure_pair();
        let b = Dissection::new(params, bottom).unwrap();
        let t = Dissection::new(params, top).unwrap();
        assert_eq!(b.rotate((11, 18), Direction::Cw).unwrap(), t);
        assert_eq!(t.rotate((25, 12), Direction::Ccw).unwrap(), b);
    }

    #[test]
    fn theta_is_a_bijection() {
        for (k, n) in PARAMS {
            let params = kp(k, n);
            let classes = commutation_classes(params, 1_000_000).unwrap();
            let dissections = enumerate_dissections(params);
            assert_eq!(BigInt::from(dissections.len()), raney(n as u64, (2 * k + 1) as i64, 1).unwrap());
            let mut images: Vec<Dissection> = classes.iter().map(|c| theta_class(c).unwrap()).collect();
            images.sort();
            assert_eq!(images, dissections, "k={k} n={n}");
            for c in &classes {
                assert_eq!(&theta_inverse(&theta_class(c).unwrap()).unwrap(), c);
            }
            for d in &dissections {
                assert_eq!(&theta_class(&theta_inverse(d).unwrap()).unwrap(), d);
            }
        }
    }

    #[test]
    fn hurwitz_moves_rotate_diagonals() {
        for (k, n) in PARAMS {
            for c in commutation_classes(kp(k, n), 1_000_000).unwrap() {
                for f in class_members(&c.representative) {
                    let d = theta(&f).unwrap();
                    for i in 1..n {
                        let Some(diag) = shared_diagonal(&f, i).unwrap() else { continue };
                        let ccw = theta(&f.sigma(i, false).unwrap()).unwrap();
                        let cw = theta(&f.sigma(i, true).unwrap()).unwrap();
                        assert_eq!(d.rotate(diag, Direction::Ccw).unwrap(), ccw, "{f} i={i}");
                        assert_eq!(d.rotate(diag, Direction::Cw).unwrap(), cw, "{f} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn rotations_stay_inside() {
        let all = enumerate_dissections(kp(1, 3));
        assert_eq!(all.len(), 12);
        for d in &all {
            for &diag in d.diagonals() {
                let r = d.rotate(diag, Direction::Cw).unwrap();
                assert!(all.contains(&r));
                let back = r.diagonals().difference(d.diagonals()).next().copied().unwrap();
                assert_eq!(r.rotate(back, Direction::Ccw).unwrap(), *d);
            }
        }
    }

    #[test]
    fn validation() {
        let p = kp(1, 3);
        assert!(Dissection::new(p, [(3, 8), (5, 8)]).is_ok());
        assert!(Dissection::new(p, [(3, 8)]).is_err());
        assert!(Dissection::new(p, [(1, 4), (3, 6)]).is_err());
        assert!(Dissection::new(p, [(1, 3), (5, 8)]).is_err());
        let d = Dissection::new(p, [(3, 8), (5, 8)]).unwrap();
        let json = d.to_json();
        assert_eq!(serde_json::to_string(&json).unwrap(), r#"{"two_n":8,"diagonals":[[2,4],[3,4]]}"#);
        assert_eq!(Dissection::from_json(p, &json).unwrap(), d);
    }
}

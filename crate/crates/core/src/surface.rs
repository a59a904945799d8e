//! L-periodic square-tiled surfaces in R^N: the grid construction from an
//! offset, elementary transformations, enumeration and zigzag loops.
//!
//! A surface is stored as its vertex set modulo L, each vertex a class vector
//! of the quotient group Z^N / L. Moving along e_i adds the class of e_i.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CosetCalculator, LatticeEmbedding};

pub type Class = Vec<i64>;

pub const DEFAULT_CAP: usize = 100_000;
pub const OFFSET_PRIME: i64 = 1_000_003;

/// The quotient Z^N / L with the classes of the unit vectors and the
/// coordinate-sum functional.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub l: LatticeEmbedding,
    pub cc: CosetCalculator,
    pub units: Vec<Class>,
    hcoef: Vec<i64>,
}

impl Quotient {
    pub fn new(l: &LatticeEmbedding) -> Self {
        let cc = l.coset_calculator();
        let units = (0..l.n()).map(|i| cc.unit(i)).collect();
        let hcoef = cc.functional_on_free(&vec![1; l.n()]);
        Quotient {
            l: l.clone(),
            cc,
            units,
            hcoef,
        }
    }

    pub fn n(&self) -> usize {
        self.l.n()
    }

    /// Coordinate sum of any representative.
    pub fn height(&self, c: &[i64]) -> i64 {
        let t = self.cc.torsion_len();
        c[t..].iter().zip(&self.hcoef).map(|(x, y)| x * y).sum()
    }

    pub fn step(&self, c: &[i64], i: usize, sign: i64) -> Class {
        let mut out: Vec<i64> = c
            .iter()
            .zip(&self.units[i])
            .map(|(x, y)| x + sign * y)
            .collect();
        self.cc.reduce(&mut out);
        out
    }

    pub fn class_of(&self, p: &[i64]) -> Class {
        self.cc.class(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Square {
    /// the corner p with p + e_i, p + e_j, p + e_i + e_j the other corners
    pub corner: Class,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSurface {
    vertices: BTreeSet<Class>,
    squares: Vec<Square>,
}

impl DiscreteSurface {
    pub fn from_vertices(q: &Quotient, vertices: BTreeSet<Class>) -> Self {
        let n = q.n();
        let mut squares = Vec::new();
        for p in &vertices {
            for i in 0..n {
                let pi = q.step(p, i, 1);
                if !vertices.contains(&pi) {
                    continue;
                }
                for j in i + 1..n {
                    let pj = q.step(p, j, 1);
                    if vertices.contains(&pj) && vertices.contains(&q.step(&pi, j, 1)) {
                        squares.push(Square {
                            corner: p.clone(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        squares.sort();
        DiscreteSurface { vertices, squares }
    }

    pub fn vertices(&self) -> &BTreeSet<Class> {
        &self.vertices
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        self.vertices.contains(c)
    }

    /// Distinct values of the coordinate sum on the vertices.
    pub fn heights(&self, q: &Quotient) -> BTreeSet<i64> {
        self.vertices.iter().map(|v| q.height(v)).collect()
    }

    pub fn is_perfect(&self, q: &Quotient) -> bool {
        let h = self.heights(q);
        h.len() == 3 && h.iter().next_back().unwrap() - h.iter().next().unwrap() == 2
    }

    /// Translation-invariant encoding: the lexicographically least sorted list
    /// of vertex differences over all choices of base vertex.
    pub fn canonical_key(&self, q: &Quotient) -> Vec<i64> {
        self.canonical_with_anchor(q).0
    }

    fn canonical_with_anchor(&self, q: &Quotient) -> (Vec<i64>, Class) {
        let mut best: Option<(Vec<i64>, Class)> = None;
        for a in &self.vertices {
            let mut diffs: Vec<Class> = self.vertices.iter().map(|v| q.cc.sub(v, a)).collect();
            diffs.sort();
            let key: Vec<i64> = diffs.concat();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, a.clone()));
            }
        }
        best.unwrap_or_default()
    }

    /// The translate realizing the canonical key.
    pub fn canonical(&self, q: &Quotient) -> DiscreteSurface {
        let (_, a) = self.canonical_with_anchor(q);
        let verts = self.vertices.iter().map(|v| q.cc.sub(v, &a)).collect();
        DiscreteSurface::from_vertices(q, verts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridOffset {
    /// lambda_i = numer[i] / denom
    pub numer: Vec<i64>,
    pub denom: i64,
}

impl GridOffset {
    pub fn zero(n: usize) -> Self {
        GridOffset {
            numer: vec![0; n],
            denom: 1,
        }
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        GridOffset {
            numer: (0..n).map(|_| rng.gen_range(1..OFFSET_PRIME)).collect(),
            denom: OFFSET_PRIME,
        }
    }
}

/// A grid intersection inside the unit (x, y) square: lines `k` of family i
/// and `m` of family j.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
    /// (x, y) = (xn, yn) / den exactly
    pub xn: i128,
    pub yn: i128,
    pub den: i128,
    /// floor of every coordinate z at the crossing (exact at i and j)
    pub floor: Vec<i64>,
    /// whether z_k is an integer, per k
    pub integral: Vec<bool>,
}

/// All crossings of line families i < j in the fundamental domain.
pub fn crossings(l: &LatticeEmbedding, lam: &GridOffset) -> Vec<Crossing> {
    let n = l.n();
    let p = lam.denom as i128;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = l.det(i, j) as i128;
            if d == 0 {
                continue;
            }
            let (bi, bj) = (l.col(i), l.col(j));
            let range = |b: (i64, i64), num: i64| {
                let lo = b.0.min(0) + b.1.min(0);
                let hi = b.0.max(0) + b.1.max(0);
                // k - lambda in [lo, hi]
                let lam_floor = num.div_euclid(lam.denom);
                (lo + lam_floor, hi + lam_floor + 1)
            };
            let (k0, k1) = range(bi, lam.numer[i]);
            let (m0, m1) = range(bj, lam.numer[j]);
            let (sd, ad) = (d.signum(), d.abs());
            let den = p * ad;
            for k in k0..=k1 {
                for m in m0..=m1 {
                    // b_i.(x,y) = k - lam_i, b_j.(x,y) = m - lam_j, scaled by p
                    let r1 = k as i128 * p - lam.numer[i] as i128;
                    let r2 = m as i128 * p - lam.numer[j] as i128;
                    // Cramer: x = (r1*bj.1 - r2*bi.1)/(p d), y = (bi.0*r2 - bj.0*r1)/(p d)
                    let xn = (r1 * bj.1 as i128 - r2 * bi.1 as i128) * sd;
                    let yn = (bi.0 as i128 * r2 - bj.0 as i128 * r1) * sd;
                    if xn < 0 || xn >= den || yn < 0 || yn >= den {
                        continue;
                    }
                    let mut floor = Vec::with_capacity(n);
                    let mut integral = Vec::with_capacity(n);
                    for t in 0..n {
                        let bt = l.col(t);
                        let zn = lam.numer[t] as i128 * ad + bt.0 as i128 * xn + bt.1 as i128 * yn;
                        floor.push(zn.div_euclid(den) as i64);
                        integral.push(zn.rem_euclid(den) == 0);
                    }
                    debug_assert_eq!(floor[i], k);
                    debug_assert_eq!(floor[j], m);
                    out.push(Crossing {
                        i,
                        j,
                        xn,
                        yn,
                        den,
                        floor,
                        integral,
                    });
                }
            }
        }
    }
    out
}

pub fn is_nonresonant(l: &LatticeEmbedding, lam: &GridOffset) -> bool {
    crossings(l, lam).iter().all(|c| {
        c.integral
            .iter()
            .enumerate()
            .all(|(t, &z)| !z || t == c.i || t == c.j)
    })
}

/// Random non-resonant offset from a seed, verified exactly.
pub fn offset_from_seed(l: &LatticeEmbedding, seed: u64) -> Result<GridOffset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let lam = GridOffset::random(l.n(), &mut rng);
        if is_nonresonant(l, &lam) {
            return Ok(lam);
        }
    }
    Err(Error::Resonant(
        "no non-resonant offset found in 64 attempts".into(),
    ))
}

pub fn initial_surface(q: &Quotient, lam: &GridOffset) -> Result<DiscreteSurface> {
    let l = &q.l;
    if lam.numer.len() != l.n() || lam.denom <= 0 {
        return Err(Error::DimensionMismatch("offset length".into()));
    }
    let cs = crossings(l, lam);
    let mut verts = BTreeSet::new();
    for c in &cs {
        if c.integral
            .iter()
            .enumerate()
            .any(|(t, &z)| z && t != c.i && t != c.j)
        {
            return Err(Error::Resonant(format!(
                "three grid lines meet at a crossing of families {} and {}",
                c.i + 1,
                c.j + 1
            )));
        }
        let mut corner = c.floor.clone();
        corner[c.i] -= 1;
        corner[c.j] -= 1;
        let p = q.class_of(&corner);
        let pi = q.step(&p, c.i, 1);
        let pj = q.step(&p, c.j, 1);
        let pij = q.step(&pi, c.j, 1);
        verts.extend([p, pi, pj, pij]);
    }
    let s = DiscreteSurface::from_vertices(q, verts);
    check_cell_counts(q, &s)?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub squares: BTreeMap<(usize, usize), usize>,
    pub edges: Vec<usize>,
    pub vertices: usize,
}

pub fn cell_counts(q: &Quotient, s: &DiscreteSurface) -> CellCounts {
    let mut squares = BTreeMap::new();
    for sq in s.squares() {
        *squares.entry((sq.i, sq.j)).or_insert(0) += 1;
    }
    let edges = (0..q.n())
        .map(|i| {
            s.vertices
                .iter()
                .filter(|v| s.contains(&q.step(v, i, 1)))
                .count()
        })
        .collect();
    CellCounts {
        squares,
        edges,
        vertices: s.vertices.len(),
    }
}

pub fn expected_cell_counts(l: &LatticeEmbedding) -> CellCounts {
    let n = l.n();
    let mut squares = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = l.det(i, j).unsigned_abs() as usize;
            if d > 0 {
                squares.insert((i, j), d);
            }
        }
    }
    let edges = (0..n)
        .map(|i| (0..n).map(|j| l.det(i, j).unsigned_abs() as usize).sum())
        .collect();
    CellCounts {
        squares,
        edges,
        vertices: l.total_abs_det() as usize,
    }
}

pub fn check_cell_counts(q: &Quotient, s: &DiscreteSurface) -> Result<()> {
    let got = cell_counts(q, s);
    let want = expected_cell_counts(&q.l);
    if got != want {
        return Err(Error::Inconsistent(format!(
            "cell counts {:?}, expected {:?}",
            got, want
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Site {
    pub vertex: Class,
    /// the three directions (index, sign) to the neighbours
    pub dirs: [(usize, i64); 3],
}

fn site_at(q: &Quotient, s: &DiscreteSurface, p0: &Class) -> Option<Site> {
    let mut dirs = Vec::with_capacity(4);
    for i in 0..q.n() {
        for sign in [1, -1] {
            if s.contains(&q.step(p0, i, sign)) {
                dirs.push((i, sign));
                if dirs.len() > 3 {
                    return None;
                }
            }
        }
    }
    if dirs.len() != 3 {
        return None;
    }
    if dirs[0].0 == dirs[1].0 || dirs[1].0 == dirs[2].0 || dirs[0].0 == dirs[2].0 {
        return None;
    }
    for a in 0..3 {
        for b in a + 1..3 {
            let far = q.step(&q.step(p0, dirs[a].0, dirs[a].1), dirs[b].0, dirs[b].1);
            if !s.contains(&far) {
                return None;
            }
        }
    }
    Some(Site {
        vertex: p0.clone(),
        dirs: [dirs[0], dirs[1], dirs[2]],
    })
}

pub fn elementary_sites(q: &Quotient, s: &DiscreteSurface) -> Vec<Site> {
    s.vertices.iter().filter_map(|p| site_at(q, s, p)).collect()
}

pub fn apply_elementary(q: &Quotient, s: &DiscreteSurface, site: &Site) -> Result<DiscreteSurface> {
    match site_at(q, s, &site.vertex) {
        Some(ref cur) if cur == site => {}
        _ => return Err(Error::NotApplicable("stale site".into())),
    }
    let mut p = site.vertex.clone();
    for &(i, sign) in &site.dirs {
        p = q.step(&p, i, sign);
    }
    if s.contains(&p) {
        return Err(Error::Inconsistent("flipped vertex already present".into()));
    }
    let mut verts = s.vertices.clone();
    verts.remove(&site.vertex);
    verts.insert(p);
    Ok(DiscreteSurface::from_vertices(q, verts))
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// canonical surfaces in discovery order
    pub surfaces: Vec<DiscreteSurface>,
    pub offset: GridOffset,
}

impl Enumeration {
    pub fn keys(&self, q: &Quotient) -> BTreeSet<Vec<i64>> {
        self.surfaces.iter().map(|s| s.canonical_key(q)).collect()
    }

    pub fn perfect(&self, q: &Quotient) -> Vec<DiscreteSurface> {
        self.surfaces
            .iter()
            .filter(|s| s.is_perfect(q))
            .cloned()
            .collect()
    }
}

/// Breadth-first closure under elementary transformations, up to translation.
pub fn enumerate_from(
    q: &Quotient,
    start: &DiscreteSurface,
    cap: usize,
) -> Result<Vec<DiscreteSurface>> {
    let first = start.canonical(q);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(first.canonical_key(q));
    let mut all = vec![first.clone()];
    let mut frontier = vec![first];
    while !frontier.is_empty() {
        let next: Vec<(Vec<i64>, DiscreteSurface)> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                elementary_sites(q, s)
                    .into_iter()
                    .map(|site| {
                        let t = apply_elementary(q, s, &site)
                            .expect("fresh site")
                            .canonical(q);
                        (t.canonical_key(q), t)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = Vec::new();
        for (k, t) in next {
            if seen.insert(k) {
                if all.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        found: all.len() + 1,
                    });
                }
                all.push(t.clone());
                frontier.push(t);
            }
        }
    }
    Ok(all)
}

pub fn enumerate_surfaces(l: &LatticeEmbedding, seed: u64, cap: usize) -> Result<Enumeration> {
    let q = Quotient::new(l);
    let offset = offset_from_seed(l, seed)?;
    let s0 = initial_surface(&q, &offset)?;
    let surfaces = enumerate_from(&q, &s0, cap)?;
    Ok(Enumeration { surfaces, offset })
}

pub fn find_perfect(l: &LatticeEmbedding, seed: u64, cap: usize) -> Result<Vec<DiscreteSurface>> {
    let q = Quotient::new(l);
    Ok(enumerate_surfaces(l, seed, cap)?.perfect(&q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Colour {
    White,
    Grey,
    Black,
}

/// Black/grey/white classes of a perfect surface.
pub fn colouring(q: &Quotient, s: &DiscreteSurface) -> Result<BTreeMap<Class, Colour>> {
    if !s.is_perfect(q) {
        return Err(Error::NotPerfect(format!("heights {:?}", s.heights(q))));
    }
    let lo = *s.heights(q).iter().next().unwrap();
    Ok(s.vertices
        .iter()
        .map(|v| {
            let c = match q.height(v) - lo {
                0 => Colour::White,
                1 => Colour::Grey,
                _ => Colour::Black,
            };
            (v.clone(), c)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagLoop {
    pub index: usize,
    /// each component a cyclic sequence of square indices into `squares()`
    pub components: Vec<Vec<usize>>,
}

pub fn zigzag_loops(q: &Quotient, s: &DiscreteSurface) -> Result<Vec<ZigzagLoop>> {
    let l = &q.l;
    let sq = s.squares();
    let mut out = Vec::new();
    for i in 0..q.n() {
        // e_i-sides keyed by base class, with (square, is_high_side)
        let mut sides: HashMap<Class, Vec<(usize, bool)>> = HashMap::new();
        let mut members = Vec::new();
        for (k, x) in sq.iter().enumerate() {
            let other = if x.i == i {
                x.j
            } else if x.j == i {
                x.i
            } else {
                continue;
            };
            members.push(k);
            sides.entry(x.corner.clone()).or_default().push((k, false));
            sides
                .entry(q.step(&x.corner, other, 1))
                .or_default()
                .push((k, true));
        }
        if sides.values().any(|v| v.len() != 2) {
            return Err(Error::Inconsistent(format!(
                "an e_{} side is not shared by two squares",
                i + 1
            )));
        }
        let mut visited = vec![false; sq.len()];
        let mut components = Vec::new();
        for &start in &members {
            if visited[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut k = start;
            loop {
                visited[k] = true;
                comp.push(k);
                let x = &sq[k];
                let other = if x.i == i { x.j } else { x.i };
                let forward = l.det(i, other) > 0;
                // exit through the high side when the segment runs along +e_other
                let exit = if forward {
                    q.step(&x.corner, other, 1)
                } else {
                    x.corner.clone()
                };
                let nb = sides[&exit]
                    .iter()
                    .find(|&&(m, _)| m != k || sides[&exit].iter().all(|&(m2, _)| m2 == k));
                let &(m, high) = nb.ok_or_else(|| Error::Inconsistent("zigzag walk".into()))?;
                // entering side of the next square must be its low side if it runs forward
                let y = &sq[m];
                let yo = if y.i == i { y.j } else { y.i };
                if (l.det(i, yo) > 0) == high {
                    return Err(Error::Inconsistent(format!(
                        "zigzag {} orientation clash",
                        i + 1
                    )));
                }
                if m == start {
                    break;
                }
                if visited[m] {
                    return Err(Error::Inconsistent("zigzag walk revisits a square".into()));
                }
                k = m;
            }
            components.push(comp);
        }
        out.push(ZigzagLoop {
            index: i,
            components,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_lattice;

    fn b2() -> LatticeEmbedding {
        validate_lattice(&[vec![0, 1, 1, -2], vec![-1, 0, 2, -1]]).unwrap()
    }

    #[test]
    fn zero_offset_resonant() {
        assert!(!is_nonresonant(&b2(), &GridOffset::zero(4)));
    }

    #[test]
    fn b2_initial() {
        let l = b2();
        let q = Quotient::new(&l);
        let lam = offset_from_seed(&l, 1).unwrap();
        let s = initial_surface(&q, &lam).unwrap();
        assert_eq!(s.squares().len(), 10);
        assert_eq!(s.vertices().len(), 10);
    }

    #[test]
    fn b2_flips_are_involutions() {
        let l = b2();
        let q = Quotient::new(&l);
        let s = initial_surface(&q, &offset_from_seed(&l, 7).unwrap()).unwrap();
        let sites = elementary_sites(&q, &s);
        assert!(!sites.is_empty());
        for site in sites {
            let t = apply_elementary(&q, &s, &site).unwrap();
            check_cell_counts(&q, &t).unwrap();
            let back = elementary_sites(&q, &t)
                .into_iter()
                .map(|x| apply_elementary(&q, &t, &x).unwrap())
                .any(|u| u == s);
            assert!(back);
            assert!(apply_elementary(&q, &t, &site).is_err());
        }
    }
}

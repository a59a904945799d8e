//! Dessins from perfect surfaces: the quadruple list, 3-constellations,
//! superpotentials, the reconstructed quiver and the genus of the untwisted
//! surface.
//!
//! Indices are 0-based in memory; JSON and text output are 1-based.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IMat;
use crate::lattice::LatticeEmbedding;
use crate::surface::{colouring, enumerate_surfaces, Class, Colour, DiscreteSurface, Quotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    pub b: usize,
    pub w: usize,
    pub r: usize,
    pub rp: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DessinData {
    pub n: usize,
    pub nb: usize,
    pub nw: usize,
    pub quads: Vec<Quadruple>,
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    b: usize,
    w: usize,
    r: usize,
    rp: usize,
}

impl DessinData {
    pub fn new(n: usize, quads: Vec<Quadruple>) -> Result<Self> {
        if quads.is_empty() {
            return Err(Error::InvalidForm("empty quadruple list".into()));
        }
        let nb = quads.iter().map(|q| q.b).max().unwrap() + 1;
        let nw = quads.iter().map(|q| q.w).max().unwrap() + 1;
        let d = DessinData { n, nb, nw, quads };
        d.check()?;
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        let bs: BTreeSet<usize> = self.quads.iter().map(|q| q.b).collect();
        let ws: BTreeSet<usize> = self.quads.iter().map(|q| q.w).collect();
        if bs.len() != self.nb || ws.len() != self.nw {
            return Err(Error::InvalidForm(
                "black or white labels are not contiguous".into(),
            ));
        }
        for q in &self.quads {
            if q.r == q.rp || q.r >= self.n || q.rp >= self.n {
                return Err(Error::InvalidForm(format!(
                    "bad red labels {} {}",
                    q.r + 1,
                    q.rp + 1
                )));
            }
        }
        Ok(())
    }

    /// One record per square: the white corner, the black corner and the type
    /// ordered so that det(b_r, b_r') > 0.
    pub fn from_surface(q: &Quotient, s: &DiscreteSurface) -> Result<Self> {
        let col = colouring(q, s)?;
        let index = |c: Colour| -> BTreeMap<&Class, usize> {
            col.iter()
                .filter(|(_, &k)| k == c)
                .map(|(v, _)| v)
                .enumerate()
                .map(|(k, v)| (v, k))
                .collect()
        };
        let blacks = index(Colour::Black);
        let whites = index(Colour::White);
        let mut quads = Vec::with_capacity(s.squares().len());
        for sq in s.squares() {
            let top = q.step(&q.step(&sq.corner, sq.i, 1), sq.j, 1);
            let (Some(&w), Some(&b)) = (whites.get(&sq.corner), blacks.get(&top)) else {
                return Err(Error::NotPerfect(
                    "square corners are not white and black".into(),
                ));
            };
            let (r, rp) = if q.l.det(sq.i, sq.j) > 0 {
                (sq.i, sq.j)
            } else {
                (sq.j, sq.i)
            };
            quads.push(Quadruple { b, w, r, rp });
        }
        DessinData::new(q.n(), quads)
    }

    /// Swap r and r' everywhere; the dessin of the opposite orientation.
    pub fn mirror(&self) -> Self {
        let quads = self
            .quads
            .iter()
            .map(|q| Quadruple {
                b: q.b,
                w: q.w,
                r: q.rp,
                rp: q.r,
            })
            .collect();
        DessinData {
            quads,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<QuadJson> = self
            .quads
            .iter()
            .map(|q| QuadJson {
                b: q.b + 1,
                w: q.w + 1,
                r: q.r + 1,
                rp: q.rp + 1,
            })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }

    pub fn from_json(s: &str, n: usize) -> Result<Self> {
        let v: Vec<QuadJson> = serde_json::from_str(s)?;
        let mut quads = Vec::with_capacity(v.len());
        for q in v {
            if q.b == 0 || q.w == 0 || q.r == 0 || q.rp == 0 {
                return Err(Error::Parse("labels are 1-based".into()));
            }
            quads.push(Quadruple {
                b: q.b - 1,
                w: q.w - 1,
                r: q.r - 1,
                rp: q.rp - 1,
            });
        }
        DessinData::new(n, quads)
    }

    /// From rows b, w, r, r' of a printed table (1-based).
    pub fn from_rows(
        n: usize,
        b: &[usize],
        w: &[usize],
        r: &[usize],
        rp: &[usize],
    ) -> Result<Self> {
        if b.len() != w.len() || b.len() != r.len() || b.len() != rp.len() {
            return Err(Error::DimensionMismatch(
                "table rows differ in length".into(),
            ));
        }
        let quads = (0..b.len())
            .map(|e| Quadruple {
                b: b[e] - 1,
                w: w[e] - 1,
                r: r[e] - 1,
                rp: rp[e] - 1,
            })
            .collect();
        DessinData::new(n, quads)
    }

    /// Arrow multiplicity of each ordered pair r -> r'.
    pub fn critical_weights(&self) -> Vec<i64> {
        let mut count: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for q in &self.quads {
            *count.entry((q.r, q.rp)).or_insert(0) += 1;
        }
        self.quads.iter().map(|q| count[&(q.r, q.rp)]).collect()
    }

    /// Antisymmetrized adjacency of the quiver with arrows r(e) -> r'(e).
    pub fn quiver_adjacency(&self) -> IMat {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for q in &self.quads {
            a[q.r][q.rp] += 1;
            a[q.rp][q.r] -= 1;
        }
        a
    }

    /// Genus of the untwisted surface with all red points of one label identified.
    pub fn genus(&self) -> i64 {
        let reds: BTreeSet<usize> = self.quads.iter().flat_map(|q| [q.r, q.rp]).collect();
        let chi = (reds.len() + self.nb + self.nw) as i64 - self.len() as i64;
        (2 - chi) / 2
    }
}

impl fmt::Display for DessinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, name: &str, g: &dyn Fn(&Quadruple) -> usize| {
            write!(f, "{:>3}:", name)?;
            for q in &self.quads {
                write!(f, " {:>2}", g(q) + 1)?;
            }
            writeln!(f)
        };
        write!(f, "{:>3}:", "e")?;
        for e in 0..self.len() {
            write!(f, " {:>2}", e + 1)?;
        }
        writeln!(f)?;
        row(f, "b", &|q| q.b)?;
        row(f, "w", &|q| q.w)?;
        row(f, "r", &|q| q.r)?;
        row(f, "r'", &|q| q.rp)
    }
}

/// A permutation as an image vector.
pub type Perm = Vec<usize>;

pub fn compose(s: &[usize], t: &[usize]) -> Perm {
    t.iter().map(|&i| s[i]).collect()
}

pub fn inverse(s: &[usize]) -> Perm {
    let mut out = vec![0; s.len()];
    for (i, &j) in s.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Cycles, each starting at its least element, ordered by that element.
pub fn cycles(s: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; s.len()];
    let mut out = Vec::new();
    for i in 0..s.len() {
        if seen[i] {
            continue;
        }
        let mut c = vec![i];
        seen[i] = true;
        let mut j = s[i];
        while j != i {
            seen[j] = true;
            c.push(j);
            j = s[j];
        }
        out.push(c);
    }
    out
}

pub fn perm_from_cycles(n: usize, cyc: &[Vec<usize>]) -> Result<Perm> {
    let mut p: Vec<Option<usize>> = vec![None; n];
    for c in cyc {
        for k in 0..c.len() {
            let (a, b) = (c[k], c[(k + 1) % c.len()]);
            if a >= n || b >= n || p[a].is_some() {
                return Err(Error::InvalidForm("cycles are not disjoint".into()));
            }
            p[a] = Some(b);
        }
    }
    Ok(p.into_iter()
        .enumerate()
        .map(|(i, x)| x.unwrap_or(i))
        .collect())
}

pub fn cycles_text(s: &[usize]) -> String {
    cycles(s)
        .iter()
        .map(|c| {
            format!(
                "({})",
                c.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    pub sigma0: Perm,
    pub sigma1: Perm,
}

impl Constellation {
    pub fn new(sigma0: Perm, sigma1: Perm) -> Result<Self> {
        if sigma0.len() != sigma1.len() {
            return Err(Error::DimensionMismatch(
                "permutations of different sizes".into(),
            ));
        }
        for s in [&sigma0, &sigma1] {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            if set.len() != s.len() || set.iter().next_back().is_some_and(|&m| m >= s.len()) {
                return Err(Error::InvalidForm("not a permutation".into()));
            }
        }
        let c = Constellation { sigma0, sigma1 };
        if !c.is_transitive() {
            return Err(Error::InvalidForm(
                "the permutations do not act transitively".into(),
            ));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.sigma0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma0.is_empty()
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(e) = stack.pop() {
            for f in [self.sigma0[e], self.sigma1[e]] {
                if !seen[f] {
                    seen[f] = true;
                    stack.push(f);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// sigma0 sigma1^{-1}, whose cycles are the red points.
    pub fn rho(&self) -> Perm {
        compose(&self.sigma0, &inverse(&self.sigma1))
    }

    pub fn mirror(&self) -> Self {
        Constellation {
            sigma0: inverse(&self.sigma0),
            sigma1: inverse(&self.sigma1),
        }
    }

    /// Euler characteristic count of the glued surface (red points = cycles of rho).
    pub fn genus(&self) -> i64 {
        let chi = (cycles(&self.sigma0).len()
            + cycles(&self.sigma1).len()
            + cycles(&self.rho()).len()) as i64
            - self.len() as i64;
        (2 - chi) / 2
    }

    /// The edge bijection pi with pi sigma_k = sigma'_k pi, if any.
    pub fn isomorphism(&self, other: &Constellation) -> Option<Perm> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        (0..n).find_map(|img| conjugacy_from(self, other, img))
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma0 = {}\nsigma1 = {}",
            cycles_text(&self.sigma0),
            cycles_text(&self.sigma1)
        )
    }
}

/// Cyclic set with its unoriented neighbour relation and, once known, a
/// successor map.
struct CyclicSet {
    members: Vec<usize>,
    nbrs: BTreeMap<usize, Vec<usize>>,
    succ: Option<BTreeMap<usize, usize>>,
}

impl CyclicSet {
    fn new(members: Vec<usize>, adj: impl Fn(usize, usize) -> bool) -> Result<Vec<CyclicSet>> {
        let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &a in &members {
            let v: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&b| b != a && adj(a, b))
                .collect();
            let ok = v.len() == 2 || (v.len() == 1 && members.len() >= 2);
            if !ok {
                return Err(Error::Inconsistent(format!(
                    "ambiguous neighbour structure at edge {}",
                    a + 1
                )));
            }
            nbrs.insert(a, v);
        }
        // split into connected components
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &a in &members {
            if seen.contains(&a) {
                continue;
            }
            let mut comp = vec![a];
            seen.insert(a);
            let mut k = 0;
            while k < comp.len() {
                for &b in &nbrs[&comp[k]] {
                    if seen.insert(b) {
                        comp.push(b);
                    }
                }
                k += 1;
            }
            for &x in &comp {
                let deg = nbrs[&x].len();
                if (comp.len() > 2 && deg != 2) || (comp.len() == 2 && deg != 1) || comp.len() == 1
                {
                    return Err(Error::Inconsistent(format!(
                        "cyclic set around edge {} is not a cycle",
                        x + 1
                    )));
                }
            }
            let sub = comp.iter().map(|x| (*x, nbrs[x].clone())).collect();
            out.push(CyclicSet {
                members: comp,
                nbrs: sub,
                succ: None,
            });
        }
        Ok(out)
    }

    fn contains(&self, e: usize) -> bool {
        self.nbrs.contains_key(&e)
    }

    /// Orient so that `to` follows `from`; false on conflict.
    fn orient(&mut self, from: usize, to: usize) -> bool {
        if let Some(s) = &self.succ {
            return s[&from] == to || self.members.len() == 2;
        }
        let mut succ = BTreeMap::new();
        let (mut prev, mut cur) = (from, to);
        succ.insert(from, to);
        while cur != from {
            let next = if self.members.len() == 2 {
                prev
            } else {
                *self.nbrs[&cur].iter().find(|&&x| x != prev).unwrap()
            };
            succ.insert(cur, next);
            prev = cur;
            cur = next;
        }
        self.succ = Some(succ);
        true
    }

    /// Pairs (from, to) with to the successor, restricted to the given set.
    fn oriented_pairs_within(&self, other: &CyclicSet) -> Vec<(usize, usize)> {
        match &self.succ {
            // a 2-cycle carries no orientation
            _ if self.members.len() <= 2 => Vec::new(),
            None => Vec::new(),
            Some(s) => s
                .iter()
                .filter(|(a, b)| other.contains(**a) && other.contains(**b))
                .map(|(a, b)| (*a, *b))
                .collect(),
        }
    }
}

/// Orientation propagation from the list. Whenever it stalls a new cyclic set
/// is oriented by hand; bit k of `flips` reverses the k-th such choice.
fn propagate(m: &DessinData, flips: u32) -> Result<(Constellation, u32)> {
    let e = m.len();
    let reds = |k: usize| [m.quads[k].r, m.quads[k].rp];
    let share_red = |a: usize, b: usize| reds(a).iter().any(|x| reds(b).contains(x));
    let share_bw =
        |a: usize, b: usize| m.quads[a].b == m.quads[b].b || m.quads[a].w == m.quads[b].w;

    let mut blacks = Vec::new();
    for b in 0..m.nb {
        let mem: Vec<usize> = (0..e).filter(|&k| m.quads[k].b == b).collect();
        blacks.extend(cyclic_or_singleton(mem, share_red)?);
    }
    let mut whites = Vec::new();
    for w in 0..m.nw {
        let mem: Vec<usize> = (0..e).filter(|&k| m.quads[k].w == w).collect();
        whites.extend(cyclic_or_singleton(mem, share_red)?);
    }
    let mut zs = Vec::new();
    for i in 0..m.n {
        let mem: Vec<usize> = (0..e).filter(|&k| reds(k).contains(&i)).collect();
        if !mem.is_empty() {
            zs.extend(CyclicSet::new(mem, share_bw)?);
        }
    }
    if zs.is_empty() {
        return Err(Error::Inconsistent("no zigzag data".into()));
    }
    let mut seeds = 0;
    loop {
        let mut progress = false;
        // zigzags -> black/white cells and back
        for zi in 0..zs.len() {
            for cells in [&mut blacks, &mut whites] {
                for c in cells.iter_mut() {
                    let pairs = zs[zi].oriented_pairs_within(c);
                    for (x, y) in pairs {
                        if c.members.len() > 2 && c.nbrs[&x].contains(&y) {
                            let fresh = c.succ.is_none();
                            if !c.orient(x, y) {
                                return Err(Error::Inconsistent("orientation conflict".into()));
                            }
                            progress |= fresh;
                        }
                    }
                    let pairs = c.oriented_pairs_within(&zs[zi]);
                    for (x, y) in pairs {
                        if zs[zi].members.len() > 2 && zs[zi].nbrs[&x].contains(&y) {
                            let fresh = zs[zi].succ.is_none();
                            if !zs[zi].orient(x, y) {
                                return Err(Error::Inconsistent("orientation conflict".into()));
                            }
                            progress |= fresh;
                        }
                    }
                }
            }
        }
        if progress {
            continue;
        }
        // seed: the first unoriented zigzag component of length > 2, else a cell
        let open = |c: &CyclicSet| c.succ.is_none() && c.members.len() > 2;
        let next = zs
            .iter_mut()
            .chain(blacks.iter_mut())
            .chain(whites.iter_mut())
            .find(|c| open(c));
        match next {
            Some(c) => {
                let a = c.members[0];
                let nb = &c.nbrs[&a];
                let b = if flips >> seeds & 1 == 1 {
                    nb[1]
                } else {
                    nb[0]
                };
                c.orient(a, b);
                seeds += 1;
            }
            None => break,
        }
    }
    let mut sigma0 = (0..e).collect::<Vec<_>>();
    let mut sigma1 = (0..e).collect::<Vec<_>>();
    for (cells, target, invert) in [(&blacks, &mut sigma0, false), (&whites, &mut sigma1, true)] {
        for c in cells {
            let succ = match &c.succ {
                Some(s) => s.clone(),
                None if c.members.len() <= 2 => {
                    let mut s = BTreeMap::new();
                    let k = c.members.len();
                    for t in 0..k {
                        s.insert(c.members[t], c.members[(t + 1) % k]);
                    }
                    s
                }
                None => {
                    return Err(Error::Inconsistent(
                        "orientation propagation stalled".into(),
                    ))
                }
            };
            for (x, y) in succ {
                if invert {
                    target[y] = x;
                } else {
                    target[x] = y;
                }
            }
        }
    }
    Ok((Constellation::new(sigma0, sigma1)?, seeds))
}

fn cyclic_or_singleton(
    mem: Vec<usize>,
    adj: impl Fn(usize, usize) -> bool,
) -> Result<Vec<CyclicSet>> {
    if mem.len() == 1 {
        let a = mem[0];
        return Ok(vec![CyclicSet {
            members: mem,
            nbrs: BTreeMap::from([(a, vec![])]),
            succ: Some(BTreeMap::from([(a, a)])),
        }]);
    }
    let sets = CyclicSet::new(mem, adj)?;
    if sets.len() != 1 {
        return Err(Error::Inconsistent(
            "a black or white cell is not a single cycle".into(),
        ));
    }
    Ok(sets)
}

/// The constellation of the list, with the z_1 orientation for which the
/// list is read back with r and r' in place.
pub fn constellation_from_list(m: &DessinData) -> Result<Constellation> {
    let mut last = None;
    let mut flips = 0u32;
    let mut bound = 2u32;
    while flips < bound {
        match propagate(m, flips) {
            Ok((c, seeds)) => {
                if reproduces(m, &c) {
                    return Ok(c);
                }
                bound = bound.max(1 << seeds.min(12));
                last = Some(Error::Inconsistent(
                    "constellation does not reproduce the red labels".into(),
                ));
            }
            Err(e) => last = Some(e),
        }
        flips += 1;
    }
    Err(last.unwrap())
}

fn reproduces(m: &DessinData, c: &Constellation) -> bool {
    let back = list_from_constellation(c);
    red_label_map(m, &back).is_some()
}

/// Map from the red labels of `a` to those of `b` for the same edges, if consistent.
fn red_label_map(a: &DessinData, b: &DessinData) -> Option<BTreeMap<usize, usize>> {
    let mut phi: BTreeMap<usize, usize> = BTreeMap::new();
    for (x, y) in a.quads.iter().zip(&b.quads) {
        for (p, q) in [(x.r, y.r), (x.rp, y.rp)] {
            if *phi.entry(p).or_insert(q) != q {
                return None;
            }
        }
    }
    Some(phi)
}

/// b, w, r as the cycles of sigma0, sigma1 and sigma0 sigma1^{-1}; r' = r(sigma1(e)).
/// Cycles are numbered by their least element.
pub fn list_from_constellation(c: &Constellation) -> DessinData {
    let label = |p: &[usize]| {
        let mut l = vec![0; p.len()];
        for (k, cyc) in cycles(p).iter().enumerate() {
            for &x in cyc {
                l[x] = k;
            }
        }
        l
    };
    let (b, w, r) = (label(&c.sigma0), label(&c.sigma1), label(&c.rho()));
    let quads: Vec<Quadruple> = (0..c.len())
        .map(|e| Quadruple {
            b: b[e],
            w: w[e],
            r: r[e],
            rp: r[c.sigma1[e]],
        })
        .collect();
    let n = cycles(&c.rho()).len();
    DessinData {
        n,
        nb: cycles(&c.sigma0).len(),
        nw: cycles(&c.sigma1).len(),
        quads,
    }
}

/// Isomorphism of quadruple lists up to relabeling edges, cells and red labels:
/// (edge map, red label map).
pub fn dessin_isomorphism(
    a: &DessinData,
    b: &DessinData,
) -> Option<(Perm, BTreeMap<usize, usize>)> {
    let ca = constellation_from_list(a).ok()?;
    let cb = constellation_from_list(b).ok()?;
    let n = ca.len();
    if n != cb.len() {
        return None;
    }
    // try every conjugating bijection, keep the first whose red labels agree
    for img in 0..n {
        if let Some(pi) = conjugacy_from(&ca, &cb, img) {
            let mut phi = BTreeMap::new();
            let ok = (0..n).all(|e| {
                let (x, y) = (a.quads[e], b.quads[pi[e]]);
                [(x.r, y.r), (x.rp, y.rp)]
                    .iter()
                    .all(|&(p, q)| *phi.entry(p).or_insert(q) == q)
            });
            let injective = phi.values().collect::<BTreeSet<_>>().len() == phi.len();
            if ok && injective {
                return Some((pi, phi));
            }
        }
    }
    None
}

fn conjugacy_from(a: &Constellation, b: &Constellation, img: usize) -> Option<Perm> {
    let n = a.len();
    let mut pi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    pi[0] = Some(img);
    used[img] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let pe = pi[e].unwrap();
        for (s, t) in [(&a.sigma0, &b.sigma0), (&a.sigma1, &b.sigma1)] {
            let (f, pf) = (s[e], t[pe]);
            match pi[f] {
                Some(x) if x != pf => return None,
                Some(_) => {}
                None => {
                    if used[pf] {
                        return None;
                    }
                    pi[f] = Some(pf);
                    used[pf] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    pi.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    pub positive: Vec<Vec<usize>>,
    pub negative: Vec<Vec<usize>>,
}

fn least_rotation(c: &[usize]) -> Vec<usize> {
    (0..c.len())
        .map(|k| [&c[k..], &c[..k]].concat())
        .min()
        .unwrap_or_default()
}

pub fn superpotential(c: &Constellation) -> Superpotential {
    let terms = |p: &[usize]| {
        let mut t: Vec<Vec<usize>> = cycles(p).iter().map(|x| least_rotation(x)).collect();
        t.sort();
        t
    };
    Superpotential {
        positive: terms(&c.sigma0),
        negative: terms(&c.sigma1),
    }
}

impl Superpotential {
    /// Reads `X3*X7*X15 + ... - X4*X8*X15 - ...` (1-based edge symbols).
    pub fn parse(s: &str) -> Result<Self> {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut sign = 1;
        for tok in s.replace('-', " - ").replace('+', " + ").split_whitespace() {
            match tok {
                "+" => sign = 1,
                "-" => sign = -1,
                word => {
                    let mut t = Vec::new();
                    for x in word.split('*') {
                        let k: usize = x
                            .strip_prefix('X')
                            .and_then(|d| d.parse().ok())
                            .filter(|&k| k > 0)
                            .ok_or_else(|| Error::Parse(format!("bad edge symbol {:?}", x)))?;
                        t.push(k - 1);
                    }
                    let t = least_rotation(&t);
                    if sign > 0 {
                        positive.push(t)
                    } else {
                        negative.push(t)
                    }
                }
            }
        }
        positive.sort();
        negative.sort();
        Ok(Superpotential { positive, negative })
    }

    /// Term multiset after relabeling edges by `pi`, each term rotated and sorted.
    pub fn relabeled(&self, pi: &[usize]) -> Superpotential {
        let f = |ts: &Vec<Vec<usize>>| {
            let mut out: Vec<Vec<usize>> = ts
                .iter()
                .map(|t| least_rotation(&t.iter().map(|&x| pi[x]).collect::<Vec<_>>()))
                .collect();
            out.sort();
            out
        };
        Superpotential {
            positive: f(&self.positive),
            negative: f(&self.negative),
        }
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |t: &Vec<usize>| {
            t.iter()
                .map(|x| format!("X{}", x + 1))
                .collect::<Vec<_>>()
                .join("*")
        };
        let pos: Vec<String> = self.positive.iter().map(word).collect();
        write!(f, "{}", pos.join(" + "))?;
        for t in &self.negative {
            write!(f, " - {}", word(t))?;
        }
        Ok(())
    }
}

/// Quadruple lists of all perfect surfaces found from the seed.
pub fn perfect_dessins(l: &LatticeEmbedding, seed: u64, cap: usize) -> Result<Vec<DessinData>> {
    let q = Quotient::new(l);
    enumerate_surfaces(l, seed, cap)?
        .perfect(&q)
        .iter()
        .map(|s| DessinData::from_surface(&q, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The printed list for the B10 model.
    pub(crate) fn b10_table() -> DessinData {
        DessinData::from_rows(
            6,
            &[6, 5, 1, 2, 4, 3, 1, 5, 3, 6, 4, 2, 5, 6, 1, 2, 3, 4],
            &[5, 6, 2, 1, 3, 4, 3, 1, 5, 2, 6, 4, 5, 6, 1, 2, 3, 4],
            &[2, 2, 3, 3, 4, 4, 1, 1, 1, 1, 1, 1, 5, 6, 5, 6, 5, 6],
            &[1, 1, 1, 1, 1, 1, 5, 5, 5, 6, 6, 6, 2, 2, 3, 3, 4, 4],
        )
        .unwrap()
    }

    fn from_cycles(n: usize, c: &[&[usize]]) -> Perm {
        let v: Vec<Vec<usize>> = c
            .iter()
            .map(|x| x.iter().map(|y| y - 1).collect())
            .collect();
        perm_from_cycles(n, &v).unwrap()
    }

    #[test]
    fn b10_table_to_constellation() {
        let m = b10_table();
        let c = constellation_from_list(&m).unwrap();
        let s0 = from_cycles(
            18,
            &[
                &[3, 7, 15],
                &[4, 12, 16],
                &[6, 9, 17],
                &[5, 11, 18],
                &[2, 8, 13],
                &[1, 10, 14],
            ],
        );
        let s1 = from_cycles(
            18,
            &[
                &[4, 8, 15],
                &[3, 10, 16],
                &[5, 7, 17],
                &[6, 12, 18],
                &[1, 9, 13],
                &[2, 11, 14],
            ],
        );
        assert_eq!(c.sigma0, s0);
        assert_eq!(c.sigma1, s1);
        assert_eq!(c.genus(), 1);
        assert_eq!(m.genus(), 1);
        let w = superpotential(&c).to_string();
        assert!(w.starts_with("X1*X10*X14 + "));
        assert!(w.contains(" - X1*X9*X13"));
        assert_eq!(Superpotential::parse(&w).unwrap(), superpotential(&c));
    }

    #[test]
    fn round_trip() {
        let m = b10_table();
        let c = constellation_from_list(&m).unwrap();
        let back = list_from_constellation(&c);
        let c2 = constellation_from_list(&back).unwrap();
        assert_eq!(c, c2);
        assert!(dessin_isomorphism(&m, &back).is_some());
    }

    #[test]
    fn smallest_and_intransitive() {
        let c = Constellation::new(vec![1, 2, 0], vec![1, 2, 0]).unwrap();
        let m = list_from_constellation(&c);
        assert_eq!((m.nb, m.nw, m.len()), (1, 1, 3));
        assert!(Constellation::new(vec![0, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn composition_convention() {
        // (st)(i) = s(t(i))
        let s = vec![1, 2, 0];
        let t = vec![0, 2, 1];
        assert_eq!(compose(&s, &t), vec![1, 0, 2]);
        assert_eq!(compose(&s, &inverse(&s)), vec![0, 1, 2]);
    }
}

//! Weighted bi-adjacency matrices of dessins, perfect matchings, determinants
//! and their Newton polygons.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::dessin::DessinData;
use crate::error::{Error, Result};
use crate::lattice::LatticeEmbedding;
use crate::polyring::{poly_det, LaurentPoly, PolyMatrix};
use crate::secondary::{convex_hull, psi_vertices, secondary_fan, SecondaryCone};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Unit,
    Critical,
    Numeric(Vec<i64>),
    /// edge e gets its own variable, index N + e
    Symbolic,
}

impl WeightSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(WeightSpec::Unit),
            "critical" | "crit" => Ok(WeightSpec::Critical),
            "symbolic" => Ok(WeightSpec::Symbolic),
            _ => Err(Error::Parse(format!("unknown weight spec {:?}", s))),
        }
    }

    pub fn nvars(&self, m: &DessinData) -> usize {
        match self {
            WeightSpec::Symbolic => m.n + m.len(),
            _ => m.n,
        }
    }

    /// Weight of every edge as a polynomial in the ring of `nvars`.
    fn edge_weights(&self, m: &DessinData) -> Result<Vec<LaurentPoly>> {
        let nv = self.nvars(m);
        let ints: Vec<i64> = match self {
            WeightSpec::Unit => vec![1; m.len()],
            WeightSpec::Critical => m.critical_weights(),
            WeightSpec::Numeric(v) => {
                if v.len() != m.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} weights for {} edges",
                        v.len(),
                        m.len()
                    )));
                }
                v.clone()
            }
            WeightSpec::Symbolic => {
                return Ok((0..m.len())
                    .map(|e| LaurentPoly::var(nv, m.n + e))
                    .collect())
            }
        };
        Ok(ints
            .into_iter()
            .map(|c| LaurentPoly::constant(nv, c))
            .collect())
    }
}

fn edge_entry(m: &DessinData, e: usize, weight: &LaurentPoly) -> LaurentPoly {
    let nv = weight.nvars();
    let q = m.quads[e];
    let mut exp = vec![0i32; nv];
    exp[q.r] += 1;
    exp[q.rp] += 1;
    weight.mul_monomial(&exp)
}

/// Black x white matrix with entries sum of weight(e) u_r(e) u_r'(e).
pub fn biadjacency(m: &DessinData, w: &WeightSpec) -> Result<PolyMatrix> {
    if m.nb != m.nw {
        return Err(Error::NotSquare(format!(
            "{} black and {} white cells",
            m.nb, m.nw
        )));
    }
    let ws = w.edge_weights(m)?;
    let mut k = PolyMatrix::zeros(m.nb, m.nw, w.nvars(m));
    for (e, q) in m.quads.iter().enumerate() {
        let entry = edge_entry(m, e, &ws[e]);
        let cell = k.get_mut(q.b, q.w);
        *cell = &*cell + &entry;
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PerfectMatching {
    /// edges, listed by black cell
    pub edges: Vec<usize>,
    pub exponent: Vec<i64>,
    /// sign of the black -> white bijection against the label order
    pub sign: i8,
}

fn perm_sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut s = 1i8;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

fn matching_from_edges(m: &DessinData, edges: Vec<usize>) -> PerfectMatching {
    let mut exponent = vec![0i64; m.n];
    let mut tau = vec![0usize; m.nb];
    for &e in &edges {
        let q = m.quads[e];
        exponent[q.r] += 1;
        exponent[q.rp] += 1;
        tau[q.b] = q.w;
    }
    PerfectMatching {
        sign: perm_sign(&tau),
        edges,
        exponent,
    }
}

/// All perfect matchings, by backtracking over black cells in label order.
pub fn perfect_matchings(m: &DessinData) -> Vec<PerfectMatching> {
    let mut by_black: Vec<Vec<usize>> = vec![Vec::new(); m.nb];
    for (e, q) in m.quads.iter().enumerate() {
        by_black[q.b].push(e);
    }
    for v in by_black.iter_mut() {
        v.sort_by_key(|&e| (m.quads[e].w, e));
    }
    if m.nb != m.nw || m.nb == 0 {
        return Vec::new();
    }

    fn extend(
        m: &DessinData,
        by_black: &[Vec<usize>],
        b: usize,
        used: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if b == by_black.len() {
            out.push(cur.clone());
            return;
        }
        for &e in &by_black[b] {
            let w = m.quads[e].w;
            if !used[w] {
                used[w] = true;
                cur.push(e);
                extend(m, by_black, b + 1, used, cur, out);
                cur.pop();
                used[w] = false;
            }
        }
    }

    let mut all: Vec<PerfectMatching> = by_black[0]
        .par_iter()
        .flat_map_iter(|&e0| {
            let mut used = vec![false; m.nw];
            used[m.quads[e0].w] = true;
            let mut cur = vec![e0];
            let mut out = Vec::new();
            extend(m, &by_black, 1, &mut used, &mut cur, &mut out);
            out.into_iter()
                .map(|edges| matching_from_edges(m, edges))
                .collect::<Vec<_>>()
        })
        .collect();
    all.sort();
    all
}

/// Signed sum over matchings; equal to det of the bi-adjacency matrix.
pub fn det_from_matchings(m: &DessinData, w: &WeightSpec) -> Result<LaurentPoly> {
    let ws = w.edge_weights(m)?;
    let nv = w.nvars(m);
    let mut total = LaurentPoly::zero(nv);
    for p in perfect_matchings(m) {
        let mut t = LaurentPoly::constant(nv, p.sign as i64);
        for &e in &p.edges {
            t = &t * &edge_entry(m, e, &ws[e]);
        }
        total = &total + &t;
    }
    Ok(total)
}

/// det K, computed both ways and normalized so the lexicographically least
/// term is positive.
pub fn kasteleyn_det(m: &DessinData, w: &WeightSpec) -> Result<LaurentPoly> {
    let d = poly_det(&biadjacency(m, w)?)?;
    let d2 = det_from_matchings(m, w)?;
    if d != d2 {
        return Err(Error::Inconsistent(
            "matching expansion differs from the determinant".into(),
        ));
    }
    Ok(d.normalize_sign())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonReport {
    /// hull corners as exponent vectors, counterclockwise in L coordinates
    pub vertices: Vec<Vec<i64>>,
    pub secondary_vertices: Vec<Vec<i64>>,
    pub equal: bool,
}

/// Newton polygon of a polynomial in u_1..u_N (extra variables are ignored
/// after projection), compared with the secondary polygon.
pub fn newton_polygon(p: &LaurentPoly, l: &LatticeEmbedding) -> Result<NewtonReport> {
    let n = l.n();
    let exps: BTreeSet<Vec<i64>> = p
        .terms()
        .keys()
        .map(|e| e[..n].iter().map(|&x| x as i64).collect())
        .collect();
    let base = exps
        .iter()
        .next()
        .ok_or_else(|| Error::Degenerate("zero polynomial".into()))?
        .clone();
    let mut pts = Vec::with_capacity(exps.len());
    for e in &exps {
        let diff: Vec<i64> = e.iter().zip(&base).map(|(a, b)| a - b).collect();
        let c = l.coordinates(&diff).ok_or_else(|| {
            Error::Inconsistent(format!("exponent difference {:?} is not in L", diff))
        })?;
        pts.push((c, e.clone()));
    }
    let hull = convex_hull(&pts.iter().map(|(c, _)| *c).collect::<Vec<_>>());
    let vertices: Vec<Vec<i64>> = if hull.is_empty() {
        vec![base]
    } else {
        hull.iter()
            .map(|h| pts.iter().find(|(c, _)| c == h).unwrap().1.clone())
            .collect()
    };
    let secondary_vertices = psi_vertices(l, &secondary_fan(l)).vertices;
    let a: BTreeSet<&Vec<i64>> = vertices.iter().collect();
    let b: BTreeSet<&Vec<i64>> = secondary_vertices.iter().collect();
    Ok(NewtonReport {
        equal: a == b,
        vertices,
        secondary_vertices,
    })
}

/// P_C = {e : {r(e), r'(e)} in L_C}, checked to be a perfect matching.
pub fn matching_for_cone(m: &DessinData, c: &SecondaryCone) -> Result<PerfectMatching> {
    let lc: BTreeSet<(usize, usize)> = c.lc.iter().copied().collect();
    let mut edges: Vec<usize> = (0..m.len())
        .filter(|&e| {
            let q = m.quads[e];
            lc.contains(&(q.r.min(q.rp), q.r.max(q.rp)))
        })
        .collect();
    edges.sort_by_key(|&e| m.quads[e].b);
    let bs: BTreeSet<usize> = edges.iter().map(|&e| m.quads[e].b).collect();
    let ws: BTreeSet<usize> = edges.iter().map(|&e| m.quads[e].w).collect();
    if edges.len() != m.nb || bs.len() != m.nb || ws.len() != m.nw {
        return Err(Error::Inconsistent(format!(
            "P_C for L_C {:?} is not a perfect matching",
            c.lc
        )));
    }
    Ok(matching_from_edges(m, edges))
}

/// Expected |coefficient| of u^psi_C in det K^crit: product of |d|^|d| over L_C.
pub fn vertex_coefficient(l: &LatticeEmbedding, c: &SecondaryCone) -> BigInt {
    c.lc.iter().fold(BigInt::from(1), |acc, &(i, j)| {
        let d = l.det(i, j).unsigned_abs() as u32;
        acc * BigInt::from(d).pow(d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::Quadruple;
    use crate::polyring::LaurentPoly;

    /// The B2 critical-weight matrix arranged as a dessin: rows black, columns white.
    fn b2_dessin() -> DessinData {
        // entries: (b, w, r, r') with multiplicity equal to the printed coefficient
        let q = |b, w, r, rp| Quadruple { b, w, r, rp };
        DessinData::new(
            4,
            vec![
                q(0, 0, 0, 3),
                q(0, 1, 2, 3),
                q(1, 0, 2, 3),
                q(1, 1, 0, 2),
                q(1, 2, 1, 3),
                q(2, 0, 0, 1),
                q(2, 1, 2, 3),
                q(2, 2, 0, 3),
                q(0, 2, 1, 2),
                q(2, 2, 1, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn det_both_ways_agree() {
        let m = b2_dessin();
        for w in [WeightSpec::Unit, WeightSpec::Critical, WeightSpec::Symbolic] {
            let d = poly_det(&biadjacency(&m, &w).unwrap()).unwrap();
            assert_eq!(d, det_from_matchings(&m, &w).unwrap());
        }
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn single_monomial_newton() {
        let l = LatticeEmbedding::new(&[vec![0, 1, 1, -2], vec![-1, 0, 2, -1]]).unwrap();
        let p = LaurentPoly::parse("u^[1,1,2,2]", 4).unwrap();
        let r = newton_polygon(&p, &l).unwrap();
        assert_eq!(r.vertices, vec![vec![1, 1, 2, 2]]);
        assert!(!r.equal);
    }
}

//! The secondary fan of L, pair lists L_C, lattice points psi_C, the secondary
//! polygon and the planar polygon of partial sums.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::IMat;
use crate::lattice::{det2, factor_antisymmetric, validate_lattice, LatticeEmbedding, PluckerForm};

/// Exact counterclockwise angle order starting at the positive x-axis.
pub fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |v: (i64, i64)| {
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det2(a, b)))
}

fn same_ray(a: (i64, i64), b: (i64, i64)) -> bool {
    det2(a, b) == 0 && a.0 * b.0 + a.1 * b.1 > 0
}

/// Rays of the fan in counterclockwise order, each with the indices on it.
pub fn rays(l: &LatticeEmbedding) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..l.n()).collect();
    idx.sort_by(|&i, &j| angle_cmp(l.col(i), l.col(j)).then(i.cmp(&j)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some(r) if same_ray(l.col(r[0]), l.col(i)) => r.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondaryCone {
    /// indices on the clockwise (right) boundary ray
    pub right: Vec<usize>,
    /// indices on the counterclockwise (left) boundary ray
    pub left: Vec<usize>,
    /// pairs (i, j), i < j, 0-based
    pub lc: Vec<(usize, usize)>,
    pub psi: Vec<i64>,
}

impl SecondaryCone {
    /// Boundary representatives (i, j) with det(b_i, b_j) > 0.
    pub fn boundary(&self) -> (usize, usize) {
        (self.right[0], self.left[0])
    }

    pub fn lc_abs_det_sum(&self, l: &LatticeEmbedding) -> i64 {
        self.lc.iter().map(|&(i, j)| l.det(i, j).abs()).sum()
    }
}

/// Is v in the open cone spanned by b_p and b_q.
fn strictly_inside(v: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    let d = det2(a, b);
    if d == 0 {
        return false;
    }
    let (a, b) = if d > 0 { (a, b) } else { (b, a) };
    det2(a, v) > 0 && det2(v, b) > 0
}

pub fn secondary_fan(l: &LatticeEmbedding) -> Vec<SecondaryCone> {
    let rs = rays(l);
    let n = l.n();
    let k = rs.len();
    let mut cones = Vec::with_capacity(k);
    for t in 0..k {
        let right = rs[t].clone();
        let left = rs[(t + 1) % k].clone();
        let (a, b) = (l.col(right[0]), l.col(left[0]));
        let v = (a.0 + b.0, a.1 + b.1);
        let mut lc = Vec::new();
        let mut psi = vec![0i64; n];
        for p in 0..n {
            for q in p + 1..n {
                if strictly_inside(v, l.col(p), l.col(q)) {
                    lc.push((p, q));
                    let d = l.det(p, q).abs();
                    psi[p] += d;
                    psi[q] += d;
                }
            }
        }
        cones.push(SecondaryCone {
            right,
            left,
            lc,
            psi,
        });
    }
    cones
}

/// The lattice points psi_C in fan order together with the vertices of their
/// convex hull (in the same order, dropping points that are not corners).
#[derive(Clone, Debug, Serialize)]
pub struct SecondaryPolygon {
    pub psi: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
}

pub fn psi_vertices(l: &LatticeEmbedding, cones: &[SecondaryCone]) -> SecondaryPolygon {
    let psi: Vec<Vec<i64>> = cones.iter().map(|c| c.psi.clone()).collect();
    let base = psi[0].clone();
    let pts: Vec<(i64, i64)> = psi
        .iter()
        .map(|p| {
            let diff: Vec<i64> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
            l.coordinates(&diff).expect("psi differences lie in L")
        })
        .collect();
    let hull = convex_hull(&pts);
    let vertices = hull
        .iter()
        .map(|h| psi[pts.iter().position(|p| p == h).unwrap()].clone())
        .collect();
    SecondaryPolygon { psi, vertices }
}

/// Counterclockwise convex hull (strict corners only).
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        det2((a.0 - o.0, a.1 - o.1), (b.0 - o.0, b.1 - o.1))
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the signed area of a closed polygon.
pub fn twice_area(points: &[(i64, i64)]) -> i64 {
    let k = points.len();
    (0..k).map(|i| det2(points[i], points[(i + 1) % k])).sum()
}

/// Lattice points on the boundary of a closed polygon.
pub fn boundary_points(points: &[(i64, i64)]) -> i64 {
    use num_integer::Integer;
    let k = points.len();
    (0..k)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % k]);
            (b.0 - a.0).gcd(&(b.1 - a.1))
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolygon {
    /// the chosen boundary points, counterclockwise
    pub points: Vec<(i64, i64)>,
    /// strict corners, counterclockwise
    pub vertices: Vec<(i64, i64)>,
}

impl LatticePolygon {
    pub fn twice_area(&self) -> i64 {
        twice_area(&self.vertices)
    }

    pub fn boundary_lattice_points(&self) -> i64 {
        boundary_points(&self.vertices)
    }

    /// Pick's formula.
    pub fn interior_lattice_points(&self) -> i64 {
        (self.twice_area() - self.boundary_lattice_points() + 2) / 2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaPolygon {
    /// perm[k] = original column placed at position k
    pub perm: Vec<usize>,
    pub polygon: LatticePolygon,
}

pub fn delta_polygon(l: &LatticeEmbedding) -> DeltaPolygon {
    let mut perm: Vec<usize> = (0..l.n()).collect();
    perm.sort_by(|&i, &j| angle_cmp(l.col(i), l.col(j)).then(i.cmp(&j)));
    let mut pts = Vec::with_capacity(perm.len());
    let mut acc = (0i64, 0i64);
    for &k in &perm {
        let b = l.col(k);
        acc = (acc.0 + b.0, acc.1 + b.1);
        pts.push(acc);
    }
    debug_assert_eq!(acc, (0, 0));
    let vertices = convex_hull(&pts);
    // rotate vertices so they follow the order of pts
    let start = pts.iter().find(|p| vertices.contains(p)).copied().unwrap();
    let s = vertices.iter().position(|&v| v == start).unwrap();
    let vertices = vertices[s..]
        .iter()
        .chain(&vertices[..s])
        .copied()
        .collect();
    DeltaPolygon {
        perm,
        polygon: LatticePolygon {
            points: pts,
            vertices,
        },
    }
}

/// Map Delta to the secondary polygon: rotate each partial sum p to pJ,
/// embed in Z^N and translate by psi of the cone whose left ray carries the
/// first reordered column.
pub fn delta_to_sigma(
    l: &LatticeEmbedding,
    cones: &[SecondaryCone],
    d: &DeltaPolygon,
) -> Vec<Vec<i64>> {
    let first = d.perm[0];
    let anchor = cones
        .iter()
        .find(|c| c.left.contains(&first))
        .expect("every ray bounds a cone");
    d.polygon
        .points
        .iter()
        .map(|&(x, y)| {
            let e = l.embed((-y, x));
            e.iter().zip(&anchor.psi).map(|(a, b)| a + b).collect()
        })
        .collect()
}

/// (2 * area of Delta, interior lattice points of Delta), from the Plücker
/// data and the pair list of one cone.
pub fn area_and_interior(l: &LatticeEmbedding, c: &SecondaryCone) -> (i64, i64) {
    use num_integer::Integer;
    let twice = l.total_abs_det() - 2 * c.lc_abs_det_sum(l);
    let boundary: i64 = l.cols().iter().map(|b| b.0.gcd(&b.1)).sum();
    (twice, (twice - boundary + 2) / 2)
}

pub fn lattice_from_polygon(points: &[(i64, i64)]) -> Result<LatticeEmbedding> {
    let k = points.len();
    if k < 3 {
        return Err(Error::InvalidPolygon(format!(
            "{} points; need at least 3",
            k
        )));
    }
    let edges: Vec<(i64, i64)> = (0..k)
        .map(|i| {
            (
                points[(i + 1) % k].0 - points[i].0,
                points[(i + 1) % k].1 - points[i].1,
            )
        })
        .collect();
    if edges.contains(&(0, 0)) {
        return Err(Error::InvalidPolygon("repeated consecutive point".into()));
    }
    if twice_area(points) <= 0 {
        return Err(Error::InvalidPolygon(
            "zero area or clockwise orientation".into(),
        ));
    }
    for i in 0..k {
        let (a, b) = (edges[i], edges[(i + 1) % k]);
        let c = det2(a, b);
        if c < 0 || (c == 0 && a.0 * b.0 + a.1 * b.1 < 0) {
            return Err(Error::InvalidPolygon(format!(
                "not convex at point {}",
                (i + 1) % k + 1
            )));
        }
    }
    // edge directions must wind exactly once
    let descents = (0..k)
        .filter(|&i| angle_cmp(edges[i], edges[(i + 1) % k]) == Ordering::Greater)
        .count();
    if descents > 1 {
        return Err(Error::InvalidPolygon(
            "boundary winds more than once".into(),
        ));
    }
    let last = points[k - 1];
    let shifted: Vec<(i64, i64)> = points
        .iter()
        .map(|p| (p.0 - last.0, p.1 - last.1))
        .collect();
    let mut cols = Vec::with_capacity(k);
    let mut prev = (0, 0);
    for &p in &shifted {
        cols.push((p.0 - prev.0, p.1 - prev.1));
        prev = p;
    }
    let b = vec![
        cols.iter().map(|c| c.0).collect(),
        cols.iter().map(|c| c.1).collect(),
    ];
    validate_lattice(&b)
}

/// Factor C as B^t J B choosing G = [[a, b], [0, c]] with ac = gcd(C) so that
/// Delta has exactly one interior lattice point, if such a G exists.
pub fn reflexive_factorization(c: &IMat) -> Result<Option<(LatticeEmbedding, [[i64; 2]; 2])>> {
    let d = PluckerForm { c: c.clone() }.gcd();
    for a in 1..=d {
        if d % a != 0 {
            continue;
        }
        let cc = d / a;
        for b in 0..cc.max(1) {
            let g = [[a, b], [0, cc]];
            let l = match factor_antisymmetric(c, Some(g)) {
                Ok(l) => l,
                Err(Error::InvalidLattice(_)) => continue,
                Err(e) => return Err(e),
            };
            if delta_polygon(&l).polygon.interior_lattice_points() == 1 {
                return Ok(Some((l, g)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> LatticeEmbedding {
        validate_lattice(&[vec![0, 1, 1, -2], vec![-1, 0, 2, -1]]).unwrap()
    }

    #[test]
    fn b2_fan() {
        let cones = secondary_fan(&b2());
        let mut lists: Vec<Vec<(usize, usize)>> = cones.iter().map(|c| c.lc.clone()).collect();
        lists.sort();
        let mut want = vec![
            vec![(0, 1), (0, 2), (1, 3)],
            vec![(0, 2), (1, 2)],
            vec![(2, 3)],
            vec![(0, 3), (1, 3)],
        ];
        want.sort();
        assert_eq!(lists, want);
        let sp = psi_vertices(&b2(), &cones);
        let mut v = sp.vertices.clone();
        v.sort();
        assert_eq!(
            v,
            vec![
                vec![0, 0, 3, 3],
                vec![1, 2, 3, 0],
                vec![2, 1, 0, 3],
                vec![2, 2, 1, 1]
            ]
        );
    }

    #[test]
    fn edge_formula() {
        let l = b2();
        let c = l.plucker().c;
        let cones = secondary_fan(&l);
        let k = cones.len();
        for t in 0..k {
            let (prev, next) = (&cones[t], &cones[(t + 1) % k]);
            let mut want = vec![0i64; l.n()];
            for &i in &next.right {
                for j in 0..l.n() {
                    want[j] += c[i][j];
                }
            }
            let got: Vec<i64> = next.psi.iter().zip(&prev.psi).map(|(a, b)| a - b).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn delta_b2() {
        let l = b2();
        let d = delta_polygon(&l);
        assert_eq!(d.polygon.twice_area(), 4);
        assert_eq!(d.polygon.interior_lattice_points(), 1);
        let cones = secondary_fan(&l);
        for c in &cones {
            assert_eq!(area_and_interior(&l, c), (4, 1));
        }
        let mut sig = delta_to_sigma(&l, &cones, &d);
        sig.sort();
        assert_eq!(
            sig,
            vec![
                vec![0, 0, 3, 3],
                vec![1, 2, 3, 0],
                vec![2, 1, 0, 3],
                vec![2, 2, 1, 1]
            ]
        );
    }

    #[test]
    fn unit_triangle() {
        let l = validate_lattice(&[vec![1, 0, -1], vec![0, 1, -1]]).unwrap();
        let cones = secondary_fan(&l);
        assert_eq!(area_and_interior(&l, &cones[0]), (1, 0));
    }

    #[test]
    fn polygon_square() {
        let l = lattice_from_polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(l.cols(), vec![(0, -1), (1, 0), (0, 1), (-1, 0)]);
        assert!(lattice_from_polygon(&[(0, 0), (1, 0), (2, 0)]).is_err());
        assert!(lattice_from_polygon(&[(0, 0), (1, 0)]).is_err());
        assert!(lattice_from_polygon(&[(0, 0), (1, 1), (1, 0), (0, 1)]).is_err());
    }

    #[test]
    fn p2_reflexive_choice() {
        let c = crate::lattice::plucker_form(
            &validate_lattice(&[vec![2, -1, -1], vec![1, 1, -2]]).unwrap(),
        )
        .c;
        let (l, g) = reflexive_factorization(&c).unwrap().unwrap();
        assert_eq!(crate::lattice::plucker_form(&l).c, c);
        assert_eq!(delta_polygon(&l).polygon.interior_lattice_points(), 1);
        assert_eq!(g[0][0] * g[1][1], 3);
        // the default choice diag(1, 3) is not reflexive here
        let d = factor_antisymmetric(&c, None).unwrap();
        assert_ne!(delta_polygon(&d).polygon.interior_lattice_points(), 1);
    }
}

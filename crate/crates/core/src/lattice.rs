//! Rank-two sublattices of Z^N orthogonal to (1,...,1), their Plücker forms and
//! quivers, and arithmetic in the quotient Z^N / L.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, IMat};

/// Rows of `b` are an oriented basis of L; column i is the vector b_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEmbedding {
    b: [Vec<i64>; 2],
}

pub fn det2(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn validate_lattice(b: &[Vec<i64>]) -> Result<LatticeEmbedding> {
    if b.len() != 2 {
        return Err(Error::InvalidLattice(format!(
            "expected 2 rows, got {}",
            b.len()
        )));
    }
    let n = b[0].len();
    if b[1].len() != n {
        return Err(Error::InvalidLattice("rows of different length".into()));
    }
    if n < 3 {
        return Err(Error::InvalidLattice(format!(
            "need N >= 3 columns, got {}",
            n
        )));
    }
    for (k, row) in b.iter().enumerate() {
        let s: i64 = row.iter().sum();
        if s != 0 {
            return Err(Error::InvalidLattice(format!(
                "row {} sums to {}, not 0",
                k + 1,
                s
            )));
        }
    }
    if intmat::rank(&b.to_vec()) < 2 {
        return Err(Error::InvalidLattice("rank < 2".into()));
    }
    let l = LatticeEmbedding {
        b: [b[0].clone(), b[1].clone()],
    };
    for i in 0..n {
        if (0..n).all(|j| l.det(i, j) == 0) {
            return Err(Error::InvalidLattice(format!(
                "index {} lies in a coordinate hyperplane (det(b_{},b_j) = 0 for all j)",
                i + 1,
                i + 1
            )));
        }
    }
    Ok(l)
}

impl LatticeEmbedding {
    pub fn new(b: &[Vec<i64>]) -> Result<Self> {
        validate_lattice(b)
    }

    pub fn n(&self) -> usize {
        self.b[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>; 2] {
        &self.b
    }

    pub fn matrix(&self) -> IMat {
        self.b.to_vec()
    }

    /// Column b_i (0-based).
    pub fn col(&self, i: usize) -> (i64, i64) {
        (self.b[0][i], self.b[1][i])
    }

    pub fn cols(&self) -> Vec<(i64, i64)> {
        (0..self.n()).map(|i| self.col(i)).collect()
    }

    /// det(b_i, b_j), 0-based.
    pub fn det(&self, i: usize, j: usize) -> i64 {
        det2(self.col(i), self.col(j))
    }

    /// Embed v in Z^2 as the lattice vector v_1 * row_1 + v_2 * row_2.
    pub fn embed(&self, v: (i64, i64)) -> Vec<i64> {
        (0..self.n())
            .map(|k| v.0 * self.b[0][k] + v.1 * self.b[1][k])
            .collect()
    }

    /// Inverse of `embed`: coordinates of a vector of L in the row basis.
    pub fn coordinates(&self, p: &[i64]) -> Option<(i64, i64)> {
        if p.len() != self.n() {
            return None;
        }
        // pick two columns with nonzero determinant and solve by Cramer
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let d = self.det(i, j);
                if d == 0 {
                    continue;
                }
                // v . b_i = p_i, v . b_j = p_j
                let (bi, bj) = (self.col(i), self.col(j));
                let x = p[i] * bj.1 - p[j] * bi.1;
                let y = bi.0 * p[j] - bj.0 * p[i];
                if x % d != 0 || y % d != 0 {
                    return None;
                }
                let v = (x / d, y / d);
                return (self.embed(v) == p).then_some(v);
            }
        }
        None
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.coordinates(p).is_some()
    }

    pub fn plucker(&self) -> PluckerForm {
        plucker_form(self)
    }

    pub fn coset_calculator(&self) -> CosetCalculator {
        CosetCalculator::new(self)
    }

    /// Sum of |det(b_i,b_j)| over i<j.
    pub fn total_abs_det(&self) -> i64 {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.det(i, j).abs())
            .sum()
    }

    /// Same lattice with columns permuted: new column k is old column perm[k].
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<i64>> = self
            .b
            .iter()
            .map(|r| perm.iter().map(|&k| r[k]).collect())
            .collect();
        validate_lattice(&rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerForm {
    pub c: IMat,
}

pub fn plucker_form(l: &LatticeEmbedding) -> PluckerForm {
    let n = l.n();
    PluckerForm {
        c: (0..n)
            .map(|i| (0..n).map(|j| l.det(i, j)).collect())
            .collect(),
    }
}

impl PluckerForm {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.n();
        if self.c.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidForm("not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if self.c[i][j] != -self.c[j][i] {
                    return Err(Error::InvalidForm(format!(
                        "not antisymmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let r = intmat::rank(&self.c);
        if r != 2 {
            return Err(Error::InvalidForm(format!("rank {} instead of 2", r)));
        }
        Ok(())
    }

    pub fn gcd(&self) -> i64 {
        intmat::gcd_slice(&self.c.concat())
    }
}

/// Arrow list with multiplicities expanded, nodes 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub nodes: usize,
    pub arrows: Vec<(usize, usize)>,
}

pub fn quiver_from_plucker(c: &PluckerForm) -> Quiver {
    let n = c.n();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..c.c[i][j].max(0) {
                arrows.push((i, j));
            }
        }
    }
    Quiver { nodes: n, arrows }
}

impl Quiver {
    /// q_ij - q_ji.
    pub fn antisymmetrized(&self) -> IMat {
        let mut m = vec![vec![0i64; self.nodes]; self.nodes];
        for &(s, t) in &self.arrows {
            m[s][t] += 1;
            m[t][s] -= 1;
        }
        m
    }

    pub fn check(&self) -> Result<()> {
        let n = self.nodes;
        let mut q = vec![vec![0i64; n]; n];
        for &(s, t) in &self.arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidForm(format!(
                    "arrow ({},{}) out of range",
                    s + 1,
                    t + 1
                )));
            }
            if s == t {
                return Err(Error::InvalidForm(format!("loop at node {}", s + 1)));
            }
            q[s][t] += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if q[i][j] > 0 && q[j][i] > 0 {
                    return Err(Error::InvalidForm(format!(
                        "2-cycle between {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            let out: i64 = q[i].iter().sum();
            let inn: i64 = (0..n).map(|j| q[j][i]).sum();
            if out != inn {
                return Err(Error::InvalidForm(format!(
                    "node {} has in {} out {}",
                    i + 1,
                    inn,
                    out
                )));
            }
        }
        Ok(())
    }

    pub fn to_plucker(&self) -> Result<PluckerForm> {
        self.check()?;
        let p = PluckerForm {
            c: self.antisymmetrized(),
        };
        p.check()?;
        Ok(p)
    }

    /// Arrow list with 1-based node labels.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.arrows
                .iter()
                .map(|&(s, t)| serde_json::json!([s + 1, t + 1]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, nodes: Option<usize>) -> Result<Self> {
        let arr: Vec<(usize, usize)> = serde_json::from_value(v.clone())?;
        if arr.iter().any(|&(s, t)| s == 0 || t == 0) {
            return Err(Error::Parse("quiver nodes are 1-based".into()));
        }
        let n = nodes.unwrap_or_else(|| arr.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0));
        Ok(Quiver {
            nodes: n,
            arrows: arr.into_iter().map(|(s, t)| (s - 1, t - 1)).collect(),
        })
    }
}

const JMAT: [[i64; 2]; 2] = [[0, 1], [-1, 0]];

/// Factor an antisymmetric rank-2 matrix as B^t J B. `g` must have determinant
/// equal to the gcd of the entries; default diag(1, d).
pub fn factor_antisymmetric(c: &IMat, g: Option<[[i64; 2]; 2]>) -> Result<LatticeEmbedding> {
    let pf = PluckerForm { c: c.clone() };
    pf.check()?;
    let n = pf.n();
    let d = pf.gcd();
    let g = g.unwrap_or([[1, 0], [0, d]]);
    if g[0][0] * g[1][1] - g[0][1] * g[1][0] != d {
        return Err(Error::InvalidForm(format!(
            "det G must equal the gcd {}",
            d
        )));
    }
    let cp: IMat = c
        .iter()
        .map(|r| r.iter().map(|x| x / d).collect())
        .collect();
    // column space of C': C' V = [D | 0]
    let (_u, _s, v) = intmat::smith(&cp);
    let cv = intmat::matmul(&cp, &v);
    let vinv = intmat::unimodular_inverse(&v)
        .ok_or_else(|| Error::InvalidForm("smith transform".into()))?;
    debug_assert!(cv.iter().all(|r| r[2..].iter().all(|&x| x == 0)));
    let mut f: IMat = vec![vinv[0].clone(), vinv[1].clone()];
    // C' = D F, and F^t J F = +-C'
    let ftjf = |f: &IMat| -> IMat {
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for a in 0..2 {
                    for b in 0..2 {
                        s += f[a][i] * JMAT[a][b] * f[b][j];
                    }
                }
                out[i][j] = s;
            }
        }
        out
    };
    let m = ftjf(&f);
    if m != cp {
        let neg: IMat = cp.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        if m != neg {
            return Err(Error::InvalidForm(
                "factorization failed; form is not of rank 2 type".into(),
            ));
        }
        f.swap(0, 1);
    }
    let b: Vec<Vec<i64>> = (0..2)
        .map(|r| {
            (0..n)
                .map(|k| g[r][0] * f[0][k] + g[r][1] * f[1][k])
                .collect()
        })
        .collect();
    let l = validate_lattice(&b)?;
    debug_assert_eq!(plucker_form(&l).c, *c);
    Ok(l)
}

/// Canonical forms of Z^N modulo L through the Smith normal form of B.
///
/// A class is stored as the torsion coordinates (reduced mod the invariant
/// factors greater than one) followed by N-2 free coordinates.
#[derive(Clone, Debug)]
pub struct CosetCalculator {
    n: usize,
    /// invariant factors (d1, d2), d1 | d2
    factors: [i64; 2],
    v: IMat,
    vinv: IMat,
    torsion_slots: Vec<(usize, i64)>,
}

impl CosetCalculator {
    pub fn new(l: &LatticeEmbedding) -> Self {
        let (_u, d, v) = intmat::smith(&l.matrix());
        let vinv = intmat::unimodular_inverse(&v).expect("smith transform is unimodular");
        let factors = [d[0][0], d[1][1]];
        let torsion_slots = (0..2)
            .filter(|&k| factors[k] > 1)
            .map(|k| (k, factors[k]))
            .collect();
        CosetCalculator {
            n: l.n(),
            factors,
            v,
            vinv,
            torsion_slots,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Torsion part of Z^N / L as invariant factors > 1.
    pub fn torsion(&self) -> Vec<i64> {
        self.torsion_slots.iter().map(|&(_, d)| d).collect()
    }

    pub fn invariant_factors(&self) -> [i64; 2] {
        self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.n - 2
    }

    pub fn torsion_len(&self) -> usize {
        self.torsion_slots.len()
    }

    /// Length of a class vector.
    pub fn class_len(&self) -> usize {
        self.torsion_slots.len() + self.n - 2
    }

    pub fn canonical(&self, p: &[i64]) -> Result<Vec<i64>> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for N = {}",
                p.len(),
                self.n
            )));
        }
        Ok(self.class(p))
    }

    /// Class of p (length assumed correct).
    pub fn class(&self, p: &[i64]) -> Vec<i64> {
        let w = intmat::vecmat(p, &self.v);
        let mut out = Vec::with_capacity(self.class_len());
        for &(k, d) in &self.torsion_slots {
            out.push(w[k].rem_euclid(d));
        }
        out.extend_from_slice(&w[2..]);
        out
    }

    /// Reduce a class vector after arithmetic.
    pub fn reduce(&self, c: &mut [i64]) {
        for (slot, &(_, d)) in self.torsion_slots.iter().enumerate() {
            c[slot] = c[slot].rem_euclid(d);
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut c: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut c);
        c
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut c: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut c);
        c
    }

    /// Class of e_i.
    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.n];
        e[i] = 1;
        self.class(&e)
    }

    /// An integer vector in the given class.
    pub fn lift(&self, c: &[i64]) -> Vec<i64> {
        let mut w = vec![0i64; self.n];
        for (slot, &(k, _)) in self.torsion_slots.iter().enumerate() {
            w[k] = c[slot];
        }
        let t = self.torsion_slots.len();
        w[2..].copy_from_slice(&c[t..]);
        intmat::vecmat(&w, &self.vinv)
    }

    /// Coefficients on the free class coordinates of a functional f on Z^N
    /// that vanishes on L.
    pub fn functional_on_free(&self, f: &[i64]) -> Vec<i64> {
        let col: Vec<i64> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.vinv[i][j] * f[j]).sum())
            .collect();
        col[2..].to_vec()
    }

    pub fn same(&self, p: &[i64], q: &[i64]) -> bool {
        self.class(p) == self.class(q)
    }
}

pub fn parse_b_json(s: &str) -> Result<LatticeEmbedding> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    let rows = match v.get("B") {
        Some(b) => b.clone(),
        None => v,
    };
    let b: Vec<Vec<i64>> = serde_json::from_value(rows)?;
    validate_lattice(&b)
}

pub fn parse_c_json(s: &str) -> Result<IMat> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    let rows = match v.get("C") {
        Some(c) => c.clone(),
        None => v,
    };
    Ok(serde_json::from_value(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> LatticeEmbedding {
        validate_lattice(&[vec![0, 1, 1, -2], vec![-1, 0, 2, -1]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_lattice(&[vec![1, 1, -1, -1], vec![2, 2, -2, -2]]).is_err());
        let e = validate_lattice(&[vec![1, 0, -1, 0], vec![0, 1, -1, 0]]).unwrap_err();
        assert!(e.to_string().contains("index 4"));
        assert!(validate_lattice(&[vec![1, 0, 0], vec![0, 1, -1]]).is_err());
    }

    #[test]
    fn plucker_examples() {
        let c = b2().plucker().c;
        assert_eq!(
            (c[0][1], c[0][2], c[0][3], c[1][2], c[1][3], c[2][3]),
            (1, 1, -2, 2, -1, 3)
        );
        let l1 = validate_lattice(&[vec![2, -1, -1], vec![1, 1, -2]]).unwrap();
        let c1 = l1.plucker().c;
        assert_eq!((c1[0][1], c1[0][2], c1[1][2]), (3, -3, 3));
    }

    #[test]
    fn quiver_of_b2() {
        let q = quiver_from_plucker(&b2().plucker());
        assert_eq!(q.arrows.iter().filter(|&&a| a == (2, 3)).count(), 3);
        q.check().unwrap();
        assert_eq!(q.antisymmetrized(), b2().plucker().c);
    }

    #[test]
    fn factor_b2() {
        let c = b2().plucker().c;
        let l = factor_antisymmetric(&c, None).unwrap();
        assert_eq!(l.plucker().c, c);
        for r in b2().rows() {
            assert!(l.contains(r));
        }
        for r in l.rows() {
            assert!(b2().contains(r));
        }
        assert!(factor_antisymmetric(&vec![vec![0; 3]; 3], None).is_err());
    }

    #[test]
    fn cosets_of_p2() {
        let l1 = validate_lattice(&[vec![2, -1, -1], vec![1, 1, -2]]).unwrap();
        let cc = l1.coset_calculator();
        assert_eq!(cc.torsion(), vec![3]);
        assert_eq!(cc.free_rank(), 1);
        let p = vec![4, -2, 7];
        let q: Vec<i64> = p.iter().zip(&l1.rows()[0]).map(|(a, b)| a + b).collect();
        assert!(cc.same(&p, &q));
        let r = vec![5, -2, 7];
        assert!(!cc.same(&p, &r));
        assert_eq!(cc.class(&cc.lift(&cc.class(&p))), cc.class(&p));
        // (1,-1,0) has order 3
        let g = cc.class(&[1, -1, 0]);
        assert_ne!(g, cc.class(&[0, 0, 0]));
        assert_eq!(cc.class(&[3, -3, 0]), cc.class(&[0, 0, 0]));
    }
}

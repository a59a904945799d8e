//! The A-side: the point configuration A = (e_i mod L), its normalized volume,
//! minimal relations, the generic Laurent polynomial f_A and unimodularity.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::{self, IMat};
use crate::lattice::LatticeEmbedding;
use crate::polyring::LaurentPoly;
use crate::secondary::{secondary_fan, SecondaryCone};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ASequence {
    /// a_1..a_N in Z^{N-2}; the first coordinate of every a_i is 1
    pub free: Vec<Vec<i64>>,
    /// invariant factors > 1 of Z^N / L
    pub torsion_factors: Vec<i64>,
    /// per index, the torsion coordinates of e_i
    pub torsion_labels: Vec<Vec<i64>>,
}

impl ASequence {
    pub fn n(&self) -> usize {
        self.free.len()
    }

    pub fn dim(&self) -> usize {
        self.free.first().map_or(0, |a| a.len())
    }

    /// (N-2) x N matrix with columns a_i.
    pub fn matrix(&self) -> IMat {
        intmat::transpose(&self.free)
    }
}

pub fn a_sequence(l: &LatticeEmbedding) -> ASequence {
    let n = l.n();
    let cc = l.coset_calculator();
    let t = cc.torsion_len();
    let classes: Vec<Vec<i64>> = (0..n).map(|i| cc.unit(i)).collect();
    let raw: Vec<Vec<i64>> = classes.iter().map(|c| c[t..].to_vec()).collect();
    let torsion_labels = classes.iter().map(|c| c[..t].to_vec()).collect();
    let m = n - 2;

    // affine basis at the lexicographically first unimodular simplex, if any
    let free = match (0..n).combinations(m).find(|s| {
        let cols: IMat = s.iter().map(|&i| raw[i].clone()).collect();
        intmat::det(&cols).abs() == 1
    }) {
        Some(s) => {
            let a0 = &raw[s[0]];
            let mut basis: IMat = vec![a0.clone()];
            for &i in &s[1..] {
                basis.push(raw[i].iter().zip(a0).map(|(x, y)| x - y).collect());
            }
            // basis rows are the new basis vectors; coordinates = raw * basis^{-1}
            let inv = intmat::unimodular_inverse(&basis).expect("unimodular simplex");
            raw.iter().map(|a| intmat::vecmat(a, &inv)).collect()
        }
        None => {
            let h = cc.functional_on_free(&vec![1; n]);
            let (u, _d, v) = intmat::smith(&vec![h.clone()]);
            let mut tm = intmat::unimodular_inverse(&v).expect("smith transform");
            if u[0][0] < 0 {
                tm[0].iter_mut().for_each(|x| *x = -*x);
            }
            debug_assert_eq!(tm[0], h);
            let mut out: Vec<Vec<i64>> = raw
                .iter()
                .map(|a| {
                    tm.iter()
                        .map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum())
                        .collect()
                })
                .collect();
            for k in 1..m {
                let lo = out.iter().map(|a: &Vec<i64>| a[k]).min().unwrap();
                for a in out.iter_mut() {
                    a[k] -= lo * a[0];
                }
            }
            out
        }
    };
    debug_assert!(free.iter().all(|a: &Vec<i64>| a[0] == 1));
    ASequence {
        free,
        torsion_factors: cc.torsion(),
        torsion_labels,
    }
}

/// Sum of |det| over L_C for every cone; an error if the cones disagree.
pub fn vol_a(l: &LatticeEmbedding) -> Result<i64> {
    vol_a_from_cones(l, &secondary_fan(l))
}

pub fn vol_a_from_cones(l: &LatticeEmbedding, cones: &[SecondaryCone]) -> Result<i64> {
    let vols: Vec<i64> = cones.iter().map(|c| c.lc_abs_det_sum(l)).collect();
    if vols.iter().any(|&v| v != vols[0]) {
        return Err(Error::Inconsistent(format!(
            "cone volumes differ: {:?}",
            vols
        )));
    }
    Ok(vols[0])
}

/// Row i of the Plücker form, the relation sum_j det(b_i,b_j) a_j = 0.
pub fn minimal_relations(l: &LatticeEmbedding) -> Vec<Vec<i64>> {
    l.plucker().c
}

/// Check that an integer vector annihilates A (free part and torsion labels).
pub fn annihilates(a: &ASequence, rel: &[i64]) -> bool {
    let free_ok =
        (0..a.dim()).all(|k| rel.iter().zip(&a.free).map(|(r, v)| r * v[k]).sum::<i64>() == 0);
    let tors_ok = a.torsion_factors.iter().enumerate().all(|(k, &d)| {
        rel.iter()
            .zip(&a.torsion_labels)
            .map(|(r, t)| r * t[k])
            .sum::<i64>()
            .rem_euclid(d)
            == 0
    });
    free_ok && tors_ok
}

/// f_A = sum_i u_i x^{a_i} in the ring u_1..u_N, x_1..x_{N-2}.
pub fn f_a_symbolic(l: &LatticeEmbedding) -> Result<LaurentPoly> {
    let a = a_sequence(l);
    if !a.torsion_factors.is_empty() {
        return Err(Error::Torsion(format!(
            "Z^N/L has torsion {:?}",
            a.torsion_factors
        )));
    }
    let n = l.n();
    let nv = n + a.dim();
    let mut p = LaurentPoly::zero(nv);
    for (i, ai) in a.free.iter().enumerate() {
        let mut e = vec![0i32; nv];
        e[i] = 1;
        for (k, &x) in ai.iter().enumerate() {
            e[n + k] = x as i32;
        }
        p = &p + &LaurentPoly::term(nv, 1, e);
    }
    Ok(p)
}

pub fn unimodular_exists(l: &LatticeEmbedding) -> bool {
    secondary_fan(l)
        .iter()
        .any(|c| c.lc.iter().all(|&(i, j)| l.det(i, j).abs() == 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct GkzInfo {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub vol_a: i64,
    pub torsion: Vec<i64>,
    pub torsion_labels: Vec<Vec<i64>>,
    pub unimodular: bool,
    pub relations: Vec<Vec<i64>>,
}

pub fn gkz_info(l: &LatticeEmbedding) -> Result<GkzInfo> {
    let a = a_sequence(l);
    Ok(GkzInfo {
        vol_a: vol_a(l)?,
        torsion: a.torsion_factors.clone(),
        torsion_labels: a.torsion_labels.clone(),
        a: a.free,
        unimodular: unimodular_exists(l),
        relations: minimal_relations(l),
    })
}

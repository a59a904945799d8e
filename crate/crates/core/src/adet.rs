//! Principal A-determinants of univariate supports and the check of the
//! critical-weight determinant against them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::dessin::DessinData;
use crate::error::{Error, Result};
use crate::gkz::{a_sequence, vol_a};
use crate::intmat::gcd_slice;
use crate::kasteleyn::{kasteleyn_det, newton_polygon, vertex_coefficient, WeightSpec};
use crate::lattice::LatticeEmbedding;
use crate::polyring::{poly_det, LaurentPoly, PolyMatrix};
use crate::secondary::secondary_fan;

/// Exponents m_k with coefficient variables var[k] in a ring of `nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateSupport {
    pub exponents: Vec<i64>,
    pub vars: Vec<usize>,
    pub nvars: usize,
}

impl UnivariateSupport {
    pub fn new(exponents: Vec<i64>, vars: Vec<usize>, nvars: usize) -> Result<Self> {
        if exponents.len() != vars.len() {
            return Err(Error::DimensionMismatch(
                "exponents and variables differ in length".into(),
            ));
        }
        if exponents.iter().collect::<BTreeSet<_>>().len() != exponents.len() {
            return Err(Error::Degenerate(format!(
                "repeated exponents {:?}",
                exponents
            )));
        }
        if vars.iter().any(|&v| v >= nvars) {
            return Err(Error::DimensionMismatch(
                "variable index out of range".into(),
            ));
        }
        Ok(UnivariateSupport {
            exponents,
            vars,
            nvars,
        })
    }

    /// Generic polynomial sum_k u_k x^k of degree d in u_1..u_{d+1}.
    pub fn generic(d: usize) -> Self {
        UnivariateSupport {
            exponents: (0..=d as i64).collect(),
            vars: (0..=d).collect(),
            nvars: d + 1,
        }
    }

    fn lo_hi(&self) -> (usize, usize) {
        let lo = (0..self.exponents.len())
            .min_by_key(|&k| self.exponents[k])
            .unwrap();
        let hi = (0..self.exponents.len())
            .max_by_key(|&k| self.exponents[k])
            .unwrap();
        (self.vars[lo], self.vars[hi])
    }
}

/// Sylvester matrix of f and f' for f = sum c_k x^{n_k} (n_k >= 0 distinct).
pub fn sylvester_matrix(coeffs: &[(i64, LaurentPoly)], nvars: usize) -> PolyMatrix {
    let d = coeffs.iter().map(|(n, _)| *n).max().unwrap_or(0) as usize;
    let size = 2 * d - 1;
    let mut m = PolyMatrix::zeros(size, size, nvars);
    // d - 1 rows of f, d rows of f'; coefficients listed from the top degree
    for row in 0..d - 1 {
        for (n, c) in coeffs {
            let col = row + (d - *n as usize);
            *m.get_mut(row, col) = c.clone();
        }
    }
    for row in 0..d {
        for (n, c) in coeffs {
            if *n == 0 {
                continue;
            }
            let col = row + (d - *n as usize);
            *m.get_mut(d - 1 + row, col) = c.scale(&BigInt::from(*n));
        }
    }
    m
}

/// Discriminant of the support, normalized: monomial and integer content
/// removed, and the one term in u_lo, u_hi alone of sign (-1)^(d+1).
pub fn sylvester_discriminant(s: &UnivariateSupport) -> Result<LaurentPoly> {
    if s.exponents.len() < 2 {
        return Err(Error::Degenerate(
            "a single monomial has no discriminant".into(),
        ));
    }
    let reduced = reduced_exponents(&s.exponents);
    let d = *reduced.iter().max().unwrap();
    if d < 2 {
        return Ok(LaurentPoly::one(s.nvars));
    }
    let coeffs: Vec<(i64, LaurentPoly)> = reduced
        .iter()
        .zip(&s.vars)
        .map(|(&n, &v)| (n, LaurentPoly::var(s.nvars, v)))
        .collect();
    let res = poly_det(&sylvester_matrix(&coeffs, s.nvars))?;
    if res.is_zero() {
        return Err(Error::Degenerate("vanishing resultant".into()));
    }
    // sparse supports make the resultant divisible by powers of u_lo, u_hi
    let disc = res.primitive_part();
    let (ulo, uhi) = s.lo_hi();
    let extreme: Vec<&BigInt> = disc
        .terms()
        .iter()
        .filter(|(e, _)| {
            e.iter()
                .enumerate()
                .all(|(k, &x)| x == 0 || k == ulo || k == uhi)
        })
        .map(|(_, c)| c)
        .collect();
    if extreme.len() != 1 {
        return Err(Error::Degenerate(
            "discriminant lacks a unique extreme term".into(),
        ));
    }
    let want_negative = d % 2 == 0;
    Ok(if extreme[0].is_negative() != want_negative {
        -&disc
    } else {
        disc
    })
}

/// Exponents shifted to start at 0 and divided by their gcd.
fn reduced_exponents(e: &[i64]) -> Vec<i64> {
    let lo = *e.iter().min().unwrap();
    let shifted: Vec<i64> = e.iter().map(|x| x - lo).collect();
    let g = gcd_slice(&shifted).max(1);
    shifted.iter().map(|x| x / g).collect()
}

/// Multiplicities of the two end points: the lattice distance to the
/// nearest other exponent.
pub fn vertex_multiplicities(s: &UnivariateSupport) -> (i64, i64) {
    let mut r = reduced_exponents(&s.exponents);
    r.sort();
    let k = r.len();
    (r[1] - r[0], r[k - 1] - r[k - 2])
}

/// u_lo^m_lo u_hi^m_hi times the full-support discriminant.
pub fn principal_a_det_univariate(l: &LatticeEmbedding) -> Result<LaurentPoly> {
    let a = a_sequence(l);
    if !a.torsion_factors.is_empty() {
        return Err(Error::Torsion(format!(
            "Z^N/L has torsion {:?}",
            a.torsion_factors
        )));
    }
    if a.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "support of dimension {} is not univariate",
            a.dim() - 1
        )));
    }
    let n = l.n();
    let s = UnivariateSupport::new(a.free.iter().map(|x| x[1]).collect(), (0..n).collect(), n)?;
    let (lo, hi) = s.lo_hi();
    let (mlo, mhi) = vertex_multiplicities(&s);
    let disc = sylvester_discriminant(&s)?;
    let mut e = vec![0i32; n];
    e[lo] += mlo as i32;
    e[hi] += mhi as i32;
    Ok(disc.mul_monomial(&e))
}

/// A principal A-determinant supplied by the user, as an expanded polynomial
/// or a list of factors.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EaFixture {
    Poly { poly: String },
    Factors { factors: Vec<String> },
}

impl EaFixture {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_poly(&self, nvars: usize) -> Result<LaurentPoly> {
        match self {
            EaFixture::Poly { poly } => LaurentPoly::parse(poly, nvars),
            EaFixture::Factors { factors } => {
                let mut p = LaurentPoly::one(nvars);
                for f in factors {
                    p = p.try_mul(&LaurentPoly::parse(f, nvars)?)?;
                }
                Ok(p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub status: String,
    pub lhs: String,
    pub rhs: String,
    pub diffs: Vec<String>,
    /// Newton polygon of the left side equals the secondary polygon of A
    pub newton_ok: bool,
    /// vertex coefficients have the expected absolute values
    pub vertex_coefficients_ok: bool,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.status == "holds"
    }
}

/// (u_1...u_N)^vol det K^crit(u^{-1}).
pub fn conjecture_lhs(
    l: &LatticeEmbedding,
    m: &DessinData,
    weights: &WeightSpec,
) -> Result<LaurentPoly> {
    let d = kasteleyn_det(m, weights)?;
    let vol = vol_a(l)? as i32;
    Ok(d.invert_variables().mul_monomial(&vec![vol; d.nvars()]))
}

/// Checks on the left side alone: its Newton polygon is the reflected
/// secondary polygon, with the expected vertex coefficients.
pub fn lhs_properties(l: &LatticeEmbedding, lhs: &LaurentPoly) -> Result<(bool, bool)> {
    let vol = vol_a(l)?;
    let n = l.n();
    let back = lhs.invert_variables().mul_monomial(&vec![vol as i32; n]);
    let newton = newton_polygon(&back, l)?;
    let vertex_ok = secondary_fan(l).iter().all(|c| {
        let e: Vec<i32> = c.psi.iter().map(|&x| (vol - x) as i32).collect();
        lhs.coeff(&e).abs() == vertex_coefficient(l, c)
    });
    Ok((newton.equal, vertex_ok))
}

pub fn conjecture_check(
    l: &LatticeEmbedding,
    m: &DessinData,
    weights: &WeightSpec,
    ea: Option<&LaurentPoly>,
) -> Result<CheckReport> {
    let lhs = conjecture_lhs(l, m, weights)?;
    let rhs = match ea {
        Some(p) => p.clone(),
        None => principal_a_det_univariate(l).map_err(|e| {
            Error::Unsupported(format!(
                "no principal A-determinant available ({}); supply a fixture",
                e
            ))
        })?,
    };
    if rhs.nvars() != lhs.nvars() {
        return Err(Error::DimensionMismatch(
            "fixture ring differs from u_1..u_N".into(),
        ));
    }
    let lhs_n = lhs.normalize_sign();
    let rhs_n = rhs.normalize_sign();
    let keys: BTreeSet<&Vec<i32>> = lhs_n.terms().keys().chain(rhs_n.terms().keys()).collect();
    let diffs: Vec<String> = keys
        .into_iter()
        .filter(|k| lhs_n.coeff(k) != rhs_n.coeff(k))
        .map(|k| {
            let e: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            format!(
                "u^[{}]: lhs {} rhs {}",
                e.join(","),
                lhs_n.coeff(k),
                rhs_n.coeff(k)
            )
        })
        .collect();
    let (newton_ok, vertex_coefficients_ok) = lhs_properties(l, &lhs)?;
    Ok(CheckReport {
        status: if diffs.is_empty() {
            "holds"
        } else {
            "mismatch"
        }
        .into(),
        lhs: lhs_n.to_string(),
        rhs: rhs_n.to_string(),
        diffs,
        newton_ok,
        vertex_coefficients_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_cubic() {
        let q = sylvester_discriminant(
            &UnivariateSupport::new(vec![0, 1, 2], vec![0, 1, 2], 3).unwrap(),
        )
        .unwrap();
        assert_eq!(q, LaurentPoly::parse("u2^2 - 4*u1*u3", 3).unwrap());
        // u1 + u3 x + u4 x^2 + u2 x^3
        let c = sylvester_discriminant(
            &UnivariateSupport::new(vec![0, 3, 1, 2], vec![0, 1, 2, 3], 4).unwrap(),
        )
        .unwrap();
        let want = LaurentPoly::parse(
            "27*u1^2*u2^2 + 4*u1*u4^3 + 4*u3^3*u2 - u3^2*u4^2 - 18*u1*u3*u4*u2",
            4,
        )
        .unwrap();
        assert_eq!(c, want);
    }

    #[test]
    fn b2_principal() {
        let l = LatticeEmbedding::new(&[vec![0, 1, 1, -2], vec![-1, 0, 2, -1]]).unwrap();
        let e = principal_a_det_univariate(&l).unwrap();
        let want = LaurentPoly::parse(
            "27*u^[3,3,0,0] + 4*u^[2,1,0,3] + 4*u^[1,2,3,0] - u^[1,1,2,2] - 18*u^[2,2,1,1]",
            4,
        )
        .unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn sparse_support_gcd() {
        // u1 + u2 x^2 reduces to a linear polynomial
        let s = UnivariateSupport::new(vec![0, 2], vec![0, 1], 2).unwrap();
        assert_eq!(sylvester_discriminant(&s).unwrap(), LaurentPoly::one(2));
        assert!(
            sylvester_discriminant(&UnivariateSupport::new(vec![5], vec![0], 1).unwrap()).is_err()
        );
        // u1 + u3 x + u2 x^2 + u4 x^4: the classical discriminant carries a factor u4
        let s = UnivariateSupport::new(vec![0, 2, 1, 4], vec![0, 1, 2, 3], 4).unwrap();
        let d = sylvester_discriminant(&s).unwrap();
        assert_eq!(
            d.terms().keys().map(|e| e.iter().sum::<i32>()).max(),
            Some(5)
        );
        assert_eq!(vertex_multiplicities(&s), (1, 2));
    }

    #[test]
    fn fixture_forms() {
        let f = EaFixture::parse(r#"{"factors": ["u1 - u2", "u1 + u2"]}"#).unwrap();
        assert_eq!(
            f.to_poly(2).unwrap(),
            LaurentPoly::parse("u1^2 - u2^2", 2).unwrap()
        );
        let p = EaFixture::parse(r#"{"poly": "2*u^[1,0]"}"#).unwrap();
        assert_eq!(p.to_poly(2).unwrap().to_string(), "2*u^[1,0]");
    }
}

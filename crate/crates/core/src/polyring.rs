//! Sparse Laurent polynomials with big-integer coefficients, and determinants
//! of matrices with polynomial entries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Monomial = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, c, vec![0; nvars])
    }

    /// Single term `c * u^exps`. Panics if the exponent length is wrong.
    pub fn term(nvars: usize, c: impl Into<BigInt>, exps: Monomial) -> Self {
        assert_eq!(
            exps.len(),
            nvars,
            "exponent length must equal variable count"
        );
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `u_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, 1, e)
    }

    pub fn from_terms<I, C>(nvars: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial of length {} in a ring with {} variables",
                    e.len(),
                    nvars
                )));
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, e: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "rings with {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[i32]) -> Self {
        assert_eq!(m.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitute `u_i -> u_i^{-1}` in every variable.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Keep the first `keep` variables and substitute integer values for the rest.
    /// Negative exponents on substituted variables require values of +-1.
    pub fn specialize_tail(&self, keep: usize, values: &[i64]) -> Result<Self> {
        if keep + values.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} kept + {} values for {} variables",
                keep,
                values.len(),
                self.nvars
            )));
        }
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for (x, &v) in e[keep..].iter().zip(values) {
                if *x < 0 {
                    if v.abs() != 1 {
                        return Err(Error::Unsupported(
                            "negative power of a non-unit value".into(),
                        ));
                    }
                    if (-x) % 2 == 1 && v < 0 {
                        k = -k;
                    }
                } else {
                    k *= BigInt::from(v).pow(*x as u32);
                }
            }
            out.add_term(e[..keep].to_vec(), k);
        }
        Ok(out)
    }

    /// Extend the ring with `extra` new variables (exponent 0).
    pub fn extend_vars(&self, extra: usize) -> Self {
        LaurentPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(self.nvars + extra, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum of exponents (the largest monomial dividing self).
    pub fn monomial_gcd(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |m, e| {
            m.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    /// Divide out the monomial gcd and the positive integer content.
    pub fn primitive_part(&self) -> Self {
        let Some(m) = self.monomial_gcd() else {
            return self.clone();
        };
        let g = self.content();
        let neg: Monomial = m.iter().map(|x| -x).collect();
        let shifted = self.mul_monomial(&neg);
        LaurentPoly {
            nvars: self.nvars,
            terms: shifted
                .terms
                .into_iter()
                .map(|(e, c)| (e, c / &g))
                .collect(),
        }
    }

    /// Lexicographically least exponent and its coefficient.
    pub fn lex_least(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Multiply by -1 if needed so that the lexicographically least term is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.lex_least() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// True if `self == other` or `self == -other`.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == -other
    }

    /// Total degree of each term, if all equal.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum::<i64>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        parse_poly(s, Some(nvars))
    }

    /// Parse without knowing the ring size in advance.
    pub fn parse_any(s: &str) -> Result<Self> {
        parse_poly(s, None)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            let body = format!("{}*u^[{}]", c.abs(), exps.join(","));
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

fn parse_poly(s: &str, nvars: Option<usize>) -> Result<LaurentPoly> {
    let s = s.replace('\u{2212}', "-");
    let s = s.trim();
    if s == "0" {
        return match nvars {
            Some(n) => Ok(LaurentPoly::zero(n)),
            None => Err(Error::Parse("cannot infer ring size of 0".into())),
        };
    }
    // split at top-level signs, brackets protect exponent lists
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut pending = false;
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 {
            if cur.trim().is_empty() {
                if pending {
                    return Err(Error::Parse(format!("doubled sign in {:?}", s)));
                }
            } else {
                pieces.push((neg, cur.trim().to_string()));
                cur.clear();
            }
            neg = ch == '-';
            pending = true;
            continue;
        }
        if !ch.is_whitespace() {
            pending = false;
        }
        cur.push(ch);
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("trailing sign in {:?}", s)));
    }
    pieces.push((neg, cur.trim().to_string()));

    let mut parsed: Vec<(Monomial, BigInt)> = Vec::new();
    let mut sparse: Vec<(Vec<(usize, i32)>, BigInt)> = Vec::new();
    for (neg, t) in pieces {
        let sign = |c: BigInt| if neg { -c } else { c };
        if let Some(pos) = t.find("u^") {
            let c = t[..pos].trim().trim_end_matches('*').trim();
            let c = if c.is_empty() {
                BigInt::one()
            } else {
                c.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient {:?}: {}", c, e)))?
            };
            let rest = t[pos + 2..].trim();
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("exponent list in {:?}", t)))?;
            let e: std::result::Result<Vec<i32>, _> =
                inner.split(',').map(|x| x.trim().parse::<i32>()).collect();
            parsed.push((
                e.map_err(|e| Error::Parse(format!("exponent in {:?}: {}", t, e)))?,
                sign(c),
            ));
        } else {
            // product of integers and factors u<k> or u<k>^<e>, k 1-based
            let mut coef = BigInt::one();
            let mut mono = Vec::new();
            for f in t.split('*').map(str::trim) {
                if let Some(v) = f.strip_prefix('u') {
                    let (k, e) = match v.split_once('^') {
                        Some((k, e)) => (k, e.trim().parse::<i32>()),
                        None => (v, Ok(1)),
                    };
                    let k: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("variable {:?}", f)))?;
                    let e = e.map_err(|_| Error::Parse(format!("exponent in {:?}", f)))?;
                    if k == 0 {
                        return Err(Error::Parse("variables are numbered from 1".into()));
                    }
                    mono.push((k - 1, e));
                } else {
                    coef *= f
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("term {:?}: {}", t, e)))?;
                }
            }
            sparse.push((mono, sign(coef)));
        }
    }
    let n = match nvars {
        Some(n) => n,
        None => parsed
            .iter()
            .map(|(e, _)| e.len())
            .chain(
                sparse
                    .iter()
                    .flat_map(|(m, _)| m.iter().map(|(k, _)| k + 1)),
            )
            .max()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse("cannot infer ring size".into()))?,
    };
    for (m, c) in sparse {
        let mut e = vec![0; n];
        for (k, x) in m {
            if k >= n {
                return Err(Error::DimensionMismatch(format!(
                    "u{} in a ring with {} variables",
                    k + 1,
                    n
                )));
            }
            e[k] += x;
        }
        parsed.push((e, c));
    }
    let mut p = LaurentPoly::zero(n);
    for (e, c) in parsed {
        let e = if e.is_empty() { vec![0; n] } else { e };
        if e.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "term with {} exponents in a ring with {} variables",
                e.len(),
                n
            )));
        }
        p.add_term(e, c);
    }
    Ok(p)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

pub fn poly_add(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.try_add(b)
}

pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.try_mul(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Degenerate("matrix without rows".into()));
        }
        let c = rows[0].len();
        let nvars = rows[0].first().map(|p| p.nvars()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged matrix".into()));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::DimensionMismatch(
                        "entries over different rings".into(),
                    ));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut LaurentPoly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let entries: Vec<LaurentPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map(|p| p.nvars()).unwrap_or(self.nvars);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        }
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols, self.nvars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(r, c) = self.get(row_perm[r], col_perm[c]).clone();
            }
        }
        out
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" | "))?;
        }
        Ok(())
    }
}

/// Determinant by row expansion, memoized on the set of used columns.
pub fn poly_det(m: &PolyMatrix) -> Result<LaurentPoly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare(format!("{}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    if n > 24 {
        return Err(Error::Unsupported(format!(
            "determinant of size {} too large",
            n
        )));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // memo[mask] = det of rows popcount(mask).. restricted to columns not in mask
    let mut memo: HashMap<u32, LaurentPoly> = HashMap::new();
    memo.insert(full, LaurentPoly::one(m.nvars));
    fn rec(m: &PolyMatrix, mask: u32, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let n = m.rows;
        let row = mask.count_ones() as usize;
        let mut acc = LaurentPoly::zero(m.nvars);
        let mut pos = 0usize;
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let a = m.get(row, c);
            if !a.is_zero() {
                let sub = rec(m, mask | (1 << c), memo);
                if !sub.is_zero() {
                    let t = a * &sub;
                    acc = if pos.is_multiple_of(2) {
                        &acc + &t
                    } else {
                        &acc - &t
                    };
                }
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    Ok(rec(m, 0, &mut memo))
}

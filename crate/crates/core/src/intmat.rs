//! Small dense integer matrices: Smith normal form, determinants, rank.

use num_integer::Integer;

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn matmul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn transpose(a: &IMat) -> IMat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Row vector times matrix.
pub fn vecmat(v: &[i64], a: &IMat) -> Vec<i64> {
    let m = a.first().map_or(0, |r| r.len());
    let mut out = vec![0i64; m];
    for (x, row) in v.iter().zip(a) {
        if *x != 0 {
            for j in 0..m {
                out[j] += x * row[j];
            }
        }
    }
    out
}

/// Exact determinant by fraction-free elimination.
pub fn det(a: &IMat) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

pub fn rank(a: &IMat) -> usize {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, x| g.gcd(x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Smith normal form: returns (u, d, v) with u*a*v = d diagonal, u and v unimodular,
/// and d[i][i] dividing d[i+1][i+1], all non-negative.
pub fn smith(a: &IMat) -> (IMat, IMat, IMat) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    fn row_op(m: &mut IMat, i: usize, j: usize, a: i64, b: i64, c: i64, e: i64) {
        // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + e*row_j)
        for k in 0..m[i].len() {
            let (x, y) = (m[i][k], m[j][k]);
            m[i][k] = a * x + b * y;
            m[j][k] = c * x + e * y;
        }
    }
    fn col_op(m: &mut IMat, i: usize, j: usize, a: i64, b: i64, c: i64, e: i64) {
        for row in m.iter_mut() {
            let (x, y) = (row[i], row[j]);
            row[i] = a * x + b * y;
            row[j] = c * x + e * y;
        }
    }

    let n = rows.min(cols);
    for t in 0..n {
        // pivot: smallest nonzero absolute value in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            // clear column t
            for i in t + 1..rows {
                if d[i][t] != 0 && d[i][t] % d[t][t] == 0 {
                    let q = d[i][t] / d[t][t];
                    row_op(&mut d, t, i, 1, 0, -q, 1);
                    row_op(&mut u, t, i, 1, 0, -q, 1);
                } else if d[i][t] != 0 {
                    let (g, x, y) = ext_gcd(d[t][t], d[i][t]);
                    let (p, q) = (d[t][t] / g, d[i][t] / g);
                    row_op(&mut d, t, i, x, y, -q, p);
                    row_op(&mut u, t, i, x, y, -q, p);
                }
            }
            // clear row t
            for j in t + 1..cols {
                if d[t][j] != 0 && d[t][j] % d[t][t] == 0 {
                    let q = d[t][j] / d[t][t];
                    col_op(&mut d, t, j, 1, 0, -q, 1);
                    col_op(&mut v, t, j, 1, 0, -q, 1);
                } else if d[t][j] != 0 {
                    let (g, x, y) = ext_gcd(d[t][t], d[t][j]);
                    let (p, q) = (d[t][t] / g, d[t][j] / g);
                    col_op(&mut d, t, j, x, y, -q, p);
                    col_op(&mut v, t, j, x, y, -q, p);
                    clean = false;
                }
            }
            if !clean && (t + 1..rows).any(|i| d[i][t] != 0) {
                continue;
            }
            // divisibility of the rest of the block
            let piv = d[t][t];
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| d[i][j] % piv != 0);
            match bad {
                Some((i, _)) => {
                    // add row i to row t and redo
                    row_op(&mut d, t, i, 1, 1, 0, 1);
                    row_op(&mut u, t, i, 1, 1, 0, 1);
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IMat, mut d: IMat, v: IMat) -> (IMat, IMat, IMat) {
    for i in 0..d.len().min(d.first().map_or(0, |r| r.len())) {
        if d[i][i] < 0 {
            d[i].iter_mut().for_each(|x| *x = -*x);
            u[i].iter_mut().for_each(|x| *x = -*x);
        }
    }
    (u, d, v)
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IMat) -> Option<IMat> {
    let n = a.len();
    let dt = det(a);
    if dt.abs() != 1 {
        return None;
    }
    // Gauss-Jordan over the integers works for unimodular input with care;
    // use the adjugate instead (sizes here are tiny).
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let cof = det(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = (cof * dt) as i64;
        }
    }
    Some(inv)
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_p2_lattice() {
        let b = vec![vec![2, -1, -1], vec![1, 1, -2]];
        let (u, d, v) = smith(&b);
        assert_eq!(matmul(&matmul(&u, &b), &v), d);
        assert_eq!((d[0][0], d[1][1]), (1, 3));
        assert_eq!(det(&u).abs(), 1);
        assert_eq!(det(&v).abs(), 1);
    }

    #[test]
    fn smith_random_small() {
        let cases = vec![
            vec![vec![0, 1, 1, -2], vec![-1, 0, 2, -1]],
            vec![vec![1, 1, -1, -1], vec![-1, 1, 1, -1]],
            vec![vec![4, 6, 0], vec![6, 4, 2], vec![2, 0, 8]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 1, 1, -1, -1], vec![-1, 0, 0, 2, -1]],
        ];
        for a in cases {
            let (u, d, v) = smith(&a);
            assert_eq!(matmul(&matmul(&u, &a), &v), d);
            let k = d.len().min(d[0].len());
            for i in 0..k {
                for j in 0..d[0].len() {
                    if i != j {
                        assert_eq!(d[i][j], 0);
                    }
                }
                if i + 1 < k && d[i + 1][i + 1] != 0 {
                    assert_eq!(d[i + 1][i + 1] % d[i][i], 0);
                }
            }
        }
    }

    #[test]
    fn det_and_inverse() {
        let a = vec![vec![2, 1, 0], vec![1, 1, 0], vec![5, 7, 1]];
        assert_eq!(det(&a), 1);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(3));
        assert_eq!(rank(&vec![vec![1, 1, -1, -1], vec![2, 2, -2, -2]]), 1);
    }
}

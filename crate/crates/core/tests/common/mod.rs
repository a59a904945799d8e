#![allow(dead_code)]

use gkz_dessins::dessin::{perm_from_cycles, DessinData, Perm};
use gkz_dessins::lattice::LatticeEmbedding;
use gkz_dessins::polyring::LaurentPoly;

pub const SEED: u64 = 7;
pub const CAP: usize = 100_000;

/// The ten lattices of the models figures, as (name, B).
pub fn models() -> Vec<(&'static str, LatticeEmbedding)> {
    let raw: [(&str, [&[i64]; 2]); 10] = [
        ("B1", [&[2, -1, -1], &[1, 1, -2]]),
        ("B2", [&[0, 1, 1, -2], &[-1, 0, 2, -1]]),
        ("B3", [&[1, 1, -1, -1], &[0, 0, 2, -2]]),
        ("B4", [&[1, 1, -1, -1], &[-1, 1, 1, -1]]),
        ("B5", [&[0, 1, 1, -1, -1], &[-1, 0, 0, 2, -1]]),
        ("B6", [&[-1, 0, 1, 1, -1], &[-1, -1, 0, 1, 1]]),
        ("B7", [&[0, 1, 1, 0, -1, -1], &[-1, 0, 1, 1, 0, -1]]),
        ("B8", [&[-1, -1, 0, 1, 1, 0], &[1, -1, -1, 0, 0, 1]]),
        ("B9", [&[0, 2, 0, 0, -1, -1], &[-1, -1, 1, 1, 0, 0]]),
        ("B10", [&[0, 0, 1, 1, 1, -3], &[-1, -1, 0, 0, 0, 2]]),
    ];
    raw.iter()
        .map(|(name, rows)| {
            (
                *name,
                LatticeEmbedding::new(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap(),
            )
        })
        .collect()
}

pub fn model(name: &str) -> LatticeEmbedding {
    models().into_iter().find(|(n, _)| *n == name).unwrap().1
}

pub fn poly(s: &str, n: usize) -> LaurentPoly {
    LaurentPoly::parse(s, n).unwrap()
}

/// p == q or p == -q.
pub fn equal_up_to_sign(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p == q || *p == -q
}

pub fn from_cycles(n: usize, c: &[&[usize]]) -> Perm {
    let v: Vec<Vec<usize>> = c
        .iter()
        .map(|x| x.iter().map(|y| y - 1).collect())
        .collect();
    perm_from_cycles(n, &v).unwrap()
}

/// The printed quadruple list of the B10 model.
pub fn b10_table() -> DessinData {
    DessinData::from_rows(
        6,
        &[6, 5, 1, 2, 4, 3, 1, 5, 3, 6, 4, 2, 5, 6, 1, 2, 3, 4],
        &[5, 6, 2, 1, 3, 4, 3, 1, 5, 2, 6, 4, 5, 6, 1, 2, 3, 4],
        &[2, 2, 3, 3, 4, 4, 1, 1, 1, 1, 1, 1, 5, 6, 5, 6, 5, 6],
        &[1, 1, 1, 1, 1, 1, 5, 5, 5, 6, 6, 6, 2, 2, 3, 3, 4, 4],
    )
    .unwrap()
}

pub fn b10_sigma0() -> Perm {
    from_cycles(
        18,
        &[
            &[3, 7, 15],
            &[4, 12, 16],
            &[6, 9, 17],
            &[5, 11, 18],
            &[2, 8, 13],
            &[1, 10, 14],
        ],
    )
}

pub fn b10_sigma1() -> Perm {
    from_cycles(
        18,
        &[
            &[4, 8, 15],
            &[3, 10, 16],
            &[5, 7, 17],
            &[6, 12, 18],
            &[1, 9, 13],
            &[2, 11, 14],
        ],
    )
}

pub const B10_W: &str = "X3*X7*X15 + X4*X12*X16 + X6*X9*X17 + X5*X11*X18 + X2*X8*X13 + X1*X10*X14 \
     - X4*X8*X15 - X3*X10*X16 - X5*X7*X17 - X6*X12*X18 - X1*X9*X13 - X2*X11*X14";

pub const B2_CRIT_DET: &str =
    "27*u^[0,0,3,3] + 4*u^[1,2,3,0] + 4*u^[2,1,0,3] - 18*u^[1,1,2,2] - u^[2,2,1,1]";

pub const B2_PRINCIPAL: &str =
    "27*u^[3,3,0,0] + 4*u^[2,1,0,3] + 4*u^[1,2,3,0] - u^[1,1,2,2] - 18*u^[2,2,1,1]";

pub const B8_CRIT_DET: &str =
    "4*u^[3,3,1,0,0,1] + 2*u^[1,1,1,2,2,1] + u^[1,3,2,1,1,0] + u^[3,1,0,1,1,2] \
     - u^[2,0,0,2,2,2] - u^[0,2,2,2,2,0] - 6*u^[2,2,1,1,1,1]";

pub const B8_SUPPORT: [[i32; 6]; 7] = [
    [3, 3, 1, 0, 0, 1],
    [2, 2, 1, 1, 1, 1],
    [1, 1, 1, 2, 2, 1],
    [2, 0, 0, 2, 2, 2],
    [3, 1, 0, 1, 1, 2],
    [0, 2, 2, 2, 2, 0],
    [1, 3, 2, 1, 1, 0],
];

pub const B8_FACTORS: [&str; 3] = [
    "u1*u2*u3^2*u4^2*u5^2*u6^2",
    "u4*u5 - u1*u2",
    "4*u3*u4*u5*u6 + u2^2*u3^2 - 2*u1*u2*u3*u6 + u1^2*u6^2",
];

pub const B8_TRANSFORMED: &str =
    "4*u^[1,1,3,4,4,3] + 2*u^[3,3,3,2,2,3] + u^[3,1,2,3,3,4] + u^[1,3,4,3,3,2] \
     - u^[2,4,4,2,2,2] - u^[4,2,2,2,2,4] - 6*u^[2,2,3,3,3,3]";

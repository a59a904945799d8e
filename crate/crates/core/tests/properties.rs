//! Property tests for the ring, determinants, lattice quotients and surface moves.

use itertools::Itertools;
use proptest::prelude::*;

use gkz_dessins::dessin::{compose, inverse, Perm};
use gkz_dessins::lattice::{
    factor_antisymmetric, plucker_form, validate_lattice, LatticeEmbedding,
};
use gkz_dessins::polyring::{poly_det, LaurentPoly, PolyMatrix};
use gkz_dessins::surface::{
    apply_elementary, check_cell_counts, elementary_sites, initial_surface, offset_from_seed,
    Quotient,
};

const NV: usize = 3;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(-2i32..=2, NV)), 0..5).prop_map(|ts| {
        ts.into_iter().fold(LaurentPoly::zero(NV), |acc, (c, e)| {
            &acc + &LaurentPoly::term(NV, c, e)
        })
    })
}

fn arb_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<LaurentPoly>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(
                prop_oneof![2 => Just(LaurentPoly::zero(NV)), 3 => arb_poly()],
                n,
            ),
            n,
        )
    })
}

fn leibniz(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    let mut acc = LaurentPoly::zero(NV);
    for p in (0..n).permutations(n) {
        let inversions = (0..n)
            .tuple_combinations()
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let t = (0..n).fold(LaurentPoly::one(NV), |t, r| &t * &m[r][p[r]]);
        acc = if inversions % 2 == 0 {
            &acc + &t
        } else {
            &acc - &t
        };
    }
    acc
}

/// Two rows with zero sum, so that (1, ..., 1) is orthogonal to L.
fn arb_b() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (3usize..=6).prop_flat_map(|n| {
        let row = prop::collection::vec(-3i64..=3, n - 1).prop_map(|mut v| {
            let s: i64 = v.iter().sum();
            v.push(-s);
            v
        });
        (row.clone(), row).prop_map(|(a, b)| vec![a, b])
    })
}

fn arb_lattice() -> impl Strategy<Value = LatticeEmbedding> {
    arb_b().prop_filter_map("not a valid lattice", |b| validate_lattice(&b).ok())
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(NV), a.clone());
    }

    #[test]
    fn display_parse_round_trip(a in arb_poly()) {
        let back = LaurentPoly::parse(&a.to_string(), NV).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn det_matches_leibniz(m in arb_matrix(4)) {
        let pm = PolyMatrix::from_rows(m.clone()).unwrap();
        prop_assert_eq!(poly_det(&pm).unwrap(), leibniz(&m));
    }

    #[test]
    fn det_is_multiplicative_on_rows(m in arb_matrix(3), k in arb_poly()) {
        // scaling one row scales the determinant
        let mut scaled = m.clone();
        scaled[0] = scaled[0].iter().map(|x| x * &k).collect();
        let d = poly_det(&PolyMatrix::from_rows(m).unwrap()).unwrap();
        let ds = poly_det(&PolyMatrix::from_rows(scaled).unwrap()).unwrap();
        prop_assert_eq!(ds, &d * &k);
    }

    #[test]
    fn quotient_is_a_group_hom(l in arb_lattice(), p in prop::collection::vec(-5i64..=5, 6), q in prop::collection::vec(-5i64..=5, 6)) {
        let n = l.n();
        let cc = l.coset_calculator();
        let (p, q) = (&p[..n], &q[..n]);
        let sum: Vec<i64> = p.iter().zip(q).map(|(a, b)| a + b).collect();
        prop_assert_eq!(cc.class(&sum), cc.add(&cc.class(p), &cc.class(q)));
        prop_assert!(cc.same(&cc.lift(&cc.class(p)), p));
        for r in l.rows() {
            prop_assert_eq!(cc.class(r), cc.class(&vec![0; n]));
            prop_assert!(l.contains(r));
        }
        let emb = l.embed((2, -3));
        prop_assert_eq!(l.coordinates(&emb), Some((2, -3)));
    }

    #[test]
    fn plucker_factors_back(l in arb_lattice()) {
        let c = plucker_form(&l);
        prop_assert!(c.check().is_ok());
        let d = c.gcd();
        let l2 = factor_antisymmetric(&c.c, None).unwrap();
        prop_assert_eq!(plucker_form(&l2).c, c.c);
        prop_assert_eq!(d, plucker_form(&l2).gcd());
    }

    #[test]
    fn moves_preserve_cell_counts(l in arb_lattice(), seed in 0u64..1000, picks in prop::collection::vec(0usize..64, 1..12)) {
        let q = Quotient::new(&l);
        let lam = offset_from_seed(&l, seed).unwrap();
        let mut s = initial_surface(&q, &lam).unwrap();
        check_cell_counts(&q, &s).unwrap();
        for k in picks {
            let sites = elementary_sites(&q, &s);
            if sites.is_empty() {
                break;
            }
            s = apply_elementary(&q, &s, &sites[k % sites.len()]).unwrap();
            check_cell_counts(&q, &s).unwrap();
            // the canonical form only forgets the translation
            prop_assert_eq!(s.canonical(&q).canonical_key(&q), s.canonical_key(&q));
        }
    }

    #[test]
    fn permutation_group(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
        let id: Perm = (0..7).collect();
        prop_assert_eq!(compose(&a, &inverse(&a)), id.clone());
        prop_assert_eq!(compose(&compose(&a, &b), &c), compose(&a, &compose(&b, &c)));
        prop_assert_eq!(inverse(&compose(&a, &b)), compose(&inverse(&b), &inverse(&a)));
    }
}

mod common;

use common::*;
use latfree::lattice::{extend_to_basis, hnf, IntMatrix};
use latfree::maximality::certify_maximal_lowdim;
use latfree::num::{QuadExt, Rational, Scalar};
use latfree::polyhedron::AffineSubspace;
use latfree::search::{enumerate_lattice_points, minkowski_find, parity_pair};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn quad() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, da, b, db)| {
        QuadExt::new(Rational::new(a.into(), da.into()), Rational::new(b.into(), db.into()), 2).unwrap()
    })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn floor_brackets_value(a in quad()) {
        let f = Scalar::from(a.floor());
        prop_assert!(f <= a);
        prop_assert!(a < &f + &Scalar::one());
    }

    #[test]
    fn sign_agrees_with_float(a in quad()) {
        let x = a.to_f64();
        if x.abs() > 1e-9 {
            prop_assert_eq!(a.is_positive(), x > 0.0);
        }
    }

    #[test]
    fn hnf_transform_is_unimodular(m in int_matrix(3, 3)) {
        let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        let m = IntMatrix::from_i64(&rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.forward.mul(&m).unwrap(), h.clone());
        prop_assert!(u.forward.determinant().abs().is_one());
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.nrows() {
            match (0..h.ncols()).find(|&c| !h.get(i, c).is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    prop_assert!(!seen_zero, "zero rows come last");
                    prop_assert!(last_pivot.is_none_or(|l| c > l));
                    let pivot = h.get(i, c);
                    prop_assert!(*pivot > BigInt::zero());
                    for above in 0..i {
                        let x = h.get(above, c);
                        prop_assert!(*x >= BigInt::zero() && x < pivot);
                    }
                    last_pivot = Some(c);
                }
            }
        }
    }

    #[test]
    fn extension_is_a_basis(v in prop::collection::vec(-9i64..=9, 3)) {
        let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
        prop_assume!(g != 0);
        let primitive: Vec<BigInt> = v.iter().map(|x| BigInt::from(x / g)).collect();
        let basis = extend_to_basis(std::slice::from_ref(&primitive), 3).unwrap();
        prop_assert_eq!(&basis.vectors()[0], &primitive);
        prop_assert!(basis.determinant().abs().is_one());
    }

    #[test]
    fn canonical_form_keeps_membership(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_polytope(&mut rng, 2, -3, 3, 2, 5);
        let c = p.canonicalize().unwrap();
        prop_assert!(c.len() <= p.len());
        for z in box_points(2, 4) {
            prop_assert_eq!(p.contains_int(&z), c.contains_int(&z));
            prop_assert_eq!(p.strictly_contains_int(&z), c.strictly_contains_int(&z));
        }
    }

    #[test]
    fn enumeration_matches_brute_force(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = rng(seed);
        let p = random_polytope(&mut rng, d, -3, 3, 3, d + 2);
        let mut fast = enumerate_lattice_points(&p).unwrap();
        fast.sort();
        prop_assert_eq!(fast, brute_force_points(&p, 3));
    }

    #[test]
    fn minkowski_point_is_valid(seed in any::<u64>(), d in 1usize..=2, t in 1i64..=2) {
        let mut rng = rng(seed);
        let p = random_symmetric(&mut rng, d, 3, 1);
        let need = (0..d).fold(s(1), |acc, _| &acc * &s(2 * t));
        let rows = p.inequalities().iter().map(|q| latfree::polyhedron::Inequality::new(q.normal.clone(), &q.rhs * &s(t))).collect();
        let scaled = latfree::polyhedron::Polyhedron::new(d, rows).unwrap();
        prop_assume!(scaled.volume().unwrap() >= need);
        let z = minkowski_find(&scaled, t as u64).unwrap();
        prop_assert!(z.iter().any(|x| !x.is_zero()));
        prop_assert!(z.iter().all(|x| x.is_multiple_of(&BigInt::from(t))));
        prop_assert!(scaled.contains_int(&z));
    }

    #[test]
    fn parity_pair_is_first_match(w in prop::collection::vec(prop::collection::vec(-30i64..=30, 3), 9)) {
        let w: Vec<Vec<BigInt>> = w.iter().map(|v| ints(v)).collect();
        let pair = parity_pair(&w).unwrap();
        let same = |i: usize, j: usize| w[i].iter().zip(&w[j]).all(|(a, b)| (a - b).is_even());
        prop_assert!(pair.i < pair.j && same(pair.i, pair.j));
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if same(i, j) {
                    prop_assert!((pair.i, pair.j) <= (i, j));
                }
            }
        }
    }

    #[test]
    fn hyperplane_verdict_ignores_translation(x in -50i64..=50, y in -50i64..=50, den in 1i64..=9) {
        let r2 = QuadExt::sqrt_of(2).unwrap();
        let point = vec![frac(x, den), frac(y, den)];
        let irrational = AffineSubspace::new(point.clone(), vec![vec![-&r2, s(1)]]).unwrap();
        let rational = AffineSubspace::new(point, vec![vec![s(2), s(-1)]]).unwrap();
        prop_assert!(certify_maximal_lowdim(&irrational).unwrap().is_maximal());
        prop_assert!(!certify_maximal_lowdim(&rational).unwrap().is_maximal());
    }
}

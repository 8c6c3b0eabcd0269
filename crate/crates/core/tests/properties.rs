use frobpi::center::{apply_sign, sign_automorphism};
use frobpi::exactfield::{Field, PrimeField, Rationals};
use frobpi::exactlinalg::{kernel, rank, rref, rref_with, RrefOptions, SparseMat};
use frobpi::frobalg::{catalog, reduce_pair};
use frobpi::preproj::{GradedAlgebra, PiElement};
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn dense_q(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    // mostly zeros so that ranks vary
    let entry = prop_oneof![3 => Just(BigRational::from_integer(0.into())), 2 => rat()];
    prop::collection::vec(prop::collection::vec(entry, cols), rows)
}

fn dense_fp(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(prop_oneof![2 => Just(0u32), 1 => 1u32..7], cols), rows)
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        let f = Rationals;
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn prime_field_axioms(a in 0u32..2_147_483_647, b in 0u32..2_147_483_647, c in 0u32..2_147_483_647) {
        let f = PrimeField::new(2_147_483_647).unwrap();
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rank_nullity_q(m in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| dense_q(r, c))) {
        let a = SparseMat::from_dense(Rationals, &m);
        let k = kernel(&a);
        prop_assert_eq!(rank(&a) + k.dim(), a.ncols());
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        for v in k.rows() {
            prop_assert!(a.mul_vec(v).unwrap().is_empty());
        }
    }

    #[test]
    fn rank_nullity_fp(m in (1usize..8, 1usize..8).prop_flat_map(|(r, c)| dense_fp(r, c))) {
        let a = SparseMat::from_dense(PrimeField::new(7).unwrap(), &m);
        let k = kernel(&a);
        prop_assert_eq!(rank(&a) + k.dim(), a.ncols());
        for v in k.rows() {
            prop_assert!(a.mul_vec(v).unwrap().is_empty());
        }
    }

    #[test]
    fn rref_is_canonical(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| dense_q(r, c)), shift in 0usize..6) {
        let a = SparseMat::from_dense(Rationals, &m);
        let (r, s) = rref(&a);
        // idempotent
        let (r2, s2) = rref(&s.to_matrix());
        prop_assert_eq!(r, r2);
        prop_assert_eq!(&s, &s2);
        // independent of row order
        let mut rows = m.clone();
        let len = rows.len();
        rows.rotate_left(shift % len);
        prop_assert_eq!(&rref(&SparseMat::from_dense(Rationals, &rows)).1, &s);
        // both elimination strategies agree
        let ff = rref_with(&a, &RrefOptions { fraction_free_threshold: 0 }).1;
        prop_assert_eq!(&ff, &s);
    }
}

fn bikwad_f5() -> &'static GradedAlgebra<PrimeField> {
    static G: OnceLock<GradedAlgebra<PrimeField>> = OnceLock::new();
    G.get_or_init(|| {
        let p = reduce_pair(&catalog(&Rationals, "bikwad").unwrap().into_pair("bikwad").unwrap(), 5).unwrap();
        GradedAlgebra::build(&p, 7)
    })
}

fn t3_q() -> &'static GradedAlgebra<Rationals> {
    static G: OnceLock<GradedAlgebra<Rationals>> = OnceLock::new();
    G.get_or_init(|| GradedAlgebra::build(&catalog(&Rationals, "t3-plus-k").unwrap().into_pair("t3-plus-k").unwrap(), 6))
}

fn element_f5(g: &GradedAlgebra<PrimeField>, d: usize, coeffs: &[u32]) -> PiElement<PrimeField> {
    let dim = g.dim(d).unwrap();
    let v = coeffs.iter().take(dim).enumerate().filter(|(_, c)| **c % 5 != 0).map(|(i, c)| (i, *c % 5)).collect();
    g.element(d, v).unwrap()
}

fn element_q(g: &GradedAlgebra<Rationals>, d: usize, coeffs: &[i64]) -> PiElement<Rationals> {
    let dim = g.dim(d).unwrap();
    let v = coeffs.iter().take(dim).enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, BigRational::from_integer((*c).into()))).collect();
    g.element(d, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative_f5(
        (d1, d2, d3) in (0usize..3, 0usize..3, 0usize..3),
        c in prop::collection::vec(0u32..5, 3 * 40),
    ) {
        let g = bikwad_f5();
        let x = element_f5(g, d1, &c[..40]);
        let y = element_f5(g, d2, &c[40..80]);
        let z = element_f5(g, d3, &c[80..]);
        let left = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_associative_q(
        (d1, d2, d3) in (0usize..3, 0usize..3, 0usize..3),
        c in prop::collection::vec(-3i64..=3, 3 * 40),
    ) {
        let g = t3_q();
        let x = element_q(g, d1, &c[..40]);
        let y = element_q(g, d2, &c[40..80]);
        let z = element_q(g, d3, &c[80..]);
        let left = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sign_automorphism_is_multiplicative(
        (d1, d2) in (0usize..4, 0usize..4),
        c in prop::collection::vec(0u32..5, 2 * 40),
        letter in prop_oneof![Just("s"), Just("t")],
    ) {
        let g = bikwad_f5();
        let neg = sign_automorphism(g, letter).unwrap();
        let x = element_f5(g, d1, &c[..40]);
        let y = element_f5(g, d2, &c[40..]);
        let lhs = apply_sign(g, &neg, &g.multiply(&x, &y).unwrap()).unwrap();
        let rhs = g.multiply(&apply_sign(g, &neg, &x).unwrap(), &apply_sign(g, &neg, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn format_parse_round_trip(d in 0usize..5, c in prop::collection::vec(-3i64..=3, 40)) {
        let g = t3_q();
        let x = element_q(g, d, &c);
        let text = g.format_element(&x);
        if x.is_zero() {
            prop_assert_eq!(text, "0");
        } else {
            prop_assert_eq!(g.parse_element(&text).unwrap(), x);
        }
    }
}

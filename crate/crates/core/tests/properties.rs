mod common;

use std::sync::Arc;

use pencil_core::algebra::classify_relation;
use pencil_core::findim::frobenius_check;
use pencil_core::freealg::{dehomogenize, homogenize};
use pencil_core::io::{golden_text, Construction};
use pencil_core::{classify_frob4, Alphabet, Field, FreePoly, GeneratorMap, Matrix, PresentedAlgebra, SCAlgebra};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn xy() -> Arc<Alphabet> {
    Alphabet::uniform(&["x", "y"])
}

fn quadratic_form(rng: &mut ChaCha8Rng, alph: &Arc<Alphabet>, field: Field) -> FreePoly {
    loop {
        let terms = alph.words_of_weight(2).into_iter().map(|w| (w, common::scalar(rng, field)));
        let h = FreePoly::from_terms(alph, field, terms);
        if !h.is_zero() {
            return h;
        }
    }
}

/// Dimensions of `(k<x,y>/(rels))_d` from the rank of all `u r v` in degree `d`.
fn brute_hilbert(rels: &[FreePoly], field: Field, top: u32) -> Vec<u64> {
    let alph = xy();
    (0..=top)
        .map(|d| {
            let basis = alph.words_of_weight(d);
            let mut rows = Vec::new();
            for r in rels {
                let k = r.degree().unwrap();
                if k > d {
                    continue;
                }
                for i in 0..=(d - k) {
                    for u in alph.words_of_weight(i) {
                        for v in alph.words_of_weight(d - k - i) {
                            rows.push(r.sandwich(&u, &v).coords(&basis).unwrap());
                        }
                    }
                }
            }
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(field, basis.len(), rows).rank() };
            (basis.len() - rank) as u64
        })
        .collect()
}

fn table4_algebras() -> Vec<SCAlgebra> {
    let t: serde_json::Value = serde_json::from_str(golden_text(4).unwrap()).unwrap();
    t["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| serde_json::from_value::<Construction>(r["construction"].clone()).unwrap().build(12).unwrap())
        .collect()
}

fn small_algebras() -> Vec<(SCAlgebra, bool)> {
    let q = Field::Rationals;
    let comm = |names: &[&str], rels: &[&str]| {
        let a = PresentedAlgebra::commutative_strs(&Alphabet::uniform(names), q, rels, 8).unwrap();
        SCAlgebra::from_quotient(&a).unwrap()
    };
    vec![
        (comm(&["x"], &["x"]), true),
        (comm(&["x"], &["x^2"]), true),
        (comm(&["x"], &["x^3"]), true),
        (comm(&["x", "y"], &["x^2", "x*y", "y^2"]), false),
        (SCAlgebra::quiver_algebra(q, 2, &[("a", 0, 1)], &[]).unwrap(), false),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>(), which in 0usize..4) {
        let field = common::fields()[which];
        let mut rng = common::rng(seed);
        let (a, b, c) = (common::scalar(&mut rng, field), common::scalar(&mut rng, field), common::scalar(&mut rng, field));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), field.one());
        }
    }

    #[test]
    fn single_relation_bases_satisfy_diamond(seed in any::<u64>(), which in 0usize..4) {
        let field = common::fields()[which];
        let mut rng = common::rng(seed);
        let h = quadratic_form(&mut rng, &xy(), field);
        let a = PresentedAlgebra::new(&xy(), field, vec![h], 8).unwrap();
        prop_assert!(a.gb().diamond_check(8));
    }

    #[test]
    fn reduce_is_idempotent_and_linear(seed in any::<u64>(), which in 0usize..3) {
        let q = Field::Rationals;
        let rels: [&[&str]; 3] = [&["x*y - y*x + y^2"], &["x*y - 2*y*x", "x^2"], &["x^2 - y^2", "x*y + y*x"]];
        let a = PresentedAlgebra::from_strs(&xy(), q, rels[which], 12).unwrap();
        let mut rng = common::rng(seed);
        let p = common::poly(&mut rng, &xy(), q, 5, 6);
        let r = common::poly(&mut rng, &xy(), q, 5, 6);
        let c = common::scalar(&mut rng, q);
        let rp = a.reduce(&p).unwrap();
        prop_assert_eq!(a.reduce(&rp).unwrap(), rp.clone());
        prop_assert_eq!(a.reduce(&p.add(&r.scale(&c))).unwrap(), rp.add(&a.reduce(&r).unwrap().scale(&c)));
    }

    #[test]
    fn homogenization_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let field = common::fields()[which];
        let mut rng = common::rng(seed);
        let f = common::nonzero_poly(&mut rng, &xy(), field, 4, 6);
        let h = homogenize(&f, "z").unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(dehomogenize(&h, "z").unwrap(), f);
    }

    #[test]
    fn relation_class_is_congruence_invariant(seed in any::<u64>(), which in 0usize..3) {
        let field = common::fields()[which];
        let mut rng = common::rng(seed);
        let h = quadratic_form(&mut rng, &xy(), field);
        let p = common::invertible(&mut rng, field, 2);
        let moved = GeneratorMap::from_matrix(&xy(), &p).unwrap().substitute(&h).unwrap();
        let scaled = moved.scale(&common::nonzero_scalar(&mut rng, field));
        prop_assert_eq!(classify_relation(&h).unwrap().tag(), classify_relation(&scaled).unwrap().tag());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frobenius_label_survives_basis_change(seed in any::<u64>(), which in 0usize..10) {
        let alg = &table4_algebras()[which];
        let mut rng = common::rng(seed);
        let p = common::invertible(&mut rng, alg.field(), 4);
        let moved = alg.change_basis(&p).unwrap();
        prop_assert_eq!(classify_frob4(alg).unwrap().tag(), classify_frob4(&moved).unwrap().tag());
    }

    #[test]
    fn hilbert_matches_brute_force(seed in any::<u64>(), count in 1usize..3, prime in prop::bool::ANY) {
        let field = if prime { Field::prime(7).unwrap() } else { Field::Rationals };
        // rational row reduction grows fast past degree 6
        let top = if prime { 7 } else { 6 };
        let mut rng = common::rng(seed);
        let rels: Vec<FreePoly> = (0..count).map(|_| quadratic_form(&mut rng, &xy(), field)).collect();
        let a = PresentedAlgebra::new(&xy(), field, rels.clone(), 8).unwrap();
        prop_assert_eq!(a.hilbert(top).unwrap().coeffs, brute_hilbert(&rels, field, top));
    }

    #[test]
    fn product_is_frobenius_iff_factors_are(i in 0usize..5, j in 0usize..5, seed in any::<u64>()) {
        let algs = small_algebras();
        let (a, fa) = &algs[i];
        let (b, fb) = &algs[j];
        prop_assume!(a.dim() + b.dim() <= 5);
        let prod = a.product(b).unwrap();
        let mut rng = common::rng(seed);
        let p = common::invertible(&mut rng, Field::Rationals, prod.dim());
        let prod = prod.change_basis(&p).unwrap();
        prop_assert_eq!(frobenius_check(&prod).unwrap().is_frobenius(), *fa && *fb);
    }
}

#[test]
fn brute_force_oracle_on_known_series() {
    let q = Field::Rationals;
    let x2 = FreePoly::parse("x^2", &xy(), q).unwrap();
    // Fibonacci numbers for k<x,y>/(x^2)
    assert_eq!(brute_hilbert(&[x2], q, 7), vec![1, 2, 3, 5, 8, 13, 21, 34]);
    let comm = FreePoly::parse("x*y - y*x", &xy(), q).unwrap();
    assert_eq!(brute_hilbert(&[comm], q, 5), vec![1, 2, 3, 4, 5, 6]);
}

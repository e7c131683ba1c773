#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use pencil_core::{Alphabet, Field, FreePoly, Matrix, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Rationals => field.from_rational(&small_rational(rng)).unwrap(),
        Field::Quadratic(_) => Scalar::from_quadratic_parts(field, small_rational(rng), small_rational(rng)).unwrap(),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Up to `terms` monomials of weight at most `max_deg`.
pub fn poly(rng: &mut ChaCha8Rng, alph: &Arc<Alphabet>, field: Field, max_deg: u32, terms: usize) -> FreePoly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let words = alph.words_of_weight(d);
        let w = words[rng.gen_range(0..words.len())].clone();
        out.push((w, scalar(rng, field)));
    }
    FreePoly::from_terms(alph, field, out)
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, alph: &Arc<Alphabet>, field: Field, max_deg: u32, terms: usize) -> FreePoly {
    loop {
        let p = poly(rng, alph, field, max_deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| scalar(rng, field)).collect()).collect();
        let m = Matrix::from_rows(field, n, rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn fields() -> [Field; 4] {
    [Field::Rationals, Field::quadratic(2).unwrap(), Field::quadratic(-3).unwrap(), Field::prime(7).unwrap()]
}

//! Homogenization of commutative presentations, regular linear forms, and
//! dehomogenization at a linear form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraError, PresentedAlgebra};
use crate::freealg::{homogenize_into, FreePoly, GeneratorMap};
use crate::series::RatFunc;
use crate::upoly::UPoly;

/// Preferred name for the homogenizing variable; later candidates are used on collision.
pub const HOMOGENIZING_LETTER: &str = "z";
const FALLBACK_LETTERS: [&str; 4] = ["w", "t", "h", "z0"];

/// The graded commutative algebra `k[X, z]/(f^z : f in F)`.
///
/// When `k[X]/(F)` has a complete basis, homogenized basis elements that do
/// not already lie in `(F^z)` are appended, so the result is the Rees algebra
/// of the degree filtration.
pub fn homogenized_algebra(fs: &[FreePoly], bound: u32) -> Result<PresentedAlgebra, AlgebraError> {
    let first = fs.first().ok_or(AlgebraError::ZeroInput)?;
    if fs.iter().any(FreePoly::is_zero) {
        return Err(AlgebraError::ZeroInput);
    }
    let alph = first.alphabet();
    let field = first.field();
    let e = PresentedAlgebra::commutative(alph, field, fs.to_vec(), bound)?;
    let name = std::iter::once(HOMOGENIZING_LETTER)
        .chain(FALLBACK_LETTERS)
        .find(|n| alph.index(n).is_none())
        .ok_or_else(|| AlgebraError::Invalid("no free name for the homogenizing letter".into()))?;
    let alph_z = alph.with_letter(name, 1)?;
    // commutators are added by the commutative presentation anyway
    let comm = super::commutators(alph, field);
    let mut rels = fs
        .iter()
        .filter(|f| !comm.iter().any(|c| c == *f || c.neg() == **f))
        .map(|f| homogenize_into(f, &alph_z))
        .collect::<Result<Vec<_>, _>>()?;
    let mut b = PresentedAlgebra::commutative(&alph_z, field, rels.clone(), bound)?;
    if e.gb().is_complete() {
        for g in e.gb().generators() {
            let gz = homogenize_into(g, &alph_z)?;
            if !b.is_zero(&gz)? {
                rels.push(gz);
                b = PresentedAlgebra::commutative(&alph_z, field, rels.clone(), bound)?;
            }
        }
    }
    Ok(b)
}

#[derive(Debug, Clone)]
pub struct RegularLinear {
    pub element: FreePoly,
    pub hilbert: RatFunc,
    pub quotient_hilbert: RatFunc,
    /// Candidates examined, including the accepted one.
    pub tried: usize,
}

/// Candidate coefficient vectors: unit vectors, then small combinations.
fn small_combos(n: usize) -> Vec<Vec<i64>> {
    let vals = [0i64, 1, -1, 2, -2];
    let mut out: Vec<Vec<i64>> = (0..n).rev().map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let total = 5usize.pow(n as u32);
    for mut k in 0..total {
        let mut v = vec![0i64; n];
        for slot in v.iter_mut() {
            *slot = vals[k % 5];
            k /= 5;
        }
        if v.iter().all(|&c| c == 0) || out.contains(&v) {
            continue;
        }
        out.push(v);
    }
    out
}

/// Finds a linear form `z` with `H_{B/(z)} = (1 - t) H_B`, which for a
/// commutative graded algebra certifies that `z` is regular.
///
/// Tries generators from the last listed (the homogenizing letter) to the
/// first, then combinations with coefficients in `{0, ±1, ±2}`,
/// then 64 seeded random forms.
pub fn find_regular_linear(b: &PresentedAlgebra, seed: u64) -> Result<RegularLinear, AlgebraError> {
    if !b.is_graded() || !b.alphabet().all_weight_one() {
        return Err(AlgebraError::Precondition("expected a graded algebra on weight-one letters".into()));
    }
    if !b.is_commutative()? {
        return Err(AlgebraError::Precondition("expected a commutative algebra".into()));
    }
    let hb = b.hilbert_rational()?;
    let target = hb.mul(&RatFunc::poly(UPoly::from_i64(crate::field::Field::Rationals, &[1, -1])));
    let n = b.alphabet().len();
    let f = b.field();
    let mut candidates = small_combos(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        candidates.push((0..n).map(|_| rng.gen_range(-10..=10)).collect());
    }
    for (tried, v) in candidates.iter().enumerate() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let terms = v.iter().enumerate().map(|(i, &c)| (b.alphabet().word(vec![i as u8]), f.from_i64(c)));
        let z = FreePoly::from_terms(b.alphabet(), f, terms);
        let quot = b.quotient(std::slice::from_ref(&z))?;
        let Ok(hq) = quot.hilbert_rational() else { continue };
        if hq == target {
            return Ok(RegularLinear { element: z, hilbert: hb, quotient_hilbert: hq, tried: tried + 1 });
        }
    }
    Err(AlgebraError::Exhausted(format!("no regular linear form among {} candidates", candidates.len())))
}

/// `B/(z - 1)` for a linear form `z`, presented on the letters other than the
/// last one occurring in `z`.
pub fn dehomogenized_algebra(b: &PresentedAlgebra, z: &FreePoly) -> Result<PresentedAlgebra, AlgebraError> {
    let alph = b.alphabet();
    let z = z.rebind(alph)?;
    if z.is_zero() || !z.is_homogeneous() || z.degree()? != 1 {
        return Err(AlgebraError::Invalid("expected a nonzero linear form".into()));
    }
    let coeff = |i: usize| z.coeff(&alph.word(vec![i as u8]));
    let k = (0..alph.len()).rev().find(|&i| !coeff(i).is_zero()).expect("nonzero form");
    let target = alph.without(k)?;
    let f = b.field();
    let lk_inv = coeff(k).inv().expect("nonzero");
    let letter = |i: usize| FreePoly::letter(&target, f, if i < k { i } else { i - 1 });
    let mut xk = FreePoly::one(&target, f);
    for i in (0..alph.len()).filter(|&i| i != k) {
        xk = xk.sub(&letter(i).scale(&coeff(i)));
    }
    let xk = xk.scale(&lk_inv);
    let images: Vec<FreePoly> = (0..alph.len()).map(|i| if i == k { xk.clone() } else { letter(i) }).collect();
    let map = GeneratorMap::new(alph, images)?;
    let rels: Vec<FreePoly> = b
        .relations()
        .iter()
        .map(|r| map.substitute(r))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect();
    let comm = super::commutators(&target, f);
    let rels = rels.into_iter().filter(|r| !comm.iter().any(|c| c == r || c.neg() == *r)).collect();
    PresentedAlgebra::commutative(&target, f, rels, b.bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::freealg::Alphabet;
    use crate::grobner::DEFAULT_DEGREE_BOUND;

    fn xyz(rels: &[&str]) -> PresentedAlgebra {
        PresentedAlgebra::commutative_strs(&Alphabet::uniform(&["x", "y", "z"]), Field::Rationals, rels, DEFAULT_DEGREE_BOUND)
            .unwrap()
    }

    #[test]
    fn regular_forms() {
        let r = find_regular_linear(&xyz(&["x^2", "y^2"]), 0).unwrap();
        assert_eq!(r.element.to_string(), "z");
        assert_eq!(r.hilbert, RatFunc::parse("(1+t)^2/(1-t)").unwrap());
        assert_eq!(r.quotient_hilbert, RatFunc::parse("(1+t)^2").unwrap());
        assert_eq!(find_regular_linear(&xyz(&["x^2", "z^2"]), 0).unwrap().element.to_string(), "y");
        let b = xyz(&["x^2 - z^2", "y^2 - z^2"]);
        assert_eq!(b.hilbert_rational().unwrap(), RatFunc::parse("(1-t^2)^2/(1-t)^3").unwrap());
        assert_eq!(find_regular_linear(&b, 0).unwrap().element.to_string(), "z");
    }

    #[test]
    fn homogenize_then_dehomogenize() {
        let q = Field::Rationals;
        let e = PresentedAlgebra::commutative_strs(&Alphabet::uniform(&["x", "y"]), q, &["x^2 - 1", "y^2 - 1"], 12)
            .unwrap();
        let fs: Vec<FreePoly> = ["x^2 - 1", "y^2 - 1"].iter().map(|s| e.parse(s).unwrap()).collect();
        let b = homogenized_algebra(&fs, 12).unwrap();
        assert_eq!(b.relations().len(), 5);
        assert_eq!(b.alphabet().name(2), "z");
        assert_eq!(b.hilbert_rational().unwrap(), RatFunc::parse("(1+t)^2/(1-t)").unwrap());
        let z = b.parse("z").unwrap();
        let back = dehomogenized_algebra(&b, &z).unwrap();
        assert_eq!(back.dimension(), Some(4));
        assert_eq!(back.gb().generators(), e.gb().generators());
    }
}

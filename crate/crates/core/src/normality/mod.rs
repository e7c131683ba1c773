//! Normal elements, normalizing automorphisms and regularity certificates.
//!
//! `f` is normal in `A` when `x_i f = f ν(x_i)` for every generator, with `ν`
//! an automorphism of `A`.

mod search;
mod srns;
mod st;

use std::fmt;

pub use search::{exhaustive_normal_search, SearchHit};
pub use srns::{regular_check_filtered, srns_check, SequenceCertificate, Stage};
pub use st::{st_obstruction, st_transform, st_witness_verify, Obstruction, StStep, WitnessReport};

use crate::algebra::{AlgebraError, PresentedAlgebra};
use crate::freealg::{FreePoly, GeneratorMap, Word};
use crate::linalg::Matrix;
use crate::series::RatFunc;
use crate::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Comparison of `H_{A/(f)}` with `(1 - t^d) H_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertEvidence {
    /// Exact rational identity (both bases complete) rather than a truncated one.
    pub exact: bool,
    pub holds: bool,
    pub ambient: String,
    pub quotient: String,
    /// Last degree compared in the truncated case.
    pub checked_to: u32,
}

/// Checks the Hilbert-series criterion for a homogeneous normal element of degree `d`.
pub fn hilbert_identity(a: &PresentedAlgebra, quotient: &PresentedAlgebra, d: u32) -> Result<HilbertEvidence, AlgebraError> {
    if let (Ok(ha), Ok(hq)) = (a.hilbert_rational(), quotient.hilbert_rational()) {
        let q = crate::field::Field::Rationals;
        let mut factor = vec![0i64; d as usize + 1];
        factor[0] = 1;
        factor[d as usize] -= 1;
        let expect = ha.mul(&RatFunc::poly(UPoly::from_i64(q, &factor)));
        return Ok(HilbertEvidence {
            exact: true,
            holds: expect == hq,
            ambient: ha.to_string(),
            quotient: hq.to_string(),
            checked_to: u32::MAX,
        });
    }
    let top = a.bound().min(quotient.bound());
    let ca = a.hilbert(top)?.coeffs;
    let cq = quotient.hilbert(top)?.coeffs;
    let holds = (0..=top as usize).all(|k| {
        let lower = if k >= d as usize { ca[k - d as usize] } else { 0 };
        cq[k] as i128 == ca[k] as i128 - lower as i128
    });
    let show = |c: &[u64]| c.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    Ok(HilbertEvidence { exact: false, holds, ambient: show(&ca), quotient: show(&cq), checked_to: top })
}

/// Evidence that an element is normal.
#[derive(Debug, Clone)]
pub struct NormalityCertificate {
    /// Normal form of the element in the ambient algebra.
    pub element: FreePoly,
    pub nu: GeneratorMap,
    /// `x_i f - f ν(x_i)` reduced, one per generator; all zero.
    pub residues: Vec<FreePoly>,
    /// Every defining relation is sent into the ideal by `ν`.
    pub relations_preserved: bool,
    /// Regularity of the top part in the associated graded algebra.
    pub top_regularity: HilbertEvidence,
}

impl NormalityCertificate {
    /// Whether `ν` is the identity on the quotient.
    pub fn is_central(&self, a: &PresentedAlgebra) -> Result<bool, AlgebraError> {
        for (i, img) in self.nu.images().iter().enumerate() {
            if !a.is_zero(&img.sub(&a.letter(i)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Matrix of the weight-preserving linear part of `ν` (row `i` is `ν(x_i)`).
    pub fn linear_matrix(&self) -> Matrix {
        let alph = self.nu.source();
        let n = alph.len();
        let f = self.element.field();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if alph.weight(i) == alph.weight(j) {
                            self.nu.image(i).coeff(&alph.word(vec![j as u8]))
                        } else {
                            f.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(f, n, rows)
    }
}

#[derive(Debug, Clone)]
pub enum NormalOutcome {
    Normal(NormalityCertificate),
    /// No cofactor exists for this generator.
    NotNormal { generator: String },
    Inconclusive(String),
}

impl NormalOutcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            NormalOutcome::Normal(_) => Verdict::Pass,
            NormalOutcome::NotNormal { .. } => Verdict::Fail,
            NormalOutcome::Inconclusive(_) => Verdict::Inconclusive,
        }
    }

    pub fn certificate(&self) -> Option<&NormalityCertificate> {
        match self {
            NormalOutcome::Normal(c) => Some(c),
            _ => None,
        }
    }
}

/// Solves `x_i f = f u_i` for every generator with `u_i` supported on normal
/// words of weight exactly `w_i` (or at most `w_i`). `Err(i)` names the first
/// generator without a solution.
fn solve_cofactors(a: &PresentedAlgebra, f: &FreePoly, exact_weight: bool) -> Result<Result<Vec<FreePoly>, usize>, AlgebraError> {
    let alph = a.alphabet();
    let field = a.field();
    let mut out = Vec::new();
    for i in 0..alph.len() {
        let w = alph.weight(i);
        let basis: Vec<Word> = if exact_weight { a.normal_words(w)? } else { a.normal_words_upto(w)? };
        let target = a.mul(&a.letter(i), f)?;
        let cols = basis
            .iter()
            .map(|u| a.mul(f, &FreePoly::word(alph, field, u.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut index: Vec<Word> = target.terms().keys().cloned().collect();
        for c in &cols {
            index.extend(c.terms().keys().cloned());
        }
        index.sort();
        index.dedup();
        let m = Matrix::from_rows(
            field,
            cols.len(),
            index.iter().map(|wd| cols.iter().map(|c| c.coeff(wd)).collect()).collect(),
        );
        let rhs: Vec<_> = index.iter().map(|wd| target.coeff(wd)).collect();
        let sol = if cols.is_empty() {
            rhs.iter().all(|c| c.is_zero()).then(Vec::new)
        } else {
            m.solve(&rhs)
        };
        match sol {
            Some(v) => out.push(FreePoly::from_coords(alph, field, &basis, &v)),
            None => return Ok(Err(i)),
        }
    }
    Ok(Ok(out))
}

/// Decides normality of `f` in `a`.
///
/// For homogeneous `f` in a graded algebra the cofactor search over the
/// generator's own weight is complete, so a missing cofactor is a refusal.
/// Otherwise the top part must first be certified regular and normal in the
/// associated graded algebra, which bounds the cofactor degree; if that fails
/// the outcome is inconclusive.
pub fn normal_check(a: &PresentedAlgebra, f: &FreePoly) -> Result<NormalOutcome, AlgebraError> {
    let fr = a.reduce(&f.rebind(a.alphabet())?)?;
    if fr.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if fr.is_constant() {
        return Err(AlgebraError::Invalid("units are excluded".into()));
    }
    let d = fr.degree()?;
    let homogeneous = a.is_graded() && fr.is_homogeneous();
    let gr = a.associated_graded()?;
    let top = gr.reduce(&fr.top_part()?)?;
    let top_quot = gr.quotient(std::slice::from_ref(&top))?;
    if homogeneous {
        let cof = match solve_cofactors(a, &fr, true)? {
            Ok(c) => c,
            Err(i) => return Ok(NormalOutcome::NotNormal { generator: a.alphabet().name(i).to_string() }),
        };
        let ev = hilbert_identity(a, &top_quot, d)?;
        if !ev.holds {
            return Ok(NormalOutcome::Inconclusive("normal but not regular; the automorphism is not determined".into()));
        }
        return finish(a, fr, cof, ev);
    }
    match solve_cofactors(&gr, &top, true)? {
        Ok(_) => {}
        Err(_) => return Ok(NormalOutcome::Inconclusive("top part is not normal in the associated graded algebra".into())),
    }
    let ev = hilbert_identity(&gr, &top_quot, d)?;
    if !ev.holds {
        return Ok(NormalOutcome::Inconclusive("top part is a zero divisor in the associated graded algebra".into()));
    }
    match solve_cofactors(a, &fr, false)? {
        Ok(cof) => finish(a, fr, cof, ev),
        Err(i) => Ok(NormalOutcome::NotNormal { generator: a.alphabet().name(i).to_string() }),
    }
}

fn finish(a: &PresentedAlgebra, fr: FreePoly, cof: Vec<FreePoly>, ev: HilbertEvidence) -> Result<NormalOutcome, AlgebraError> {
    let nu = GeneratorMap::new(a.alphabet(), cof)?;
    let mut residues = Vec::new();
    for i in 0..a.alphabet().len() {
        residues.push(a.reduce(&a.letter(i).mul(&fr).sub(&fr.mul(nu.image(i))))?);
    }
    if residues.iter().any(|r| !r.is_zero()) {
        return Err(AlgebraError::Internal("nonzero normality residue".into()));
    }
    let mut relations_preserved = true;
    for r in a.relations() {
        if !a.is_zero(&nu.substitute(r)?)? {
            relations_preserved = false;
        }
    }
    let cert = NormalityCertificate { element: fr, nu, residues, relations_preserved, top_regularity: ev };
    if !relations_preserved {
        return Ok(NormalOutcome::Inconclusive("cofactors do not define an endomorphism".into()));
    }
    if cert.linear_matrix().det().is_zero() {
        return Ok(NormalOutcome::Inconclusive("cofactor map is not invertible".into()));
    }
    Ok(NormalOutcome::Normal(cert))
}

/// Whether `f` is central: it is normal with `ν = id`.
pub fn central_check(a: &PresentedAlgebra, f: &FreePoly) -> Result<bool, AlgebraError> {
    match normal_check(a, f)? {
        NormalOutcome::Normal(c) => c.is_central(a),
        NormalOutcome::NotNormal { .. } => Ok(false),
        NormalOutcome::Inconclusive(why) => Err(AlgebraError::Precondition(why)),
    }
}

/// Basis of `{w in A_j : g w = w ν(g) for all generators g}`.
pub fn compatible_lower_terms(a: &PresentedAlgebra, nu: &GeneratorMap, j: u32) -> Result<Vec<FreePoly>, AlgebraError> {
    let alph = a.alphabet();
    let field = a.field();
    let basis = a.normal_words(j)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
    for g in 0..alph.len() {
        let cols = basis
            .iter()
            .map(|u| {
                let w = FreePoly::word(alph, field, u.clone());
                a.reduce(&a.letter(g).mul(&w).sub(&w.mul(nu.image(g))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut index: Vec<Word> = cols.iter().flat_map(|c| c.terms().keys().cloned()).collect();
        index.sort();
        index.dedup();
        rows.extend(index.iter().map(|wd| cols.iter().map(|c| c.coeff(wd)).collect::<Vec<_>>()));
    }
    if rows.is_empty() {
        return Ok(basis.iter().map(|u| FreePoly::word(alph, field, u.clone())).collect());
    }
    let m = Matrix::from_rows(field, basis.len(), rows);
    Ok(m.nullspace().iter().map(|v| FreePoly::from_coords(alph, field, &basis, v)).collect())
}

/// Regularity of a homogeneous normal element via the Hilbert-series criterion.
pub fn regular_check_homog(a: &PresentedAlgebra, f: &FreePoly) -> Result<(Verdict, HilbertEvidence), AlgebraError> {
    let f = a.reduce(&f.rebind(a.alphabet())?)?;
    if !a.is_graded() || !f.is_homogeneous() || f.is_zero() {
        return Err(AlgebraError::Precondition("expected a nonzero homogeneous element of a graded algebra".into()));
    }
    if solve_cofactors(a, &f, true)?.is_err() {
        return Err(AlgebraError::Precondition("element is not normal".into()));
    }
    let ev = hilbert_identity(a, &a.quotient(std::slice::from_ref(&f))?, f.degree()?)?;
    let verdict = if ev.holds { Verdict::Pass } else { Verdict::Fail };
    Ok((verdict, ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn kl(rels: &[&str]) -> PresentedAlgebra {
        PresentedAlgebra::xy(Field::Rationals, rels).unwrap()
    }

    fn nu_of(a: &PresentedAlgebra, f: &str) -> Vec<String> {
        match normal_check(a, &a.parse(f).unwrap()).unwrap() {
            NormalOutcome::Normal(c) => c.nu.display_images(),
            other => panic!("{f}: {other:?}"),
        }
    }

    #[test]
    fn automorphism_examples() {
        let a = kl(&["xy + yx", "x^2"]);
        assert_eq!(nu_of(&a, "3yx + y^2"), vec!["x", "6*x + y"]);
        let b = kl(&["xy - 2yx"]);
        assert_eq!(nu_of(&b, "x^2"), vec!["x", "1/4*y"]);
        let c = normal_check(&a, &a.parse("y^2 + y").unwrap()).unwrap();
        assert!(matches!(c, NormalOutcome::NotNormal { ref generator } if generator == "x"));
    }

    #[test]
    fn centrality() {
        let s = kl(&["xy + yx"]);
        assert!(central_check(&s, &s.parse("2x^2 + 5y^2").unwrap()).unwrap());
        let a = kl(&["xy + yx", "x^2"]);
        assert!(central_check(&a, &a.parse("2y^2").unwrap()).unwrap());
        assert!(!central_check(&kl(&["xy - 2yx"]), &s.parse("xy").unwrap()).unwrap());
        let sum = nu_of(&a, "y^2 + yx");
        let diff = nu_of(&a, "y^2 - yx");
        assert_ne!(sum, diff);
    }

    #[test]
    fn lower_terms() {
        let a = kl(&["xy + yx", "x^2"]);
        let cert = normal_check(&a, &a.parse("y^2 + 3yx").unwrap()).unwrap().certificate().unwrap().clone();
        assert!(compatible_lower_terms(&a, &cert.nu, 1).unwrap().is_empty());
        assert!(compatible_lower_terms(&a, &cert.nu, 0).unwrap().is_empty());
        let cert0 = normal_check(&a, &a.parse("y^2").unwrap()).unwrap().certificate().unwrap().clone();
        assert_eq!(compatible_lower_terms(&a, &cert0.nu, 0).unwrap().len(), 1);
    }

    #[test]
    fn hilbert_regularity() {
        let a = kl(&["xy + yx", "x^2"]);
        let (v, ev) = regular_check_homog(&a, &a.parse("y^2").unwrap()).unwrap();
        assert_eq!(v, Verdict::Pass);
        assert!(ev.exact);
        let b = kl(&["xy - 2yx"]);
        let (v, ev) = regular_check_homog(&b, &b.parse("x^2").unwrap()).unwrap();
        assert_eq!(v, Verdict::Pass);
        assert_eq!(ev.quotient, "(1 + t)/(1 - t)");
        assert_eq!(regular_check_homog(&b, &b.parse("yx").unwrap()).unwrap().0, Verdict::Pass);
    }
}

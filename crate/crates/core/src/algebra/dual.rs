//! Quadratic duals and the distinguished degree-2 element of `(S/(f))^!`.

use std::sync::Arc;

use super::{AlgebraError, PresentedAlgebra};
use crate::field::{Field, Scalar};
use crate::findim::{FindimError, SCAlgebra};
use crate::freealg::{Alphabet, FreePoly, GeneratorMap, Word};
use crate::normality::{normal_check, NormalOutcome};
use crate::linalg::{span_basis, span_contains, Matrix};

/// Degree-2 words in index order `(i, j) -> i*n + j`.
fn quad_words(alph: &Arc<Alphabet>) -> Vec<Word> {
    let n = alph.len();
    (0..n * n).map(|k| alph.word(vec![(k / n) as u8, (k % n) as u8])).collect()
}

fn quad_vector(f: &FreePoly, words: &[Word]) -> Result<Vec<Scalar>, AlgebraError> {
    f.coords(words).ok_or(AlgebraError::NotQuadratic)
}

fn check_quadratic(a: &PresentedAlgebra) -> Result<(), AlgebraError> {
    if !a.is_quadratic() {
        return Err(AlgebraError::NotQuadratic);
    }
    Ok(())
}

/// Relation space of a quadratic algebra as vectors in `V ⊗ V`.
pub(crate) fn relation_space(a: &PresentedAlgebra) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
    check_quadratic(a)?;
    let words = quad_words(a.alphabet());
    let vecs = a.relations().iter().map(|r| quad_vector(r, &words)).collect::<Result<Vec<_>, _>>()?;
    Ok(span_basis(a.field(), words.len(), &vecs))
}

/// Orthogonal complement under the pairing `<x_i x_j, x_k x_l> = δ_ik δ_jl`.
fn perp(field: Field, dim: usize, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() {
        return (0..dim).map(|i| (0..dim).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
    }
    Matrix::from_rows(field, dim, vecs.to_vec()).nullspace()
}

fn algebra_from_space(
    alph: &Arc<Alphabet>,
    field: Field,
    space: &[Vec<Scalar>],
    bound: u32,
) -> Result<PresentedAlgebra, AlgebraError> {
    let words = quad_words(alph);
    let rels: Vec<FreePoly> = span_basis(field, words.len(), space)
        .iter()
        .map(|v| FreePoly::from_coords(alph, field, &words, v).monic())
        .collect();
    PresentedAlgebra::new(alph, field, rels, bound)
}

/// `A^! = k<X>/(R^⊥)` on the same letter names.
pub fn quadratic_dual(a: &PresentedAlgebra) -> Result<PresentedAlgebra, AlgebraError> {
    let r = relation_space(a)?;
    let n = a.alphabet().len();
    algebra_from_space(a.alphabet(), a.field(), &perp(a.field(), n * n, &r), a.bound())
}

/// Checks `H_{A^!}(t) H_A(-t) = 1` coefficientwise through degree `d`.
pub fn dual_hilbert_check(a: &PresentedAlgebra, d: u32) -> Result<bool, AlgebraError> {
    let dual = quadratic_dual(a)?;
    let ha = a.hilbert(d)?.coeffs;
    let hd = dual.hilbert(d)?.coeffs;
    for k in 0..=d as usize {
        let s: i128 = (0..=k)
            .map(|j| {
                let v = ha[j] as i128 * hd[k - j] as i128;
                if j % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .sum();
        if s != i128::from(k == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `A = S/(f)` with `S` quadratic and `f` of degree 2 outside the relation
/// space of `S`, the kernel of `A^!_2 -> S^!_2` is spanned by one element
/// `f^!`. Returns `(A^!, f^!)` with `f^!` in normal form and monic.
pub fn f_shriek(s: &PresentedAlgebra, f: &FreePoly) -> Result<(PresentedAlgebra, FreePoly), AlgebraError> {
    check_quadratic(s)?;
    let f = f.rebind(s.alphabet())?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if !f.is_homogeneous() || f.degree()? != 2 {
        return Err(AlgebraError::NotQuadratic);
    }
    let field = s.field();
    let words = quad_words(s.alphabet());
    let dim = words.len();
    let ws = relation_space(s)?;
    let fv = quad_vector(&f, &words)?;
    if span_contains(field, dim, &ws, &fv) {
        return Err(AlgebraError::Precondition("f lies in the relation space of S".into()));
    }
    let mut wa = ws.clone();
    wa.push(fv);
    let ws_perp = perp(field, dim, &ws);
    let wa_perp = perp(field, dim, &wa);
    let dual = algebra_from_space(s.alphabet(), field, &wa_perp, s.bound())?;
    let wa_perp_basis = span_basis(field, dim, &wa_perp);
    let v = ws_perp
        .iter()
        .find(|v| !span_contains(field, dim, &wa_perp_basis, v))
        .ok_or_else(|| AlgebraError::Internal("empty kernel".into()))?;
    let fs = dual.reduce(&FreePoly::from_coords(s.alphabet(), field, &words, v))?.monic();
    Ok((dual, fs))
}

/// The algebra `C(A) = A^![(f^!)^{-1}]_0` for `A = S/(f)`, with the data used
/// to build it.
#[derive(Debug, Clone)]
pub struct CliffordC {
    pub algebra: SCAlgebra,
    /// `A^!`.
    pub dual: PresentedAlgebra,
    pub f_shriek: FreePoly,
    pub nu: GeneratorMap,
}

/// Products on `A^!_2`: `a * b = c` where `c f^! = a ν(b)` in `A^!_4`, unit
/// `f^!`. Multiplication by `f^!` from degree 2 to degree 4 must be bijective;
/// this is checked.
pub fn clifford_c(s: &PresentedAlgebra, f: &FreePoly) -> Result<CliffordC, FindimError> {
    let (dual, fs) = f_shriek(s, f)?;
    let nu = match normal_check(&dual, &fs)? {
        NormalOutcome::Normal(c) => c.nu,
        NormalOutcome::NotNormal { generator } => {
            return Err(FindimError::Precondition(format!("f^! = {fs} is not normal (generator {generator})")))
        }
        NormalOutcome::Inconclusive(why) => {
            return Err(FindimError::Precondition(format!("normality of f^! = {fs} undecided: {why}")))
        }
    };
    let field = s.field();
    let alph = dual.alphabet().clone();
    let deg2 = dual.normal_words(2)?;
    let deg4 = dual.normal_words(4)?;
    if deg2.len() != deg4.len() {
        return Err(FindimError::Precondition(format!(
            "dim A^!_2 = {} but dim A^!_4 = {}",
            deg2.len(),
            deg4.len()
        )));
    }
    let n = deg2.len();
    let coords4 = |p: &FreePoly| -> Result<Vec<Scalar>, FindimError> {
        dual.reduce(p)?.coords(&deg4).ok_or_else(|| FindimError::Internal("product left degree 4".into()))
    };
    let basis: Vec<FreePoly> = deg2.iter().map(|w| FreePoly::word(&alph, field, w.clone())).collect();
    // column j = b_j f^!
    let cols = basis.iter().map(|b| coords4(&b.mul(&fs))).collect::<Result<Vec<_>, _>>()?;
    let mf = Matrix::from_rows(field, n, (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
    if mf.det().is_zero() {
        return Err(FindimError::Precondition("multiplication by f^! is not bijective from degree 2 to 4".into()));
    }
    let mut consts = Vec::with_capacity(n);
    for a in &basis {
        let mut row = Vec::with_capacity(n);
        for b in &basis {
            let prod = coords4(&a.mul(&nu.substitute(b).map_err(AlgebraError::from)?))?;
            row.push(mf.solve(&prod).expect("invertible"));
        }
        consts.push(row);
    }
    let unit = fs.coords(&deg2).ok_or_else(|| FindimError::Internal("f^! not in degree 2".into()))?;
    let labels = deg2.iter().map(|w| format!("{}/f", w.display(&alph))).collect();
    let algebra = SCAlgebra::new(field, labels, consts, unit)?;
    Ok(CliffordC { algebra, dual, f_shriek: fs, nu })
}

/// For a quadratic algebra `B` and a degree-2 element `q`, returns `(S, f)`
/// with `S = (B/(q))^!` and `S/(f) = B^!`: `f` spans the relation space of
/// `B^!` modulo that of `S`.
pub fn clifford_pair(b: &PresentedAlgebra, q: &FreePoly) -> Result<(PresentedAlgebra, FreePoly), AlgebraError> {
    check_quadratic(b)?;
    let q = q.rebind(b.alphabet())?;
    let bq = b.quotient(std::slice::from_ref(&q))?;
    let s = quadratic_dual(&bq)?;
    let field = b.field();
    let words = quad_words(b.alphabet());
    let dim = words.len();
    let wb_perp = perp(field, dim, &relation_space(b)?);
    let ws = span_basis(field, dim, &relation_space(&s)?);
    let v = wb_perp
        .iter()
        .find(|v| !span_contains(field, dim, &ws, v))
        .ok_or_else(|| AlgebraError::Precondition("q lies in the relation space of B".into()))?;
    Ok((s, FreePoly::from_coords(b.alphabet(), field, &words, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Alphabet;
    use crate::grobner::DEFAULT_DEGREE_BOUND;

    #[test]
    fn jordan_dual() {
        let q = Field::Rationals;
        let kj = PresentedAlgebra::xy(q, &["xy - yx + y^2"]).unwrap();
        let d = quadratic_dual(&kj).unwrap();
        let expected = PresentedAlgebra::xy(q, &["x^2", "y^2 + yx", "xy + yx"]).unwrap();
        assert_eq!(d.gb().generators(), expected.gb().generators());
        assert_eq!(d.dimension(), Some(4));
        let dd = quadratic_dual(&d).unwrap();
        assert_eq!(dd.gb().generators(), kj.gb().generators());
        assert!(dual_hilbert_check(&kj, 10).unwrap());
    }

    #[test]
    fn polynomial_ring_dual_is_exterior() {
        let q = Field::Rationals;
        let a = PresentedAlgebra::commutative_strs(&Alphabet::uniform(&["x", "y", "z"]), q, &[], DEFAULT_DEGREE_BOUND)
            .unwrap();
        let d = quadratic_dual(&a).unwrap();
        assert_eq!(d.hilbert(4).unwrap().coeffs, vec![1, 3, 3, 1, 0]);
        assert!(dual_hilbert_check(&a, 8).unwrap());
    }

    #[test]
    fn shriek_element() {
        let q = Field::Rationals;
        let s = PresentedAlgebra::xy(q, &["xy + yx"]).unwrap();
        let f = s.parse("x^2 + y^2").unwrap();
        let (dual, fs) = f_shriek(&s, &f).unwrap();
        assert_eq!(dual.hilbert(3).unwrap().coeffs[..3], [1, 2, 2]);
        assert!(!fs.is_zero());
        // f^! lies in the kernel of A^! -> S^!.
        let sd = quadratic_dual(&s).unwrap();
        assert!(sd.is_zero(&fs).unwrap());
        assert!(f_shriek(&s, &s.parse("xy + yx").unwrap()).is_err());
    }

    #[test]
    fn clifford_of_dual_pencils() {
        use crate::findim::classify_frob4;
        let q = Field::Rationals;
        let xyz = Alphabet::uniform(&["x", "y", "z"]);
        for (rels, label) in [(["x^2", "y^2"], "k[x,y]/(x^2,y^2)"), (["x^2 - z^2", "y^2 - z^2"], "k^4")] {
            let b = PresentedAlgebra::commutative_strs(&xyz, q, &rels, DEFAULT_DEGREE_BOUND).unwrap();
            let (s, f) = clifford_pair(&b, &b.parse("z^2").unwrap()).unwrap();
            let c = clifford_c(&s, &f).unwrap();
            assert_eq!(c.algebra.dim(), 4);
            assert_eq!(c.dual.hilbert(4).unwrap().coeffs, b.hilbert(4).unwrap().coeffs);
            assert_eq!(classify_frob4(&c.algebra).unwrap().tag(), label);
        }
    }
}

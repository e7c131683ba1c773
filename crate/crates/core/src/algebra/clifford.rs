use super::{AlgebraError, PresentedAlgebra};
use crate::field::Field;
use crate::freealg::{Alphabet, FreePoly, GeneratorMap};
use crate::grobner::DEFAULT_DEGREE_BOUND;
use crate::linalg::{span_basis, Matrix};

/// Graded Clifford algebra of symmetric matrices `M_1..M_n`: generators
/// `x_i` of weight 1 and central `y_j` of weight 2 with
/// `x_i x_j + x_j x_i = sum_m (M_m)_ij y_m`.
pub fn graded_clifford(field: Field, ms: &[Matrix]) -> Result<PresentedAlgebra, AlgebraError> {
    let n = ms.len();
    if n == 0 {
        return Err(AlgebraError::Invalid("no matrices".into()));
    }
    for m in ms {
        if m.rows() != n || m.cols() != n || m.field() != field {
            return Err(AlgebraError::Invalid(format!("expected {n}x{n} matrices over {field}")));
        }
        if *m != m.transpose() {
            return Err(AlgebraError::Invalid("matrices must be symmetric".into()));
        }
    }
    let flat: Vec<_> = ms.iter().map(|m| m.row_vecs().concat()).collect();
    if span_basis(field, n * n, &flat).len() != n {
        return Err(AlgebraError::Invalid("matrices must be linearly independent".into()));
    }
    let mut letters: Vec<(String, u32)> = (1..=n).map(|i| (format!("x{i}"), 1)).collect();
    letters.extend((1..=n).map(|i| (format!("y{i}"), 2)));
    let alph = Alphabet::new(letters)?;
    let x = |i: usize| FreePoly::letter(&alph, field, i);
    let y = |i: usize| FreePoly::letter(&alph, field, n + i);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut r = x(i).mul(&x(j)).add(&x(j).mul(&x(i)));
            for (k, m) in ms.iter().enumerate() {
                r = r.sub(&y(k).scale(m.get(i, j)));
            }
            rels.push(r);
        }
    }
    for i in 0..n {
        for j in 0..n {
            rels.push(x(i).mul(&y(j)).sub(&y(j).mul(&x(i))));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            rels.push(y(i).mul(&y(j)).sub(&y(j).mul(&y(i))));
        }
    }
    PresentedAlgebra::new(&alph, field, rels, DEFAULT_DEGREE_BOUND)
}

/// Whether `p` is a graded automorphism of `a`: it preserves weights, is
/// invertible on generators, and sends every relation into the ideal.
pub fn check_graded_auto(a: &PresentedAlgebra, p: &GeneratorMap) -> Result<bool, AlgebraError> {
    if p.source().as_ref() != a.alphabet().as_ref() || !p.is_graded() {
        return Ok(false);
    }
    if a.alphabet().all_weight_one() && !p.is_invertible_linear() {
        return Ok(false);
    }
    for r in a.relations() {
        let img = p.substitute(&r.rebind(p.source())?)?;
        if !a.is_zero(&img)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generator_clifford() {
        let q = Field::Rationals;
        let m1 = Matrix::from_i64(q, &[&[1, 0], &[0, 0]]);
        let m2 = Matrix::from_i64(q, &[&[0, 0], &[0, 1]]);
        let c = graded_clifford(q, &[m1, m2]).unwrap();
        // x1^2 = y1/2 and x2^2 = y2/2 and x1 x2 = -x2 x1: free module of rank 4 over k[y1, y2].
        let h = c.hilbert(6).unwrap();
        assert_eq!(h.coeffs, vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(graded_clifford(q, &[Matrix::from_i64(q, &[&[0, 1], &[0, 0]])]).is_err());
    }

    #[test]
    fn automorphism_checks() {
        let q = Field::Rationals;
        let a = PresentedAlgebra::xy(q, &["xy + yx"]).unwrap();
        let swap = GeneratorMap::parse(a.alphabet(), q, &["y", "x"]).unwrap();
        assert!(check_graded_auto(&a, &swap).unwrap());
        let shear = GeneratorMap::parse(a.alphabet(), q, &["x + y", "y"]).unwrap();
        assert!(!check_graded_auto(&a, &shear).unwrap());
        let degenerate = GeneratorMap::parse(a.alphabet(), q, &["x", "x"]).unwrap();
        assert!(!check_graded_auto(&a, &degenerate).unwrap());
    }
}

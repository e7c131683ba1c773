//! Congruence classes of a single quadratic relation in two variables.

use std::fmt;

use super::AlgebraError;
use crate::field::{Field, Scalar};
use crate::freealg::{FreePoly, GeneratorMap};
use crate::linalg::Matrix;
use crate::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelLabel {
    /// A square of a linear form.
    X2,
    /// A product of two independent linear forms.
    XY,
    /// The Jordan plane `xy - yx + y^2`.
    KJ,
    /// The quantum plane `xy - λ yx`.
    KLambda,
}

impl fmt::Display for RelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelLabel::X2 => "X2",
            RelLabel::XY => "XY",
            RelLabel::KJ => "KJ",
            RelLabel::KLambda => "KLAMBDA",
        })
    }
}

/// The quantum-plane parameter up to `λ ~ 1/λ`, stored as `s = λ + 1/λ`.
///
/// `λ` itself is a root of `t^2 - s t + 1`; `lambda` holds one when it lies in
/// the base field (the one of larger absolute value over `Q`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaKey {
    pub key: Scalar,
    pub lambda: Option<Scalar>,
}

impl LambdaKey {
    pub fn from_key(key: Scalar) -> LambdaKey {
        let f = key.field();
        let q = UPoly::new(f, vec![f.one(), -&key, f.one()]);
        let mut roots = q.roots();
        if f == Field::Rationals {
            roots.sort_by(|a, b| {
                let (a, b) = (a.to_rational().unwrap(), b.to_rational().unwrap());
                num_traits::Signed::abs(&b).cmp(&num_traits::Signed::abs(&a)).then(b.cmp(&a))
            });
        }
        LambdaKey { key, lambda: roots.into_iter().next() }
    }

    pub fn from_lambda(lambda: &Scalar) -> Result<LambdaKey, AlgebraError> {
        let inv = lambda.inv().map_err(|_| AlgebraError::Invalid("λ must be nonzero".into()))?;
        Ok(LambdaKey::from_key(lambda + &inv))
    }

    /// The monic quadratic `t^2 - s t + 1` satisfied by `λ`.
    pub fn minimal_quadratic(&self) -> UPoly {
        let f = self.key.field();
        UPoly::new(f, vec![f.one(), -&self.key, f.one()])
    }
}

impl fmt::Display for LambdaKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lambda {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "root of {}", self.minimal_quadratic()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationClass {
    pub label: RelLabel,
    pub lambda: Option<LambdaKey>,
    /// `M` with `h = sum M_ij x_i x_j`.
    pub matrix: Matrix,
}

impl RelationClass {
    /// `KLAMBDA(2)`, `KJ`, ...
    pub fn tag(&self) -> String {
        match &self.lambda {
            Some(l) => format!("{}({l})", self.label),
            None => self.label.to_string(),
        }
    }
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Coefficient matrix of a homogeneous quadratic in two weight-one letters.
pub fn relation_matrix(h: &FreePoly) -> Result<Matrix, AlgebraError> {
    let alph = h.alphabet();
    if alph.len() != 2 || !alph.all_weight_one() {
        return Err(AlgebraError::NotTwoGenerators);
    }
    if h.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if !h.is_homogeneous() || h.degree()? != 2 {
        return Err(AlgebraError::NotQuadratic);
    }
    let rows = (0..2)
        .map(|i| (0..2).map(|j| h.coeff(&alph.word(vec![i as u8, j as u8]))).collect())
        .collect();
    Ok(Matrix::from_rows(h.field(), 2, rows))
}

/// Classifies `h` up to linear change of variables and nonzero scaling.
///
/// Singular coefficient matrices give `X2` or `XY`. Otherwise the cosquare
/// `C = M^{-T} M` is a congruence invariant up to similarity: `C = -I` is the
/// commutative plane, a nontrivial Jordan block at `-1` is the Jordan plane,
/// and the remaining cases are quantum planes with `tr C = -(λ + 1/λ)`.
pub fn classify_relation(h: &FreePoly) -> Result<RelationClass, AlgebraError> {
    let m = relation_matrix(h)?;
    let f = m.field();
    if m.det().is_zero() {
        let label = if *m.get(0, 1) == *m.get(1, 0) { RelLabel::X2 } else { RelLabel::XY };
        return Ok(RelationClass { label, lambda: None, matrix: m });
    }
    let c = m.transpose().inverse().ok_or(AlgebraError::Singular)?.mul(&m);
    let tr = c.trace();
    let two = f.from_i64(2);
    let id = Matrix::identity(f, 2);
    let minus_id = id.scale(&f.from_i64(-1));
    let class = |lambda: Scalar| RelationClass {
        label: RelLabel::KLambda,
        lambda: Some(LambdaKey::from_lambda(&lambda).expect("nonzero")),
        matrix: m.clone(),
    };
    if tr == two {
        if c == id {
            return Ok(class(f.from_i64(-1)));
        }
        // tr C = (2ad - b^2 - c^2)/(ad - bc) equals 2 only when b = c, which forces C = I.
        return Err(AlgebraError::Internal("cosquare with a Jordan block at 1".into()));
    }
    if tr == -&two {
        if c == minus_id {
            return Ok(class(f.one()));
        }
        return Ok(RelationClass { label: RelLabel::KJ, lambda: None, matrix: m });
    }
    Ok(RelationClass { label: RelLabel::KLambda, lambda: Some(LambdaKey::from_key(-&tr)), matrix: m })
}

/// Whether `k<x,y>/(h)` is a quantum plane or the Jordan plane.
pub fn is_qpa2(h: &FreePoly) -> Result<bool, AlgebraError> {
    Ok(matches!(classify_relation(h)?.label, RelLabel::KJ | RelLabel::KLambda))
}

/// Searches linear maps with entries in `-range..=range` for `P` with
/// `P(h) = c * target` for a nonzero scalar `c`.
pub fn congruence_witness(h: &FreePoly, target: &FreePoly, range: i64) -> Result<Option<GeneratorMap>, AlgebraError> {
    relation_matrix(h)?;
    let tm = relation_matrix(target)?;
    let f = h.field();
    let alph = h.alphabet();
    let vals: Vec<i64> = (-range..=range).collect();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    if a * d - b * c == 0 {
                        continue;
                    }
                    let p = Matrix::from_i64(f, &[&[a, b], &[c, d]]);
                    let map = GeneratorMap::from_matrix(alph, &p)?;
                    let img = map.substitute(h)?;
                    let im = relation_matrix(&img)?;
                    // img = s * target for a scalar s read off a nonzero entry of the target
                    let (i, j) = (0..4).map(|k| (k / 2, k % 2)).find(|&(i, j)| !tm.get(i, j).is_zero()).unwrap();
                    let s = im.get(i, j).try_div(tm.get(i, j)).expect("nonzero");
                    if !s.is_zero() && im == tm.scale(&s) {
                        return Ok(Some(map));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Alphabet;

    fn p(s: &str) -> FreePoly {
        FreePoly::parse(s, &Alphabet::uniform(&["x", "y"]), Field::Rationals).unwrap()
    }

    fn tag(s: &str) -> String {
        classify_relation(&p(s)).unwrap().tag()
    }

    #[test]
    fn standard_forms() {
        assert_eq!(tag("xy - 2yx"), "KLAMBDA(2)");
        assert_eq!(tag("xy - (1/2)yx"), "KLAMBDA(2)");
        assert_eq!(tag("xy - yx + y^2"), "KJ");
        assert_eq!(tag("x^2 + xy - yx"), "KJ");
        assert_eq!(tag("xy - yx"), "KLAMBDA(1)");
        assert_eq!(tag("xy + yx"), "KLAMBDA(-1)");
        assert_eq!(tag("x^2"), "X2");
        assert_eq!(tag("(x+y)^2"), "X2");
        assert_eq!(tag("xy"), "XY");
        assert_eq!(tag("x^2 + xy - yx - y^2"), "XY");
        assert_eq!(tag("x^2 - y^2"), "KLAMBDA(-1)");
    }

    #[test]
    fn irrational_parameter() {
        // λ + 1/λ = 3 has no rational root.
        let c = classify_relation(&p("xy - yx + x^2 + y^2 + xy")).unwrap();
        assert_eq!(c.label, RelLabel::KLambda);
        let k = c.lambda.clone().unwrap();
        assert!(k.lambda.is_none());
        assert_eq!(k.key, Field::Rationals.one());
        assert_eq!(c.tag(), "KLAMBDA(root of 1 - t + t^2)");
    }

    #[test]
    fn jordan_witness() {
        let w = congruence_witness(&p("x^2 + xy - yx"), &p("xy - yx + y^2"), 2).unwrap();
        let w = w.expect("a congruence exists in a small box");
        let img = w.substitute(&p("x^2 + xy - yx")).unwrap();
        assert_eq!(classify_relation(&img).unwrap().label, RelLabel::KJ);
    }

    #[test]
    fn wrong_shapes() {
        assert!(classify_relation(&p("x^2 + y")).is_err());
        assert!(classify_relation(&p("0")).is_err());
    }
}

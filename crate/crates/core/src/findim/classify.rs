//! Four-dimensional Frobenius algebras up to isomorphism over the algebraic
//! closure, and explicit isomorphism checks.

use std::fmt;

use super::{coords_in, frobenius_check, radical_powers, vadd, vscale, FindimError, SCAlgebra};
use super::{center, find_nontrivial_idempotent, quaternion_split};
use crate::algebra::LambdaKey;
use crate::field::Scalar;
use crate::linalg::{span_basis, span_contains, Matrix};

/// Congruence class of the multiplication form on `rad / rad^2` of a local
/// algebra with `dim rad = 3`, `dim rad^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadFormKind {
    /// Symmetric form: the algebra is commutative.
    Symmetric,
    /// Cosquare with trace -2 that is not `-I`.
    Defective,
    /// Semisimple cosquare with eigenvalues `1/λ, λ`; the key is `λ + 1/λ`.
    Lambda(LambdaKey),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadForm {
    /// `u_i u_j = M_ij w` for a complement `u_1, u_2` of `rad^2` in `rad`.
    pub matrix: Matrix,
    /// `M^{-T} M`, defined up to similarity.
    pub cosquare: Matrix,
    pub kind: RadFormKind,
}

pub fn rad_form_invariant(r: &SCAlgebra) -> Result<RadForm, FindimError> {
    let f = r.field();
    let n = r.dim();
    let powers = radical_powers(r)?;
    let dims: Vec<usize> = powers.iter().map(Vec::len).collect();
    if dims != [3, 1] {
        return Err(FindimError::Precondition(format!("need radical powers of dimension [3, 1], found {dims:?}")));
    }
    let w = powers[1][0].clone();
    let mut us: Vec<Vec<Scalar>> = Vec::new();
    for v in &powers[0] {
        let mut span = vec![w.clone()];
        span.extend(us.iter().cloned());
        if !span_contains(f, n, &span_basis(f, n, &span), v) {
            us.push(v.clone());
        }
    }
    let coef = |a: &[Scalar], b: &[Scalar]| -> Result<Scalar, FindimError> {
        let c = coords_in(f, std::slice::from_ref(&w), &r.mul(a, b))
            .ok_or_else(|| FindimError::Internal("product of radical elements outside rad^2".into()))?;
        Ok(c[0].clone())
    };
    let mut rows = Vec::new();
    for a in &us {
        rows.push(vec![coef(a, &us[0])?, coef(a, &us[1])?]);
    }
    let m = Matrix::from_rows(f, 2, rows);
    let inv_t = m
        .transpose()
        .inverse()
        .ok_or_else(|| FindimError::Precondition("degenerate multiplication form on rad/rad^2".into()))?;
    let c = inv_t.mul(&m);
    let id = Matrix::identity(f, 2);
    let tr = c.trace();
    let kind = if c == id {
        RadFormKind::Symmetric
    } else if tr == f.from_i64(-2) && c != id.scale(&f.from_i64(-1)) {
        RadFormKind::Defective
    } else if tr == f.from_i64(2) {
        return Err(FindimError::Internal("unipotent cosquare other than the identity".into()));
    } else {
        RadFormKind::Lambda(LambdaKey::from_key(tr))
    };
    Ok(RadForm { matrix: m, cosquare: c, kind })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frob4Label {
    K4,
    K2TimesDual,
    KTimesCube,
    DualSquared,
    Quartic,
    DualPlane,
    Matrix2,
    Quiver,
    JType,
    LambdaType,
}

impl Frob4Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Frob4Label::K4 => "k^4",
            Frob4Label::K2TimesDual => "k^2 x k[x]/(x^2)",
            Frob4Label::KTimesCube => "k x k[x]/(x^3)",
            Frob4Label::DualSquared => "(k[x]/(x^2))^2",
            Frob4Label::Quartic => "k[x]/(x^4)",
            Frob4Label::DualPlane => "k[x,y]/(x^2,y^2)",
            Frob4Label::Matrix2 => "M_2(k)",
            Frob4Label::Quiver => "quiver",
            Frob4Label::JType => "J-type",
            Frob4Label::LambdaType => "lambda-type",
        }
    }

    pub fn all() -> [Frob4Label; 10] {
        use Frob4Label::*;
        [K4, K2TimesDual, KTimesCube, DualSquared, Quartic, DualPlane, Matrix2, Quiver, JType, LambdaType]
    }

    pub fn parse(s: &str) -> Option<Frob4Label> {
        Frob4Label::all().into_iter().find(|l| l.as_str() == s)
    }
}

impl fmt::Display for Frob4Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Isomorphism class over the algebraic closure, with the invariants used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frob4Class {
    pub label: Frob4Label,
    /// Parameter of the λ-type: key `λ + 1/λ`.
    pub lambda: Option<LambdaKey>,
    /// For `M_2(k)`: whether a nontrivial idempotent exists over the base field.
    pub split: Option<bool>,
    pub commutative: bool,
    /// Dimensions of `rad, rad^2, ...`.
    pub radical_dims: Vec<usize>,
    pub center_dim: usize,
    pub functional: Vec<Scalar>,
}

impl Frob4Class {
    pub fn invariant_key(&self) -> Option<String> {
        self.lambda.as_ref().map(|l| l.key.to_string())
    }

    pub fn tag(&self) -> String {
        match (&self.lambda, self.split) {
            (Some(l), _) => format!("{}({})", self.label, l),
            (None, Some(false)) => format!("{} (not split over the base field)", self.label),
            _ => self.label.to_string(),
        }
    }
}

impl fmt::Display for Frob4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Classifies a 4-dimensional Frobenius algebra. Labels refer to the
/// algebraic closure of the base field; invariants are the dimensions of the
/// radical powers, commutativity and the radical form.
pub fn classify_frob4(r: &SCAlgebra) -> Result<Frob4Class, FindimError> {
    if r.dim() != 4 {
        return Err(FindimError::Dimension { expected: 4, found: r.dim() });
    }
    let functional = match frobenius_check(r)? {
        super::FrobeniusResult::Frobenius { functional, .. } => functional,
        super::FrobeniusResult::NotFrobenius { .. } => return Err(FindimError::NotFrobenius),
    };
    let powers = radical_powers(r)?;
    let dims: Vec<usize> = powers.iter().map(Vec::len).collect();
    let rad = dims.first().copied().unwrap_or(0);
    let rad2 = dims.get(1).copied().unwrap_or(0);
    let commutative = r.is_commutative();
    let mut lambda = None;
    let mut split = None;
    let unexpected = || FindimError::Internal(format!("no Frobenius class with radical dimensions {dims:?}"));
    let label = if commutative {
        match (4 - rad, rad2) {
            (4, _) => Frob4Label::K4,
            (3, _) => Frob4Label::K2TimesDual,
            (2, 1) => Frob4Label::KTimesCube,
            (2, 0) => Frob4Label::DualSquared,
            (1, 2) => Frob4Label::Quartic,
            (1, 1) => Frob4Label::DualPlane,
            _ => return Err(unexpected()),
        }
    } else {
        match (4 - rad, rad2) {
            (4, _) => {
                split = Some(quaternion_split(r).unwrap_or_else(|| find_nontrivial_idempotent(r).is_some()));
                Frob4Label::Matrix2
            }
            (2, 0) => Frob4Label::Quiver,
            (1, 1) => match rad_form_invariant(r)?.kind {
                RadFormKind::Defective => Frob4Label::JType,
                RadFormKind::Lambda(k) => {
                    lambda = Some(k);
                    Frob4Label::LambdaType
                }
                RadFormKind::Symmetric => {
                    return Err(FindimError::Internal("symmetric radical form on a noncommutative algebra".into()))
                }
            },
            _ => return Err(unexpected()),
        }
    };
    Ok(Frob4Class { label, lambda, split, commutative, radical_dims: dims, center_dim: center(r).len(), functional })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub homomorphism: bool,
    pub bijective: bool,
    /// Column `j` is the image of source basis element `j`.
    pub matrix: Matrix,
    /// First failed check, if any.
    pub failure: Option<String>,
}

impl IsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.homomorphism && self.bijective
    }
}

/// Checks that sending `gens[i] -> images[i]` (and 1 to 1) extends to an
/// algebra isomorphism `src -> tgt`. Errors when the generators do not
/// generate `src`.
pub fn iso_verify(
    src: &SCAlgebra,
    gens: &[Vec<Scalar>],
    tgt: &SCAlgebra,
    images: &[Vec<Scalar>],
) -> Result<IsoReport, FindimError> {
    let f = src.field();
    if tgt.field() != f {
        return Err(FindimError::Invalid("field mismatch".into()));
    }
    if gens.len() != images.len() {
        return Err(FindimError::Invalid("need one image per generator".into()));
    }
    let (n, m) = (src.dim(), tgt.dim());
    if gens.iter().any(|g| g.len() != n) || images.iter().any(|g| g.len() != m) {
        return Err(FindimError::Invalid("vector length does not match the algebra dimension".into()));
    }
    let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = vec![(src.unit().to_vec(), tgt.unit().to_vec())];
    pairs.extend(gens.iter().cloned().zip(images.iter().cloned()));
    let mut sbasis: Vec<Vec<Scalar>> = Vec::new();
    let mut tbasis: Vec<Vec<Scalar>> = Vec::new();
    let mut conflict: Option<String> = None;
    let mut queue = pairs.clone();
    while let Some((s, t)) = queue.pop() {
        match coords_in(f, &sbasis, &s) {
            Some(c) => {
                let expect = c.iter().zip(&tbasis).fold(tgt.zero_vec(), |acc, (x, v)| vadd(&acc, &vscale(v, x)));
                if expect != t && conflict.is_none() {
                    conflict = Some(format!("not well defined at {}", src.display_vec(&s)));
                }
            }
            None => {
                for (g, h) in &pairs {
                    queue.push((src.mul(&s, g), tgt.mul(&t, h)));
                }
                sbasis.push(s);
                tbasis.push(t);
            }
        }
    }
    if sbasis.len() < n {
        return Err(FindimError::Precondition(format!(
            "the given elements generate a subalgebra of dimension {} < {n}",
            sbasis.len()
        )));
    }
    let image_of = |v: &[Scalar]| -> Vec<Scalar> {
        let c = coords_in(f, &sbasis, v).expect("basis spans");
        c.iter().zip(&tbasis).fold(tgt.zero_vec(), |acc, (x, t)| vadd(&acc, &vscale(t, x)))
    };
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| image_of(&src.basis_vec(j))).collect();
    let matrix = Matrix::from_rows(f, n, (0..m).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
    let mut failure = conflict;
    if failure.is_none() {
        'check: for i in 0..n {
            for j in 0..n {
                let lhs = image_of(&src.constants()[i][j]);
                let rhs = tgt.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    failure = Some(format!("product {} * {} not preserved", src.labels()[i], src.labels()[j]));
                    break 'check;
                }
            }
        }
    }
    let homomorphism = failure.is_none();
    let bijective = n == m && !matrix.det().is_zero();
    if homomorphism && !bijective {
        failure = Some("map is not bijective".into());
    }
    Ok(IsoReport { homomorphism, bijective, matrix, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;
    use crate::field::Field;
    use crate::freealg::Alphabet;

    fn sc(field: Field, rels: &[&str]) -> SCAlgebra {
        SCAlgebra::from_quotient(&PresentedAlgebra::xy(field, rels).unwrap()).unwrap()
    }

    fn comm(rels: &[&str]) -> SCAlgebra {
        let a = Alphabet::uniform(&["x", "y"]);
        SCAlgebra::from_quotient(&PresentedAlgebra::commutative_strs(&a, Field::Rationals, rels, 12).unwrap()).unwrap()
    }

    fn label(a: &SCAlgebra) -> String {
        classify_frob4(a).unwrap().tag()
    }

    #[test]
    fn commutative_labels() {
        assert_eq!(label(&comm(&["x^2 - 1", "y^2 - 1"])), "k^4");
        assert_eq!(label(&comm(&["x^3 - x", "xy", "y^2"])), "k^2 x k[x]/(x^2)");
        assert_eq!(label(&comm(&["x^2 - x", "y^2"])), "(k[x]/(x^2))^2");
        assert_eq!(label(&comm(&["x^2", "y^2"])), "k[x,y]/(x^2,y^2)");
        assert_eq!(label(&comm(&["x^2 - y", "y^2"])), "k[x]/(x^4)");
        assert_eq!(label(&comm(&["x^2 - 1", "y^2"])), "(k[x]/(x^2))^2");
        assert_eq!(label(&comm(&["x^2 - x", "y^3", "xy"])), "k x k[x]/(x^3)");
    }

    #[test]
    fn noncommutative_labels() {
        let q = Field::Rationals;
        assert_eq!(label(&sc(q, &["xy + yx", "x^2", "y^2 + yx"])), "J-type");
        let c = classify_frob4(&sc(q, &["xy - 2yx", "x^2", "y^2"])).unwrap();
        assert_eq!(c.label, Frob4Label::LambdaType);
        assert_eq!(c.invariant_key().unwrap(), "5/2");
        assert_eq!(classify_frob4(&sc(q, &["xy + yx", "x^2", "y^2"])).unwrap().invariant_key().unwrap(), "-2");
        assert_eq!(label(&sc(q, &["xy + yx", "x^2", "y^2 - 1"])), "quiver");
        let quat = classify_frob4(&sc(q, &["xy + yx", "x^2 + 1", "y^2 + 1"])).unwrap();
        assert_eq!((quat.label, quat.split), (Frob4Label::Matrix2, Some(false)));
        let qi = Field::quadratic(-1).unwrap();
        assert_eq!(classify_frob4(&sc(qi, &["xy + yx", "x^2 + 1", "y^2 + 1"])).unwrap().split, Some(true));
        assert_eq!(classify_frob4(&sc(q, &["x^2", "yx", "y^2"])), Err(FindimError::NotFrobenius));
    }

    #[test]
    fn quiver_isomorphism() {
        let q = Field::Rationals;
        let quiver = SCAlgebra::quiver_algebra(q, 2, &[("x", 0, 1), ("y", 1, 0)], &[vec![0, 1], vec![1, 0]]).unwrap();
        let pres = PresentedAlgebra::xy(q, &["xy + yx", "x^2", "y^2 - 1"]).unwrap();
        let target = SCAlgebra::from_quotient(&pres).unwrap();
        let el = |s: &str| target.element_of_quotient(&pres, &pres.parse(s).unwrap()).unwrap();
        let gens: Vec<_> = (0..4).map(|i| quiver.basis_vec(i)).collect();
        let good = [el("(1 + y)/2"), el("(1 - y)/2"), el("x + yx"), el("x - yx")];
        let rep = iso_verify(&quiver, &gens, &target, &good).unwrap();
        assert!(rep.is_isomorphism(), "{:?}", rep.failure);
        let swapped = [el("(1 + y)/2"), el("(1 - y)/2"), el("x - yx"), el("x + yx")];
        assert!(!iso_verify(&quiver, &gens, &target, &swapped).unwrap().is_isomorphism());
        assert!(iso_verify(&quiver, &gens[..1], &target, &good[..1]).is_err());
    }
}

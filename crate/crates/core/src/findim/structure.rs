//! Radical, center, Frobenius forms and idempotents.

use super::{coords_in, is_zero_vec, vadd, vscale, vsub, FindimError, MPoly, SCAlgebra};
use crate::field::Scalar;
use crate::linalg::{span_basis, Matrix};
use crate::upoly::UPoly;

/// Span of all products `a b` with `a` in `x` and `b` in `y`.
pub(crate) fn product_span(r: &SCAlgebra, x: &[Vec<Scalar>], y: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let prods: Vec<Vec<Scalar>> = x.iter().flat_map(|a| y.iter().map(move |b| r.mul(a, b))).collect();
    span_basis(r.field(), r.dim(), &prods)
}

/// Jacobson radical as the kernel of the trace form `(a, b) -> tr L_{ab}`,
/// confirmed nilpotent. The trace-form kernel equals the radical in
/// characteristic zero and in characteristic `p > dim`.
pub fn radical(r: &SCAlgebra) -> Result<Vec<Vec<Scalar>>, FindimError> {
    let n = r.dim();
    let f = r.field();
    if f.characteristic() != 0 && f.characteristic() <= n as u64 {
        return Err(FindimError::Precondition(format!(
            "trace-form radical needs characteristic 0 or larger than {n}"
        )));
    }
    let tr: Vec<Scalar> = (0..n).map(|k| r.left_matrix(&r.basis_vec(k)).trace()).collect();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = &r.constants()[i][j];
                    c.iter().zip(&tr).fold(f.zero(), |acc, (a, b)| &acc + &(a * b))
                })
                .collect()
        })
        .collect();
    let rad = span_basis(f, n, &Matrix::from_rows(f, n, rows).nullspace());
    let mut power = rad.clone();
    for _ in 0..=n {
        if power.is_empty() {
            return Ok(rad);
        }
        power = product_span(r, &power, &rad);
    }
    Err(FindimError::Internal("trace-form kernel is not nilpotent".into()))
}

/// `[rad, rad^2, ...]`, stopping before the first zero power.
pub fn radical_powers(r: &SCAlgebra) -> Result<Vec<Vec<Vec<Scalar>>>, FindimError> {
    let rad = radical(r)?;
    let mut out = Vec::new();
    let mut cur = rad.clone();
    while !cur.is_empty() {
        let next = product_span(r, &cur, &rad);
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

pub fn center(r: &SCAlgebra) -> Vec<Vec<Scalar>> {
    let n = r.dim();
    let f = r.field();
    // rows: coordinate k of [a, b_j] as a linear form in a
    let mut rows = Vec::new();
    for j in 0..n {
        let bj = r.basis_vec(j);
        let cols: Vec<Vec<Scalar>> =
            (0..n).map(|i| vsub(&r.mul(&r.basis_vec(i), &bj), &r.mul(&bj, &r.basis_vec(i)))).collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    span_basis(f, n, &Matrix::from_rows(f, n, rows).nullspace())
}

/// Minimal polynomial of `a` inside the unital subalgebra with unit `e`.
pub(crate) fn min_poly_local(r: &SCAlgebra, a: &[Scalar], e: &[Scalar]) -> UPoly {
    let f = r.field();
    let mut powers = vec![e.to_vec()];
    loop {
        let next = r.mul(powers.last().unwrap(), a);
        if let Some(c) = coords_in(f, &powers, &next) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(f.one());
            return UPoly::new(f, coeffs);
        }
        powers.push(next);
    }
}

pub fn minimal_polynomial(r: &SCAlgebra, a: &[Scalar]) -> UPoly {
    min_poly_local(r, a, r.unit())
}

pub(crate) fn eval_local(r: &SCAlgebra, p: &UPoly, a: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
    let mut acc = r.zero_vec();
    for c in p.coeffs().iter().rev() {
        acc = vadd(&r.mul(&acc, a), &vscale(e, c));
    }
    acc
}

/// Irreducible factors with multiplicities, equal factors merged.
fn grouped_factors(p: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out: Vec<(UPoly, usize)> = Vec::new();
    for (q, m) in p.factor() {
        let q = q.monic();
        match out.iter_mut().find(|(x, _)| *x == q) {
            Some(slot) => slot.1 += m,
            None => out.push((q, m)),
        }
    }
    out
}

/// Orthogonal idempotents `q_i(a)` from the coprime factorization of the
/// minimal polynomial of `a` (relative to the local unit `e`).
fn crt_idempotents(r: &SCAlgebra, a: &[Scalar], e: &[Scalar]) -> Vec<Vec<Scalar>> {
    let m = min_poly_local(r, a, e);
    let factors = grouped_factors(&m);
    if factors.len() < 2 {
        return vec![e.to_vec()];
    }
    factors
        .iter()
        .map(|(p, k)| {
            let big = p.pow(*k as u32);
            let other = m.divrem(&big).0;
            let (g, _, t) = big.ext_gcd(&other);
            debug_assert_eq!(g.degree(), Some(0));
            eval_local(r, &t.mul(&other), a, e)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobeniusResult {
    /// A functional `μ` whose Gram matrix is nondegenerate, and the
    /// determinant of the generic Gram matrix.
    Frobenius { functional: Vec<Scalar>, determinant: MPoly },
    /// The generic Gram determinant vanishes identically.
    NotFrobenius { determinant: MPoly },
}

impl FrobeniusResult {
    pub fn is_frobenius(&self) -> bool {
        matches!(self, FrobeniusResult::Frobenius { .. })
    }

    pub fn determinant(&self) -> &MPoly {
        match self {
            FrobeniusResult::Frobenius { determinant, .. } | FrobeniusResult::NotFrobenius { determinant } => determinant,
        }
    }
}

/// Vectors in `{0..=top}^n` ordered by coordinate sum.
fn small_points(n: usize, top: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..=(n as u64 * top)).flat_map(move |s| {
        let mut out = Vec::new();
        let mut cur = vec![0u64; n];
        fn rec(i: usize, left: u64, top: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == cur.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for v in 0..=top.min(left) {
                cur[i] = v;
                rec(i + 1, left - v, top, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, s, top, &mut cur, &mut out);
        out
    })
}

/// Decides whether `r` admits a functional with nondegenerate pairing
/// `(a, b) -> μ(ab)`: the Gram determinant in generic `μ` is nonzero exactly
/// when such a functional exists (over an infinite field, or a prime field
/// with `p > dim`).
pub fn frobenius_check(r: &SCAlgebra) -> Result<FrobeniusResult, FindimError> {
    let n = r.dim();
    let f = r.field();
    let gram: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| MPoly::linear(f, &r.constants()[i][j])).collect())
        .collect();
    let det = MPoly::det(f, n, &gram);
    if det.is_zero() {
        return Ok(FrobeniusResult::NotFrobenius { determinant: det });
    }
    let char_p = f.characteristic();
    if char_p != 0 && char_p <= n as u64 {
        return Err(FindimError::Precondition(format!("Frobenius search needs characteristic 0 or larger than {n}")));
    }
    // a nonzero polynomial of degree <= n in each variable is nonzero somewhere on {0..n}^n
    for pt in small_points(n, n as u64) {
        let mu: Vec<Scalar> = pt.iter().map(|&v| f.from_i64(v as i64)).collect();
        if !det.eval(&mu).is_zero() {
            return Ok(FrobeniusResult::Frobenius { functional: mu, determinant: det });
        }
    }
    Err(FindimError::Internal("nonzero Gram determinant without a nonvanishing grid point".into()))
}

/// A block `eR` for a primitive central idempotent `e`.
#[derive(Debug, Clone)]
pub struct Block {
    pub idempotent: Vec<Scalar>,
    pub algebra: SCAlgebra,
    /// Largest degree of an irreducible factor met in the center of the block;
    /// above 1 the block needs a field extension to split.
    pub residue_degree: usize,
    /// The block is local with residue field `k`, or has a nontrivial idempotent.
    pub split: bool,
}

/// Candidate elements: basis vectors, then small integer combinations.
fn candidates(r: &SCAlgebra) -> Vec<Vec<Scalar>> {
    let n = r.dim();
    let f = r.field();
    let mut out: Vec<Vec<Scalar>> = (0..n).map(|i| r.basis_vec(i)).collect();
    if n <= 6 {
        let vals = [0i64, 1, -1, 2];
        let total = vals.len().pow(n as u32);
        for mut k in 0..total {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(f.from_i64(vals[k % vals.len()]));
                k /= vals.len();
            }
            out.push(v);
        }
    } else {
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(vadd(&r.basis_vec(i), &vscale(&r.basis_vec(j), &f.from_i64(2))));
            }
        }
    }
    out
}

/// An idempotent other than 0 and 1, from minimal polynomials of small
/// combinations of basis elements.
pub fn find_nontrivial_idempotent(r: &SCAlgebra) -> Option<Vec<Scalar>> {
    let unit = r.unit().to_vec();
    for a in candidates(r) {
        if is_zero_vec(&a) {
            continue;
        }
        let parts = crt_idempotents(r, &a, &unit);
        if parts.len() >= 2 {
            let e = parts[0].clone();
            if r.mul(&e, &e) == e && !is_zero_vec(&e) && e != unit {
                return Some(e);
            }
        }
    }
    None
}

/// Splits `r` into blocks along primitive central idempotents found from
/// minimal polynomials of central elements.
pub fn idempotent_decompose(r: &SCAlgebra) -> Result<Vec<Block>, FindimError> {
    let z = center(r);
    let mut idems = vec![r.unit().to_vec()];
    'outer: loop {
        for (idx, e) in idems.iter().enumerate() {
            for c in &z {
                let a = r.mul(e, c);
                let parts = crt_idempotents(r, &a, e);
                if parts.len() >= 2 {
                    idems.splice(idx..=idx, parts);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let mut blocks = Vec::new();
    for e in idems {
        if r.mul(&e, &e) != e {
            return Err(FindimError::Internal("central splitting produced a non-idempotent".into()));
        }
        let algebra = r.corner(&e)?;
        let bz = center(&algebra);
        let residue_degree = bz
            .iter()
            .flat_map(|c| grouped_factors(&minimal_polynomial(&algebra, c)))
            .filter_map(|(p, _)| p.degree())
            .max()
            .unwrap_or(1);
        let local = radical(&algebra).map(|rad| rad.len() + 1 == algebra.dim()).unwrap_or(false);
        let split = residue_degree == 1 && (local
                || algebra.is_commutative()
                || super::quaternion_split(&algebra).unwrap_or_else(|| find_nontrivial_idempotent(&algebra).is_some()));
        blocks.push(Block { idempotent: e, algebra, residue_degree, split });
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;
    use crate::field::Field;

    fn sc(field: Field, rels: &[&str]) -> SCAlgebra {
        SCAlgebra::from_quotient(&PresentedAlgebra::xy(field, rels).unwrap()).unwrap()
    }

    fn sc_comm(rels: &[&str]) -> SCAlgebra {
        let a = crate::freealg::Alphabet::uniform(&["x", "y"]);
        SCAlgebra::from_quotient(&PresentedAlgebra::commutative_strs(&a, Field::Rationals, rels, 12).unwrap()).unwrap()
    }

    #[test]
    fn radicals_and_centers() {
        let q = Field::Rationals;
        let a = sc(q, &["xy - 2yx", "x^2", "y^2"]);
        assert_eq!(radical(&a).unwrap().len(), 3);
        assert_eq!(radical_powers(&a).unwrap().iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 1]);
        let z = center(&a);
        assert_eq!(z.len(), 2);
        assert_eq!(z.iter().map(|v| a.display_vec(v)).filter(|s| s.contains('x') && s.contains('y')).count(), 1);
        let quat = sc(q, &["xy + yx", "x^2 + 1", "y^2 + 1"]);
        assert!(radical(&quat).unwrap().is_empty());
        assert_eq!(center(&quat).len(), 1);
    }

    #[test]
    fn frobenius_examples() {
        let q = Field::Rationals;
        assert!(frobenius_check(&sc(q, &["xy + yx", "x^2", "y^2"])).unwrap().is_frobenius());
        let not = frobenius_check(&sc(q, &["x^2", "yx", "y^2"])).unwrap();
        assert!(!not.is_frobenius());
        assert!(not.determinant().is_zero());
        let path = SCAlgebra::quiver_algebra(q, 2, &[("a", 0, 1)], &[]).unwrap();
        assert!(!frobenius_check(&path).unwrap().is_frobenius());
        let cyc = SCAlgebra::quiver_algebra(q, 2, &[("x", 0, 1), ("y", 1, 0)], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(frobenius_check(&cyc).unwrap().is_frobenius());
    }

    #[test]
    fn decompositions() {
        let four = idempotent_decompose(&sc_comm(&["x^2 - 1", "y^2 - 1"])).unwrap();
        assert_eq!(four.len(), 4);
        assert!(four.iter().all(|b| b.algebra.dim() == 1 && b.split));
        let quat = sc(Field::Rationals, &["xy + yx", "x^2 + 1", "y^2 + 1"]);
        let blocks = idempotent_decompose(&quat).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(!blocks[0].split);
        assert!(find_nontrivial_idempotent(&quat).is_none());
        let qi = Field::quadratic(-1).unwrap();
        let quat_i = sc(qi, &["xy + yx", "x^2 + 1", "y^2 + 1"]);
        let blocks = idempotent_decompose(&quat_i).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].split);
        let e = find_nontrivial_idempotent(&quat_i).unwrap();
        assert_eq!(quat_i.mul(&e, &e), e);
        let field_ext = idempotent_decompose(&sc_comm(&["x^2 + 1", "y"])).unwrap();
        assert_eq!(field_ext.len(), 1);
        assert_eq!(field_ext[0].residue_degree, 2);
        assert!(!field_ext[0].split);
    }
}

//! Finite-dimensional algebras given by structure constants.

mod classify;
mod mpoly;
mod quaternion;
mod structure;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

pub use classify::{classify_frob4, iso_verify, rad_form_invariant, Frob4Class, Frob4Label, IsoReport, RadForm};
pub use mpoly::MPoly;
pub use quaternion::quaternion_split;
pub use structure::{
    center, find_nontrivial_idempotent, frobenius_check, idempotent_decompose, minimal_polynomial, radical,
    radical_powers, Block, FrobeniusResult,
};

use crate::algebra::{AlgebraError, PresentedAlgebra};
use crate::field::{Field, Scalar};
use crate::freealg::FreePoly;
use crate::linalg::{span_basis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FindimError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the quotient is infinite-dimensional")]
    Infinite,
    #[error("not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    NoUnit(usize),
    #[error("not a Frobenius algebra")]
    NotFrobenius,
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Associative unital algebra with basis `b_0..b_{n-1}` and
/// `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCAlgebra {
    field: Field,
    labels: Vec<String>,
    consts: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

/// Vector helpers over a field.
pub(crate) fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vsub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vscale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn vzero(f: Field, n: usize) -> Vec<Scalar> {
    vec![f.zero(); n]
}

pub(crate) fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub(crate) fn coords_in(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let rows = (0..v.len()).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    Matrix::from_rows(field, basis.len(), rows).solve(v)
}

impl SCAlgebra {
    /// Checks associativity on all basis triples and the unit laws.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        consts: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<SCAlgebra, FindimError> {
        let n = labels.len();
        let shape_ok = consts.len() == n
            && consts.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n && c.iter().all(|s| s.field() == field)))
            && unit.len() == n;
        if !shape_ok {
            return Err(FindimError::Invalid(format!("structure constants must have shape {n}x{n}x{n}")));
        }
        let alg = SCAlgebra { field, labels, consts, unit };
        alg.verify()?;
        Ok(alg)
    }

    fn verify(&self) -> Result<(), FindimError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.consts[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_vec(k));
                    let right = self.mul(&self.basis_vec(i), &self.consts[j][k]);
                    if left != right {
                        return Err(FindimError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis_vec(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(FindimError::NoUnit(i));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.consts
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vzero(self.field, self.dim())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, o) in out.iter_mut().enumerate().take(n) {
                    let c = &self.consts[i][j][k];
                    if !c.is_zero() {
                        *o = &*o + &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], e: u32) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.consts[i][j] == self.consts[j][i]))
    }

    /// Matrix of left multiplication, column `j` = `a b_j`.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Matrix::from_rows(self.field, n, (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
    }

    /// Text of an element in the basis labels.
    pub fn display_vec(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else if c.is_compound() {
                    format!("({c})*{l}")
                } else {
                    format!("{c}*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Basis of normal words of a finite quotient; products by reduction.
    pub fn from_quotient(a: &PresentedAlgebra) -> Result<SCAlgebra, FindimError> {
        let n = a.dimension().ok_or(FindimError::Infinite)? as usize;
        let top = a.gb().automaton().max_weight().ok_or(FindimError::Infinite)?;
        let words = a.normal_words_upto(top)?;
        if words.len() != n {
            return Err(FindimError::Internal("normal word count mismatch".into()));
        }
        let field = a.field();
        let alph = a.alphabet();
        let mut consts = Vec::with_capacity(n);
        for u in &words {
            let mut row = Vec::with_capacity(n);
            for v in &words {
                let p = a.reduce(&FreePoly::word(alph, field, u.concat(v)))?;
                row.push(p.coords(&words).ok_or_else(|| FindimError::Internal("reduction left the basis".into()))?);
            }
            consts.push(row);
        }
        let labels = words.iter().map(|w| w.display(alph)).collect();
        let unit = FreePoly::one(alph, field).coords(&words).ok_or(FindimError::Internal("no unit word".into()))?;
        SCAlgebra::new(field, labels, consts, unit)
    }

    /// Coordinates of an expression of the quotient in the normal-word basis
    /// produced by [`SCAlgebra::from_quotient`].
    pub fn element_of_quotient(&self, a: &PresentedAlgebra, f: &FreePoly) -> Result<Vec<Scalar>, FindimError> {
        let r = a.reduce(f)?;
        let top = a.gb().automaton().max_weight().ok_or(FindimError::Infinite)?;
        let words = a.normal_words_upto(top)?;
        r.coords(&words).ok_or_else(|| FindimError::Internal("element outside the basis".into()))
    }

    /// Path algebra `kQ/(relations)` with left-to-right path composition:
    /// `ab` is defined when `a` ends where `b` starts. Relations are paths
    /// given as arrow-index sequences.
    pub fn quiver_algebra(
        field: Field,
        vertices: usize,
        arrows: &[(&str, usize, usize)],
        relations: &[Vec<usize>],
    ) -> Result<SCAlgebra, FindimError> {
        const MAX_LEN: usize = 32;
        if arrows.iter().any(|&(_, s, t)| s >= vertices || t >= vertices) {
            return Err(FindimError::Invalid("arrow endpoint out of range".into()));
        }
        let contains_rel = |p: &[usize]| relations.iter().any(|r| !r.is_empty() && p.windows(r.len()).any(|w| w == &r[..]));
        // paths as (start, end, arrows); trivial paths have empty arrow lists
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..vertices).map(|v| (v, v, Vec::new())).collect();
        let mut frontier: Vec<(usize, usize, Vec<usize>)> = arrows
            .iter()
            .enumerate()
            .filter(|(i, _)| !contains_rel(&[*i]))
            .map(|(i, &(_, s, t))| (s, t, vec![i]))
            .collect();
        let mut len = 1;
        while !frontier.is_empty() {
            if len > MAX_LEN {
                return Err(FindimError::Infinite);
            }
            paths.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for (s, t, p) in &frontier {
                for (i, &(_, a, b)) in arrows.iter().enumerate() {
                    if a == *t {
                        let mut q = p.clone();
                        q.push(i);
                        if !contains_rel(&q) {
                            next.push((*s, b, q));
                        }
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        let n = paths.len();
        let index = |p: &(usize, usize, Vec<usize>)| paths.iter().position(|q| q == p);
        let mut consts = vec![vec![vzero(field, n); n]; n];
        for (i, a) in paths.iter().enumerate() {
            for (j, b) in paths.iter().enumerate() {
                if a.1 != b.0 {
                    continue;
                }
                let prod = if a.2.is_empty() {
                    b.clone()
                } else if b.2.is_empty() {
                    a.clone()
                } else {
                    let mut q = a.2.clone();
                    q.extend(&b.2);
                    (a.0, b.1, q)
                };
                if let Some(k) = index(&prod) {
                    consts[i][j][k] = field.one();
                }
            }
        }
        let labels = paths
            .iter()
            .map(|(s, _, p)| {
                if p.is_empty() {
                    format!("e{}", s + 1)
                } else {
                    p.iter().map(|&i| arrows[i].0).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        let mut unit = vzero(field, n);
        for u in unit.iter_mut().take(vertices) {
            *u = field.one();
        }
        SCAlgebra::new(field, labels, consts, unit)
    }

    /// `M_n(k)` on matrix units `e11, e12, ..., enn` (row-major).
    pub fn matrix_algebra(field: Field, n: usize) -> Result<SCAlgebra, FindimError> {
        let d = n * n;
        let mut consts = vec![vec![vzero(field, d); d]; d];
        for (a, row) in consts.iter_mut().enumerate() {
            for (b, c) in row.iter_mut().enumerate() {
                let (i, j, k, l) = (a / n, a % n, b / n, b % n);
                if j == k {
                    c[i * n + l] = field.one();
                }
            }
        }
        let mut unit = vzero(field, d);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let labels = (0..d).map(|a| format!("e{}{}", a / n + 1, a % n + 1)).collect();
        SCAlgebra::new(field, labels, consts, unit)
    }

    /// The same algebra in the basis given by the rows of `p` (must be invertible).
    pub fn change_basis(&self, p: &Matrix) -> Result<SCAlgebra, FindimError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n || p.det().is_zero() {
            return Err(FindimError::Invalid("change of basis must be invertible".into()));
        }
        let newb: Vec<Vec<Scalar>> = p.row_vecs();
        let mut consts = Vec::with_capacity(n);
        for a in &newb {
            let mut row = Vec::with_capacity(n);
            for b in &newb {
                row.push(coords_in(self.field, &newb, &self.mul(a, b)).expect("basis spans"));
            }
            consts.push(row);
        }
        let unit = coords_in(self.field, &newb, &self.unit).expect("basis spans");
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        SCAlgebra::new(self.field, labels, consts, unit)
    }

    /// Direct product `self × other`.
    pub fn product(&self, other: &SCAlgebra) -> Result<SCAlgebra, FindimError> {
        if self.field != other.field {
            return Err(FindimError::Invalid("field mismatch".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let f = self.field;
        let mut consts = vec![vec![vzero(f, n + m); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                consts[i][j][..n].clone_from_slice(&self.consts[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                consts[n + i][n + j][n..].clone_from_slice(&other.consts[i][j]);
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let labels = self.labels.iter().map(|l| format!("({l},0)")).chain(other.labels.iter().map(|l| format!("(0,{l})"))).collect();
        SCAlgebra::new(f, labels, consts, unit)
    }

    /// The corner algebra `eAe` for an idempotent `e`, with unit `e`.
    pub fn corner(&self, e: &[Scalar]) -> Result<SCAlgebra, FindimError> {
        let n = self.dim();
        let gens: Vec<Vec<Scalar>> = (0..n).map(|i| self.mul(&self.mul(e, &self.basis_vec(i)), e)).collect();
        let basis = span_basis(self.field, n, &gens);
        let m = basis.len();
        let mut consts = Vec::with_capacity(m);
        for a in &basis {
            let mut row = Vec::with_capacity(m);
            for b in &basis {
                row.push(coords_in(self.field, &basis, &self.mul(a, b)).ok_or(FindimError::Internal("corner not closed".into()))?);
            }
            consts.push(row);
        }
        let unit = coords_in(self.field, &basis, e).ok_or(FindimError::Internal("idempotent outside corner".into()))?;
        let labels = basis.iter().map(|v| self.display_vec(v)).collect();
        SCAlgebra::new(self.field, labels, consts, unit)
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &Scalar| v.to_string();
        json!({
            "field": self.field.to_string(),
            "labels": self.labels,
            "constants": self.consts.iter().map(|r| r.iter().map(|c| c.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "unit": self.unit.iter().map(s).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<SCAlgebra, FindimError> {
        let bad = |m: &str| FindimError::Invalid(format!("structure-constant JSON: {m}"));
        let field = Field::parse(v["field"].as_str().ok_or_else(|| bad("missing field"))?).map_err(|e| bad(&e.to_string()))?;
        let labels: Vec<String> = v["labels"]
            .as_array()
            .ok_or_else(|| bad("missing labels"))?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("label")))
            .collect::<Result<_, _>>()?;
        let scalar = |x: &Value| -> Result<Scalar, FindimError> {
            let t = x.as_str().ok_or_else(|| bad("scalars must be strings"))?;
            Scalar::parse(t, field).map_err(|e| bad(&e.to_string()))
        };
        let arr = |x: &Value| x.as_array().cloned().ok_or_else(|| bad("expected an array"));
        let consts = arr(&v["constants"])?
            .iter()
            .map(|r| arr(r)?.iter().map(|c| arr(c)?.iter().map(scalar).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = arr(&v["unit"])?.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
        SCAlgebra::new(field, labels, consts, unit)
    }
}

impl fmt::Display for SCAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension {} over {}, basis {}", self.dim(), self.field, self.labels.join(", "))?;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let p = &self.consts[i][j];
                if !is_zero_vec(p) {
                    writeln!(f, "  {} * {} = {}", self.labels[i], self.labels[j], self.display_vec(p))?;
                }
            }
        }
        Ok(())
    }
}

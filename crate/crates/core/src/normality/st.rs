//! Equivalence of sequences under graded changes of variables (`t`) and
//! invertible linear mixing (`s`), with witness checking and obstructions.

use crate::algebra::{AlgebraError, PresentedAlgebra};
use crate::findim::{classify_frob4, SCAlgebra};
use crate::freealg::{FreePoly, GeneratorMap, Word};
use crate::linalg::{span_basis, span_contains, Matrix};

/// One step `F -> (P(F), P(H)) (α; γ)`: apply `P`, mix the entries by the
/// columns of `α`, and add `P(H)`-combinations given by `γ`.
#[derive(Debug, Clone)]
pub struct StStep {
    pub p: GeneratorMap,
    /// `m x m`, invertible; `f'_j = sum_i α_ij P(f_i) + sum_k γ_kj P(h_k)`.
    pub alpha: Matrix,
    /// `l x m`; `None` means zero.
    pub gamma: Option<Matrix>,
}

impl StStep {
    pub fn mixing(p: GeneratorMap, alpha: Matrix) -> StStep {
        StStep { p, alpha, gamma: None }
    }
}

pub fn st_transform(f: &[FreePoly], h: &[FreePoly], step: &StStep) -> Result<Vec<FreePoly>, AlgebraError> {
    let m = f.len();
    if m == 0 {
        return Err(AlgebraError::ZeroInput);
    }
    if !step.p.is_invertible_linear() {
        return Err(AlgebraError::Singular);
    }
    let a = &step.alpha;
    if a.rows() != m || a.cols() != m || a.det().is_zero() {
        return Err(AlgebraError::Singular);
    }
    if let Some(g) = &step.gamma {
        if g.rows() != h.len() || g.cols() != m {
            return Err(AlgebraError::Invalid(format!("γ must be {}x{m}", h.len())));
        }
    }
    let pf = f.iter().map(|x| step.p.substitute(x)).collect::<Result<Vec<_>, _>>()?;
    let ph = h.iter().map(|x| step.p.substitute(x)).collect::<Result<Vec<_>, _>>()?;
    let alph = f[0].alphabet();
    let field = f[0].field();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut acc = FreePoly::zero(alph, field);
        for (i, x) in pf.iter().enumerate() {
            acc = acc.add(&x.scale(a.get(i, j)));
        }
        if let Some(g) = &step.gamma {
            for (k, x) in ph.iter().enumerate() {
                acc = acc.add(&x.scale(g.get(k, j)));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Result of replaying a witness chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub ok: bool,
    /// Index of the first broken step, or `Some(len)` when the final comparison fails.
    pub failed_step: Option<usize>,
    pub message: String,
}

/// All words occurring in the given polynomials, ascending.
fn support(polys: &[&FreePoly]) -> Vec<Word> {
    let mut words: Vec<Word> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    words.sort();
    words.dedup();
    words
}

/// Replays `chain` from `f` and checks the result equals `target` entrywise
/// modulo the linear span of `h`.
pub fn st_witness_verify(
    f: &[FreePoly],
    target: &[FreePoly],
    h: &[FreePoly],
    chain: &[StStep],
) -> Result<WitnessReport, AlgebraError> {
    if f.len() != target.len() {
        return Ok(WitnessReport { ok: false, failed_step: Some(0), message: "sequence lengths differ".into() });
    }
    let mut cur = f.to_vec();
    for (i, step) in chain.iter().enumerate() {
        match st_transform(&cur, h, step) {
            Ok(next) => cur = next,
            Err(e) => return Ok(WitnessReport { ok: false, failed_step: Some(i), message: format!("step {i}: {e}") }),
        }
    }
    let refs: Vec<&FreePoly> = cur.iter().chain(target).chain(h).collect();
    let words = support(&refs);
    let field = f[0].field();
    let coords = |p: &FreePoly| p.coords(&words).expect("support covers all terms");
    let hspan = span_basis(field, words.len(), &h.iter().map(coords).collect::<Vec<_>>());
    for (j, (c, t)) in cur.iter().zip(target).enumerate() {
        let diff = coords(&c.sub(t));
        if !span_contains(field, words.len(), &hspan, &diff) {
            return Ok(WitnessReport {
                ok: false,
                failed_step: Some(chain.len()),
                message: format!("entry {j}: obtained {c}, expected {t}"),
            });
        }
    }
    Ok(WitnessReport { ok: true, failed_step: None, message: "chain verified".into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Dimensions of the spans of degree components (then of filtration
    /// pieces) of `span(F, H)`; preserved by graded maps and mixing.
    DegreePattern { left: Vec<usize>, right: Vec<usize> },
    /// Quotients of different dimension.
    Dimension { left: Option<u64>, right: Option<u64> },
    /// Quotients with different 4-dimensional classification labels.
    QuotientLabel { left: String, right: String },
}

fn degree_pattern(f: &[FreePoly], h: &[FreePoly]) -> Vec<usize> {
    let all: Vec<&FreePoly> = f.iter().chain(h).collect();
    let top = all.iter().filter_map(|p| p.degree().ok()).max().unwrap_or(0);
    let words = support(&all);
    let field = all[0].field();
    let coords = |p: &FreePoly| p.coords(&words).expect("support covers all terms");
    let full: Vec<_> = all.iter().map(|p| coords(p)).collect();
    let mut out = Vec::new();
    for d in 0..=top {
        let comps: Vec<_> = all.iter().map(|p| coords(&p.component(d))).collect();
        out.push(span_basis(field, words.len(), &comps).len());
    }
    // dim of span ∩ (degree <= d): the kernel of projecting onto higher components
    for d in 0..top {
        let high: Vec<usize> = (0..words.len()).filter(|&i| words[i].weight() > d).collect();
        let rows: Vec<Vec<_>> = high.iter().map(|&i| full.iter().map(|v| v[i].clone()).collect()).collect();
        let basis = span_basis(field, words.len(), &full);
        let dim_span = basis.len();
        let proj_rank = if rows.is_empty() { 0 } else { Matrix::from_rows(field, full.len(), rows).rank() };
        out.push(dim_span - proj_rank);
    }
    out
}

/// Looks for proofs that `f` and `g` are not st-equivalent over `k<X>/(h)`.
/// An empty result proves nothing.
pub fn st_obstruction(f: &[FreePoly], g: &[FreePoly], h: &[FreePoly]) -> Result<Vec<Obstruction>, AlgebraError> {
    let mut out = Vec::new();
    if f.is_empty() || g.is_empty() {
        return Err(AlgebraError::ZeroInput);
    }
    let (pf, pg) = (degree_pattern(f, h), degree_pattern(g, h));
    if pf != pg {
        out.push(Obstruction::DegreePattern { left: pf, right: pg });
    }
    let alph = f[0].alphabet();
    let field = f[0].field();
    let quotient = |s: &[FreePoly]| {
        let mut rels = s.to_vec();
        rels.extend(h.iter().cloned());
        PresentedAlgebra::new(alph, field, rels, crate::grobner::DEFAULT_DEGREE_BOUND)
    };
    let (ef, eg) = (quotient(f)?, quotient(g)?);
    let (df, dg) = (ef.dimension(), eg.dimension());
    if df != dg {
        out.push(Obstruction::Dimension { left: df, right: dg });
    } else if df == Some(4) {
        let lf = SCAlgebra::from_quotient(&ef).and_then(|a| classify_frob4(&a));
        let lg = SCAlgebra::from_quotient(&eg).and_then(|a| classify_frob4(&a));
        if let (Ok(lf), Ok(lg)) = (lf, lg) {
            if lf.label != lg.label || lf.invariant_key() != lg.invariant_key() {
                out.push(Obstruction::QuotientLabel { left: lf.tag(), right: lg.tag() });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::freealg::Alphabet;

    fn seq(items: &[&str]) -> Vec<FreePoly> {
        let a = Alphabet::uniform(&["x", "y"]);
        items.iter().map(|s| FreePoly::parse(s, &a, Field::Rationals).unwrap()).collect()
    }

    #[test]
    fn transform_and_verify() {
        let q = Field::Rationals;
        let a = Alphabet::uniform(&["x", "y"]);
        let f = seq(&["x^2 + y^2 + 1", "x^2 + 3", "xy + yx"]);
        let id = GeneratorMap::identity(&a, q);
        let mix = Matrix::from_i64(q, &[&[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]);
        let step = StStep::mixing(id.clone(), mix);
        let out = st_transform(&f, &[], &step).unwrap();
        assert_eq!(out, seq(&["x^2 + 3", "y^2 - 2", "xy + yx"]));
        let unchanged = st_transform(&f, &[], &StStep::mixing(id.clone(), Matrix::identity(q, 3))).unwrap();
        assert_eq!(unchanged, f);
        let target = seq(&["x^2 + 3", "y^2 - 2", "xy + yx"]);
        assert!(st_witness_verify(&f, &target, &[], std::slice::from_ref(&step)).unwrap().ok);
        let swap = GeneratorMap::parse(&a, q, &["y", "x"]).unwrap();
        let bad = StStep { p: swap, ..step };
        assert!(!st_witness_verify(&f, &target, &[], &[bad]).unwrap().ok);
    }

    #[test]
    fn degree_obstruction() {
        let f = seq(&["x^2 - 1", "y^2 - 1", "xy - yx"]);
        let g = seq(&["x^2 - y", "y^2 - 1", "xy - yx"]);
        let obs = st_obstruction(&f, &g, &[]).unwrap();
        assert!(obs.iter().any(|o| matches!(o, Obstruction::DegreePattern { .. })));
        assert!(st_obstruction(&f, &f, &[]).unwrap().is_empty());
    }
}

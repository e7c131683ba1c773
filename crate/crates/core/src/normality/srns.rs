//! Strongly regular normal sequences of length two in a two-generator
//! quadratic algebra.

use super::{hilbert_identity, normal_check, regular_check_homog, HilbertEvidence, NormalOutcome, Verdict};
use crate::algebra::{is_qpa2, AlgebraError, PresentedAlgebra};
use crate::freealg::FreePoly;

/// `ḡ` regular in `S/(f)`, certified through the associated graded algebra.
///
/// First checks that `S/(f)` and `S/(f^∨)` have the same Hilbert function, so
/// that `gr(S/(f)) = S/(f^∨)`; then checks `g^∨` is regular in `S/(f^∨)`.
pub fn regular_check_filtered(
    s: &PresentedAlgebra,
    f: &FreePoly,
    g: &FreePoly,
) -> Result<(Verdict, Vec<String>), AlgebraError> {
    let mut notes = Vec::new();
    let f = f.rebind(s.alphabet())?;
    let g = g.rebind(s.alphabet())?;
    let ftop = f.top_part()?;
    let a = s.quotient(std::slice::from_ref(&f))?;
    let a_top = s.quotient(std::slice::from_ref(&ftop))?;
    let same = match (a.hilbert_rational(), a_top.hilbert_rational()) {
        (Ok(x), Ok(y)) => {
            notes.push(format!("H(S/(f)) = {x}, H(S/(f^top)) = {y}"));
            x == y
        }
        _ => {
            let d = a.bound().min(a_top.bound());
            let (x, y) = (a.hilbert(d)?.coeffs, a_top.hilbert(d)?.coeffs);
            notes.push(format!("Hilbert functions compared through degree {d}"));
            x == y
        }
    };
    if !same {
        notes.push("leading terms of (S, f) and (S, f^top) differ".into());
        return Ok((Verdict::Inconclusive, notes));
    }
    let gtop = a_top.reduce(&a.reduce(&g)?.top_part()?)?;
    if gtop.is_zero() {
        notes.push("top part of g vanishes".into());
        return Ok((Verdict::Fail, notes));
    }
    match regular_check_homog(&a_top, &gtop) {
        Ok((v, ev)) => {
            notes.push(format!("g^top = {gtop}: H = {} against {}", ev.quotient, ev.ambient));
            Ok((if v == Verdict::Pass { Verdict::Pass } else { Verdict::Inconclusive }, notes))
        }
        Err(e) => {
            notes.push(format!("g^top = {gtop}: {e}"));
            Ok((Verdict::Inconclusive, notes))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub name: &'static str,
    pub verdict: Verdict,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SequenceCertificate {
    pub relation: FreePoly,
    pub f: FreePoly,
    pub g: FreePoly,
    pub stages: Vec<Stage>,
    pub verdict: Verdict,
    /// `dim S/(f, g)` when finite.
    pub dimension: Option<u64>,
}

impl SequenceCertificate {
    pub fn failing_stage(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| s.verdict != Verdict::Pass)
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

fn outcome_stage(name: &'static str, what: &str, o: Result<NormalOutcome, AlgebraError>) -> (Stage, Option<NormalOutcome>) {
    match o {
        Ok(NormalOutcome::Normal(c)) => (
            Stage {
                name,
                verdict: Verdict::Pass,
                detail: vec![format!("{what} = {} with ν = ({})", c.element, c.nu.display_images().join(", "))],
            },
            Some(NormalOutcome::Normal(c)),
        ),
        Ok(NormalOutcome::NotNormal { generator }) => (
            Stage { name, verdict: Verdict::Fail, detail: vec![format!("{what}: no cofactor for generator {generator}")] },
            None,
        ),
        Ok(NormalOutcome::Inconclusive(why)) => {
            (Stage { name, verdict: Verdict::Inconclusive, detail: vec![format!("{what}: {why}")] }, None)
        }
        Err(e) => (Stage { name, verdict: Verdict::Inconclusive, detail: vec![format!("{what}: {e}")] }, None),
    }
}

fn hilbert_note(label: &str, ev: &HilbertEvidence) -> String {
    format!("{label}: H = {} against {}{}", ev.quotient, ev.ambient, if ev.exact { "" } else { " (truncated)" })
}

/// Runs every stage in order and records its evidence; the sequence passes
/// only if every stage passes. The order of `f` and `g` matters.
pub fn srns_check(s: &PresentedAlgebra, f: &FreePoly, g: &FreePoly) -> Result<SequenceCertificate, AlgebraError> {
    if s.relations().len() != 1 {
        return Err(AlgebraError::Invalid("expected a single defining relation".into()));
    }
    let h = s.relations()[0].clone();
    let f = f.rebind(s.alphabet())?;
    let g = g.rebind(s.alphabet())?;
    let mut stages = Vec::new();

    let qpa = is_qpa2(&h).unwrap_or(false);
    stages.push(Stage {
        name: "qpa2",
        verdict: if qpa { Verdict::Pass } else { Verdict::Fail },
        detail: vec![format!("relation {h}")],
    });

    let deg_ok = f.degree().ok() == Some(2) && g.degree().ok() == Some(2);
    stages.push(Stage {
        name: "degrees",
        verdict: if deg_ok { Verdict::Pass } else { Verdict::Fail },
        detail: vec![format!("deg f = {:?}, deg g = {:?}", f.degree().ok(), g.degree().ok())],
    });

    stages.push(top_sequence(s, &f, &g));

    let (st, _) = outcome_stage("f-normality", "f", normal_check(s, &f));
    let mut st = st;
    if st.verdict == Verdict::Pass {
        st.detail.push("f is regular: S is a domain".into());
    }
    stages.push(st);

    let a = s.quotient(std::slice::from_ref(&f))?;
    let (st, _) = outcome_stage("g-normality", "g in S/(f)", normal_check(&a, &g));
    stages.push(st);

    let (v, notes) = regular_check_filtered(s, &f, &g)?;
    stages.push(Stage { name: "g-regularity", verdict: v, detail: notes });

    let e = s.quotient(&[f.clone(), g.clone()])?;
    let dimension = e.dimension();
    let pattern = e.associated_graded().ok().and_then(|gr| gr.hilbert(3).ok()).map(|h| h.coeffs);
    let dim_ok = dimension == Some(4) && pattern.as_deref() == Some(&[1, 2, 1, 0][..]);
    stages.push(Stage {
        name: "dimension",
        verdict: if dim_ok { Verdict::Pass } else { Verdict::Fail },
        detail: vec![format!("dim S/(f,g) = {dimension:?}, graded pattern {pattern:?}")],
    });

    let verdict = if stages.iter().all(|s| s.verdict == Verdict::Pass) {
        Verdict::Pass
    } else if stages.iter().any(|s| s.verdict == Verdict::Fail) {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    Ok(SequenceCertificate { relation: h, f, g, stages, verdict, dimension })
}

/// `(f^∨, g^∨)` is a homogeneous regular normal sequence in `S`.
fn top_sequence(s: &PresentedAlgebra, f: &FreePoly, g: &FreePoly) -> Stage {
    let name = "top-sequence";
    let run = || -> Result<Stage, AlgebraError> {
        let mut detail = Vec::new();
        let ft = f.top_part()?;
        let gt = g.top_part()?;
        let (st, _) = outcome_stage(name, "f^top", normal_check(s, &ft));
        if st.verdict != Verdict::Pass {
            return Ok(st);
        }
        detail.extend(st.detail);
        let (v, ev) = regular_check_homog(s, &ft)?;
        detail.push(hilbert_note("S/(f^top)", &ev));
        if v != Verdict::Pass {
            return Ok(Stage { name, verdict: Verdict::Fail, detail });
        }
        let a = s.quotient(std::slice::from_ref(&ft))?;
        let (st, _) = outcome_stage(name, "g^top in S/(f^top)", normal_check(&a, &gt));
        detail.extend(st.detail);
        if st.verdict != Verdict::Pass {
            return Ok(Stage { name, verdict: st.verdict, detail });
        }
        let ev = hilbert_identity(&a, &a.quotient(std::slice::from_ref(&gt))?, 2)?;
        detail.push(hilbert_note("S/(f^top, g^top)", &ev));
        let verdict = if ev.holds { Verdict::Pass } else { Verdict::Fail };
        Ok(Stage { name, verdict, detail })
    };
    run().unwrap_or_else(|e| Stage { name, verdict: Verdict::Inconclusive, detail: vec![e.to_string()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn check(rel: &str, f: &str, g: &str) -> SequenceCertificate {
        let s = PresentedAlgebra::xy(Field::Rationals, &[rel]).unwrap();
        srns_check(&s, &s.parse(f).unwrap(), &s.parse(g).unwrap()).unwrap()
    }

    #[test]
    fn quantum_plane_pair() {
        let c = check("xy - 2yx", "x^2", "y^2");
        assert_eq!(c.verdict, Verdict::Pass, "{:?}", c.stages);
        assert_eq!(c.dimension, Some(4));
    }

    #[test]
    fn counterexample_fails_at_g_normality() {
        let c = check("xy + yx", "x^2", "y^2 + y");
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.stage("top-sequence").unwrap().verdict, Verdict::Pass);
        assert_eq!(c.failing_stage().unwrap().name, "g-normality");
    }

    #[test]
    fn order_matters() {
        assert_eq!(check("xy + yx", "x^2", "y^2 + yx").verdict, Verdict::Pass);
        assert_eq!(check("xy + yx", "y^2 + yx", "x^2").verdict, Verdict::Fail);
    }

    #[test]
    fn filtered_regularity() {
        let s = PresentedAlgebra::xy(Field::Rationals, &["xy + yx"]).unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        assert_eq!(regular_check_filtered(&s, &p("x^2"), &p("y^2 + 1")).unwrap().0, Verdict::Pass);
        assert_eq!(regular_check_filtered(&s, &p("x^2 + 1"), &p("y^2")).unwrap().0, Verdict::Pass);
        assert_eq!(regular_check_filtered(&s, &p("x^2 + y^2 + 1"), &p("x^2 + 2")).unwrap().0, Verdict::Pass);
    }
}

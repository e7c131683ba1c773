use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::{parse_alphabet, parse_field, parse_presentation, Construction, PresentationError, StepSpec};
use crate::algebra::{AlgebraError, PresentedAlgebra};
use crate::findim::{classify_frob4, frobenius_check, iso_verify, FindimError, FrobeniusResult, SCAlgebra};
use crate::freealg::{FreePoly, GeneratorMap};
use crate::linalg::Matrix;
use crate::normality::{normal_check, srns_check, st_witness_verify, NormalOutcome, Verdict};

pub const TOOL_VERSION: &str = concat!("pencil ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

/// Serialized evidence for one verdict. Field order is fixed and object keys
/// are sorted, so equal certificates serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    pub evidence: Value,
    pub tool_version: String,
    pub seed: u64,
    pub degree_bound: u32,
}

impl Certificate {
    fn new(kind: &str, inputs: &[(&str, String)], verdict: &str, evidence: Value, degree_bound: u32) -> Certificate {
        Certificate {
            kind: kind.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            verdict: verdict.into(),
            evidence,
            tool_version: TOOL_VERSION.into(),
            seed: 0,
            degree_bound,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind: {}\nverdict: {}\n", self.kind, self.verdict);
        for (k, v) in &self.inputs {
            if v.contains('\n') {
                s.push_str(&format!("input {k}:\n"));
                for line in v.lines() {
                    s.push_str(&format!("  {line}\n"));
                }
            } else {
                s.push_str(&format!("input {k}: {v}\n"));
            }
        }
        s.push_str(&format!(
            "evidence:\n{}\n",
            serde_json::to_string_pretty(&self.evidence).expect("evidence serializes")
        ));
        s.push_str(&format!("tool: {}, seed {}, degree bound {}\n", self.tool_version, self.seed, self.degree_bound));
        s
    }

    fn input(&self, key: &str) -> Result<&str, CertificateError> {
        self.inputs.get(key).map(String::as_str).ok_or_else(|| CertificateError::Malformed(format!("missing input `{key}`")))
    }
}

fn strings(v: &Value) -> Result<Vec<String>, CertificateError> {
    v.as_array()
        .ok_or_else(|| CertificateError::Malformed("expected an array".into()))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| CertificateError::Malformed("expected strings".into())))
        .collect()
}

pub fn normal_certificate(a: &PresentedAlgebra, f: &FreePoly) -> Result<Certificate, AlgebraError> {
    let outcome = normal_check(a, f)?;
    let evidence = match &outcome {
        NormalOutcome::Normal(c) => json!({
            "element": c.element.to_string(),
            "nu": c.nu.display_images(),
            "central": c.is_central(a)?,
            "relations_preserved": c.relations_preserved,
            "top_regularity": {
                "holds": c.top_regularity.holds,
                "exact": c.top_regularity.exact,
                "ambient": c.top_regularity.ambient,
                "quotient": c.top_regularity.quotient,
            },
        }),
        NormalOutcome::NotNormal { generator } => json!({ "generator": generator }),
        NormalOutcome::Inconclusive(why) => json!({ "reason": why }),
    };
    Ok(Certificate::new(
        "normal-check",
        &[("presentation", a.to_presentation()), ("element", f.to_string())],
        outcome.verdict().as_str(),
        evidence,
        a.bound(),
    ))
}

pub fn srns_certificate(s: &PresentedAlgebra, f: &FreePoly, g: &FreePoly) -> Result<Certificate, AlgebraError> {
    let c = srns_check(s, f, g)?;
    let stages: Vec<Value> = c
        .stages
        .iter()
        .map(|st| json!({ "name": st.name, "verdict": st.verdict.as_str(), "detail": st.detail }))
        .collect();
    let evidence = json!({
        "stages": stages,
        "dimension": c.dimension,
        "failing_stage": c.failing_stage().map(|st| st.name),
    });
    Ok(Certificate::new(
        "srns-check",
        &[("presentation", s.to_presentation()), ("f", c.f.to_string()), ("g", c.g.to_string())],
        c.verdict.as_str(),
        evidence,
        s.bound(),
    ))
}

pub fn frobenius_certificate(r: &SCAlgebra) -> Result<Certificate, FindimError> {
    let res = frobenius_check(r)?;
    let (verdict, evidence) = match &res {
        FrobeniusResult::Frobenius { functional, determinant } => (
            Verdict::Pass,
            json!({ "functional": functional.iter().map(ToString::to_string).collect::<Vec<_>>(), "determinant": determinant.to_string() }),
        ),
        FrobeniusResult::NotFrobenius { determinant } => (Verdict::Fail, json!({ "determinant": determinant.to_string() })),
    };
    Ok(Certificate::new("frobenius", &[("algebra", r.to_json().to_string())], verdict.as_str(), evidence, 0))
}

pub fn classify4_certificate(r: &SCAlgebra) -> Result<Certificate, FindimError> {
    let inputs = [("algebra", r.to_json().to_string())];
    match classify_frob4(r) {
        Ok(c) => Ok(Certificate::new(
            "classify4",
            &inputs,
            Verdict::Pass.as_str(),
            json!({
                "label": c.label.as_str(),
                "tag": c.tag(),
                "key": c.invariant_key(),
                "split": c.split,
                "commutative": c.commutative,
                "radical_dims": c.radical_dims,
                "center_dim": c.center_dim,
                "functional": c.functional.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            0,
        )),
        Err(FindimError::NotFrobenius) => {
            Ok(Certificate::new("classify4", &inputs, Verdict::Fail.as_str(), json!({ "reason": "not Frobenius" }), 0))
        }
        Err(e) => Err(e),
    }
}

/// Witness chain `from -> to` modulo the span of `h`.
pub fn st_certificate(
    field: &str,
    gens: &str,
    from: &[String],
    to: &[String],
    h: &[String],
    steps: &[StepSpec],
) -> Result<Certificate, AlgebraError> {
    let report = replay_chain(field, gens, from, to, h, steps)?;
    let verdict = if report.0 { Verdict::Pass } else { Verdict::Fail };
    let inputs = [
        ("field", field.to_string()),
        ("gens", gens.to_string()),
        ("from", serde_json::to_string(from).expect("strings")),
        ("to", serde_json::to_string(to).expect("strings")),
        ("h", serde_json::to_string(h).expect("strings")),
    ];
    let evidence = json!({ "steps": steps, "failed_step": report.1, "message": report.2 });
    Ok(Certificate::new("st-verify", &inputs, verdict.as_str(), evidence, 0))
}

pub(super) fn replay_chain(
    field: &str,
    gens: &str,
    from: &[String],
    to: &[String],
    h: &[String],
    steps: &[StepSpec],
) -> Result<(bool, Option<usize>, String), AlgebraError> {
    let field = parse_field(field)?;
    let alph = parse_alphabet(gens)?;
    let polys = |v: &[String]| v.iter().map(|s| FreePoly::parse(s, &alph, field)).collect::<Result<Vec<_>, _>>();
    let (f, t, hh) = (polys(from)?, polys(to)?, polys(h)?);
    let chain = steps.iter().map(|s| s.to_step(&alph, field)).collect::<Result<Vec<_>, _>>()?;
    let r = st_witness_verify(&f, &t, &hh, &chain)?;
    Ok((r.ok, r.failed_step, r.message))
}

/// `source` and `target` are recipes; the generators of `source` are its
/// basis elements in order and `images` are expressions in the target
/// presentation.
pub fn iso_certificate(source: &Construction, target: &Construction, images: &[String]) -> Result<Certificate, FindimError> {
    let (ok, failure) = run_iso(source, target, images)?;
    let inputs = [
        ("source", serde_json::to_string(source).expect("construction")),
        ("target", serde_json::to_string(target).expect("construction")),
        ("images", serde_json::to_string(images).expect("strings")),
    ];
    let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(Certificate::new("iso-verify", &inputs, verdict.as_str(), json!({ "failure": failure }), 0))
}

pub(super) fn run_iso(source: &Construction, target: &Construction, images: &[String]) -> Result<(bool, Option<String>), FindimError> {
    let bound = crate::grobner::DEFAULT_DEGREE_BOUND;
    let src = source.build(bound)?;
    let pres = target.presented(bound)?;
    let tgt = SCAlgebra::from_quotient(&pres)?;
    let gens: Vec<_> = (0..src.dim()).map(|i| src.basis_vec(i)).collect();
    let imgs = images
        .iter()
        .map(|s| tgt.element_of_quotient(&pres, &pres.parse(s)?))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = iso_verify(&src, &gens, &tgt, &imgs)?;
    Ok((rep.is_isomorphism(), rep.failure))
}

/// Weight-preserving linear part of a generator map; row `i` is `ν(x_i)`.
fn leading_linear_part(nu: &GeneratorMap) -> Matrix {
    let alph = nu.source();
    let n = alph.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if alph.weight(i) == alph.weight(j) {
                        nu.image(i).coeff(&alph.word(vec![j as u8]))
                    } else {
                        nu.field().zero()
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(nu.field(), n, rows)
}

fn verdict_of(ok: bool) -> &'static str {
    if ok {
        Verdict::Pass.as_str()
    } else {
        Verdict::Fail.as_str()
    }
}

/// Replays a certificate: checks the recorded evidence directly where it
/// suffices (cofactor identities, a nondegenerate functional, a witness chain)
/// and otherwise reruns the operation. Returns whether the recorded verdict
/// is confirmed.
pub fn verify_certificate(c: &Certificate) -> Result<bool, CertificateError> {
    match c.kind.as_str() {
        "normal-check" => {
            let a = parse_presentation(c.input("presentation")?, c.degree_bound)?;
            let f = a.parse(c.input("element")?)?;
            if c.verdict == Verdict::Pass.as_str() {
                let imgs = strings(&c.evidence["nu"])?;
                let refs: Vec<&str> = imgs.iter().map(String::as_str).collect();
                let nu = GeneratorMap::parse(a.alphabet(), a.field(), &refs).map_err(AlgebraError::from)?;
                for i in 0..a.alphabet().len() {
                    let x = a.letter(i);
                    let r = x.mul(&f).sub(&f.mul(nu.image(i)));
                    if !a.is_zero(&r)? {
                        return Ok(false);
                    }
                }
                Ok(!leading_linear_part(&nu).det().is_zero())
            } else {
                Ok(normal_check(&a, &f)?.verdict().as_str() == c.verdict)
            }
        }
        "srns-check" => {
            let s = parse_presentation(c.input("presentation")?, c.degree_bound)?;
            let fresh = srns_certificate(&s, &s.parse(c.input("f")?)?, &s.parse(c.input("g")?)?)?;
            Ok(fresh.verdict == c.verdict && fresh.evidence["stages"] == c.evidence["stages"])
        }
        "frobenius" => {
            let v: Value = serde_json::from_str(c.input("algebra")?).map_err(|e| CertificateError::Malformed(e.to_string()))?;
            let r = SCAlgebra::from_json(&v)?;
            if c.verdict == Verdict::Pass.as_str() {
                let mu = strings(&c.evidence["functional"])?
                    .iter()
                    .map(|s| crate::field::Scalar::parse(s, r.field()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CertificateError::Malformed(e.to_string()))?;
                let n = r.dim();
                let rows = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                r.constants()[i][j].iter().zip(&mu).fold(r.field().zero(), |acc, (a, b)| &acc + &(a * b))
                            })
                            .collect()
                    })
                    .collect();
                Ok(!Matrix::from_rows(r.field(), n, rows).det().is_zero())
            } else {
                Ok(!frobenius_check(&r)?.is_frobenius())
            }
        }
        "classify4" => {
            let v: Value = serde_json::from_str(c.input("algebra")?).map_err(|e| CertificateError::Malformed(e.to_string()))?;
            let fresh = classify4_certificate(&SCAlgebra::from_json(&v)?)?;
            Ok(fresh.verdict == c.verdict && fresh.evidence["tag"] == c.evidence["tag"])
        }
        "st-verify" => {
            let list = |k: &str| -> Result<Vec<String>, CertificateError> {
                serde_json::from_str(c.input(k)?).map_err(|e| CertificateError::Malformed(e.to_string()))
            };
            let steps: Vec<StepSpec> =
                serde_json::from_value(c.evidence["steps"].clone()).map_err(|e| CertificateError::Malformed(e.to_string()))?;
            let (ok, _, _) = replay_chain(c.input("field")?, c.input("gens")?, &list("from")?, &list("to")?, &list("h")?, &steps)?;
            Ok(verdict_of(ok) == c.verdict)
        }
        "iso-verify" => {
            let parse = |k: &str| -> Result<Construction, CertificateError> {
                serde_json::from_str(c.input(k)?).map_err(|e| CertificateError::Malformed(e.to_string()))
            };
            let images: Vec<String> =
                serde_json::from_str(c.input("images")?).map_err(|e| CertificateError::Malformed(e.to_string()))?;
            let (ok, _) = run_iso(&parse("source")?, &parse("target")?, &images)?;
            Ok(verdict_of(ok) == c.verdict)
        }
        other => Err(CertificateError::Malformed(format!("unknown certificate kind `{other}`"))),
    }
}

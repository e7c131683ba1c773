use std::io::Read;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use pencil_core::algebra::{
    classify_relation, clifford_c, clifford_pair, dehomogenized_algebra, dual_hilbert_check, find_regular_linear,
    homogenized_algebra, is_qpa2, quadratic_dual,
};
use pencil_core::findim::{idempotent_decompose, radical_powers, center, FindimError};
use pencil_core::io::{
    classify4_certificate, frobenius_certificate, iso_certificate, normal_certificate, parse_alphabet, parse_field,
    parse_presentation_over, reproduce_table, srns_certificate, st_certificate, verify_certificate, Certificate,
    CertificateError, Construction, PresentationError, StepSpec,
};
use pencil_core::normality::{exhaustive_normal_search, st_obstruction, Obstruction};
use pencil_core::{
    classify_frob4, normal_check, AlgebraError, Field, FreePoly, GrobnerError, NormalOutcome, PresentedAlgebra, SCAlgebra,
};

use crate::{Command, Ctx, Output};

/// Input that cannot be read or parsed; exits with the usage code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| InputError(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    Ok(std::fs::read_to_string(path).map_err(|e| InputError(format!("reading {path}: {e}")))?)
}

fn override_field(ctx: &Ctx) -> Result<Option<Field>> {
    ctx.field
        .as_deref()
        .map(|f| Field::parse(f).map_err(|e| InputError(format!("--field: {e}")).into()))
        .transpose()
}

fn presentation(ctx: &Ctx, path: &str) -> Result<PresentedAlgebra> {
    let text = read_input(path)?;
    parse_presentation_over(&text, ctx.bound, override_field(ctx)?).map_err(|e| InputError(format!("{path}: {e}")).into())
}

fn element(a: &PresentedAlgebra, text: &str) -> Result<FreePoly> {
    a.parse(text).map_err(|e| InputError(format!("`{text}`: {e}")).into())
}

fn json_file<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = read_input(path)?;
    Ok(serde_json::from_str(&text).map_err(|e| InputError(format!("{path}: {e}")))?)
}

/// A finite-dimensional algebra from a presentation file, a construction
/// recipe (JSON with `kind`) or structure constants (JSON).
fn findim_input(ctx: &Ctx, path: &str) -> Result<SCAlgebra> {
    let text = read_input(path)?;
    if !text.trim_start().starts_with('{') {
        let a = parse_presentation_over(&text, ctx.bound, override_field(ctx)?).map_err(|e| InputError(format!("{path}: {e}")))?;
        return Ok(SCAlgebra::from_quotient(&a)?);
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("{path}: {e}")))?;
    if v.get("kind").is_some() {
        let c: Construction = serde_json::from_value(v).map_err(|e| InputError(format!("{path}: {e}")))?;
        Ok(c.build(ctx.bound)?)
    } else {
        Ok(SCAlgebra::from_json(&v)?)
    }
}

fn certificate(ctx: &Ctx, mut c: Certificate) -> Output {
    c.seed = ctx.seed;
    c.degree_bound = ctx.bound;
    let code = verdict_code(&c.verdict);
    Output { json: serde_json::to_value(&c).expect("certificate"), text: c.to_text(), code }
}

fn verdict_code(v: &str) -> u8 {
    match v {
        "pass" => 0,
        "fail" => 1,
        _ => 3,
    }
}

fn lines<I: IntoIterator<Item = S>, S: std::fmt::Display>(items: I) -> String {
    items.into_iter().map(|s| format!("  {s}\n")).collect()
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Exit code for a failed command: 2 for unusable input, 3 when the degree
/// bound or a search limit stopped the computation, 1 for refusals.
pub fn error_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<InputError>() || cause.is::<PresentationError>() {
            return 2;
        }
        if let Some(GrobnerError::Inconclusive { .. } | GrobnerError::Incomplete) = cause.downcast_ref::<GrobnerError>() {
            return 3;
        }
        match cause.downcast_ref::<AlgebraError>() {
            Some(AlgebraError::Parse(_) | AlgebraError::Invalid(_)) => return 2,
            Some(AlgebraError::Exhausted(_)) => return 3,
            Some(AlgebraError::Grobner(GrobnerError::Inconclusive { .. } | GrobnerError::Incomplete)) => return 3,
            _ => {}
        }
        match cause.downcast_ref::<FindimError>() {
            Some(FindimError::Infinite) => return 3,
            Some(FindimError::Invalid(_)) => return 2,
            Some(FindimError::Algebra(AlgebraError::Grobner(GrobnerError::Inconclusive { .. } | GrobnerError::Incomplete))) => {
                return 3
            }
            _ => {}
        }
        if let Some(CertificateError::Malformed(_)) = cause.downcast_ref::<CertificateError>() {
            return 2;
        }
    }
    1
}

pub fn run(ctx: &Ctx, cmd: Command) -> Result<Output> {
    match cmd {
        Command::Parse { file } => parse(ctx, &file),
        Command::Gb { file } => gb(ctx, &file),
        Command::Hilbert { file, degrees } => hilbert(ctx, &file, degrees),
        Command::ClassifyRel { file } => classify_rel(ctx, &file),
        Command::Dual { file } => dual(ctx, &file),
        Command::Clifford { file, element, pencil } => clifford(ctx, &file, element, pencil),
        Command::NormalCheck { file, element: e } => {
            let a = presentation(ctx, &file)?;
            let f = element(&a, &e)?;
            Ok(certificate(ctx, normal_certificate(&a, &f)?))
        }
        Command::Nu { file, element: e } => nu(ctx, &file, &e),
        Command::NormalSearch { file, degree, inhomogeneous } => normal_search(ctx, &file, degree, inhomogeneous),
        Command::SrnsCheck { file, f, g } => {
            let a = presentation(ctx, &file)?;
            let (f, g) = (element(&a, &f)?, element(&a, &g)?);
            Ok(certificate(ctx, srns_certificate(&a, &f, &g)?))
        }
        Command::StVerify { chain } => st_verify(ctx, &chain),
        Command::Homogenize { file } => homogenize(ctx, &file),
        Command::Dehomogenize { file, at } => dehomogenize(ctx, &file, at),
        Command::Findim { file } => findim(ctx, &file),
        Command::Frobenius { file } => Ok(certificate(ctx, frobenius_certificate(&findim_input(ctx, &file)?)?)),
        Command::Classify4 { file } => Ok(certificate(ctx, classify4_certificate(&findim_input(ctx, &file)?)?)),
        Command::IsoVerify { file } => {
            #[derive(serde::Deserialize)]
            struct IsoFile {
                source: Construction,
                target: Construction,
                images: Vec<String>,
            }
            let iso: IsoFile = json_file(&file)?;
            Ok(certificate(ctx, iso_certificate(&iso.source, &iso.target, &iso.images)?))
        }
        Command::Reproduce { table } => reproduce(ctx, table),
        Command::Verify { certificate: path } => {
            let c = Certificate::from_json(&read_input(&path)?).map_err(|e| InputError(format!("{path}: {e}")))?;
            let ok = verify_certificate(&c)?;
            let word = if ok { "confirmed" } else { "rejected" };
            Ok(Output {
                json: json!({ "kind": c.kind, "verdict": c.verdict, "replay": word }),
                text: format!("{} certificate with verdict {}: {word}\n", c.kind, c.verdict),
                code: if ok { 0 } else { 1 },
            })
        }
    }
}

fn describe(a: &PresentedAlgebra) -> Value {
    let gens: Vec<Value> = a.alphabet().letters().iter().map(|(n, w)| json!({ "name": n, "weight": w })).collect();
    json!({
        "field": a.field().to_string(),
        "gens": gens,
        "graded": a.is_graded(),
        "relations": strings(a.relations()),
    })
}

fn parse(ctx: &Ctx, file: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let mut json = describe(&a);
    json["presentation"] = json!(a.to_presentation());
    Ok(Output { json, text: a.to_presentation(), code: 0 })
}

fn hilbert_json(coeffs: &[u64], rational: Option<String>) -> Value {
    json!({ "coefficients": coeffs, "rational": rational })
}

fn gb(ctx: &Ctx, file: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let g = a.gb();
    let h = g.hilbert_truncated(ctx.bound)?;
    let rational = h.rational.as_ref().map(ToString::to_string);
    let basis = strings(g.generators());
    let mut text = format!("Groebner basis ({} elements, {}):\n", basis.len(), if g.is_complete() { "complete" } else { "truncated" });
    text.push_str(&lines(&basis));
    text.push_str(&format!("Hilbert coefficients to degree {}: {:?}\n", ctx.bound, h.coeffs));
    if let Some(r) = &rational {
        text.push_str(&format!("Hilbert series: {r}\n"));
    }
    let json = json!({
        "basis": basis,
        "complete": g.is_complete(),
        "degree_bound": ctx.bound,
        "hilbert": hilbert_json(&h.coeffs, rational),
    });
    Ok(Output { json, text, code: if g.is_complete() { 0 } else { 3 } })
}

fn hilbert(ctx: &Ctx, file: &str, degrees: Option<u32>) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let d = degrees.unwrap_or(ctx.bound);
    let h = a.hilbert(d)?;
    let rational = h.rational.as_ref().map(ToString::to_string);
    let mut text = format!("{:?}\n", h.coeffs);
    if let Some(r) = &rational {
        text.push_str(&format!("{r}\n"));
    }
    Ok(Output { json: hilbert_json(&h.coeffs, rational), text, code: 0 })
}

fn single_relation(a: &PresentedAlgebra) -> Result<&FreePoly> {
    match a.relations() {
        [h] => Ok(h),
        rels => bail!(InputError(format!("expected exactly one relation, found {}", rels.len()))),
    }
}

fn classify_rel(ctx: &Ctx, file: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let h = single_relation(&a)?;
    let c = classify_relation(h)?;
    let qpa = is_qpa2(h)?;
    let json = json!({
        "relation": h.to_string(),
        "class": c.tag(),
        "label": c.label.to_string(),
        "lambda": c.lambda.as_ref().map(ToString::to_string),
        "quantum_plane": qpa,
    });
    let text = format!("{h}: {c}\nquantum polynomial algebra: {qpa}\n");
    Ok(Output { json, text, code: 0 })
}

fn dual(ctx: &Ctx, file: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let d = quadratic_dual(&a)?;
    let h = d.gb().hilbert_truncated(ctx.bound)?;
    let identity = dual_hilbert_check(&a, ctx.bound)?;
    let json = json!({
        "dual": describe(&d),
        "presentation": d.to_presentation(),
        "hilbert": hilbert_json(&h.coeffs, h.rational.as_ref().map(ToString::to_string)),
        "dual_hilbert_identity": identity,
    });
    let text = format!(
        "{}Hilbert coefficients of the dual: {:?}\nH_(A^!)(t) H_A(-t) = 1 to degree {}: {identity}\n",
        d.to_presentation(),
        h.coeffs,
        ctx.bound
    );
    Ok(Output { json, text, code: 0 })
}

fn label_of(r: &SCAlgebra) -> Option<String> {
    classify_frob4(r).ok().map(|c| c.tag())
}

fn clifford(ctx: &Ctx, file: &str, element_text: Option<String>, pencil: Option<String>) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let (s, f) = match (element_text, pencil) {
        (Some(e), None) => {
            let f = element(&a, &e)?;
            (a, f)
        }
        (None, Some(q)) => {
            let q = element(&a, &q)?;
            clifford_pair(&a, &q)?
        }
        _ => bail!(InputError("give exactly one of --element or --pencil".into())),
    };
    let c = clifford_c(&s, &f)?;
    let label = label_of(&c.algebra);
    let json = json!({
        "s": s.to_presentation(),
        "f": f.to_string(),
        "f_shriek": c.f_shriek.to_string(),
        "nu": c.nu.display_images(),
        "algebra": c.algebra.to_json(),
        "label": label,
    });
    let text = format!(
        "S = {}\nf = {f}\nf^! = {}\n{}label: {}\n",
        s.to_presentation().trim_end().replace('\n', "; "),
        c.f_shriek,
        c.algebra,
        label.as_deref().unwrap_or("none")
    );
    Ok(Output { json, text, code: 0 })
}

fn nu(ctx: &Ctx, file: &str, e: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let f = element(&a, e)?;
    match normal_check(&a, &f)? {
        NormalOutcome::Normal(c) => {
            let central = c.is_central(&a)?;
            let m = c.linear_matrix();
            let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| strings(m.row(i))).collect();
            let names: Vec<String> = a.alphabet().letters().iter().map(|(n, _)| n.clone()).collect();
            let images = c.nu.display_images();
            let mut text = String::new();
            for (n, img) in names.iter().zip(&images) {
                text.push_str(&format!("nu({n}) = {img}\n"));
            }
            text.push_str(&format!("central: {central}\n"));
            let json = json!({ "element": c.element.to_string(), "nu": images, "matrix": rows, "central": central });
            Ok(Output { json, text, code: 0 })
        }
        NormalOutcome::NotNormal { generator } => Ok(Output {
            json: json!({ "element": f.to_string(), "normal": false, "generator": generator }),
            text: format!("not normal: no cofactor for {generator}\n"),
            code: 1,
        }),
        NormalOutcome::Inconclusive(why) => Ok(Output {
            json: json!({ "element": f.to_string(), "inconclusive": why }),
            text: format!("inconclusive: {why}\n"),
            code: 3,
        }),
    }
}

fn normal_search(ctx: &Ctx, file: &str, degree: u32, inhomogeneous: bool) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let hits = exhaustive_normal_search(&a, degree, inhomogeneous)?;
    let mut text = format!("{} normal elements of degree {degree} over {} up to scalar\n", hits.len(), a.field());
    let mut out = Vec::new();
    for h in &hits {
        let lower = strings(&h.lower_terms);
        text.push_str(&format!("  {}    nu = ({})", h.element, h.nu.display_images().join(", ")));
        if inhomogeneous {
            text.push_str(&format!("    lower terms: [{}]", lower.join(", ")));
        }
        text.push('\n');
        out.push(json!({ "element": h.element.to_string(), "nu": h.nu.display_images(), "lower_terms": lower }));
    }
    Ok(Output { json: json!({ "field": a.field().to_string(), "degree": degree, "elements": out }), text, code: 0 })
}

#[derive(serde::Deserialize)]
struct ChainFile {
    field: String,
    #[serde(default = "default_gens")]
    gens: String,
    from: Vec<String>,
    to: Vec<String>,
    #[serde(default)]
    h: Vec<String>,
    steps: Option<Vec<StepSpec>>,
}

fn default_gens() -> String {
    "x y".into()
}

fn obstruction_text(o: &Obstruction) -> String {
    match o {
        Obstruction::DegreePattern { left, right } => format!("degree patterns differ: {left:?} vs {right:?}"),
        Obstruction::Dimension { left, right } => format!("quotient dimensions differ: {left:?} vs {right:?}"),
        Obstruction::QuotientLabel { left, right } => format!("quotient labels differ: {left} vs {right}"),
    }
}

fn st_verify(ctx: &Ctx, path: &str) -> Result<Output> {
    let c: ChainFile = json_file(path)?;
    if let Some(steps) = &c.steps {
        return Ok(certificate(ctx, st_certificate(&c.field, &c.gens, &c.from, &c.to, &c.h, steps)?));
    }
    let field = parse_field(&c.field)?;
    let alph = parse_alphabet(&c.gens)?;
    let polys = |v: &[String]| v.iter().map(|s| FreePoly::parse(s, &alph, field)).collect::<Result<Vec<_>, _>>();
    let obs = st_obstruction(&polys(&c.from)?, &polys(&c.to)?, &polys(&c.h)?)?;
    let reasons: Vec<String> = obs.iter().map(obstruction_text).collect();
    let (verdict, code) = if reasons.is_empty() { ("inconclusive", 3) } else { ("not st-equivalent", 1) };
    let mut text = format!("{verdict}\n");
    text.push_str(&lines(&reasons));
    Ok(Output { json: json!({ "verdict": verdict, "obstructions": reasons }), text, code })
}

fn homogenize(ctx: &Ctx, file: &str) -> Result<Output> {
    let a = presentation(ctx, file)?;
    let b = homogenized_algebra(a.relations(), ctx.bound)?;
    let h = b.hilbert_rational().ok().map(|r| r.to_string());
    let mut text = b.to_presentation();
    if let Some(r) = &h {
        text.push_str(&format!("# Hilbert series {r}\n"));
    }
    Ok(Output { json: json!({ "presentation": b.to_presentation(), "algebra": describe(&b), "hilbert": h }), text, code: 0 })
}

fn dehomogenize(ctx: &Ctx, file: &str, at: Option<String>) -> Result<Output> {
    let b = presentation(ctx, file)?;
    let (z, tried) = match at {
        Some(t) => (element(&b, &t)?, None),
        None => {
            let r = find_regular_linear(&b, ctx.seed)?;
            (r.element, Some(r.tried))
        }
    };
    let d = dehomogenized_algebra(&b, &z)?;
    let label = match d.dimension() {
        Some(4) => SCAlgebra::from_quotient(&d).ok().and_then(|r| label_of(&r)),
        _ => None,
    };
    let mut text = format!("# at {z}\n{}", d.to_presentation());
    text.push_str(&format!("# dimension {}\n", d.dimension().map_or("infinite or unknown".into(), |n| n.to_string())));
    if let Some(l) = &label {
        text.push_str(&format!("# label {l}\n"));
    }
    let json = json!({
        "at": z.to_string(),
        "candidates_tried": tried,
        "presentation": d.to_presentation(),
        "dimension": d.dimension(),
        "label": label,
    });
    Ok(Output { json, text, code: 0 })
}

fn findim(ctx: &Ctx, file: &str) -> Result<Output> {
    let r = findim_input(ctx, file)?;
    let powers = radical_powers(&r)?;
    let rad_dims: Vec<usize> = powers.iter().map(Vec::len).collect();
    let z = center(&r).len();
    let blocks = idempotent_decompose(&r)?;
    let mut text = format!("{r}");
    text.push_str(&format!("commutative: {}\nradical powers: {rad_dims:?}\ncenter dimension: {z}\n", r.is_commutative()));
    let mut bj = Vec::new();
    for b in &blocks {
        let e = r.display_vec(&b.idempotent);
        text.push_str(&format!(
            "block at {e}: dim {}, residue degree {}, split {}\n",
            b.algebra.dim(),
            b.residue_degree,
            b.split
        ));
        bj.push(json!({ "idempotent": e, "dim": b.algebra.dim(), "residue_degree": b.residue_degree, "split": b.split }));
    }
    let label = if r.dim() == 4 { label_of(&r) } else { None };
    if let Some(l) = &label {
        text.push_str(&format!("label: {l}\n"));
    }
    let json = json!({
        "algebra": r.to_json(),
        "commutative": r.is_commutative(),
        "radical_dims": rad_dims,
        "center_dim": z,
        "blocks": bj,
        "label": label,
    });
    Ok(Output { json, text, code: 0 })
}

fn reproduce(ctx: &Ctx, table: Option<u32>) -> Result<Output> {
    let ids: Vec<u32> = match table {
        Some(t) => vec![t],
        None => (1..=5).collect(),
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for id in ids {
        let r = reproduce_table(id, ctx.bound).map_err(|e| InputError(e.to_string()))?;
        ok &= r.ok;
        text.push_str(&r.to_text());
        reports.push(serde_json::to_value(&r).expect("report"));
    }
    let json = if reports.len() == 1 { reports.pop().expect("one report") } else { json!({ "tables": reports, "ok": ok }) };
    Ok(Output { json, text, code: if ok { 0 } else { 1 } })
}

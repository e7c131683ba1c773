use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::certificate::{replay_chain, run_iso};
use super::{Construction, StepSpec};
use crate::algebra::{dual_hilbert_check, quadratic_dual, AlgebraError, PresentedAlgebra};
use crate::field::{Field, Scalar};
use crate::findim::{classify_frob4, frobenius_check, FindimError, SCAlgebra};
use crate::freealg::{Alphabet, FreePoly};
use crate::normality::{central_check, exhaustive_normal_search, normal_check, srns_check, NormalOutcome, Verdict};
use crate::series::RatFunc;

const GOLDEN: [&str; 5] = [
    include_str!("../../golden/table1.json"),
    include_str!("../../golden/table2.json"),
    include_str!("../../golden/table3.json"),
    include_str!("../../golden/table4.json"),
    include_str!("../../golden/table5.json"),
];

pub fn golden_text(table: u32) -> Option<&'static str> {
    GOLDEN.get((table as usize).checked_sub(1)?).copied()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: u32,
    pub caption: String,
    pub rows: Vec<RowReport>,
    pub ok: bool,
}

impl TableReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("Table {}: {}\n", self.table, self.caption);
        for r in &self.rows {
            let mark = if r.ok { "ok  " } else { "FAIL" };
            s.push_str(&format!("{mark} {}\n     expected: {}\n     computed: {}\n", r.id, r.expected, r.computed));
            for n in &r.notes {
                s.push_str(&format!("     note: {n}\n"));
            }
        }
        let passed = self.rows.iter().filter(|r| r.ok).count();
        s.push_str(&format!("{passed}/{} rows match\n", self.rows.len()));
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("no table {0}; tables are numbered 1 to 5")]
    Unknown(u32),
    #[error("golden data for table {0} is malformed: {1}")]
    Golden(u32, String),
}

#[derive(Debug, thiserror::Error)]
enum RowError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error("{0}")]
    Other(String),
}

type RowResult = Result<(String, bool, Vec<String>), RowError>;

fn row(id: String, expected: String, res: RowResult) -> RowReport {
    match res {
        Ok((computed, ok, notes)) => RowReport { id, expected, computed, ok, notes },
        Err(e) => RowReport { id, expected, computed: format!("error: {e}"), ok: false, notes: Vec::new() },
    }
}

/// Recomputes every row of a golden table and compares it with the stored
/// entries. Mismatches are reported per row rather than as errors.
pub fn reproduce_table(table: u32, bound: u32) -> Result<TableReport, TableError> {
    let text = golden_text(table).ok_or(TableError::Unknown(table))?;
    let golden = |e: serde_json::Error| TableError::Golden(table, e.to_string());
    let rows = match table {
        1 => table1(serde_json::from_str(text).map_err(golden)?, bound),
        2 => table2(serde_json::from_str(text).map_err(golden)?, bound),
        3 => table3(serde_json::from_str(text).map_err(golden)?, bound),
        4 => table4(serde_json::from_str(text).map_err(golden)?, bound),
        _ => table5(serde_json::from_str(text).map_err(golden)?, bound),
    };
    let caption: Value = serde_json::from_str(text).map_err(golden)?;
    let caption = caption["caption"].as_str().unwrap_or_default().to_string();
    let ok = rows.iter().all(|r| r.ok);
    Ok(TableReport { table, caption, rows, ok })
}

/// Expands a row with parameter samples into `(suffix, substituted text)`
/// instances; every sample list is zipped by position.
fn instances(texts: &[&str], samples: &BTreeMap<String, Vec<String>>) -> Vec<(String, Vec<String>)> {
    if samples.is_empty() {
        return vec![(String::new(), texts.iter().map(|s| s.to_string()).collect())];
    }
    let n = samples.values().map(Vec::len).min().unwrap_or(0);
    (0..n)
        .map(|i| {
            let mut out: Vec<String> = texts.iter().map(|s| s.to_string()).collect();
            let mut tag = Vec::new();
            for (name, vals) in samples {
                for t in &mut out {
                    *t = t.replace(name.as_str(), &vals[i]);
                }
                tag.push(format!("{name}={}", vals[i]));
            }
            (format!(" ({})", tag.join(", ")), out)
        })
        .collect()
}

fn xy(field: Field, relations: &[&str], bound: u32) -> Result<PresentedAlgebra, AlgebraError> {
    PresentedAlgebra::from_strs(&Alphabet::uniform(&["x", "y"]), field, relations, bound)
}

#[derive(Deserialize)]
struct T1 {
    rows: Vec<T1Row>,
}

#[derive(Deserialize)]
struct T1Row {
    name: String,
    relation: String,
    #[serde(default)]
    samples: BTreeMap<String, Vec<String>>,
    noetherian: bool,
    gldim: String,
    hilbert: String,
    gorenstein: bool,
    koszul: bool,
}

fn table1(t: T1, bound: u32) -> Vec<RowReport> {
    const DEGREES: u32 = 10;
    let mut out = Vec::new();
    for r in &t.rows {
        for (suffix, texts) in instances(&[&r.relation], &r.samples) {
            let expected = format!("H = {}, Koszul {}, Gorenstein {}", r.hilbert, r.koszul, r.gorenstein);
            let res = (|| -> RowResult {
                let a = xy(Field::Rationals, &[&texts[0]], bound)?;
                let series = RatFunc::parse(&r.hilbert).map_err(|e| RowError::Other(e.to_string()))?;
                let want = series.expand_integers(DEGREES as usize).ok_or_else(|| RowError::Other("non-integer series".into()))?;
                let got = a.hilbert(DEGREES)?.coeffs;
                let hilbert_ok = got.iter().map(|&c| c as i64).eq(want.iter().copied());
                let koszul = dual_hilbert_check(&a, DEGREES)?;
                let dual = quadratic_dual(&a)?;
                let gorenstein = match dual.dimension() {
                    Some(_) => frobenius_check(&SCAlgebra::from_quotient(&dual)?)?.is_frobenius(),
                    None => false,
                };
                let shown = got.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                let computed = format!("H = [{shown}], Koszul {koszul}, Gorenstein {gorenstein}");
                let notes = vec![format!(
                    "noetherian {} and gldim {} are recorded, not recomputed",
                    r.noetherian, r.gldim
                )];
                Ok((computed, hilbert_ok && koszul == r.koszul && gorenstein == r.gorenstein, notes))
            })();
            out.push(row(format!("{}{suffix}", r.name), expected, res));
        }
    }
    out
}

#[derive(Deserialize)]
struct T2 {
    rows: Vec<T2Row>,
    search_primes: Vec<u64>,
}

#[derive(Deserialize)]
struct T2Row {
    name: String,
    relation: String,
    #[serde(default)]
    samples: BTreeMap<String, Vec<String>>,
    elements: Vec<String>,
    search: BTreeMap<String, Vec<Template>>,
}

#[derive(Deserialize, Clone)]
struct Template {
    template: String,
    lower_dim: usize,
}

const TEMPLATE_PARAMS: [&str; 3] = ["a", "b", "c"];

fn template_params(t: &str) -> Vec<&'static str> {
    let idents: BTreeSet<&str> = t.split(|c: char| !c.is_ascii_alphanumeric()).collect();
    TEMPLATE_PARAMS.iter().copied().filter(|p| idents.contains(p)).collect()
}

/// Projective coordinates (first nonzero entry 1) of every instance of the
/// templates over a prime field, tagged with the expected lower-term dimension.
fn expand_templates(a: &PresentedAlgebra, d: u32, temps: &[Template]) -> Result<BTreeMap<Vec<String>, usize>, AlgebraError> {
    let field = a.field();
    let elems = field.elements().expect("prime field");
    let basis = a.normal_words(d)?;
    let mut out = BTreeMap::new();
    for t in temps {
        let params = template_params(&t.template);
        let total = elems.len().pow(params.len() as u32);
        for mut k in 0..total {
            let mut text = t.template.clone();
            for p in &params {
                let v = &elems[k % elems.len()];
                k /= elems.len();
                text = replace_ident(&text, p, &format!("({v})"));
            }
            let f = a.reduce(&a.parse(&text)?)?;
            if f.is_zero() {
                continue;
            }
            let Some(v) = f.coords(&basis) else {
                return Err(AlgebraError::Invalid(format!("template `{}` is not homogeneous of weight {d}", t.template)));
            };
            out.insert(projective(v), t.lower_dim);
        }
    }
    Ok(out)
}

fn replace_ident(text: &str, name: &str, with: &str) -> String {
    let mut out = String::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() {
            cur.push(ch);
        } else {
            out.push_str(if cur == name { with } else { &cur });
            cur.clear();
            out.push(ch);
        }
    }
    out.pop();
    out
}

/// Coordinates scaled so the first nonzero one is 1, as display strings.
fn projective(v: Vec<Scalar>) -> Vec<String> {
    let inv = v.iter().find(|c| !c.is_zero()).map(|c| c.inv().expect("nonzero"));
    v.iter().map(|c| inv.as_ref().map_or(c.clone(), |i| c * i).to_string()).collect()
}

fn table2(t: T2, bound: u32) -> Vec<RowReport> {
    let mut out = Vec::new();
    for r in &t.rows {
        for (suffix, texts) in instances(&[&r.relation], &r.samples) {
            let expected = format!("regular normal: {}", r.elements.join(", "));
            let res = (|| -> RowResult {
                let a = xy(Field::Rationals, &[&texts[0]], bound)?;
                let mut ok = true;
                let mut shown = Vec::new();
                for e in &r.elements {
                    let f = a.parse(e)?;
                    let verdict = match normal_check(&a, &f)? {
                        NormalOutcome::Normal(c) if c.top_regularity.holds => "regular normal".to_string(),
                        NormalOutcome::Normal(_) => {
                            ok = false;
                            "normal, not regular".to_string()
                        }
                        other => {
                            ok = false;
                            other.verdict().as_str().to_string()
                        }
                    };
                    shown.push(format!("{e}: {verdict}"));
                }
                let mut notes = Vec::new();
                for &p in &t.search_primes {
                    let ap = xy(Field::Prime(p), &[&texts[0]], bound)?;
                    for (key, temps) in &r.search {
                        let d: u32 = key.trim_start_matches("degree").parse().map_err(|_| RowError::Other(format!("bad search key `{key}`")))?;
                        let want = expand_templates(&ap, d, temps)?;
                        let basis = ap.normal_words(d)?;
                        let hits = exhaustive_normal_search(&ap, d, true)?;
                        let got: BTreeMap<Vec<String>, usize> = hits
                            .iter()
                            .map(|h| (projective(h.element.coords(&basis).expect("homogeneous hit")), h.lower_terms.len()))
                            .collect();
                        let matched = got == want;
                        ok &= matched;
                        notes.push(format!(
                            "F_{p} weight {d}: {} normal elements up to scalar, templates give {}{}",
                            got.len(),
                            want.len(),
                            if matched { "" } else { " (MISMATCH)" }
                        ));
                    }
                }
                Ok((shown.join("; "), ok, notes))
            })();
            out.push(row(format!("{}{suffix}", r.name), expected, res));
        }
    }
    out
}

#[derive(Deserialize)]
struct T3 {
    rows: Vec<T3Row>,
    counterexamples: Vec<Counterexample>,
    st_chains: Vec<Chain>,
}

#[derive(Deserialize)]
struct T3Row {
    name: String,
    relation: String,
    f: String,
    g: Option<String>,
    sample_g: Option<String>,
    #[serde(default)]
    samples: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Counterexample {
    FailsAt { relation: String, f: String, g: String, stage: String, top_sequence: String },
    Order { relation: String, f: String, g: String },
    Sum { relation: String, quotient: String, elements: Vec<String> },
}

#[derive(Deserialize)]
struct Chain {
    name: String,
    field: String,
    from: Vec<String>,
    to: Vec<String>,
    #[serde(default)]
    h: Vec<String>,
    steps: Vec<StepSpec>,
}

fn srns_summary(s: &PresentedAlgebra, f: &str, g: &str) -> Result<(Verdict, Option<u64>, Option<&'static str>), RowError> {
    let c = srns_check(s, &s.parse(f)?, &s.parse(g)?)?;
    Ok((c.verdict, c.dimension, c.failing_stage().map(|st| st.name)))
}

fn table3(t: T3, bound: u32) -> Vec<RowReport> {
    let mut out = Vec::new();
    for r in &t.rows {
        let g_text = r.g.clone().or_else(|| r.sample_g.clone()).unwrap_or_default();
        for (suffix, texts) in instances(&[&r.relation, &r.f, &g_text], &r.samples) {
            let expected = match &r.g {
                Some(_) => format!("({}, {}) regular normal, dim 4", texts[1], texts[2]),
                None => format!("S/({}) commutative; ({}, {}) regular normal, dim 4", texts[1], texts[1], texts[2]),
            };
            let res = (|| -> RowResult {
                let s = xy(Field::Rationals, &[&texts[0]], bound)?;
                let (v, dim, stage) = srns_summary(&s, &texts[1], &texts[2])?;
                let mut ok = v == Verdict::Pass && dim == Some(4);
                let mut computed = match stage {
                    Some(st) => format!("{} at {st}", v.as_str()),
                    None => format!("{}, dim {}", v.as_str(), dim.map_or("inf".into(), |d| d.to_string())),
                };
                let mut notes = Vec::new();
                if r.g.is_none() {
                    let comm = s.quotient(&[s.parse(&texts[1])?])?.is_commutative()?;
                    ok &= comm;
                    computed = format!("S/(f) commutative {comm}; {computed}");
                    notes.push(format!("sample g = {}", texts[2]));
                }
                Ok((computed, ok, notes))
            })();
            out.push(row(format!("{}{suffix}", r.name), expected, res));
        }
    }
    for (i, c) in t.counterexamples.iter().enumerate() {
        let id = format!("counterexample {}", i + 1);
        match c {
            Counterexample::FailsAt { relation, f, g, stage, top_sequence } => {
                let expected = format!("({f}, {g}) refused at {stage}; top sequence {top_sequence}");
                let res = (|| -> RowResult {
                    let s = xy(Field::Rationals, &[relation], bound)?;
                    let (v, _, st) = srns_summary(&s, f, g)?;
                    let gt = s.parse(g)?;
                    let top = gt.top_part().map_err(AlgebraError::from)?.to_string();
                    let (tv, _, _) = srns_summary(&s, f, &top)?;
                    let computed = format!("{} at {}; top ({f}, {top}) {}", v.as_str(), st.unwrap_or("-"), tv.as_str());
                    Ok((computed, v == Verdict::Fail && st == Some(stage.as_str()) && tv.as_str() == top_sequence, vec![]))
                })();
                out.push(row(id, expected, res));
            }
            Counterexample::Order { relation, f, g } => {
                let expected = format!("({f}, {g}) pass, ({g}, {f}) fail");
                let res = (|| -> RowResult {
                    let s = xy(Field::Rationals, &[relation], bound)?;
                    let (v1, _, _) = srns_summary(&s, f, g)?;
                    let (v2, _, st) = srns_summary(&s, g, f)?;
                    let computed = format!("{}, {} at {}", v1.as_str(), v2.as_str(), st.unwrap_or("-"));
                    Ok((computed, v1 == Verdict::Pass && v2 == Verdict::Fail, vec![]))
                })();
                out.push(row(id, expected, res));
            }
            Counterexample::Sum { relation, quotient, elements } => {
                let expected = format!(
                    "in S/({quotient}): {} regular normal, non-central, distinct automorphisms; their sum central",
                    elements.join(" and ")
                );
                let res = (|| -> RowResult {
                    let s = xy(Field::Rationals, &[relation], bound)?;
                    let q = s.quotient(&[s.parse(quotient)?])?;
                    let mut ok = true;
                    let mut navs = Vec::new();
                    let mut sum = FreePoly::zero(q.alphabet(), q.field());
                    for e in elements {
                        let f = q.parse(e)?;
                        sum = sum.add(&f);
                        match normal_check(&q, &f)? {
                            NormalOutcome::Normal(c) => {
                                ok &= c.top_regularity.holds && !c.is_central(&q)?;
                                let imgs = c.nu.images().iter().map(|p| q.reduce(p)).collect::<Result<Vec<_>, _>>()?;
                                navs.push(imgs);
                            }
                            _ => ok = false,
                        }
                    }
                    let distinct = navs.len() == 2 && navs[0] != navs[1];
                    let central = central_check(&q, &sum)?;
                    let computed = format!("distinct automorphisms {distinct}; sum {sum} central {central}");
                    Ok((computed, ok && distinct && central, vec![]))
                })();
                out.push(row(id, expected, res));
            }
        }
    }
    for c in &t.st_chains {
        let expected = format!("{} -> {} over {}", c.from.join(", "), c.to.join(", "), c.field);
        let res = (|| -> RowResult {
            let (ok, failed, msg) = replay_chain(&c.field, "x y", &c.from, &c.to, &c.h, &c.steps)?;
            let computed = match failed {
                Some(i) => format!("chain fails at step {}: {msg}", i + 1),
                None if ok => format!("chain of {} step(s) verified", c.steps.len()),
                None => msg,
            };
            Ok((computed, ok, vec![]))
        })();
        out.push(row(format!("t-equivalence {}", c.name), expected, res));
    }
    out
}

#[derive(Deserialize)]
struct T4 {
    rows: Vec<LabelRow>,
    same_label: Vec<Construction>,
    refused: Vec<Refused>,
}

#[derive(Deserialize)]
struct LabelRow {
    label: String,
    construction: Construction,
    key: Option<String>,
    printed: Option<Vec<String>>,
    note: Option<String>,
}

#[derive(Deserialize)]
struct Refused {
    name: String,
    construction: Construction,
}

fn describe(c: &Construction) -> String {
    match c {
        Construction::Presentation { field, gens, commutative, relations } => {
            let gens = gens.split_whitespace().map(|g| g.split(':').next().unwrap_or(g)).collect::<Vec<_>>().join(",");
            let bracket = if *commutative { ("[", "]") } else { ("<", ">") };
            format!("{field}{}{gens}{}/({})", bracket.0, bracket.1, relations.join(", "))
        }
        Construction::Quiver { field, vertices, arrows, relations } => {
            let arr = arrows.iter().map(|(n, s, t)| format!("{n}:{}->{}", s + 1, t + 1)).collect::<Vec<_>>().join(", ");
            let rel = relations.iter().map(|p| p.join("")).collect::<Vec<_>>().join(", ");
            format!("{field} quiver on {vertices} vertices [{arr}] / ({rel})")
        }
        Construction::Matrix { field, n } => format!("M_{n}({field})"),
        Construction::Product { factors } => factors.iter().map(describe).collect::<Vec<_>>().join(" x "),
    }
}

/// Classifies one labelled row; returns the computed tag and whether it
/// matches the stored label and key.
fn label_row(r: &LabelRow, bound: u32) -> Result<(String, bool), RowError> {
    let alg = r.construction.build(bound)?;
    let frob = frobenius_check(&alg)?.is_frobenius();
    if !frob {
        return Ok(("not Frobenius".into(), false));
    }
    let c = classify_frob4(&alg)?;
    let mut ok = c.label.as_str() == r.label && c.split != Some(false);
    if let Some(k) = &r.key {
        ok &= c.invariant_key().as_deref() == Some(k.as_str());
    }
    Ok((c.tag(), ok))
}

fn label_expected(r: &LabelRow) -> String {
    match &r.key {
        Some(k) => format!("{} with key {k}", r.label),
        None => r.label.clone(),
    }
}

fn table4(t: T4, bound: u32) -> Vec<RowReport> {
    let mut out = Vec::new();
    let mut tags = Vec::new();
    for r in &t.rows {
        let res = label_row(r, bound).map(|(tag, ok)| {
            tags.push(tag.clone());
            (tag, ok, vec![describe(&r.construction)])
        });
        out.push(row(r.label.clone(), label_expected(r), res));
    }
    let distinct: BTreeSet<&String> = tags.iter().collect();
    out.push(RowReport {
        id: "labels pairwise distinct".into(),
        expected: format!("{} distinct", t.rows.len()),
        computed: format!("{} distinct", distinct.len()),
        ok: distinct.len() == t.rows.len(),
        notes: vec![],
    });
    let res = (|| -> RowResult {
        let tags = t
            .same_label
            .iter()
            .map(|c| Ok(classify_frob4(&c.build(bound)?)?.tag()))
            .collect::<Result<Vec<_>, RowError>>()?;
        let same = tags.windows(2).all(|w| w[0] == w[1]);
        Ok((tags.join(" / "), same, t.same_label.iter().map(describe).collect()))
    })();
    out.push(row("same label".into(), "identical tags".into(), res));
    for r in &t.refused {
        let res = (|| -> RowResult {
            let alg = r.construction.build(bound)?;
            let frob = frobenius_check(&alg)?.is_frobenius();
            let refused = classify_frob4(&alg).is_err();
            Ok((format!("dim {}, Frobenius {frob}, classified {}", alg.dim(), !refused), !frob && refused, vec![]))
        })();
        out.push(row(format!("refused: {}", r.name), "not Frobenius, no label".into(), res));
    }
    out
}

#[derive(Deserialize)]
struct T5 {
    rows: Vec<LabelRow>,
    isomorphisms: Vec<Iso>,
}

#[derive(Deserialize)]
struct Iso {
    name: String,
    source: Construction,
    target: Construction,
    images: Vec<String>,
}

fn table5(t: T5, bound: u32) -> Vec<RowReport> {
    let mut out = Vec::new();
    let mut labels = BTreeSet::new();
    for r in &t.rows {
        let res = label_row(r, bound).map(|(tag, ok)| {
            labels.insert(r.label.clone());
            let mut notes = vec![describe(&r.construction)];
            if let (Some(printed), Construction::Presentation { field, gens, commutative, .. }) = (&r.printed, &r.construction) {
                let alt = Construction::Presentation {
                    field: field.clone(),
                    gens: gens.clone(),
                    commutative: *commutative,
                    relations: printed.clone(),
                };
                let alt_tag = alt
                    .build(bound)
                    .map_err(RowError::from)
                    .and_then(|a| Ok(classify_frob4(&a)?.tag()))
                    .unwrap_or_else(|e| format!("error: {e}"));
                notes.push(format!("as printed ({}): {alt_tag}", printed.join(", ")));
            }
            if let Some(n) = &r.note {
                notes.push(n.clone());
            }
            (tag, ok, notes)
        });
        out.push(row(r.label.clone(), label_expected(r), res));
    }
    let t4: T4 = serde_json::from_str(GOLDEN[3]).expect("table 4 golden data");
    let want: BTreeSet<String> = t4.rows.iter().map(|r| r.label.clone()).collect();
    out.push(RowReport {
        id: "one row per class".into(),
        expected: format!("{} labels, as in table 4", want.len()),
        computed: format!("{} labels", labels.len()),
        ok: labels == want && t.rows.len() == want.len(),
        notes: vec![],
    });
    for iso in &t.isomorphisms {
        let res = (|| -> RowResult {
            let (ok, failure) = run_iso(&iso.source, &iso.target, &iso.images)?;
            let computed = match failure {
                Some(f) => format!("not an isomorphism: {f}"),
                None => "isomorphism".into(),
            };
            Ok((computed, ok, vec![format!("images: {}", iso.images.join(", "))]))
        })();
        out.push(row(iso.name.clone(), "isomorphism".into(), res));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_parse() {
        for id in 1..=5 {
            let v: Value = serde_json::from_str(golden_text(id).unwrap()).unwrap();
            assert_eq!(v["table"], id);
        }
        assert!(golden_text(6).is_none());
        assert_eq!(reproduce_table(0, 12), Err(TableError::Unknown(0)));
    }

    #[test]
    fn template_substitution() {
        assert_eq!(replace_ident("a*x^2 + b*y^2", "a", "(3)"), "(3)*x^2 + b*y^2");
        assert_eq!(template_params("a*x^2 + b*y^2"), ["a", "b"]);
        assert!(template_params("x*y").is_empty());
    }
}

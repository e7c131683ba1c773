//! Acceptance run: one line per criterion with its time against the limit.
//! Built with `harness = false` so the lines always reach the output.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pencil_core::algebra::{
    classify_relation, clifford_c, clifford_pair, dehomogenized_algebra, find_regular_linear, homogenized_algebra,
    quadratic_dual,
};
use pencil_core::findim::idempotent_decompose;
use pencil_core::freealg::{dehomogenize, homogenize};
use pencil_core::io::{golden_text, parse_field, reproduce_table, st_certificate, Construction, StepSpec};
use pencil_core::normality::st_obstruction;
use pencil_core::{
    classify_frob4, Alphabet, Field, FreePoly, GeneratorMap, PresentedAlgebra, RatFunc, SCAlgebra, DEFAULT_DEGREE_BOUND,
};
use serde_json::Value;

type Outcome = Result<String, String>;

const BOUND: u32 = DEFAULT_DEGREE_BOUND;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xy(field: Field, rels: &[&str]) -> Result<PresentedAlgebra, String> {
    PresentedAlgebra::from_strs(&Alphabet::uniform(&["x", "y"]), field, rels, BOUND).map_err(fail)
}

fn xyz_commutative(field: Field, rels: &[&str]) -> Result<PresentedAlgebra, String> {
    PresentedAlgebra::commutative_strs(&Alphabet::uniform(&["x", "y", "z"]), field, rels, BOUND).map_err(fail)
}

fn label(a: &PresentedAlgebra) -> Result<String, String> {
    let r = SCAlgebra::from_quotient(a).map_err(fail)?;
    Ok(classify_frob4(&r).map_err(fail)?.tag())
}

fn same_series(a: &RatFunc, b: &RatFunc) -> bool {
    a.sub(b).is_zero()
}

fn golden(id: u32) -> Value {
    serde_json::from_str(golden_text(id).expect("golden table")).expect("golden json")
}

/// The four quadratic algebras with their printed Hilbert series; k_lambda
/// at the sampled parameters.
fn table1_algebras() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("k<x,y>/(x^2)", "x^2", "(1+t)/(1-t-t^2)"),
        ("k<x,y>/(xy)", "x*y", "1/(1-t)^2"),
        ("k_J[x,y]", "x*y - y*x + y^2", "1/(1-t)^2"),
        ("k_2[x,y]", "x*y - 2*y*x", "1/(1-t)^2"),
        ("k_-1[x,y]", "x*y + y*x", "1/(1-t)^2"),
        ("k_5[x,y]", "x*y - 5*y*x", "1/(1-t)^2"),
    ]
}

fn criterion1() -> Outcome {
    let mut rational = 0;
    for (name, rel, printed) in table1_algebras() {
        let a = xy(Field::Rationals, &[rel])?;
        let series = RatFunc::parse(printed).map_err(fail)?;
        let want = series.expand_integers(12).ok_or("non-integer expansion")?;
        let got: Vec<i64> = a.hilbert(12).map_err(fail)?.coeffs.iter().map(|&c| c as i64).collect();
        ensure(got == want, || format!("{name}: coefficients {got:?} vs printed {want:?}"))?;
        if a.gb().is_complete() {
            let r = a.hilbert_rational().map_err(fail)?;
            ensure(same_series(&r, &series), || format!("{name}: recovered {r}, printed {printed}"))?;
            rational += 1;
        }
    }
    Ok(format!("6 algebras match through t^12; {rational} closed forms recovered exactly"))
}

fn criterion2() -> Outcome {
    for (name, rel, _) in table1_algebras() {
        let a = xy(Field::Rationals, &[rel])?;
        let dual = quadratic_dual(&a).map_err(fail)?;
        let ha = a.hilbert(12).map_err(fail)?.coeffs;
        let hd = dual.hilbert(12).map_err(fail)?.coeffs;
        // coefficient k of H_{A^!}(t) H_A(-t)
        for k in 0..=12usize {
            let c: i64 = (0..=k).map(|i| hd[i] as i64 * ha[k - i] as i64 * if (k - i) % 2 == 0 { 1 } else { -1 }).sum();
            ensure(c == i64::from(k == 0), || format!("{name}: coefficient {k} of H_(A^!)(t) H_A(-t) is {c}"))?;
        }
        if name.starts_with("k_") {
            let want = [1u64, 2, 1].iter().copied().chain(std::iter::repeat(0)).take(13).collect::<Vec<_>>();
            ensure(hd == want, || format!("{name}: H_(S^!) = {hd:?}, expected (1+t)^2"))?;
        }
    }
    Ok("identity holds through t^12 for 6 algebras; H_(S^!) = (1+t)^2 for k_J and k_lambda (2, -1, 5)".into())
}

fn table_rows(id: u32, keep: impl Fn(&str) -> bool) -> Outcome {
    let report = reproduce_table(id, BOUND).map_err(fail)?;
    let rows: Vec<_> = report.rows.iter().filter(|r| keep(&r.id)).collect();
    if let Some(bad) = rows.iter().find(|r| !r.ok) {
        return Err(format!("{}: expected {}, computed {}", bad.id, bad.expected, bad.computed));
    }
    Ok(format!("{} rows match", rows.len()))
}

fn criterion3() -> Outcome {
    let detail = table_rows(2, |_| true)?;
    Ok(format!("{detail}; normal certificates and F_7, F_11 searches in degrees 1 and 2 with lower terms"))
}

fn criterion4() -> Outcome {
    let t = golden(3);
    let families: std::collections::BTreeSet<&str> = t["rows"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    ensure(families.len() == 16, || format!("golden data has {} families", families.len()))?;
    let detail = table_rows(3, |id| !id.starts_with("t-equivalence"))?;
    Ok(format!("F1-F16 at all samples plus 3 counterexamples: {detail}"))
}

fn criterion5() -> Outcome {
    let t = golden(3);
    let mut names = Vec::new();
    for c in t["st_chains"].as_array().unwrap() {
        let s = |v: &Value| -> Vec<String> { v.as_array().map(|a| a.iter().map(|x| x.as_str().unwrap().to_string()).collect()).unwrap_or_default() };
        let steps: Vec<StepSpec> = serde_json::from_value(c["steps"].clone()).map_err(fail)?;
        let name = c["name"].as_str().unwrap();
        if name.starts_with("F11") {
            ensure(steps[0].p == ["x + y", "x - y"], || format!("{name}: first step is not P = (1 1; 1 -1)"))?;
        }
        let cert = st_certificate(c["field"].as_str().unwrap(), "x y", &s(&c["from"]), &s(&c["to"]), &s(&c["h"]), &steps).map_err(fail)?;
        ensure(cert.verdict == "pass", || format!("{name}: {}", cert.evidence["message"]))?;
        names.push(name.to_string());
    }
    Ok(format!("{} chains verified: {}", names.len(), names.join(", ")))
}

fn criterion6() -> Outcome {
    table_rows(4, |_| true).map(|d| format!("{d}: 10 Frobenius families, distinct labels, k_2 ~ k_1/2, R_2 and the path algebra refused"))
}

fn criterion7() -> Outcome {
    table_rows(5, |_| true).map(|d| format!("{d}: labels biject onto table 4, both isomorphisms confirmed"))
}

fn is_regular_linear(b: &PresentedAlgebra, l: &FreePoly) -> Result<bool, String> {
    let hb = b.hilbert(BOUND).map_err(fail)?.coeffs;
    let hq = b.quotient(&[l.clone()]).map_err(fail)?.hilbert(BOUND).map_err(fail)?.coeffs;
    Ok((0..hb.len()).all(|k| hq[k] as i64 == hb[k] as i64 - if k > 0 { hb[k - 1] as i64 } else { 0 }))
}

fn criterion8() -> Outcome {
    let mut rng = common::rng(8);
    let alph = Alphabet::uniform(&["x", "y"]);
    for i in 0..500 {
        let field = common::fields()[i % 4];
        let len = 1 + i % 3;
        let seq: Vec<FreePoly> = (0..len).map(|_| common::nonzero_poly(&mut rng, &alph, field, 4, 5)).collect();
        for f in &seq {
            let back = dehomogenize(&homogenize(f, "z").map_err(fail)?, "z").map_err(fail)?;
            ensure(&back == f, || format!("(f^z)_z != f for f = {f}"))?;
        }
    }
    let pencil = RatFunc::parse("(1-t^2)^2/(1-t)^3").map_err(fail)?;
    let cut = RatFunc::parse("(1-t^2)^2*(1-t)/(1-t)^3").map_err(fail)?;
    let t = golden(5);
    let mut rows = 0;
    for r in t["rows"].as_array().unwrap() {
        let c: Construction = serde_json::from_value(r["construction"].clone()).map_err(fail)?;
        let Construction::Presentation { commutative: true, .. } = &c else { continue };
        let want = r["label"].as_str().unwrap();
        let a = c.presented(BOUND).map_err(fail)?;
        let b = homogenized_algebra(a.relations(), BOUND).map_err(fail)?;
        let hb = b.hilbert_rational().map_err(fail)?;
        ensure(same_series(&hb, &pencil), || format!("{want}: H_B = {hb}"))?;
        let z = find_regular_linear(&b, 0).map_err(fail)?.element;
        let hz = b.quotient(&[z.clone()]).map_err(fail)?.hilbert_rational().map_err(fail)?;
        ensure(same_series(&hz, &cut), || format!("{want}: H_(B/({z})) = {hz}"))?;
        let first = label(&dehomogenized_algebra(&b, &z).map_err(fail)?)?;
        ensure(first.starts_with(want), || format!("{want}: dehomogenized at {z} gives {first}"))?;
        let mut second = None;
        for cand in ["x + z", "y + z", "x + y + z", "2*z - x", "z - y"] {
            let l = b.parse(cand).map_err(fail)?;
            if is_regular_linear(&b, &l)? {
                second = Some((cand, label(&dehomogenized_algebra(&b, &l).map_err(fail)?)?));
                break;
            }
        }
        let (cand, other) = second.ok_or_else(|| format!("{want}: no second regular linear form"))?;
        ensure(other == first, || format!("{want}: at {cand} the label is {other}, at {z} it is {first}"))?;
        rows += 1;
    }
    ensure(rows == 6, || format!("{rows} commutative rows"))?;
    Ok("500 round trips; 6 commutative rows land in B_(3,2) with H_(B/(z)) = (1-t^2)^2(1-t)/(1-t)^3 and keep their label at two regular forms".into())
}

fn criterion9() -> Outcome {
    let mut out = Vec::new();
    for rels in [["x^2", "y^2"], ["x^2 - z^2", "y^2 - z^2"], ["x^2", "y^2 - x*z"]] {
        let b = xyz_commutative(Field::Rationals, &rels)?;
        let (s, f) = clifford_pair(&b, &b.parse("z^2").map_err(fail)?).map_err(fail)?;
        let c = clifford_c(&s, &f).map_err(fail)?;
        let lc = classify_frob4(&c.algebra).map_err(fail)?.tag();
        let z = find_regular_linear(&b, 0).map_err(fail)?.element;
        let ld = label(&dehomogenized_algebra(&b, &z).map_err(fail)?)?;
        ensure(lc == ld, || format!("B = ({}): C(B^!) is {lc}, D(B) is {ld}", rels.join(", ")))?;
        out.push(lc);
    }
    Ok(format!("labels agree: {}", out.join(", ")))
}

fn criterion10() -> Outcome {
    let f = ["x^2 - 1", "y^2 - 1", "x*y - y*x"];
    let g = ["x^2 - y", "y^2 - 1", "x*y - y*x"];
    let q = Field::Rationals;
    let alph = Alphabet::uniform(&["x", "y"]);
    let polys = |v: &[&str]| v.iter().map(|s| FreePoly::parse(s, &alph, q)).collect::<Result<Vec<_>, _>>();
    let obs = st_obstruction(&polys(&f).map_err(fail)?, &polys(&g).map_err(fail)?, &[]).map_err(fail)?;
    ensure(!obs.is_empty(), || "no obstruction found".into())?;
    let (la, lb) = (label(&xy(q, &f)?)?, label(&xy(q, &g)?)?);
    ensure(la == "k^4" && lb == "k^4", || format!("labels {la} and {lb}"))?;
    // over Q(sqrt(-1)) both quotients split into four copies of the field
    let qi = parse_field("Q(sqrt(-1))").map_err(fail)?;
    for rels in [&f, &g] {
        let r = SCAlgebra::from_quotient(&xy(qi, rels)?).map_err(fail)?;
        let blocks = idempotent_decompose(&r).map_err(fail)?;
        ensure(blocks.len() == 4 && blocks.iter().all(|b| b.algebra.dim() == 1), || format!("({}) does not split as k^4", rels.join(", ")))?;
    }
    Ok(format!("{} obstruction(s), first {:?}; both quotients k^4", obs.len(), obs[0]))
}

/// Completed bases from every presentation in the golden tables.
fn corpus() -> Result<Vec<PresentedAlgebra>, String> {
    let mut out = Vec::new();
    for (_, rel, _) in table1_algebras() {
        out.push(xy(Field::Rationals, &[rel])?);
    }
    let t3 = golden(3);
    for r in t3["rows"].as_array().unwrap() {
        let rel = r["relation"].as_str().unwrap().replace("lambda", "3");
        let f = r["f"].as_str().unwrap();
        let g = r["g"].as_str().or(r["sample_g"].as_str()).unwrap().replace("alpha", "2");
        out.push(xy(Field::Rationals, &[&rel, f])?);
        out.push(xy(Field::Rationals, &[&rel, f, &g])?);
    }
    for id in [4, 5] {
        for r in golden(id)["rows"].as_array().unwrap() {
            let c: Construction = serde_json::from_value(r["construction"].clone()).map_err(fail)?;
            if let Ok(a) = c.presented(BOUND) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn criterion11() -> Outcome {
    let corpus = corpus()?;
    let complete: Vec<&PresentedAlgebra> = corpus.iter().filter(|a| a.gb().is_complete()).collect();
    for a in &complete {
        ensure(a.gb().diamond_check(2 * BOUND), || format!("diamond property fails for {a}"))?;
    }
    let mut rng = common::rng(11);
    for i in 0..500 {
        let a = complete[i % complete.len()];
        let (f, field) = (a.alphabet(), a.field());
        let p = common::poly(&mut rng, f, field, 4, 6);
        let q = common::poly(&mut rng, f, field, 4, 6);
        let c = common::scalar(&mut rng, field);
        let rp = a.reduce(&p).map_err(fail)?;
        ensure(a.reduce(&rp).map_err(fail)? == rp, || format!("reduce not idempotent on {p} in {a}"))?;
        let lhs = a.reduce(&p.add(&q.scale(&c))).map_err(fail)?;
        let rhs = rp.add(&a.reduce(&q).map_err(fail)?.scale(&c));
        ensure(lhs == rhs, || format!("reduce not linear on {p}, {q} in {a}"))?;
    }
    let q = Field::Rationals;
    let alph = Alphabet::uniform(&["x", "y"]);
    let relations = ["x^2", "x*y", "x*y - y*x + y^2", "x*y - 2*y*x", "x*y + y*x", "x*y - y*x", "x*y - 5*y*x"];
    for h in relations {
        let h = FreePoly::parse(h, &alph, q).map_err(fail)?;
        let tag = classify_relation(&h).map_err(fail)?.tag();
        for _ in 0..200 {
            let p = common::invertible(&mut rng, q, 2);
            let moved = GeneratorMap::from_matrix(&alph, &p).map_err(fail)?.substitute(&h).map_err(fail)?;
            let t2 = classify_relation(&moved).map_err(fail)?.tag();
            ensure(t2 == tag, || format!("{h} is {tag} but {moved} is {t2}"))?;
        }
    }
    for r in golden(4)["rows"].as_array().unwrap() {
        let c: Construction = serde_json::from_value(r["construction"].clone()).map_err(fail)?;
        let alg = c.build(BOUND).map_err(fail)?;
        let tag = classify_frob4(&alg).map_err(fail)?.tag();
        for _ in 0..200 {
            let p = common::invertible(&mut rng, q, 4);
            let moved = alg.change_basis(&p).map_err(fail)?;
            let t2 = classify_frob4(&moved).map_err(fail)?.tag();
            ensure(t2 == tag, || format!("{tag} relabelled {t2} after a change of basis"))?;
        }
    }
    for field in common::fields() {
        for _ in 0..1000 {
            let (a, b, c) = (common::scalar(&mut rng, field), common::scalar(&mut rng, field), common::scalar(&mut rng, field));
            let ok = &(&a + &b) + &c == &a + &(&b + &c)
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a + &b == &b + &a
                && &a * &b == &b * &a
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &a - &a == field.zero()
                && &a * &field.one() == a
                && (a.is_zero() || &a * &a.inv().unwrap() == field.one());
            ensure(ok, || format!("field axioms fail over {field} at ({a}, {b}, {c})"))?;
        }
    }
    Ok(format!(
        "diamond on {} complete bases; 500 reduce checks; 200 basis changes for each of {} relation and 10 Frobenius classes; 4000 field triples",
        complete.len(),
        relations.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("Table 1 Hilbert series", 5, criterion1),
        ("Koszul dual Hilbert identity", 5, criterion2),
        ("Table 2 normal elements", 120, criterion3),
        ("Table 3 sequences and counterexamples", 60, criterion4),
        ("four-family witness chains", 10, criterion5),
        ("Table 4 Frobenius classification", 30, criterion6),
        ("Table 5 bijection and isomorphisms", 60, criterion7),
        ("homogenization suite", 60, criterion8),
        ("C(A) against D(A^!)", 60, criterion9),
        ("st-inequivalence with equal labels", 10, criterion10),
        ("property suites", 120, criterion11),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name} ({:.2} s, limit {limit} s): {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

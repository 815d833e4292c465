mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Duration;

use common::*;
use num_bigint::BigUint;

use c2sseq::c2cohomology::{cohomology_bar, cohomology_periodic};
use c2sseq::gradedring::{ExponentBounds, RingGenerator, RingPresentation};
use c2sseq::picard::Conclusion;
use c2sseq::specseq::{
    build_e2, match_presentation, solve_generator_differentials, AbutmentVerdict,
    CoefficientFamily, Window,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let (r, t) = timed(f);
    r?;
    if t > limit {
        return Err(format!("took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ko_abutment() -> Outcome {
    let out = run_builtin("ko-endo");
    let expected = ["Z_2", "Z/2", "Z/2", "0", "Z_2", "0", "0", "0", "Z_2"];
    for (n, want) in expected.iter().enumerate() {
        let c = out.stem(n as i64).ok_or(format!("stem {n} missing"))?;
        ensure(
            c.verdict == Some(AbutmentVerdict::ExactMatch),
            format!("stem {n}: {:?}", c.verdict),
        )?;
        let total = match c.gr.as_slice() {
            [] => "0".to_string(),
            [(_, g)] => g.symbol(),
            many => return Err(format!("stem {n}: gr {:?}", symbols(many))),
        };
        ensure(total == *want, format!("stem {n}: {total} vs {want}"))?;
    }
    Ok(())
}

fn picard_result() -> Outcome {
    let out = run_builtin("pic-kgl-2adic");
    let b = out.bound.ok_or("no bound")?;
    match &b.conclusion {
        Conclusion::Conclusive(g) => ensure(g.symbol() == "Z ⊕ Z/4", g.symbol())?,
        other => return Err(other.to_string()),
    }
    let gr = symbols(&b.gr_list);
    let want = vec![(0, "Z".to_string()), (1, "Z/2".into()), (3, "Z/2".into())];
    ensure(gr == want, format!("gr {gr:?}"))
}

fn classical() -> Outcome {
    let out = run_builtin("pic-ko-classical");
    match out.bound.ok_or("no bound")?.conclusion {
        Conclusion::Conclusive(g) => ensure(g.symbol() == "Z/8", g.symbol()),
        other => Err(other.to_string()),
    }
}

fn ku_ring() -> RingPresentation {
    RingPresentation::from_strings(
        vec![
            RingGenerator::new("h1", 2, 1, 2),
            RingGenerator::new("a", 4, 0, 0),
            RingGenerator::new("z", 0, 2, 0),
        ],
        &[("a*z", "h1^2")],
        &[],
    )
    .unwrap()
}

fn ring_verification() -> Outcome {
    let page = build_e2(
        &CoefficientFamily::complex_k_theory(true),
        Window::default(),
    )
    .map_err(|e| e.to_string())?;
    let m = match_presentation(&page, &ku_ring(), &ExponentBounds::default())
        .map_err(|e| e.to_string())?;
    ensure(m.all_isomorphic(), format!("mismatches {:?}", m.mismatches))?;
    ensure(
        m.entries.len() == Window::default().cells().len(),
        "not every bidegree checked",
    )?;
    ensure(m.notes.len() == 1, format!("notes {:?}", m.notes))?;
    ensure(m.notes[0].starts_with("z:"), m.notes[0].clone())
}

fn forced_differential() -> Outcome {
    // The ring as corrected by the E2 comparison, with z of order 2.
    let page = build_e2(
        &CoefficientFamily::complex_k_theory(true),
        Window::default(),
    )
    .map_err(|e| e.to_string())?;
    let ring = match_presentation(&page, &ku_ring(), &ExponentBounds::default())
        .map_err(|e| e.to_string())?
        .effective;
    let seeds = BTreeMap::from([("a".to_string(), ring.parse("h1^3").unwrap())]);
    let diffs = solve_generator_differentials(
        &ring,
        &seeds,
        &["h1".to_string()],
        3,
        &ExponentBounds::default(),
    )
    .map_err(|e| e.to_string())?;
    let z = ring.generator_index("z").unwrap();
    let got = ring.format(&diffs[z]);
    ensure(got == "h1·z^2", format!("d3(z) = {got}"))
}

fn oracle_equivalence() -> Outcome {
    let corpus = corpus();
    ensure(
        corpus.len() == 51,
        format!("corpus has {} modules", corpus.len()),
    )?;
    for (label, m) in &corpus {
        for s in 0..=6 {
            let p = cohomology_periodic(m, s);
            let b = cohomology_bar(m, s, 6).map_err(|e| e.to_string())?;
            ensure(p.is_isomorphic(&b), format!("{label}, H^{s}: {p} vs {b}"))?;
        }
    }
    Ok(())
}

fn kq_line() -> Outcome {
    let out = run_builtin("kq-weight0");
    let expected = ["Z_2", "Z/2", "Z/2", "0", "Z_2", "0", "0", "0", "Z_2"];
    for (n, want) in expected.iter().enumerate() {
        let c = out.stem(n as i64).ok_or(format!("t = {n} missing"))?;
        let order: BigUint = c.gr.iter().map(|(_, g)| g.torsion_order()).product();
        let rank: usize = c.gr.iter().map(|(_, g)| g.free_rank()).sum();
        let got = match (rank, order.to_string().as_str()) {
            (0, "1") => "0".to_string(),
            (1, "1") => "Z_2".into(),
            (0, "2") => "Z/2".into(),
            other => format!("{other:?}"),
        };
        ensure(got == *want, format!("t = {n}: {got} vs {want}"))?;
        ensure(
            c.verdict == Some(AbutmentVerdict::ExactMatch),
            format!("t = {n}: {:?}", c.verdict),
        )?;
    }
    Ok(())
}

fn property_suites() -> Outcome {
    property_d_squared().map_err(|e| format!("d∘d: {e}"))?;
    property_order_division().map_err(|e| format!("order division: {e}"))?;
    property_periodicity(96).map_err(|e| format!("periodicity: {e}"))?;
    property_checkerboard().map_err(|e| format!("checkerboard: {e}"))?;
    property_monotonicity(48).map_err(|e| format!("monotonicity: {e}"))?;
    property_byte_identical().map_err(|e| format!("reruns: {e}"))
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (
            "1 ko abutment",
            Box::new(move || within(secs(5), ko_abutment)),
        ),
        (
            "2 Picard group Z ⊕ Z/4",
            Box::new(move || within(secs(5), picard_result)),
        ),
        (
            "3 classical Pic(KO) = Z/8",
            Box::new(move || within(secs(5), classical)),
        ),
        ("4 E2 ring verification", Box::new(ring_verification)),
        ("5 forced differential d3(z)", Box::new(forced_differential)),
        (
            "6 periodic/bar oracle equivalence",
            Box::new(move || within(secs(10), oracle_equivalence)),
        ),
        ("7 KQ weight-zero line", Box::new(kq_line)),
        (
            "8 property suites",
            Box::new(move || within(secs(30), property_suites)),
        ),
    ];
    let mut failures = Vec::new();
    let mut err = std::io::stderr().lock();
    for (name, check) in criteria {
        let (result, t) = timed(check);
        let line = match &result {
            Ok(()) => format!("PASS  {name}  ({:.2?})\n", t),
            Err(e) => format!("FAIL  {name}  ({:.2?}): {e}\n", t),
        };
        let _ = err.write_all(line.as_bytes());
        if result.is_err() {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#![allow(dead_code)]

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use c2sseq::abgroup::{FgAbGroup, IntMatrix};
use c2sseq::c2cohomology::{cohomology_bar, cohomology_periodic, C2Module};
use c2sseq::cli::{build_report, render_chart, report_json, ChartFormat};
use c2sseq::picard::upper_bound_stem0;
use c2sseq::scenarios::{builtin, builtin_names, run_scenario, ScenarioOutcome};
use c2sseq::specseq::{
    build_e2, CoefficientFamily, Overrides, Provenance, SpectralSequenceRun, Window,
    DEFAULT_MAX_PAGE,
};

pub fn run_builtin(name: &str) -> ScenarioOutcome {
    run_builtin_with(name, &Overrides::new()).expect("builtin runs")
}

pub fn run_builtin_with(
    name: &str,
    overrides: &Overrides,
) -> Result<ScenarioOutcome, c2sseq::scenarios::ScenarioError> {
    run_scenario(&builtin(name).unwrap(), DEFAULT_MAX_PAGE, overrides)
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

pub fn symbols(gr: &[(i64, FgAbGroup)]) -> Vec<(i64, String)> {
    gr.iter().map(|(s, g)| (*s, g.symbol())).collect()
}

// ---- C2-modules ----------------------------------------------------------

/// One summand of a corpus module: `(order, action)` where order 0 is free
/// and action is 1, -1, or 0 for a swapped pair of copies.
#[derive(Debug, Clone, Copy)]
pub struct Piece {
    pub order: u64,
    pub action: i64,
}

pub fn module_of(pieces: &[Piece]) -> C2Module {
    let mut names = Vec::new();
    let mut orders = Vec::new();
    let mut diag: Vec<(usize, usize, i64)> = Vec::new();
    for p in pieces {
        let i = orders.len();
        if p.action == 0 {
            names.push(format!("x{i}"));
            names.push(format!("x{}", i + 1));
            orders.push(BigInt::from(p.order));
            orders.push(BigInt::from(p.order));
            diag.push((i, i + 1, 1));
            diag.push((i + 1, i, 1));
        } else {
            names.push(format!("x{i}"));
            orders.push(BigInt::from(p.order));
            diag.push((i, i, p.action));
        }
    }
    let n = orders.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, j, v) in diag {
        rows[i][j] = v;
    }
    let pro2 = false;
    C2Module::new(
        names,
        orders,
        IntMatrix::from_rows_with_cols(&rows, n),
        pro2,
    )
    .expect("corpus module is an involution")
}

/// The oracle corpus: cyclic modules `Z/n` (n ≤ 16) with action ±1, their
/// swapped pairs `Z/n[C2]`, and free modules of rank at most 2 with action
/// ±1 on each summand or swapping the two.
pub fn corpus() -> Vec<(String, C2Module)> {
    let mut pieces: Vec<Vec<Piece>> = Vec::new();
    for order in 2..=16u64 {
        for action in [1, -1, 0] {
            pieces.push(vec![Piece { order, action }]);
        }
    }
    for action in [1, -1, 0] {
        pieces.push(vec![Piece { order: 0, action }]);
    }
    for (a, b) in [(1, 1), (1, -1), (-1, -1)] {
        pieces.push(vec![
            Piece {
                order: 0,
                action: a,
            },
            Piece {
                order: 0,
                action: b,
            },
        ]);
    }
    pieces
        .into_iter()
        .map(|ps| {
            let label = ps
                .iter()
                .map(|p| {
                    let g = if p.order == 0 {
                        "Z".to_string()
                    } else {
                        format!("Z/{}", p.order)
                    };
                    match p.action {
                        0 => format!("{g}[C2]"),
                        1 => format!("{g}+"),
                        _ => format!("{g}-"),
                    }
                })
                .collect::<Vec<_>>()
                .join(" ⊕ ");
            (label, module_of(&ps))
        })
        .collect()
}

pub fn piece_strategy() -> impl Strategy<Value = Piece> {
    (
        prop_oneof![Just(0u64), 2u64..=16],
        prop_oneof![Just(1i64), Just(-1), Just(0)],
    )
        .prop_map(|(order, action)| Piece { order, action })
}

pub fn module_strategy() -> impl Strategy<Value = Vec<Piece>> {
    prop::collection::vec(piece_strategy(), 1..=2).prop_filter("free rank at most 2", |ps| {
        ps.iter()
            .map(|p| match (p.order, p.action) {
                (0, 0) => 2,
                (0, _) => 1,
                _ => 0,
            })
            .sum::<usize>()
            <= 2
    })
}

// ---- checks shared by the property tests and the acceptance suite --------

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn fail(msg: String) -> Result<(), String> {
    Err(msg)
}

/// Recomputes `d_r ∘ d_r` from the stored matrices and checks it vanishes
/// in the target group.
pub fn check_d_squared(run: &SpectralSequenceRun) -> Result<(), String> {
    for (page, d) in run.pages.iter().zip(&run.differentials) {
        for e in d.entries.values() {
            let Some(next) = d.entries.get(&e.target) else {
                continue;
            };
            let comp = next.matrix.mul(&e.matrix);
            let g = page.group(next.target.0, next.target.1);
            for c in comp.columns() {
                if !g.is_zero_element(&c) {
                    return fail(format!("d{} ∘ d{} ≠ 0 at {:?}", d.r, d.r, e.source));
                }
            }
        }
    }
    Ok(())
}

/// `E_{r+1}` is a subquotient of `E_r`: free rank cannot grow, and when the
/// ranks agree and both are finite the order of `E_{r+1}` divides that of `E_r`.
pub fn check_order_division(run: &SpectralSequenceRun) -> Result<(), String> {
    for w in run.pages.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        for &(s, t) in a.cells.keys() {
            let (ga, gb) = (a.group(s, t), b.group(s, t));
            if gb.free_rank() > ga.free_rank() {
                return fail(format!("rank grew at ({s},{t}) on E{}", b.r));
            }
            if ga.is_finite() {
                let (oa, ob) = (ga.torsion_order(), gb.torsion_order());
                if &oa % &ob != BigUint::from(0u8) {
                    return fail(format!("|E{}| ∤ |E{}| at ({s},{t})", b.r, a.r));
                }
            }
        }
    }
    Ok(())
}

pub fn property_d_squared() -> Result<(), String> {
    for name in builtin_names() {
        if let Some(run) = &run_builtin(name).run {
            check_d_squared(run).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(())
}

pub fn property_order_division() -> Result<(), String> {
    for name in builtin_names() {
        if let Some(run) = &run_builtin(name).run {
            check_order_division(run).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(())
}

pub fn property_periodicity(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(module_strategy(), 1usize..=4), |(ps, s)| {
            let m = module_of(&ps);
            let (a, b) = (cohomology_periodic(&m, s), cohomology_periodic(&m, s + 2));
            prop_assert!(a.is_isomorphic(&b), "H^{} = {a} but H^{} = {b}", s, s + 2);
            let gens: usize = ps.iter().map(|p| if p.action == 0 { 2 } else { 1 }).sum();
            if s + 2 <= 4 && gens <= 2 {
                let bar = cohomology_bar(&m, s + 2, 4).unwrap();
                prop_assert!(bar.is_isomorphic(&a), "bar H^{} = {bar}", s + 2);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Closed form for `H^s(C2; π_t ku)`: `π_t ku` is `Z_2` for even `t ≥ 0`,
/// with conjugation acting by `(-1)^{t/2}`.
pub fn ku_e2_oracle(s: i64, t: i64) -> (usize, u64) {
    if t < 0 || t % 2 != 0 {
        return (0, 1);
    }
    let trivial = (t / 2) % 2 == 0;
    match (s, trivial) {
        (0, true) => (1, 1),
        (0, false) => (0, 1),
        (s, true) if s % 2 == 0 => (0, 2),
        (s, false) if s % 2 == 1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn property_checkerboard() -> Result<(), String> {
    let window = Window::default();
    let e2 =
        build_e2(&CoefficientFamily::complex_k_theory(true), window).map_err(|e| e.to_string())?;
    for (s, t) in window.cells() {
        let g = e2.group(s, t);
        let (rank, order) = ku_e2_oracle(s, t);
        if g.free_rank() != rank || g.torsion_order() != BigUint::from(order) {
            return fail(format!(
                "E2({s},{t}) = {g}, expected rank {rank} order {order}"
            ));
        }
        if t % 2 != 0 && !g.is_trivial() {
            return fail(format!("odd t nonzero at ({s},{t})"));
        }
    }
    let run = run_builtin("ko-endo").run.unwrap();
    let d2 = &run.differentials[0];
    if d2.r != 2 || d2.entries.values().any(|e| !e.is_zero()) {
        return fail("d2 is not zero for ku".into());
    }
    Ok(())
}

fn bound_key(run: &SpectralSequenceRun) -> (usize, BigUint) {
    let b = upper_bound_stem0(run.einfty());
    (b.free_rank, b.torsion_order)
}

/// Unknown slots of the Picard run that touch stems -1, 0 or 1, with the
/// page dimensions of their source and target.
fn unknown_slots(run: &SpectralSequenceRun) -> Vec<(usize, (i64, i64), usize, usize)> {
    let mut out = Vec::new();
    for (page, d) in run.pages.iter().zip(&run.differentials) {
        for e in d.entries.values() {
            let stem = e.source.1 - e.source.0;
            if e.provenance == Provenance::AssumedZeroUnknown && (0..=1).contains(&stem) {
                let rows = page.group(e.target.0, e.target.1).num_generators();
                let cols = page.group(e.source.0, e.source.1).num_generators();
                out.push((d.r, e.source, rows, cols));
            }
        }
    }
    out
}

/// Filling unknown differentials on one page with arbitrary values never
/// raises the stem-0 upper bound (free rank first, then torsion order).
/// Assignments that are not homomorphisms or have `d∘d ≠ 0` are rejected
/// by the engine and skipped.
pub fn property_monotonicity(cases: u32) -> Result<(), String> {
    let base = run_builtin("pic-kgl-2adic").run.unwrap();
    let base_key = bound_key(&base);
    let slots = unknown_slots(&base);
    if slots.is_empty() {
        return fail("no unknown slots to perturb".into());
    }
    let pages: Vec<usize> = {
        let mut p: Vec<usize> = slots.iter().map(|s| s.0).collect();
        p.dedup();
        p
    };
    let strat = (0..pages.len(), prop::collection::vec(-3i64..=3, 64));
    let accepted = std::cell::Cell::new(0u32);
    let changed = std::cell::Cell::new(0u32);
    runner(cases)
        .run(&strat, |(pi, vals)| {
            let r = pages[pi];
            let mut overrides = Overrides::new();
            let mut it = vals.iter().cycle();
            for &(sr, (s, t), rows, cols) in &slots {
                if sr != r {
                    continue;
                }
                let m: Vec<Vec<i64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| *it.next().unwrap()).collect())
                    .collect();
                overrides.insert((r, s, t), IntMatrix::from_rows_with_cols(&m, cols));
            }
            let Ok(out) = run_builtin_with("pic-kgl-2adic", &overrides) else {
                return Ok(());
            };
            let run = out.run.unwrap();
            let key = bound_key(&run);
            accepted.set(accepted.get() + 1);
            if key < base_key {
                changed.set(changed.get() + 1);
            }
            prop_assert!(
                key <= base_key,
                "bound rose from {base_key:?} to {key:?} with {overrides:?}"
            );
            check_d_squared(&run).map_err(TestCaseError::fail)?;
            check_order_division(&run).map_err(TestCaseError::fail)?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // Most random assignments are legal, and some of them lower the bound.
    if accepted.get() * 2 < cases || changed.get() == 0 {
        return fail(format!(
            "only {} of {cases} cases accepted, {} lowered the bound",
            accepted.get(),
            changed.get()
        ));
    }
    Ok(())
}

pub fn artifacts(name: &str) -> Vec<String> {
    let out = run_builtin(name);
    let mut v = vec![report_json(&build_report(&out))];
    if let Some(run) = &out.run {
        for p in &run.pages {
            let d = run.differentials.iter().find(|d| d.r == p.r);
            v.push(render_chart(p, d, ChartFormat::Ascii));
            v.push(render_chart(p, d, ChartFormat::Svg));
        }
    }
    v
}

pub fn property_byte_identical() -> Result<(), String> {
    for name in builtin_names() {
        if artifacts(name) != artifacts(name) {
            return fail(format!("{name}: rerun differs"));
        }
    }
    Ok(())
}

mod common;

use std::process::Command;

use common::*;

use c2sseq::cli::{
    cmd_cohomology, cmd_list, cmd_run, parse_module, render_chart, ChartFormat, OutputFormat,
    RunOptions, LEGEND,
};
use c2sseq::scenarios::{builtin, to_json};
use c2sseq::specseq::{build_e2, CoefficientFamily, Window};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_c2sseq"))
}

fn wrong_pi3_file(dir: &tempfile::TempDir) -> std::path::PathBuf {
    let mut doc: serde_json::Value =
        serde_json::from_str(&to_json(&builtin("ko-endo").unwrap())).unwrap();
    for e in doc["expected_abutment"].as_array_mut().unwrap() {
        if e["stem"] == 3 {
            e["orders"] = serde_json::json!([2]);
        }
    }
    let path = dir.path().join("wrong.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

#[test]
fn list_prints_four_builtins() {
    assert_eq!(
        cmd_list(),
        "ko-endo\npic-kgl-2adic\npic-ko-classical\nkq-weight0\n"
    );
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}

#[test]
fn cohomology_tables() {
    assert_eq!(
        cmd_cohomology("Z sign", "0..4", false).unwrap(),
        "H^0 = 0\nH^1 = Z/2\nH^2 = 0\nH^3 = Z/2\nH^4 = 0\n"
    );
    assert_eq!(
        cmd_cohomology("Z trivial", "0..2", false).unwrap(),
        "H^0 = Z\nH^1 = 0\nH^2 = Z/2\n"
    );
    let json = r#"{"orders": [0, 0], "action": [[0, 1], [1, 0]]}"#;
    let t = cmd_cohomology(json, "0..3", true).unwrap();
    assert_eq!(t.lines().next().unwrap(), "H^0 = Z   bar: Z [ok]");
    assert!(!t.contains("DIFFERS"));
    assert!(parse_module("Q sign").is_err());
    assert!(cmd_cohomology("Z", "3..1", false).is_err());
}

#[test]
fn run_exit_codes() {
    let pic = cmd_run("pic-kgl-2adic", &RunOptions::default()).unwrap();
    assert_eq!(pic.exit_code, 0);
    let report: serde_json::Value = serde_json::from_str(&pic.artifact).unwrap();
    assert_eq!(report["picard"]["conclusion"], "Conclusive");
    assert_eq!(report["picard"]["group"], "Z ⊕ Z/4");
    assert!(report.get("timing").is_none());

    let ko = cmd_run("ko-endo", &RunOptions::default()).unwrap();
    assert_eq!(ko.exit_code, 0);
    let report: serde_json::Value = serde_json::from_str(&ko.artifact).unwrap();
    let verdicts: Vec<&str> = report["associated_graded"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| (0..=8).contains(&s["stem"].as_i64().unwrap()))
        .map(|s| s["verdict"].as_str().unwrap())
        .collect();
    assert_eq!(verdicts, ["ExactMatch"; 9]);

    let dir = tempfile::tempdir().unwrap();
    let wrong = wrong_pi3_file(&dir);
    let out = cmd_run(wrong.to_str().unwrap(), &RunOptions::default()).unwrap();
    assert_eq!(out.exit_code, 2);
    assert_eq!(out.diagnostics.len(), 1);
    assert!(out.diagnostics[0].starts_with("stem 3: Mismatch"));

    assert!(cmd_run("no-such-scenario", &RunOptions::default()).is_err());
}

#[test]
fn binary_exit_codes_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = wrong_pi3_file(&dir);
    let st = bin()
        .args(["run", wrong.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("stem 3"));

    let st = bin().args(["run", "nope"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = bin()
        .args(["run", "ko-endo", "--format", "pdf"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));

    let svg = dir.path().join("pic.svg");
    let st = bin()
        .args(["run", "pic-kgl-2adic", "--format", "chart-svg", "--out"])
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(st.stdout.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(!text.contains("href=\"http"), "self-contained");
}

#[test]
fn timing_is_opt_in() {
    let opts = RunOptions {
        timing: true,
        ..RunOptions::default()
    };
    let out = cmd_run("ko-endo", &opts).unwrap();
    let report: serde_json::Value = serde_json::from_str(&out.artifact).unwrap();
    assert!(report["timing"]["millis"].is_u64());
}

fn column(chart: &str, stem: i64, w: &Window) -> Vec<(i64, String)> {
    let width = {
        let axis = chart.lines().find(|l| l.starts_with("    +")).unwrap();
        (axis.chars().count() - 5) / (w.stem_max - w.stem_min + 1) as usize
    };
    let idx = (stem - w.stem_min) as usize;
    chart
        .lines()
        .filter_map(|l| {
            let (s, rest) = l.split_once(" |")?;
            let s: i64 = s.trim().parse().ok()?;
            let cells: Vec<char> = rest.chars().collect();
            let cell: String = cells[idx * width..(idx + 1) * width].iter().collect();
            let cell = cell.trim().to_string();
            (cell != ".").then_some((s, cell))
        })
        .collect()
}

#[test]
fn pic_einfty_stem_zero_glyphs() {
    let out = run_builtin("pic-kgl-2adic");
    let run = out.run.unwrap();
    let e = run.einfty();
    let chart = render_chart(e, None, ChartFormat::Ascii);
    let mut col = column(&chart, 0, &e.window);
    col.sort();
    assert_eq!(
        col,
        [
            (0, "□".to_string()),
            (1, "•".to_string()),
            (3, "•".to_string())
        ]
    );
    assert!(chart.contains(&format!("legend: {LEGEND}")));
}

#[test]
fn ko_einfty_stem_one_glyph() {
    let out = run_builtin("ko-endo");
    let e = out.run.as_ref().unwrap().einfty();
    let chart = render_chart(e, None, ChartFormat::Ascii);
    assert_eq!(column(&chart, 1, &e.window), [(1, "•".to_string())]);
    assert_eq!(column(&chart, 0, &e.window), [(0, "⊙".to_string())]);
}

#[test]
fn empty_page_has_axes() {
    let w = Window::default();
    let page = build_e2(&CoefficientFamily::zero(), w).unwrap();
    let ascii = render_chart(&page, None, ChartFormat::Ascii);
    let rows: Vec<&str> = ascii.lines().filter(|l| l.contains(" |")).collect();
    assert_eq!(rows.len(), 15);
    assert!(rows
        .iter()
        .all(|r| r.chars().all(|c| " |.0123456789".contains(c))));
    let svg = render_chart(&page, None, ChartFormat::Svg);
    assert!(!svg.contains("<circle") && !svg.contains("<rect"));
    assert!(svg.contains(">12</text>"));
}

#[test]
fn unknown_differentials_are_dashed() {
    let out = run_builtin("pic-kgl-2adic");
    let run = out.run.unwrap();
    let d2 = &run.differentials[0];
    let svg = render_chart(&run.pages[0], Some(d2), ChartFormat::Svg);
    assert!(svg.contains("stroke-dasharray"));
    let ascii = render_chart(&run.pages[0], Some(d2), ChartFormat::Ascii);
    assert!(ascii.contains("d2 (0,0) ⇢ (-1,2) [AssumedZeroUnknown]"));
    let d3 = &run.differentials[1];
    let ascii = render_chart(&run.pages[1], Some(d3), ChartFormat::Ascii);
    assert!(ascii.contains("→"));
}

#[test]
fn chart_page_selection() {
    let opts = RunOptions {
        page: Some(3),
        format: OutputFormat::ChartAscii,
        ..RunOptions::default()
    };
    let out = cmd_run("ko-endo", &opts).unwrap();
    assert!(out.artifact.starts_with("E_3 page\n"));
    let bad = RunOptions {
        page: Some(1),
        ..opts
    };
    assert!(cmd_run("ko-endo", &bad).is_err());
}

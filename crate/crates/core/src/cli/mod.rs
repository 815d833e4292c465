//! Command-line driver: running scenarios, charts, reports, and a small
//! cohomology calculator.

mod chart;
mod report;

pub use chart::{render_chart, ChartFormat, LEGEND};
pub use report::{build_report, page_report, report_json, RunReport, Timing};

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::c2cohomology::{cohomology_bar, cohomology_periodic, C2Module, DEFAULT_ORACLE_LIMIT};
use crate::scenarios::{
    builtin, builtin_names, load, run_scenario, ModuleSpec, Scenario, ScenarioError,
};
use crate::specseq::{Overrides, DEFAULT_MAX_PAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("page {page} is not computed (pages run from 2 to {max})")]
    NoSuchPage { page: usize, max: usize },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Report,
    ChartAscii,
    ChartSvg,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "report" => Ok(Self::Report),
            "chart-ascii" => Ok(Self::ChartAscii),
            "chart-svg" => Ok(Self::ChartSvg),
            other => Err(CliError::Parse(format!(
                "unknown format {other:?} (expected report, chart-ascii or chart-svg)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Page to chart. Defaults to the last computed page. Also raises the
    /// number of pages computed when it exceeds the default.
    pub page: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Adds wall-clock time to the report, which makes it vary between runs.
    pub timing: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub exit_code: i32,
    pub artifact: String,
    /// One line per failed check, for the error stream.
    pub diagnostics: Vec<String>,
}

/// A builtin name, or else a path to a scenario file.
pub fn resolve_scenario(reference: &str) -> Result<Scenario, CliError> {
    if builtin_names().contains(&reference) {
        return Ok(builtin(reference)?);
    }
    if Path::new(reference).exists() {
        return Ok(load(reference)?);
    }
    Err(ScenarioError::UnknownScenario(reference.to_string()).into())
}

pub fn cmd_run(reference: &str, opts: &RunOptions) -> Result<RunOutput, CliError> {
    let scenario = resolve_scenario(reference)?;
    let max_page = opts
        .page
        .map_or(DEFAULT_MAX_PAGE, |p| p.max(DEFAULT_MAX_PAGE));
    let start = Instant::now();
    let outcome = run_scenario(&scenario, max_page, &Overrides::new())?;
    let elapsed = start.elapsed();

    let mut diagnostics = Vec::new();
    for c in &outcome.stems {
        if let Some(crate::specseq::AbutmentVerdict::Mismatch(d)) = &c.verdict {
            diagnostics.push(format!("stem {}: Mismatch: {d}", c.stem));
        }
    }
    if let Some(b) = &outcome.bound {
        if !b.is_conclusive() {
            diagnostics.push(format!("Picard group: {}", b.conclusion));
        }
    }

    let artifact = match opts.format {
        OutputFormat::Report => {
            let mut r = build_report(&outcome);
            if opts.timing {
                r.timing = Some(Timing {
                    millis: elapsed.as_millis(),
                });
            }
            report_json(&r)
        }
        OutputFormat::ChartAscii | OutputFormat::ChartSvg => {
            let run = outcome.run.as_ref().ok_or_else(|| {
                CliError::Parse(format!(
                    "scenario {:?} has no pages to chart",
                    scenario.name
                ))
            })?;
            let page = match opts.page {
                Some(p) => run.page(p).ok_or(CliError::NoSuchPage {
                    page: p,
                    max: run.einfty().r,
                })?,
                None => run.einfty(),
            };
            let d = run.differentials.iter().find(|d| d.r == page.r);
            let fmt = if opts.format == OutputFormat::ChartSvg {
                ChartFormat::Svg
            } else {
                ChartFormat::Ascii
            };
            render_chart(page, d, fmt)
        }
    };
    if let Some(path) = &opts.out {
        std::fs::write(path, &artifact).map_err(|e| CliError::Write {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(RunOutput {
        exit_code: if outcome.success() { 0 } else { 2 },
        artifact,
        diagnostics,
    })
}

pub fn cmd_list() -> String {
    let mut out = String::new();
    for name in builtin_names() {
        out.push_str(name);
        out.push('\n');
    }
    out
}

/// Parses a module description. Accepted forms are a JSON object with
/// `orders` and `action` (as in scenario files), or a group followed by an
/// action: `Z sign`, `Z_2 trivial`, `Z/4 sign`, or `swap`.
pub fn parse_module(spec: &str) -> Result<C2Module, CliError> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let m: ModuleSpec =
            serde_json::from_str(spec).map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok(m.to_module("x")?);
    }
    let words: Vec<&str> = spec.split_whitespace().collect();
    let (group, action) = match words.as_slice() {
        ["swap"] => return Ok(C2Module::swap(["x", "y"])),
        [g] => (*g, "trivial"),
        [g, a] => (*g, *a),
        _ => return Err(CliError::Parse(format!("cannot read module {spec:?}"))),
    };
    let sign = match action {
        "trivial" | "+1" | "1" => 1,
        "sign" | "-1" => -1,
        other => return Err(CliError::Parse(format!("unknown action {other:?}"))),
    };
    match group {
        "Z" => Ok(C2Module::integers("x", sign, false)),
        "Z_2" => Ok(C2Module::integers("x", sign, true)),
        g => {
            let n = g
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<u64>().ok())
                .filter(|&n| n > 1)
                .ok_or_else(|| CliError::Parse(format!("unknown group {g:?}")))?;
            Ok(C2Module::cyclic("x", n, sign))
        }
    }
}

/// Parses `a..b` (inclusive) or a single degree.
pub fn parse_range(range: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Parse(format!("bad range {range:?} (expected s0..s1)"));
    let (a, b) = match range.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (range, range),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Table of `H^s(C2; M)` for `s` in the range. With `check`, each entry is
/// also computed from the bar complex and compared.
pub fn cmd_cohomology(module: &str, range: &str, check: bool) -> Result<String, CliError> {
    let m = parse_module(module)?;
    let (a, b) = parse_range(range)?;
    let mut out = String::new();
    for s in a..=b {
        let h = cohomology_periodic(&m, s);
        let _ = write!(out, "H^{s} = {}", h.symbol());
        if check {
            let bar = cohomology_bar(&m, s, DEFAULT_ORACLE_LIMIT)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let _ = write!(
                out,
                "   bar: {} [{}]",
                bar.symbol(),
                if bar.is_isomorphic(&h) {
                    "ok"
                } else {
                    "DIFFERS"
                }
            );
        }
        out.push('\n');
    }
    Ok(out)
}

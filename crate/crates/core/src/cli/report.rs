use serde::Serialize;
use serde_json::Value;

use crate::abgroup::{FgAbGroup, IntMatrix};
use crate::picard::Conclusion;
use crate::scenarios::{Mode, ScenarioOutcome};
use crate::specseq::{AbutmentVerdict, Page, PageDifferential, Provenance};

/// Machine-readable result of a scenario run. Apart from the optional
/// `timing`, the content depends only on the scenario.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation_match: Option<MatchSummary>,
    pub generator_differentials: Vec<GeneratorDiffReport>,
    pub pages: Vec<PageReport>,
    pub differentials: Vec<DiffReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<usize>,
    pub flagged_cells: Vec<[i64; 2]>,
    pub associated_graded: Vec<StemReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard: Option<PicardReport>,
    pub success: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchSummary {
    pub all_isomorphic: bool,
    pub notes: Vec<String>,
    /// `[s, t]` pairs.
    pub mismatches: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDiffReport {
    pub page: usize,
    pub generator: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub symbol: String,
    pub rank: usize,
    pub orders: Vec<String>,
    pub generators: Vec<String>,
}

impl From<&FgAbGroup> for GroupReport {
    fn from(g: &FgAbGroup) -> Self {
        Self {
            symbol: g.symbol(),
            rank: g.free_rank(),
            orders: g.torsion().iter().map(ToString::to_string).collect(),
            generators: g.names().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub s: i64,
    pub t: i64,
    pub stem: i64,
    pub group: GroupReport,
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PageReport {
    pub r: usize,
    pub cells: Vec<CellReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiffReport {
    pub page: usize,
    /// `[s, t]`.
    pub source: [i64; 2],
    pub target: [i64; 2],
    pub provenance: Provenance,
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedPiece {
    pub s: i64,
    pub group: GroupReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct StemReport {
    pub stem: i64,
    pub gr: Vec<GradedPiece>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PicardReport {
    pub free_rank_upper: usize,
    pub torsion_order_upper: String,
    pub gr_list: Vec<GradedPiece>,
    pub lower_bound: String,
    pub conclusion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub millis: u128,
}

fn matrix_json(m: &IntMatrix) -> Vec<Vec<Value>> {
    m.to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| match i64::try_from(x) {
                    Ok(v) => Value::from(v),
                    Err(_) => Value::from(x.to_string()),
                })
                .collect()
        })
        .collect()
}

pub fn page_report(page: &Page) -> PageReport {
    PageReport {
        r: page.r,
        cells: page
            .nonzero_cells()
            .into_iter()
            .map(|((s, t), c)| CellReport {
                s,
                t,
                stem: t - s,
                group: c.group().into(),
                flagged: page.flagged.contains(&(s, t)),
            })
            .collect(),
    }
}

/// Entries of `d` inside the page window that are nonzero or unknown.
pub fn visible_entries<'a>(
    page: &Page,
    d: &'a PageDifferential,
) -> Vec<&'a crate::specseq::DiffEntry> {
    d.entries
        .values()
        .filter(|e| {
            page.window.contains(e.source.0, e.source.1)
                && page.window.contains(e.target.0, e.target.1)
                && (!e.is_zero() || e.provenance == Provenance::AssumedZeroUnknown)
        })
        .collect()
}

fn pieces(gr: &[(i64, FgAbGroup)]) -> Vec<GradedPiece> {
    gr.iter()
        .map(|(s, g)| GradedPiece {
            s: *s,
            group: g.into(),
        })
        .collect()
}

pub fn build_report(out: &ScenarioOutcome) -> RunReport {
    let mut pages = Vec::new();
    let mut differentials = Vec::new();
    let mut stabilized_at = None;
    let mut flagged_cells = Vec::new();
    if let Some(run) = &out.run {
        for p in &run.pages {
            pages.push(page_report(p));
        }
        for (p, d) in run.pages.iter().zip(&run.differentials) {
            for e in visible_entries(p, d) {
                differentials.push(DiffReport {
                    page: d.r,
                    source: [e.source.0, e.source.1],
                    target: [e.target.0, e.target.1],
                    provenance: e.provenance,
                    matrix: matrix_json(&e.matrix),
                });
            }
        }
        stabilized_at = Some(run.stabilized_at);
        flagged_cells = run.flagged().into_iter().map(|(s, t)| [s, t]).collect();
    }
    let generator_differentials = match &out.ring {
        Some(ring) => out
            .generator_diffs
            .iter()
            .flat_map(|(&page, diffs)| {
                ring.generators()
                    .iter()
                    .zip(diffs)
                    .map(move |(g, d)| GeneratorDiffReport {
                        page,
                        generator: g.name.clone(),
                        target: ring.format(d),
                    })
            })
            .collect(),
        None => Vec::new(),
    };
    let associated_graded = out
        .stems
        .iter()
        .map(|c| {
            let (verdict, details) = match &c.verdict {
                Some(AbutmentVerdict::ExactMatch) => (Some("ExactMatch".to_string()), None),
                Some(AbutmentVerdict::Mismatch(d)) => {
                    (Some("Mismatch".to_string()), Some(d.clone()))
                }
                None => (None, None),
            };
            StemReport {
                stem: c.stem,
                gr: pieces(&c.gr),
                expected: c.expected.as_ref().map(FgAbGroup::symbol),
                verdict,
                details,
            }
        })
        .collect();
    let picard = out.bound.as_ref().map(|b| {
        let (conclusion, group, reasons) = match &b.conclusion {
            Conclusion::Conclusive(g) => ("Conclusive".to_string(), Some(g.symbol()), Vec::new()),
            Conclusion::Inconclusive(r) => ("Inconclusive".to_string(), None, r.clone()),
        };
        PicardReport {
            free_rank_upper: b.free_rank_upper,
            torsion_order_upper: b.torsion_order_upper.to_string(),
            gr_list: pieces(&b.gr_list),
            lower_bound: b.lower_bound.symbol(),
            conclusion,
            group,
            reasons,
        }
    });
    RunReport {
        scenario: out.name.clone(),
        mode: out.mode,
        presentation_match: out.matching.as_ref().map(|m| MatchSummary {
            all_isomorphic: m.all_isomorphic(),
            notes: m.notes.clone(),
            mismatches: m.mismatches.iter().map(|&(s, t)| [s, t]).collect(),
        }),
        generator_differentials,
        pages,
        differentials,
        stabilized_at,
        flagged_cells,
        associated_graded,
        picard,
        success: out.success(),
        timing: None,
    }
}

pub fn report_json(r: &RunReport) -> String {
    serde_json::to_string_pretty(r).expect("plain data serializes") + "\n"
}

//! The Picard spectral sequence `H^s(C2; π_t pic) ⇒ π_{t-s} pic^{hC2}`
//! assembled from an endomorphism spectral sequence, and the upper/lower
//! bound comparison that pins down the Picard group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::abgroup::FgAbGroup;
use crate::c2cohomology::{cohomology_periodic, C2Module};
use crate::gradedring::RingPresentation;
use crate::specseq::{
    build_e2_padded, leibniz_lift, match_presentation, relabel_with_ring, run_pages,
    solve_all_pages, stem_assoc_graded, Cell, CoefficientFamily, DifferentialSource,
    GeneratorDiffs, MatchReport, Overrides, Page, Provenance, SlotValue, SpecSeqError,
    SpectralInput, SpectralSequenceRun, Window,
};

/// Origins of `d_r` with `t ≥ r + offset` are identified with the
/// endomorphism differential at `(s, t - 1)`; `pages` restricts the rule to
/// the listed pages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImportRule {
    pub offset: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pages: Option<Vec<usize>>,
}

impl Default for ImportRule {
    fn default() -> Self {
        Self {
            offset: 1,
            pages: None,
        }
    }
}

impl ImportRule {
    pub fn min_t(&self, r: usize) -> i64 {
        r as i64 + self.offset
    }

    pub fn applies(&self, r: usize, t: i64) -> bool {
        t >= self.min_t(r) && self.pages.as_ref().is_none_or(|p| p.contains(&r))
    }
}

#[derive(Debug, Clone)]
pub struct PicInput {
    pub pic0: C2Module,
    pub pic1: C2Module,
    /// The endomorphism spectral sequence: coefficients, presentation and
    /// seeded differentials.
    pub endo: SpectralInput,
    pub import_rule: ImportRule,
}

/// `t = 0 ↦ pic0`, `t = 1 ↦ pic1`, `t ≥ 2 ↦ endo(t - 1)`.
pub fn pic_coefficients(inp: &PicInput) -> CoefficientFamily {
    CoefficientFamily::Picard {
        pic0: inp.pic0.clone(),
        pic1: inp.pic1.clone(),
        endo: Box::new(inp.endo.family.clone()),
    }
}

/// Imports endomorphism differentials where the rule allows; every other
/// slot stays unknown.
pub struct ImportSource<'a> {
    pub ring: &'a RingPresentation,
    pub diffs: &'a BTreeMap<usize, GeneratorDiffs>,
    pub rule: &'a ImportRule,
}

impl DifferentialSource for ImportSource<'_> {
    fn slot(
        &mut self,
        r: usize,
        source: (i64, i64),
        src: &Cell,
        tgt: &Cell,
    ) -> Result<Option<(SlotValue, Provenance)>, SpecSeqError> {
        if !self.rule.applies(r, source.1) {
            return Ok(None);
        }
        let Some(diffs) = self.diffs.get(&r) else {
            return Ok(None);
        };
        let (Some(sm), Some(tm)) = (&src.monomials, &tgt.monomials) else {
            return Ok(None);
        };
        let lift = leibniz_lift(self.ring, diffs, sm, tm, &tgt.sq.ambient_orders)?;
        Ok(Some((SlotValue::Lift(lift), Provenance::ImportedStable)))
    }
}

#[derive(Debug, Clone)]
pub struct PicardRun {
    pub matching: Option<MatchReport>,
    pub ring: Option<RingPresentation>,
    pub generator_diffs: BTreeMap<usize, GeneratorDiffs>,
    pub run: SpectralSequenceRun,
}

/// Picard E₂: cohomology of `pic0`, `pic1` at `t = 0, 1`; for `t ≥ 2` the
/// endomorphism E₂ cell at `(s, t - 1)`, on the presentation's monomial
/// basis when one is given.
pub fn pic_e2(
    inp: &PicInput,
    window: Window,
    computed: Window,
) -> Result<(Page, Option<MatchReport>, Option<RingPresentation>), SpecSeqError> {
    let shift = |w: Window| Window::new(w.stem_min - 1, w.stem_max - 1, w.filtration_max);
    let mut endo = build_e2_padded(&inp.endo.family, shift(window), shift(computed))?;
    let (matching, ring) = match &inp.endo.presentation {
        Some(p) => {
            let report = match_presentation(&endo, p, &inp.endo.bounds)?;
            let ring = report.effective.clone();
            relabel_with_ring(&mut endo, &ring, &inp.endo.bounds)?;
            (Some(report), Some(ring))
        }
        None => (None, None),
    };
    let mut cells = BTreeMap::new();
    for (s, t) in computed.cells() {
        let cell = if t >= 2 {
            endo.cells[&(s, t - 1)].clone()
        } else {
            let m = match t {
                0 => inp.pic0.clone(),
                1 => inp.pic1.clone(),
                _ => C2Module::zero(),
            };
            let g = cohomology_periodic(&m, s as usize);
            Cell::e2(g.names().to_vec(), g.generator_orders(), g.is_pro2())?
        };
        cells.insert((s, t), cell);
    }
    let page = Page {
        r: 2,
        window,
        computed,
        cells,
        flagged: Default::default(),
    };
    Ok((page, matching, ring))
}

/// Runs the Picard spectral sequence through `max_page`.
pub fn run_picard(
    inp: &PicInput,
    window: Window,
    max_page: usize,
    overrides: &Overrides,
) -> Result<PicardRun, SpecSeqError> {
    let computed = window.padded(max_page);
    let (e2, matching, ring) = pic_e2(inp, window, computed)?;
    let generator_diffs = match &ring {
        Some(ring) => solve_all_pages(ring, &inp.endo)?,
        None => BTreeMap::new(),
    };
    let run = match &ring {
        Some(ring) => {
            let mut source = ImportSource {
                ring,
                diffs: &generator_diffs,
                rule: &inp.import_rule,
            };
            run_pages(e2, max_page, &mut source, overrides)?
        }
        None => run_pages(
            e2,
            max_page,
            &mut crate::specseq::NoDifferentials,
            overrides,
        )?,
    };
    Ok(PicardRun {
        matching,
        ring,
        generator_diffs,
        run,
    })
}

/// Survivors in stem 0, read as an upper bound: unknown differentials were
/// taken to be zero, which can only enlarge what survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    pub free_rank: usize,
    pub torsion_order: BigUint,
    pub gr: Vec<(i64, FgAbGroup)>,
}

pub fn upper_bound_stem0(e_inf: &Page) -> UpperBound {
    let gr = stem_assoc_graded(e_inf, 0);
    UpperBound {
        free_rank: gr.iter().map(|(_, g)| g.free_rank()).sum(),
        torsion_order: gr.iter().map(|(_, g)| g.torsion_order()).product(),
        gr,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conclusion {
    Conclusive(FgAbGroup),
    Inconclusive(Vec<String>),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Conclusive(g) => write!(f, "Conclusive({})", g.symbol()),
            Self::Inconclusive(r) => write!(f, "Inconclusive({})", r.join("; ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVerdict {
    pub free_rank_upper: usize,
    pub torsion_order_upper: BigUint,
    pub gr_list: Vec<(i64, FgAbGroup)>,
    pub lower_bound: FgAbGroup,
    pub conclusion: Conclusion,
}

impl BoundVerdict {
    pub fn is_conclusive(&self) -> bool {
        matches!(self.conclusion, Conclusion::Conclusive(_))
    }
}

/// The group is the lower bound exactly when it already has the free rank
/// and torsion order of the upper bound.
pub fn resolve(upper: &UpperBound, lower: &FgAbGroup) -> BoundVerdict {
    let mut reasons = Vec::new();
    if lower.free_rank() != upper.free_rank {
        reasons.push(format!(
            "free rank: upper bound {}, lower bound {}",
            upper.free_rank,
            lower.free_rank()
        ));
    }
    if lower.torsion_order() != upper.torsion_order {
        reasons.push(format!(
            "torsion order: upper bound {}, lower bound {}",
            upper.torsion_order,
            lower.torsion_order()
        ));
    }
    let conclusion = if reasons.is_empty() {
        Conclusion::Conclusive(lower.clone())
    } else {
        Conclusion::Inconclusive(reasons)
    };
    BoundVerdict {
        free_rank_upper: upper.free_rank,
        torsion_order_upper: upper.torsion_order.clone(),
        gr_list: upper.gr.clone(),
        lower_bound: lower.clone(),
        conclusion,
    }
}

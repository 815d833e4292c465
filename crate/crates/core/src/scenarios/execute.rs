use std::collections::BTreeMap;

use super::{validate, Coefficients, Mode, PicardTag, Scenario, ScenarioError};
use crate::abgroup::FgAbGroup;
use crate::gradedring::RingPresentation;
use crate::picard::{resolve, run_picard, upper_bound_stem0, BoundVerdict, PicInput};
use crate::specseq::{
    check_abutment, run_to_einfty, stem_assoc_graded, AbutmentVerdict, GeneratorDiffs, MatchReport,
    Overrides, SpectralInput, SpectralSequenceRun,
};

/// Associated graded of one stem (or one `t` in weight-zero mode) and its
/// comparison with the expected group, when one is given.
#[derive(Debug, Clone)]
pub struct StemCheck {
    pub stem: i64,
    pub gr: Vec<(i64, FgAbGroup)>,
    pub expected: Option<FgAbGroup>,
    pub verdict: Option<AbutmentVerdict>,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub name: String,
    pub mode: Mode,
    pub matching: Option<MatchReport>,
    pub ring: Option<RingPresentation>,
    pub generator_diffs: BTreeMap<usize, GeneratorDiffs>,
    pub run: Option<SpectralSequenceRun>,
    pub stems: Vec<StemCheck>,
    pub bound: Option<BoundVerdict>,
}

impl ScenarioOutcome {
    /// Every expected stem matches and the Picard bound, if any, is
    /// conclusive.
    pub fn success(&self) -> bool {
        self.stems
            .iter()
            .all(|c| c.verdict.as_ref().is_none_or(AbutmentVerdict::is_match))
            && self.bound.as_ref().is_none_or(BoundVerdict::is_conclusive)
    }

    pub fn stem(&self, n: i64) -> Option<&StemCheck> {
        self.stems.iter().find(|c| c.stem == n)
    }
}

fn seeds(s: &Scenario) -> BTreeMap<usize, BTreeMap<String, crate::gradedring::Polynomial>> {
    let mut out: BTreeMap<usize, BTreeMap<_, _>> = BTreeMap::new();
    for d in &s.differentials {
        out.entry(d.page)
            .or_default()
            .insert(d.generator.clone(), d.target.clone());
    }
    out
}

fn stem_checks(s: &Scenario, run: &SpectralSequenceRun) -> Vec<StemCheck> {
    let expected: BTreeMap<i64, FgAbGroup> = s
        .expected_abutment
        .iter()
        .map(|e| (e.stem, e.group()))
        .collect();
    (s.window.stem_min..=s.window.stem_max)
        .map(|n| {
            let gr = stem_assoc_graded(run.einfty(), n);
            let exp = expected.get(&n).cloned();
            let verdict = exp.as_ref().map(|e| check_abutment(&gr, e));
            StemCheck {
                stem: n,
                gr,
                expected: exp,
                verdict,
            }
        })
        .collect()
}

/// Validates and runs a scenario through page `max_page`. `overrides`
/// replaces individual `d_r` values (see [`Overrides`]).
pub fn run_scenario(
    s: &Scenario,
    max_page: usize,
    overrides: &Overrides,
) -> Result<ScenarioOutcome, ScenarioError> {
    let violations = validate(s);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(ScenarioError::Invalid(list.join("; ")));
    }
    let bounds = s.bounds();
    let mut out = ScenarioOutcome {
        name: s.name.clone(),
        mode: s.mode,
        matching: None,
        ring: None,
        generator_diffs: BTreeMap::new(),
        run: None,
        stems: Vec::new(),
        bound: None,
    };
    match (s.mode, &s.coefficients) {
        (Mode::Endomorphism, Coefficients::Family(f)) => {
            let input = SpectralInput {
                family: f.to_family()?,
                presentation: s.presentation.clone(),
                seeds: seeds(s),
                permanent: s.permanent.clone(),
                window: s.window,
                bounds,
            };
            let r = run_to_einfty(&input, max_page, overrides)?;
            out.stems = stem_checks(s, &r.run);
            out.matching = r.matching;
            out.ring = r.ring;
            out.generator_diffs = r.generator_diffs;
            out.run = Some(r.run);
        }
        (Mode::Picard, Coefficients::Picard(PicardTag::Picard(p))) => {
            let input = PicInput {
                pic0: p.pic0.to_module("p0_")?,
                pic1: p.pic1.to_module("p1_")?,
                endo: SpectralInput {
                    family: p.endo.to_family()?,
                    presentation: s.presentation.clone(),
                    seeds: seeds(s),
                    permanent: s.permanent.clone(),
                    window: s.window,
                    bounds,
                },
                import_rule: p.import_rule.clone(),
            };
            let r = run_picard(&input, s.window, max_page, overrides)?;
            out.stems = stem_checks(s, &r.run);
            let upper = upper_bound_stem0(r.run.einfty());
            out.bound = s
                .lower_bound
                .as_ref()
                .map(|l| resolve(&upper, &l.to_group()));
            out.matching = r.matching;
            out.ring = r.ring;
            out.generator_diffs = r.generator_diffs;
            out.run = Some(r.run);
        }
        (Mode::WeightZero, _) => {
            let ring = s.presentation.as_ref().expect("validated");
            let t_range = s.window.stem_min..=s.window.stem_max;
            let line = ring
                .weight_zero_line(t_range, &bounds)
                .map_err(crate::specseq::SpecSeqError::from)?;
            let expected: BTreeMap<i64, FgAbGroup> = s
                .expected_abutment
                .iter()
                .map(|e| (e.stem, e.group()))
                .collect();
            out.stems = line
                .into_iter()
                .map(|(t, g)| {
                    let exp = expected.get(&t).cloned();
                    let verdict = exp.as_ref().map(|e| {
                        if e.is_isomorphic(&g) {
                            AbutmentVerdict::ExactMatch
                        } else {
                            AbutmentVerdict::Mismatch(format!(
                                "weight-zero group {} but expected {}",
                                g.symbol(),
                                e.symbol()
                            ))
                        }
                    });
                    let gr = if g.is_trivial() { vec![] } else { vec![(0, g)] };
                    StemCheck {
                        stem: t,
                        gr,
                        expected: exp,
                        verdict,
                    }
                })
                .collect();
            out.ring = Some(ring.clone());
        }
        _ => unreachable!("validated"),
    }
    Ok(out)
}

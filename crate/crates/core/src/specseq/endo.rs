use std::collections::{BTreeMap, BTreeSet};

use super::leibniz::GeneratorDiffs;
use super::matching::{match_presentation, MatchReport};
use super::page::{build_e2_padded, relabel_with_ring};
use super::run::{run_pages, LeibnizSource, Overrides, SpectralSequenceRun};
use super::solve::solve_generator_differentials;
use super::{CoefficientFamily, SpecSeqError, Window};
use crate::gradedring::{ExponentBounds, Polynomial, RingPresentation};

/// Everything needed to run a homotopy fixed point spectral sequence.
#[derive(Debug, Clone)]
pub struct SpectralInput {
    pub family: CoefficientFamily,
    pub presentation: Option<RingPresentation>,
    /// `page → generator → d_page(generator)`.
    pub seeds: BTreeMap<usize, BTreeMap<String, Polynomial>>,
    pub permanent: Vec<String>,
    pub window: Window,
    pub bounds: ExponentBounds,
}

#[derive(Debug, Clone)]
pub struct EndoRun {
    pub matching: Option<MatchReport>,
    /// Presentation with generator orders corrected by cohomology.
    pub ring: Option<RingPresentation>,
    pub generator_diffs: BTreeMap<usize, GeneratorDiffs>,
    pub run: SpectralSequenceRun,
}

/// Generator differentials on every seeded page, completed by
/// [`solve_generator_differentials`].
pub fn solve_all_pages(
    ring: &RingPresentation,
    input: &SpectralInput,
) -> Result<BTreeMap<usize, GeneratorDiffs>, SpecSeqError> {
    input
        .seeds
        .iter()
        .map(|(&r, seeds)| {
            let d = solve_generator_differentials(ring, seeds, &input.permanent, r, &input.bounds)?;
            Ok((r, d))
        })
        .collect()
}

/// Builds E₂ (relabelled by the presentation when one is given), solves
/// generator differentials and turns pages up to `max_page`.
pub fn run_to_einfty(
    input: &SpectralInput,
    max_page: usize,
    overrides: &Overrides,
) -> Result<EndoRun, SpecSeqError> {
    let computed = input.window.padded(max_page);
    let mut e2 = build_e2_padded(&input.family, input.window, computed)?;
    let (matching, ring, generator_diffs) = match &input.presentation {
        Some(p) => {
            let report = match_presentation(&e2, p, &input.bounds)?;
            let ring = report.effective.clone();
            relabel_with_ring(&mut e2, &ring, &input.bounds)?;
            let diffs = solve_all_pages(&ring, input)?;
            (Some(report), Some(ring), diffs)
        }
        None => (None, None, BTreeMap::new()),
    };
    let seeded: BTreeMap<usize, BTreeSet<String>> = input
        .seeds
        .iter()
        .map(|(&r, s)| (r, s.keys().cloned().collect()))
        .collect();
    let run = match &ring {
        Some(ring) => {
            let mut source = LeibnizSource {
                ring,
                diffs: &generator_diffs,
                seeded: &seeded,
            };
            run_pages(e2, max_page, &mut source, overrides)?
        }
        None => run_pages(e2, max_page, &mut NoDifferentials, overrides)?,
    };
    Ok(EndoRun {
        matching,
        ring,
        generator_diffs,
        run,
    })
}

/// Every slot unknown.
pub struct NoDifferentials;

impl super::run::DifferentialSource for NoDifferentials {
    fn slot(
        &mut self,
        _r: usize,
        _source: (i64, i64),
        _src: &super::Cell,
        _tgt: &super::Cell,
    ) -> Result<Option<(super::SlotValue, super::Provenance)>, SpecSeqError> {
        Ok(None)
    }
}

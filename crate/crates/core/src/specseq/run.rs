use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use super::differential::{turn_page, PageDifferential, Provenance, SlotValue};
use super::leibniz::{leibniz_lift, GeneratorDiffs};
use super::page::{Cell, Page};
use super::SpecSeqError;
use crate::abgroup::{FgAbGroup, IntMatrix};
use crate::gradedring::RingPresentation;

/// Pages computed past this one are not expected to change in the
/// built-in scenarios.
pub const DEFAULT_MAX_PAGE: usize = 6;

/// `E_r`-level values forced onto particular slots, keyed by `(r, s, t)`.
pub type Overrides = BTreeMap<(usize, i64, i64), IntMatrix>;

/// `(r, source, target)` of a possible differential past the last page.
pub type LateSlot = (usize, (i64, i64), (i64, i64));

/// Pages `E_2 ..= E_max` with the differentials between them.
#[derive(Debug, Clone)]
pub struct SpectralSequenceRun {
    pub pages: Vec<Page>,
    pub differentials: Vec<PageDifferential>,
    /// First page from which every later computed page agrees on the window.
    pub stabilized_at: usize,
    /// Slots `(r, source, target)` with `r` beyond the last computed page
    /// whose source and target are both nonzero on `E_max`.
    pub late_slots: Vec<LateSlot>,
}

impl SpectralSequenceRun {
    pub fn einfty(&self) -> &Page {
        self.pages.last().expect("at least E2")
    }

    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// Bidegrees in the window touched by a differential of unknown value.
    pub fn flagged(&self) -> BTreeSet<(i64, i64)> {
        let last = self.einfty();
        let mut out: BTreeSet<_> = last
            .flagged
            .iter()
            .copied()
            .filter(|&(s, t)| last.window.contains(s, t))
            .collect();
        for (_, a, b) in &self.late_slots {
            out.insert(*a);
            out.insert(*b);
        }
        out
    }
}

/// Source of `d_r` values for [`run_pages`].
pub trait DifferentialSource {
    fn slot(
        &mut self,
        r: usize,
        source: (i64, i64),
        src: &Cell,
        tgt: &Cell,
    ) -> Result<Option<(SlotValue, Provenance)>, SpecSeqError>;
}

/// Leibniz extension of generator values, on pages where they are given.
pub struct LeibnizSource<'a> {
    pub ring: &'a RingPresentation,
    pub diffs: &'a BTreeMap<usize, GeneratorDiffs>,
    /// Generators whose value on page `r` was supplied rather than solved.
    pub seeded: &'a BTreeMap<usize, BTreeSet<String>>,
}

impl DifferentialSource for LeibnizSource<'_> {
    fn slot(
        &mut self,
        r: usize,
        _source: (i64, i64),
        src: &Cell,
        tgt: &Cell,
    ) -> Result<Option<(SlotValue, Provenance)>, SpecSeqError> {
        let Some(diffs) = self.diffs.get(&r) else {
            return Ok(None);
        };
        let (Some(sm), Some(tm)) = (&src.monomials, &tgt.monomials) else {
            return Ok(None);
        };
        let lift = leibniz_lift(self.ring, diffs, sm, tm, &tgt.sq.ambient_orders)?;
        let seeded = self.seeded.get(&r).is_some_and(|names| {
            sm.iter().any(|m| {
                names.iter().any(|n| {
                    self.ring
                        .generator_index(n)
                        .is_some_and(|i| *m == self.ring.generator_monomial(i))
                })
            })
        });
        let provenance = if seeded {
            Provenance::Seeded
        } else {
            Provenance::Leibniz
        };
        Ok(Some((SlotValue::Lift(lift), provenance)))
    }
}

/// Turns pages from `e2` up to `E_max_page`, taking `d_r` from `source`
/// except where `overrides` fixes a value.
pub fn run_pages(
    e2: Page,
    max_page: usize,
    source: &mut dyn DifferentialSource,
    overrides: &Overrides,
) -> Result<SpectralSequenceRun, SpecSeqError> {
    let max_page = max_page.max(2);
    let mut pages = vec![e2];
    let mut differentials = Vec::new();
    for r in 2..max_page {
        let page = pages.last().expect("nonempty");
        let d = PageDifferential::assemble(page, |(s, t), src, tgt| {
            if let Some(m) = overrides.get(&(r, s, t)) {
                return Ok(Some((SlotValue::OnPage(m.clone()), Provenance::Seeded)));
            }
            source.slot(r, (s, t), src, tgt)
        })?;
        let next = turn_page(page, &d)?;
        differentials.push(d);
        pages.push(next);
    }
    let last = pages.last().expect("nonempty");
    let mut stabilized_at = last.r;
    for p in pages.iter().rev().skip(1) {
        if p.same_cells(last) {
            stabilized_at = p.r;
        } else {
            break;
        }
    }
    let late_slots = late_slots(last, max_page);
    Ok(SpectralSequenceRun {
        pages,
        differentials,
        stabilized_at,
        late_slots,
    })
}

fn late_slots(page: &Page, max_page: usize) -> Vec<LateSlot> {
    let w = page.window;
    let mut out = Vec::new();
    for r in max_page..=(w.filtration_max as usize + 1) {
        for (s, t) in w.cells() {
            let tgt = PageDifferential::target_of(r, s, t);
            if !w.contains(tgt.0, tgt.1) {
                continue;
            }
            if !page.group(s, t).is_trivial() && !page.group(tgt.0, tgt.1).is_trivial() {
                out.push((r, (s, t), tgt));
            }
        }
    }
    out
}

/// Comparison of an associated graded with an expected abutment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbutmentVerdict {
    ExactMatch,
    Mismatch(String),
}

impl AbutmentVerdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Self::ExactMatch)
    }
}

/// Ranks must add up and torsion orders multiply to the expected group,
/// and the expected torsion must be reachable by some extension: it needs
/// no more cyclic factors than the pieces provide, and its exponent divides
/// the product of theirs. No particular extension is asserted.
pub fn check_abutment(gr: &[(i64, FgAbGroup)], expected: &FgAbGroup) -> AbutmentVerdict {
    let rank: usize = gr.iter().map(|(_, g)| g.free_rank()).sum();
    let order: BigUint = gr.iter().map(|(_, g)| g.torsion_order()).product();
    let factors: usize = gr.iter().map(|(_, g)| g.torsion().len()).sum();
    let exponent_bound: BigUint = gr
        .iter()
        .map(|(_, g)| g.torsion().last().cloned().unwrap_or_else(BigUint::one))
        .product();
    let listed = gr
        .iter()
        .map(|(s, g)| format!("s={s}: {}", g.symbol()))
        .collect::<Vec<_>>()
        .join(", ");
    let listed = if listed.is_empty() {
        "nothing".to_string()
    } else {
        listed
    };
    if rank != expected.free_rank() {
        return AbutmentVerdict::Mismatch(format!(
            "free rank {rank} from [{listed}] but expected {}",
            expected.symbol()
        ));
    }
    if order != expected.torsion_order() {
        return AbutmentVerdict::Mismatch(format!(
            "torsion order {order} from [{listed}] but expected {}",
            expected.symbol()
        ));
    }
    let exp_exponent = expected
        .torsion()
        .last()
        .cloned()
        .unwrap_or_else(BigUint::one);
    if expected.torsion().len() > factors || !(&exponent_bound % &exp_exponent == BigUint::ZERO) {
        return AbutmentVerdict::Mismatch(format!(
            "no extension of [{listed}] gives {}",
            expected.symbol()
        ));
    }
    AbutmentVerdict::ExactMatch
}

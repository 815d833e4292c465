use num_traits::ToPrimitive;

use super::page::Page;
use super::SpecSeqError;
use crate::abgroup::FgAbGroup;
use crate::gradedring::{DegreeQuery, ExponentBounds, RingPresentation};

#[derive(Debug, Clone)]
pub struct BidegreeMatch {
    pub s: i64,
    pub t: i64,
    pub cohomology: FgAbGroup,
    pub ring: FgAbGroup,
    pub isomorphic: bool,
}

#[derive(Debug, Clone)]
pub struct MatchReport {
    pub entries: Vec<BidegreeMatch>,
    /// Generator orders taken from cohomology where the presentation
    /// disagrees.
    pub notes: Vec<String>,
    pub mismatches: Vec<(i64, i64)>,
    /// The presentation with those orders applied.
    pub effective: RingPresentation,
}

impl MatchReport {
    pub fn all_isomorphic(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares an E₂ page with a ring presentation bidegree by bidegree.
/// Cohomology is authoritative: a generator whose own bidegree is a finite
/// cyclic group of a different order than declared gets that order, with a
/// note in the report.
pub fn match_presentation(
    page: &Page,
    ring: &RingPresentation,
    bounds: &ExponentBounds,
) -> Result<MatchReport, SpecSeqError> {
    let mut effective = ring.clone();
    let mut notes = Vec::new();
    for (i, g) in ring.generators().iter().enumerate() {
        if !page.computed.contains(g.s, g.t) {
            continue;
        }
        let coh = page.group(g.s, g.t);
        if coh.num_generators() != 1 || coh.free_rank() != 0 {
            continue;
        }
        let d = coh.torsion()[0].to_u64().unwrap_or(0);
        if d != g.order {
            let declared = if g.order == 0 {
                "free".to_string()
            } else {
                format!("of order {}", g.order)
            };
            notes.push(format!(
                "{}: H^{} at (s,t) = ({},{}) is {}, so {} is taken to have order {} (the presentation lists it as {})",
                g.name, g.s, g.s, g.t, coh.symbol(), g.name, d, declared
            ));
            effective = effective.with_generator_order(i, d);
        }
    }
    let mut entries = Vec::new();
    let mut mismatches = Vec::new();
    for (s, t) in page.window.cells() {
        let cohomology = page.group(s, t);
        let ring_group = if effective.num_generators() == 0 {
            FgAbGroup::trivial()
        } else {
            effective.group_in_degree(&DegreeQuery::bidegree(t, s), bounds)?
        };
        let isomorphic = ring_group.is_isomorphic(&cohomology);
        if !isomorphic {
            mismatches.push((s, t));
        }
        entries.push(BidegreeMatch {
            s,
            t,
            cohomology,
            ring: ring_group,
            isomorphic,
        });
    }
    Ok(MatchReport {
        entries,
        notes,
        mismatches,
        effective,
    })
}

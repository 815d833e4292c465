use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::page::{Cell, Page};
use super::SpecSeqError;
use crate::abgroup::{image_basis, preimage_basis, IntMatrix, LatticeSolver};

/// Where the value of a differential came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Seeded,
    Leibniz,
    ImportedStable,
    AssumedZeroUnknown,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Seeded => "Seeded",
            Self::Leibniz => "Leibniz",
            Self::ImportedStable => "ImportedStable",
            Self::AssumedZeroUnknown => "AssumedZeroUnknown",
        };
        f.write_str(s)
    }
}

/// `d_r` out of one bidegree.
#[derive(Debug, Clone)]
pub struct DiffEntry {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub provenance: Provenance,
    /// E₂-level matrix on the ambient bases, when known.
    pub lift: Option<IntMatrix>,
    /// `E_r`-level matrix from source to target group coordinates.
    pub matrix: IntMatrix,
    /// Images of the source cycle lattice basis, in target ambient coordinates.
    pub(crate) on_cycles: IntMatrix,
}

impl DiffEntry {
    pub fn is_zero(&self) -> bool {
        self.on_cycles.is_zero()
    }
}

/// How `d_r` is specified at one source bidegree before it is checked
/// against the page.
#[derive(Debug, Clone)]
pub enum SlotValue {
    /// E₂-level matrix on the ambient bases.
    Lift(IntMatrix),
    /// `E_r`-level matrix on group generators.
    OnPage(IntMatrix),
    Unknown,
}

/// `d_r : E_r^{s,t} → E_r^{s+r,t+r-1}` over the computed window. Only
/// bidegrees with nonzero source and target carry an entry.
#[derive(Debug, Clone)]
pub struct PageDifferential {
    pub r: usize,
    pub entries: BTreeMap<(i64, i64), DiffEntry>,
}

impl PageDifferential {
    pub fn target_of(r: usize, s: i64, t: i64) -> (i64, i64) {
        let r = r as i64;
        (s + r, t + r - 1)
    }

    pub fn entry(&self, s: i64, t: i64) -> Option<&DiffEntry> {
        self.entries.get(&(s, t))
    }

    /// Assembles and checks `d_r` by asking `slot` for the value at each
    /// bidegree whose source and target are nonzero. `None` means zero with
    /// provenance `AssumedZeroUnknown`.
    pub fn assemble<F>(page: &Page, mut slot: F) -> Result<Self, SpecSeqError>
    where
        F: FnMut((i64, i64), &Cell, &Cell) -> Result<Option<(SlotValue, Provenance)>, SpecSeqError>,
    {
        let r = page.r;
        let mut entries = BTreeMap::new();
        for (&(s, t), src) in &page.cells {
            let tgt_key = Self::target_of(r, s, t);
            let Some(tgt) = page.cells.get(&tgt_key) else {
                continue;
            };
            if src.is_zero() || tgt.is_zero() {
                continue;
            }
            let (value, provenance) = slot((s, t), src, tgt)?
                .unwrap_or((SlotValue::Unknown, Provenance::AssumedZeroUnknown));
            let entry = build_entry(r, (s, t), tgt_key, src, tgt, value, provenance)?;
            entries.insert((s, t), entry);
        }
        let d = Self { r, entries };
        d.check_square_zero(page)?;
        Ok(d)
    }

    fn check_square_zero(&self, page: &Page) -> Result<(), SpecSeqError> {
        for (key, e1) in &self.entries {
            let Some(e2) = self.entries.get(&e1.target) else {
                continue;
            };
            let comp = e2.matrix.mul(&e1.matrix);
            let g = page.cells[&e2.target].group();
            if comp.columns().iter().any(|c| !g.is_zero_element(c)) {
                return Err(SpecSeqError::SquareNonzero {
                    r: self.r,
                    s: key.0,
                    t: key.1,
                });
            }
        }
        Ok(())
    }
}

fn build_entry(
    r: usize,
    source: (i64, i64),
    target: (i64, i64),
    src: &Cell,
    tgt: &Cell,
    value: SlotValue,
    provenance: Provenance,
) -> Result<DiffEntry, SpecSeqError> {
    let sg = src.group();
    let tg = tgt.group();
    let k = src.sq.cycles.cols();
    let bad = |what: &str| SpecSeqError::NotWellDefined {
        r,
        s: source.0,
        t: source.1,
        reason: what.to_string(),
    };
    let (lift, matrix, on_cycles) = match value {
        SlotValue::Unknown => (
            None,
            IntMatrix::zeros(tg.num_generators(), sg.num_generators()),
            IntMatrix::zeros(tgt.ambient_dim(), k),
        ),
        SlotValue::Lift(lift) => {
            if lift.rows() != tgt.ambient_dim() || lift.cols() != src.ambient_dim() {
                return Err(bad("lift has the wrong shape"));
            }
            let on_cycles = lift.mul(&src.sq.cycles);
            for c in on_cycles.columns() {
                if !tgt.sq.contains_cycle(&c) {
                    return Err(bad("a cycle maps outside the target cycles"));
                }
            }
            let tb = image_basis(&tgt.sq.boundaries);
            let solver = LatticeSolver::new(&tb);
            for c in lift.mul(&src.sq.boundaries).columns() {
                if c.iter().any(|x| !x.is_zero()) && solver.solve(&c).is_none() {
                    return Err(bad("a boundary maps outside the target boundaries"));
                }
            }
            let cols: Vec<_> = (0..sg.num_generators())
                .map(|i| {
                    let rep = src.sq.reps.column(i);
                    tgt.sq
                        .coordinates(&lift.mul_vec(&rep))
                        .expect("checked above")
                })
                .collect();
            let matrix = IntMatrix::from_columns(&cols, tg.num_generators());
            (Some(lift), matrix, on_cycles)
        }
        SlotValue::OnPage(m) => {
            if m.rows() != tg.num_generators() || m.cols() != sg.num_generators() {
                return Err(bad("page matrix has the wrong shape"));
            }
            let cols: Vec<_> = src
                .sq
                .cycles
                .columns()
                .iter()
                .map(|c| {
                    let coords = src.sq.coordinates(c).expect("cycle basis");
                    tgt.sq.lift(&m.mul_vec(&coords))
                })
                .collect();
            let on_cycles = IntMatrix::from_columns(&cols, tgt.ambient_dim());
            let reduced: Vec<_> = m.columns().iter().map(|c| tg.reduce(c)).collect();
            (
                None,
                IntMatrix::from_columns(&reduced, tg.num_generators()),
                on_cycles,
            )
        }
    };
    Ok(DiffEntry {
        source,
        target,
        provenance,
        lift,
        matrix,
        on_cycles,
    })
}

/// `E_{r+1} = ker d_r / im d_r` cell by cell. Cells with no incoming or
/// outgoing differential are carried over unchanged.
pub fn turn_page(page: &Page, d: &PageDifferential) -> Result<Page, SpecSeqError> {
    let r = page.r;
    let rr = r as i64;
    let mut cells = BTreeMap::new();
    let mut flagged = page.flagged.clone();
    for entry in d.entries.values() {
        if entry.provenance == Provenance::AssumedZeroUnknown {
            flagged.insert(entry.source);
            flagged.insert(entry.target);
        }
    }
    for (&(s, t), cell) in &page.cells {
        let out = d.entry(s, t).filter(|e| !e.is_zero());
        let inc = d.entry(s - rr, t - rr + 1).filter(|e| !e.is_zero());
        if out.is_none() && inc.is_none() {
            cells.insert((s, t), cell.clone());
            continue;
        }
        let mut cycles = cell.sq.cycles.clone();
        if let Some(e) = out {
            let tgt = &page.cells[&e.target];
            let keep = preimage_basis(&e.on_cycles, &tgt.sq.boundaries);
            cycles = cell.sq.cycles.mul(&keep);
        }
        let mut boundaries = cell.sq.boundaries.clone();
        if let Some(e) = inc {
            boundaries = boundaries.hstack(&e.on_cycles);
        }
        let sq = crate::abgroup::Subquotient::new(
            cell.sq.ambient_names.clone(),
            cell.sq.ambient_orders.clone(),
            cycles,
            boundaries,
        )
        .map_err(|_| SpecSeqError::SquareNonzero {
            r,
            s: s - rr,
            t: t - rr + 1,
        })?
        .with_pro2(cell.group().is_pro2());
        cells.insert(
            (s, t),
            Cell {
                sq,
                monomials: cell.monomials.clone(),
            },
        );
    }
    Ok(Page {
        r: r + 1,
        window: page.window,
        computed: page.computed,
        cells,
        flagged,
    })
}

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::family::CoefficientFamily;
use super::window::Window;
use super::SpecSeqError;
use crate::abgroup::{FgAbGroup, IntMatrix, Subquotient};
use crate::c2cohomology::cohomology_periodic;
use crate::gradedring::{DegreeQuery, ExponentBounds, Monomial, RingPresentation};

/// One bidegree of a page: a subquotient `Z_r / B_r` of the E₂ group,
/// written on the E₂ basis. `monomials` is set when that basis comes from a
/// ring presentation.
#[derive(Debug, Clone)]
pub struct Cell {
    pub sq: Subquotient,
    pub monomials: Option<Vec<Monomial>>,
}

impl Cell {
    /// The E₂ cell on the given basis (`orders[i] = 0` for free summands).
    pub fn e2(names: Vec<String>, orders: Vec<BigInt>, pro2: bool) -> Result<Self, SpecSeqError> {
        let n = names.len();
        let sq = Subquotient::new(
            names,
            orders,
            IntMatrix::identity(n),
            IntMatrix::zeros(n, 0),
        )?
        .with_pro2(pro2);
        Ok(Self {
            sq,
            monomials: None,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        self.sq.group()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sq.ambient_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.group().is_trivial()
    }
}

/// `E_r` over a computed window. `window` is the part where the page is
/// exact; `computed` includes the padding needed for later pages.
#[derive(Debug, Clone)]
pub struct Page {
    pub r: usize,
    pub window: Window,
    pub computed: Window,
    pub cells: BTreeMap<(i64, i64), Cell>,
    /// Cells touched by a differential of unknown value on this or an
    /// earlier page.
    pub flagged: BTreeSet<(i64, i64)>,
}

impl Page {
    pub fn cell(&self, s: i64, t: i64) -> Option<&Cell> {
        self.cells.get(&(s, t))
    }

    /// The group at `(s, t)`, trivial outside the computed window.
    pub fn group(&self, s: i64, t: i64) -> FgAbGroup {
        self.cell(s, t)
            .map(|c| c.group().clone())
            .unwrap_or_else(FgAbGroup::trivial)
    }

    /// Nonzero cells inside the exact window, ordered by `(s, t)`.
    pub fn nonzero_cells(&self) -> Vec<((i64, i64), &Cell)> {
        self.cells
            .iter()
            .filter(|(&(s, t), c)| self.window.contains(s, t) && !c.is_zero())
            .map(|(k, c)| (*k, c))
            .collect()
    }

    /// No nonzero cell in the exact window.
    pub fn is_zero(&self) -> bool {
        self.nonzero_cells().is_empty()
    }

    /// Whether the exact-window cells coincide with those of `other`.
    pub fn same_cells(&self, other: &Page) -> bool {
        self.window
            .cells()
            .iter()
            .all(|&(s, t)| match (self.cell(s, t), other.cell(s, t)) {
                (Some(a), Some(b)) => a.sq.same_lattices(&b.sq.cycles, &b.sq.boundaries),
                (None, None) => true,
                _ => false,
            })
    }
}

/// `E₂^{s,t} = H^s(C2; π_t)` over `computed`, exact on `window`.
pub fn build_e2_padded(
    family: &CoefficientFamily,
    window: Window,
    computed: Window,
) -> Result<Page, SpecSeqError> {
    let mut cells = BTreeMap::new();
    let mut modules = BTreeMap::new();
    for (s, t) in computed.cells() {
        let m = modules.entry(t).or_insert_with(|| family.module(t));
        let g = cohomology_periodic(m, s as usize);
        cells.insert(
            (s, t),
            Cell::e2(g.names().to_vec(), g.generator_orders(), g.is_pro2())?,
        );
    }
    Ok(Page {
        r: 2,
        window,
        computed,
        cells,
        flagged: BTreeSet::new(),
    })
}

/// `E₂^{s,t} = H^s(C2; π_t)` on the window.
pub fn build_e2(family: &CoefficientFamily, window: Window) -> Result<Page, SpecSeqError> {
    build_e2_padded(family, window, window)
}

/// Rewrites E₂ cells on the monomial basis of `ring` wherever the two agree
/// in invariant factors. Returns the bidegrees left on the cohomology basis.
pub fn relabel_with_ring(
    page: &mut Page,
    ring: &RingPresentation,
    bounds: &ExponentBounds,
) -> Result<Vec<(i64, i64)>, SpecSeqError> {
    let mut kept = Vec::new();
    for (&(s, t), cell) in page.cells.iter_mut() {
        let basis = ring.basis(&DegreeQuery::bidegree(t, s), bounds)?;
        let ring_group = ring.group_from_basis(&basis);
        if !ring_group.is_isomorphic(cell.group()) {
            kept.push((s, t));
            continue;
        }
        let pro2 = cell.group().is_pro2();
        let names = basis.iter().map(|(m, _)| ring.monomial_name(m)).collect();
        let orders = basis.iter().map(|(_, o)| o.clone()).collect();
        let mut fresh = Cell::e2(names, orders, pro2)?;
        fresh.monomials = Some(basis.into_iter().map(|(m, _)| m).collect());
        *cell = fresh;
    }
    Ok(kept)
}

/// Nonzero cells on the line `t - s = n`, ascending in `s`. Extensions are
/// left unresolved.
pub fn stem_assoc_graded(page: &Page, n: i64) -> Vec<(i64, FgAbGroup)> {
    (0..=page.window.filtration_max)
        .filter(|&s| page.window.contains(s, n + s))
        .map(|s| (s, page.group(s, n + s)))
        .filter(|(_, g)| !g.is_trivial())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ku_e2_cells() {
        let p = build_e2(
            &CoefficientFamily::complex_k_theory(true),
            Window::default(),
        )
        .unwrap();
        let g = p.group(0, 4);
        assert_eq!(g.free_rank(), 1);
        assert!(g.is_pro2());
        assert_eq!(p.group(3, 6).symbol(), "Z/2");
        for (s, t) in Window::default().cells() {
            if t.rem_euclid(2) == 1 {
                assert!(p.group(s, t).is_trivial());
            }
        }
    }

    #[test]
    fn zero_family_gives_zero_page() {
        let p = build_e2(&CoefficientFamily::zero(), Window::new(-1, 1, 2)).unwrap();
        assert!(p.is_zero());
        assert!(stem_assoc_graded(&p, 0).is_empty());
    }
}

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{image_basis, preimage_basis, LatticeSolver};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::AbGroupError;

/// A finitely generated abelian group `Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^r` in
/// invariant-factor form, `d_1 | d_2 | ... | d_k`, every `d_i ≥ 2`.
///
/// Generators are ordered torsion first, then free. Free summands carry a
/// single completion tag for the whole group: `pro2` marks them as copies of
/// the 2-adic integers rather than of `Z`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    torsion: Vec<BigUint>,
    free_rank: usize,
    names: Vec<String>,
    pro2: bool,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self {
            torsion: Vec::new(),
            free_rank: 0,
            names: Vec::new(),
            pro2: false,
        }
    }

    /// Builds a group already in invariant-factor form.
    pub fn new(
        free_rank: usize,
        torsion: Vec<BigUint>,
        names: Vec<String>,
    ) -> Result<Self, AbGroupError> {
        if names.len() != free_rank + torsion.len() {
            return Err(AbGroupError::NameCount {
                expected: free_rank + torsion.len(),
                got: names.len(),
            });
        }
        for d in &torsion {
            if *d < BigUint::from(2u8) {
                return Err(AbGroupError::NotInvariantForm(format!(
                    "invariant factor {d} is below 2"
                )));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(AbGroupError::NotInvariantForm(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            torsion,
            free_rank,
            names,
            pro2: false,
        })
    }

    /// Group with default generator names `g0, g1, ...`.
    pub fn from_invariants(free_rank: usize, torsion: &[u64]) -> Result<Self, AbGroupError> {
        let n = free_rank + torsion.len();
        Self::new(
            free_rank,
            torsion.iter().map(|&d| BigUint::from(d)).collect(),
            (0..n).map(|i| format!("g{i}")).collect(),
        )
    }

    pub fn cyclic(order: u64, name: &str) -> Self {
        if order == 0 {
            Self::free(1, &[name])
        } else if order == 1 {
            Self::trivial()
        } else {
            Self {
                torsion: vec![BigUint::from(order)],
                free_rank: 0,
                names: vec![name.to_string()],
                pro2: false,
            }
        }
    }

    pub fn free(rank: usize, names: &[&str]) -> Self {
        assert_eq!(rank, names.len());
        Self {
            torsion: Vec::new(),
            free_rank: rank,
            names: names.iter().map(|s| s.to_string()).collect(),
            pro2: false,
        }
    }

    pub fn with_pro2(mut self, pro2: bool) -> Self {
        self.pro2 = pro2;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_pro2(&self) -> bool {
        self.pro2
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of generator `i`; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        match self.torsion.get(i) {
            Some(d) => BigInt::from(d.clone()),
            None => BigInt::zero(),
        }
    }

    pub fn generator_orders(&self) -> Vec<BigInt> {
        (0..self.num_generators())
            .map(|i| self.generator_order(i))
            .collect()
    }

    /// Product of the invariant factors (order of the torsion subgroup).
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().fold(BigUint::one(), |acc, d| acc * d)
    }

    /// Order of a finite group, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Same invariant factors and free rank, ignoring names and completion.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Diagonal relation matrix of the standard presentation.
    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.generator_orders())
    }

    /// Reduces a coordinate vector modulo the generator orders.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        reduce_by_orders(x, &self.generator_orders())
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Direct sum, re-normalized to invariant-factor form.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> = self
            .generator_orders()
            .into_iter()
            .chain(other.generator_orders())
            .collect();
        let names: Vec<String> = self.names.iter().chain(&other.names).cloned().collect();
        CyclicSum::new(names, orders, self.pro2 || other.pro2).normalize()
    }

    /// Short symbolic form, e.g. `Z ⊕ Z/4`, `Z/2`, `0`.
    pub fn symbol(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let free = if self.pro2 { "Z_2" } else { "Z" };
        match self.free_rank {
            0 => {}
            1 => parts.push(free.to_string()),
            r => parts.push(format!("{free}^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        parts.join(" ⊕ ")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.symbol(), self.names.join(", "))
    }
}

/// Formats an integer combination of named basis elements, e.g. `2a`,
/// `h1z+h1^3`, `-a`.
pub fn format_combination(coeffs: &[BigInt], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let compound = name.contains('+') || name.contains('-');
        let name = if compound {
            format!("({name})")
        } else {
            name.clone()
        };
        let neg = c.sign() == Sign::Minus;
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if a.is_one() {
            out.push_str(&name);
        } else {
            out.push_str(&format!("{a}{name}"));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// A direct sum of cyclic groups `Z/n_1 ⊕ ... ⊕ Z/n_k` (`n_i = 0` for `Z`)
/// on named generators, not necessarily in invariant-factor form. This is the
/// carrier of [`Hom`] so that maps can be written on any convenient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSum {
    names: Vec<String>,
    orders: Vec<BigInt>,
    pro2: bool,
}

impl CyclicSum {
    pub fn new(names: Vec<String>, orders: Vec<BigInt>, pro2: bool) -> Self {
        assert_eq!(names.len(), orders.len(), "one order per generator");
        Self {
            names,
            orders,
            pro2,
        }
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new(), Vec::new(), false)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn is_pro2(&self) -> bool {
        self.pro2
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.orders.clone())
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        reduce_by_orders(x, &self.orders)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Invariant-factor form, names expressed in this basis.
    pub fn normalize(&self) -> FgAbGroup {
        group_from_presentation(&self.relation_matrix(), &self.names).with_pro2(self.pro2)
    }
}

impl From<&FgAbGroup> for CyclicSum {
    fn from(g: &FgAbGroup) -> Self {
        Self::new(g.names().to_vec(), g.generator_orders(), g.is_pro2())
    }
}

impl From<FgAbGroup> for CyclicSum {
    fn from(g: FgAbGroup) -> Self {
        Self::from(&g)
    }
}

fn reduce_by_orders(x: &[BigInt], orders: &[BigInt]) -> Vec<BigInt> {
    x.iter()
        .zip(orders)
        .map(|(v, d)| {
            if d.is_zero() {
                v.clone()
            } else {
                v.mod_floor(d)
            }
        })
        .collect()
}

/// A homomorphism between cyclic sums, given on generators: column `j`
/// holds the coordinates of the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub source: CyclicSum,
    pub target: CyclicSum,
    pub matrix: IntMatrix,
}

impl Hom {
    pub fn new(
        source: impl Into<CyclicSum>,
        target: impl Into<CyclicSum>,
        matrix: IntMatrix,
    ) -> Result<Self, AbGroupError> {
        let source = source.into();
        let target = target.into();
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(AbGroupError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        for (j, d) in source.orders().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let img: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&img) {
                return Err(AbGroupError::NotWellDefined(format!(
                    "generator {} of order {d} maps to an element of larger order",
                    source.names()[j]
                )));
            }
        }
        let matrix = reduce_columns(&matrix, &target);
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: impl Into<CyclicSum>, target: impl Into<CyclicSum>) -> Self {
        let source = source.into();
        let target = target.into();
        let matrix = IntMatrix::zeros(target.num_generators(), source.num_generators());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Hom {
        let m = other.matrix.mul(&self.matrix);
        Hom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: reduce_columns(&m, &other.target),
        }
    }
}

fn reduce_columns(m: &IntMatrix, target: &CyclicSum) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = m.columns().iter().map(|c| target.reduce(c)).collect();
    IntMatrix::from_columns(&cols, m.rows())
}

/// Cokernel of `relations: Z^k -> Z^n` (columns are relations among `n`
/// named generators), in invariant-factor form. Generator names are
/// expressed as integer combinations of the input names.
pub fn group_from_presentation(relations: &IntMatrix, names: &[String]) -> FgAbGroup {
    assert_eq!(relations.rows(), names.len(), "one name per generator");
    let n = relations.rows();
    let sq = Subquotient::new(
        names.to_vec(),
        vec![BigInt::zero(); n],
        IntMatrix::identity(n),
        relations.clone(),
    )
    .expect("identity lattice contains every relation");
    sq.group
}

/// `ker(g) / im(f)` for `f: A -> B`, `g: B -> C`, with generator names lifted
/// to combinations of the generators of `B`.
pub fn subquotient(f: &Hom, g: &Hom) -> Result<Subquotient, AbGroupError> {
    if f.target != g.source {
        return Err(AbGroupError::Shape("f's target is not g's source".into()));
    }
    if !f.then(g).is_zero() {
        return Err(AbGroupError::CompositionNonzero);
    }
    let b = &f.target;
    let cycles = preimage_basis(&g.matrix, &g.target.relation_matrix());
    let boundaries = f.matrix.hstack(&b.relation_matrix());
    Subquotient::new(b.names().to_vec(), b.orders().to_vec(), cycles, boundaries)
        .map(|s| s.with_pro2(b.is_pro2()))
}

/// A subquotient `Z / B` of an ambient group `Z^n / R`, where `R` is the
/// diagonal lattice of `ambient_orders`, and `R ⊆ B ⊆ Z ⊆ Z^n`.
///
/// Keeps the lattices alongside the resulting group so that elements of the
/// ambient group can be mapped to group coordinates, and group generators
/// lifted back to ambient representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient_names: Vec<String>,
    pub ambient_orders: Vec<BigInt>,
    /// Basis of the cycle lattice `Z` (columns).
    pub cycles: IntMatrix,
    /// Generators of the boundary lattice `B` (columns), including `R`.
    pub boundaries: IntMatrix,
    pub group: FgAbGroup,
    /// Ambient representative of each group generator (columns).
    pub reps: IntMatrix,
    /// Maps `Z`-basis coordinates to group coordinates.
    coords: IntMatrix,
    solver: LatticeSolver,
}

impl PartialEq for Subquotient {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_names == other.ambient_names
            && self.ambient_orders == other.ambient_orders
            && self.cycles == other.cycles
            && self.boundaries == other.boundaries
            && self.group == other.group
            && self.reps == other.reps
    }
}

impl Subquotient {
    /// `cycles` need not be a basis; any generating set of columns works.
    pub fn new(
        ambient_names: Vec<String>,
        ambient_orders: Vec<BigInt>,
        cycles: IntMatrix,
        boundaries: IntMatrix,
    ) -> Result<Self, AbGroupError> {
        let n = ambient_names.len();
        assert_eq!(ambient_orders.len(), n);
        assert_eq!(cycles.rows(), n);
        assert_eq!(boundaries.rows(), n);
        let relations = IntMatrix::diagonal(ambient_orders.clone());
        let boundaries = boundaries.hstack(&relations);
        let cycles = image_basis(&cycles.hstack(&relations));
        let solver = LatticeSolver::new(&cycles);
        let k = cycles.cols();
        let mut y_cols = Vec::with_capacity(boundaries.cols());
        for col in boundaries.columns() {
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            let c = solver.solve(&col).ok_or(AbGroupError::BoundaryNotCycle)?;
            y_cols.push(c);
        }
        let y = IntMatrix::from_columns(&y_cols, k);
        let s = smith_normal_form(&y);
        let diag = s.diagonal();
        let order_of = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        let kept: Vec<usize> = (0..k).filter(|&i| !order_of(i).is_one()).collect();
        let reduce_ambient = |x: Vec<BigInt>| reduce_by_orders(&x, &ambient_orders);
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        let mut rep_cols = Vec::with_capacity(kept.len());
        let mut coord_rows = Vec::with_capacity(kept.len());
        for &i in &kept {
            let d = order_of(i);
            let mut in_cycles = s.u_inv.column(i);
            let mut row = s.u.row(i).to_vec();
            let mut rep = reduce_ambient(cycles.mul_vec(&in_cycles));
            // Prefer a representative whose leading coefficient is positive.
            let lead_negative = rep
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative());
            if lead_negative {
                in_cycles.iter_mut().for_each(|x| *x = -&*x);
                row.iter_mut().for_each(|x| *x = -&*x);
                rep = reduce_ambient(cycles.mul_vec(&in_cycles));
            }
            if d.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(d.magnitude().clone());
            }
            rep_cols.push(rep);
            coord_rows.push(row);
        }
        let names: Vec<String> = rep_cols
            .iter()
            .map(|r| format_combination(r, &ambient_names))
            .collect();
        let group = FgAbGroup::new(free_rank, torsion, names)?;
        Ok(Self {
            reps: IntMatrix::from_columns(&rep_cols, n),
            coords: IntMatrix::from_big_rows(coord_rows, k),
            ambient_names,
            ambient_orders,
            cycles,
            boundaries,
            group,
            solver,
        })
    }

    pub fn with_pro2(mut self, pro2: bool) -> Self {
        self.group = self.group.with_pro2(pro2);
        self
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn into_group(self) -> FgAbGroup {
        self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_names.len()
    }

    /// Group coordinates of an ambient element, `None` if it is not a cycle.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.solver.solve(x)?;
        Some(self.group.reduce(&self.coords.mul_vec(&c)))
    }

    pub fn contains_cycle(&self, x: &[BigInt]) -> bool {
        self.solver.solve(x).is_some()
    }

    /// Ambient representative of a group element given in group coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.reps.mul_vec(coords)
    }

    /// Whether `B ⊆ Z` are unchanged by passing to a new pair.
    pub fn same_lattices(&self, cycles: &IntMatrix, boundaries: &IntMatrix) -> bool {
        let same_span = |a: &IntMatrix, b: &IntMatrix| {
            let sa = LatticeSolver::new(&image_basis(a));
            let sb = LatticeSolver::new(&image_basis(b));
            a.columns().iter().all(|c| sb.solve(c).is_some())
                && b.columns().iter().all(|c| sa.solve(c).is_some())
        };
        same_span(&self.cycles, cycles) && same_span(&self.boundaries, boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cyclic_presentation() {
        let g = group_from_presentation(&IntMatrix::from_rows(&[[2]]), &names(&["x"]));
        assert_eq!(g.symbol(), "Z/2");
        assert_eq!(g.names(), &["x".to_string()]);
    }

    #[test]
    fn free_presentation() {
        let g = group_from_presentation(&IntMatrix::zeros(2, 0), &names(&["x", "y"]));
        assert_eq!(g.free_rank(), 2);
        assert!(g.torsion().is_empty());
    }

    #[test]
    fn two_relations_collapse_to_z2() {
        // Columns are relations: 2x = 0 and x + y = 0.
        let rel = IntMatrix::from_rows(&[[2, 1], [0, 1]]);
        let g = group_from_presentation(&rel, &names(&["x", "y"]));
        assert!(g.is_isomorphic(&FgAbGroup::from_invariants(0, &[2]).unwrap()));
    }

    #[test]
    fn invariant_form_is_enforced() {
        assert!(FgAbGroup::from_invariants(0, &[4, 2]).is_err());
        assert!(FgAbGroup::from_invariants(0, &[1]).is_err());
        assert!(FgAbGroup::new(1, vec![], vec![]).is_err());
        let g = FgAbGroup::cyclic(4, "x").direct_sum(&FgAbGroup::cyclic(2, "y"));
        assert_eq!(g.symbol(), "Z/2 ⊕ Z/4");
    }

    #[test]
    fn subquotient_of_zero_complex() {
        let z = FgAbGroup::free(1, &["a"]);
        let f = Hom::zero(FgAbGroup::trivial(), z.clone());
        let g = Hom::zero(z.clone(), FgAbGroup::trivial());
        let h = subquotient(&f, &g).unwrap();
        assert_eq!(h.group().symbol(), "Z");
        assert_eq!(h.group().names(), &["a".to_string()]);
    }

    #[test]
    fn kernel_of_reduction_is_named_2a() {
        let z = FgAbGroup::free(1, &["a"]);
        let z2 = FgAbGroup::cyclic(2, "h");
        let g = Hom::new(z.clone(), z2, IntMatrix::from_rows(&[[1]])).unwrap();
        let f = Hom::zero(FgAbGroup::trivial(), z);
        let h = subquotient(&f, &g).unwrap();
        assert_eq!(h.group().symbol(), "Z");
        assert_eq!(h.group().names(), &["2a".to_string()]);
    }

    #[test]
    fn cokernel_of_doubling() {
        let z = FgAbGroup::free(1, &["a"]);
        let f = Hom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let g = Hom::zero(z, FgAbGroup::trivial());
        let h = subquotient(&f, &g).unwrap();
        assert_eq!(h.group().symbol(), "Z/2");
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let z = FgAbGroup::free(1, &["a"]);
        let id = Hom::new(z.clone(), z.clone(), IntMatrix::identity(1)).unwrap();
        assert!(matches!(
            subquotient(&id, &id),
            Err(AbGroupError::CompositionNonzero)
        ));
    }

    #[test]
    fn hom_must_respect_orders() {
        let z2 = FgAbGroup::cyclic(2, "x");
        let z = FgAbGroup::free(1, &["a"]);
        assert!(Hom::new(z2.clone(), z, IntMatrix::from_rows(&[[1]])).is_err());
        let z4 = FgAbGroup::cyclic(4, "y");
        assert!(Hom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[1]])).is_err());
        assert!(Hom::new(z2, z4, IntMatrix::from_rows(&[[2]])).is_ok());
    }

    #[test]
    fn coordinates_and_lift() {
        let z = FgAbGroup::free(1, &["a"]);
        let z2 = FgAbGroup::cyclic(2, "h");
        let g = Hom::new(z.clone(), z2, IntMatrix::from_rows(&[[1]])).unwrap();
        let f = Hom::zero(FgAbGroup::trivial(), z);
        let h = subquotient(&f, &g).unwrap();
        let six = vec![BigInt::from(6)];
        assert_eq!(h.coordinates(&six), Some(vec![BigInt::from(3)]));
        assert_eq!(h.coordinates(&[BigInt::from(3)]), None);
        assert_eq!(h.lift(&[BigInt::from(1)]), vec![BigInt::from(2)]);
    }

    #[test]
    fn combination_format() {
        let n = names(&["h1z", "h1^3", "a"]);
        let c = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(format_combination(&c(&[1, 1, 0]), &n), "h1z+h1^3");
        assert_eq!(format_combination(&c(&[0, 0, -2]), &n), "-2a");
        assert_eq!(format_combination(&c(&[0, 0, 0]), &n), "0");
    }
}

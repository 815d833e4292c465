//! Group cohomology `H^s(C2; M)` of an involution on a finitely generated
//! abelian group.
//!
//! [`cohomology_periodic`] is the production path: the 2-periodic
//! resolution with maps `1 - σ` and `N = 1 + σ`. [`cohomology_bar`] computes
//! the same groups from the unnormalized inhomogeneous cochain complex
//! `C^n = Maps(C2^n, M)` and serves as an independent oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{subquotient, AbGroupError, CyclicSum, FgAbGroup, Hom, IntMatrix};

/// Largest cohomological degree the bar-complex oracle accepts by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("involution must be a square matrix of size {expected}, got {rows}x{cols}")]
    NotSquare {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("involution does not square to the identity")]
    NotInvolution,
    #[error("involution does not preserve the order of generator {0}")]
    OrderNotPreserved(String),
    #[error("bar complex oracle limited to s <= {limit}, requested {requested}")]
    OracleLimitExceeded { limit: usize, requested: usize },
    #[error(transparent)]
    Group(#[from] AbGroupError),
}

/// A finitely generated abelian group `⊕ Z/n_i` (with `n_i = 0` for `Z`)
/// together with an involution `σ` given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Module {
    names: Vec<String>,
    orders: Vec<BigInt>,
    involution: IntMatrix,
    pro2: bool,
}

impl C2Module {
    /// Validates `σ² = id` modulo the relations and that `σ` maps each
    /// generator to an element whose order divides the generator's.
    pub fn new(
        names: Vec<String>,
        orders: Vec<BigInt>,
        involution: IntMatrix,
        pro2: bool,
    ) -> Result<Self, CohomologyError> {
        let n = names.len();
        assert_eq!(orders.len(), n, "one order per generator");
        if involution.rows() != n || involution.cols() != n {
            return Err(CohomologyError::NotSquare {
                expected: n,
                rows: involution.rows(),
                cols: involution.cols(),
            });
        }
        let m = Self {
            names,
            orders,
            involution,
            pro2,
        };
        for j in 0..n {
            let d = &m.orders[j];
            if d.is_zero() {
                continue;
            }
            let img: Vec<BigInt> = m.involution.column(j).iter().map(|x| x * d).collect();
            if !m.is_zero(&img) {
                return Err(CohomologyError::OrderNotPreserved(m.names[j].clone()));
            }
        }
        let sq = m.involution.mul(&m.involution);
        let diff = sq.sub(&IntMatrix::identity(n));
        if diff.columns().iter().any(|c| !m.is_zero(c)) {
            return Err(CohomologyError::NotInvolution);
        }
        Ok(m)
    }

    /// `Z` (or `Z_2` when `pro2`) with `σ = ±1`.
    pub fn integers(name: &str, sign: i64, pro2: bool) -> Self {
        Self::new(
            vec![name.to_string()],
            vec![BigInt::zero()],
            IntMatrix::from_rows(&[[sign]]),
            pro2,
        )
        .expect("±1 is an involution")
    }

    /// `Z/n` with `σ = ±1`.
    pub fn cyclic(name: &str, order: u64, sign: i64) -> Self {
        Self::new(
            vec![name.to_string()],
            vec![BigInt::from(order)],
            IntMatrix::from_rows(&[[sign]]),
            false,
        )
        .expect("±1 is an involution")
    }

    /// `Z ⊕ Z` with the two summands swapped.
    pub fn swap(names: [&str; 2]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![BigInt::zero(), BigInt::zero()],
            IntMatrix::from_rows(&[[0, 1], [1, 0]]),
            false,
        )
        .expect("swap is an involution")
    }

    pub fn zero() -> Self {
        Self {
            names: Vec::new(),
            orders: Vec::new(),
            involution: IntMatrix::zeros(0, 0),
            pro2: false,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn involution(&self) -> &IntMatrix {
        &self.involution
    }

    pub fn is_pro2(&self) -> bool {
        self.pro2
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    fn is_zero(&self, x: &[BigInt]) -> bool {
        x.iter().zip(&self.orders).all(|(v, d)| {
            if d.is_zero() {
                v.is_zero()
            } else {
                v.is_multiple_of(d)
            }
        })
    }

    /// The underlying group in invariant-factor form.
    pub fn underlying(&self) -> FgAbGroup {
        self.generators().normalize()
    }

    fn generators(&self) -> CyclicSum {
        CyclicSum::new(self.names.clone(), self.orders.clone(), self.pro2)
    }

    fn endo(&self, m: IntMatrix) -> Hom {
        let g = self.generators();
        Hom::new(g.clone(), g, m).expect("polynomial in σ preserves orders")
    }

    fn one_minus_sigma(&self) -> IntMatrix {
        IntMatrix::identity(self.rank()).sub(&self.involution)
    }

    fn norm(&self) -> IntMatrix {
        IntMatrix::identity(self.rank()).add(&self.involution)
    }
}

/// `H^s(C2; M)` from the 2-periodic resolution:
/// `H^0 = ker(1-σ)`, `H^odd = ker(N)/im(1-σ)`, `H^even = ker(1-σ)/im(N)`.
///
/// Generator names are the cocycle representatives in `M`, tagged with the
/// degree for `s ≥ 1`, e.g. `x⟨2⟩`.
pub fn cohomology_periodic(m: &C2Module, s: usize) -> FgAbGroup {
    let g = m.generators();
    let one_minus = m.endo(m.one_minus_sigma());
    let norm = m.endo(m.norm());
    let zero_in = Hom::zero(CyclicSum::trivial(), g);
    let sq = if s == 0 {
        subquotient(&zero_in, &one_minus)
    } else if s % 2 == 1 {
        subquotient(&one_minus, &norm)
    } else {
        subquotient(&norm, &one_minus)
    }
    .expect("(1-σ)N = N(1-σ) = 1 - σ² = 0");
    tag_degree(sq.into_group(), s)
}

fn tag_degree(g: FgAbGroup, s: usize) -> FgAbGroup {
    if s == 0 {
        return g;
    }
    let names = g.names().iter().map(|n| format!("{n}⟨{s}⟩")).collect();
    g.with_names(names)
}

/// Cohomology of the inhomogeneous cochain complex
/// `C^n = Maps(C2^n, M)` with the standard coboundary
/// `(δφ)(g_1..g_{n+1}) = g_1·φ(g_2..g_{n+1}) + Σ (-1)^i φ(..g_i g_{i+1}..) + (-1)^{n+1} φ(g_1..g_n)`.
pub fn cohomology_bar(m: &C2Module, s: usize, limit: usize) -> Result<FgAbGroup, CohomologyError> {
    if s > limit {
        return Err(CohomologyError::OracleLimitExceeded {
            limit,
            requested: s,
        });
    }
    let c_s = cochain_group(m, s);
    let c_next = cochain_group(m, s + 1);
    let delta_out = Hom::new(c_s.clone(), c_next, coboundary(m, s))?;
    let delta_in = if s == 0 {
        Hom::zero(CyclicSum::trivial(), c_s)
    } else {
        Hom::new(cochain_group(m, s - 1), c_s, coboundary(m, s - 1))?
    };
    let h = subquotient(&delta_in, &delta_out)?;
    Ok(h.into_group().with_pro2(m.pro2))
}

fn cochain_group(m: &C2Module, n: usize) -> CyclicSum {
    let copies = 1usize << n;
    let mut names = Vec::with_capacity(copies * m.rank());
    let mut orders = Vec::with_capacity(copies * m.rank());
    for word in 0..copies {
        for (name, order) in m.names.iter().zip(&m.orders) {
            names.push(format!("{name}@{word:0width$b}", width = n));
            orders.push(order.clone());
        }
    }
    CyclicSum::new(names, orders, m.pro2)
}

/// Matrix of `δ: C^n -> C^{n+1}`. A tuple in `C2^n` is a bit word with bit
/// `i` (from the left) set when `g_i = σ`.
fn coboundary(m: &C2Module, n: usize) -> IntMatrix {
    let r = m.rank();
    let src = 1usize << n;
    let dst = 1usize << (n + 1);
    let mut d = IntMatrix::zeros(dst * r, src * r);
    let bit = |word: usize, i: usize, len: usize| (word >> (len - 1 - i)) & 1;
    let one = BigInt::one();
    for w in 0..dst {
        let len = n + 1;
        // g_1 · φ(g_2 .. g_{n+1})
        let tail = w & ((1usize << n) - 1);
        let act = if bit(w, 0, len) == 1 {
            m.involution.clone()
        } else {
            IntMatrix::identity(r)
        };
        for a in 0..r {
            for b in 0..r {
                d[(w * r + a, tail * r + b)] += &act[(a, b)];
            }
        }
        // Σ_{i=1}^{n} (-1)^i φ(g_1 .. g_i g_{i+1} .. g_{n+1})
        for i in 1..=n {
            let merged = bit(w, i - 1, len) ^ bit(w, i, len);
            let mut v = 0usize;
            for k in 0..len {
                if k == i {
                    continue;
                }
                let b = if k == i - 1 { merged } else { bit(w, k, len) };
                v = (v << 1) | b;
            }
            let sign = if i % 2 == 0 {
                one.clone()
            } else {
                -one.clone()
            };
            for a in 0..r {
                d[(w * r + a, v * r + a)] += &sign;
            }
        }
        // (-1)^{n+1} φ(g_1 .. g_n)
        let head = w >> 1;
        let sign = if (n + 1).is_multiple_of(2) {
            one.clone()
        } else {
            -one.clone()
        };
        for a in 0..r {
            d[(w * r + a, head * r + a)] += &sign;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(g: &FgAbGroup) -> String {
        g.symbol()
    }

    #[test]
    fn trivial_integers() {
        let m = C2Module::integers("x", 1, false);
        assert_eq!(sym(&cohomology_periodic(&m, 0)), "Z");
        assert_eq!(sym(&cohomology_periodic(&m, 1)), "0");
        assert_eq!(sym(&cohomology_periodic(&m, 2)), "Z/2");
    }

    #[test]
    fn sign_integers() {
        let m = C2Module::integers("x", -1, false);
        let got: Vec<String> = (0..5).map(|s| sym(&cohomology_periodic(&m, s))).collect();
        assert_eq!(got, ["0", "Z/2", "0", "Z/2", "0"]);
    }

    #[test]
    fn mod_two_any_action() {
        let m = C2Module::cyclic("x", 2, 1);
        assert_eq!(sym(&cohomology_periodic(&m, 3)), "Z/2");
        let m = C2Module::cyclic("x", 2, -1);
        assert_eq!(sym(&cohomology_periodic(&m, 3)), "Z/2");
    }

    #[test]
    fn names_are_cocycle_representatives() {
        let m = C2Module::integers("β", -1, true);
        let h1 = cohomology_periodic(&m, 1);
        assert_eq!(h1.names(), &["β⟨1⟩".to_string()]);
        let h0 = cohomology_periodic(&C2Module::integers("a", 1, true), 0);
        assert!(h0.is_pro2());
        assert_eq!(h0.names(), &["a".to_string()]);
    }

    #[test]
    fn bar_oracle_small_cases() {
        let triv = C2Module::integers("x", 1, false);
        assert_eq!(sym(&cohomology_bar(&triv, 0, 8).unwrap()), "Z");
        assert_eq!(sym(&cohomology_bar(&triv, 2, 8).unwrap()), "Z/2");
        let swap = C2Module::swap(["x", "y"]);
        assert_eq!(sym(&cohomology_bar(&swap, 1, 8).unwrap()), "0");
        let sign = C2Module::integers("x", -1, false);
        assert_eq!(sym(&cohomology_bar(&sign, 4, 8).unwrap()), "0");
        assert_eq!(sym(&cohomology_bar(&sign, 1, 8).unwrap()), "Z/2");
    }

    #[test]
    fn bar_oracle_limit() {
        let m = C2Module::integers("x", 1, false);
        assert!(matches!(
            cohomology_bar(&m, 9, DEFAULT_ORACLE_LIMIT),
            Err(CohomologyError::OracleLimitExceeded {
                limit: 8,
                requested: 9
            })
        ));
    }

    #[test]
    fn rejects_non_involutions() {
        let bad = C2Module::new(
            vec!["x".into(), "y".into()],
            vec![BigInt::zero(), BigInt::zero()],
            IntMatrix::from_rows(&[[0, 1], [1, 1]]),
            false,
        );
        assert_eq!(bad.unwrap_err(), CohomologyError::NotInvolution);
        let not_square = C2Module::new(
            vec!["x".into()],
            vec![BigInt::zero()],
            IntMatrix::from_rows(&[[1, 0]]),
            false,
        );
        assert!(matches!(not_square, Err(CohomologyError::NotSquare { .. })));
        // Z/4 -> Z/4 by 2 squares to 0, not the identity; Z/2 ⊕ Z mixing orders.
        let mixed = C2Module::new(
            vec!["t".into(), "f".into()],
            vec![BigInt::from(2), BigInt::zero()],
            IntMatrix::from_rows(&[[1, 0], [1, 1]]),
            false,
        );
        assert!(matches!(mixed, Err(CohomologyError::OrderNotPreserved(_))));
    }

    #[test]
    fn sigma_squared_checked_modulo_relations() {
        // σ = 3 on Z/4 squares to 9 = 1 mod 4.
        let m = C2Module::new(
            vec!["x".into()],
            vec![BigInt::from(4)],
            IntMatrix::from_rows(&[[3]]),
            false,
        );
        assert!(m.is_ok());
    }
}

//! Sublattices of `Z^n` given by generating columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Basis (as columns) of the integer kernel of `a`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    if a.cols() == 0 {
        return IntMatrix::zeros(0, 0);
    }
    let s = smith_normal_form(a);
    let r = s.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    s.v.select_columns(&idx)
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn image_basis(gens: &IntMatrix) -> IntMatrix {
    let n = gens.rows();
    if gens.cols() == 0 || gens.is_zero() {
        return IntMatrix::zeros(n, 0);
    }
    let s = smith_normal_form(gens);
    let r = s.rank();
    let mut cols = Vec::with_capacity(r);
    for i in 0..r {
        let d = &s.d[(i, i)];
        cols.push(s.u_inv.column(i).iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_columns(&cols, n)
}

/// Solves `basis · c = x` for an integer vector `c`, where `basis` has full
/// column rank. Returns `None` when `x` is outside the lattice.
pub fn solve_in_lattice(basis: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    LatticeSolver::new(basis).solve(x)
}

/// Precomputed Smith form of a full-column-rank basis for repeated solves.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    rows: usize,
}

impl LatticeSolver {
    pub fn new(basis: &IntMatrix) -> Self {
        let s = smith_normal_form(basis);
        let diag = s.diagonal()[..basis.cols().min(basis.rows())].to_vec();
        debug_assert_eq!(s.rank(), basis.cols(), "lattice basis is not independent");
        Self {
            u: s.u,
            v: s.v,
            diag,
            rows: basis.rows(),
        }
    }

    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.rows, "vector length mismatch");
        let y = self.u.mul_vec(x);
        let k = self.diag.len();
        if y[k..].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let mut w = Vec::with_capacity(k);
        for (yi, di) in y.iter().zip(&self.diag) {
            let (q, r) = yi.div_rem(di);
            if !r.is_zero() {
                return None;
            }
            w.push(q);
        }
        Some(self.v.mul_vec(&w))
    }
}

/// Elements `x` of the ambient lattice with `m·x` in the lattice spanned by
/// `relations` (columns), returned as a basis.
pub fn preimage_basis(m: &IntMatrix, relations: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let aug = m.hstack(&relations.scale(&BigInt::from(-1)));
    let k = kernel_basis(&aug);
    let proj = k.select_rows(0..n);
    image_basis(&proj)
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::SpecSeqError;
use crate::abgroup::IntMatrix;
use crate::gradedring::{
    DegreeQuery, ExponentBounds, Monomial, Polynomial, RingError, RingPresentation,
};

/// Value of `d_r` on each ring generator, indexed like the generators.
pub type GeneratorDiffs = Vec<Polynomial>;

/// `d_r` of a monomial by the Leibniz rule
/// `d(xy) = d(x)y + (-1)^{stem(x)} x d(y)`, normalized.
pub fn d_monomial(
    ring: &RingPresentation,
    diffs: &[Polynomial],
    m: &Monomial,
) -> Result<Polynomial, SpecSeqError> {
    let n = ring.num_generators();
    let mut out = Polynomial::zero();
    // Walk m = g_0^{e_0} g_1^{e_1} ...; `prefix` is the part already passed.
    let mut prefix = ring.one();
    for i in 0..n {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        let g = &ring.generators()[i];
        let stem = g.stem();
        let rest = Monomial::new(
            (0..n)
                .map(|j| if j > i { m.exponent(j) } else { 0 })
                .collect(),
        );
        let prefix_sign = sign(ring.degree(&prefix).stem());
        let power = d_power(ring, diffs, i, e, stem)?;
        let term = ring.multiply(
            &ring.multiply(&Polynomial::from_monomial(prefix.clone()), &power),
            &Polynomial::from_monomial(rest),
        );
        out = out.add(&term.scale(&BigInt::from(prefix_sign)));
        prefix = prefix.mul(&Monomial::generator_power(n, i, e));
    }
    Ok(ring.normalize(&out)?)
}

fn sign(stem: i64) -> i64 {
    if stem.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `d(g^e)`.
fn d_power(
    ring: &RingPresentation,
    diffs: &[Polynomial],
    i: usize,
    e: i64,
    stem: i64,
) -> Result<Polynomial, SpecSeqError> {
    let n = ring.num_generators();
    let dg = &diffs[i];
    let power = |k: i64| Polynomial::from_monomial(Monomial::generator_power(n, i, k));
    if stem.rem_euclid(2) == 0 {
        return Ok(ring.multiply(&power(e - 1), dg).scale(&BigInt::from(e)));
    }
    if e < 0 {
        return Err(SpecSeqError::Ring(RingError::NegativeExponent(
            ring.generators()[i].name.clone(),
        )));
    }
    // d(g^e) = Σ_k (-1)^k g^k d(g) g^{e-1-k} for odd g.
    let mut out = Polynomial::zero();
    for k in 0..e {
        let term = ring.multiply(&ring.multiply(&power(k), dg), &power(e - 1 - k));
        out = out.add(&term.scale(&BigInt::from(sign(k))));
    }
    Ok(out)
}

pub fn d_polynomial(
    ring: &RingPresentation,
    diffs: &[Polynomial],
    p: &Polynomial,
) -> Result<Polynomial, SpecSeqError> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        out = out.add(&d_monomial(ring, diffs, m)?.scale(c));
    }
    Ok(ring.normalize(&out)?)
}

/// Coordinates of a normal-form polynomial on a basis of normal monomials,
/// reduced by `orders`.
pub fn coordinates_on_basis(
    p: &Polynomial,
    basis: &[Monomial],
    orders: &[BigInt],
) -> Result<Vec<BigInt>, SpecSeqError> {
    let index: BTreeMap<&[i64], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exponents(), i))
        .collect();
    let mut out = vec![BigInt::zero(); basis.len()];
    for (m, c) in p.terms() {
        let i = *index.get(m.exponents()).ok_or_else(|| {
            SpecSeqError::LeibnizInconsistent(format!(
                "term {:?} is not in the target basis",
                m.exponents()
            ))
        })?;
        out[i] += c;
    }
    for (x, d) in out.iter_mut().zip(orders) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
    Ok(out)
}

/// E₂-level matrix of `d_r` from `(s, t)` to `(s + r, t + r - 1)` on the
/// given monomial bases.
pub fn leibniz_lift(
    ring: &RingPresentation,
    diffs: &[Polynomial],
    source: &[Monomial],
    target: &[Monomial],
    target_orders: &[BigInt],
) -> Result<IntMatrix, SpecSeqError> {
    let mut cols = Vec::with_capacity(source.len());
    for m in source {
        let d = d_monomial(ring, diffs, m)?;
        cols.push(coordinates_on_basis(&d, target, target_orders)?);
    }
    Ok(IntMatrix::from_columns(&cols, target.len()))
}

/// Basis and orders of the ring in bidegree `(t, s)`.
pub fn ring_cell(
    ring: &RingPresentation,
    s: i64,
    t: i64,
    bounds: &ExponentBounds,
) -> Result<(Vec<Monomial>, Vec<BigInt>), SpecSeqError> {
    let basis = ring.basis(&DegreeQuery::bidegree(t, s), bounds)?;
    Ok(basis.into_iter().unzip())
}

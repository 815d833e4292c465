use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector over the generators of a presentation. Negative
/// exponents are only legal on invertible generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<i64>,
}

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self { exponents }
    }

    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exponents[i] = 1;
        m
    }

    /// `g_i^e` among `n` generators.
    pub fn generator_power(n: usize, i: usize, e: i64) -> Self {
        let mut m = Self::one(n);
        m.exponents[i] = e;
        m
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.exponents[i]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// `self / other` as an exponent difference (may leave negatives).
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn shares_generator(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .any(|(a, b)| *a > 0 && *b > 0)
    }
}

/// Term order: total degree first, ties broken by comparing exponents from
/// the last generator backwards (a larger exponent wins).
pub fn term_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.exponents.iter().rev().cmp(b.exponents.iter().rev()))
}

/// Key wrapper so that `BTreeMap` iterates in term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermKey(pub Monomial);

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        term_cmp(&self.0, &other.0)
    }
}

/// Integer-linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<TermKey, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::monomial(m, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = TermKey(m);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev().map(|(k, v)| (&k.0, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .get(&TermKey(m.clone()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms().next()
    }

    pub(crate) fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter().rev().map(|(k, v)| (k.0, v))
    }

    /// Formats with the given generator names; `sep` joins factors.
    pub fn format(&self, names: &[String], sep: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            let body = format_monomial(m, names, sep);
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{a}{sep}{body}"));
            }
        }
        out
    }
}

pub fn format_monomial(m: &Monomial, names: &[String], sep: &str) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (e, name) in m.exponents().iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_order_prefers_later_generators_on_ties() {
        // Generators [h1, a, z]: a·z outranks h1^2.
        let az = Monomial::new(vec![0, 1, 1]);
        let h2 = Monomial::new(vec![2, 0, 0]);
        assert_eq!(term_cmp(&az, &h2), Ordering::Greater);
        let a2 = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![0, 0, 1]);
        assert_eq!(term_cmp(&a2, &b), Ordering::Greater);
    }

    #[test]
    fn polynomial_cancellation_and_format() {
        let names: Vec<String> = ["h1", "a", "z"].iter().map(|s| s.to_string()).collect();
        let mut p = Polynomial::zero();
        p.add_term(Monomial::new(vec![1, 0, 2]), BigInt::from(1));
        p.add_term(Monomial::new(vec![0, 1, 0]), BigInt::from(-2));
        assert_eq!(p.format(&names, "·"), "h1·z^2-2·a");
        p.add_term(Monomial::new(vec![1, 0, 2]), BigInt::from(-1));
        assert_eq!(p.format(&names, "*"), "-2*a");
        let q = p.add(&p.scale(&BigInt::from(-1)));
        assert!(q.is_zero());
        assert_eq!(q.format(&names, "*"), "0");
    }
}

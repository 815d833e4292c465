use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{format_monomial, term_cmp, Monomial, Polynomial};
use super::parse::parse_polynomial;
use super::RingError;
use crate::abgroup::FgAbGroup;

/// Default cap on rewrite steps inside a single normalization.
pub const DEFAULT_REWRITE_LIMIT: usize = 10_000;

/// A generator with internal degree `t`, filtration `s` and optional motivic
/// weight. `order` is 0 for free (or pro-2) coefficients, otherwise the
/// additive order imposed on every monomial the generator divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingGenerator {
    pub name: String,
    pub t: i64,
    pub s: i64,
    pub weight: Option<i64>,
    pub order: u64,
}

impl RingGenerator {
    pub fn new(name: &str, t: i64, s: i64, order: u64) -> Self {
        Self {
            name: name.to_string(),
            t,
            s,
            weight: None,
            order,
        }
    }

    pub fn with_weight(mut self, w: i64) -> Self {
        self.weight = Some(w);
        self
    }

    /// Adams stem `t - s`.
    pub fn stem(&self) -> i64 {
        self.t - self.s
    }
}

/// `coefficient · lhs → rhs`. A coefficient other than one is only allowed
/// with `rhs = 0` and records an additive order (e.g. `2·h1 → 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub coefficient: BigInt,
    pub rhs: Polynomial,
}

impl RewriteRule {
    pub fn is_coefficient_rule(&self) -> bool {
        !self.coefficient.is_one()
    }
}

/// Multidegree of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    pub t: i64,
    pub s: i64,
    pub w: i64,
}

impl Degree {
    pub fn stem(&self) -> i64 {
        self.t - self.s
    }
}

/// Which degree components a basis query pins down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeQuery {
    pub t: Option<i64>,
    pub s: Option<i64>,
    pub w: Option<i64>,
}

impl DegreeQuery {
    pub fn bidegree(t: i64, s: i64) -> Self {
        Self {
            t: Some(t),
            s: Some(s),
            w: None,
        }
    }

    fn components(&self) -> [Option<i64>; 3] {
        [self.t, self.s, self.w]
    }
}

/// Search box for exponents when the degree geometry does not bound them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentBounds {
    pub max_exponent: i64,
    pub max_negative: i64,
}

impl Default for ExponentBounds {
    fn default() -> Self {
        Self {
            max_exponent: 64,
            max_negative: 64,
        }
    }
}

/// Graded-commutative ring given by generators and oriented rewrite rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    generators: Vec<RingGenerator>,
    relations: Vec<RewriteRule>,
    invertible: Vec<bool>,
    rewrite_limit: usize,
}

impl RingPresentation {
    pub fn new(
        generators: Vec<RingGenerator>,
        relations: Vec<RewriteRule>,
        invertible: &[String],
    ) -> Result<Self, RingError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut inv = vec![false; generators.len()];
        for name in invertible {
            let i = generators
                .iter()
                .position(|g| &g.name == name)
                .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
            inv[i] = true;
        }
        let n = generators.len();
        for r in &relations {
            if r.lhs.len() != n || r.rhs.terms().any(|(m, _)| m.len() != n) {
                return Err(RingError::BadRule(
                    "rule has wrong number of exponents".into(),
                ));
            }
            if r.lhs.exponents().iter().any(|&e| e < 0) {
                return Err(RingError::BadRule(
                    "rule left side has a negative exponent".into(),
                ));
            }
            if r.coefficient <= BigInt::zero() {
                return Err(RingError::BadRule(
                    "rule coefficient must be positive".into(),
                ));
            }
            if r.is_coefficient_rule() && !r.rhs.is_zero() {
                return Err(RingError::BadRule(
                    "a rule with a coefficient must rewrite to 0".into(),
                ));
            }
        }
        Ok(Self {
            generators,
            relations,
            invertible: inv,
            rewrite_limit: DEFAULT_REWRITE_LIMIT,
        })
    }

    /// Builds a presentation from `(lhs, rhs)` strings such as
    /// `("a*z", "h1^2")` or `("2*h1", "0")`.
    pub fn from_strings(
        generators: Vec<RingGenerator>,
        relations: &[(&str, &str)],
        invertible: &[&str],
    ) -> Result<Self, RingError> {
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let rules = relations
            .iter()
            .map(|(l, r)| parse_rule(l, r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        let inv: Vec<String> = invertible.iter().map(|s| s.to_string()).collect();
        Self::new(generators, rules, &inv)
    }

    pub fn with_rewrite_limit(mut self, limit: usize) -> Self {
        self.rewrite_limit = limit;
        self
    }

    pub fn generators(&self) -> &[RingGenerator] {
        &self.generators
    }

    pub fn relations(&self) -> &[RewriteRule] {
        &self.relations
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn invertible_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .zip(&self.invertible)
            .filter(|(_, &inv)| inv)
            .map(|(g, _)| g.name.clone())
            .collect()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn has_weights(&self) -> bool {
        !self.generators.is_empty() && self.generators.iter().all(|g| g.weight.is_some())
    }

    /// Copy of the presentation with relation `idx` removed.
    pub fn without_relation(&self, idx: usize) -> Self {
        let mut p = self.clone();
        p.relations.remove(idx);
        p
    }

    /// Copy with generator `i` given a different coefficient order.
    pub fn with_generator_order(&self, i: usize, order: u64) -> Self {
        let mut p = self.clone();
        p.generators[i].order = order;
        p
    }

    /// Copy with an extra relation appended.
    pub fn with_relation(&self, rule: RewriteRule) -> Self {
        let mut p = self.clone();
        p.relations.push(rule);
        p
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial, RingError> {
        parse_polynomial(src, &self.names())
    }

    pub fn parse_rule(&self, lhs: &str, rhs: &str) -> Result<RewriteRule, RingError> {
        parse_rule(lhs, rhs, &self.names())
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        Monomial::generator(self.num_generators(), i)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.num_generators())
    }

    /// Display name of a monomial, factors joined by `·`.
    pub fn monomial_name(&self, m: &Monomial) -> String {
        format_monomial(m, &self.names(), "·")
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.names(), "·")
    }

    /// Form used in scenario files, factors joined by `*`.
    pub fn format_ascii(&self, p: &Polynomial) -> String {
        p.format(&self.names(), "*")
    }

    pub fn degree(&self, m: &Monomial) -> Degree {
        let mut d = Degree { t: 0, s: 0, w: 0 };
        for (e, g) in m.exponents().iter().zip(&self.generators) {
            d.t += e * g.t;
            d.s += e * g.s;
            d.w += e * g.weight.unwrap_or(0);
        }
        d
    }

    fn generator_degree(&self, i: usize) -> [i64; 3] {
        let g = &self.generators[i];
        [g.t, g.s, g.weight.unwrap_or(0)]
    }

    fn check_exponents(&self, m: &Monomial) -> Result<(), RingError> {
        if m.len() != self.num_generators() {
            return Err(RingError::BadRule(
                "monomial has wrong number of exponents".into(),
            ));
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            if e < 0 && !self.invertible[i] {
                return Err(RingError::NegativeExponent(self.generators[i].name.clone()));
            }
        }
        Ok(())
    }

    fn monomial_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.relations.iter().filter(|r| !r.is_coefficient_rule())
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        !self.monomial_rules().any(|r| r.lhs.divides(m))
    }

    /// Additive order of a normal monomial (0 when free): the gcd of every
    /// generator order and coefficient rule that applies to it.
    pub fn monomial_order(&self, m: &Monomial) -> BigInt {
        let mut order = BigInt::zero();
        for (i, g) in self.generators.iter().enumerate() {
            if g.order > 0 && m.exponent(i) != 0 {
                order = order.gcd(&BigInt::from(g.order));
            }
        }
        for r in self.relations.iter().filter(|r| r.is_coefficient_rule()) {
            if r.lhs.divides(m) {
                order = order.gcd(&r.coefficient);
            }
        }
        order
    }

    /// Koszul sign for the product `a · b` of monomials written in
    /// generator order: each factor of `b` moves left past the later
    /// factors of `a`, contributing `(-1)^{stem·stem}`.
    pub fn koszul_sign(&self, a: &Monomial, b: &Monomial) -> i64 {
        let n = self.num_generators();
        let mut parity = 0i64;
        for i in 0..n {
            let bi = b.exponent(i) * self.generators[i].stem();
            if bi % 2 == 0 {
                continue;
            }
            for j in i + 1..n {
                let aj = a.exponent(j) * self.generators[j].stem();
                parity += aj.rem_euclid(2);
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product with graded-commutativity signs; not normalized.
    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let sign = BigInt::from(self.koszul_sign(ma, mb));
                out.add_term(ma.mul(mb), ca * cb * sign);
            }
        }
        out
    }

    pub fn multiply_monomial(&self, m: &Monomial, p: &Polynomial) -> Polynomial {
        self.multiply(&Polynomial::from_monomial(m.clone()), p)
    }

    /// Exhaustive rewriting, always at the largest reducible term, followed
    /// by reduction of each coefficient modulo its monomial's order.
    pub fn normalize(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        for (m, _) in p.terms() {
            self.check_exponents(m)?;
        }
        let mut cur = p.clone();
        let mut steps = 0usize;
        loop {
            let hit = cur.terms().find_map(|(m, c)| {
                self.monomial_rules()
                    .find(|r| r.lhs.divides(m))
                    .map(|r| (m.clone(), c.clone(), r))
            });
            let Some((m, c, rule)) = hit else {
                break;
            };
            steps += 1;
            if steps > self.rewrite_limit {
                return Err(RingError::NonTerminating(self.rewrite_limit));
            }
            let quotient = m.div(&rule.lhs);
            let replacement = self
                .multiply_monomial(&quotient, &rule.rhs)
                .scale(&(&c * self.koszul_sign(&quotient, &rule.lhs)));
            let mut next = cur.clone();
            next.add_term(m, -c);
            cur = next.add(&replacement);
        }
        let mut out = Polynomial::zero();
        for (m, c) in cur.into_terms() {
            let order = self.monomial_order(&m);
            let c = if order.is_zero() {
                c
            } else {
                c.mod_floor(&order)
            };
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn normalize_monomial(&self, m: &Monomial) -> Result<Polynomial, RingError> {
        self.normalize(&Polynomial::from_monomial(m.clone()))
    }

    /// Every monomial rule must strictly decrease in the term order and be
    /// homogeneous. Returns human-readable violations.
    pub fn termination_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in self.monomial_rules() {
            let lhs_deg = self.degree(&r.lhs);
            for (m, _) in r.rhs.terms() {
                if term_cmp(m, &r.lhs) != std::cmp::Ordering::Less {
                    out.push(format!(
                        "rule {} → {}: {} is not smaller than the left side",
                        self.monomial_name(&r.lhs),
                        self.format(&r.rhs),
                        self.monomial_name(m)
                    ));
                }
                if self.degree(m) != lhs_deg {
                    out.push(format!(
                        "rule {} → {} is not homogeneous",
                        self.monomial_name(&r.lhs),
                        self.format(&r.rhs)
                    ));
                }
            }
        }
        out
    }

    /// Critical pairs between rules (and generator orders) that reduce to
    /// different normal forms.
    pub fn confluence_violations(&self) -> Result<Vec<String>, RingError> {
        let n = self.num_generators();
        // Generator orders act as coefficient rules `d·g → 0`.
        let mut rules: Vec<RewriteRule> = self.relations.clone();
        for (i, g) in self.generators.iter().enumerate() {
            if g.order > 0 {
                rules.push(RewriteRule {
                    lhs: Monomial::generator(n, i),
                    coefficient: BigInt::from(g.order),
                    rhs: Polynomial::zero(),
                });
            }
        }
        let mut out = Vec::new();
        for (i, r1) in rules.iter().enumerate() {
            for r2 in rules.iter().skip(i + 1) {
                if r1.is_coefficient_rule() && r2.is_coefficient_rule() {
                    continue;
                }
                if !r1.lhs.shares_generator(&r2.lhs) {
                    continue;
                }
                let l = r1.lhs.lcm(&r2.lhs);
                let c = r1.coefficient.lcm(&r2.coefficient);
                let via = |r: &RewriteRule| -> Result<Polynomial, RingError> {
                    let q = l.div(&r.lhs);
                    let scale = &c / &r.coefficient;
                    let p = self
                        .multiply_monomial(&q, &r.rhs)
                        .scale(&(scale * self.koszul_sign(&q, &r.lhs)));
                    self.normalize(&p)
                };
                let a = via(r1)?;
                let b = via(r2)?;
                if a != b {
                    out.push(format!(
                        "overlap {}{}: {} vs {}",
                        if c.is_one() {
                            String::new()
                        } else {
                            format!("{c}·")
                        },
                        self.monomial_name(&l),
                        self.format(&a),
                        self.format(&b)
                    ));
                }
            }
        }
        Ok(out)
    }

    /// True when every odd-stem generator is 2-torsion, so reordering signs
    /// vanish modulo the coefficient orders.
    pub fn sign_ambiguity_free(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            g.stem().rem_euclid(2) == 0
                || self.monomial_order(&self.generator_monomial(i)) == BigInt::from(2)
        })
    }

    /// Normal-form monomials of the queried degree with their orders.
    pub fn basis(
        &self,
        query: &DegreeQuery,
        bounds: &ExponentBounds,
    ) -> Result<Vec<(Monomial, BigInt)>, RingError> {
        let n = self.num_generators();
        let target = query.components();
        let mut found = Vec::new();
        if n == 0 {
            if target.iter().all(|c| c.is_none_or(|v| v == 0)) {
                found.push((Monomial::one(0), BigInt::zero()));
            }
            return Ok(found);
        }
        // Whether generators from index i on only add nonnegative amounts to
        // component c (so a running total can be capped by the target).
        let mut monotone = vec![[true; 3]; n + 1];
        for i in (0..n).rev() {
            let deg = self.generator_degree(i);
            for c in 0..3 {
                let ok = deg[c] == 0 || (deg[c] > 0 && !self.invertible[i]);
                monotone[i][c] = monotone[i + 1][c] && ok;
            }
        }
        let mut exps = vec![0i64; n];
        let mut truncated = false;
        self.search(
            0,
            &mut exps,
            [0; 3],
            &target,
            &monotone,
            bounds,
            &mut found,
            &mut truncated,
        );
        if truncated {
            return Err(RingError::WindowExceeded(format!(
                "exponent search box {bounds:?} is too small for degree {query:?}"
            )));
        }
        found.sort_by(|(a, oa), (b, ob)| {
            (oa.is_zero(), oa.clone())
                .cmp(&(ob.is_zero(), ob.clone()))
                .then_with(|| term_cmp(a, b))
        });
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        i: usize,
        exps: &mut Vec<i64>,
        partial: [i64; 3],
        target: &[Option<i64>; 3],
        monotone: &[[bool; 3]],
        bounds: &ExponentBounds,
        found: &mut Vec<(Monomial, BigInt)>,
        truncated: &mut bool,
    ) {
        let n = self.num_generators();
        let deg = self.generator_degree(i);
        let lo = if self.invertible[i] {
            -bounds.max_negative
        } else {
            0
        };
        let last = i + 1 == n;
        let solved = if last {
            (0..3).find_map(|c| {
                let tc = target[c]?;
                (deg[c] != 0).then(|| {
                    let rem = tc - partial[c];
                    (rem % deg[c] == 0).then_some(rem / deg[c])
                })
            })
        } else {
            None
        };
        let candidates: Vec<i64> = match solved {
            Some(Some(e)) => vec![e],
            Some(None) => return,
            None => {
                let mut hi = bounds.max_exponent;
                for c in 0..3 {
                    if let (Some(tc), true) = (target[c], monotone[i][c]) {
                        if deg[c] > 0 {
                            hi = hi.min((tc - partial[c]).div_euclid(deg[c]));
                        }
                    }
                }
                (lo..=hi).collect()
            }
        };
        for e in candidates {
            if e < lo {
                continue;
            }
            exps[i] = e;
            let m = Monomial::new(exps.clone());
            if e > 0 && !self.is_normal(&m) {
                // Raising this exponent further stays reducible.
                break;
            }
            let mut next = partial;
            for c in 0..3 {
                next[c] += e * deg[c];
            }
            // Prune on components that can only grow from here.
            let overshoot =
                (0..3).any(|c| target[c].is_some_and(|tc| monotone[i + 1][c] && next[c] > tc));
            if overshoot && e >= 0 {
                if deg
                    .iter()
                    .zip(0..3)
                    .any(|(d, c)| *d > 0 && monotone[i][c] && target[c].is_some())
                {
                    break;
                }
                continue;
            }
            if last {
                let hit = (0..3).all(|c| target[c].is_none_or(|tc| next[c] == tc));
                if hit && self.is_normal(&m) {
                    let at_edge = m.exponents().iter().enumerate().any(|(k, &x)| {
                        (k + 1 < n || solved.is_none())
                            && (x >= bounds.max_exponent || x <= -bounds.max_negative)
                    });
                    if at_edge {
                        *truncated = true;
                    }
                    let order = self.monomial_order(&m);
                    found.push((m, order));
                }
            } else {
                self.search(
                    i + 1,
                    exps,
                    next,
                    target,
                    monotone,
                    bounds,
                    found,
                    truncated,
                );
            }
        }
        exps[i] = 0;
    }

    /// The group spanned by the normal monomials of a degree, each a cyclic
    /// summand of its order, with monomial names.
    pub fn group_in_degree(
        &self,
        query: &DegreeQuery,
        bounds: &ExponentBounds,
    ) -> Result<FgAbGroup, RingError> {
        let basis = self.basis(query, bounds)?;
        Ok(self.group_from_basis(&basis))
    }

    pub(crate) fn group_from_basis(&self, basis: &[(Monomial, BigInt)]) -> FgAbGroup {
        let torsion: Vec<BigUint> = basis
            .iter()
            .filter(|(_, o)| !o.is_zero())
            .map(|(_, o)| o.magnitude().clone())
            .collect();
        let free = basis.iter().filter(|(_, o)| o.is_zero()).count();
        let names: Vec<String> = basis.iter().map(|(m, _)| self.monomial_name(m)).collect();
        match FgAbGroup::new(free, torsion, names.clone()) {
            Ok(g) => g,
            Err(_) => crate::abgroup::CyclicSum::new(
                names,
                basis.iter().map(|(_, o)| o.clone()).collect(),
                false,
            )
            .normalize(),
        }
    }

    /// For each `t`, the group spanned by weight-zero normal monomials of
    /// internal degree `t` (filtration unconstrained).
    pub fn weight_zero_line(
        &self,
        t_range: std::ops::RangeInclusive<i64>,
        bounds: &ExponentBounds,
    ) -> Result<Vec<(i64, FgAbGroup)>, RingError> {
        if !self.has_weights() {
            return Err(RingError::MissingWeights);
        }
        t_range
            .map(|t| {
                let q = DegreeQuery {
                    t: Some(t),
                    s: None,
                    w: Some(0),
                };
                Ok((t, self.group_in_degree(&q, bounds)?))
            })
            .collect()
    }
}

fn parse_rule(lhs: &str, rhs: &str, names: &[String]) -> Result<RewriteRule, RingError> {
    let l = parse_polynomial(lhs, names)?;
    if l.num_terms() != 1 {
        return Err(RingError::BadRule(format!(
            "left side {lhs:?} must be a single term"
        )));
    }
    let (m, c) = l
        .leading()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("one term");
    let r = parse_polynomial(rhs, names)?;
    if c.is_negative() {
        return Err(RingError::BadRule(format!(
            "left side {lhs:?} has a negative coefficient"
        )));
    }
    Ok(RewriteRule {
        lhs: m,
        coefficient: c,
        rhs: r,
    })
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        write!(f, "Z[")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", g.name)?;
            if self.invertible[i] {
                write!(f, "^±1")?;
            }
        }
        write!(f, "]/(")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let lhs = Polynomial::monomial(r.lhs.clone(), r.coefficient.clone());
            write!(
                f,
                "{} → {}",
                lhs.format(&names, "·"),
                r.rhs.format(&names, "·")
            )?;
        }
        write!(f, ")")
    }
}

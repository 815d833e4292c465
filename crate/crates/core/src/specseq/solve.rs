use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::leibniz::{d_monomial, d_polynomial, GeneratorDiffs};
use super::SpecSeqError;
use crate::gradedring::{DegreeQuery, ExponentBounds, Polynomial, RingError, RingPresentation};

/// Free coefficients of a candidate target are searched in `-B..=B`.
pub const FREE_COEFFICIENT_BOUND: i64 = 2;
const MAX_ASSIGNMENTS: usize = 1 << 16;

/// Checks that a seed has the bidegree of `d_r` applied to its generator.
pub fn check_seed(
    ring: &RingPresentation,
    generator: &str,
    target: &Polynomial,
    r: usize,
) -> Result<(), SpecSeqError> {
    let i = ring
        .generator_index(generator)
        .ok_or_else(|| RingError::UnknownGenerator(generator.to_string()))?;
    let g = &ring.generators()[i];
    let r = r as i64;
    for (m, _) in target.terms() {
        let d = ring.degree(m);
        if d.t != g.t + r - 1 || d.s != g.s + r || d.w != g.weight.unwrap_or(0) {
            return Err(SpecSeqError::BadSeed(format!(
                "d_{r}({generator}) = {} has bidegree (s,t) = ({},{}), expected ({},{})",
                ring.format(target),
                d.s,
                d.t,
                g.s + r,
                g.t + r - 1
            )));
        }
    }
    Ok(())
}

/// Relations the Leibniz extension of `diffs` fails to respect: rewrite
/// rules, coefficient rules, generator orders and `d∘d = 0` on generators.
pub fn consistency_violations(
    ring: &RingPresentation,
    diffs: &[Polynomial],
) -> Result<Vec<String>, SpecSeqError> {
    let mut out = Vec::new();
    for rule in ring.relations() {
        let lhs = d_monomial(ring, diffs, &rule.lhs)?.scale(&rule.coefficient);
        let rhs = d_polynomial(ring, diffs, &rule.rhs)?;
        let diff = ring.normalize(&lhs.sub(&rhs))?;
        if !diff.is_zero() {
            out.push(format!(
                "d({}) - d({}) = {}",
                ring.format(&Polynomial::monomial(
                    rule.lhs.clone(),
                    rule.coefficient.clone()
                )),
                ring.format(&rule.rhs),
                ring.format(&diff)
            ));
        }
    }
    for (i, g) in ring.generators().iter().enumerate() {
        if g.order > 0 {
            let v = ring.normalize(&diffs[i].scale(&BigInt::from(g.order)))?;
            if !v.is_zero() {
                out.push(format!("{}·d({}) = {}", g.order, g.name, ring.format(&v)));
            }
        }
        let dd = d_polynomial(ring, diffs, &diffs[i])?;
        if !dd.is_zero() {
            out.push(format!("d(d({})) = {}", g.name, ring.format(&dd)));
        }
    }
    Ok(out)
}

/// Completes `seeds` to a value of `d_r` on every generator. Permanent
/// generators get 0; every other unseeded generator ranges over all elements
/// of its target bidegree, and the assignments compatible with every
/// relation under the Leibniz rule are kept. Exactly one must remain.
pub fn solve_generator_differentials(
    ring: &RingPresentation,
    seeds: &BTreeMap<String, Polynomial>,
    permanent: &[String],
    r: usize,
    bounds: &ExponentBounds,
) -> Result<GeneratorDiffs, SpecSeqError> {
    let n = ring.num_generators();
    let mut fixed: Vec<Option<Polynomial>> = vec![None; n];
    for (name, target) in seeds {
        check_seed(ring, name, target, r)?;
        let i = ring.generator_index(name).expect("checked");
        fixed[i] = Some(ring.normalize(target)?);
    }
    for name in permanent {
        let i = ring
            .generator_index(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
        match &fixed[i] {
            Some(p) if !p.is_zero() => {
                return Err(SpecSeqError::BadSeed(format!(
                    "{name} is declared permanent but has a nonzero seed"
                )))
            }
            _ => fixed[i] = Some(Polynomial::zero()),
        }
    }
    let rr = r as i64;
    let mut unknown = Vec::new();
    let mut choices: Vec<Vec<Polynomial>> = Vec::new();
    for (i, slot) in fixed.iter().enumerate() {
        if slot.is_some() {
            continue;
        }
        let g = &ring.generators()[i];
        let q = DegreeQuery {
            t: Some(g.t + rr - 1),
            s: Some(g.s + rr),
            w: g.weight,
        };
        let basis = ring.basis(&q, bounds)?;
        unknown.push(i);
        choices.push(all_elements(&basis)?);
    }
    let total: usize = choices.iter().map(Vec::len).product();
    if total > MAX_ASSIGNMENTS {
        return Err(SpecSeqError::TooManyCandidates(total));
    }
    let mut consistent = Vec::new();
    for k in 0..total {
        let mut diffs: Vec<Polynomial> = fixed
            .iter()
            .map(|f| f.clone().unwrap_or_else(Polynomial::zero))
            .collect();
        let mut rest = k;
        for (slot, options) in unknown.iter().zip(&choices) {
            diffs[*slot] = options[rest % options.len()].clone();
            rest /= options.len();
        }
        if consistency_violations(ring, &diffs)?.is_empty() {
            consistent.push(diffs);
        }
    }
    match consistent.len() {
        0 => Err(SpecSeqError::NoConsistentAssignment),
        1 => Ok(consistent.pop().expect("one")),
        _ => {
            let names: Vec<String> = unknown
                .iter()
                .map(|&i| ring.generators()[i].name.clone())
                .collect();
            let candidates = consistent
                .iter()
                .map(|d| {
                    unknown
                        .iter()
                        .map(|&i| {
                            format!("d({}) = {}", ring.generators()[i].name, ring.format(&d[i]))
                        })
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
            Err(SpecSeqError::AmbiguousAssignment {
                generators: names,
                candidates,
            })
        }
    }
}

fn all_elements(
    basis: &[(crate::gradedring::Monomial, BigInt)],
) -> Result<Vec<Polynomial>, SpecSeqError> {
    let ranges: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|(_, o)| {
            if o.is_zero() {
                (-FREE_COEFFICIENT_BOUND..=FREE_COEFFICIENT_BOUND)
                    .map(BigInt::from)
                    .collect()
            } else {
                let d = i64::try_from(o.clone()).unwrap_or(i64::MAX);
                (0..d.min(MAX_ASSIGNMENTS as i64))
                    .map(BigInt::from)
                    .collect()
            }
        })
        .collect();
    let total = ranges
        .iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.len()))
        .filter(|&t| t <= MAX_ASSIGNMENTS)
        .ok_or(SpecSeqError::TooManyCandidates(MAX_ASSIGNMENTS))?;
    let mut out = Vec::with_capacity(total);
    for k in 0..total {
        let mut p = Polynomial::zero();
        let mut rest = k;
        for ((m, _), r) in basis.iter().zip(&ranges) {
            p.add_term(m.clone(), r[rest % r.len()].clone());
            rest /= r.len();
        }
        out.push(p);
    }
    Ok(out)
}

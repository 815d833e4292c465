//! Graded-commutative rings presented by generators and rewrite rules.

mod monomial;
mod parse;
mod presentation;

pub use monomial::{format_monomial, term_cmp, Monomial, Polynomial};
pub use parse::parse_polynomial;
pub use presentation::{
    Degree, DegreeQuery, ExponentBounds, RewriteRule, RingGenerator, RingPresentation,
    DEFAULT_REWRITE_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("negative exponent on non-invertible generator {0:?}")]
    NegativeExponent(String),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("bad rule: {0}")]
    BadRule(String),
    #[error("presentation has no motivic weights")]
    MissingWeights,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    pub(crate) fn ku_ring() -> RingPresentation {
        RingPresentation::from_strings(
            vec![
                RingGenerator::new("h1", 2, 1, 2),
                RingGenerator::new("a", 4, 0, 0),
                RingGenerator::new("z", 0, 2, 0),
            ],
            &[("a*z", "h1^2")],
            &[],
        )
        .unwrap()
    }

    fn kq_ring() -> RingPresentation {
        RingPresentation::from_strings(
            vec![
                RingGenerator::new("tau", 0, 0, 0).with_weight(-1),
                RingGenerator::new("h1", 1, 0, 0).with_weight(1),
                RingGenerator::new("a", 4, 0, 0).with_weight(2),
                RingGenerator::new("b", 8, 0, 0).with_weight(4),
            ],
            &[
                ("2*h1", "0"),
                ("tau*h1^3", "0"),
                ("a^2", "4*b"),
                ("h1*a", "0"),
            ],
            &["b"],
        )
        .unwrap()
    }

    fn poly(r: &RingPresentation, s: &str) -> Polynomial {
        r.parse(s).unwrap()
    }

    #[test]
    fn normal_forms() {
        let r = ku_ring();
        assert_eq!(r.normalize(&poly(&r, "a*z")).unwrap(), poly(&r, "h1^2"));
        assert!(r.normalize(&poly(&r, "2*h1^3")).unwrap().is_zero());
        assert_eq!(r.normalize(&poly(&r, "a^2*z^2")).unwrap(), poly(&r, "h1^4"));
        assert_eq!(r.normalize(&poly(&r, "3*h1")).unwrap(), poly(&r, "h1"));
    }

    #[test]
    fn bidegree_bases() {
        let r = ku_ring();
        let b = ExponentBounds::default();
        let g = r.group_in_degree(&DegreeQuery::bidegree(2, 1), &b).unwrap();
        assert_eq!(g.symbol(), "Z/2");
        assert_eq!(g.names(), ["h1"]);
        let g = r.group_in_degree(&DegreeQuery::bidegree(4, 0), &b).unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.names(), ["a"]);
        let g = r.group_in_degree(&DegreeQuery::bidegree(4, 1), &b).unwrap();
        assert!(g.is_trivial());
        let g = r.group_in_degree(&DegreeQuery::bidegree(4, 2), &b).unwrap();
        assert_eq!(g.names(), ["h1^2"]);
    }

    #[test]
    fn rule_checks() {
        let r = ku_ring();
        assert!(r.termination_violations().is_empty());
        assert!(r.confluence_violations().unwrap().is_empty());
        assert!(r.sign_ambiguity_free());
        let bad = r.with_relation(r.parse_rule("h1^2", "a*z").unwrap());
        assert!(!bad.termination_violations().is_empty());
        let looping = RingPresentation::from_strings(
            vec![
                RingGenerator::new("x", 2, 0, 0),
                RingGenerator::new("y", 2, 0, 0),
            ],
            &[("x", "y"), ("y", "x")],
            &[],
        )
        .unwrap()
        .with_rewrite_limit(50);
        assert_eq!(
            looping.normalize(&looping.parse("x").unwrap()),
            Err(RingError::NonTerminating(50))
        );
        assert!(matches!(
            r.normalize(&poly(&r, "z^-1")),
            Err(RingError::NegativeExponent(_))
        ));
    }

    #[test]
    fn odd_generators_anticommute() {
        let r = RingPresentation::from_strings(
            vec![
                RingGenerator::new("x", 1, 0, 0),
                RingGenerator::new("y", 1, 0, 0),
            ],
            &[],
            &[],
        )
        .unwrap();
        let yx = r.multiply(&poly(&r, "y"), &poly(&r, "x"));
        assert_eq!(yx, poly(&r, "-x*y"));
        assert!(!r.sign_ambiguity_free());
    }

    #[test]
    fn weight_zero_line_is_ko_pattern() {
        let r = kq_ring();
        assert!(r.confluence_violations().unwrap().is_empty());
        let line = r
            .weight_zero_line(0..=8, &ExponentBounds::default())
            .unwrap();
        let symbols: Vec<String> = line.iter().map(|(_, g)| g.symbol()).collect();
        assert_eq!(symbols, ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0", "Z"]);
        assert_eq!(line[1].1.names(), ["tau·h1"]);
        assert_eq!(line[4].1.names(), ["tau^2·a"]);
        assert_eq!(line[8].1.names(), ["tau^4·b"]);
    }

    #[test]
    fn small_search_box_is_reported() {
        let r = kq_ring();
        let tiny = ExponentBounds {
            max_exponent: 4,
            max_negative: 4,
        };
        assert!(matches!(
            r.weight_zero_line(8..=8, &tiny),
            Err(RingError::WindowExceeded(_))
        ));
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(h in 0i64..6, a in 0i64..5, z in 0i64..5, c in -5i64..6,
                                   h2 in 0i64..6, a2 in 0i64..5, z2 in 0i64..5, c2 in -5i64..6) {
            let r = ku_ring();
            let mut p = Polynomial::monomial(Monomial::new(vec![h, a, z]), BigInt::from(c));
            p.add_term(Monomial::new(vec![h2, a2, z2]), BigInt::from(c2));
            let n1 = r.normalize(&p).unwrap();
            let n2 = r.normalize(&n1).unwrap();
            prop_assert_eq!(&n1, &n2);
            for (m, _) in n1.terms() {
                prop_assert!(r.is_normal(m));
            }
        }
    }
}

use std::fmt;

use super::{Coefficients, FamilySpec, Mode, ModuleSpec, Scenario};
use crate::specseq::check_seed;

/// A semantic problem in a scenario, with where it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation {
            location: location.into(),
            message: message.into(),
        });
    }

    fn module(&mut self, location: &str, m: &ModuleSpec) {
        let n = m.orders.len();
        if m.action.len() != n || m.action.iter().any(|r| r.len() != n) {
            self.push(location, format!("action must be a square {n}x{n} matrix"));
            return;
        }
        if let Err(e) = m.to_module("x") {
            self.push(location, e.to_string());
        }
    }

    fn family(&mut self, location: &str, f: &FamilySpec) {
        let period = match f {
            FamilySpec::Tagged(super::FamilyTag::Periodic(p)) => {
                if p.period <= 0 {
                    self.push(location, "period must be positive");
                }
                Some(p.period)
            }
            FamilySpec::Explicit(_) => None,
        };
        let mut seen = std::collections::BTreeSet::new();
        for g in f.entries() {
            let loc = format!("{location}.t={}", g.t);
            if !seen.insert(g.t) {
                self.push(&loc, "degree listed twice");
            }
            if let Some(p) = period.filter(|&p| p > 0) {
                if !(0..p).contains(&g.t) {
                    self.push(&loc, format!("periodic entries need 0 <= t < {p}"));
                }
            }
            self.module(&loc, &g.spec());
        }
    }
}

/// Every semantic problem found; empty for a usable scenario.
pub fn validate(s: &Scenario) -> Vec<Violation> {
    let mut c = Collector(Vec::new());
    let w = s.window;
    if w.stem_min > w.stem_max || w.filtration_max < 0 {
        c.push("window", "empty window");
    }
    match (&s.coefficients, s.mode) {
        (Coefficients::Family(f), Mode::Endomorphism | Mode::WeightZero) => {
            c.family("coefficients", f)
        }
        (Coefficients::Picard(super::PicardTag::Picard(p)), Mode::Picard) => {
            c.module("coefficients.pic0", &p.pic0);
            c.module("coefficients.pic1", &p.pic1);
            c.family("coefficients.endo", &p.endo);
        }
        (_, mode) => c.push(
            "coefficients",
            format!("coefficients do not fit mode {mode:?}"),
        ),
    }
    match &s.presentation {
        Some(p) => {
            for v in p.termination_violations() {
                c.push(
                    "presentation",
                    format!("non-terminating rewrite order: {v}"),
                );
            }
            match p.confluence_violations() {
                Ok(vs) => {
                    for v in vs {
                        c.push("presentation", format!("rules are not confluent: {v}"));
                    }
                }
                Err(e) => c.push("presentation", e.to_string()),
            }
            if !p.sign_ambiguity_free() {
                c.push(
                    "presentation",
                    "an odd-stem generator is not 2-torsion, so reordering signs are ambiguous",
                );
            }
            if s.mode == Mode::WeightZero && !p.has_weights() {
                c.push(
                    "presentation",
                    "weight-zero mode needs a weight on every generator",
                );
            }
            for (i, d) in s.differentials.iter().enumerate() {
                let loc = format!("differentials[{i}]");
                if d.page < 2 {
                    c.push(&loc, "page must be at least 2");
                    continue;
                }
                if let Err(e) = check_seed(p, &d.generator, &d.target, d.page) {
                    c.push(&loc, format!("bidegree shift: {e}"));
                }
            }
            for g in &s.permanent {
                if p.generator_index(g).is_none() {
                    c.push("permanent", format!("unknown generator {g:?}"));
                }
            }
        }
        None => {
            if s.mode == Mode::WeightZero {
                c.push("presentation", "weight-zero mode needs a presentation");
            }
            if !s.differentials.is_empty() || !s.permanent.is_empty() {
                c.push("differentials", "differentials need a presentation");
            }
        }
    }
    if s.mode == Mode::Picard && s.lower_bound.is_none() {
        c.push("lower_bound", "Picard mode needs a lower bound");
    }
    c.0
}

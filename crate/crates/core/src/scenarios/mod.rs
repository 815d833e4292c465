//! Scenario descriptions: coefficients, ring presentation, seeded
//! differentials and expected results, with built-ins and a JSON format.

mod builtin;
mod execute;
mod file;
mod validate;

pub use builtin::{builtin, builtin_names};
pub use execute::{run_scenario, ScenarioOutcome, StemCheck};
pub use file::{from_json, load, save, to_json};
pub use validate::{validate, Violation};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{CyclicSum, FgAbGroup, IntMatrix};
use crate::c2cohomology::{C2Module, CohomologyError};
use crate::gradedring::{ExponentBounds, Polynomial, RingError, RingPresentation};
use crate::picard::ImportRule;
use crate::specseq::{CoefficientFamily, SpecSeqError, Window};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

impl From<RingError> for ScenarioError {
    fn from(e: RingError) -> Self {
        Self::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Endomorphism,
    Picard,
    WeightZero,
}

/// A finitely generated group with an involution, as written in scenario
/// files. `orders[i] = 0` marks a free summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub orders: Vec<u64>,
    pub action: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pro2: bool,
}

impl ModuleSpec {
    pub fn new(names: &[&str], orders: &[u64], action: &[&[i64]], pro2: bool) -> Self {
        Self {
            names: Some(names.iter().map(|s| s.to_string()).collect()),
            orders: orders.to_vec(),
            action: action.iter().map(|r| r.to_vec()).collect(),
            pro2,
        }
    }

    pub fn to_module(&self, default_name: &str) -> Result<C2Module, ScenarioError> {
        let n = self.orders.len();
        let names = match &self.names {
            Some(ns) if ns.len() == n => ns.clone(),
            Some(ns) => {
                return Err(ScenarioError::Invalid(format!(
                    "{} names for {n} generators",
                    ns.len()
                )))
            }
            None => (0..n).map(|i| format!("{default_name}{i}")).collect(),
        };
        if self.action.len() != n || self.action.iter().any(|r| r.len() != n) {
            return Err(CohomologyError::NotSquare {
                expected: n,
                rows: self.action.len(),
                cols: self.action.first().map_or(0, Vec::len),
            }
            .into());
        }
        let m = IntMatrix::from_rows_with_cols(&self.action, n);
        Ok(C2Module::new(
            names,
            self.orders.iter().map(|&o| BigInt::from(o)).collect(),
            m,
            self.pro2,
        )?)
    }
}

/// One entry of a coefficient family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub t: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub orders: Vec<u64>,
    pub action: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pro2: bool,
}

impl GroupEntry {
    pub fn spec(&self) -> ModuleSpec {
        ModuleSpec {
            names: self.names.clone(),
            orders: self.orders.clone(),
            action: self.action.clone(),
            pro2: self.pro2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicSpec {
    pub period: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_min: Option<i64>,
    pub groups: Vec<GroupEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum FamilyTag {
    Periodic(PeriodicSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Explicit(Vec<GroupEntry>),
    Tagged(FamilyTag),
}

impl Default for FamilySpec {
    fn default() -> Self {
        Self::Explicit(Vec::new())
    }
}

impl FamilySpec {
    pub fn periodic(period: i64, t_min: Option<i64>, groups: Vec<GroupEntry>) -> Self {
        Self::Tagged(FamilyTag::Periodic(PeriodicSpec {
            period,
            t_min,
            groups,
        }))
    }

    pub fn entries(&self) -> &[GroupEntry] {
        match self {
            Self::Explicit(g) => g,
            Self::Tagged(FamilyTag::Periodic(p)) => &p.groups,
        }
    }

    pub fn to_family(&self) -> Result<CoefficientFamily, ScenarioError> {
        let mut map = std::collections::BTreeMap::new();
        for g in self.entries() {
            map.insert(g.t, g.spec().to_module(&format!("x{}_", g.t))?);
        }
        Ok(match self {
            Self::Explicit(_) => CoefficientFamily::Explicit(map),
            Self::Tagged(FamilyTag::Periodic(p)) => CoefficientFamily::Periodic {
                period: p.period,
                groups: map,
                t_min: p.t_min,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardSpec {
    pub pic0: ModuleSpec,
    pub pic1: ModuleSpec,
    pub endo: FamilySpec,
    #[serde(default)]
    pub import_rule: ImportRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum PicardTag {
    Picard(PicardSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Family(FamilySpec),
    Picard(PicardTag),
}

impl Default for Coefficients {
    fn default() -> Self {
        Self::Family(FamilySpec::default())
    }
}

/// `d_page(generator) = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededDifferential {
    pub page: usize,
    pub generator: String,
    pub target: Polynomial,
}

/// A group by free rank and cyclic orders (any orders; normalized on use).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub rank: usize,
    pub orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(rank: usize, orders: &[u64]) -> Self {
        Self {
            rank,
            orders: orders.to_vec(),
        }
    }

    pub fn to_group(&self) -> FgAbGroup {
        let mut orders: Vec<BigInt> = self.orders.iter().map(|&o| BigInt::from(o)).collect();
        orders.extend(std::iter::repeat_n(BigInt::from(0), self.rank));
        let names = (0..orders.len()).map(|i| format!("e{i}")).collect();
        CyclicSum::new(names, orders, false).normalize()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedStem {
    pub stem: i64,
    pub rank: usize,
    pub orders: Vec<u64>,
}

impl ExpectedStem {
    pub fn new(stem: i64, rank: usize, orders: &[u64]) -> Self {
        Self {
            stem,
            rank,
            orders: orders.to_vec(),
        }
    }

    pub fn group(&self) -> FgAbGroup {
        GroupSpec::new(self.rank, &self.orders).to_group()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub mode: Mode,
    pub window: Window,
    pub coefficients: Coefficients,
    pub presentation: Option<RingPresentation>,
    pub differentials: Vec<SeededDifferential>,
    pub permanent: Vec<String>,
    /// Per stem, or per `t` for the weight-zero mode.
    pub expected_abutment: Vec<ExpectedStem>,
    pub lower_bound: Option<GroupSpec>,
}

impl Scenario {
    pub fn bounds(&self) -> ExponentBounds {
        ExponentBounds::default()
    }
}

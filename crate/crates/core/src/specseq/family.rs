use std::collections::BTreeMap;

use crate::c2cohomology::C2Module;

/// `t ↦ π_t` with its involution, either listed degree by degree or as a
/// periodic pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientFamily {
    Explicit(BTreeMap<i64, C2Module>),
    /// `groups[t mod period]`, zero below `t_min` when one is given.
    Periodic {
        period: i64,
        groups: BTreeMap<i64, C2Module>,
        t_min: Option<i64>,
    },
    /// `π_t` of a Picard spectrum: `pic0` at `t = 0`, `pic1` at `t = 1` and
    /// `endo(t - 1)` above.
    Picard {
        pic0: C2Module,
        pic1: C2Module,
        endo: Box<CoefficientFamily>,
    },
}

impl CoefficientFamily {
    pub fn zero() -> Self {
        Self::Explicit(BTreeMap::new())
    }

    /// `π_* ku` (connective) or `π_* KU` (periodic) with complex conjugation:
    /// `π_{2k} = Z_2` on which `σ` acts by `(-1)^k`.
    pub fn complex_k_theory(connective: bool) -> Self {
        let mut groups = BTreeMap::new();
        groups.insert(0, C2Module::integers("β^2", 1, true));
        groups.insert(2, C2Module::integers("β", -1, true));
        Self::Periodic {
            period: 4,
            groups,
            t_min: connective.then_some(0),
        }
    }

    pub fn module(&self, t: i64) -> C2Module {
        match self {
            Self::Explicit(map) => map.get(&t).cloned().unwrap_or_else(C2Module::zero),
            Self::Periodic {
                period,
                groups,
                t_min,
            } => {
                if t_min.is_some_and(|m| t < m) {
                    return C2Module::zero();
                }
                groups
                    .get(&t.rem_euclid(*period))
                    .cloned()
                    .unwrap_or_else(C2Module::zero)
            }
            Self::Picard { pic0, pic1, endo } => match t {
                0 => pic0.clone(),
                1 => pic1.clone(),
                t if t >= 2 => endo.module(t - 1),
                _ => C2Module::zero(),
            },
        }
    }
}

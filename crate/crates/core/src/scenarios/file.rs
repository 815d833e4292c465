use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    Coefficients, ExpectedStem, GroupSpec, Mode, Scenario, ScenarioError, SeededDifferential,
};
use crate::gradedring::{Polynomial, RingGenerator, RingPresentation};
use crate::specseq::Window;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    mode: Mode,
    window: Window,
    #[serde(default)]
    coefficients: Coefficients,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentationFile>,
    #[serde(default)]
    differentials: Vec<DifferentialFile>,
    #[serde(default)]
    permanent: Vec<String>,
    #[serde(default)]
    expected_abutment: Vec<ExpectedStem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lower_bound: Option<GroupSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<GeneratorFile>,
    #[serde(default)]
    relations: Vec<RelationFile>,
    #[serde(default)]
    invertible: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    name: String,
    t: i64,
    s: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<i64>,
    #[serde(default)]
    order: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    lhs: String,
    rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DifferentialFile {
    page: usize,
    source: String,
    target: String,
}

fn presentation_from_file(p: &PresentationFile) -> Result<RingPresentation, ScenarioError> {
    let generators = p
        .generators
        .iter()
        .map(|g| RingGenerator {
            name: g.name.clone(),
            t: g.t,
            s: g.s,
            weight: g.weight,
            order: g.order,
        })
        .collect();
    let rels: Vec<(&str, &str)> = p
        .relations
        .iter()
        .map(|r| (r.lhs.as_str(), r.rhs.as_str()))
        .collect();
    let inv: Vec<&str> = p.invertible.iter().map(String::as_str).collect();
    Ok(RingPresentation::from_strings(generators, &rels, &inv)?)
}

fn presentation_to_file(p: &RingPresentation) -> PresentationFile {
    PresentationFile {
        generators: p
            .generators()
            .iter()
            .map(|g| GeneratorFile {
                name: g.name.clone(),
                t: g.t,
                s: g.s,
                weight: g.weight,
                order: g.order,
            })
            .collect(),
        relations: p
            .relations()
            .iter()
            .map(|r| RelationFile {
                lhs: p.format_ascii(&Polynomial::monomial(r.lhs.clone(), r.coefficient.clone())),
                rhs: p.format_ascii(&r.rhs),
            })
            .collect(),
        invertible: p.invertible_names(),
    }
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario, ScenarioError> {
        let presentation = self
            .presentation
            .as_ref()
            .map(presentation_from_file)
            .transpose()?;
        let differentials = self
            .differentials
            .iter()
            .map(|d| {
                let ring = presentation.as_ref().ok_or_else(|| {
                    ScenarioError::Parse("differentials need a presentation".into())
                })?;
                Ok(SeededDifferential {
                    page: d.page,
                    generator: d.source.clone(),
                    target: ring.parse(&d.target)?,
                })
            })
            .collect::<Result<_, ScenarioError>>()?;
        Ok(Scenario {
            name: self.name,
            mode: self.mode,
            window: self.window,
            coefficients: self.coefficients,
            presentation,
            differentials,
            permanent: self.permanent,
            expected_abutment: self.expected_abutment,
            lower_bound: self.lower_bound,
        })
    }

    fn from_scenario(s: &Scenario) -> Self {
        Self {
            name: s.name.clone(),
            mode: s.mode,
            window: s.window,
            coefficients: s.coefficients.clone(),
            presentation: s.presentation.as_ref().map(presentation_to_file),
            differentials: s
                .differentials
                .iter()
                .map(|d| DifferentialFile {
                    page: d.page,
                    source: d.generator.clone(),
                    target: s
                        .presentation
                        .as_ref()
                        .map(|p| p.format_ascii(&d.target))
                        .unwrap_or_default(),
                })
                .collect(),
            permanent: s.permanent.clone(),
            expected_abutment: s.expected_abutment.clone(),
            lower_bound: s.lower_bound.clone(),
        }
    }
}

pub fn from_json(src: &str) -> Result<Scenario, ScenarioError> {
    let f: ScenarioFile =
        serde_json::from_str(src).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    f.into_scenario()
}

pub fn to_json(s: &Scenario) -> String {
    serde_json::to_string_pretty(&ScenarioFile::from_scenario(s)).expect("plain data serializes")
}

pub fn load(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json(&src)
}

pub fn save(s: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    std::fs::write(path, to_json(s) + "\n").map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

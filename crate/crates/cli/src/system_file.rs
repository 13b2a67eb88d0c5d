//! JSON system files: universe, coverings (given directly or as expert
//! reports) and named targets. Degrees are JSON strings so every value
//! round-trips digit for digit.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use fuzzycover::{
    merge_reports, CoveringDraft, DecimalError, Degree, ExpertReport, FuzzyCovering, FuzzySet,
    ModelError, MultiGranulationSystem, Universe, ValidationReport,
};

use crate::error::{CliError, Result};

/// A degree exactly as written in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeText(pub String);

impl Serialize for DegreeText {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

struct DegreeTextVisitor;

fn number_rejected<E: de::Error>(shown: String) -> E {
    E::custom(format!(
        "degree {shown} is a JSON number; write it as a string (\"{shown}\") so it stays exact"
    ))
}

impl Visitor<'_> for DegreeTextVisitor {
    type Value = DegreeText;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a decimal string such as \"0.75\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DegreeText, E> {
        Ok(DegreeText(v.to_string()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<DegreeText, E> {
        Err(number_rejected(v.to_string()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DegreeText, E> {
        Err(number_rejected(v.to_string()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DegreeText, E> {
        Err(number_rejected(v.to_string()))
    }
}

impl<'de> Deserialize<'de> for DegreeText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(DegreeTextVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVector {
    pub name: String,
    pub degrees: Vec<DegreeText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpertEntry {
    pub expert: String,
    pub sets: Vec<NamedVector>,
}

/// A covering given either by its members or by expert reports to be merged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringEntry {
    pub name: String,
    pub gamma: DegreeText,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<NamedVector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub experts: Vec<ExpertEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub universe: Vec<String>,
    pub coverings: Vec<CoveringEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<NamedVector>,
}

/// A validated system with its targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub system: MultiGranulationSystem,
    pub targets: Vec<(String, FuzzySet)>,
}

impl Loaded {
    pub fn universe(&self) -> &Arc<Universe> {
        self.system.universe()
    }

    pub fn target(&self, name: &str) -> Result<&FuzzySet> {
        self.targets
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| {
                let known: Vec<&str> = self.targets.iter().map(|(n, _)| n.as_str()).collect();
                CliError::Parameter(format!("no target {name:?}; file defines {known:?}"))
            })
    }
}

/// Outcome of validating one covering entry.
#[derive(Debug, Clone)]
pub struct CoveringCheck {
    pub name: String,
    pub report: ValidationReport,
}

fn degree(text: &DegreeText, context: &str) -> Result<Degree> {
    text.0.parse::<Degree>().map_err(|e| match e {
        DecimalError::DegreeOutOfRange(_) => CliError::Validation(format!("{context}: {e}")),
        _ => CliError::Parse(format!("{context}: {e}")),
    })
}

fn fuzzy_set(universe: &Arc<Universe>, v: &NamedVector, context: &str) -> Result<FuzzySet> {
    let context = format!("{context} {:?}", v.name);
    if v.degrees.len() != universe.len() {
        return Err(CliError::Validation(format!(
            "{context}: {}",
            ModelError::LengthMismatch {
                expected: universe.len(),
                found: v.degrees.len()
            }
        )));
    }
    let degrees = v
        .degrees
        .iter()
        .enumerate()
        .map(|(i, d)| degree(d, &format!("{context} at {}", universe.name(i))))
        .collect::<Result<Vec<_>>>()?;
    FuzzySet::new(universe.clone(), degrees).map_err(CliError::invalid)
}

fn model_err(covering: &str, e: ModelError) -> CliError {
    CliError::Validation(format!("covering {covering:?}: {e}"))
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("system files always serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn universe_ref(&self) -> Result<Arc<Universe>> {
        Universe::new(self.universe.iter().cloned()).map_err(CliError::invalid)
    }

    /// Parses every covering into an unvalidated draft, merging expert
    /// reports first.
    pub fn drafts(&self, universe: &Arc<Universe>) -> Result<Vec<CoveringDraft>> {
        self.coverings
            .iter()
            .map(|c| {
                let gamma = degree(&c.gamma, &format!("covering {:?} gamma", c.name))?;
                let members = match (c.members.is_empty(), c.experts.is_empty()) {
                    (false, false) => {
                        return Err(CliError::Parse(format!(
                            "covering {:?} gives both members and experts",
                            c.name
                        )))
                    }
                    (_, true) => c
                        .members
                        .iter()
                        .map(|m| Ok((m.name.clone(), fuzzy_set(universe, m, "member")?)))
                        .collect::<Result<Vec<_>>>()?,
                    (true, false) => {
                        let reports = c
                            .experts
                            .iter()
                            .map(|e| {
                                let sets = e
                                    .sets
                                    .iter()
                                    .map(|s| {
                                        let ctx = format!("expert {:?} set", e.expert);
                                        Ok((s.name.clone(), fuzzy_set(universe, s, &ctx)?))
                                    })
                                    .collect::<Result<Vec<_>>>()?;
                                Ok(ExpertReport {
                                    expert: e.expert.clone(),
                                    sets,
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        merge_reports(&c.name, &reports).map_err(|e| model_err(&c.name, e))?
                    }
                };
                Ok(CoveringDraft::new(
                    c.name.clone(),
                    universe.clone(),
                    gamma,
                    members,
                ))
            })
            .collect()
    }

    pub fn parse_targets(&self, universe: &Arc<Universe>) -> Result<Vec<(String, FuzzySet)>> {
        let mut out: Vec<(String, FuzzySet)> = Vec::with_capacity(self.targets.len());
        for t in &self.targets {
            if out.iter().any(|(n, _)| *n == t.name) {
                return Err(CliError::Validation(format!(
                    "duplicate target {:?}",
                    t.name
                )));
            }
            out.push((t.name.clone(), fuzzy_set(universe, t, "target")?));
        }
        Ok(out)
    }

    /// Per-covering validation reports, without stopping at the first failure.
    pub fn check(&self) -> Result<Vec<CoveringCheck>> {
        let universe = self.universe_ref()?;
        Ok(self
            .drafts(&universe)?
            .into_iter()
            .map(|d| CoveringCheck {
                name: d.name.clone(),
                report: d.validate(),
            })
            .collect())
    }

    pub fn load(&self) -> Result<Loaded> {
        let universe = self.universe_ref()?;
        let coverings = self
            .drafts(&universe)?
            .into_iter()
            .map(|d| {
                let name = d.name.clone();
                d.into_covering().map_err(|e| model_err(&name, e))
            })
            .collect::<Result<Vec<FuzzyCovering>>>()?;
        let system =
            MultiGranulationSystem::new(universe.clone(), coverings).map_err(CliError::invalid)?;
        let targets = self.parse_targets(&universe)?;
        Ok(Loaded { system, targets })
    }

    /// Canonical file for a system: members listed directly, degrees in
    /// shortest decimal form.
    pub fn from_loaded(loaded: &Loaded) -> Self {
        let vector = |name: &str, set: &FuzzySet| NamedVector {
            name: name.to_string(),
            degrees: set
                .degrees()
                .iter()
                .map(|d| DegreeText(d.to_string()))
                .collect(),
        };
        SystemFile {
            universe: loaded.universe().names().to_vec(),
            coverings: loaded
                .system
                .coverings()
                .iter()
                .map(|c| CoveringEntry {
                    name: c.name().to_string(),
                    gamma: DegreeText(c.gamma().to_string()),
                    members: c.members().iter().map(|(n, s)| vector(n, s)).collect(),
                    experts: Vec::new(),
                })
                .collect(),
            targets: loaded.targets.iter().map(|(n, t)| vector(n, t)).collect(),
        }
    }
}

pub fn load(path: &Path) -> Result<Loaded> {
    SystemFile::read(path)?.load()
}

pub fn save(loaded: &Loaded, path: &Path) -> Result<()> {
    SystemFile::from_loaded(loaded).write(path)
}

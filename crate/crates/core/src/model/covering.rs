use std::fmt;
use std::sync::Arc;

use super::{same_universe, FuzzySet, Universe};
use crate::decimal::Degree;
use crate::error::{ModelError, Result};

/// An object whose best membership across the family stays below gamma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredObject {
    pub object: String,
    pub max_degree: Degree,
}

/// Outcome of checking the two fuzzy gamma-covering clauses.
///
/// Empty iff every member is non-empty and every object reaches gamma in
/// some member.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub gamma_not_positive: bool,
    pub no_members: bool,
    /// Clause (1): members whose degrees are all zero.
    pub empty_members: Vec<String>,
    /// Clause (2): objects with `max_C C(x) < gamma`.
    pub uncovered: Vec<UncoveredObject>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.gamma_not_positive
            && !self.no_members
            && self.empty_members.is_empty()
            && self.uncovered.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        if self.gamma_not_positive {
            parts.push("gamma must be in (0, 1]".to_string());
        }
        if self.no_members {
            parts.push("covering has no members".to_string());
        }
        if !self.empty_members.is_empty() {
            parts.push(format!("empty members: {}", self.empty_members.join(", ")));
        }
        if !self.uncovered.is_empty() {
            let objs: Vec<String> = self
                .uncovered
                .iter()
                .map(|u| format!("{} (max degree {})", u.object, u.max_degree))
                .collect();
            parts.push(format!("objects below gamma: {}", objs.join(", ")));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Named family of fuzzy sets with a covering threshold, not yet validated.
#[derive(Debug, Clone)]
pub struct CoveringDraft {
    pub name: String,
    pub universe: Arc<Universe>,
    pub gamma: Degree,
    pub members: Vec<(String, FuzzySet)>,
}

impl CoveringDraft {
    pub fn new(
        name: impl Into<String>,
        universe: Arc<Universe>,
        gamma: Degree,
        members: Vec<(String, FuzzySet)>,
    ) -> Self {
        CoveringDraft {
            name: name.into(),
            universe,
            gamma,
            members,
        }
    }

    /// Checks both covering clauses. Never fails; violations are reported.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            gamma_not_positive: self.gamma.is_zero(),
            no_members: self.members.is_empty() && self.universe.len() > 0,
            ..ValidationReport::default()
        };
        for (name, set) in &self.members {
            if set.is_empty() {
                report.empty_members.push(name.clone());
            }
        }
        for x in 0..self.universe.len() {
            let best = self
                .members
                .iter()
                .map(|(_, c)| c.get(x))
                .max()
                .unwrap_or(Degree::ZERO);
            if best < self.gamma {
                report.uncovered.push(UncoveredObject {
                    object: self.universe.name(x).to_string(),
                    max_degree: best,
                });
            }
        }
        report
    }

    pub fn into_covering(self) -> Result<FuzzyCovering> {
        for (i, (name, set)) in self.members.iter().enumerate() {
            if !same_universe(set.universe(), &self.universe) {
                return Err(ModelError::UniverseMismatch);
            }
            if self.members[..i].iter().any(|(n, _)| n == name) {
                return Err(ModelError::DuplicateMember {
                    covering: self.name.clone(),
                    member: name.clone(),
                });
            }
        }
        let report = self.validate();
        if !report.is_valid() {
            return Err(ModelError::InvalidCovering {
                name: self.name,
                report,
            });
        }
        Ok(FuzzyCovering {
            name: self.name,
            universe: self.universe,
            gamma: self.gamma,
            members: self.members,
        })
    }
}

/// A validated fuzzy gamma-covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyCovering {
    name: String,
    universe: Arc<Universe>,
    gamma: Degree,
    members: Vec<(String, FuzzySet)>,
}

impl FuzzyCovering {
    pub fn new(
        name: impl Into<String>,
        universe: Arc<Universe>,
        gamma: Degree,
        members: Vec<(String, FuzzySet)>,
    ) -> Result<Self> {
        CoveringDraft::new(name, universe, gamma, members).into_covering()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn gamma(&self) -> Degree {
        self.gamma
    }

    pub fn members(&self) -> &[(String, FuzzySet)] {
        &self.members
    }

    pub fn member(&self, name: &str) -> Option<&FuzzySet> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Every degree is 0 or 1 and gamma is 1.
    pub fn is_crisp(&self) -> bool {
        self.gamma == Degree::ONE && self.members.iter().all(|(_, s)| s.is_crisp())
    }

    pub fn to_draft(&self) -> CoveringDraft {
        CoveringDraft::new(
            self.name.clone(),
            self.universe.clone(),
            self.gamma,
            self.members.clone(),
        )
    }
}

/// One expert's named fuzzy sets for a single attribute.
#[derive(Debug, Clone)]
pub struct ExpertReport {
    pub expert: String,
    pub sets: Vec<(String, FuzzySet)>,
}

/// Pointwise max of each value name's sets across experts. Member order
/// follows the first report.
pub fn merge_reports(name: &str, reports: &[ExpertReport]) -> Result<Vec<(String, FuzzySet)>> {
    let first = reports
        .first()
        .ok_or_else(|| ModelError::NoReports(name.to_string()))?;
    let mut members: Vec<(String, FuzzySet)> = first.sets.clone();
    for report in &reports[1..] {
        if report.sets.len() != first.sets.len() {
            return Err(ModelError::ReportNameMismatch {
                covering: name.to_string(),
                detail: format!(
                    "{} reports {} values, {} reports {}",
                    first.expert,
                    first.sets.len(),
                    report.expert,
                    report.sets.len()
                ),
            });
        }
        for (value, acc) in members.iter_mut() {
            let other = report
                .sets
                .iter()
                .find(|(n, _)| n == value)
                .ok_or_else(|| ModelError::ReportNameMismatch {
                    covering: name.to_string(),
                    detail: format!("{} has no value {:?}", report.expert, value),
                })?;
            *acc = acc.union(&other.1)?;
        }
    }
    Ok(members)
}

/// Merges expert reports into one covering via [`merge_reports`].
pub fn build_covering_from_reports(
    name: &str,
    universe: Arc<Universe>,
    reports: &[ExpertReport],
    gamma: Degree,
) -> Result<FuzzyCovering> {
    FuzzyCovering::new(name, universe, gamma, merge_reports(name, reports)?)
}

/// A single fuzzy gamma-covering approximation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    covering: FuzzyCovering,
}

impl ApproximationSpace {
    pub fn new(covering: FuzzyCovering) -> Self {
        ApproximationSpace { covering }
    }

    pub fn covering(&self) -> &FuzzyCovering {
        &self.covering
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.covering.universe()
    }

    pub fn gamma(&self) -> Degree {
        self.covering.gamma()
    }
}

/// Ordered family of coverings over one universe, each with its own gamma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGranulationSystem {
    universe: Arc<Universe>,
    coverings: Vec<FuzzyCovering>,
}

impl MultiGranulationSystem {
    pub fn new(universe: Arc<Universe>, coverings: Vec<FuzzyCovering>) -> Result<Self> {
        if coverings.is_empty() {
            return Err(ModelError::NoCoverings);
        }
        if coverings
            .iter()
            .any(|c| !same_universe(c.universe(), &universe))
        {
            return Err(ModelError::UniverseMismatch);
        }
        Ok(MultiGranulationSystem {
            universe,
            coverings,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn coverings(&self) -> &[FuzzyCovering] {
        &self.coverings
    }

    pub fn len(&self) -> usize {
        self.coverings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coverings.is_empty()
    }

    pub fn covering(&self, name: &str) -> Option<&FuzzyCovering> {
        self.coverings.iter().find(|c| c.name() == name)
    }

    /// `[gamma_1, ..., gamma_m]`.
    pub fn gammas(&self) -> Vec<Degree> {
        self.coverings.iter().map(|c| c.gamma()).collect()
    }

    pub fn spaces(&self) -> Vec<ApproximationSpace> {
        self.coverings
            .iter()
            .cloned()
            .map(ApproximationSpace::new)
            .collect()
    }
}

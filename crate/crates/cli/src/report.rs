//! Result files (JSON) and their CSV rendering.

use serde::Serialize;

use fuzzycover::{
    measures, ApproximationResult, FuzzySet, NeighborhoodTable, RegionPartition, ResidualMode,
};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdOut {
    pub alpha: String,
    pub beta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsOut {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<ThresholdOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub grades: Vec<String>,
    pub residual_mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionOut {
    pub name: String,
    pub objects: Vec<String>,
}

/// Per-object quantities under one covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub covering: String,
    pub object: String,
    pub sigma: String,
    pub overlap: String,
    /// Reduced fraction, e.g. `25/33`.
    pub probability: String,
    pub mass: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultFile {
    pub operator: String,
    pub coverings: Vec<String>,
    pub target: String,
    pub params: ParamsOut,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<RegionOut>>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn diagnostics(
    tables: &[&NeighborhoodTable],
    target: &FuzzySet,
    mode: ResidualMode,
) -> Result<Vec<Diagnostic>> {
    let mut out = Vec::new();
    for table in tables {
        let ms = measures(table, target, mode).map_err(CliError::param)?;
        for (x, m) in ms.iter().enumerate() {
            out.push(Diagnostic {
                covering: table.covering_name().to_string(),
                object: table.universe().name(x).to_string(),
                sigma: m.sigma.to_string(),
                overlap: m.overlap.to_string(),
                probability: m.probability().to_string(),
                mass: m.mass.to_string(),
            });
        }
    }
    Ok(out)
}

impl ResultFile {
    pub fn new(
        result: &ApproximationResult,
        tables: &[&NeighborhoodTable],
        target_name: &str,
        target: &FuzzySet,
        mode: ResidualMode,
        regions: Option<&RegionPartition>,
    ) -> Result<Self> {
        Ok(ResultFile {
            operator: result.operator.to_string(),
            coverings: tables
                .iter()
                .map(|t| t.covering_name().to_string())
                .collect(),
            target: target_name.to_string(),
            params: ParamsOut {
                thresholds: result
                    .params
                    .thresholds
                    .iter()
                    .map(|t| ThresholdOut {
                        alpha: t.alpha().to_string(),
                        beta: t.beta().to_string(),
                    })
                    .collect(),
                grades: result.params.grades.iter().map(|k| k.to_string()).collect(),
                residual_mode: mode.as_str().to_string(),
            },
            lower: result.lower.names(),
            upper: result.upper.names(),
            regions: regions.map(|r| {
                r.regions()
                    .into_iter()
                    .map(|(name, set)| RegionOut {
                        name: name.to_string(),
                        objects: set.names(),
                    })
                    .collect()
            }),
            diagnostics: diagnostics(tables, target, mode)?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result files always serialize");
        s.push('\n');
        s
    }

    /// One row per (covering, object).
    pub fn to_csv(&self) -> String {
        let with_regions = self.regions.is_some();
        let mut out = String::from("covering,object,sigma,overlap,probability,mass,lower,upper");
        if with_regions {
            out.push_str(",region");
        }
        out.push('\n');
        for d in &self.diagnostics {
            let flag = |set: &[String]| u8::from(set.contains(&d.object));
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}",
                d.covering,
                d.object,
                d.sigma,
                d.overlap,
                d.probability,
                d.mass,
                flag(&self.lower),
                flag(&self.upper)
            ));
            if let Some(regions) = &self.regions {
                let region = regions
                    .iter()
                    .filter(|r| r.name != "BOU" || regions.len() == 3)
                    .find(|r| r.objects.contains(&d.object))
                    .map(|r| r.name.as_str())
                    .unwrap_or("");
                out.push(',');
                out.push_str(region);
            }
            out.push('\n');
        }
        out
    }
}

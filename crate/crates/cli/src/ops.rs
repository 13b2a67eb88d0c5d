//! Dispatch from an operator id and parameter lists to the library calls.

use fuzzycover::{
    dq_conjunctive, dq_disjunctive, grade_approx, mg_dq, mg_grade, mg_prob, prob_approx,
    ApproximationResult, FuzzySet, Grade, GradeVector, GranulationTables, NeighborhoodTable,
    OperatorId, RegionPartition, ResidualMode, ThresholdPair, ThresholdVector,
};

use crate::error::{CliError, Result};

/// Parameters for one evaluation. Single-covering operators read the first
/// entry of each list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpParams {
    pub thresholds: Vec<ThresholdPair>,
    pub grades: Vec<Grade>,
    pub mode: ResidualMode,
}

pub fn parse_op(s: &str) -> Result<OperatorId> {
    OperatorId::parse(s).ok_or_else(|| {
        let known: Vec<&str> = OperatorId::ALL.iter().map(|o| o.as_str()).collect();
        CliError::Parameter(format!(
            "unknown operator {s:?}; expected one of {}",
            known.join(", ")
        ))
    })
}

fn first<T: Copy>(v: &[T], what: &str, op: OperatorId) -> Result<T> {
    v.first()
        .copied()
        .ok_or_else(|| CliError::Parameter(format!("{op} needs {what}")))
}

pub fn run_single(
    op: OperatorId,
    table: &NeighborhoodTable,
    target: &FuzzySet,
    p: &OpParams,
) -> Result<ApproximationResult> {
    let t = || first(&p.thresholds, "--alpha and --beta", op);
    let k = || first(&p.grades, "--k", op);
    let r = match op {
        OperatorId::Prob => prob_approx(table, target, t()?),
        OperatorId::Grade => grade_approx(table, target, k()?, p.mode),
        OperatorId::DqDisjunctive => dq_disjunctive(table, target, t()?, k()?, p.mode),
        OperatorId::DqConjunctive => dq_conjunctive(table, target, t()?, k()?, p.mode),
        _ => {
            return Err(CliError::Parameter(format!(
                "{op} is not a single-covering operator"
            )))
        }
    };
    r.map_err(CliError::param)
}

pub fn run_multi(
    op: OperatorId,
    tables: &GranulationTables,
    target: &FuzzySet,
    p: &OpParams,
) -> Result<ApproximationResult> {
    let need = |empty: bool, what: &str| {
        if empty {
            Err(CliError::Parameter(format!("{op} needs {what}")))
        } else {
            Ok(())
        }
    };
    let tv = || ThresholdVector(p.thresholds.clone());
    let kv = || GradeVector(p.grades.clone());
    let r = match op {
        OperatorId::MgProb(c) => {
            need(p.thresholds.is_empty(), "--alphas and --betas")?;
            mg_prob(tables, target, &tv(), c)
        }
        OperatorId::MgGrade(c) => {
            need(p.grades.is_empty(), "--ks")?;
            mg_grade(tables, target, &kv(), c, p.mode)
        }
        OperatorId::MgDq(c) => {
            need(p.thresholds.is_empty(), "--alphas and --betas")?;
            need(p.grades.is_empty(), "--ks")?;
            mg_dq(tables, target, &tv(), &kv(), c, p.mode)
        }
        _ => {
            return Err(CliError::Parameter(format!(
                "{op} is not a multi-granulation operator"
            )))
        }
    };
    r.map_err(CliError::param)
}

/// Three regions for probabilistic families, five for the others.
pub fn regions_of(result: &ApproximationResult) -> RegionPartition {
    match result.operator {
        OperatorId::Prob | OperatorId::MgProb(_) => {
            RegionPartition::from_prob(&result.lower, &result.upper)
        }
        _ => RegionPartition::from_grade(&result.lower, &result.upper),
    }
}

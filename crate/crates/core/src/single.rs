//! Operators over a single fuzzy gamma-covering: conditional probability,
//! probabilistic and grade approximations, their regions, and the two
//! double-quantitative combinations.
//!
//! Strictness is fixed: probabilistic tests are `P >= t`, the grade upper
//! test is `Σ(X ∩ N_x) > k`, the grade lower test is `mass <= k`. Every
//! composite operator is built from these three predicates.

use std::cmp::Ordering;

use crate::decimal::{Decimal, Proportion, SCALE};
use crate::error::{ModelError, Result};
use crate::model::{same_universe, FuzzySet, Grade, ObjectSet, ResidualMode, ThresholdPair};
use crate::neighborhood::NeighborhoodTable;
use crate::result::{ApproximationResult, OperatorId, ParamEcho, RegionPartition};

/// Per-object quantities every predicate is evaluated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObjectMeasures {
    /// `Σ_y min(X(y), N_x(y))`.
    pub overlap: Decimal,
    /// `Σ_y N_x(y)`.
    pub sigma: Decimal,
    /// Missing mass under the chosen residual mode.
    pub mass: Decimal,
}

impl ObjectMeasures {
    pub fn probability(&self) -> Proportion {
        Proportion::new(self.overlap, self.sigma)
    }

    fn prob_at_least(&self, t: crate::decimal::Degree) -> bool {
        self.probability().at_least(t)
    }

    fn grade_upper(&self, k: Grade) -> bool {
        self.overlap > k.value()
    }

    fn grade_lower(&self, k: Grade) -> bool {
        self.mass <= k.value()
    }
}

fn check_target(table: &NeighborhoodTable, target: &FuzzySet) -> Result<()> {
    if same_universe(table.universe(), target.universe()) {
        Ok(())
    } else {
        Err(ModelError::UniverseMismatch)
    }
}

/// Measures for every object, in universe order.
pub fn measures(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    mode: ResidualMode,
) -> Result<Vec<ObjectMeasures>> {
    check_target(table, target)?;
    Ok((0..table.len())
        .map(|x| ObjectMeasures {
            overlap: table.overlap(target, x),
            sigma: table.sigma(x),
            mass: table.residual_mass(target, x, mode),
        })
        .collect())
}

/// `P(X | N_x) = Σ(X ∩ N_x) / Σ N_x`.
pub fn cond_prob(table: &NeighborhoodTable, target: &FuzzySet, x: usize) -> Result<Proportion> {
    check_target(table, target)?;
    Ok(Proportion::new(table.overlap(target, x), table.sigma(x)))
}

fn select(
    table: &NeighborhoodTable,
    ms: &[ObjectMeasures],
    pred: impl Fn(&ObjectMeasures) -> bool,
) -> ObjectSet {
    ObjectSet::from_predicate(table.universe().clone(), |x| pred(&ms[x]))
}

/// Lower `{P >= alpha}`, upper `{P >= beta}`.
pub fn prob_approx(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
) -> Result<ApproximationResult> {
    let ms = measures(table, target, ResidualMode::Residual)?;
    Ok(ApproximationResult {
        operator: OperatorId::Prob,
        params: ParamEcho {
            thresholds: vec![t],
            ..ParamEcho::default()
        },
        lower: select(table, &ms, |m| m.prob_at_least(t.alpha())),
        upper: select(table, &ms, |m| m.prob_at_least(t.beta())),
    })
}

/// POS `{P >= alpha}`, BOU `{beta <= P < alpha}`, NEG `{P < beta}`.
pub fn prob_regions(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
) -> Result<RegionPartition> {
    let ms = measures(table, target, ResidualMode::Residual)?;
    Ok(RegionPartition::Three {
        pos: select(table, &ms, |m| m.prob_at_least(t.alpha())),
        bou: select(table, &ms, |m| {
            m.prob_at_least(t.beta()) && !m.prob_at_least(t.alpha())
        }),
        neg: select(table, &ms, |m| !m.prob_at_least(t.beta())),
    })
}

/// Upper `{Σ(X ∩ N_x) > k}`, lower `{mass <= k}`.
pub fn grade_approx(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    k: Grade,
    mode: ResidualMode,
) -> Result<ApproximationResult> {
    let ms = measures(table, target, mode)?;
    Ok(ApproximationResult {
        operator: OperatorId::Grade,
        params: ParamEcho {
            grades: vec![k],
            mode: Some(mode),
            ..ParamEcho::default()
        },
        lower: select(table, &ms, |m| m.grade_lower(k)),
        upper: select(table, &ms, |m| m.grade_upper(k)),
    })
}

/// Five grade regions derived from the grade lower/upper pair.
pub fn grade_regions(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    k: Grade,
    mode: ResidualMode,
) -> Result<RegionPartition> {
    let r = grade_approx(table, target, k, mode)?;
    Ok(RegionPartition::from_grade(&r.lower, &r.upper))
}

fn dq(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
    k: Grade,
    mode: ResidualMode,
    operator: OperatorId,
    join: fn(bool, bool) -> bool,
) -> Result<ApproximationResult> {
    let ms = measures(table, target, mode)?;
    Ok(ApproximationResult {
        operator,
        params: ParamEcho {
            thresholds: vec![t],
            grades: vec![k],
            mode: Some(mode),
        },
        lower: select(table, &ms, |m| {
            join(m.prob_at_least(t.alpha()), m.grade_lower(k))
        }),
        upper: select(table, &ms, |m| {
            join(m.prob_at_least(t.beta()), m.grade_upper(k))
        }),
    })
}

/// Both the probabilistic and the grade test must hold.
pub fn dq_disjunctive(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
    k: Grade,
    mode: ResidualMode,
) -> Result<ApproximationResult> {
    dq(
        table,
        target,
        t,
        k,
        mode,
        OperatorId::DqDisjunctive,
        |a, b| a && b,
    )
}

/// Either the probabilistic or the grade test must hold.
pub fn dq_conjunctive(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
    k: Grade,
    mode: ResidualMode,
) -> Result<ApproximationResult> {
    dq(
        table,
        target,
        t,
        k,
        mode,
        OperatorId::DqConjunctive,
        |a, b| a || b,
    )
}

/// One object's evaluation of the grade and probabilistic predicates in
/// definitional form and in ratio form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdFormRow {
    pub object: String,
    pub overlap: Decimal,
    pub sigma: Decimal,
    pub grade_upper: bool,
    /// `P > k / sigma`.
    pub grade_upper_ratio_strict: bool,
    /// `P >= k / sigma`.
    pub grade_upper_ratio_loose: bool,
    pub grade_lower: bool,
    /// `P >= 1 - k / sigma`.
    pub grade_lower_ratio: bool,
    pub prob_upper_scaled: bool,
    pub prob_lower_scaled: bool,
    pub dq_and_upper_converted: bool,
    pub dq_or_upper_converted: bool,
}

/// Result of comparing definitional predicates with their ratio forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdFormReport {
    pub rows: Vec<ThresholdFormRow>,
    /// Every strictness-corrected ratio form agreed with its definition.
    pub corrected_forms_agree: bool,
    /// Objects where a non-strict ratio restatement disagrees with the
    /// definitional strict form.
    pub flagged: ObjectSet,
}

/// Compares `a/b` and `c/d` for positive `b`, `d`.
fn cmp_ratio(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    (a * d).cmp(&(c * b))
}

/// Re-evaluates the grade and probabilistic predicates through their ratio
/// and scaled forms and reports where the forms diverge. Uses the residual
/// mass definition for the lower predicate.
pub fn threshold_form_check(
    table: &NeighborhoodTable,
    target: &FuzzySet,
    t: ThresholdPair,
    k: Grade,
) -> Result<ThresholdFormReport> {
    let ms = measures(table, target, ResidualMode::Residual)?;
    let scale = SCALE as i128;
    let kk = k.value().micros() as i128;
    let alpha = t.alpha().micros() as i128;
    let beta = t.beta().micros() as i128;
    let mut rows = Vec::with_capacity(ms.len());
    let mut agree = true;
    let mut flagged = ObjectSet::empty(table.universe().clone());
    for (x, m) in ms.iter().enumerate() {
        let ov = m.overlap.micros() as i128;
        let sg = m.sigma.micros() as i128;
        let p_beta = m.prob_at_least(t.beta());
        let p_alpha = m.prob_at_least(t.alpha());
        let grade_upper = m.grade_upper(k);
        let grade_lower = m.grade_lower(k);

        // P vs k/sigma, both as fractions over sigma.
        let vs_k = cmp_ratio(ov, sg, kk, sg);
        // P vs (sigma - k)/sigma.
        let vs_one_minus_k = cmp_ratio(ov, sg, sg - kk, sg);
        // k/sigma vs beta.
        let k_ratio_vs_beta = cmp_ratio(kk, sg, beta, scale);

        let row = ThresholdFormRow {
            object: table.universe().name(x).to_string(),
            overlap: m.overlap,
            sigma: m.sigma,
            grade_upper,
            grade_upper_ratio_strict: vs_k == Ordering::Greater,
            grade_upper_ratio_loose: vs_k != Ordering::Less,
            grade_lower,
            grade_lower_ratio: vs_one_minus_k != Ordering::Less,
            prob_upper_scaled: ov * scale >= beta * sg,
            prob_lower_scaled: (sg - ov) * scale <= sg * scale - alpha * sg,
            dq_and_upper_converted: if k_ratio_vs_beta == Ordering::Greater {
                vs_k != Ordering::Less
            } else {
                p_beta
            },
            dq_or_upper_converted: if k_ratio_vs_beta == Ordering::Less {
                vs_k != Ordering::Less
            } else {
                p_beta
            },
        };
        agree &= row.grade_upper_ratio_strict == grade_upper
            && row.grade_lower_ratio == grade_lower
            && row.prob_upper_scaled == p_beta
            && row.prob_lower_scaled == p_alpha;
        let dq_and = p_beta && grade_upper;
        let dq_or = p_beta || grade_upper;
        if row.grade_upper_ratio_loose != grade_upper
            || row.dq_and_upper_converted != dq_and
            || row.dq_or_upper_converted != dq_or
        {
            flagged.insert(x);
        }
        rows.push(row);
    }
    Ok(ThresholdFormReport {
        rows,
        corrected_forms_agree: agree,
        flagged,
    })
}

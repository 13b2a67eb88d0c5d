use std::fmt;

use crate::model::{Combinator, Grade, ObjectSet, ResidualMode, ThresholdPair};

/// Identifies an approximation operator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorId {
    /// Crisp lower/upper approximation by neighborhood inclusion.
    Pawlak,
    Prob,
    Grade,
    /// Probabilistic and grade predicates joined by `and`.
    DqDisjunctive,
    /// Probabilistic and grade predicates joined by `or`.
    DqConjunctive,
    MgProb(Combinator),
    MgGrade(Combinator),
    MgDq(Combinator),
}

impl OperatorId {
    /// Every fuzzy operator.
    pub const ALL: [OperatorId; 10] = [
        OperatorId::Prob,
        OperatorId::Grade,
        OperatorId::DqDisjunctive,
        OperatorId::DqConjunctive,
        OperatorId::MgProb(Combinator::TypeI),
        OperatorId::MgProb(Combinator::TypeII),
        OperatorId::MgGrade(Combinator::TypeI),
        OperatorId::MgGrade(Combinator::TypeII),
        OperatorId::MgDq(Combinator::TypeI),
        OperatorId::MgDq(Combinator::TypeII),
    ];

    pub fn as_str(&self) -> &'static str {
        use Combinator::*;
        match self {
            OperatorId::Pawlak => "pawlak",
            OperatorId::Prob => "prob",
            OperatorId::Grade => "grade",
            OperatorId::DqDisjunctive => "dq1",
            OperatorId::DqConjunctive => "dq2",
            OperatorId::MgProb(TypeI) => "mg-prob1",
            OperatorId::MgProb(TypeII) => "mg-prob2",
            OperatorId::MgGrade(TypeI) => "mg-grade1",
            OperatorId::MgGrade(TypeII) => "mg-grade2",
            OperatorId::MgDq(TypeI) => "mg-dq1",
            OperatorId::MgDq(TypeII) => "mg-dq2",
        }
    }

    /// Parses canonical ids and the `-all` / `-any` aliases.
    pub fn parse(s: &str) -> Option<OperatorId> {
        use Combinator::*;
        let op = match s {
            "prob" => OperatorId::Prob,
            "grade" => OperatorId::Grade,
            "dq1" | "dq-all" => OperatorId::DqDisjunctive,
            "dq2" | "dq-any" => OperatorId::DqConjunctive,
            "mg-prob1" | "mg-prob-all" => OperatorId::MgProb(TypeI),
            "mg-prob2" | "mg-prob-any" => OperatorId::MgProb(TypeII),
            "mg-grade1" | "mg-grade-all" => OperatorId::MgGrade(TypeI),
            "mg-grade2" | "mg-grade-any" => OperatorId::MgGrade(TypeII),
            "mg-dq1" | "mg-dq-all" => OperatorId::MgDq(TypeI),
            "mg-dq2" | "mg-dq-any" => OperatorId::MgDq(TypeII),
            _ => return None,
        };
        Some(op)
    }

    pub fn is_multi(&self) -> bool {
        matches!(
            self,
            OperatorId::MgProb(_) | OperatorId::MgGrade(_) | OperatorId::MgDq(_)
        )
    }

    pub fn uses_thresholds(&self) -> bool {
        !matches!(
            self,
            OperatorId::Pawlak | OperatorId::Grade | OperatorId::MgGrade(_)
        )
    }

    pub fn uses_grades(&self) -> bool {
        !matches!(
            self,
            OperatorId::Pawlak | OperatorId::Prob | OperatorId::MgProb(_)
        )
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters an operator was evaluated with, echoed into results.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamEcho {
    pub thresholds: Vec<ThresholdPair>,
    pub grades: Vec<Grade>,
    pub mode: Option<ResidualMode>,
}

/// Lower and upper approximation of one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationResult {
    pub operator: OperatorId,
    pub params: ParamEcho,
    pub lower: ObjectSet,
    pub upper: ObjectSet,
}

impl ApproximationResult {
    /// Componentwise intersection, keeping `self`'s operator id.
    pub fn intersect(&self, other: &ApproximationResult) -> ApproximationResult {
        ApproximationResult {
            operator: self.operator,
            params: self.params.clone(),
            lower: self.lower.intersection(&other.lower),
            upper: self.upper.intersection(&other.upper),
        }
    }

    /// Componentwise union, keeping `self`'s operator id.
    pub fn union(&self, other: &ApproximationResult) -> ApproximationResult {
        ApproximationResult {
            operator: self.operator,
            params: self.params.clone(),
            lower: self.lower.union(&other.lower),
            upper: self.upper.union(&other.upper),
        }
    }

    pub fn same_sets(&self, other: &ApproximationResult) -> bool {
        self.lower == other.lower && self.upper == other.upper
    }
}

/// Three-way or five-way split of the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionPartition {
    Three {
        pos: ObjectSet,
        bou: ObjectSet,
        neg: ObjectSet,
    },
    Five {
        pos: ObjectSet,
        neg: ObjectSet,
        lbo: ObjectSet,
        ubo: ObjectSet,
        bou: ObjectSet,
    },
}

impl RegionPartition {
    /// Three regions from a nested lower/upper pair.
    pub fn from_prob(lower: &ObjectSet, upper: &ObjectSet) -> RegionPartition {
        RegionPartition::Three {
            pos: lower.clone(),
            bou: upper.difference(lower),
            neg: upper.complement(),
        }
    }

    /// Five regions from a grade lower/upper pair.
    pub fn from_grade(lower: &ObjectSet, upper: &ObjectSet) -> RegionPartition {
        let lbo = lower.difference(upper);
        let ubo = upper.difference(lower);
        RegionPartition::Five {
            pos: upper.intersection(lower),
            neg: upper.union(lower).complement(),
            bou: lbo.union(&ubo),
            lbo,
            ubo,
        }
    }

    /// Named regions in display order.
    pub fn regions(&self) -> Vec<(&'static str, &ObjectSet)> {
        match self {
            RegionPartition::Three { pos, bou, neg } => {
                vec![("POS", pos), ("BOU", bou), ("NEG", neg)]
            }
            RegionPartition::Five {
                pos,
                neg,
                lbo,
                ubo,
                bou,
            } => vec![
                ("POS", pos),
                ("NEG", neg),
                ("LBO", lbo),
                ("UBO", ubo),
                ("BOU", bou),
            ],
        }
    }

    /// The blocks cover the universe, are pairwise disjoint, and (five-way)
    /// `BOU = LBO ∪ UBO`.
    pub fn is_partition(&self) -> bool {
        let blocks: Vec<&ObjectSet> = match self {
            RegionPartition::Three { pos, bou, neg } => vec![pos, bou, neg],
            RegionPartition::Five {
                pos,
                neg,
                lbo,
                ubo,
                bou,
            } => {
                if *bou != lbo.union(ubo) {
                    return false;
                }
                vec![pos, neg, lbo, ubo]
            }
        };
        let n = blocks[0].flags().len();
        (0..n).all(|i| blocks.iter().filter(|b| b.contains(i)).count() == 1)
    }
}

//! Multi-granulation fusion over a family of coverings.
//!
//! Type I requires the per-covering predicate to hold for every covering,
//! type II for at least one. Each covering is evaluated against its own
//! gamma-neighborhoods.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{ModelError, Result};
use crate::model::{
    Combinator, FuzzySet, GradeVector, MultiGranulationSystem, ObjectSet, ResidualMode,
    ThresholdVector, Universe,
};
use crate::neighborhood::{Execution, NeighborhoodTable};
use crate::result::{ApproximationResult, OperatorId, ParamEcho};
use crate::single::{measures, ObjectMeasures};

/// Neighborhood tables for every covering of a system, in system order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GranulationTables {
    universe: Arc<Universe>,
    tables: Vec<NeighborhoodTable>,
    exec: Execution,
}

impl GranulationTables {
    pub fn build(system: &MultiGranulationSystem) -> Self {
        Self::build_with(system, Execution::Sequential)
    }

    pub fn build_with(system: &MultiGranulationSystem, exec: Execution) -> Self {
        let spaces = system.spaces();
        let tables = match exec {
            Execution::Sequential => spaces.iter().map(NeighborhoodTable::build).collect(),
            Execution::Parallel => spaces
                .par_iter()
                .map(|s| NeighborhoodTable::build_with(s, Execution::Parallel))
                .collect(),
        };
        GranulationTables {
            universe: system.universe().clone(),
            tables,
            exec,
        }
    }

    pub fn tables(&self) -> &[NeighborhoodTable] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.tables.len() {
            return Err(ModelError::VectorLength {
                expected: self.tables.len(),
                found,
            });
        }
        Ok(())
    }

    fn all_measures(
        &self,
        target: &FuzzySet,
        mode: ResidualMode,
    ) -> Result<Vec<Vec<ObjectMeasures>>> {
        match self.exec {
            Execution::Sequential => self
                .tables
                .iter()
                .map(|t| measures(t, target, mode))
                .collect(),
            Execution::Parallel => self
                .tables
                .par_iter()
                .map(|t| measures(t, target, mode))
                .collect(),
        }
    }
}

/// Folds a per-covering predicate across coverings for every object.
fn fuse(
    universe: &Arc<Universe>,
    per_covering: &[Vec<ObjectMeasures>],
    combinator: Combinator,
    pred: impl Fn(usize, &ObjectMeasures) -> bool,
) -> ObjectSet {
    ObjectSet::from_predicate(universe.clone(), |x| {
        let mut hits = per_covering
            .iter()
            .enumerate()
            .map(|(i, ms)| pred(i, &ms[x]));
        match combinator {
            Combinator::TypeI => hits.all(|b| b),
            Combinator::TypeII => hits.any(|b| b),
        }
    })
}

pub fn mg_prob(
    tables: &GranulationTables,
    target: &FuzzySet,
    tv: &ThresholdVector,
    combinator: Combinator,
) -> Result<ApproximationResult> {
    tables.check_len(tv.len())?;
    let per = tables.all_measures(target, ResidualMode::Residual)?;
    let t = &tv.0;
    Ok(ApproximationResult {
        operator: OperatorId::MgProb(combinator),
        params: ParamEcho {
            thresholds: t.clone(),
            ..ParamEcho::default()
        },
        lower: fuse(tables.universe(), &per, combinator, |i, m| {
            m.probability().at_least(t[i].alpha())
        }),
        upper: fuse(tables.universe(), &per, combinator, |i, m| {
            m.probability().at_least(t[i].beta())
        }),
    })
}

pub fn mg_grade(
    tables: &GranulationTables,
    target: &FuzzySet,
    kv: &GradeVector,
    combinator: Combinator,
    mode: ResidualMode,
) -> Result<ApproximationResult> {
    tables.check_len(kv.len())?;
    let per = tables.all_measures(target, mode)?;
    let k = &kv.0;
    Ok(ApproximationResult {
        operator: OperatorId::MgGrade(combinator),
        params: ParamEcho {
            grades: k.clone(),
            mode: Some(mode),
            ..ParamEcho::default()
        },
        lower: fuse(tables.universe(), &per, combinator, |i, m| {
            m.mass <= k[i].value()
        }),
        upper: fuse(tables.universe(), &per, combinator, |i, m| {
            m.overlap > k[i].value()
        }),
    })
}

/// Type I: every covering passes both tests. Type II: some covering passes
/// at least one test.
pub fn mg_dq(
    tables: &GranulationTables,
    target: &FuzzySet,
    tv: &ThresholdVector,
    kv: &GradeVector,
    combinator: Combinator,
    mode: ResidualMode,
) -> Result<ApproximationResult> {
    tables.check_len(tv.len())?;
    tables.check_len(kv.len())?;
    let per = tables.all_measures(target, mode)?;
    let (t, k) = (&tv.0, &kv.0);
    let join = move |a: bool, b: bool| match combinator {
        Combinator::TypeI => a && b,
        Combinator::TypeII => a || b,
    };
    Ok(ApproximationResult {
        operator: OperatorId::MgDq(combinator),
        params: ParamEcho {
            thresholds: t.clone(),
            grades: k.clone(),
            mode: Some(mode),
        },
        lower: fuse(tables.universe(), &per, combinator, |i, m| {
            join(
                m.probability().at_least(t[i].alpha()),
                m.mass <= k[i].value(),
            )
        }),
        upper: fuse(tables.universe(), &per, combinator, |i, m| {
            join(
                m.probability().at_least(t[i].beta()),
                m.overlap > k[i].value(),
            )
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FuzzyCovering, Grade, ThresholdPair};
    use crate::single::{dq_conjunctive, dq_disjunctive, grade_approx, prob_approx};

    const X: [&str; 8] = ["0.6", "0.5", "0.7", "0.8", "0.5", "0.6", "0", "0.2"];

    fn two_cov() -> (MultiGranulationSystem, FuzzySet) {
        let u = Universe::numbered(8).unwrap();
        let cov = |name: &str, gamma: &str, members: [[&str; 8]; 3]| {
            let ms = members
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    (
                        format!("{name}{}", i + 1),
                        FuzzySet::parse(u.clone(), v).unwrap(),
                    )
                })
                .collect();
            FuzzyCovering::new(name, u.clone(), gamma.parse().unwrap(), ms).unwrap()
        };
        let c1 = cov(
            "C1",
            "0.9",
            [
                ["1", "0.7", "0", "0.9", "0.9", "0", "0.9", "0.8"],
                ["0.6", "0.9", "0.4", "0.4", "0.5", "0.7", "0.5", "1"],
                ["0", "0.5", "0.9", "0", "0.5", "0.9", "0", "0.5"],
            ],
        );
        let c2 = cov(
            "C2",
            "0.6",
            [
                ["0.6", "0.4", "0.2", "0.4", "0.1", "0.6", "0.6", "0.5"],
                ["0.5", "0.3", "0.6", "0.6", "0.4", "0.5", "0.2", "0.6"],
                ["0.2", "0.6", "0.2", "0.5", "0.6", "0.3", "0", "0.3"],
            ],
        );
        let x = FuzzySet::parse(u.clone(), &X).unwrap();
        (MultiGranulationSystem::new(u, vec![c1, c2]).unwrap(), x)
    }

    fn tv(a: &str, b: &str, m: usize) -> ThresholdVector {
        ThresholdVector::uniform(ThresholdPair::parse(a, b).unwrap(), m)
    }

    fn kv(k: &str, m: usize) -> GradeVector {
        GradeVector::uniform(k.parse::<Grade>().unwrap(), m)
    }

    fn names(s: &ObjectSet) -> Vec<String> {
        s.names()
    }

    #[test]
    fn probabilistic_fusion_on_two_coverings() {
        let (sys, x) = two_cov();
        let g = GranulationTables::build(&sys);
        let r = mg_prob(&g, &x, &tv("0.75", "0.25", 2), Combinator::TypeI).unwrap();
        assert_eq!(names(&r.lower), ["x3"]);
        assert!(r.upper.is_full());
        let r = mg_prob(&g, &x, &tv("0.75", "0.25", 2), Combinator::TypeII).unwrap();
        assert_eq!(names(&r.lower), ["x2", "x3", "x4", "x5", "x6", "x8"]);
        assert!(r.upper.is_full());
    }

    #[test]
    fn grade_fusion_on_two_coverings() {
        let (sys, x) = two_cov();
        let g = GranulationTables::build(&sys);
        let r = mg_grade(
            &g,
            &x,
            &kv("2", 2),
            Combinator::TypeI,
            ResidualMode::Residual,
        )
        .unwrap();
        assert_eq!(names(&r.lower), ["x2", "x3", "x6", "x8"]);
        assert!(r.upper.is_full());
        let r = mg_grade(
            &g,
            &x,
            &kv("2", 2),
            Combinator::TypeII,
            ResidualMode::Residual,
        )
        .unwrap();
        assert!(r.lower.is_full());
        assert!(r.upper.is_full());

        let empty = FuzzySet::empty(sys.universe().clone());
        for c in [Combinator::TypeI, Combinator::TypeII] {
            let r = mg_grade(&g, &empty, &kv("0", 2), c, ResidualMode::Residual).unwrap();
            assert!(r.upper.is_empty());
        }
    }

    #[test]
    fn double_quantitative_fusion_on_two_coverings() {
        let (sys, x) = two_cov();
        let g = GranulationTables::build(&sys);
        let r = mg_dq(
            &g,
            &x,
            &tv("0.75", "0.25", 2),
            &kv("1", 2),
            Combinator::TypeI,
            ResidualMode::Residual,
        )
        .unwrap();
        assert_eq!(names(&r.lower), ["x3"]);
        assert!(r.upper.is_full());
        let r = mg_dq(
            &g,
            &x,
            &tv("0.75", "0.25", 2),
            &kv("1", 2),
            Combinator::TypeII,
            ResidualMode::Residual,
        )
        .unwrap();
        // covering 2 has residual mass <= 0.9 everywhere, so its grade test passes for all objects
        assert!(r.lower.is_full());
        assert!(r.upper.is_full());
    }

    #[test]
    fn single_covering_degenerates_to_single_operators() {
        let (sys, x) = two_cov();
        let one =
            MultiGranulationSystem::new(sys.universe().clone(), vec![sys.coverings()[1].clone()])
                .unwrap();
        let g = GranulationTables::build(&one);
        let t = &g.tables()[0];
        let pair = ThresholdPair::parse("0.8", "0.3").unwrap();
        let k: Grade = "0.6".parse().unwrap();
        for c in [Combinator::TypeI, Combinator::TypeII] {
            let mode = ResidualMode::Residual;
            assert!(mg_prob(&g, &x, &tv("0.8", "0.3", 1), c)
                .unwrap()
                .same_sets(&prob_approx(t, &x, pair).unwrap()));
            assert!(mg_grade(&g, &x, &kv("0.6", 1), c, mode)
                .unwrap()
                .same_sets(&grade_approx(t, &x, k, mode).unwrap()));
        }
        let d = mg_dq(
            &g,
            &x,
            &tv("0.8", "0.3", 1),
            &kv("0.6", 1),
            Combinator::TypeI,
            ResidualMode::Residual,
        )
        .unwrap();
        assert!(d.same_sets(&dq_disjunctive(t, &x, pair, k, ResidualMode::Residual).unwrap()));
        let d = mg_dq(
            &g,
            &x,
            &tv("0.8", "0.3", 1),
            &kv("0.6", 1),
            Combinator::TypeII,
            ResidualMode::Residual,
        )
        .unwrap();
        assert!(d.same_sets(&dq_conjunctive(t, &x, pair, k, ResidualMode::Residual).unwrap()));
    }

    #[test]
    fn vector_length_must_match() {
        let (sys, x) = two_cov();
        let g = GranulationTables::build(&sys);
        assert_eq!(
            mg_prob(&g, &x, &tv("0.5", "0.5", 3), Combinator::TypeI).unwrap_err(),
            ModelError::VectorLength {
                expected: 2,
                found: 3
            }
        );
        assert!(mg_dq(
            &g,
            &x,
            &tv("0.5", "0.5", 2),
            &kv("1", 1),
            Combinator::TypeII,
            ResidualMode::Residual
        )
        .is_err());
    }

    #[test]
    fn parallel_evaluation_matches_sequential() {
        let (sys, x) = two_cov();
        let seq = GranulationTables::build(&sys);
        let par = GranulationTables::build_with(&sys, Execution::Parallel);
        for c in [Combinator::TypeI, Combinator::TypeII] {
            let a = mg_dq(
                &seq,
                &x,
                &tv("0.75", "0.25", 2),
                &kv("1.5", 2),
                c,
                ResidualMode::Residual,
            )
            .unwrap();
            let b = mg_dq(
                &par,
                &x,
                &tv("0.75", "0.25", 2),
                &kv("1.5", 2),
                c,
                ResidualMode::Residual,
            )
            .unwrap();
            assert_eq!(a, b);
        }
    }
}

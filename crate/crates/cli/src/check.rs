//! Differential check: every operator on the main path against the
//! brute-force oracle, with parameters drawn from the exact tie values of
//! each instance as well as from random grid points.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use fuzzycover::decimal::SCALE;
use fuzzycover::{
    measures, Decimal, Degree, Execution, Grade, GranulationTables, NeighborhoodTable, OperatorId,
    ResidualMode, ThresholdPair,
};
use fuzzycover_oracle::{brute_force, Inputs};

use crate::generate::{generate, random_spec};
use crate::ops::{run_multi, run_single, OpParams};
use crate::system_file::Loaded;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub instance: String,
    pub operator: String,
    pub covering: Option<String>,
    pub target: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub instances: usize,
    pub comparisons: usize,
    /// Comparisons where some object sat exactly on a threshold or grade.
    pub boundary_comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn absorb(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.comparisons += other.comparisons;
        self.boundary_comparisons += other.boundary_comparisons;
        self.mismatches.extend(other.mismatches);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// Exact values where predicates flip for one target.
#[derive(Debug, Default)]
struct TieValues {
    probabilities: Vec<Degree>,
    grades: Vec<Decimal>,
}

fn tie_values(tables: &[NeighborhoodTable], target: &fuzzycover::FuzzySet) -> TieValues {
    let mut ties = TieValues::default();
    for t in tables {
        for mode in [ResidualMode::Residual, ResidualMode::ComplementCut] {
            for m in measures(t, target, mode).expect("target shares the universe") {
                ties.grades.push(m.overlap);
                ties.grades.push(m.mass);
                let num = i128::from(m.overlap.micros()) * i128::from(SCALE);
                let den = i128::from(m.sigma.micros());
                if num % den == 0 {
                    let p = u32::try_from(num / den).expect("probability within [0, 1]");
                    ties.probabilities
                        .push(Degree::from_micros(p).expect("in range"));
                }
            }
        }
    }
    ties.probabilities.sort();
    ties.probabilities.dedup();
    ties.grades.sort();
    ties.grades.dedup();
    ties
}

fn any_degree(rng: &mut ChaCha8Rng, ties: &TieValues) -> Degree {
    match rng.random_range(0..6) {
        0 => Degree::ZERO,
        1 => Degree::ONE,
        2 | 3 if !ties.probabilities.is_empty() => {
            *ties.probabilities.choose(rng).expect("non-empty")
        }
        4 => Degree::from_micros(rng.random_range(0..=10) * 100_000).expect("in range"),
        _ => Degree::from_micros(rng.random_range(0..=SCALE as u32)).expect("in range"),
    }
}

fn pair(rng: &mut ChaCha8Rng, ties: &TieValues) -> ThresholdPair {
    let a = any_degree(rng, ties);
    let b = any_degree(rng, ties);
    ThresholdPair::new(a.max(b), a.min(b)).expect("ordered")
}

fn grade(rng: &mut ChaCha8Rng, ties: &TieValues, n: usize) -> Grade {
    let top = (n as i64 + 1) * SCALE;
    let k = match rng.random_range(0..8) {
        0 => Decimal::ZERO,
        1 => Decimal::from_micros(-rng.random_range(1..=SCALE)),
        2..=4 if !ties.grades.is_empty() => *ties.grades.choose(rng).expect("non-empty"),
        5 => Decimal::from_micros(rng.random_range(0..=2 * (n as i64 + 1)) * SCALE / 2),
        _ => Decimal::from_micros(rng.random_range(0..=top)),
    };
    Grade::new(k)
}

/// Whether any object sits exactly on a parameter used by `op`.
fn touches_boundary(
    op: OperatorId,
    tables: &[&NeighborhoodTable],
    target: &fuzzycover::FuzzySet,
    p: &OpParams,
) -> bool {
    tables.iter().enumerate().any(|(i, t)| {
        let ms = measures(t, target, p.mode).expect("target shares the universe");
        ms.iter().any(|m| {
            let prob = op.uses_thresholds() && {
                let th = p.thresholds[i];
                let pr = m.probability();
                pr.cmp_decimal(th.alpha().to_decimal()).is_eq()
                    || pr.cmp_decimal(th.beta().to_decimal()).is_eq()
            };
            let grade = op.uses_grades() && {
                let k = p.grades[i].value();
                m.overlap == k || m.mass == k
            };
            prob || grade
        })
    })
}

/// Compares every operator on one loaded system.
pub fn check_loaded(
    loaded: &Loaded,
    label: &str,
    rng: &mut ChaCha8Rng,
    exec: Execution,
) -> CheckReport {
    let system = &loaded.system;
    let n = system.universe().len();
    let granulation = GranulationTables::build_with(system, exec);
    let tables = granulation.tables();
    let mut report = CheckReport {
        instances: 1,
        ..CheckReport::default()
    };
    for (target_name, target) in &loaded.targets {
        let ties = tie_values(tables, target);
        for op in OperatorId::ALL {
            let mode = if rng.random_bool(0.5) {
                ResidualMode::Residual
            } else {
                ResidualMode::ComplementCut
            };
            let m = system.len();
            let params = OpParams {
                thresholds: (0..m).map(|_| pair(rng, &ties)).collect(),
                grades: (0..m).map(|_| grade(rng, &ties, n)).collect(),
                mode,
            };
            let runs: Vec<(Option<usize>, Vec<&NeighborhoodTable>)> = if op.is_multi() {
                vec![(None, tables.iter().collect())]
            } else {
                (0..m).map(|i| (Some(i), vec![&tables[i]])).collect()
            };
            for (covering, used) in runs {
                let c = covering.unwrap_or(0);
                let local = if op.is_multi() {
                    params.clone()
                } else {
                    OpParams {
                        thresholds: vec![params.thresholds[c]],
                        grades: vec![params.grades[c]],
                        mode,
                    }
                };
                let main = if op.is_multi() {
                    run_multi(op, &granulation, target, &local)
                } else {
                    run_single(op, &tables[c], target, &local)
                };
                let oracle = brute_force(
                    op,
                    &Inputs {
                        system,
                        covering: c,
                        target,
                        thresholds: &local.thresholds,
                        grades: &local.grades,
                        mode,
                    },
                );
                report.comparisons += 1;
                if touches_boundary(op, &used, target, &local) {
                    report.boundary_comparisons += 1;
                }
                let detail = match main {
                    Ok(r) if r == oracle => continue,
                    Ok(r) => format!(
                        "main lower {} upper {}, oracle lower {} upper {} ({:?})",
                        r.lower, r.upper, oracle.lower, oracle.upper, local
                    ),
                    Err(e) => format!("main path failed: {e}"),
                };
                report.mismatches.push(Mismatch {
                    instance: label.to_string(),
                    operator: op.to_string(),
                    covering: covering.map(|i| system.coverings()[i].name().to_string()),
                    target: target_name.clone(),
                    detail,
                });
            }
        }
    }
    report
}

/// Bounds for random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_n: usize,
    pub max_m: usize,
    pub max_members: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_n: 16,
            max_m: 4,
            max_members: 5,
        }
    }
}

fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// `count` random instances; instance `i` depends only on `(seed, i)`.
pub fn check_random(seed: u64, count: usize, bounds: RandomBounds) -> CheckReport {
    let parts: Vec<CheckReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let spec = random_spec(&mut rng, bounds.max_n, bounds.max_m, bounds.max_members);
            let file_seed = rng.random();
            let loaded = generate(&spec, file_seed)
                .and_then(|f| f.load())
                .expect("generated systems are valid");
            check_loaded(
                &loaded,
                &format!("seed {seed} instance {i}"),
                &mut rng,
                Execution::Sequential,
            )
        })
        .collect();
    let mut report = CheckReport::default();
    for p in parts {
        report.absorb(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_random_run_agrees() {
        let r = check_random(3, 60, RandomBounds::default());
        assert_eq!(r.instances, 60);
        assert!(r.comparisons >= 60 * 10);
        assert!(r.boundary_comparisons > 0);
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn report_is_independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| check_random(11, 40, RandomBounds::default()))
        };
        assert_eq!(run(1), run(4));
    }
}

//! Literal per-object evaluation of every fuzzy operator. Sums are exact
//! integers in millionths; probabilities are compared as rationals.
//!
//! Nothing is cached: each predicate call rebuilds the neighborhood it reads.

use num_rational::Ratio;

use fuzzycover::{
    ApproximationResult, Combinator, FuzzyCovering, FuzzySet, Grade, MultiGranulationSystem,
    ObjectSet, OperatorId, ParamEcho, ResidualMode, ThresholdPair,
};

use crate::degree_ratio;

type Q = Ratio<i64>;

const ONE: i64 = 1_000_000;

/// Everything an operator may read. Single-covering operators use
/// `covering` and the first entry of each parameter vector; multi-granulation
/// operators use every covering and the whole vectors.
#[derive(Debug, Clone, Copy)]
pub struct Inputs<'a> {
    pub system: &'a MultiGranulationSystem,
    pub covering: usize,
    pub target: &'a FuzzySet,
    pub thresholds: &'a [ThresholdPair],
    pub grades: &'a [Grade],
    pub mode: ResidualMode,
}

fn micros(set: &FuzzySet, y: usize) -> i64 {
    i64::from(set.get(y).micros())
}

/// Membership of `y` in the gamma-neighborhood of `x`, in millionths.
fn hood(c: &FuzzyCovering, x: usize, y: usize) -> i64 {
    let gamma = i64::from(c.gamma().micros());
    c.members()
        .iter()
        .filter(|(_, m)| micros(m, x) >= gamma)
        .map(|(_, m)| micros(m, y))
        .min()
        .expect("some member reaches gamma at every object")
}

fn sigma(c: &FuzzyCovering, x: usize) -> i64 {
    (0..c.universe().len()).map(|y| hood(c, x, y)).sum()
}

fn overlap(c: &FuzzyCovering, target: &FuzzySet, x: usize) -> i64 {
    (0..c.universe().len())
        .map(|y| hood(c, x, y).min(micros(target, y)))
        .sum()
}

fn mass(c: &FuzzyCovering, target: &FuzzySet, x: usize, mode: ResidualMode) -> i64 {
    (0..c.universe().len())
        .map(|y| {
            let n = hood(c, x, y);
            let t = micros(target, y);
            match mode {
                ResidualMode::Residual => n - n.min(t),
                ResidualMode::ComplementCut => n.min(ONE - t),
            }
        })
        .sum()
}

pub fn probability(c: &FuzzyCovering, target: &FuzzySet, x: usize) -> Q {
    Q::new(overlap(c, target, x), sigma(c, x))
}

fn prob_at(c: &FuzzyCovering, target: &FuzzySet, x: usize, t: fuzzycover::Degree) -> bool {
    probability(c, target, x) >= degree_ratio(t)
}

fn grade_up(c: &FuzzyCovering, target: &FuzzySet, x: usize, k: Grade) -> bool {
    overlap(c, target, x) > k.value().micros()
}

fn grade_low(c: &FuzzyCovering, target: &FuzzySet, x: usize, k: Grade, mode: ResidualMode) -> bool {
    mass(c, target, x, mode) <= k.value().micros()
}

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

/// The single-covering predicate behind `op` on one side.
fn holds(
    family: OperatorId,
    side: Side,
    c: &FuzzyCovering,
    inp: &Inputs<'_>,
    i: usize,
    x: usize,
) -> bool {
    let target = inp.target;
    let prob = || {
        let t = inp.thresholds[i];
        match side {
            Side::Lower => prob_at(c, target, x, t.alpha()),
            Side::Upper => prob_at(c, target, x, t.beta()),
        }
    };
    let grade = || {
        let k = inp.grades[i];
        match side {
            Side::Lower => grade_low(c, target, x, k, inp.mode),
            Side::Upper => grade_up(c, target, x, k),
        }
    };
    match family {
        OperatorId::Prob | OperatorId::MgProb(_) => prob(),
        OperatorId::Grade | OperatorId::MgGrade(_) => grade(),
        OperatorId::DqDisjunctive | OperatorId::MgDq(Combinator::TypeI) => prob() && grade(),
        OperatorId::DqConjunctive | OperatorId::MgDq(Combinator::TypeII) => prob() || grade(),
        OperatorId::Pawlak => panic!("pawlak is a crisp operator"),
    }
}

fn evaluate(op: OperatorId, side: Side, inp: &Inputs<'_>) -> ObjectSet {
    let u = inp.system.universe().clone();
    let coverings = inp.system.coverings();
    ObjectSet::from_predicate(u, |x| match op {
        OperatorId::MgProb(comb) | OperatorId::MgGrade(comb) | OperatorId::MgDq(comb) => {
            let mut each = coverings
                .iter()
                .enumerate()
                .map(|(i, c)| holds(op, side, c, inp, i, x));
            match comb {
                Combinator::TypeI => each.all(|b| b),
                Combinator::TypeII => each.any(|b| b),
            }
        }
        _ => holds(op, side, &coverings[inp.covering], inp, 0, x),
    })
}

/// Recomputes `op` from its definition.
pub fn brute_force(op: OperatorId, inp: &Inputs<'_>) -> ApproximationResult {
    let m = if op.is_multi() { inp.system.len() } else { 1 };
    let params = ParamEcho {
        thresholds: if op.uses_thresholds() {
            inp.thresholds[..m].to_vec()
        } else {
            Vec::new()
        },
        grades: if op.uses_grades() {
            inp.grades[..m].to_vec()
        } else {
            Vec::new()
        },
        mode: op.uses_grades().then_some(inp.mode),
    };
    ApproximationResult {
        operator: op,
        params,
        lower: evaluate(op, Side::Lower, inp),
        upper: evaluate(op, Side::Upper, inp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzycover::Universe;

    const X: [&str; 8] = ["0.6", "0.5", "0.7", "0.8", "0.5", "0.6", "0", "0.2"];

    fn system() -> MultiGranulationSystem {
        let u = Universe::numbered(8).unwrap();
        let cov = |name: &str, gamma: &str, rows: [[&str; 8]; 3]| {
            let ms = rows
                .iter()
                .enumerate()
                .map(|(i, r)| (format!("{name}{i}"), FuzzySet::parse(u.clone(), r).unwrap()))
                .collect();
            FuzzyCovering::new(name, u.clone(), gamma.parse().unwrap(), ms).unwrap()
        };
        MultiGranulationSystem::new(
            u.clone(),
            vec![
                cov(
                    "a",
                    "0.9",
                    [
                        ["1", "0.7", "0", "0.9", "0.9", "0", "0.9", "0.8"],
                        ["0.6", "0.9", "0.4", "0.4", "0.5", "0.7", "0.5", "1"],
                        ["0", "0.5", "0.9", "0", "0.5", "0.9", "0", "0.5"],
                    ],
                ),
                cov(
                    "b",
                    "0.6",
                    [
                        ["0.6", "0.4", "0.2", "0.4", "0.1", "0.6", "0.6", "0.5"],
                        ["0.5", "0.3", "0.6", "0.6", "0.4", "0.5", "0.2", "0.6"],
                        ["0.2", "0.6", "0.2", "0.5", "0.6", "0.3", "0", "0.3"],
                    ],
                ),
            ],
        )
        .unwrap()
    }

    fn run(
        op: &str,
        covering: usize,
        a: &str,
        b: &str,
        k: &str,
        mode: ResidualMode,
    ) -> ApproximationResult {
        let sys = system();
        let x = FuzzySet::parse(sys.universe().clone(), &X).unwrap();
        let t = vec![ThresholdPair::parse(a, b).unwrap(); 2];
        let g = vec![k.parse::<Grade>().unwrap(); 2];
        let inp = Inputs {
            system: &sys,
            covering,
            target: &x,
            thresholds: &t,
            grades: &g,
            mode,
        };
        brute_force(OperatorId::parse(op).unwrap(), &inp)
    }

    #[test]
    fn conditional_probability_is_exact() {
        let sys = system();
        let x = FuzzySet::parse(sys.universe().clone(), &X).unwrap();
        let c = &sys.coverings()[0];
        assert_eq!(probability(c, &x, 2), Q::new(25, 33));
        assert_eq!(probability(c, &x, 1), Q::new(16, 25));
        assert_eq!(probability(c, &x, 0), Q::new(1, 2));
    }

    #[test]
    fn single_covering_operators() {
        let r = run("prob", 0, "0.75", "0.25", "2", ResidualMode::Residual);
        assert_eq!(r.lower.names(), ["x3", "x6"]);
        assert!(r.upper.is_full());
        let r = run("grade", 0, "0.75", "0.25", "2", ResidualMode::Residual);
        assert_eq!(r.lower.names(), ["x2", "x3", "x6", "x8"]);
        assert!(r.upper.is_full());
        let r = run("grade", 1, "0.75", "0.25", "2", ResidualMode::ComplementCut);
        assert!(r.lower.is_empty());
        let r = run("prob", 1, "0.75", "0.25", "2", ResidualMode::Residual);
        assert_eq!(r.lower.names(), ["x2", "x3", "x4", "x5", "x8"]);
    }

    #[test]
    fn fused_operators() {
        let r = run("mg-prob1", 0, "0.75", "0.25", "1", ResidualMode::Residual);
        assert_eq!(r.lower.names(), ["x3"]);
        let r = run(
            "mg-prob-any",
            0,
            "0.75",
            "0.25",
            "1",
            ResidualMode::Residual,
        );
        assert_eq!(r.lower.names(), ["x2", "x3", "x4", "x5", "x6", "x8"]);
        let r = run("mg-dq1", 0, "0.75", "0.25", "1", ResidualMode::Residual);
        assert_eq!(r.lower.names(), ["x3"]);
        assert!(r.upper.is_full());
        let r = run("mg-grade2", 0, "0.75", "0.25", "2", ResidualMode::Residual);
        assert!(r.lower.is_full());
    }

    #[test]
    fn echoes_only_used_parameters() {
        let r = run("prob", 0, "0.75", "0.25", "2", ResidualMode::Residual);
        assert!(r.params.grades.is_empty() && r.params.mode.is_none());
        let r = run(
            "mg-dq2",
            0,
            "0.75",
            "0.25",
            "2",
            ResidualMode::ComplementCut,
        );
        assert_eq!(r.params.thresholds.len(), 2);
        assert_eq!(r.params.mode, Some(ResidualMode::ComplementCut));
    }
}

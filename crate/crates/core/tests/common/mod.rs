#![allow(dead_code)]

use std::sync::Arc;

use fuzzycover::decimal::SCALE;
use fuzzycover::{
    Decimal, Degree, FuzzyCovering, FuzzySet, Grade, GranulationTables, MultiGranulationSystem,
    NeighborhoodTable, ObjectSet, ThresholdPair, Universe,
};
use proptest::prelude::*;

pub const CASES: u32 = 1000;

/// A random system with two targets on a common degree grid.
#[derive(Debug, Clone)]
pub struct Instance {
    pub system: MultiGranulationSystem,
    pub tables: GranulationTables,
    pub x: FuzzySet,
    pub y: FuzzySet,
    pub steps: u32,
}

impl Instance {
    pub fn universe(&self) -> &Arc<Universe> {
        self.system.universe()
    }

    pub fn n(&self) -> usize {
        self.universe().len()
    }

    pub fn m(&self) -> usize {
        self.system.len()
    }

    pub fn table(&self) -> &NeighborhoodTable {
        &self.tables.tables()[0]
    }

    pub fn x_or_y(&self) -> FuzzySet {
        self.x.union(&self.y).unwrap()
    }

    pub fn x_and_y(&self) -> FuzzySet {
        self.x.intersect(&self.y).unwrap()
    }

    pub fn full(&self) -> FuzzySet {
        FuzzySet::full(self.universe().clone())
    }

    pub fn empty(&self) -> FuzzySet {
        FuzzySet::empty(self.universe().clone())
    }
}

fn degree(step: u32, steps: u32) -> Degree {
    Degree::from_micros(step * (SCALE as u32 / steps)).unwrap()
}

fn fuzzy(u: &Arc<Universe>, steps: u32, raw: &[u32]) -> FuzzySet {
    FuzzySet::new(u.clone(), raw.iter().map(|&s| degree(s, steps)).collect()).unwrap()
}

/// (gamma step, member rows, owner of each object)
type RawCovering = (u32, Vec<Vec<u32>>, Vec<usize>);

fn assemble(steps: u32, raw: Vec<RawCovering>, x: Vec<u32>, y: Vec<u32>) -> Instance {
    let n = x.len();
    let u = Universe::numbered(n).unwrap();
    let coverings = raw
        .into_iter()
        .enumerate()
        .map(|(i, (gamma, mut rows, owner))| {
            for (obj, &j) in owner.iter().enumerate() {
                rows[j][obj] = rows[j][obj].max(gamma);
            }
            for row in rows.iter_mut() {
                if row.iter().all(|&s| s == 0) {
                    row[0] = steps;
                }
            }
            let members = rows
                .iter()
                .enumerate()
                .map(|(j, r)| (format!("C{}_{}", i + 1, j + 1), fuzzy(&u, steps, r)))
                .collect();
            FuzzyCovering::new(format!("C{}", i + 1), u.clone(), degree(gamma, steps), members)
                .unwrap()
        })
        .collect();
    let system = MultiGranulationSystem::new(u.clone(), coverings).unwrap();
    Instance {
        tables: GranulationTables::build(&system),
        x: fuzzy(&u, steps, &x),
        y: fuzzy(&u, steps, &y),
        system,
        steps,
    }
}

fn grid() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 4, 5, 10, 20, 100])
}

fn instance_with(
    max_n: usize,
    m: std::ops::RangeInclusive<usize>,
    max_members: usize,
    crisp: bool,
) -> impl Strategy<Value = Instance> {
    let steps = if crisp { Just(1u32).boxed() } else { grid().boxed() };
    (1..=max_n, m, 1..=max_members, steps)
        .prop_flat_map(move |(n, m, k, steps)| {
            let gamma = if crisp { Just(1u32).boxed() } else { (1..=steps).boxed() };
            let covering = (
                gamma,
                prop::collection::vec(prop::collection::vec(0..=steps, n), k),
                prop::collection::vec(0..k, n),
            );
            let target = prop::collection::vec(0..=steps, n);
            (
                Just(steps),
                prop::collection::vec(covering, m),
                target.clone(),
                target,
            )
        })
        .prop_map(|(steps, raw, x, y)| assemble(steps, raw, x, y))
}

/// Up to `max_n` objects, a single covering.
pub fn single(max_n: usize, max_members: usize) -> impl Strategy<Value = Instance> {
    instance_with(max_n, 1..=1, max_members, false)
}

/// Up to `max_m` coverings.
pub fn multi(max_n: usize, max_m: usize, max_members: usize) -> impl Strategy<Value = Instance> {
    instance_with(max_n, 1..=max_m, max_members, false)
}

/// 0/1 degrees, gamma 1.
pub fn crisp(max_n: usize, max_m: usize, max_members: usize) -> impl Strategy<Value = Instance> {
    instance_with(max_n, 1..=max_m, max_members, true)
}

/// Degrees on a 1/20 grid, so ties with instance values are common.
pub fn level() -> impl Strategy<Value = Degree> {
    (0u32..=20).prop_map(|s| degree(s, 20))
}

pub fn pair() -> impl Strategy<Value = ThresholdPair> {
    (level(), level()).prop_map(|(a, b)| ThresholdPair::new(a.max(b), a.min(b)).unwrap())
}

/// Two pairs with `lo <= hi` componentwise.
pub fn ordered_pairs() -> impl Strategy<Value = (ThresholdPair, ThresholdPair)> {
    (0u32..=20, 0u32..=20)
        .prop_flat_map(|(a, b)| {
            let (a1, a2) = (a.min(b), a.max(b));
            (Just(a1), Just(a2), 0..=a2)
        })
        .prop_flat_map(|(a1, a2, b2)| (Just(a1), Just(a2), Just(b2), 0..=a1.min(b2)))
        .prop_map(|(a1, a2, b2, b1)| {
            let d = |s| degree(s, 20);
            (
                ThresholdPair::new(d(a1), d(b1)).unwrap(),
                ThresholdPair::new(d(a2), d(b2)).unwrap(),
            )
        })
}

/// Non-negative grades in steps of 0.05 up to 10.
pub fn grade() -> impl Strategy<Value = Grade> {
    (0i64..=200).prop_map(|s| Grade::new(Decimal::from_micros(s * SCALE / 20)))
}

pub fn ordered_grades() -> impl Strategy<Value = (Grade, Grade)> {
    (grade(), grade()).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

pub fn assert_subset(a: &ObjectSet, b: &ObjectSet, what: &str) {
    assert!(a.is_subset(b), "{what}: {a} is not within {b}");
}

//! Crisp covering baselines: Pawlak-style, probabilistic and grade
//! approximations over 0/1 coverings, with their region formulas.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Ratio;

use fuzzycover::{
    ApproximationResult, Degree, FuzzyCovering, FuzzySet, Grade, ObjectSet, OperatorId, ParamEcho,
    RegionPartition, ThresholdPair, Universe,
};

use crate::{degree_ratio, grade_ratio};

/// A crisp subset of the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispSet {
    universe: Arc<Universe>,
    members: BTreeSet<usize>,
}

impl CrispSet {
    pub fn new(universe: Arc<Universe>, members: impl IntoIterator<Item = usize>) -> Self {
        let members: BTreeSet<usize> = members.into_iter().collect();
        assert!(
            members.iter().all(|&i| i < universe.len()),
            "object outside universe"
        );
        CrispSet { universe, members }
    }

    pub fn from_names<S: AsRef<str>>(universe: Arc<Universe>, names: &[S]) -> Option<Self> {
        let members = names
            .iter()
            .map(|n| universe.index_of(n.as_ref()).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(CrispSet::new(universe, members))
    }

    /// Support of a 0/1 fuzzy set; `None` if any degree is strictly between.
    pub fn from_fuzzy(set: &FuzzySet) -> Option<Self> {
        let mut members = BTreeSet::new();
        for (i, d) in set.degrees().iter().enumerate() {
            if *d == Degree::ONE {
                members.insert(i);
            } else if *d != Degree::ZERO {
                return None;
            }
        }
        Some(CrispSet {
            universe: set.universe().clone(),
            members,
        })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_object_set(&self) -> ObjectSet {
        ObjectSet::from_predicate(self.universe.clone(), |i| self.members.contains(&i))
    }
}

/// A crisp covering: blocks whose union is the universe.
#[derive(Debug, Clone)]
pub struct CrispSpace {
    universe: Arc<Universe>,
    blocks: Vec<CrispSet>,
}

impl CrispSpace {
    /// `None` unless every member is 0/1-valued.
    pub fn from_covering(covering: &FuzzyCovering) -> Option<Self> {
        let blocks = covering
            .members()
            .iter()
            .map(|(_, m)| CrispSet::from_fuzzy(m))
            .collect::<Option<Vec<_>>>()?;
        Some(CrispSpace {
            universe: covering.universe().clone(),
            blocks,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Intersection of every block containing `x`.
    pub fn neighborhood(&self, x: usize) -> BTreeSet<usize> {
        let mut hood: BTreeSet<usize> = (0..self.universe.len()).collect();
        for b in self.blocks.iter().filter(|b| b.contains(x)) {
            hood = hood.intersection(b.members()).copied().collect();
        }
        hood
    }

    fn select(&self, pred: impl Fn(&BTreeSet<usize>) -> bool) -> ObjectSet {
        ObjectSet::from_predicate(self.universe.clone(), |x| pred(&self.neighborhood(x)))
    }
}

fn overlap_count(hood: &BTreeSet<usize>, target: &CrispSet) -> usize {
    hood.intersection(target.members()).count()
}

/// Lower `{x : N(x) ⊆ X}`, upper `{x : N(x) ∩ X ≠ ∅}`.
pub fn crisp_pawlak(space: &CrispSpace, target: &CrispSet) -> ApproximationResult {
    ApproximationResult {
        operator: OperatorId::Pawlak,
        params: ParamEcho::default(),
        lower: space.select(|n| n.is_subset(target.members())),
        upper: space.select(|n| overlap_count(n, target) > 0),
    }
}

/// `|X ∩ N(x)| / |N(x)|`.
pub fn crisp_probability(space: &CrispSpace, target: &CrispSet, x: usize) -> Ratio<i64> {
    let hood = space.neighborhood(x);
    Ratio::new(overlap_count(&hood, target) as i64, hood.len() as i64)
}

/// Probabilistic approximation and its POS / BOU / NEG regions.
pub fn crisp_prob(
    space: &CrispSpace,
    target: &CrispSet,
    t: ThresholdPair,
) -> (ApproximationResult, RegionPartition) {
    let u = space.universe().clone();
    let alpha = degree_ratio(t.alpha());
    let beta = degree_ratio(t.beta());
    let lower =
        ObjectSet::from_predicate(u.clone(), |x| crisp_probability(space, target, x) >= alpha);
    let upper =
        ObjectSet::from_predicate(u.clone(), |x| crisp_probability(space, target, x) >= beta);
    let regions = RegionPartition::Three {
        pos: ObjectSet::from_predicate(u.clone(), |x| crisp_probability(space, target, x) >= alpha),
        bou: ObjectSet::from_predicate(u.clone(), |x| {
            let p = crisp_probability(space, target, x);
            beta <= p && p < alpha
        }),
        neg: ObjectSet::from_predicate(u, |x| crisp_probability(space, target, x) < beta),
    };
    let result = ApproximationResult {
        operator: OperatorId::Prob,
        params: ParamEcho {
            thresholds: vec![t],
            ..ParamEcho::default()
        },
        lower,
        upper,
    };
    (result, regions)
}

/// Grade approximation (`|X ∩ N(x)| > k`, `|X^c ∩ N(x)| <= k`) and its five
/// regions.
pub fn crisp_grade(
    space: &CrispSpace,
    target: &CrispSet,
    k: Grade,
) -> (ApproximationResult, RegionPartition) {
    let u = space.universe().clone();
    let k_r = grade_ratio(k);
    let up =
        |x: usize| Ratio::from_integer(overlap_count(&space.neighborhood(x), target) as i64) > k_r;
    let low = |x: usize| {
        let hood = space.neighborhood(x);
        let outside = hood.iter().filter(|y| !target.contains(**y)).count();
        Ratio::from_integer(outside as i64) <= k_r
    };
    let lower = ObjectSet::from_predicate(u.clone(), low);
    let upper = ObjectSet::from_predicate(u.clone(), up);
    let regions = RegionPartition::Five {
        pos: ObjectSet::from_predicate(u.clone(), |x| up(x) && low(x)),
        neg: ObjectSet::from_predicate(u.clone(), |x| !up(x) && !low(x)),
        lbo: ObjectSet::from_predicate(u.clone(), |x| low(x) && !up(x)),
        ubo: ObjectSet::from_predicate(u.clone(), |x| up(x) && !low(x)),
        bou: ObjectSet::from_predicate(u, |x| up(x) != low(x)),
    };
    let result = ApproximationResult {
        operator: OperatorId::Grade,
        params: ParamEcho {
            grades: vec![k],
            ..ParamEcho::default()
        },
        lower,
        upper,
    };
    (result, regions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzycover::FuzzyCovering;

    fn price_space() -> CrispSpace {
        let u = Universe::numbered(8).unwrap();
        let m = |v: [&str; 8]| FuzzySet::parse(u.clone(), &v).unwrap();
        let cov = FuzzyCovering::new(
            "price",
            u.clone(),
            Degree::ONE,
            vec![
                ("high".into(), m(["1", "1", "0", "1", "1", "0", "1", "1"])),
                ("middle".into(), m(["0", "1", "0", "0", "1", "0", "0", "1"])),
                ("low".into(), m(["0", "0", "1", "0", "0", "1", "0", "0"])),
            ],
        )
        .unwrap();
        CrispSpace::from_covering(&cov).unwrap()
    }

    fn set(s: &CrispSpace, names: &[&str]) -> CrispSet {
        CrispSet::from_names(s.universe().clone(), names).unwrap()
    }

    #[test]
    fn neighborhoods() {
        let s = price_space();
        assert_eq!(s.neighborhood(1), BTreeSet::from([1, 4, 7]));
        assert_eq!(s.neighborhood(2), BTreeSet::from([2, 5]));
        assert_eq!(s.neighborhood(0), BTreeSet::from([0, 1, 3, 4, 6, 7]));
    }

    #[test]
    fn pawlak_on_low_block() {
        let s = price_space();
        let r = crisp_pawlak(&s, &set(&s, &["x3", "x6"]));
        assert_eq!(r.lower.names(), ["x3", "x6"]);
        assert_eq!(r.upper.names(), ["x3", "x6"]);
    }

    #[test]
    fn pawlak_edges() {
        let s = price_space();
        let all = CrispSet::new(s.universe().clone(), 0..8);
        let r = crisp_pawlak(&s, &all);
        assert!(r.lower.is_full() && r.upper.is_full());
        let none = CrispSet::new(s.universe().clone(), []);
        let r = crisp_pawlak(&s, &none);
        assert!(r.lower.is_empty() && r.upper.is_empty());
    }

    #[test]
    fn probabilistic_on_middle_block() {
        let s = price_space();
        let x = set(&s, &["x2", "x5", "x8"]);
        assert_eq!(crisp_probability(&s, &x, 1), Ratio::from_integer(1));
        assert_eq!(crisp_probability(&s, &x, 0), Ratio::new(1, 2));
        let (r, regions) = crisp_prob(&s, &x, ThresholdPair::parse("0.75", "0.25").unwrap());
        assert_eq!(r.lower.names(), ["x2", "x5", "x8"]);
        assert_eq!(r.upper.names(), ["x1", "x2", "x4", "x5", "x7", "x8"]);
        match regions {
            RegionPartition::Three { pos, bou, neg } => {
                assert_eq!(pos, r.lower);
                assert_eq!(bou.names(), ["x1", "x4", "x7"]);
                assert_eq!(neg.names(), ["x3", "x6"]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn probabilistic_endpoints_reduce_to_pawlak() {
        let s = price_space();
        let x = set(&s, &["x1", "x2", "x3", "x6"]);
        let p = crisp_pawlak(&s, &x);
        let (r, _) = crisp_prob(&s, &x, ThresholdPair::parse("1", "0.1").unwrap());
        assert_eq!(r.lower, p.lower);
        assert_eq!(r.upper, p.upper);
    }

    #[test]
    fn grade_edges() {
        let s = price_space();
        let x = set(&s, &["x3", "x6"]);
        let (r, _) = crisp_grade(&s, &x, "0".parse().unwrap());
        assert_eq!(r.upper, crisp_pawlak(&s, &x).upper);
        let (r, _) = crisp_grade(&s, &x, "1".parse().unwrap());
        assert!(r.upper.contains(2) && r.upper.contains(5));
        let (r, _) = crisp_grade(&s, &x, "8".parse().unwrap());
        assert!(r.lower.is_full());
    }

    #[test]
    fn five_regions_partition() {
        let s = price_space();
        let x = set(&s, &["x1", "x2", "x5"]);
        for k in ["0", "1", "2", "3", "6"] {
            let (r, regions) = crisp_grade(&s, &x, k.parse().unwrap());
            assert!(regions.is_partition());
            assert_eq!(regions, RegionPartition::from_grade(&r.lower, &r.upper));
        }
    }

    #[test]
    fn fuzzy_degrees_are_not_crisp() {
        let u = Universe::numbered(2).unwrap();
        assert!(CrispSet::from_fuzzy(&FuzzySet::parse(u, &["1", "0.5"]).unwrap()).is_none());
    }
}

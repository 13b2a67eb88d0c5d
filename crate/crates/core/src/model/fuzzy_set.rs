use std::fmt;
use std::sync::Arc;

use super::{same_universe, Universe};
use crate::decimal::{Decimal, Degree};
use crate::error::{ModelError, Result};

/// Membership vector over a universe.
#[derive(Debug, Clone)]
pub struct FuzzySet {
    universe: Arc<Universe>,
    degrees: Vec<Degree>,
}

impl FuzzySet {
    pub fn new(universe: Arc<Universe>, degrees: Vec<Degree>) -> Result<Self> {
        if degrees.len() != universe.len() {
            return Err(ModelError::LengthMismatch {
                expected: universe.len(),
                found: degrees.len(),
            });
        }
        Ok(FuzzySet { universe, degrees })
    }

    /// Parses one decimal literal per object.
    pub fn parse<S: AsRef<str>>(universe: Arc<Universe>, literals: &[S]) -> Result<Self> {
        let degrees = literals
            .iter()
            .map(|s| s.as_ref().parse::<Degree>())
            .collect::<Result<Vec<_>, _>>()?;
        FuzzySet::new(universe, degrees)
    }

    pub fn constant(universe: Arc<Universe>, value: Degree) -> Self {
        let degrees = vec![value; universe.len()];
        FuzzySet { universe, degrees }
    }

    pub fn empty(universe: Arc<Universe>) -> Self {
        FuzzySet::constant(universe, Degree::ZERO)
    }

    pub fn full(universe: Arc<Universe>) -> Self {
        FuzzySet::constant(universe, Degree::ONE)
    }

    /// Characteristic vector of a crisp set.
    pub fn characteristic(set: &ObjectSet) -> Self {
        let degrees = set
            .flags()
            .iter()
            .map(|&b| if b { Degree::ONE } else { Degree::ZERO })
            .collect();
        FuzzySet {
            universe: set.universe().clone(),
            degrees,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn get(&self, i: usize) -> Degree {
        self.degrees[i]
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.iter().all(|d| d.is_zero())
    }

    pub fn is_crisp(&self) -> bool {
        self.degrees
            .iter()
            .all(|&d| d == Degree::ZERO || d == Degree::ONE)
    }

    /// Support `{x : A(x) = 1}` of a crisp set, `{x : A(x) > 0}` in general.
    pub fn support(&self) -> ObjectSet {
        ObjectSet::from_flags(
            self.universe.clone(),
            self.degrees.iter().map(|d| !d.is_zero()).collect(),
        )
        .expect("length matches universe")
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(Degree, Degree) -> Degree) -> Result<Self> {
        self.check_universe(other)?;
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(FuzzySet {
            universe: self.universe.clone(),
            degrees,
        })
    }

    fn check_universe(&self, other: &FuzzySet) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(ModelError::UniverseMismatch)
        }
    }

    /// Pointwise max.
    pub fn union(&self, other: &FuzzySet) -> Result<Self> {
        self.zip_with(other, Degree::max)
    }

    /// Pointwise min.
    pub fn intersect(&self, other: &FuzzySet) -> Result<Self> {
        self.zip_with(other, Degree::min)
    }

    /// Pointwise `1 - A(x)`.
    pub fn complement(&self) -> Self {
        FuzzySet {
            universe: self.universe.clone(),
            degrees: self.degrees.iter().map(|d| d.complement()).collect(),
        }
    }

    pub fn is_subset(&self, other: &FuzzySet) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.degrees.iter().zip(&other.degrees).all(|(a, b)| a <= b))
    }

    /// Σ-count: the sum of all membership degrees.
    pub fn sigma_count(&self) -> Decimal {
        self.degrees.iter().map(|d| d.to_decimal()).sum()
    }
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.degrees == other.degrees
    }
}

impl Eq for FuzzySet {}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Crisp subset of a universe, stored as one flag per object.
#[derive(Debug, Clone)]
pub struct ObjectSet {
    universe: Arc<Universe>,
    flags: Vec<bool>,
}

impl ObjectSet {
    pub fn from_flags(universe: Arc<Universe>, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != universe.len() {
            return Err(ModelError::LengthMismatch {
                expected: universe.len(),
                found: flags.len(),
            });
        }
        Ok(ObjectSet { universe, flags })
    }

    pub fn from_predicate(universe: Arc<Universe>, pred: impl FnMut(usize) -> bool) -> Self {
        let flags = (0..universe.len()).map(pred).collect();
        ObjectSet { universe, flags }
    }

    pub fn empty(universe: Arc<Universe>) -> Self {
        let flags = vec![false; universe.len()];
        ObjectSet { universe, flags }
    }

    pub fn full(universe: Arc<Universe>) -> Self {
        let flags = vec![true; universe.len()];
        ObjectSet { universe, flags }
    }

    pub fn from_names<S: AsRef<str>>(universe: Arc<Universe>, names: &[S]) -> Result<Self> {
        let mut set = ObjectSet::empty(universe);
        for name in names {
            let i = set.universe.index_of(name.as_ref())?;
            set.flags[i] = true;
        }
        Ok(set)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn contains(&self, i: usize) -> bool {
        self.flags[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.flags[i] = true;
    }

    pub fn len(&self) -> usize {
        self.flags.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.flags.iter().all(|&b| b)
    }

    /// Member indices in universe order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    /// Member names in universe order.
    pub fn names(&self) -> Vec<String> {
        self.indices()
            .map(|i| self.universe.name(i).to_string())
            .collect()
    }

    fn combine(&self, other: &ObjectSet, f: impl Fn(bool, bool) -> bool) -> ObjectSet {
        assert!(
            same_universe(&self.universe, &other.universe),
            "object sets over different universes"
        );
        ObjectSet {
            universe: self.universe.clone(),
            flags: self
                .flags
                .iter()
                .zip(&other.flags)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ObjectSet) -> ObjectSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> ObjectSet {
        ObjectSet {
            universe: self.universe.clone(),
            flags: self.flags.iter().map(|&b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.flags.len() == other.flags.len()
            && self.flags.iter().zip(&other.flags).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &ObjectSet) -> bool {
        self.intersection(other).is_empty()
    }
}

impl PartialEq for ObjectSet {
    fn eq(&self, other: &Self) -> bool {
        self.flags == other.flags && same_universe(&self.universe, &other.universe)
    }
}

impl Eq for ObjectSet {}

impl fmt::Display for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn u8() -> Arc<Universe> {
        Universe::numbered(8).unwrap()
    }

    fn fs(u: &Arc<Universe>, v: &[&str]) -> FuzzySet {
        FuzzySet::parse(u.clone(), v).unwrap()
    }

    #[test]
    fn union_intersection_complement_on_worked_pair() {
        let u = u8();
        let a = fs(&u, &["1", "0.6", "0", "0.8", "1", "0", "0.8", "1"]);
        let b = fs(&u, &["1", "0", "0.6", "1", "0", "0.8", "1", "0.8"]);
        assert_eq!(
            a.intersect(&b).unwrap(),
            fs(&u, &["1", "0", "0", "0.8", "0", "0", "0.8", "0.8"])
        );
        assert_eq!(
            a.union(&b).unwrap(),
            fs(&u, &["1", "0.6", "0.6", "1", "1", "0.8", "1", "1"])
        );
        assert_eq!(
            a.complement(),
            fs(&u, &["0", "0.4", "1", "0.2", "0", "1", "0.2", "0"])
        );
        assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn sigma_count_is_exact() {
        let u = u8();
        let low = fs(&u, &["0", "0.5", "0.9", "0", "0.5", "0.9", "0", "0.5"]);
        assert_eq!(low.sigma_count().to_string(), "3.3");
    }

    #[test]
    fn mismatched_universes_are_rejected() {
        let a = FuzzySet::full(u8());
        let b = FuzzySet::full(Universe::numbered(3).unwrap());
        assert_eq!(a.union(&b), Err(ModelError::UniverseMismatch));
        assert_eq!(a.is_subset(&b), Err(ModelError::UniverseMismatch));
        let renamed =
            FuzzySet::full(Universe::new(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap());
        assert_eq!(a.intersect(&renamed), Err(ModelError::UniverseMismatch));
    }

    #[test]
    fn wrong_length_is_rejected() {
        let err = FuzzySet::parse(u8(), &["1", "0"]).unwrap_err();
        assert_eq!(
            err,
            ModelError::LengthMismatch {
                expected: 8,
                found: 2
            }
        );
    }

    fn arb_pair() -> impl Strategy<Value = (FuzzySet, FuzzySet, FuzzySet)> {
        (1usize..10).prop_flat_map(|n| {
            let v = || proptest::collection::vec(0u32..=1_000_000, n);
            (v(), v(), v()).prop_map(move |(a, b, c)| {
                let u = Universe::numbered(n).unwrap();
                let mk = |xs: Vec<u32>| {
                    FuzzySet::new(
                        u.clone(),
                        xs.into_iter()
                            .map(|m| Degree::from_micros(m).unwrap())
                            .collect(),
                    )
                    .unwrap()
                };
                (mk(a), mk(b), mk(c))
            })
        })
    }

    proptest! {
        #[test]
        fn lattice_laws((a, b, c) in arb_pair()) {
            prop_assert_eq!(a.union(&b)?, b.union(&a)?);
            prop_assert_eq!(a.intersect(&b)?, b.intersect(&a)?);
            prop_assert_eq!(a.union(&b)?.union(&c)?, a.union(&b.union(&c)?)?);
            prop_assert_eq!(a.intersect(&b)?.intersect(&c)?, a.intersect(&b.intersect(&c)?)?);
            prop_assert_eq!(a.union(&a)?, a.clone());
            prop_assert_eq!(a.intersect(&a)?, a.clone());
            prop_assert_eq!(a.union(&b)?.complement(), a.complement().intersect(&b.complement())?);
            prop_assert_eq!(a.intersect(&b)?.complement(), a.complement().union(&b.complement())?);
        }

        #[test]
        fn subset_order((a, b, c) in arb_pair()) {
            prop_assert!(a.is_subset(&a)?);
            prop_assert!(a.is_subset(&a.union(&b)?)?);
            prop_assert!(a.intersect(&b)?.is_subset(&a)?);
            if a.is_subset(&b)? && b.is_subset(&a)? {
                prop_assert_eq!(&a, &b);
            }
            if a.is_subset(&b)? && b.is_subset(&c)? {
                prop_assert!(a.is_subset(&c)?);
            }
        }
    }
}

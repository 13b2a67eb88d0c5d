//! Domain types: universes, fuzzy sets, fuzzy gamma-coverings and the
//! parameters the approximation operators take.

mod covering;
mod fuzzy_set;
mod params;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use covering::{
    build_covering_from_reports, merge_reports, ApproximationSpace, CoveringDraft, ExpertReport,
    FuzzyCovering, MultiGranulationSystem, UncoveredObject, ValidationReport,
};
pub use fuzzy_set::{FuzzySet, ObjectSet};
pub use params::{
    vector_leq, Combinator, Grade, GradeVector, ResidualMode, ThresholdPair, ThresholdVector,
    VectorOrder,
};

use crate::error::{ModelError, Result};

/// Ordered, non-empty list of distinct object names.
///
/// The order is canonical: every membership vector indexes against it and
/// every emitted set is listed in it.
#[derive(Debug, Clone)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ModelError::DuplicateObject(name.clone()));
            }
        }
        Ok(Arc::new(Universe { names, index }))
    }

    /// `x1, ..., xn`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Universe::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownObject(name.to_string()))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Universe {}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

//! Crisp neighborhoods `N(x)` and fuzzy gamma-neighborhoods, plus the
//! precomputed per-object table every operator reads from.

use std::sync::Arc;

use rayon::prelude::*;

use crate::decimal::{Decimal, Degree};
use crate::error::{ModelError, Result};
use crate::model::{ApproximationSpace, FuzzySet, ObjectSet, ResidualMode, Universe};

/// Whether table construction fans out over objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

/// Intersection of all covering members containing `x`, on a 0/1 covering.
pub fn crisp_neighborhood(space: &ApproximationSpace, x: usize) -> Result<ObjectSet> {
    let covering = space.covering();
    if !covering.is_crisp() {
        return Err(ModelError::NotCrisp(covering.name().to_string()));
    }
    let mut hood = ObjectSet::full(space.universe().clone());
    for (_, member) in covering.members() {
        if member.get(x) == Degree::ONE {
            hood = hood.intersection(&member.support());
        }
    }
    Ok(hood)
}

/// Indices of the members whose degree at `x` reaches gamma.
fn qualifying_members(space: &ApproximationSpace, x: usize) -> Vec<usize> {
    let gamma = space.gamma();
    space
        .covering()
        .members()
        .iter()
        .enumerate()
        .filter(|(_, (_, c))| c.get(x) >= gamma)
        .map(|(i, _)| i)
        .collect()
}

fn neighborhood_from(space: &ApproximationSpace, qualifiers: &[usize]) -> FuzzySet {
    let members = space.covering().members();
    let universe = space.universe().clone();
    let degrees = (0..universe.len())
        .map(|y| {
            qualifiers
                .iter()
                .map(|&i| members[i].1.get(y))
                .min()
                .expect("gamma-covering guarantees a qualifying member")
        })
        .collect();
    FuzzySet::new(universe, degrees).expect("length matches universe")
}

/// Pointwise min of every member `C` with `C(x) >= gamma`.
pub fn fuzzy_gamma_neighborhood(space: &ApproximationSpace, x: usize) -> FuzzySet {
    neighborhood_from(space, &qualifying_members(space, x))
}

/// All fuzzy gamma-neighborhoods of one space with their Σ-counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodTable {
    covering: String,
    gamma: Degree,
    universe: Arc<Universe>,
    qualifiers: Vec<Vec<usize>>,
    rows: Vec<FuzzySet>,
    sigma: Vec<Decimal>,
}

impl NeighborhoodTable {
    pub fn build(space: &ApproximationSpace) -> Self {
        Self::build_with(space, Execution::Sequential)
    }

    pub fn build_with(space: &ApproximationSpace, exec: Execution) -> Self {
        let row = |x: usize| {
            let q = qualifying_members(space, x);
            let hood = neighborhood_from(space, &q);
            let sigma = hood.sigma_count();
            (q, hood, sigma)
        };
        let n = space.universe().len();
        let computed: Vec<_> = match exec {
            Execution::Sequential => (0..n).map(row).collect(),
            Execution::Parallel => (0..n).into_par_iter().map(row).collect(),
        };
        let mut qualifiers = Vec::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        let mut sigma = Vec::with_capacity(n);
        for (q, r, s) in computed {
            qualifiers.push(q);
            rows.push(r);
            sigma.push(s);
        }
        NeighborhoodTable {
            covering: space.covering().name().to_string(),
            gamma: space.gamma(),
            universe: space.universe().clone(),
            qualifiers,
            rows,
            sigma,
        }
    }

    pub fn covering_name(&self) -> &str {
        &self.covering
    }

    pub fn gamma(&self) -> Degree {
        self.gamma
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, x: usize) -> &FuzzySet {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[FuzzySet] {
        &self.rows
    }

    /// `Σ_y N_x(y)`; always at least gamma.
    pub fn sigma(&self, x: usize) -> Decimal {
        self.sigma[x]
    }

    /// Member indices intersected to form row `x`.
    pub fn qualifiers(&self, x: usize) -> &[usize] {
        &self.qualifiers[x]
    }

    /// `Σ_y min(X(y), N_x(y))`.
    pub fn overlap(&self, target: &FuzzySet, x: usize) -> Decimal {
        self.rows[x]
            .degrees()
            .iter()
            .zip(target.degrees())
            .map(|(&n, &t)| n.min(t).to_decimal())
            .sum()
    }

    /// Mass compared against `k` by grade lower approximations.
    pub fn residual_mass(&self, target: &FuzzySet, x: usize, mode: ResidualMode) -> Decimal {
        match mode {
            ResidualMode::Residual => self.sigma[x] - self.overlap(target, x),
            ResidualMode::ComplementCut => self.rows[x]
                .degrees()
                .iter()
                .zip(target.degrees())
                .map(|(&n, &t)| n.min(t.complement()).to_decimal())
                .sum(),
        }
    }
}

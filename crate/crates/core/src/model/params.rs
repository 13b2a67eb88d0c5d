use std::fmt;
use std::str::FromStr;

use crate::decimal::{Decimal, Degree};
use crate::error::{ModelError, Result};

/// Probabilistic thresholds with `0 <= beta <= alpha <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThresholdPair {
    alpha: Degree,
    beta: Degree,
}

impl ThresholdPair {
    pub fn new(alpha: Degree, beta: Degree) -> Result<Self> {
        if beta > alpha {
            return Err(ModelError::ThresholdOrder {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(ThresholdPair { alpha, beta })
    }

    pub fn parse(alpha: &str, beta: &str) -> Result<Self> {
        ThresholdPair::new(alpha.parse()?, beta.parse()?)
    }

    pub fn alpha(&self) -> Degree {
        self.alpha
    }

    pub fn beta(&self) -> Degree {
        self.beta
    }

    /// Componentwise order on both thresholds.
    pub fn leq(&self, other: &ThresholdPair) -> bool {
        self.alpha <= other.alpha && self.beta <= other.beta
    }
}

/// Absolute grade threshold `k`.
///
/// Negative grades are representable: the upper predicate `Σ > k` then holds
/// everywhere and the lower predicate `mass <= k` nowhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Grade(Decimal);

impl Grade {
    pub fn new(k: Decimal) -> Self {
        Grade(k)
    }

    pub fn value(&self) -> Decimal {
        self.0
    }
}

impl FromStr for Grade {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Grade(s.parse()?))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How the "missing mass" of a grade lower approximation is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ResidualMode {
    /// `Σ_y [N(y) - min(X(y), N(y))]`.
    #[default]
    Residual,
    /// `Σ_y min(1 - X(y), N(y))`.
    ComplementCut,
}

impl ResidualMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResidualMode::Residual => "residual",
            ResidualMode::ComplementCut => "complement",
        }
    }
}

impl FromStr for ResidualMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "residual" => Ok(ResidualMode::Residual),
            "complement" | "complement-cut" => Ok(ResidualMode::ComplementCut),
            other => Err(format!(
                "unknown residual mode {other:?} (expected residual|complement)"
            )),
        }
    }
}

impl fmt::Display for ResidualMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How per-covering predicates are fused across a multi-granulation system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combinator {
    /// All coverings must agree (conjunction; the "disjunctive" family).
    TypeI,
    /// Some covering must agree (disjunction; the "conjunctive" family).
    TypeII,
}

impl Combinator {
    pub fn alias(&self) -> &'static str {
        match self {
            Combinator::TypeI => "all",
            Combinator::TypeII => "any",
        }
    }
}

/// One threshold pair per covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdVector(pub Vec<ThresholdPair>);

impl ThresholdVector {
    pub fn uniform(pair: ThresholdPair, m: usize) -> Self {
        ThresholdVector(vec![pair; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One grade per covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeVector(pub Vec<Grade>);

impl GradeVector {
    pub fn uniform(k: Grade, m: usize) -> Self {
        GradeVector(vec![k; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Componentwise partial order on parameter vectors.
pub trait VectorOrder {
    fn leq(&self, other: &Self) -> Result<bool>;
}

impl VectorOrder for ThresholdVector {
    fn leq(&self, other: &Self) -> Result<bool> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.leq(b)))
    }
}

impl VectorOrder for GradeVector {
    fn leq(&self, other: &Self) -> Result<bool> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(ModelError::VectorLength { expected, found });
    }
    Ok(())
}

pub fn vector_leq<V: VectorOrder>(a: &V, b: &V) -> Result<bool> {
    a.leq(b)
}

//! Independent reference implementations used to check the main operators.
//!
//! `crisp` holds the classical covering baselines over 0/1 data. `brute`
//! re-derives every fuzzy operator object by object in exact rationals. This
//! crate reads only the model types of `fuzzycover`, never its operators.

pub mod brute;
pub mod crisp;

use num_rational::Ratio;

use fuzzycover::{Degree, Grade};

pub use brute::{brute_force, probability, Inputs};
pub use crisp::{crisp_grade, crisp_pawlak, crisp_prob, crisp_probability, CrispSet, CrispSpace};

const DENOM: i64 = 1_000_000;

pub(crate) fn degree_ratio(d: Degree) -> Ratio<i64> {
    Ratio::new(i64::from(d.micros()), DENOM)
}

pub(crate) fn grade_ratio(k: Grade) -> Ratio<i64> {
    Ratio::new(k.value().micros(), DENOM)
}

//! Approximation operators over fuzzy gamma-covering approximation spaces.
//!
//! The crate computes probabilistic, grade and double-quantitative lower and
//! upper approximations of fuzzy sets, their three- and five-way regions, and
//! the multi-granulation fusions of those operators across several coverings.
//! All membership arithmetic is exact on a 10^-6 decimal grid.

pub mod decimal;
pub mod error;
pub mod model;
pub mod multi;
pub mod neighborhood;
pub mod result;
pub mod single;

pub use decimal::{Decimal, DecimalError, Degree, Proportion};
pub use error::ModelError;
pub use model::{
    build_covering_from_reports, merge_reports, vector_leq, ApproximationSpace, Combinator,
    CoveringDraft, ExpertReport, FuzzyCovering, FuzzySet, Grade, GradeVector,
    MultiGranulationSystem, ObjectSet, ResidualMode, ThresholdPair, ThresholdVector, Universe,
    ValidationReport, VectorOrder,
};
pub use multi::{mg_dq, mg_grade, mg_prob, GranulationTables};
pub use neighborhood::{
    crisp_neighborhood, fuzzy_gamma_neighborhood, Execution, NeighborhoodTable,
};
pub use result::{ApproximationResult, OperatorId, ParamEcho, RegionPartition};
pub use single::{
    cond_prob, dq_conjunctive, dq_disjunctive, grade_approx, grade_regions, measures, prob_approx,
    prob_regions, threshold_form_check, ObjectMeasures, ThresholdFormReport,
};

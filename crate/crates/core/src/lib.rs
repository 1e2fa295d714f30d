//! Analytic Hierarchy Process decision engine.
//!
//! Judgments are exact rationals on the 1..9 intensity scale. Priority
//! derivation, synthesis and consistency are generic over a [`Scalar`], so
//! the same column-normalization code runs in `f32`, `f64` or exact
//! [`BigRational`] arithmetic. The aliases below pin the common choices.

pub mod error;
pub mod hierarchy;
pub mod io;
pub mod judgment;
pub mod matrix;
pub mod priority;
pub mod scalar;
pub mod sensitivity;
pub mod session;
pub mod synthesis;

mod consistency;

pub use consistency::{
    consistency, consistency_of, random_index, ConsistencyReport, Verdict, CR_THRESHOLD,
    RANDOM_INDEX,
};
pub use error::{Error, Result};
pub use hierarchy::{DecisionModel, Element, Hierarchy};
pub use judgment::Judgment;
pub use matrix::{build_matrix, validate_matrix, PairwiseMatrix, Violation};
pub use priority::{
    column_sums, derive_priorities, eigen_priorities, lambda_max, normalize_columns,
    PriorityVector, SquareMatrix,
};
pub use scalar::{RealScalar, Scalar};
pub use sensitivity::{weight_sensitivity, Crossover, SensitivityReport};
pub use session::{ElicitationSession, EvaluationSnapshot, MatrixId, Triad};
pub use synthesis::{rank, synthesize, RankedAlternative, SynthesisResult};

pub use num_rational::BigRational;

/// Double-precision priority vector, the engine's default.
pub type Priorities = PriorityVector<f64>;
/// Priority vector in exact rational arithmetic.
pub type ExactPriorities = PriorityVector<BigRational>;
pub type Report = ConsistencyReport<f64>;
pub type Synthesis = SynthesisResult<f64>;
pub type ExactSynthesis = SynthesisResult<BigRational>;
pub type Snapshot = EvaluationSnapshot<f64>;
pub type Sensitivity = SensitivityReport<f64>;

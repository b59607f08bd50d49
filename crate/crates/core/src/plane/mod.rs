//! The projective plane over an exact field: points, reduced zero-cycles,
//! forms of degree d, and `h⁰`/`h¹` of `O(d) ⊗ I_Z` computed by rank.

mod curve;
mod forms;
mod point;
mod roots;

use thiserror::Error;

use crate::exact::FieldError;

pub use curve::{curve_through, on_curve, points_on_curve, PlaneCurve};
pub use forms::{
    conditions_imposed, euler_char_line_bundle, evaluation_matrix, h0_ideal, h1_ideal,
    has_maximal_rank, monomial_basis, num_forms, Monomial,
};
pub use point::{PlanePoint, ZeroCycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("coordinates from different fields")]
    MixedFields,
    #[error("rational points can only be enumerated over a prime field")]
    NotPrimeField,
    #[error("invalid curve: {0}")]
    BadCurve(String),
}

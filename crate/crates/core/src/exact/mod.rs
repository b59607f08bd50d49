//! Exact scalar arithmetic and dense exact linear algebra.

mod field;
mod matrix;

pub use field::{is_prime, Field, FieldElement, FieldError, DEFAULT_PRIME, MAX_PRIME};
pub use matrix::{normalize_leading, ExactMatrix};

pub(crate) use field::{mod_inv, mod_pow};

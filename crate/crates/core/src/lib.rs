//! Rank-2 vector bundles on the projective plane, stratified by the Segre
//! invariant.
//!
//! Closed forms for stratum dimensions and Brill–Noether numbers sit next to
//! an exact linear-algebra oracle: bundles are Serre extensions of ideal
//! sheaves of points, and every cohomology group is a rank computation over
//! ℚ or 𝔽_p.

pub mod brill_noether;
pub mod exact;
pub mod harness;
pub mod plane;
pub mod serre;
pub mod strata;
pub mod witness;

pub use exact::{ExactMatrix, Field, FieldElement, DEFAULT_PRIME};
pub use plane::{PlaneCurve, PlanePoint, ZeroCycle};
pub use serre::{ExtensionBundle, SegreResult};
pub use strata::{ChernData, Parity, StratumReport};
pub use witness::{RngState, WitnessError, WitnessReport};

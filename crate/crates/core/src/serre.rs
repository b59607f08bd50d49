//! Rank-2 bundles given by a Serre extension
//! `0 → O(a) → E → O(b) ⊗ I_Z → 0` on the plane.
//!
//! The extension class is not represented. Line bundles on the plane have no
//! middle cohomology, so `h⁰(E(m)) = N(a+m) + h⁰(O(b+m) ⊗ I_Z)` for every
//! class, and everything computed here depends only on `(a, b, Z)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{h0_ideal, num_forms, ZeroCycle};
use crate::strata::ChernData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerreError {
    #[error("sub-degree a={a} exceeds quotient degree b={b}")]
    NotNormalized { a: i64, b: i64 },
    #[error("stability criteria disagree for c1={c1}: segre invariant {segre}, h0(E)={h0}")]
    Inconsistent { c1: i64, segre: i64, h0: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BundleRepr")]
pub struct ExtensionBundle {
    a: i64,
    b: i64,
    cycle: ZeroCycle,
}

#[derive(Deserialize)]
struct BundleRepr {
    a: i64,
    b: i64,
    cycle: ZeroCycle,
}

impl TryFrom<BundleRepr> for ExtensionBundle {
    type Error = SerreError;

    fn try_from(r: BundleRepr) -> Result<Self, SerreError> {
        ExtensionBundle::new(r.a, r.b, r.cycle)
    }
}

impl ExtensionBundle {
    pub fn new(a: i64, b: i64, cycle: ZeroCycle) -> Result<Self, SerreError> {
        if a > b {
            return Err(SerreError::NotNormalized { a, b });
        }
        Ok(ExtensionBundle { a, b, cycle })
    }

    pub fn sub_degree(&self) -> i64 {
        self.a
    }

    pub fn quotient_degree(&self) -> i64 {
        self.b
    }

    pub fn cycle(&self) -> &ZeroCycle {
        &self.cycle
    }

    /// `E ⊗ O(m)`, i.e. `(a+m, b+m, Z)`.
    pub fn twist(&self, m: i64) -> ExtensionBundle {
        ExtensionBundle {
            a: self.a + m,
            b: self.b + m,
            cycle: self.cycle.clone(),
        }
    }

    /// The twist with `c1 ∈ {0, -1}` together with the twist amount applied.
    pub fn normalized(&self) -> (ExtensionBundle, i64) {
        let c1 = self.a + self.b;
        let shift = -c1.div_euclid(2);
        (self.twist(shift), shift)
    }
}

pub fn chern(e: &ExtensionBundle) -> ChernData {
    ChernData {
        c1: e.a + e.b,
        c2: e.a * e.b + e.cycle.len() as i64,
    }
}

/// Cayley–Bacharach for a reduced cycle: every degree-`m` form through all
/// points but one passes through the last one as well.
pub fn cayley_bacharach(m: i64, z: &ZeroCycle) -> bool {
    if m < 0 {
        return true;
    }
    let full = h0_ideal(m, z);
    (0..z.len()).all(|i| h0_ideal(m, &z.without(i)) == full)
}

/// Whether some extension of `O(b) ⊗ I_Z` by `O(a)` is locally free, i.e.
/// Cayley–Bacharach for `O(b − a − 3)`.
pub fn is_locally_free(e: &ExtensionBundle) -> bool {
    cayley_bacharach(e.b - e.a - 3, &e.cycle)
}

/// `h⁰(E(m))`.
pub fn h0_twist(e: &ExtensionBundle, m: i64) -> usize {
    num_forms(e.a + m) + h0_ideal(e.b + m, &e.cycle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreResult {
    /// The Segre invariant `c1 − 2·(maximal degree of a line subbundle)`.
    pub s: i64,
    /// Smallest `m` with `h⁰(E(m)) > 0`; the maximal subbundle is `O(−m)`.
    pub witness_m: i64,
    pub stable: bool,
}

pub fn segre_invariant(e: &ExtensionBundle) -> SegreResult {
    // Below m = -b both summands of h0_twist vanish; at m = -a, N(0) = 1.
    let witness_m = (-e.b..=-e.a)
        .find(|&m| h0_twist(e, m) > 0)
        .expect("h0(E(-a)) >= 1");
    let s = e.a + e.b + 2 * witness_m;
    SegreResult {
        s,
        witness_m,
        stable: s > 0,
    }
}

/// Stability via the Segre invariant, cross-checked against `h⁰(E) = 0`
/// when `c1 ∈ {0, -1}`.
pub fn is_stable(e: &ExtensionBundle) -> Result<bool, SerreError> {
    let seg = segre_invariant(e);
    let c1 = e.a + e.b;
    if c1 == 0 || c1 == -1 {
        let h0 = h0_twist(e, 0);
        if (h0 == 0) != seg.stable {
            return Err(SerreError::Inconsistent {
                c1,
                segre: seg.s,
                h0,
            });
        }
    }
    Ok(seg.stable)
}

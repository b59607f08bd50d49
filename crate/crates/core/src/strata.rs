//! Closed forms for the stratification of the stable moduli space by the
//! Segre invariant.
//!
//! Chern data is split by parity: `c1 = 2r` carries invariants `s = 2k`, and
//! `c1 = 2r − 1` (so `r = (c1 + 1)/2`) carries `s = 2k − 1`, with `k ≥ 1`.
//! Twisting by `O(−r)` reduces to `c1 ∈ {0, −1}` with second Chern class
//! `c2 − r²` (even) or `c2 − r² + r` (odd).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("s={s} is not admissible for (c1={c1}, c2={c2}): {reason}")]
    Inadmissible {
        c1: i64,
        c2: i64,
        s: i64,
        reason: String,
    },
    #[error("no admissible stratum for (c1={c1}, c2={c2})")]
    Empty { c1: i64, c2: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernData {
    pub c1: i64,
    pub c2: i64,
}

impl ChernData {
    pub fn new(c1: i64, c2: i64) -> Self {
        ChernData { c1, c2 }
    }

    pub fn parity(&self) -> Parity {
        if self.c1.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `r` with `c1 = 2r` or `c1 = 2r − 1`.
    pub fn r(&self) -> i64 {
        match self.parity() {
            Parity::Even => self.c1 / 2,
            Parity::Odd => (self.c1 + 1) / 2,
        }
    }

    /// Second Chern class after twisting to `c1 ∈ {0, −1}`.
    pub fn normalized_c2(&self) -> i64 {
        let r = self.r();
        match self.parity() {
            Parity::Even => self.c2 - r * r,
            Parity::Odd => self.c2 - r * r + r,
        }
    }

    /// The twist of this data to `c1 ∈ {0, −1}`.
    pub fn normalized(&self) -> ChernData {
        let c1 = match self.parity() {
            Parity::Even => 0,
            Parity::Odd => -1,
        };
        ChernData::new(c1, self.normalized_c2())
    }

    /// Invariant value for a given `k` under this parity.
    pub fn s_for_k(&self, k: i64) -> i64 {
        match self.parity() {
            Parity::Even => 2 * k,
            Parity::Odd => 2 * k - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub s: i64,
    pub k: i64,
    pub dim: i64,
    pub is_open: bool,
    /// Whether `c2` lies strictly above the threshold where the fiber of the
    /// extension family is a single point (the `3c2 + ...` branch).
    pub generic_branch: bool,
}

/// `dim M(2; c1, c2) = 4c2 − c1² − 3`.
pub fn moduli_dim(c: ChernData) -> i64 {
    4 * c.c2 - c.c1 * c.c1 - 3
}

/// The moduli-nonemptiness gate: `c2 ≥ r² + 2` (even) or `c2 ≥ r² − r + 1` (odd).
pub fn passes_gate(c: ChernData) -> bool {
    let r = c.r();
    match c.parity() {
        Parity::Even => c.c2 >= r * r + 2,
        Parity::Odd => c.c2 > r * r - r,
    }
}

/// `k² + k + r² ≤ c2` (even) or `k² + r² − r ≤ c2` (odd), for `k ≥ 1`.
pub fn k_is_admissible(c: ChernData, k: i64) -> bool {
    k >= 1 && k_bound_lhs(c, k) <= c.c2
}

fn k_bound_lhs(c: ChernData, k: i64) -> i64 {
    let r = c.r();
    match c.parity() {
        Parity::Even => k * k + k + r * r,
        Parity::Odd => k * k + r * r - r,
    }
}

/// Converts an invariant to its `k`, or explains why that is impossible.
pub fn k_for_s(c: ChernData, s: i64) -> Result<i64, StrataError> {
    let fail = |reason: String| StrataError::Inadmissible {
        c1: c.c1,
        c2: c.c2,
        s,
        reason,
    };
    let k = match c.parity() {
        Parity::Even if s.rem_euclid(2) == 0 => s / 2,
        Parity::Odd if s.rem_euclid(2) == 1 => (s + 1) / 2,
        Parity::Even => return Err(fail("s must be even when c1 is even".into())),
        Parity::Odd => return Err(fail("s must be odd when c1 is odd".into())),
    };
    if k < 1 {
        return Err(fail(
            "s > 0 fails (strata contain only stable bundles)".into(),
        ));
    }
    Ok(k)
}

/// Checks admissibility of `s`, returning its `k`. The error names the violated inequality.
pub fn check_admissible(c: ChernData, s: i64) -> Result<i64, StrataError> {
    let k = k_for_s(c, s)?;
    if k_is_admissible(c, k) && passes_gate(c) {
        return Ok(k);
    }
    let r = c.r();
    let inequality = match (c.parity(), r * r - r == 0, r == 0) {
        (Parity::Even, _, true) => "k^2+k ≤ c_2",
        (Parity::Even, _, false) => "k^2+k+r^2 ≤ c_2",
        (Parity::Odd, true, _) => "k^2 ≤ c_2",
        (Parity::Odd, false, _) => "k^2+r^2-r ≤ c_2",
    };
    Err(StrataError::Inadmissible {
        c1: c.c1,
        c2: c.c2,
        s,
        reason: format!(
            "{inequality} fails (k={k}, r={r}, c_2={}, lhs={})",
            c.c2,
            k_bound_lhs(c, k)
        ),
    })
}

/// `(dimension, generic_branch)` for an admissible `k`.
fn dim_for_k(c: ChernData, k: i64) -> (i64, bool) {
    let (r, c2) = (c.r(), c.c2);
    match c.parity() {
        Parity::Even => {
            if c2 > r * r + k * k + 3 * k + 1 {
                (3 * c2 - 3 * r * r + k * k + 3 * k - 2, true)
            } else {
                (4 * c2 - 4 * r * r - 3, false)
            }
        }
        Parity::Odd => {
            if c2 > r * r - r + k * k + 2 * k {
                (3 * c2 + 3 * r - 3 * r * r + k * k + 2 * k - 4, true)
            } else {
                (4 * c2 + 4 * r - 4 * r * r - 4, false)
            }
        }
    }
}

/// Dimension of the stratum with invariant `s`.
pub fn stratum_dim(c: ChernData, s: i64) -> Result<i64, StrataError> {
    let k = check_admissible(c, s)?;
    Ok(dim_for_k(c, k).0)
}

/// Every admissible stratum, sorted by `s`. Empty below the nonemptiness gate.
pub fn admissible_invariants(c: ChernData) -> Vec<StratumReport> {
    if !passes_gate(c) {
        return Vec::new();
    }
    let ks: Vec<i64> = (1..).take_while(|&k| k_is_admissible(c, k)).collect();
    let max_k = ks.last().copied();
    ks.into_iter()
        .map(|k| {
            let (dim, generic_branch) = dim_for_k(c, k);
            StratumReport {
                s: c.s_for_k(k),
                k,
                dim,
                is_open: Some(k) == max_k,
                generic_branch,
            }
        })
        .collect()
}

/// The stratum with the largest admissible `k`; its dimension is the moduli dimension.
pub fn open_stratum(c: ChernData) -> Result<StratumReport, StrataError> {
    admissible_invariants(c)
        .pop()
        .ok_or(StrataError::Empty { c1: c.c1, c2: c.c2 })
}

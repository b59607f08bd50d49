//! Brill–Noether numbers and section thresholds for stable rank-2 bundles on
//! the plane.
//!
//! Strata are addressed by `(r, k, parity)`: `c1 = 2r` with invariant `2k`,
//! or `c1 = 2r − 1` with invariant `2k − 1`.
//!
//! For odd `c1` and `k = 1` the dimension lower bound is the single
//! expression `3c2 − 3r² + 3r + 1`, applied without a case split on `c2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strata::{
    admissible_invariants, k_is_admissible, moduli_dim, passes_gate, stratum_dim, ChernData, Parity,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BnError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

fn hyp(msg: impl Into<String>) -> BnError {
    BnError::Hypothesis(msg.into())
}

pub fn chern_for(r: i64, c2: i64, parity: Parity) -> ChernData {
    match parity {
        Parity::Even => ChernData::new(2 * r, c2),
        Parity::Odd => ChernData::new(2 * r - 1, c2),
    }
}

/// `χ(E) = 2 + (c1² + 3c1)/2 − c2` for rank 2 on the plane.
pub fn euler_characteristic(c: ChernData) -> i64 {
    2 + c.c1 * (c.c1 + 3) / 2 - c.c2
}

/// `ρ^t = 4c2 − c1² − 3 − t(t − c1²/2 − 3c1/2 + c2 − 2)`.
pub fn rho(c: ChernData, t: i64) -> i64 {
    assert!(t >= 0, "t must be nonnegative");
    // c1(c1 + 3) is always even.
    moduli_dim(c) - t * (t + c.c2 - 2 - c.c1 * (c.c1 + 3) / 2)
}

/// Sections every bundle of the stratum carries: `0` if `r < k`,
/// otherwise `N(r − k) = (r−k+2)(r−k+1)/2`. Same for both parities.
pub fn stratum_min_sections(r: i64, k: i64, _parity: Parity) -> i64 {
    assert!(k >= 1, "k must be at least 1");
    if r < k {
        0
    } else {
        (r - k + 2) * (r - k + 1) / 2
    }
}

/// The `t` for which the special point configurations certify `W^t ≠ ∅`.
pub fn bn_nonempty_t(r: i64, k: i64, c2: i64, parity: Parity) -> Result<i64, BnError> {
    if k < 1 {
        return Err(hyp("k ≥ 1 fails"));
    }
    let d = r - k;
    match parity {
        Parity::Even => {
            if k >= r {
                return Err(hyp(format!("k<r fails (k={k}, r={r})")));
            }
            if c2 < r * r + 2 {
                return Err(hyp(format!("r^2+2 ≤ c_2 fails (r={r}, c_2={c2})")));
            }
            Ok(d * d + 4 * d + 3)
        }
        Parity::Odd => {
            if c2 < r * r - r + 1 {
                return Err(hyp(format!("r^2-r+1 ≤ c_2 fails (r={r}, c_2={c2})")));
            }
            if k == 1 {
                if r < 1 {
                    return Err(hyp(format!("r ≥ 1 fails (r={r})")));
                }
                Ok(r * r + r - 1)
            } else {
                if k >= r {
                    return Err(hyp(format!("k<r fails (k={k}, r={r})")));
                }
                Ok(d * d + 4 * d + 3)
            }
        }
    }
}

/// Lower bound for `dim W^t` at the `t` of [`bn_nonempty_t`].
pub fn bn_dim_lower_bound(r: i64, k: i64, c2: i64, parity: Parity) -> Result<i64, BnError> {
    if r < 2 {
        return Err(hyp(format!("r ≥ 2 fails (r={r})")));
    }
    if k < 1 || k >= r {
        return Err(hyp(format!("1 ≤ k<r fails (k={k}, r={r})")));
    }
    let (k2, r2) = (k * k, r * r);
    match parity {
        Parity::Even => {
            if 3 * k2 - 4 * k + r2 + 2 >= c2 {
                return Err(hyp(format!("3k^2-4k+r^2+2 < c_2 fails (c_2={c2})")));
            }
            Ok(if c2 > k2 + 3 * k + r2 + 1 {
                2 * c2 + 2 * k2 - 2 * r2 + 4 * k - 2
            } else {
                k2 + 3 * c2 + k - r2 - 3
            })
        }
        Parity::Odd => {
            if 3 * k2 - 7 * k + r2 - r + 5 >= c2 {
                return Err(hyp(format!("3k^2-7k+r^2-r+5 < c_2 fails (c_2={c2})")));
            }
            Ok(if k == 1 {
                3 * c2 - 3 * r2 + 3 * r + 1
            } else if c2 > k2 - 2 * k + r2 - r {
                2 * c2 + 2 * k2 - 2 * r2 + 2 * k + 2 * r - 4
            } else {
                3 * c2 + k2 - 3 * r2 + 3 * r - 4
            })
        }
    }
}

/// For `c1 > 0`: the `c2` with `χ = 0`, and the `k` of the open stratum there.
pub fn weak_bn_check(c1: i64) -> Result<(i64, i64), BnError> {
    if c1 <= 0 {
        return Err(hyp(format!("c_1 > 0 fails (c_1={c1})")));
    }
    let c2 = 2 + (c1 * c1 + 3 * c1) / 2;
    let c = ChernData::new(c1, c2);
    let k = c.r() + 1;
    let open_k = admissible_invariants(c).last().map(|s| s.k);
    assert_eq!(
        open_k,
        Some(k),
        "open stratum at chi = 0 must have k = r + 1"
    );
    Ok((c2, k))
}

/// Smallest `c2₀ ≤ c2_max` such that `ρ^t < dim` of the stratum for every
/// admissible `c2` in `[c2₀, c2_max]`, with `t` = [`stratum_min_sections`].
/// `None` when the inequality fails at `c2_max` or nothing is admissible.
pub fn rho_crossover(r: i64, k: i64, parity: Parity, c2_max: i64) -> Option<i64> {
    let t = stratum_min_sections(r, k, parity);
    let s = chern_for(r, 0, parity).s_for_k(k);
    let holds = |c2: i64| {
        let c = chern_for(r, c2, parity);
        stratum_dim(c, s).ok().map(|dim| rho(c, t) < dim)
    };
    if holds(c2_max) != Some(true) {
        return None;
    }
    let mut c2 = c2_max;
    while let Some(true) = holds(c2 - 1) {
        c2 -= 1;
    }
    Some(c2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnReport {
    pub k: i64,
    pub s: i64,
    pub t: i64,
    pub rho: i64,
    pub lower_bound: Option<i64>,
    /// The stratum is nonempty and the configuration witness applies.
    pub nonempty_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoRow {
    pub t: i64,
    pub rho: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSections {
    pub s: i64,
    pub k: i64,
    pub dim: i64,
    pub min_sections: i64,
    pub rho_at_min_sections: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnSummary {
    pub c1: i64,
    pub c2: i64,
    pub moduli_dim: i64,
    pub euler_characteristic: i64,
    /// `c1 > 0` and `χ = 0`: the open stratum has no sections.
    pub weak_brill_noether: bool,
    pub rho_table: Vec<RhoRow>,
    pub strata: Vec<StratumSections>,
    pub nonempty: Vec<BnReport>,
}

/// Everything the Brill–Noether calculators say about `(c1, c2)`.
pub fn bn_summary(c: ChernData, max_t: i64) -> BnSummary {
    let parity = c.parity();
    let r = c.r();
    let strata = admissible_invariants(c)
        .into_iter()
        .map(|st| {
            let t = stratum_min_sections(r, st.k, parity);
            StratumSections {
                s: st.s,
                k: st.k,
                dim: st.dim,
                min_sections: t,
                rho_at_min_sections: rho(c, t),
            }
        })
        .collect();
    let k_max = r.max(1);
    let nonempty = (1..=k_max)
        .filter_map(|k| {
            let t = bn_nonempty_t(r, k, c.c2, parity).ok()?;
            Some(BnReport {
                k,
                s: c.s_for_k(k),
                t,
                rho: rho(c, t),
                lower_bound: bn_dim_lower_bound(r, k, c.c2, parity).ok(),
                nonempty_certified: passes_gate(c) && k_is_admissible(c, k),
            })
        })
        .collect();
    let chi = euler_characteristic(c);
    BnSummary {
        c1: c.c1,
        c2: c.c2,
        moduli_dim: moduli_dim(c),
        euler_characteristic: chi,
        weak_brill_noether: c.c1 > 0 && chi == 0,
        rho_table: (0..=max_t).map(|t| RhoRow { t, rho: rho(c, t) }).collect(),
        strata,
        nonempty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_examples() {
        for (c1, c2) in [(0, 6), (-1, 4), (4, 6), (3, 11)] {
            let c = ChernData::new(c1, c2);
            assert_eq!(rho(c, 0), moduli_dim(c));
        }
        assert_eq!(rho(ChernData::new(4, 6), 3), 26);
        assert_eq!(rho(ChernData::new(2, 4), 1), 11);
    }

    #[test]
    fn rho_matches_fractional_formula() {
        // Evaluate with halves kept explicit: 2ρ = 2(4c2 − c1² − 3) − t(2t − c1² − 3c1 + 2c2 − 4).
        for c1 in -9i64..=9 {
            for c2 in -2i64..=40 {
                for t in 0..=8 {
                    let twice =
                        2 * (4 * c2 - c1 * c1 - 3) - t * (2 * t - c1 * c1 - 3 * c1 + 2 * c2 - 4);
                    assert_eq!(twice % 2, 0);
                    assert_eq!(rho(ChernData::new(c1, c2), t), twice / 2);
                }
            }
        }
    }

    #[test]
    fn min_sections_examples() {
        assert_eq!(stratum_min_sections(2, 1, Parity::Even), 3);
        for r in 1..6 {
            assert_eq!(stratum_min_sections(r, r, Parity::Odd), 1);
        }
        assert_eq!(stratum_min_sections(1, 2, Parity::Even), 0);
    }

    #[test]
    fn nonempty_t_examples() {
        assert_eq!(bn_nonempty_t(2, 1, 6, Parity::Even), Ok(8));
        assert_eq!(bn_nonempty_t(2, 1, 7, Parity::Odd), Ok(5));
        assert_eq!(bn_nonempty_t(3, 2, 10, Parity::Odd), Ok(8));
        assert!(bn_nonempty_t(1, 1, 6, Parity::Even).is_err());
        assert!(bn_nonempty_t(2, 1, 5, Parity::Even).is_err());
        assert!(bn_nonempty_t(2, 1, 2, Parity::Odd).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(bn_dim_lower_bound(2, 1, 10, Parity::Even), Ok(16));
        // c2 = 8 sits in the k^2 + 3c2 + k − r^2 − 3 branch.
        assert_eq!(bn_dim_lower_bound(2, 1, 8, Parity::Even), Ok(19));
        assert_eq!(bn_dim_lower_bound(2, 1, 7, Parity::Odd), Ok(16));
        assert_eq!(bn_dim_lower_bound(3, 2, 10, Parity::Odd), Ok(16));
        assert!(bn_dim_lower_bound(1, 1, 10, Parity::Even).is_err());
        assert!(bn_dim_lower_bound(2, 1, 5, Parity::Even).is_err());
    }

    #[test]
    fn weak_bn_examples() {
        assert_eq!(weak_bn_check(4), Ok((16, 3)));
        assert_eq!(weak_bn_check(3), Ok((11, 3)));
        assert_eq!(weak_bn_check(2), Ok((7, 2)));
        assert!(weak_bn_check(0).is_err());
        for c1 in 1..=12 {
            let (c2, _) = weak_bn_check(c1).unwrap();
            let c = ChernData::new(c1, c2);
            assert_eq!(euler_characteristic(c), 0);
            let open = crate::strata::open_stratum(c).unwrap();
            assert_eq!(open.dim, moduli_dim(c));
        }
    }

    #[test]
    fn crossover_exists_when_rho_falls_faster() {
        // t ≥ 2 makes ρ^t decrease in c2, so the gap opens eventually.
        assert!(rho_crossover(3, 1, Parity::Even, 200).is_some());
        assert!(rho_crossover(4, 2, Parity::Odd, 200).is_some());
        let c0 = rho_crossover(3, 1, Parity::Even, 200).unwrap();
        for c2 in c0..=200 {
            let c = ChernData::new(6, c2);
            assert!(rho(c, 6) < stratum_dim(c, 2).unwrap());
        }
    }

    #[test]
    fn summary_flags_weak_bn() {
        let s = bn_summary(ChernData::new(4, 16), 5);
        assert!(s.weak_brill_noether);
        assert_eq!(s.rho_table.len(), 6);
        assert!(!bn_summary(ChernData::new(0, 6), 5).weak_brill_noether);
        let s = bn_summary(ChernData::new(4, 6), 5);
        let k1 = s.nonempty.iter().find(|b| b.k == 1).unwrap();
        assert_eq!(k1.t, 8);
        assert!(k1.nonempty_certified);
    }
}

//! Recomputes the closed-form dimension counts from cohomology computed by
//! rank, on random cycles, and compares them exactly.
//!
//! Trial `i` of a suite draws from `RngState::for_trial(seed, i)`, so reports
//! do not depend on how trials are scheduled across threads. A sampled cycle
//! that fails the genericity precondition of a suite is redrawn, and the
//! redraw counts are part of the report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brill_noether::weak_bn_check;
use crate::exact::Field;
use crate::plane::{h0_ideal, h1_ideal, has_maximal_rank, num_forms, ZeroCycle};
use crate::serre::{cayley_bacharach, h0_twist, segre_invariant, ExtensionBundle};
use crate::strata::{check_admissible, stratum_dim, ChernData, Parity};
use crate::witness::{
    below_boundary_probe, random_cycle, FailureCounts, ProbeReport, RngState, StratumShape,
    WitnessError,
};

/// Redraw budget per trial.
pub const RESAMPLE_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialEvidence {
    pub trial: usize,
    pub length: usize,
    pub resamples: usize,
    pub oracle: i64,
    /// Intermediate cohomology values the oracle was assembled from.
    pub detail: BTreeMap<String, i64>,
    /// Present only when the oracle disagrees with the closed form.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cycle: Option<ZeroCycle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, i64>,
    pub seed: u64,
    pub prime: Option<u64>,
    pub trials: usize,
    pub oracle_values: Vec<i64>,
    pub closed_form_value: i64,
    pub agree: bool,
    pub resamples: usize,
    pub evidence: Vec<TrialEvidence>,
    /// Wall time; left out of the JSON so that reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Trial {
    cycle: ZeroCycle,
    resamples: usize,
    oracle: i64,
    detail: BTreeMap<String, i64>,
}

fn detail<const N: usize>(pairs: [(&str, i64); N]) -> BTreeMap<String, i64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

struct Suite<'a> {
    name: &'a str,
    parameters: BTreeMap<String, i64>,
    closed_form: i64,
    field: Field,
    seed: u64,
    trials: usize,
}

impl Suite<'_> {
    fn run<F>(self, trial: F) -> Result<VerificationReport, WitnessError>
    where
        F: Fn(&mut RngState) -> Result<Trial, WitnessError> + Sync,
    {
        let start = Instant::now();
        let outcomes = (0..self.trials)
            .into_par_iter()
            .map(|i| trial(&mut RngState::for_trial(self.seed, i as u64)))
            .collect::<Result<Vec<_>, _>>()?;
        let evidence: Vec<TrialEvidence> = outcomes
            .into_iter()
            .enumerate()
            .map(|(i, t)| TrialEvidence {
                trial: i,
                length: t.cycle.len(),
                resamples: t.resamples,
                oracle: t.oracle,
                detail: t.detail,
                cycle: (t.oracle != self.closed_form).then_some(t.cycle),
            })
            .collect();
        let oracle_values: Vec<i64> = evidence.iter().map(|e| e.oracle).collect();
        Ok(VerificationReport {
            suite: self.name.to_string(),
            parameters: self.parameters,
            seed: self.seed,
            prime: match self.field {
                Field::Prime(p) => Some(p),
                Field::Rational => None,
            },
            trials: self.trials,
            agree: oracle_values.iter().all(|&v| v == self.closed_form),
            closed_form_value: self.closed_form,
            resamples: evidence.iter().map(|e| e.resamples).sum(),
            oracle_values,
            evidence,
            elapsed: start.elapsed(),
        })
    }
}

/// Draws cycles of length `l` until `accept` holds.
fn sample_until(
    l: usize,
    field: Field,
    rng: &mut RngState,
    accept: impl Fn(&ZeroCycle) -> Result<(), &'static str>,
) -> Result<(ZeroCycle, usize), WitnessError> {
    let mut failures = FailureCounts::default();
    for resamples in 0..RESAMPLE_BUDGET {
        let z = random_cycle(l, field, rng)?;
        match accept(&z) {
            Ok(()) => return Ok((z, resamples)),
            Err(check) => *failures.0.entry(check.to_string()).or_default() += 1,
        }
    }
    Err(WitnessError::Exhausted {
        attempts: RESAMPLE_BUDGET,
        failures,
    })
}

/// Normalized data `(c1 ∈ {0, −1}, c2)` and the degrees used by the oracle.
#[derive(Clone, Copy, Debug)]
struct NormalizedStratum {
    shape: StratumShape,
    s: i64,
    /// `Ext¹(O(b) ⊗ I_Z, O(a))` is dual to `H¹(O(b − a − 3) ⊗ I_Z)`.
    ext_degree: i64,
    /// `h⁰(E(k)) = 1 + h⁰(O(b + k) ⊗ I_Z)`.
    fiber_degree: i64,
}

impl NormalizedStratum {
    fn new(c: ChernData, s: i64) -> Result<Self, WitnessError> {
        let k = check_admissible(c, s).map_err(|e| WitnessError::Inadmissible(e.to_string()))?;
        let n = c.normalized();
        let shape = StratumShape::new(n, k);
        Ok(NormalizedStratum {
            shape,
            s: n.s_for_k(k),
            ext_degree: shape.b - shape.a - 3,
            fiber_degree: shape.b + k,
        })
    }

    fn bundle(&self, z: ZeroCycle) -> ExtensionBundle {
        self.shape.bundle(z)
    }

    /// A witness cycle that also imposes independent conditions in the fiber degree.
    fn generic_cycle(
        &self,
        field: Field,
        rng: &mut RngState,
    ) -> Result<(ZeroCycle, usize), WitnessError> {
        sample_until(self.shape.length as usize, field, rng, |z| {
            if h0_ideal(self.shape.gate_degree(), z) != 0 {
                return Err("h0_gate");
            }
            if !cayley_bacharach(self.ext_degree, z) {
                return Err("cayley_bacharach");
            }
            if !has_maximal_rank(self.fiber_degree, z) {
                return Err("maximal_rank");
            }
            Ok(())
        })
    }
}

fn chern_parameters(c: ChernData, s: i64) -> BTreeMap<String, i64> {
    detail([("c1", c.c1), ("c2", c.c2), ("s", s)])
}

/// Stratum dimension as `2l + dim Ext¹ − dim PH⁰(E(k)) − 1` (moduli of `Z`,
/// extension classes, minus the choice of the maximal subbundle's section,
/// minus scalars), against the closed form.
pub fn verify_stratum_dim(
    c: ChernData,
    s: i64,
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<VerificationReport, WitnessError> {
    let ns = NormalizedStratum::new(c, s)?;
    let closed_form = stratum_dim(c, s).expect("admissible");
    let suite = Suite {
        name: "dims",
        parameters: chern_parameters(c, s),
        closed_form,
        field,
        seed,
        trials,
    };
    suite.run(|rng| {
        let (z, resamples) = ns.generic_cycle(field, rng)?;
        let l = z.len() as i64;
        let ext1 = h1_ideal(ns.ext_degree, &z) as i64;
        let e = ns.bundle(z);
        let fiber = h0_twist(&e, ns.shape.k) as i64;
        let segre = segre_invariant(&e).s;
        let oracle = 2 * l + ext1 - (fiber - 1) - 1;
        Ok(Trial {
            detail: detail([("ext1", ext1), ("fiber_h0", fiber), ("segre", segre)]),
            cycle: e.cycle().clone(),
            resamples,
            // A wrong invariant means the cycle does not belong to the stratum at all.
            oracle: if segre == ns.s { oracle } else { -1 },
        })
    })
}

fn normalized_chern(k: i64, c2: i64, parity: Parity) -> (ChernData, i64) {
    match parity {
        Parity::Even => (ChernData::new(0, c2), 2 * k),
        Parity::Odd => (ChernData::new(-1, c2), 2 * k - 1),
    }
}

/// `dim Ext¹ = c2 − k² + 3k − 1` (even), `c2 − k² + 4k − 3` (odd), for normalized `c2`.
pub fn ext1_closed_form(k: i64, c2: i64, parity: Parity) -> i64 {
    match parity {
        Parity::Even => c2 - k * k + 3 * k - 1,
        Parity::Odd => c2 - k * k + 4 * k - 3,
    }
}

/// `h⁰(E(k))` for general `E` in the stratum: `1` above the threshold
/// `k² + 3k + 1` (even) or `k² + 2k` (odd), and `threshold + 1 − c2` below it.
pub fn fiber_closed_form(k: i64, c2: i64, parity: Parity) -> i64 {
    let threshold = match parity {
        Parity::Even => k * k + 3 * k + 1,
        Parity::Odd => k * k + 2 * k,
    };
    if c2 > threshold {
        1
    } else {
        threshold + 1 - c2
    }
}

/// `h¹(O(b − a − 3) ⊗ I_Z)` on witness cycles against [`ext1_closed_form`].
/// `c2` is the normalized second Chern class (`c1 = 0` or `−1` by parity).
pub fn verify_formula_ext1(
    k: i64,
    c2: i64,
    parity: Parity,
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<VerificationReport, WitnessError> {
    let (c, s) = normalized_chern(k, c2, parity);
    let ns = NormalizedStratum::new(c, s)?;
    let suite = Suite {
        name: "ext1",
        parameters: chern_parameters(c, s),
        closed_form: ext1_closed_form(k, c2, parity),
        field,
        seed,
        trials,
    };
    suite.run(|rng| {
        let (z, resamples) = ns.generic_cycle(field, rng)?;
        let oracle = h1_ideal(ns.ext_degree, &z) as i64;
        Ok(Trial {
            detail: detail([
                ("degree", ns.ext_degree),
                ("h0", h0_ideal(ns.ext_degree, &z) as i64),
            ]),
            cycle: z,
            resamples,
            oracle,
        })
    })
}

/// `h⁰(E(k))` on witness bundles against [`fiber_closed_form`].
pub fn verify_formula_fiber(
    k: i64,
    c2: i64,
    parity: Parity,
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<VerificationReport, WitnessError> {
    let (c, s) = normalized_chern(k, c2, parity);
    let ns = NormalizedStratum::new(c, s)?;
    let suite = Suite {
        name: "fiber",
        parameters: chern_parameters(c, s),
        closed_form: fiber_closed_form(k, c2, parity),
        field,
        seed,
        trials,
    };
    suite.run(|rng| {
        let (z, resamples) = ns.generic_cycle(field, rng)?;
        let e = ns.bundle(z);
        let oracle = h0_twist(&e, k) as i64;
        Ok(Trial {
            detail: detail([("h0_ideal", h0_ideal(ns.fiber_degree, e.cycle()) as i64)]),
            cycle: e.cycle().clone(),
            resamples,
            oracle,
        })
    })
}

/// If `Z` lies on no curve of degree `d`, then `Z` minus any point lies on no
/// curve of degree `d − 2`. Each trial picks `d ∈ [2, 7]` and `l(Z) ∈ [N(d), N(d)+2]`;
/// the oracle is the largest `h⁰(O(d−2) ⊗ I_{Z∖p})` over all deletions.
pub fn verify_lemma_tool(
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<VerificationReport, WitnessError> {
    let suite = Suite {
        name: "lemma-tool",
        parameters: BTreeMap::new(),
        closed_form: 0,
        field,
        seed,
        trials,
    };
    suite.run(|rng| {
        let d = 2 + rng.below(6) as i64;
        let l = num_forms(d) + rng.below(3) as usize;
        let (z, resamples) = sample_until(l, field, rng, |z| {
            if h0_ideal(d, z) == 0 {
                Ok(())
            } else {
                Err("h0_ideal")
            }
        })?;
        let oracle = (0..z.len())
            .map(|i| h0_ideal(d - 2, &z.without(i)) as i64)
            .max()
            .unwrap_or(0);
        Ok(Trial {
            detail: detail([("d", d), ("deletions", z.len() as i64)]),
            cycle: z,
            resamples,
            oracle,
        })
    })
}

/// At the `χ = 0` Chern class for `c1 > 0`, open-stratum witnesses have no
/// sections. Their cycle length equals `N(q)` where `q` is the quotient
/// degree of the untwisted extension, so `h⁰(E) = 0` is the nonsingularity
/// of a square evaluation matrix. Cycles with sections are redrawn; a
/// length mismatch marks the report as disagreeing.
pub fn verify_weak_bn(
    c1: i64,
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<VerificationReport, WitnessError> {
    let (c2, k) = weak_bn_check(c1).map_err(|e| WitnessError::Inadmissible(e.to_string()))?;
    let c = ChernData::new(c1, c2);
    let s = c.s_for_k(k);
    let shape = StratumShape::new(c, k);
    let ns = NormalizedStratum::new(c, s)?;
    let square = num_forms(shape.b) as i64;
    let mut parameters = chern_parameters(c, s);
    parameters.insert("length".into(), shape.length);
    parameters.insert("forms".into(), square);
    let suite = Suite {
        name: "weak-bn",
        parameters,
        closed_form: 0,
        field,
        seed,
        trials,
    };
    let mut report = suite.run(|rng| {
        let (z, resamples) = sample_until(shape.length as usize, field, rng, |z| {
            if h0_ideal(ns.shape.gate_degree(), z) != 0 {
                return Err("h0_gate");
            }
            if !cayley_bacharach(ns.ext_degree, z) {
                return Err("cayley_bacharach");
            }
            if h0_ideal(shape.b, z) != 0 {
                return Err("h0_nonzero");
            }
            Ok(())
        })?;
        let e = shape.bundle(z);
        Ok(Trial {
            oracle: h0_twist(&e, 0) as i64,
            detail: detail([("segre", segre_invariant(&e).s)]),
            cycle: e.cycle().clone(),
            resamples,
        })
    })?;
    report.agree &= shape.length == square;
    Ok(report)
}

/// Runs [`below_boundary_probe`] on a fixed stream of `seed`.
pub fn verify_boundary(
    c: ChernData,
    s: i64,
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<ProbeReport, WitnessError> {
    below_boundary_probe(c, s, trials, field, &mut RngState::new(seed))
}

/// One grid point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub c1: i64,
    pub c2: i64,
    pub k: i64,
}

/// Every `(c1, c2, k)` with `c1 ∈ {0, −1}`, `k ∈ ks` and admissible `c2 ≤ c2_max`.
pub fn admissible_grid(ks: std::ops::RangeInclusive<i64>, c2_max: i64) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for c1 in [0, -1] {
        for k in ks.clone() {
            for c2 in 0..=c2_max {
                let c = ChernData::new(c1, c2);
                if check_admissible(c, c.s_for_k(k)).is_ok() {
                    out.push(GridPoint { c1, c2, k });
                }
            }
        }
    }
    out
}

/// Which closed form a sweep checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepSuite {
    Dims,
    Ext1,
    Fiber,
}

/// Runs `suite` on every grid point. Point `i` uses master seed `seed + i`.
pub fn sweep(
    suite: SweepSuite,
    grid: &[GridPoint],
    trials: usize,
    field: Field,
    seed: u64,
) -> Result<Vec<VerificationReport>, WitnessError> {
    grid.par_iter()
        .enumerate()
        .map(|(i, g)| {
            let seed = seed.wrapping_add(i as u64);
            let c = ChernData::new(g.c1, g.c2);
            let parity = c.parity();
            match suite {
                SweepSuite::Dims => verify_stratum_dim(c, c.s_for_k(g.k), trials, field, seed),
                SweepSuite::Ext1 => verify_formula_ext1(g.k, g.c2, parity, trials, field, seed),
                SweepSuite::Fiber => verify_formula_fiber(g.k, g.c2, parity, trials, field, seed),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_PRIME;

    fn fp() -> Field {
        Field::prime(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn stratum_dim_examples() {
        for (c, s, expect) in [
            (ChernData::new(0, 6), 2, 20),
            (ChernData::new(0, 6), 4, 21),
            (ChernData::new(-1, 4), 3, 12),
        ] {
            let rep = verify_stratum_dim(c, s, 5, fp(), 1).unwrap();
            assert_eq!(rep.closed_form_value, expect);
            assert!(rep.agree, "{rep:?}");
            assert_eq!(rep.oracle_values, vec![expect; 5]);
        }
        // Twisting leaves the oracle unchanged.
        let rep = verify_stratum_dim(ChernData::new(2, 7), 2, 3, fp(), 1).unwrap();
        assert!(rep.agree);
        assert!(verify_stratum_dim(ChernData::new(0, 1), 2, 3, fp(), 1).is_err());
    }

    #[test]
    fn stratum_dim_pieces_for_six() {
        let rep = verify_stratum_dim(ChernData::new(0, 6), 4, 2, fp(), 3).unwrap();
        let ev = &rep.evidence[0];
        assert_eq!(ev.length, 10);
        assert_eq!(ev.detail["ext1"], 7);
        assert_eq!(ev.detail["fiber_h0"], 6);
        assert!(ev.cycle.is_none());
    }

    #[test]
    fn ext1_and_fiber_examples() {
        for (k, c2, expect) in [(1, 2, 3), (2, 6, 7), (1, 5, 6)] {
            let rep = verify_formula_ext1(k, c2, Parity::Even, 3, fp(), 5).unwrap();
            assert_eq!((rep.closed_form_value, rep.agree), (expect, true));
        }
        for (k, c2, expect) in [(1, 6, 1), (1, 4, 2), (2, 11, 1)] {
            let rep = verify_formula_fiber(k, c2, Parity::Even, 3, fp(), 5).unwrap();
            assert_eq!((rep.closed_form_value, rep.agree), (expect, true));
        }
        let rep = verify_formula_fiber(2, 5, Parity::Odd, 3, fp(), 5).unwrap();
        assert_eq!((rep.closed_form_value, rep.agree), (4, true));
    }

    #[test]
    fn lemma_tool_and_weak_bn() {
        let rep = verify_lemma_tool(30, fp(), 1).unwrap();
        assert!(rep.agree);
        for (c1, c2, length) in [(2, 7, 10), (4, 16, 21), (3, 11, 15)] {
            let rep = verify_weak_bn(c1, 2, fp(), 1).unwrap();
            assert_eq!(rep.parameters["c2"], c2);
            assert_eq!(rep.parameters["length"], length);
            assert!(rep.agree, "{rep:?}");
        }
        assert!(verify_weak_bn(0, 1, fp(), 1).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_stratum_dim(ChernData::new(-1, 9), 3, 4, fp(), 42).unwrap();
        let b = verify_stratum_dim(ChernData::new(-1, 9), 3, 4, fp(), 42).unwrap();
        let json = |r: &VerificationReport| serde_json::to_string(r).unwrap();
        assert_eq!(json(&a), json(&b));
        let grid = admissible_grid(1..=2, 8);
        assert!(grid.contains(&GridPoint { c1: 0, c2: 6, k: 2 }));
        assert!(!grid.contains(&GridPoint { c1: 0, c2: 5, k: 2 }));
        assert!(grid.contains(&GridPoint {
            c1: -1,
            c2: 4,
            k: 2
        }));
        let sweep_a = sweep(SweepSuite::Fiber, &grid, 2, fp(), 9).unwrap();
        let sweep_b = sweep(SweepSuite::Fiber, &grid, 2, fp(), 9).unwrap();
        assert_eq!(
            sweep_a.iter().map(json).collect::<Vec<_>>(),
            sweep_b.iter().map(json).collect::<Vec<_>>()
        );
        assert!(sweep_a.iter().all(|r| r.agree));
    }
}

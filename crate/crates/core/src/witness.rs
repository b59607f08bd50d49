//! Randomized constructions of bundles with prescribed Segre invariant, and
//! of special point configurations carrying many sections. Every returned
//! bundle has been checked directly with the `serre` module.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brill_noether::{bn_nonempty_t, chern_for};
use crate::exact::{Field, FieldError};
use crate::plane::{h0_ideal, num_forms, points_on_curve, PlaneCurve, PlanePoint, ZeroCycle};
use crate::serre::{
    cayley_bacharach, h0_twist, is_locally_free, is_stable, segre_invariant, ExtensionBundle,
};
use crate::strata::{check_admissible, k_for_s, ChernData, Parity};

pub const DEFAULT_RETRIES: usize = 64;

/// Coordinates of random rational points are drawn from `[-B, B]`.
pub const RATIONAL_BOUND: i64 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("{0}")]
    Inadmissible(String),
    #[error("no witness after {attempts} attempts; failures: {failures}")]
    Exhausted {
        attempts: usize,
        failures: FailureCounts,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Number of rejected attempts per failing check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCounts(pub BTreeMap<String, usize>);

impl FailureCounts {
    fn bump(&mut self, check: &str) {
        *self.0.entry(check.to_string()).or_default() += 1;
    }
}

impl fmt::Display for FailureCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// A reproducible random stream.
///
/// The stream is ChaCha8 keyed with `seed` (through `SeedableRng::seed_from_u64`)
/// and the ChaCha stream id set to `stream`. Trial `i` of a batch uses
/// `RngState::for_trial(seed, i)`, so trials never share words and can run
/// in any order. `counter` is the current position in 32-bit words.
#[derive(Clone, Debug)]
pub struct RngState {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(trial);
        RngState {
            seed,
            stream: trial,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn counter(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.inner.random_range(0..n)
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// `l` distinct uniformly random points.
///
/// Over 𝔽_p the points are a uniform `l`-subset of P²(𝔽_p). Over ℚ each
/// point has integer coordinates uniform in `[-B, B]³ ∖ {0}`; projective
/// duplicates are redrawn, giving up after `100·l + 100` draws.
pub fn random_cycle(l: usize, field: Field, rng: &mut RngState) -> Result<ZeroCycle, WitnessError> {
    match field {
        Field::Prime(p) => {
            let n = p * p + p + 1;
            if l as u64 > n {
                return Err(WitnessError::Inadmissible(format!(
                    "cycle length {l} exceeds |P^2(F_{p})| = {n}"
                )));
            }
            let points = index::sample(rng, n as usize, l)
                .into_iter()
                .map(|i| PlanePoint::from_index(p, i as u64))
                .collect();
            Ok(ZeroCycle::new(field, points).expect("distinct indices give distinct points"))
        }
        Field::Rational => {
            let budget = 100 * l + 100;
            let mut z = ZeroCycle::empty(field);
            let mut draws = 0;
            while z.len() < l {
                if draws == budget {
                    let mut failures = FailureCounts::default();
                    failures.0.insert("duplicate_point".into(), draws - z.len());
                    return Err(WitnessError::Exhausted {
                        attempts: draws,
                        failures,
                    });
                }
                draws += 1;
                let c: [i64; 3] =
                    std::array::from_fn(|_| rng.random_range(-RATIONAL_BOUND..=RATIONAL_BOUND));
                if c == [0, 0, 0] {
                    continue;
                }
                let pt = PlanePoint::from_i64(field, c).expect("nonzero point");
                if !z.contains(&pt) {
                    z.push(pt).expect("checked above");
                }
            }
            Ok(z)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Stratum,
    Bn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckValue {
    Bool(bool),
    Int(i64),
}

/// A verified bundle together with the values of the checks run on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    #[serde(flatten)]
    pub bundle: ExtensionBundle,
    pub chern: ChernData,
    pub s: i64,
    /// Section threshold certified by a Brill–Noether witness.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<i64>,
    /// The curve carrying all points but one (Brill–Noether witnesses only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve: Option<String>,
    pub checks: BTreeMap<String, CheckValue>,
    pub retries_used: usize,
    pub seed: u64,
    pub stream: u64,
    pub prime: Option<u64>,
}

impl WitnessReport {
    /// Recomputes every check from the bundle alone.
    pub fn recheck(&self) -> bool {
        bundle_checks(&self.bundle) == self.checks
    }

    pub fn check_int(&self, name: &str) -> Option<i64> {
        match self.checks.get(name) {
            Some(CheckValue::Int(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn check_bool(&self, name: &str) -> Option<bool> {
        match self.checks.get(name) {
            Some(CheckValue::Bool(v)) => Some(*v),
            _ => None,
        }
    }
}

/// `cayley_bacharach`, `stable`, `segre_value` and `h0_value = h⁰(E)`.
pub fn bundle_checks(e: &ExtensionBundle) -> BTreeMap<String, CheckValue> {
    // Stability is decided on the normalized twist, where it is cross-checked
    // against vanishing of sections.
    let stable = matches!(is_stable(&e.normalized().0), Ok(true));
    BTreeMap::from([
        (
            "cayley_bacharach".to_string(),
            CheckValue::Bool(is_locally_free(e)),
        ),
        ("stable".to_string(), CheckValue::Bool(stable)),
        (
            "segre_value".to_string(),
            CheckValue::Int(segre_invariant(e).s),
        ),
        (
            "h0_value".to_string(),
            CheckValue::Int(h0_twist(e, 0) as i64),
        ),
    ])
}

/// Degrees and cycle length of the construction for the stratum `k` of `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumShape {
    pub k: i64,
    /// Twist taking the normalized bundle back to `c`.
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub length: i64,
}

impl StratumShape {
    /// `(a, b) = (r−k, r+k)` with `l = c2' + k²` for even `c1`, and
    /// `(r−k, r+k−1)` with `l = c2' + k² − k` for odd `c1`.
    pub fn new(c: ChernData, k: i64) -> Self {
        let r = c.r();
        let c2n = c.normalized_c2();
        let (b, length) = match c.parity() {
            Parity::Even => (r + k, c2n + k * k),
            Parity::Odd => (r + k - 1, c2n + k * k - k),
        };
        StratumShape {
            k,
            r,
            a: r - k,
            b,
            length,
        }
    }

    /// Forms of this degree vanishing on `Z` would give a subbundle beating `O(-k)`.
    pub fn gate_degree(&self) -> i64 {
        self.b - self.r + self.k - 1
    }

    pub fn bundle(&self, z: ZeroCycle) -> ExtensionBundle {
        ExtensionBundle::new(self.a, self.b, z).expect("a ≤ b")
    }
}

fn inadmissible(e: impl ToString) -> WitnessError {
    WitnessError::Inadmissible(e.to_string())
}

/// A bundle in the stratum with invariant `s`, built from a random cycle
/// that lies on no curve of the gate degree and satisfies Cayley–Bacharach.
pub fn stratum_witness(
    c: ChernData,
    s: i64,
    field: Field,
    rng: &mut RngState,
    max_retries: usize,
) -> Result<WitnessReport, WitnessError> {
    let k = check_admissible(c, s).map_err(inadmissible)?;
    let shape = StratumShape::new(c, k);
    let mut failures = FailureCounts::default();
    for attempt in 0..=max_retries {
        let z = random_cycle(shape.length as usize, field, rng)?;
        if h0_ideal(shape.gate_degree(), &z) != 0 {
            failures.bump("h0_gate");
            continue;
        }
        if !cayley_bacharach(shape.b - shape.a - 3, &z) {
            failures.bump("cayley_bacharach");
            continue;
        }
        let bundle = shape.bundle(z);
        let checks = bundle_checks(&bundle);
        if checks["segre_value"] != CheckValue::Int(s) {
            failures.bump("segre_value");
            continue;
        }
        if checks["stable"] != CheckValue::Bool(true) {
            failures.bump("stable");
            continue;
        }
        return Ok(WitnessReport {
            kind: WitnessKind::Stratum,
            bundle,
            chern: c,
            s,
            t: None,
            curve: None,
            checks,
            retries_used: attempt,
            seed: rng.seed(),
            stream: rng.stream(),
            prime: field_prime(field),
        });
    }
    Err(WitnessError::Exhausted {
        attempts: max_retries + 1,
        failures,
    })
}

fn field_prime(field: Field) -> Option<u64> {
    match field {
        Field::Prime(p) => Some(p),
        Field::Rational => None,
    }
}

/// Outcome of sampling bundles whose invariant `s` is ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub chern: ChernData,
    pub s: i64,
    pub k: i64,
    pub length: i64,
    pub trials: usize,
    pub max_segre: Option<i64>,
    /// Trials per observed invariant.
    pub segre_counts: BTreeMap<i64, usize>,
    /// A sampled bundle reaching `s`; sampling stops at the first one.
    pub counterexample: Option<ExtensionBundle>,
    pub seed: u64,
    pub stream: u64,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Builds the would-be bundles `(r−k, r+k(−1), Z)` for an inadmissible `s`
/// and records their invariants, which must all stay below `s`.
pub fn below_boundary_probe(
    c: ChernData,
    s: i64,
    trials: usize,
    field: Field,
    rng: &mut RngState,
) -> Result<ProbeReport, WitnessError> {
    let k = k_for_s(c, s).map_err(inadmissible)?;
    if check_admissible(c, s).is_ok() {
        return Err(WitnessError::Inadmissible(format!(
            "s={s} is admissible for (c1={}, c2={}); nothing to probe",
            c.c1, c.c2
        )));
    }
    let shape = StratumShape::new(c, k);
    if shape.length < 0 {
        return Err(WitnessError::Inadmissible(format!(
            "cycle length {} is negative",
            shape.length
        )));
    }
    let mut report = ProbeReport {
        chern: c,
        s,
        k,
        length: shape.length,
        trials: 0,
        max_segre: None,
        segre_counts: BTreeMap::new(),
        counterexample: None,
        seed: rng.seed(),
        stream: rng.stream(),
    };
    for _ in 0..trials {
        let bundle = shape.bundle(random_cycle(shape.length as usize, field, rng)?);
        let seg = segre_invariant(&bundle).s;
        report.trials += 1;
        *report.segre_counts.entry(seg).or_default() += 1;
        report.max_segre = Some(report.max_segre.map_or(seg, |m| m.max(seg)));
        if seg >= s {
            report.counterexample = Some(bundle);
            break;
        }
    }
    Ok(report)
}

/// Degree of the curve carrying `Z ∖ {p*}` in the Brill–Noether construction.
pub fn bn_curve_degree(k: i64, parity: Parity) -> i64 {
    match parity {
        Parity::Even => 2 * k - 1,
        Parity::Odd if k == 1 => 1,
        Parity::Odd => 2 * k - 2,
    }
}

/// A stable bundle with `c1 = 2r` (or `2r − 1`), invariant `2k` (or `2k − 1`)
/// and at least `bn_nonempty_t` sections: all points of `Z` but one lie on a
/// random curve `C`, the last one off `C`. Only prime fields are supported.
pub fn bn_witness(
    r: i64,
    k: i64,
    c2: i64,
    parity: Parity,
    prime: u64,
    rng: &mut RngState,
    max_retries: usize,
) -> Result<WitnessReport, WitnessError> {
    let t = bn_nonempty_t(r, k, c2, parity).map_err(inadmissible)?;
    let c = chern_for(r, c2, parity);
    let s = c.s_for_k(k);
    check_admissible(c, s).map_err(inadmissible)?;
    let field = Field::prime(prime)?;
    let shape = StratumShape::new(c, k);
    let degree = bn_curve_degree(k, parity) as u32;
    let on_curve = shape.length as usize - 1;
    let n_points = prime * prime + prime + 1;

    let mut failures = FailureCounts::default();
    for attempt in 0..=max_retries {
        let coeffs: Vec<u64> = (0..num_forms(degree as i64))
            .map(|_| rng.below(prime))
            .collect();
        if coeffs.iter().all(|&a| a == 0) {
            failures.bump("zero_form");
            continue;
        }
        let curve = PlaneCurve::new(
            field,
            degree,
            coeffs.iter().map(|&a| field.from_u64(a)).collect(),
        )
        .expect("nonzero form of positive degree");
        let rational = points_on_curve(&curve).expect("prime field");
        if rational.len() < on_curve {
            failures.bump("few_points");
            continue;
        }
        let mut points: Vec<PlanePoint> = index::sample(rng, rational.len(), on_curve)
            .into_iter()
            .map(|i| rational[i].clone())
            .collect();
        // Off-curve points have density about 1 - 1/p; 64 draws never run out in practice.
        let Some(extra) = (0..64)
            .map(|_| PlanePoint::from_index(prime, rng.below(n_points)))
            .find(|pt| !curve.contains(pt))
        else {
            failures.bump("off_curve_point");
            continue;
        };
        points.push(extra);
        let z = ZeroCycle::new(field, points).expect("off-curve point is new");
        let bundle = shape.bundle(z);
        let checks = bundle_checks(&bundle);
        let failed = if checks["cayley_bacharach"] != CheckValue::Bool(true) {
            Some("cayley_bacharach")
        } else if checks["stable"] != CheckValue::Bool(true) {
            Some("stable")
        } else if checks["segre_value"] != CheckValue::Int(s) {
            Some("segre_value")
        } else if !matches!(checks["h0_value"], CheckValue::Int(h) if h >= t) {
            Some("h0_value")
        } else {
            None
        };
        if let Some(check) = failed {
            failures.bump(check);
            continue;
        }
        return Ok(WitnessReport {
            kind: WitnessKind::Bn,
            bundle,
            chern: c,
            s,
            t: Some(t),
            curve: Some(curve.to_form_string()),
            checks,
            retries_used: attempt,
            seed: rng.seed(),
            stream: rng.stream(),
            prime: Some(prime),
        });
    }
    Err(WitnessError::Exhausted {
        attempts: max_retries + 1,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brill_noether::{bn_dim_lower_bound, rho};
    use crate::exact::DEFAULT_PRIME;
    use proptest::prelude::{
        any, prop_assert, prop_assert_eq, prop_assume, proptest, ProptestConfig,
    };

    fn fp() -> Field {
        Field::prime(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |mut r: RngState| (0..8).map(|_| r.next_u64()).collect::<Vec<_>>();
        assert_eq!(draw(RngState::new(7)), draw(RngState::new(7)));
        assert_ne!(draw(RngState::new(7)), draw(RngState::new(8)));
        assert_ne!(
            draw(RngState::for_trial(7, 0)),
            draw(RngState::for_trial(7, 1))
        );
        let mut r = RngState::new(1);
        r.next_u64();
        assert_eq!(r.counter(), 2);
    }

    #[test]
    fn random_cycle_examples() {
        let mut rng = RngState::new(3);
        assert!(random_cycle(0, fp(), &mut rng).unwrap().is_empty());
        let a = random_cycle(3, fp(), &mut RngState::new(11)).unwrap();
        let b = random_cycle(3, fp(), &mut RngState::new(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        let z = random_cycle(10, fp(), &mut rng).unwrap();
        assert_eq!(h0_ideal(3, &z), 0);
        let q = random_cycle(6, Field::Rational, &mut rng).unwrap();
        assert_eq!(q.len(), 6);
        // All of P^2(F_3) is 13 points.
        let f3 = Field::prime(3).unwrap();
        assert_eq!(random_cycle(13, f3, &mut rng).unwrap().len(), 13);
        assert!(random_cycle(14, f3, &mut rng).is_err());
    }

    #[test]
    fn stratum_witness_examples() {
        let mut rng = RngState::new(7);
        let w = stratum_witness(ChernData::new(0, 6), 4, fp(), &mut rng, DEFAULT_RETRIES).unwrap();
        assert_eq!(w.bundle.cycle().len(), 10);
        assert_eq!(h0_ideal(3, w.bundle.cycle()), 0);
        assert_eq!(w.check_int("segre_value"), Some(4));
        assert_eq!(w.check_bool("stable"), Some(true));
        assert!(w.recheck());

        let w = stratum_witness(ChernData::new(-1, 1), 1, fp(), &mut rng, DEFAULT_RETRIES).unwrap();
        assert_eq!((w.bundle.sub_degree(), w.bundle.quotient_degree()), (-1, 0));
        assert_eq!(w.bundle.cycle().len(), 1);
        assert_eq!(w.check_int("segre_value"), Some(1));

        let err = stratum_witness(ChernData::new(0, 1), 2, fp(), &mut rng, DEFAULT_RETRIES);
        match err {
            Err(WitnessError::Inadmissible(msg)) => assert!(msg.contains("k^2+k ≤ c_2 fails")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stratum_witness_non_normalized_and_rational() {
        let mut rng = RngState::new(5);
        let c = ChernData::new(3, 9);
        let w = stratum_witness(c, 3, fp(), &mut rng, DEFAULT_RETRIES).unwrap();
        assert_eq!(crate::serre::chern(&w.bundle), c);
        assert!(w.recheck());
        let w = stratum_witness(ChernData::new(0, 5), 2, Field::Rational, &mut rng, 8).unwrap();
        assert_eq!(w.prime, None);
        assert_eq!(w.check_int("segre_value"), Some(2));
    }

    #[test]
    fn witness_report_round_trips() {
        let w = stratum_witness(ChernData::new(0, 6), 2, fp(), &mut RngState::new(9), 64).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.starts_with(r#"{"kind":"stratum","a":-1,"b":1,"cycle":"#));
        let back: WitnessReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let again = stratum_witness(ChernData::new(0, 6), 2, fp(), &mut RngState::new(9), 64);
        assert_eq!(serde_json::to_string(&again.unwrap()).unwrap(), json);
    }

    #[test]
    fn boundary_probe_examples() {
        let mut rng = RngState::new(2);
        let cases = [
            (ChernData::new(0, 1), 2, 0),
            (ChernData::new(0, 5), 4, 2),
            (ChernData::new(-1, 3), 3, 1),
        ];
        for (c, s, bound) in cases {
            let rep = below_boundary_probe(c, s, 20, fp(), &mut rng).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.trials, 20);
            assert!(rep.max_segre.unwrap() <= bound, "{c:?} {rep:?}");
        }
        assert!(below_boundary_probe(ChernData::new(0, 6), 4, 5, fp(), &mut rng).is_err());
    }

    #[test]
    fn bn_witness_examples() {
        let mut rng = RngState::new(7);
        let w = bn_witness(
            2,
            1,
            6,
            Parity::Even,
            DEFAULT_PRIME,
            &mut rng,
            DEFAULT_RETRIES,
        )
        .unwrap();
        assert_eq!(w.bundle.cycle().len(), 3);
        assert_eq!(w.t, Some(8));
        assert!(w.check_int("h0_value").unwrap() >= 8);
        let z = w.bundle.cycle();
        // The first two points lie on a line missing the third.
        assert_eq!(h0_ideal(1, &z.without(2)), 1);
        assert_eq!(h0_ideal(1, z), 0);
        assert!(w.recheck());

        let w = bn_witness(
            2,
            1,
            7,
            Parity::Odd,
            DEFAULT_PRIME,
            &mut rng,
            DEFAULT_RETRIES,
        )
        .unwrap();
        assert_eq!(w.bundle.cycle().len(), 5);
        assert_eq!(h0_ideal(1, &w.bundle.cycle().without(4)), 1);
        assert!(w.check_int("h0_value").unwrap() >= 5);

        let w = bn_witness(
            3,
            2,
            10,
            Parity::Odd,
            DEFAULT_PRIME,
            &mut rng,
            DEFAULT_RETRIES,
        )
        .unwrap();
        assert_eq!(w.check_int("segre_value"), Some(3));
        assert!(w.check_int("h0_value").unwrap() >= 8);

        assert!(matches!(
            bn_witness(1, 1, 6, Parity::Even, DEFAULT_PRIME, &mut rng, 4),
            Err(WitnessError::Inadmissible(m)) if m.contains("k<r fails")
        ));
        assert!(matches!(
            bn_witness(3, 2, 9, Parity::Odd, DEFAULT_PRIME, &mut rng, 4),
            Err(WitnessError::Inadmissible(_))
        ));
    }

    #[test]
    fn bn_loci_can_exceed_expected_dimension() {
        for c2 in 10..=20 {
            let c = chern_for(2, c2, Parity::Even);
            assert!(rho(c, 8) < bn_dim_lower_bound(2, 1, c2, Parity::Even).unwrap());
        }
        let w = bn_witness(
            2,
            1,
            10,
            Parity::Even,
            DEFAULT_PRIME,
            &mut RngState::new(4),
            64,
        )
        .unwrap();
        assert!(w.check_int("h0_value").unwrap() >= 8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn witnesses_are_self_certifying_and_reproducible(
            c1 in -4i64..=4,
            extra in 0i64..6,
            k in 1i64..=3,
            seed in any::<u64>(),
        ) {
            let c0 = ChernData::new(c1, 0);
            let r = c0.r();
            let base = match c0.parity() {
                Parity::Even => k * k + k + r * r,
                Parity::Odd => k * k + r * r - r,
            };
            let c = ChernData::new(c1, base.max(r * r + 2) + extra);
            let s = c.s_for_k(k);
            prop_assume!(check_admissible(c, s).is_ok());
            let a = stratum_witness(c, s, fp(), &mut RngState::new(seed), DEFAULT_RETRIES).unwrap();
            let b = stratum_witness(c, s, fp(), &mut RngState::new(seed), DEFAULT_RETRIES).unwrap();
            prop_assert!(a.recheck());
            prop_assert_eq!(crate::serre::chern(&a.bundle), c);
            prop_assert_eq!(a.check_int("segre_value"), Some(s));
            prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }

        #[test]
        fn probes_never_reach_an_inadmissible_invariant(
            c1 in -1i64..=0,
            c2 in 0i64..12,
            k in 1i64..=4,
            seed in any::<u64>(),
        ) {
            let c = ChernData::new(c1, c2);
            let s = c.s_for_k(k);
            prop_assume!(check_admissible(c, s).is_err());
            let rep = below_boundary_probe(c, s, 5, fp(), &mut RngState::new(seed)).unwrap();
            prop_assert!(rep.passed());
        }
    }
}

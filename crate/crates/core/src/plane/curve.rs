use serde::Serialize;

use super::forms::{evaluation_matrix, monomial_basis, monomial_values, num_forms};
use super::roots::roots_mod_p;
use super::{h0_ideal, PlaneError, PlanePoint, ZeroCycle};
use crate::exact::{normalize_leading, Field, FieldElement};

/// A plane curve `f = 0`, with `f` a nonzero form of degree ≥ 1 whose
/// coefficient vector (in monomial-basis order) has first nonzero entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    field: Field,
    degree: u32,
    coefficients: Vec<FieldElement>,
}

impl PlaneCurve {
    pub fn new(
        field: Field,
        degree: u32,
        mut coefficients: Vec<FieldElement>,
    ) -> Result<Self, PlaneError> {
        if degree == 0 {
            return Err(PlaneError::BadCurve("degree must be at least 1".into()));
        }
        if coefficients.len() != num_forms(degree as i64) {
            return Err(PlaneError::BadCurve(format!(
                "degree {degree} needs {} coefficients, got {}",
                num_forms(degree as i64),
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| c.field() != field) {
            return Err(PlaneError::MixedFields);
        }
        if coefficients.iter().all(|c| c.is_zero()) {
            return Err(PlaneError::BadCurve("zero form".into()));
        }
        normalize_leading(&mut coefficients);
        Ok(PlaneCurve {
            field,
            degree,
            coefficients,
        })
    }

    pub fn from_i64(field: Field, degree: u32, coefficients: &[i64]) -> Result<Self, PlaneError> {
        Self::new(
            field,
            degree,
            coefficients.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    pub fn evaluate(&self, p: &PlanePoint) -> FieldElement {
        assert_eq!(
            p.field(),
            self.field,
            "point and curve over different fields"
        );
        monomial_values(self.degree, p.coords())
            .iter()
            .zip(&self.coefficients)
            .fold(self.field.zero(), |acc, (m, c)| &acc + &(m * c))
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.evaluate(p).is_zero()
    }

    /// Human-readable form, e.g. `x*z - y^2`.
    pub fn to_form_string(&self) -> String {
        let mut out = String::new();
        for (c, [i, j, k]) in self
            .coefficients
            .iter()
            .zip(monomial_basis(self.degree as i64))
        {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mut parts = Vec::new();
            if !c.is_one() {
                parts.push(c.to_string());
            }
            for (v, e) in [("x", i), ("y", j), ("z", k)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

#[derive(Serialize)]
struct CurveRepr {
    field: Field,
    degree: u32,
    coefficients: Vec<String>,
}

impl Serialize for PlaneCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CurveRepr {
            field: self.field,
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// The unique degree-`d` curve through `Z`, if there is exactly one.
pub fn curve_through(d: u32, z: &ZeroCycle) -> Option<PlaneCurve> {
    if d == 0 || h0_ideal(d as i64, z) != 1 {
        return None;
    }
    let mut kernel = evaluation_matrix(d, z).kernel_basis();
    let coefficients = kernel.pop().expect("one-dimensional kernel");
    PlaneCurve::new(z.field(), d, coefficients).ok()
}

pub fn on_curve(c: &PlaneCurve, p: &PlanePoint) -> bool {
    c.contains(p)
}

/// Every F_p-rational point of the curve, in ascending [`PlanePoint::index`] order.
///
/// Each line `x = 1, y = y0` (and the line at infinity `x = 0`) is handled as
/// a univariate root-finding problem in `z`, so the cost is linear in `p`.
pub fn points_on_curve(c: &PlaneCurve) -> Result<Vec<PlanePoint>, PlaneError> {
    let Field::Prime(p) = c.field else {
        return Err(PlaneError::NotPrimeField);
    };
    let monos = monomial_basis(c.degree as i64);
    let coeffs: Vec<u64> = c
        .coefficients
        .iter()
        .map(|e| e.residue().unwrap())
        .collect();
    let deg = c.degree as usize;

    // Coefficient of z^k in f(x0, y0, z).
    let slice = |x0: u64, y0: u64| -> Vec<u64> {
        let mut out = vec![0u64; deg + 1];
        for (&[i, j, k], &a) in monos.iter().zip(&coeffs) {
            if a == 0 {
                continue;
            }
            let term = a * crate::exact::mod_pow(x0, i as u64, p) % p
                * crate::exact::mod_pow(y0, j as u64, p)
                % p;
            out[k as usize] = (out[k as usize] + term) % p;
        }
        out
    };

    let mut points = Vec::new();
    let push_line = |x0: u64, y0: u64, points: &mut Vec<PlanePoint>| {
        let zs = match roots_mod_p(&slice(x0, y0), p) {
            Some(r) => r,
            None => (0..p).collect(),
        };
        for z0 in zs {
            let idx = if x0 == 1 { y0 * p + z0 } else { p * p + z0 };
            points.push(PlanePoint::from_index(p, idx));
        }
    };
    for y0 in 0..p {
        push_line(1, y0, &mut points);
    }
    push_line(0, 1, &mut points);
    let last = PlanePoint::from_index(p, p * p + p);
    if c.contains(&last) {
        points.push(last);
    }
    Ok(points)
}

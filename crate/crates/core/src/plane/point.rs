use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PlaneError;
use crate::exact::{Field, FieldElement};

/// A point of the projective plane, stored with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    coords: [FieldElement; 3],
}

impl PlanePoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self, PlaneError> {
        let field = coords[0].field();
        if coords.iter().any(|c| c.field() != field) {
            return Err(PlaneError::MixedFields);
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(PlaneError::ZeroPoint)?;
        let inv = lead.inv().expect("nonzero");
        let coords = coords.map(|c| &c * &inv);
        Ok(PlanePoint { coords })
    }

    pub fn from_i64(field: Field, coords: [i64; 3]) -> Result<Self, PlaneError> {
        Self::new(coords.map(|c| field.from_i64(c)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Position in the canonical enumeration of P²(F_p): `[1:y:z]` at
    /// `y*p + z`, then `[0:1:z]` at `p² + z`, then `[0:0:1]` last.
    pub fn index(&self) -> Option<u64> {
        let Field::Prime(p) = self.field() else {
            return None;
        };
        let [x, y, z] = self.coords.each_ref().map(|c| c.residue().unwrap());
        Some(if x == 1 {
            y * p + z
        } else if y == 1 {
            p * p + z
        } else {
            p * p + p
        })
    }

    /// Inverse of [`PlanePoint::index`]. Panics when `idx >= p² + p + 1`.
    pub fn from_index(p: u64, idx: u64) -> PlanePoint {
        assert!(idx < p * p + p + 1, "index out of range");
        let field = Field::Prime(p);
        let (x, y, z) = if idx < p * p {
            (1, idx / p, idx % p)
        } else if idx < p * p + p {
            (0, 1, idx - p * p)
        } else {
            (0, 0, 1)
        };
        PlanePoint {
            coords: [x, y, z].map(|c| field.from_u64(c)),
        }
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x}:{y}:{z}]")
    }
}

/// A reduced zero-cycle: finitely many distinct points, kept in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CycleRepr", into = "CycleRepr")]
pub struct ZeroCycle {
    field: Field,
    points: Vec<PlanePoint>,
}

impl ZeroCycle {
    pub fn empty(field: Field) -> Self {
        ZeroCycle {
            field,
            points: Vec::new(),
        }
    }

    pub fn new(field: Field, points: Vec<PlanePoint>) -> Result<Self, PlaneError> {
        let mut seen = HashSet::with_capacity(points.len());
        for pt in &points {
            if pt.field() != field {
                return Err(PlaneError::MixedFields);
            }
            if !seen.insert(pt) {
                return Err(PlaneError::DuplicatePoint(pt.to_string()));
            }
        }
        Ok(ZeroCycle { field, points })
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_i64(field: Field, points: &[[i64; 3]]) -> Result<Self, PlaneError> {
        let pts = points
            .iter()
            .map(|&c| PlanePoint::from_i64(field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, pts)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The length l(Z).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.points.contains(p)
    }

    pub fn push(&mut self, p: PlanePoint) -> Result<(), PlaneError> {
        if p.field() != self.field {
            return Err(PlaneError::MixedFields);
        }
        if self.contains(&p) {
            return Err(PlaneError::DuplicatePoint(p.to_string()));
        }
        self.points.push(p);
        Ok(())
    }

    /// The cycle with the point at `index` removed.
    pub fn without(&self, index: usize) -> ZeroCycle {
        let mut points = self.points.clone();
        points.remove(index);
        ZeroCycle {
            field: self.field,
            points,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycleRepr {
    field: Field,
    points: Vec<[String; 3]>,
}

impl TryFrom<CycleRepr> for ZeroCycle {
    type Error = PlaneError;

    fn try_from(repr: CycleRepr) -> Result<Self, PlaneError> {
        let field = repr.field;
        let points = repr
            .points
            .iter()
            .map(|[x, y, z]| PlanePoint::new([field.parse(x)?, field.parse(y)?, field.parse(z)?]))
            .collect::<Result<Vec<_>, _>>()?;
        ZeroCycle::new(field, points)
    }
}

impl From<ZeroCycle> for CycleRepr {
    fn from(z: ZeroCycle) -> Self {
        CycleRepr {
            field: z.field,
            points: z
                .points
                .iter()
                .map(|p| p.coords.each_ref().map(|c| c.to_string()))
                .collect(),
        }
    }
}

//! Dense exact matrices: rank, reduced row-echelon form, kernel.
//!
//! Elimination pivots on the first nonzero entry (leftmost column, topmost
//! row at or below the current pivot row), so every output is a deterministic
//! function of the input.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{mod_inv, Field, FieldElement, FieldError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, all of which must live in `field`.
    pub fn new(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(FieldError::Mixed {
                expected: field,
                found: bad.field(),
            });
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix with `cols` columns from a list of rows.
    pub fn from_rows(
        field: Field,
        cols: usize,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<Self, FieldError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(FieldError::Shape {
                rows: n,
                cols,
                len: bad.len(),
            });
        }
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Integer matrix mapped into `field`. Panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect::<Vec<_>>();
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &FieldElement {
        assert!(row < self.rows && col < self.cols);
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[FieldElement] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Matrix-vector product. Panics when `v` has the wrong length or field.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> ExactMatrix {
        self.echelon().matrix
    }

    /// Basis of the right kernel. Each vector has first nonzero entry 1.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let Echelon { matrix, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis: Vec<Vec<FieldElement>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(i, free);
                }
                normalize_leading(&mut v);
                v
            })
            .collect();
        assert_eq!(
            pivots.len() + basis.len(),
            self.cols,
            "rank-nullity violated"
        );
        basis
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            Field::Prime(p) => {
                let mut data: Vec<u64> = self
                    .entries
                    .iter()
                    .map(|e| e.residue().expect("prime-field entry"))
                    .collect();
                let pivots = eliminate(&ModP(p), &mut data, self.rows, self.cols);
                let entries = data
                    .into_iter()
                    .map(|value| FieldElement::Modular { value, p })
                    .collect();
                Echelon {
                    matrix: ExactMatrix {
                        entries,
                        ..self.clone_shape()
                    },
                    pivots,
                }
            }
            Field::Rational => {
                let mut data: Vec<BigRational> = self
                    .entries
                    .iter()
                    .map(|e| match e {
                        FieldElement::Rational(q) => q.clone(),
                        _ => unreachable!("rational matrix holds rationals"),
                    })
                    .collect();
                let pivots = eliminate(&Rationals, &mut data, self.rows, self.cols);
                Echelon {
                    matrix: ExactMatrix {
                        entries: data.into_iter().map(FieldElement::Rational).collect(),
                        ..self.clone_shape()
                    },
                    pivots,
                }
            }
        }
    }

    fn clone_shape(&self) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
        }
    }
}

/// Scales `v` so its first nonzero entry is 1. Zero vectors are left alone.
pub fn normalize_leading(v: &mut [FieldElement]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
        if lead.is_one() {
            return;
        }
        let inv = lead.inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

struct Echelon {
    matrix: ExactMatrix,
    pivots: Vec<usize>,
}

/// Arithmetic the elimination kernel needs, over an unboxed element type.
trait Arith {
    type Elem: Clone;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct ModP(u64);

impl Arith for ModP {
    type Elem = u64;

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.0;
        (a + p - f * b % p) % p
    }
}

struct Rationals;

impl Arith for Rationals {
    type Elem = BigRational;

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
}

/// Gauss-Jordan elimination in place; returns pivot columns.
fn eliminate<A: Arith>(ar: &A, data: &mut [A::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if found != r {
            for j in 0..cols {
                data.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = ar.mul(&data[r * cols + j], &inv);
        }
        data[r * cols + c] = ar.one();
        let pivot_row: Vec<A::Elem> = data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if ar.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                if ar.is_zero(&pivot_row[j]) {
                    continue;
                }
                data[i * cols + j] = ar.sub_mul(&data[i * cols + j], &factor, &pivot_row[j]);
            }
            data[i * cols + c] = ar.zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

//! Degree-d forms on the plane and the cohomology of `O(d) ⊗ I_Z`.

use super::ZeroCycle;
use crate::exact::{ExactMatrix, FieldElement};

/// Exponent triple `(i, j, k)` of the monomial `x^i y^j z^k`.
pub type Monomial = [u32; 3];

/// `N(d) = h⁰(O(d)) = (d+1)(d+2)/2` for `d ≥ 0`, and `0` below.
pub fn num_forms(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2) / 2) as usize
    }
}

/// `χ(O(d))` as a polynomial in `d`.
pub fn euler_char_line_bundle(d: i64) -> i64 {
    (d + 1) * (d + 2) / 2
}

/// All monomials of degree `d` in lexicographic order, `x^d` first.
pub fn monomial_basis(d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let d = d as u32;
    let mut out = Vec::with_capacity(num_forms(d as i64));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Values of every degree-`d` monomial at the given coordinates, in basis order.
pub(crate) fn monomial_values(d: u32, coords: &[FieldElement; 3]) -> Vec<FieldElement> {
    let field = coords[0].field();
    let powers: Vec<Vec<FieldElement>> = coords
        .iter()
        .map(|c| {
            let mut pw = Vec::with_capacity(d as usize + 1);
            pw.push(field.one());
            for e in 1..=d as usize {
                let next = &pw[e - 1] * c;
                pw.push(next);
            }
            pw
        })
        .collect();
    monomial_basis(d as i64)
        .into_iter()
        .map(|[i, j, k]| {
            &(&powers[0][i as usize] * &powers[1][j as usize]) * &powers[2][k as usize]
        })
        .collect()
}

/// The `l(Z) × N(d)` matrix of the restriction `H⁰(O(d)) → H⁰(O_Z)`.
pub fn evaluation_matrix(d: u32, z: &ZeroCycle) -> ExactMatrix {
    let cols = num_forms(d as i64);
    let rows = z
        .points()
        .iter()
        .map(|p| monomial_values(d, p.coords()))
        .collect();
    ExactMatrix::from_rows(z.field(), cols, rows).expect("evaluation rows share the cycle's field")
}

/// Number of conditions `Z` imposes on degree-`d` forms (rank of the evaluation matrix).
pub fn conditions_imposed(d: i64, z: &ZeroCycle) -> usize {
    if d < 0 || z.is_empty() {
        return 0;
    }
    evaluation_matrix(d as u32, z).rank()
}

/// `h⁰(O(d) ⊗ I_Z)`: dimension of degree-`d` forms vanishing on `Z`.
pub fn h0_ideal(d: i64, z: &ZeroCycle) -> usize {
    num_forms(d) - conditions_imposed(d, z)
}

/// `h¹(O(d) ⊗ I_Z)` from the ideal-sheaf sequence:
/// `h¹ = h⁰ − χ(O(d)) + l(Z) + h²(O(d))` with `h²(O(d)) = N(−d−3)`.
pub fn h1_ideal(d: i64, z: &ZeroCycle) -> usize {
    let h1 = h0_ideal(d, z) as i64 - euler_char_line_bundle(d)
        + z.len() as i64
        + num_forms(-d - 3) as i64;
    assert!(h1 >= 0, "negative h1 for d={d}, l={}", z.len());
    h1 as usize
}

/// Whether `Z` imposes the expected `min(l(Z), N(d))` conditions on degree-`d` forms.
pub fn has_maximal_rank(d: i64, z: &ZeroCycle) -> bool {
    conditions_imposed(d, z) == z.len().min(num_forms(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn coord_points(field: Field) -> ZeroCycle {
        ZeroCycle::from_i64(field, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(monomial_basis(-3).is_empty());
        assert_eq!(num_forms(-3), 0);
        assert_eq!(monomial_basis(2).len(), 6);
        for d in 0..8 {
            assert_eq!(monomial_basis(d).len(), num_forms(d));
        }
    }

    #[test]
    fn evaluation_examples() {
        let q = Field::Rational;
        let single = ZeroCycle::from_i64(q, &[[1, 0, 0]]).unwrap();
        assert_eq!(
            evaluation_matrix(1, &single),
            ExactMatrix::from_i64(q, &[&[1, 0, 0]])
        );
        let z = ZeroCycle::from_i64(q, &[[1, 2, 3], [0, 1, 5], [4, 4, 1]]).unwrap();
        let m = evaluation_matrix(0, &z);
        assert_eq!((m.rows(), m.cols()), (3, 1));
        assert!(m.entries().iter().all(|e| e.is_one()));
        assert_eq!(
            evaluation_matrix(1, &coord_points(q)),
            ExactMatrix::identity(q, 3)
        );
    }

    #[test]
    fn h0_examples() {
        let q = Field::Rational;
        assert_eq!(h0_ideal(1, &coord_points(q)), 0);
        let two = ZeroCycle::from_i64(q, &[[1, 0, 0], [1, 1, 1]]).unwrap();
        assert_eq!(h0_ideal(1, &two), 1);
        // Five points, no three collinear: a unique conic.
        let five = ZeroCycle::from_i64(q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]])
            .unwrap();
        assert_eq!(h0_ideal(2, &five), 1);
        assert_eq!(h0_ideal(3, &ZeroCycle::empty(q)), 10);
        assert_eq!(h0_ideal(-1, &ZeroCycle::empty(q)), 0);
    }

    #[test]
    fn h1_examples() {
        let f = Field::prime(10007).unwrap();
        let three = ZeroCycle::from_i64(f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(h1_ideal(-1, &three), 3);
        let one = ZeroCycle::from_i64(f, &[[1, 5, 7]]).unwrap();
        assert_eq!(h1_ideal(0, &one), 0);
        let seven = ZeroCycle::from_i64(
            f,
            &[
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 1],
                [1, 2, 3],
                [1, 5, 11],
                [1, 17, 4],
            ],
        )
        .unwrap();
        assert_eq!(h0_ideal(1, &seven), 0);
        assert_eq!(h1_ideal(1, &seven), 4);
        // h² correction below d = -2: h¹(O(-3)) = 0 for the empty cycle, l(Z) for others.
        assert_eq!(h1_ideal(-3, &ZeroCycle::empty(f)), 0);
        assert_eq!(h1_ideal(-5, &three), 3);
    }
}

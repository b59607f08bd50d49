//! Roots of univariate polynomials over F_p (odd p).
//!
//! `gcd(f, z^p − z)` isolates the product of the distinct linear factors,
//! which is then split by equal-degree factorization with the deterministic
//! shift sequence a = 0, 1, 2, ...

use crate::exact::mod_inv;

/// Coefficients, constant term first. Always trimmed (no trailing zeros).
type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

fn make_monic(f: Poly, p: u64) -> Poly {
    let lead = *f.last().expect("nonzero polynomial");
    let inv = mod_inv(lead, p);
    f.into_iter().map(|c| c * inv % p).collect()
}

fn rem(mut a: Poly, b: &Poly, p: u64) -> Poly {
    let db = degree(b).expect("division by zero polynomial");
    let inv_lead = mod_inv(b[db], p);
    a = trim(a);
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        let factor = a[da] * inv_lead % p;
        let shift = da - db;
        for (i, &c) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - factor * c % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(out, m, p)
}

fn pow_mod(base: &Poly, mut exp: u64, m: &Poly, p: u64) -> Poly {
    let mut acc = rem(vec![1], m, p);
    let mut b = rem(base.clone(), m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        make_monic(a, p)
    }
}

fn sub_scalar(mut f: Poly, c: u64, p: u64) -> Poly {
    if f.is_empty() {
        f.push(0);
    }
    f[0] = (f[0] + p - c % p) % p;
    trim(f)
}

/// Splits a monic squarefree product of distinct linear factors into its roots.
fn split(g: Poly, p: u64, out: &mut Vec<u64>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push((p - g[0]) % p),
        Some(dg) => {
            for a in 0..p {
                let w = pow_mod(&vec![a, 1], (p - 1) / 2, &g, p);
                let d = gcd(g.clone(), sub_scalar(w, 1, p), p);
                let dd = degree(&d).unwrap_or(0);
                if dd > 0 && dd < dg {
                    let (q, r) = div_exact(&g, &d, p);
                    debug_assert!(r.is_empty());
                    split(d, p, out);
                    split(q, p, out);
                    return;
                }
            }
            // Only reachable when p is tiny relative to the degree; scan directly.
            out.extend((0..p).filter(|&z| eval(&g, z, p) == 0));
        }
    }
}

fn div_exact(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let db = degree(b).unwrap();
    let inv_lead = mod_inv(b[db], p);
    let mut r = trim(a.clone());
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] * inv_lead % p;
        q[dr - db] = factor;
        for (i, &c) in b.iter().enumerate() {
            r[dr - db + i] = (r[dr - db + i] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn eval(f: &[u64], z: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * z + c) % p)
}

/// Distinct roots in ascending order, or `None` when `f` is the zero polynomial.
pub(crate) fn roots_mod_p(f: &[u64], p: u64) -> Option<Vec<u64>> {
    let f = trim(f.iter().map(|c| c % p).collect());
    let df = degree(&f)?;
    if df == 0 {
        return Some(Vec::new());
    }
    let f = make_monic(f, p);
    let zp = pow_mod(&vec![0, 1], p, &f, p);
    // z^p − z mod f
    let mut h = zp;
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = (h[1] + p - 1) % p;
    let h = trim(h);
    let g = if h.is_empty() { f } else { gcd(f, h, p) };
    let mut out = Vec::new();
    split(g, p, &mut out);
    out.sort_unstable();
    out.dedup();
    Some(out)
}

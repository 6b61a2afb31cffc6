//! Minimal dense polynomial helpers over an exact field: ascending
//! coefficient vectors with no trailing zeros, the zero polynomial being the
//! empty vector. Only what the curve model needs — shifting, valuations and
//! monic normalization; no division or factorization.

use crate::qlinalg::{FieldSpec, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: Poly) -> Poly {
    trim(&mut p);
    p
}

pub fn is_zero(p: &Poly) -> bool {
    p.is_empty()
}

/// Degree of a nonzero polynomial.
pub fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Order of vanishing at 0 of a nonzero polynomial.
pub fn valuation(p: &Poly) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

pub fn coeff(field: &FieldSpec, p: &Poly, k: usize) -> Scalar {
    p.get(k).cloned().unwrap_or_else(|| field.zero())
}

/// Multiply by the variable to the `k`-th power.
pub fn shift_up(field: &FieldSpec, p: &Poly, k: usize) -> Poly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); k];
    out.extend_from_slice(p);
    out
}

/// Divide by the variable to the `k`-th power; requires valuation >= k.
pub fn shift_down(p: &Poly, k: usize) -> Poly {
    if p.is_empty() {
        return Vec::new();
    }
    assert!(
        p.iter().take(k).all(|c| c.is_zero()),
        "valuation too small for shift"
    );
    p[k..].to_vec()
}

/// Scale a nonzero polynomial to leading coefficient 1.
pub fn monic(field: &FieldSpec, p: &Poly) -> Poly {
    let lead = p.last().expect("monic of the zero polynomial");
    if lead.is_one() {
        return p.clone();
    }
    let inv = field.inv(lead);
    p.iter().map(|c| field.mul(c, &inv)).collect()
}

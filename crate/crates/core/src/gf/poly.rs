//! Dense univariate polynomials over a [`PrimePowerField`], ascending coefficients.
//!
//! Only what the primitive-polynomial search needs: reduction, modular
//! exponentiation of `x`, trial-division irreducibility, and order checks.

use super::{prime_factors, PrimePowerField};
use crate::error::{Error, Result};

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `f` (`f` nonzero).
pub fn rem(field: &PrimePowerField, a: &[u32], f: &[u32]) -> Vec<u32> {
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = field.inv(f[df]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let coef = field.mul(r[dr], lead_inv);
        let shift = dr - df;
        for (i, &c) in f[..=df].iter().enumerate() {
            r[i + shift] = field.sub(r[i + shift], field.mul(coef, c));
        }
        r = trim(r);
    }
    r
}

pub fn mul(field: &PrimePowerField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

pub fn mulmod(field: &PrimePowerField, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
    rem(field, &mul(field, a, b), f)
}

/// `x^e mod f`.
pub fn x_pow_mod(field: &PrimePowerField, e: u64, f: &[u32]) -> Vec<u32> {
    let mut base = rem(field, &[0, 1], f);
    let mut acc = rem(field, &[1], f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(field, &acc, &base, f);
        }
        base = mulmod(field, &base, &base, f);
        e >>= 1;
    }
    acc
}

fn is_monic(field: &PrimePowerField, f: &[u32]) -> bool {
    f.len() >= 2 && *f.last().unwrap() == 1 && f.iter().all(|&c| c < field.q())
}

/// Monic polynomial of degree `d` whose low coefficients are the base-`q` digits of `index`.
fn monic_from_index(q: u64, d: usize, mut index: u64) -> Vec<u32> {
    let mut out = vec![0u32; d + 1];
    for c in out[..d].iter_mut() {
        *c = (index % q) as u32;
        index /= q;
    }
    out[d] = 1;
    out
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(field: &PrimePowerField, f: &[u32]) -> bool {
    if !is_monic(field, f) {
        return false;
    }
    let d = f.len() - 1;
    let q = field.q() as u64;
    for dd in 1..=d / 2 {
        for idx in 0..q.pow(dd as u32) {
            let g = monic_from_index(q, dd, idx);
            if rem(field, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// True iff `f` is monic and `x` has multiplicative order `q^deg - 1` modulo `f`.
///
/// An element of that order can only exist when the quotient ring is a
/// field, so irreducibility follows.
pub fn is_primitive(field: &PrimePowerField, f: &[u32]) -> bool {
    if !is_monic(field, f) || f[0] == 0 {
        return false;
    }
    let d = (f.len() - 1) as u32;
    let Some(order) = (field.q() as u64).checked_pow(d).map(|v| v - 1) else {
        return false;
    };
    if x_pow_mod(field, order, f) != [1] {
        return false;
    }
    prime_factors(order).into_iter().all(|r| x_pow_mod(field, order / r, f) != [1])
}

/// Lexicographically smallest primitive monic polynomial of degree `d`.
///
/// Candidates are ordered by the integer `c_0 + c_1 q + ... + c_{d-1} q^{d-1}`.
pub fn smallest_primitive(field: &PrimePowerField, d: usize) -> Result<Vec<u32>> {
    if d == 0 {
        return Err(Error::InvalidField("degree must be at least 1".into()));
    }
    let q = field.q() as u64;
    let count = q
        .checked_pow(d as u32)
        .filter(|&c| c <= super::MAX_FIELD_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("search space {q}^{d}")))?;
    (0..count).map(|idx| monic_from_index(q, d, idx)).find(|f| is_primitive(field, f)).ok_or(Error::NotPrimitive)
}

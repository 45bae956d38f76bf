//! Exact arithmetic in GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
//! polynomial-basis coefficients (digit `i` is the coefficient of `x^i`).
//! Every field is built from a primitive modulus, so multiplication runs
//! through discrete log / antilog tables indexed by powers of the root.

pub mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::MatrixFq;

/// Largest field order the crate will tabulate.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so products of logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field GF(p^m) with a primitive modulus.
///
/// Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct PrimePowerField {
    inner: Arc<FieldData>,
}

impl PartialEq for PrimePowerField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for PrimePowerField {}

impl fmt::Debug for PrimePowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p(), self.m(), self.modulus())
    }
}

impl fmt::Display for PrimePowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_primitive_root(g: u64, p: u64) -> bool {
    if g.is_multiple_of(p) {
        return false;
    }
    prime_factors(p - 1).into_iter().all(|r| pow_mod(g, (p - 1) / r, p) != 1)
}

impl PrimePowerField {
    /// Builds GF(p^m).
    ///
    /// Without a modulus the lexicographically smallest primitive monic
    /// polynomial of degree `m` over F_p is used (smallest integer
    /// `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`). For `m = 1` the modulus is
    /// `x - g` with `g` the smallest primitive root mod `p`.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::TooLarge(format!("field order {p}^{m} exceeds {MAX_FIELD_ORDER}")));
        }
        let p32 = p as u32;
        if let Some(c) = modulus {
            if c.len() != m as usize + 1 {
                return Err(Error::InvalidField(format!("modulus must have {} coefficients, got {}", m + 1, c.len())));
            }
            if c.iter().any(|&x| x >= p32) {
                return Err(Error::InvalidField("modulus coefficient out of range".into()));
            }
            if c[m as usize] != 1 {
                return Err(Error::InvalidField("modulus must be monic".into()));
            }
        }

        // Prime field first: modulus x - g.
        let g = match modulus {
            Some(c) if m == 1 => {
                let g = (p - c[0] as u64) % p;
                if !is_primitive_root(g, p) {
                    return Err(Error::ModulusNotPrimitive(format!(
                        "root {g} of x + {} is not a generator of F_{p}^*",
                        c[0]
                    )));
                }
                g
            }
            _ => (1..p.max(2)).find(|&g| is_primitive_root(g, p)).unwrap_or(1),
        };
        let prime = Self::from_modulus(p32, 1, vec![((p - g) % p) as u32, 1]);
        if m == 1 {
            return Ok(prime);
        }

        let modulus = match modulus {
            Some(c) => {
                if !poly::is_irreducible(&prime, c) {
                    return Err(Error::ModulusNotPrimitive(format!("{c:?} is reducible over F_{p}")));
                }
                if !poly::is_primitive(&prime, c) {
                    return Err(Error::ModulusNotPrimitive(format!(
                        "root of {c:?} does not generate the multiplicative group"
                    )));
                }
                c.to_vec()
            }
            None => poly::smallest_primitive(&prime, m as usize)?,
        };
        Ok(Self::from_modulus(p32, m, modulus))
    }

    /// Shorthand for a field with the default modulus.
    pub fn with_default_modulus(p: u64, m: u32) -> Result<Self> {
        Self::new(p, m, None)
    }

    /// Tabulates the field; `modulus` must already be known to be primitive.
    fn from_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        // Root of the modulus: x for m > 1, -c0 for m = 1.
        let mut cur = 1u32;
        for (i, e) in exp.iter_mut().take(order).enumerate() {
            *e = cur;
            log[cur as usize] = i as u32;
            cur = times_root(p, m, &modulus, cur);
        }
        debug_assert_eq!(cur, 1, "modulus is not primitive");
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Self { inner: Arc::new(FieldData { p, m, q, modulus, exp, log }) }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The primitive element (the root of the modulus).
    pub fn generator(&self) -> u32 {
        self.inner.exp[if self.q() == 2 { 0 } else { 1 }]
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.q() {
            return Err(Error::ElementOutOfRange { value: value as u64, q: self.q() as u64 });
        }
        Ok(FieldElement { value, field: self.clone() })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |v| FieldElement { value: v, field: self.clone() })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &*self.inner;
        if d.p == 2 {
            a ^ b
        } else if d.m == 1 {
            (a + b) % d.p
        } else {
            digitwise(d.p, d.m, a, b, |x, y| (x + y) % d.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &*self.inner;
        if d.p == 2 {
            a
        } else if d.m == 1 {
            (d.p - a) % d.p
        } else {
            digitwise(d.p, d.m, a, 0, |x, _| (d.p - x) % d.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.inner;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.inner;
        let order = d.q - 1;
        Ok(d.exp[((order - d.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.inner;
        let order = (d.q - 1) as u64;
        d.exp[((d.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = (self.q() - 1) as u64;
        let l = self.inner.log[a as usize] as u64;
        Ok(group / gcd(group, l))
    }

    /// Companion matrix of a monic primitive polynomial over this field.
    ///
    /// Subdiagonal ones, last column `-c_0, ..., -c_{k-1}`.
    pub fn companion_matrix(&self, poly: &[u32]) -> Result<MatrixFq> {
        if poly.len() < 2 || *poly.last().unwrap() != 1 || poly.iter().any(|&c| c >= self.q()) {
            return Err(Error::NotPrimitive);
        }
        if !poly::is_primitive(self, poly) {
            return Err(Error::NotPrimitive);
        }
        let k = poly.len() - 1;
        let mut m = MatrixFq::zeros(self, k, k);
        for i in 1..k {
            m.set(i, i - 1, 1);
        }
        for (i, &c) in poly[..k].iter().enumerate() {
            m.set(i, k - 1, self.neg(c));
        }
        Ok(m)
    }

    /// Companion matrix of the default primitive polynomial of degree `k` over this field.
    pub fn default_companion_matrix(&self, k: usize) -> Result<MatrixFq> {
        let f = poly::smallest_primitive(self, k)?;
        self.companion_matrix(&f)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[inline]
fn digitwise(p: u32, m: u32, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Multiplies an encoded element by the root of `modulus`.
fn times_root(p: u32, m: u32, modulus: &[u32], a: u32) -> u32 {
    let m = m as usize;
    let mut digits = vec![0u32; m];
    let mut t = a;
    for d in digits.iter_mut() {
        *d = t % p;
        t /= p;
    }
    let overflow = digits[m - 1];
    for i in (1..m).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
    for i in 0..m {
        let sub = overflow * modulus[i] % p;
        digits[i] = (digits[i] + p - sub) % p;
    }
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// An element of a [`PrimePowerField`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: u32,
    field: PrimePowerField,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.add(self.value, rhs.value)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.mul(self.value, rhs.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        Self { value, field: self.field.clone() }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "elements of different fields");
                let v = self.field.$op(self.value, rhs.value);
                self.with(v)
            }
        }

        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "elements of different fields");
                self.with(self.field.$op(self.value, rhs.value))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let v = self.field.neg(self.value);
        self.with(v)
    }
}

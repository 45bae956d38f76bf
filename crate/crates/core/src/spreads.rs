//! k-spreads of F_q^n for k | n, built by field reduction from a companion matrix.
//!
//! For `n = 2k` the member order is `[I | M^1], ..., [I | M^{q^k-1}], [I | 0], [0 | I]`,
//! with `M` the companion matrix of the default primitive polynomial of degree
//! `k` over F_q. Downstream constructions pair consecutive members, so the
//! order is part of the contract.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flags::{FlagCode, FlagType, Provenance};
use crate::geometry::{vector_index, Subspace, DESK_BOUND};
use crate::gf::PrimePowerField;
use crate::linalg::{rank_of_stack, MatrixFq};

/// Upper limit on the number of spread members we are willing to build.
pub const MAX_SPREAD_MEMBERS: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct Spread {
    field: PrimePowerField,
    n: usize,
    k: usize,
    members: Vec<Subspace>,
    /// Generator matrices exactly as constructed, not canonicalized.
    generators: Vec<MatrixFq>,
}

/// `⌊(q^n - 1) / (q^k - 1)⌋`, the partial spread size bound.
pub fn partial_spread_bound(q: u64, k: usize, n: usize) -> u64 {
    assert!(k >= 1 && k < n, "partial_spread_bound needs 1 <= k < n");
    let num = (q as u128).pow(n as u32) - 1;
    let den = (q as u128).pow(k as u32) - 1;
    (num / den) as u64
}

/// Builds the field-reduction `k`-spread of F_q^n.
pub fn build_spread(field: &PrimePowerField, k: usize, n: usize) -> Result<Spread> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisor { k, n });
    }
    if k == n {
        return Err(Error::NotDivisor { k, n });
    }
    let s = n / k;
    let q = field.q() as u64;
    let ext_order = q
        .checked_pow(k as u32)
        .filter(|&v| v <= crate::gf::MAX_FIELD_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{k}")))?;
    let size = (q as u128).checked_pow(n as u32).map(|v| (v - 1) / (ext_order as u128 - 1));
    match size {
        Some(sz) if sz <= MAX_SPREAD_MEMBERS as u128 => {}
        _ => return Err(Error::TooLarge(format!("spread of F_{q}^{n} by {k}-spaces"))),
    }

    let companion = field.default_companion_matrix(k)?;
    let identity = MatrixFq::identity(field, k);
    let zero = MatrixFq::zeros(field, k, k);
    // GF(q^k) as F_q[M]: M^1, ..., M^{q^k - 1} = I, then 0.
    let mut elements = Vec::with_capacity(ext_order as usize);
    let mut power = companion.clone();
    for _ in 1..ext_order {
        elements.push(power.clone());
        power = power.mul(&companion)?;
    }
    elements.push(zero.clone());

    let mut generators = Vec::new();
    for lead in 0..s {
        let tail = s - 1 - lead;
        let combos = ext_order.pow(tail as u32);
        for idx in 0..combos {
            // First tail coordinate varies slowest.
            let mut digits = vec![0usize; tail];
            let mut t = idx;
            for d in digits.iter_mut().rev() {
                *d = (t % ext_order) as usize;
                t /= ext_order;
            }
            let mut g = MatrixFq::zeros(field, k, 0);
            for _ in 0..lead {
                g = g.hstack(&zero)?;
            }
            g = g.hstack(&identity)?;
            for &d in &digits {
                g = g.hstack(&elements[d])?;
            }
            generators.push(g);
        }
    }
    let members = generators.iter().map(Subspace::from_matrix).collect();
    Ok(Spread { field: field.clone(), n, k, members, generators })
}

impl Spread {
    /// Wraps arbitrary generators without validation; see [`verify_spread`].
    pub fn from_generators(field: &PrimePowerField, n: usize, k: usize, generators: Vec<MatrixFq>) -> Result<Spread> {
        for g in &generators {
            if g.rows() != k || g.cols() != n {
                return Err(Error::ShapeMismatch(format!("generator is {}x{}, expected {k}x{n}", g.rows(), g.cols())));
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let members = generators.iter().map(Subspace::from_matrix).collect();
        Ok(Spread { field: field.clone(), n, k, members, generators })
    }

    /// Reads a type-`(k)` flag code as a spread candidate.
    pub fn from_code(code: &FlagCode) -> Result<Spread> {
        let ty = code.flag_type();
        if ty.len() != 1 {
            return Err(Error::Unsupported(format!("a type-(k) code, got type ({ty})")));
        }
        let generators = code.flags().iter().map(|f| f.generator().clone()).collect();
        Self::from_generators(code.field(), ty.ambient(), ty.last(), generators)
    }

    /// The spread as a type-`(k)` flag code.
    pub fn to_code(&self) -> Result<FlagCode> {
        let ty = FlagType::new(vec![self.k], self.n)?;
        let flags = self
            .generators
            .iter()
            .map(|g| crate::flags::Flag::from_generator(g, ty.clone()))
            .collect::<Result<Vec<_>>>()?;
        FlagCode::new(flags, Provenance::DivisorType { spread_dim: self.k })
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_planar(&self) -> bool {
        self.n == 2 * self.k
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn generators(&self) -> &[MatrixFq] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Replaces one generator, for building deliberately broken spreads in tests.
    pub fn with_generator(&self, i: usize, generator: MatrixFq) -> Result<Spread> {
        let mut gens = self.generators.clone();
        if i >= gens.len() {
            return Err(Error::IndexOutOfRange { index: i, valid: format!("0..{}", gens.len()) });
        }
        gens[i] = generator;
        Self::from_generators(&self.field, self.n, self.k, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub nonzero_vectors: usize,
    pub uncovered: usize,
    pub multiply_covered: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadReport {
    pub n: usize,
    pub k: usize,
    pub expected_size: u64,
    pub size: usize,
    /// Members whose generator is not of rank `k`.
    pub rank_deficient: Vec<usize>,
    /// Pairs with a nonzero intersection.
    pub overlapping_pairs: Vec<(usize, usize)>,
    /// Planar case only: pairs whose sum is not the whole space.
    pub non_spanning_pairs: Vec<(usize, usize)>,
    /// Exhaustive vector cover, when `q^n` is small enough.
    pub coverage: Option<Coverage>,
}

impl SpreadReport {
    pub fn passed(&self) -> bool {
        self.size as u64 == self.expected_size
            && self.rank_deficient.is_empty()
            && self.overlapping_pairs.is_empty()
            && self.non_spanning_pairs.is_empty()
            && self.coverage.as_ref().is_none_or(|c| c.uncovered == 0 && c.multiply_covered == 0)
    }
}

/// Checks size, pairwise trivial intersections, planar full sums and (at desk
/// scale) the exact partition of nonzero vectors.
pub fn verify_spread(spread: &Spread) -> SpreadReport {
    let q = spread.field.q() as u64;
    let (n, k) = (spread.n, spread.k);
    let expected_size = if k >= 1 && k < n && n % k == 0 { partial_spread_bound(q, k, n) } else { 0 };
    let rank_deficient = spread.generators.iter().enumerate().filter(|(_, g)| g.rank() != k).map(|(i, _)| i).collect();
    let mut overlapping_pairs = Vec::new();
    let mut non_spanning_pairs = Vec::new();
    for i in 0..spread.len() {
        for j in i + 1..spread.len() {
            let (a, b) = (&spread.members[i], &spread.members[j]);
            let sum = rank_of_stack(a.basis(), b.basis()).expect("same ambient space");
            if a.dim() + b.dim() - sum != 0 {
                overlapping_pairs.push((i, j));
            }
            if spread.is_planar() && sum != n {
                non_spanning_pairs.push((i, j));
            }
        }
    }
    let coverage = q.checked_pow(n as u32).filter(|&v| v <= DESK_BOUND).map(|total| {
        let mut hits = vec![0u32; total as usize];
        for m in &spread.members {
            for v in m.vectors().expect("desk scale") {
                hits[vector_index(&v, q as u32)] += 1;
            }
        }
        let nonzero = &hits[1..];
        Coverage {
            nonzero_vectors: nonzero.len(),
            uncovered: nonzero.iter().filter(|&&h| h == 0).count(),
            multiply_covered: nonzero.iter().filter(|&&h| h > 1).count(),
        }
    });
    SpreadReport {
        n,
        k,
        expected_size,
        size: spread.len(),
        rank_deficient,
        overlapping_pairs,
        non_spanning_pairs,
        coverage,
    }
}

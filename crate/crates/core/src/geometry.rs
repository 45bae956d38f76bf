//! Subspaces of F_q^n as canonical values.

use std::fmt;

use crate::error::{Error, Result};
use crate::flags::{Flag, FlagType};
use crate::gf::PrimePowerField;
use crate::linalg::MatrixFq;

/// Largest number of vectors (`q^n`) the exhaustive enumerators will touch.
pub const DESK_BOUND: u64 = 1 << 16;

/// A subspace of F_q^n, stored as its RREF basis without zero rows.
///
/// Equality and hashing are equality of the canonical basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: MatrixFq,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.basis.to_rows())
    }
}

impl Subspace {
    /// Row space of `m`.
    pub fn from_matrix(m: &MatrixFq) -> Subspace {
        let r = m.rref();
        Subspace { basis: r.matrix.take_rows(r.rank) }
    }

    pub fn from_rows(field: &PrimePowerField, n: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        Ok(Self::from_matrix(&MatrixFq::from_rows(field, n, rows)?))
    }

    pub fn zero(field: &PrimePowerField, n: usize) -> Subspace {
        Subspace { basis: MatrixFq::zeros(field, 0, n) }
    }

    pub fn whole(field: &PrimePowerField, n: usize) -> Subspace {
        Subspace { basis: MatrixFq::identity(field, n) }
    }

    /// Span of standard basis vectors, 1-based indices (`e1`, `e2`, ...).
    pub fn span_of_unit_vectors(field: &PrimePowerField, n: usize, idx: &[usize]) -> Subspace {
        let rows: Vec<Vec<u32>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![0; n];
                v[i - 1] = 1;
                v
            })
            .collect();
        Self::from_rows(field, n, &rows).expect("unit vectors")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn field(&self) -> &PrimePowerField {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&self.basis.stack(&other.basis)?))
    }

    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.basis.stack(&other.basis)?.rank())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if other.dim() > self.dim() {
            self.check_ambient(other)?;
            return Ok(false);
        }
        Ok(self.sum_dim(other)? == self.dim())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let row = MatrixFq::from_flat(self.field(), 1, v.len(), v.to_vec()).expect("vector");
        self.basis.stack(&row).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    /// `dim(U+V) - dim(U∩V) = 2 dim(U+V) - dim U - dim V`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum_dim(other)?;
        Ok(2 * s - self.dim() - other.dim())
    }

    /// Every vector of the subspace, enumerated by coefficient tuples.
    pub fn vectors(&self) -> Result<Vec<Vec<u32>>> {
        let q = self.field().q() as u64;
        let count = q
            .checked_pow(self.dim() as u32)
            .filter(|&c| c <= DESK_BOUND)
            .ok_or_else(|| Error::TooLarge(format!("{q}^{} vectors", self.dim())))?;
        let mut coeffs = vec![0u32; self.dim()];
        let mut out = Vec::with_capacity(count as usize);
        for mut idx in 0..count {
            for c in coeffs.iter_mut() {
                *c = (idx % q) as u32;
                idx /= q;
            }
            out.push(self.basis.apply_row(&coeffs));
        }
        Ok(out)
    }

    /// All `d`-dimensional subspaces of this subspace.
    pub fn subspaces_of_dim(&self, d: usize) -> Result<Vec<Subspace>> {
        if d > self.dim() {
            return Ok(Vec::new());
        }
        if self.dim() == 0 {
            return Ok(vec![self.clone()]);
        }
        let coords = enumerate_grassmannian(self.field(), self.dim(), d)?;
        coords.iter().map(|c| Ok(Self::from_matrix(&c.basis.mul(&self.basis)?))).collect()
    }

    /// All subspaces of this subspace, by increasing dimension.
    pub fn all_subspaces(&self) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for d in 0..=self.dim() {
            out.extend(self.subspaces_of_dim(d)?);
        }
        Ok(out)
    }
}

/// Subspace distance `d_S(U, V)`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    u.distance(v)
}

/// Index of a vector as a base-`q` integer, first coordinate least significant.
pub fn vector_index(v: &[u32], q: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

fn check_desk(field: &PrimePowerField, n: usize) -> Result<()> {
    let q = field.q() as u64;
    match q.checked_pow(n as u32) {
        Some(v) if v <= DESK_BOUND => Ok(()),
        _ => Err(Error::TooLarge(format!("{q}^{n} exceeds the enumeration bound {DESK_BOUND}"))),
    }
}

fn combinations(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < j - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, j, &mut Vec::with_capacity(j), &mut out);
    out
}

/// All `j`-dimensional subspaces of F_q^n, sorted lexicographically by RREF entries.
pub fn enumerate_grassmannian(field: &PrimePowerField, n: usize, j: usize) -> Result<Vec<Subspace>> {
    check_desk(field, n)?;
    if j > n {
        return Ok(Vec::new());
    }
    let q = field.q() as u64;
    let mut out = Vec::new();
    for pivots in combinations(n, j) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut template = MatrixFq::zeros(field, j, n);
        for (r, &p) in pivots.iter().enumerate() {
            template.set(r, p, 1);
        }
        for mut idx in 0..q.pow(free.len() as u32) {
            let mut m = template.clone();
            for &(r, c) in &free {
                m.set(r, c, (idx % q) as u32);
                idx /= q;
            }
            out.push(Subspace { basis: m });
        }
    }
    out.sort();
    Ok(out)
}

/// All full flags of F_q^n in a deterministic order.
pub fn enumerate_full_flags(field: &PrimePowerField, n: usize) -> Result<Vec<Flag>> {
    crate::flags::enumerate_flags(field, &FlagType::full(n)?)
}

/// Gaussian binomial coefficient `[n choose j]_q`.
pub fn gaussian_binomial(q: u64, n: usize, j: usize) -> u64 {
    if j > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..j {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimePowerField {
        PrimePowerField::with_default_modulus(2, 1).unwrap()
    }

    #[test]
    fn from_matrix_collapses_duplicates() {
        let f = f2();
        let u = Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 1], vec![1, 0, 0, 1]]).unwrap();
        assert_eq!(u.dim(), 1);
        assert_eq!(u.basis().to_rows(), vec![vec![1, 0, 0, 1]]);
        let z = Subspace::from_matrix(&MatrixFq::zeros(&f, 3, 4));
        assert_eq!(z.dim(), 0);
        assert_eq!(z, Subspace::zero(&f, 4));
    }

    #[test]
    fn same_rowspace_same_subspace() {
        let f = f2();
        let a = Subspace::from_rows(&f, 4, &[vec![0, 1, 1, 1], vec![1, 0, 0, 1]]).unwrap();
        let s1 = Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 1], vec![0, 1, 1, 1]]).unwrap();
        assert_eq!(a, s1);
    }

    #[test]
    fn distances() {
        let f = f2();
        let e1 = Subspace::span_of_unit_vectors(&f, 4, &[1]);
        let e12 = Subspace::span_of_unit_vectors(&f, 4, &[1, 2]);
        assert_eq!(subspace_distance(&e1, &e1).unwrap(), 0);
        assert_eq!(subspace_distance(&e1, &e12).unwrap(), 1);

        let u = Subspace::span_of_unit_vectors(&f, 5, &[1, 2, 3]);
        let v = Subspace::from_rows(&f, 5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]).unwrap();
        assert_eq!(subspace_distance(&u, &v).unwrap(), 4);
        assert_eq!(subspace_distance(&e1, &u), Err(Error::AmbientMismatch(4, 5)));
    }

    #[test]
    fn containment() {
        let f = f2();
        let u = Subspace::span_of_unit_vectors(&f, 4, &[1, 2]);
        assert!(u.contains(&Subspace::zero(&f, 4)).unwrap());
        assert!(u.contains(&Subspace::span_of_unit_vectors(&f, 4, &[2])).unwrap());
        assert!(!u.contains(&Subspace::span_of_unit_vectors(&f, 4, &[3])).unwrap());
        assert!(!u.contains(&Subspace::whole(&f, 4)).unwrap());
        assert!(u.contains_vector(&[1, 1, 0, 0]));
        assert!(!u.contains_vector(&[1, 1, 1, 0]));
    }

    #[test]
    fn grassmannian_counts() {
        let f = f2();
        assert_eq!(enumerate_grassmannian(&f, 4, 1).unwrap().len(), 15);
        assert_eq!(enumerate_grassmannian(&f, 4, 2).unwrap().len(), 35);
        assert_eq!(enumerate_grassmannian(&f, 4, 0).unwrap().len(), 1);
        assert_eq!(enumerate_grassmannian(&f, 4, 4).unwrap().len(), 1);
        let f3 = PrimePowerField::with_default_modulus(3, 1).unwrap();
        for j in 0..=4 {
            assert_eq!(enumerate_grassmannian(&f3, 4, j).unwrap().len() as u64, gaussian_binomial(3, 4, j));
        }
        assert!(matches!(enumerate_grassmannian(&f, 17, 1), Err(Error::TooLarge(_))));
    }

    #[test]
    fn grassmannian_distinct_and_sorted() {
        let f = f2();
        let g = enumerate_grassmannian(&f, 5, 2).unwrap();
        for w in g.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(g.iter().all(|s| s.dim() == 2));
    }

    #[test]
    fn full_flag_count() {
        assert_eq!(enumerate_full_flags(&f2(), 4).unwrap().len(), 315);
    }

    #[test]
    fn metric_axioms_g2_2_4() {
        let f = f2();
        let g = enumerate_grassmannian(&f, 4, 2).unwrap();
        for a in &g {
            for b in &g {
                let dab = a.distance(b).unwrap();
                assert_eq!(dab, b.distance(a).unwrap());
                assert_eq!(dab == 0, a == b);
                assert!(dab <= 4);
                assert_eq!(a.intersection_dim(b).unwrap() + a.sum_dim(b).unwrap(), 4);
                for c in &g {
                    assert!(a.distance(c).unwrap() <= dab + b.distance(c).unwrap());
                }
            }
        }
    }

    #[test]
    fn distance_bound_lines_in_f2_5() {
        let f = f2();
        let g = enumerate_grassmannian(&f, 5, 1).unwrap();
        for a in &g {
            for b in &g {
                assert!(a.distance(b).unwrap() <= 2);
            }
        }
    }

    #[test]
    fn subspaces_of_a_plane() {
        let f = f2();
        let u = Subspace::span_of_unit_vectors(&f, 4, &[1, 3]);
        let all = u.all_subspaces().unwrap();
        assert_eq!(all.len(), 1 + 3 + 1);
        assert!(all.iter().all(|s| u.contains(s).unwrap()));
    }
}

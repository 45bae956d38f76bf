//! Dense matrices over GF(q) with exact Gauss-Jordan elimination.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::PrimePowerField;

/// Row-major dense matrix over a [`PrimePowerField`].
///
/// Entries are stored as encoded field elements. Zero-row matrices are
/// legal and stand for the basis of the zero subspace.
#[derive(Clone)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: PrimePowerField,
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for MatrixFq {}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatrixFq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixFq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFq{:?}", self.to_rows())
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`MatrixFq::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Reduced form, same shape as the input; zero rows at the bottom.
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixFq {
    pub fn zeros(field: &PrimePowerField, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &PrimePowerField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of encoded elements.
    ///
    /// `cols` is needed so an empty row list still has a width.
    pub fn from_rows(field: &PrimePowerField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if let Some(&v) = r.iter().find(|&&v| v >= field.q()) {
                return Err(Error::ElementOutOfRange { value: v as u64, q: field.q() as u64 });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data, field: field.clone() })
    }

    pub fn from_flat(field: &PrimePowerField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= field.q()) {
            return Err(Error::ElementOutOfRange { value: v as u64, q: field.q() as u64 });
        }
        Ok(Self { rows, cols, data, field: field.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.q());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, rhs: &MatrixFq) -> Result<MatrixFq> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// Square matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> MatrixFq {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form. Pivot = first nonzero entry in column order.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            if inv != 1 {
                for j in c..m.cols {
                    let v = f.mul(m.get(r, j), inv);
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// The first `j` rows (the `S^{(j)}` submatrix), `1 <= j <= rows`.
    pub fn row_prefix(&self, j: usize) -> Result<MatrixFq> {
        if j == 0 || j > self.rows {
            return Err(Error::IndexOutOfRange { index: j, valid: format!("1..={}", self.rows) });
        }
        Ok(self.take_rows(j))
    }

    /// First `j` rows without range checks beyond `j <= rows`; `j = 0` gives an empty matrix.
    pub(crate) fn take_rows(&self, j: usize) -> MatrixFq {
        Self { rows: j, cols: self.cols, data: self.data[..j * self.cols].to_vec(), field: self.field.clone() }
    }

    /// Vertical concatenation, `self` above `other`.
    pub fn stack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("stacking {} columns on {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    /// Concatenation side by side, `[self | other]`.
    pub fn hstack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("joining {} rows with {} rows", self.rows, other.rows)));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Self { rows: self.rows, cols: self.cols + other.cols, data, field: self.field.clone() })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, coeffs: &[u32]) -> Vec<u32> {
        assert_eq!(coeffs.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &a) in coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }
}

/// `rank([a; b])`, the dimension of the sum of the two row spaces.
pub fn rank_of_stack(a: &MatrixFq, b: &MatrixFq) -> Result<usize> {
    Ok(a.stack(b)?.rank())
}

//! Dense row-major matrices over a word-sized prime field.
//!
//! Elimination has two kernels. For `p < 2^32` row updates accumulate
//! unreduced products in `u64` and reduce only when the accumulated bound
//! `p + k*(p-1)^2` would overflow; with a 15-bit prime that never happens
//! during a whole elimination. Larger primes reduce every update using a
//! precomputed Shoup quotient for the row multiplier.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.field.modulus())?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds from residues, reducing each entry.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(v);
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, &reduced)
    }

    /// Entries drawn uniformly from `[0, p)` by ChaCha8 seeded with `seed`.
    pub fn random(field: PrimeField, rows: usize, cols: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = field.modulus();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends a row of residues (entries must already be reduced).
    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        debug_assert!(row.iter().all(|&v| v < self.field.modulus()));
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stack: {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation.
    pub fn augment(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "augment: {} vs {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn multiply(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiply: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.modulus() as u128;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u128; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &lhs) in self.row(r).iter().enumerate() {
                if lhs == 0 {
                    continue;
                }
                for (a, &rhs) in acc.iter_mut().zip(other.row(k)) {
                    // p < 2^62, so 2^127 / p^2 >= 8 products fit before this trips
                    *a += lhs as u128 * rhs as u128;
                    if *a >= 1 << 126 {
                        *a %= p;
                    }
                }
            }
            for (o, a) in out.row_mut(r).iter_mut().zip(&acc) {
                *o = (*a % p) as u64;
            }
        }
        Ok(out)
    }

    fn check_field(&self, other: &FpMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "fields differ: F_{} vs F_{}",
                self.field.modulus(),
                other.field.modulus()
            )));
        }
        Ok(())
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Brings `self` to reduced row-echelon form, dropping the zero rows.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let pivots = self.eliminate(true);
        self.truncate_rows(pivots.len());
        pivots
    }

    /// Brings `self` to (non-reduced) row-echelon form, dropping the zero rows.
    pub fn echelon_in_place(&mut self) -> Vec<usize> {
        let pivots = self.eliminate(false);
        self.truncate_rows(pivots.len());
        pivots
    }

    /// Echelon form followed by back-substitution on the non-pivot columns only.
    /// Returns the pivot columns, the free columns and the `rank x free` block
    /// of the reduced row-echelon form; `self` is left in echelon form.
    pub fn rref_free_block(&mut self) -> (Vec<usize>, Vec<usize>, FpMatrix) {
        let pivots = self.echelon_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let (rank, nf) = (pivots.len(), free.len());
        let p = self.field.modulus();
        let mut out = FpMatrix::zeros(self.field, rank, nf);
        let mut acc = vec![0u64; nf];
        let small = p < 1 << 32;
        let sq = (p - 1).saturating_mul(p - 1);
        let cap = (u64::MAX - p).checked_div(sq).unwrap_or(u64::MAX);
        for r in (0..rank).rev() {
            for (k, &f) in free.iter().enumerate() {
                acc[k] = self.get(r, f);
            }
            let mut pending = 0u64;
            for r2 in r + 1..rank {
                let g = self.get(r, pivots[r2]);
                if g == 0 {
                    continue;
                }
                let g = p - g;
                let src = &out.data[r2 * nf..(r2 + 1) * nf];
                if small {
                    for (a, &s) in acc.iter_mut().zip(src) {
                        *a += g * s;
                    }
                    pending += 1;
                    if pending >= cap {
                        acc.iter_mut().for_each(|a| *a %= p);
                        pending = 0;
                    }
                } else {
                    let g_shoup = (((g as u128) << 64) / p as u128) as u64;
                    for (a, &s) in acc.iter_mut().zip(src) {
                        let q = ((g_shoup as u128 * s as u128) >> 64) as u64;
                        let mut prod = g.wrapping_mul(s).wrapping_sub(q.wrapping_mul(p));
                        if prod >= p {
                            prod -= p;
                        }
                        let sum = *a + prod;
                        *a = if sum >= p { sum - p } else { sum };
                    }
                }
            }
            for (k, a) in acc.iter().enumerate() {
                out.data[r * nf + k] = a % p;
            }
        }
        (pivots, free, out)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Columns form a basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace_basis(&self) -> FpMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = FpMatrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.data[f * free.len() + k] = 1 % self.field.modulus();
            for (row, &pc) in pivots.iter().enumerate() {
                basis.data[pc * free.len() + k] = self.field.neg(r.get(row, f));
            }
        }
        basis
    }

    /// Restriction to the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            let src = self.row(r);
            for (k, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + k] = src[c];
            }
        }
        out
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.cols);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Gauss(-Jordan) elimination; returns pivot columns. Pivot rows end up
    /// first and normalized, all entries reduced.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        if self.field.modulus() < 1 << 32 {
            self.eliminate_lazy(full)
        } else {
            self.eliminate_shoup(full)
        }
    }

    fn eliminate_lazy(&mut self, full: bool) -> Vec<usize> {
        let p = self.field.modulus();
        let (rows, cols) = (self.rows, self.cols);
        let sq = (p - 1) * (p - 1);
        let cap = (u64::MAX - p).checked_div(sq).unwrap_or(u64::MAX);
        let mut pending = 0u64;
        let mut piv = vec![0u32; cols];
        let mut pivots = Vec::new();
        let mut pr = 0;

        for c in 0..cols {
            if pr == rows {
                break;
            }
            let mut found = None;
            for r in pr..rows {
                let v = self.data[r * cols + c] % p;
                self.data[r * cols + c] = v;
                if v != 0 {
                    found = Some(r);
                    break;
                }
            }
            let Some(r) = found else { continue };
            self.swap_rows(pr, r);

            let inv = self.field.inv(self.data[pr * cols + c]);
            for k in c..cols {
                let v = (self.data[pr * cols + k] % p) * inv % p;
                self.data[pr * cols + k] = v;
                piv[k] = v as u32;
            }

            let start = if full { 0 } else { pr + 1 };
            for j in start..rows {
                if j == pr {
                    continue;
                }
                let row = &mut self.data[j * cols..(j + 1) * cols];
                let v = row[c] % p;
                if v == 0 {
                    row[c] = 0;
                    continue;
                }
                let g = (p - v) as u32 as u64;
                for (t, &s) in row[c..].iter_mut().zip(&piv[c..]) {
                    *t += g * s as u64;
                }
                row[c] = 0;
            }

            pending += 1;
            if pending >= cap {
                for j in 0..rows {
                    for t in &mut self.data[j * cols + c + 1..(j + 1) * cols] {
                        *t %= p;
                    }
                }
                pending = 0;
            }
            pivots.push(c);
            pr += 1;
        }
        for t in self.data.iter_mut() {
            *t %= p;
        }
        pivots
    }

    fn eliminate_shoup(&mut self, full: bool) -> Vec<usize> {
        let field = self.field;
        let p = field.modulus();
        let (rows, cols) = (self.rows, self.cols);
        let mut piv = vec![0u64; cols];
        let mut pivots = Vec::new();
        let mut pr = 0;

        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(r) = (pr..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            self.swap_rows(pr, r);

            let inv = field.inv(self.data[pr * cols + c]);
            for k in c..cols {
                let v = field.mul(self.data[pr * cols + k], inv);
                self.data[pr * cols + k] = v;
                piv[k] = v;
            }

            let start = if full { 0 } else { pr + 1 };
            for j in start..rows {
                if j == pr {
                    continue;
                }
                let row = &mut self.data[j * cols..(j + 1) * cols];
                let v = row[c];
                if v == 0 {
                    continue;
                }
                let g = p - v;
                let g_shoup = (((g as u128) << 64) / p as u128) as u64;
                for (t, &s) in row[c..].iter_mut().zip(&piv[c..]) {
                    let q = ((g_shoup as u128 * s as u128) >> 64) as u64;
                    let mut prod = g.wrapping_mul(s).wrapping_sub(q.wrapping_mul(p));
                    if prod >= p {
                        prod -= p;
                    }
                    let sum = *t + prod;
                    *t = if sum >= p { sum - p } else { sum };
                }
                row[c] = 0;
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }
}

//! Dense matrices over GF(q) with reduced row echelon form and kernels.

use crate::field::FieldCtx;
use crate::{Error, Result};

/// A rows x cols matrix over a fixed finite field, stored row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FqMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of Gaussian elimination: the unique reduced row echelon form with
/// zero rows removed, together with the rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn zero(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        FqMatrix { ctx, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(ctx: FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape("rows of unequal length".into()));
            }
            for &v in row {
                if !ctx.is_element(v) {
                    return Err(Error::Parameter(format!("{v} is not an element of {ctx}")));
                }
                data.push(v);
            }
        }
        Ok(FqMatrix { ctx, rows: rows.len(), cols, data })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(self.ctx.is_element(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Vertical concatenation; operands must share the field and width.
    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.ctx != other.ctx || self.cols != other.cols {
            return Err(Error::AmbientMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix { ctx: self.ctx, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zero(self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Entrywise difference, used by the rank distance.
    pub fn sub(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.ctx != other.ctx || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::AmbientMismatch);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Ok(FqMatrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form with zero rows removed. Idempotent:
    /// `m.rref().matrix.rref().matrix == m.rref().matrix`.
    pub fn rref(&self) -> Rref {
        let ctx = self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(src, c);
                    let b = m.get(pivot_row, c);
                    m.set(src, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            let inv = ctx.inv(m.get(pivot_row, col)).expect("pivot entry is nonzero");
            if inv != 1 {
                for c in col..m.cols {
                    let v = m.get(pivot_row, c);
                    m.set(pivot_row, c, ctx.mul(v, inv));
                }
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = ctx.sub(m.get(r, c), ctx.mul(factor, m.get(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the right kernel {x : M x = 0}, one basis vector
    /// per row, itself in reduced row echelon form.
    pub fn null_space(&self) -> FqMatrix {
        let ctx = self.ctx;
        let reduced = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !reduced.pivots.contains(c)).collect();
        if free.is_empty() {
            return FqMatrix::zero(ctx, 0, n);
        }
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &p) in reduced.pivots.iter().enumerate() {
                v[p] = ctx.neg(reduced.matrix.get(i, f));
            }
            rows.push(v);
        }
        let kernel = FqMatrix::from_rows(ctx, &rows).expect("kernel rows are well formed");
        kernel.rref().matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldCtx {
        FieldCtx::new(2, 1).unwrap()
    }

    #[test]
    fn rref_identity_fixed_point() {
        let id = FqMatrix::identity(gf2(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_elimination() {
        let m = FqMatrix::from_rows(gf2(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, FqMatrix::identity(gf2(), 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_drops_duplicate_rows() {
        let m = FqMatrix::from_rows(gf2(), &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row_vecs(), vec![vec![1, 1, 0]]);
    }

    #[test]
    fn rref_idempotent_gf3() {
        let gf3 = FieldCtx::new(3, 1).unwrap();
        let m = FqMatrix::from_rows(gf3, &[vec![2, 1, 0], vec![1, 2, 2], vec![0, 0, 1]]).unwrap();
        let r = m.rref();
        let r2 = r.matrix.rref();
        assert_eq!(r.matrix, r2.matrix);
        assert_eq!(r.rank, r2.rank);
    }

    #[test]
    fn null_space_dimensions() {
        let m = FqMatrix::from_rows(gf2(), &[vec![1, 0, 1, 0], vec![0, 1, 1, 1]]).unwrap();
        let ker = m.null_space();
        assert_eq!(ker.rows(), 2);
        // Every kernel row is annihilated by m.
        for kr in 0..ker.rows() {
            for mr in 0..m.rows() {
                let dot = (0..4).fold(0, |acc, c| {
                    gf2().add(acc, gf2().mul(m.get(mr, c), ker.get(kr, c)))
                });
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn zero_matrix_rref() {
        let m = FqMatrix::zero(gf2(), 2, 3);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.matrix.rows(), 0);
        assert_eq!(r.matrix.cols(), 3);
    }
}

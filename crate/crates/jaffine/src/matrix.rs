//! Dense matrices over a shared finite field: elimination, kernels,
//! products, and the small helpers the code/stabilizer layers need.

use crate::error::{validation, Result};
use crate::field::{Felt, FiniteField};
use std::sync::Arc;

#[derive(Clone)]
pub struct MatrixGF {
    pub field: Arc<FiniteField>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Felt>,
}

impl std::fmt::Debug for MatrixGF {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(fm, "{:?} matrix {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(r).iter().map(|x| x.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn zero(field: Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        MatrixGF {
            field,
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<FiniteField>, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<FiniteField>, rows: Vec<Vec<Felt>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return validation("ragged rows");
        }
        if rows
            .iter()
            .flatten()
            .any(|x| x.0 as u64 >= field.size)
        {
            return validation("matrix entry out of field range");
        }
        Ok(MatrixGF {
            rows: rows.len(),
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
            field,
        })
    }

    pub fn from_fn(
        field: Arc<FiniteField>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Felt,
    ) -> Self {
        let mut m = Self::zero(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Felt]> {
        self.data.chunks_exact(self.cols.max(1))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot column list.
    /// Zero rows sink to the bottom; the rank is `pivots.len()`.
    pub fn rref(&self) -> (MatrixGF, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.at(r, c)).unwrap();
            for cc in c..m.cols {
                m.set(r, cc, f.mul(m.at(r, cc), inv));
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c);
                    for cc in c..m.cols {
                        let v = f.sub(m.at(i, cc), f.mul(factor, m.at(r, cc)));
                        m.set(i, cc, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Drop all-zero rows (useful after rref).
    pub fn nonzero_rows(&self) -> MatrixGF {
        let rows: Vec<Vec<Felt>> = self
            .rows_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        MatrixGF::from_rows(self.field.clone(), rows).unwrap_or_else(|_| {
            MatrixGF::zero(self.field.clone(), 0, self.cols)
        })
    }

    /// Basis (as rows) of the right kernel {v : M v^T = 0}.
    pub fn right_kernel(&self) -> MatrixGF {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = MatrixGF::zero(f.clone(), free.len(), self.cols);
        for (kr, &fc) in free.iter().enumerate() {
            out.set(kr, fc, Felt::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(kr, pc, f.neg(r.at(pr, fc)));
            }
        }
        out
    }

    pub fn transpose(&self) -> MatrixGF {
        MatrixGF::from_fn(self.field.clone(), self.cols, self.rows, |r, c| self.at(c, r))
    }

    pub fn map(&self, mut f: impl FnMut(Felt) -> Felt) -> MatrixGF {
        MatrixGF {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != other.rows {
            return validation(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let f = self.field.clone();
        let mut out = MatrixGF::zero(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.at(r, c), f.mul(a, other.at(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rows of `self` on top of rows of `other`.
    pub fn vstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != other.cols {
            return validation("vstack column mismatch");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixGF {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// [self | other] side by side.
    pub fn hstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.rows != other.rows {
            return validation("hstack row mismatch");
        }
        let mut out = MatrixGF::zero(self.field.clone(), self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c));
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<MatrixGF> {
        if self.rows != self.cols {
            return validation("inverse of non-square matrix");
        }
        let n = self.rows;
        let aug = self.hstack(&MatrixGF::identity(self.field.clone(), n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return validation("matrix is singular");
        }
        Ok(MatrixGF::from_fn(self.field.clone(), n, n, |i, j| {
            r.at(i, n + j)
        }))
    }

    /// Reduce `word` in place modulo the row space; `self` must already be
    /// in reduced row echelon form with the given pivot columns.
    pub fn reduce_mod_rows(&self, pivots: &[usize], word: &mut [Felt]) {
        let f = &self.field;
        for (i, &pc) in pivots.iter().enumerate() {
            let coef = word[pc];
            if coef.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                word[c] = f.sub(word[c], f.mul(coef, self.at(i, c)));
            }
        }
    }

    pub fn row_space_contains(&self, word: &[Felt]) -> bool {
        assert_eq!(word.len(), self.cols);
        let (r, pivots) = self.rref();
        let mut w = word.to_vec();
        r.reduce_mod_rows(&pivots, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn row_space_eq(&self, other: &MatrixGF) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let (ra, pa) = self.rref();
        let (rb, pb) = other.rref();
        pa == pb
            && (0..pa.len()).all(|i| ra.row(i) == rb.row(i))
    }

    /// Rows of `extension` that are independent modulo the row space of
    /// `self`, in order. Stacking them under a basis of `self` spans
    /// rowspace(self) + rowspace(extension).
    pub fn complete_basis_from(&self, extension: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != extension.cols {
            return validation("basis completion column mismatch");
        }
        let mut acc = self.clone();
        let mut picked: Vec<Vec<Felt>> = Vec::new();
        let mut rank = acc.rank();
        for r in 0..extension.rows {
            let cand = MatrixGF::from_rows(self.field.clone(), vec![extension.row(r).to_vec()])?;
            let stacked = acc.vstack(&cand)?;
            let new_rank = stacked.rank();
            if new_rank > rank {
                picked.push(extension.row(r).to_vec());
                acc = stacked;
                rank = new_rank;
            }
        }
        MatrixGF::from_rows(self.field.clone(), picked)
            .map(|m| if m.rows == 0 { MatrixGF::zero(self.field.clone(), 0, self.cols) } else { m })
    }

    /// Entry digits for hashing / serialization (row-major indices).
    pub fn to_index_rows(&self) -> Vec<Vec<u32>> {
        self.rows_iter()
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect()
    }

    pub fn from_index_rows(field: Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| Felt(x)).collect())
                .collect(),
        )
    }
}

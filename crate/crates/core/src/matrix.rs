//! Dense matrices over an arbitrary scalar ring, with 1-based indexing
//! and the row/column deletion that produces minors.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::subset::VertexSubset;
use crate::{Ring, Vertex};

/// Row-major rectangular matrix. A 0x0 matrix is a legal value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("matrix rows have unequal lengths".into()));
        }
        let data: Vec<T> = rows.into_iter().flatten().collect();
        Ok(Self { rows: n_rows, cols: n_cols, data })
    }

    /// The 0x0 matrix.
    pub fn empty() -> Self {
        Self { rows: 0, cols: 0, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn offset(&self, i: Vertex, j: Vertex) -> usize {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "matrix index ({i},{j}) out of range for {}x{}",
            self.rows,
            self.cols
        );
        (i - 1) * self.cols + (j - 1)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    /// The submatrix with rows in `w` and columns in `u` deleted; remaining
    /// rows and columns keep their original relative order.
    pub fn minor(&self, w: &VertexSubset, u: &VertexSubset) -> Result<Matrix<T>> {
        if w.ambient() != self.rows || u.ambient() != self.cols {
            return Err(Error::Dimension(format!(
                "minor subsets sized for {}x{} applied to a {}x{} matrix",
                w.ambient(),
                u.ambient(),
                self.rows,
                self.cols
            )));
        }
        let keep_rows: Vec<Vertex> = w.complement();
        let keep_cols: Vec<Vertex> = u.complement();
        let mut data = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in &keep_rows {
            for &j in &keep_cols {
                data.push(self[(i, j)].clone());
            }
        }
        Ok(Matrix { rows: keep_rows.len(), cols: keep_cols.len(), data })
    }
}

impl<T: Ring> Matrix<T> {
    /// First column whose entries do not sum to zero, if any.
    pub fn unbalanced_column(&self) -> Result<Option<Vertex>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "column-sum test requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        for j in 1..=self.cols {
            let mut sum = T::zero();
            for i in 1..=self.rows {
                sum = sum + self[(i, j)].clone();
            }
            if !sum.is_zero() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// True iff every column sums to exactly zero.
    pub fn is_semi_laplacian(&self) -> Result<bool> {
        Ok(self.unbalanced_column()?.is_none())
    }
}

impl<T> Index<(Vertex, Vertex)> for Matrix<T> {
    type Output = T;

    /// 1-based entry access: `m[(i, j)]` is the entry in row i, column j.
    fn index(&self, (i, j): (Vertex, Vertex)) -> &T {
        &self.data[self.offset(i, j)]
    }
}

impl<T> IndexMut<(Vertex, Vertex)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (Vertex, Vertex)) -> &mut T {
        let k = self.offset(i, j);
        &mut self.data[k]
    }
}

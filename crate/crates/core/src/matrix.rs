//! Dense row-major matrices, rank and left null spaces.

use std::fmt;

use crate::error::Error;
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from a list of equally long rows. An empty list gives a 0 x `cols` matrix.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, Error> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(DenseMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Builds from columns of length `rows`.
    pub fn from_columns(columns: Vec<Vec<T>>, rows: usize) -> Result<Self, Error> {
        let cols = columns.len();
        for c in &columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in &columns {
                entries.push(c[i].clone());
            }
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[DenseMatrix<T>]) -> Result<Self, Error> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut columns = Vec::new();
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: b.rows,
                });
            }
            columns.extend((0..b.cols).map(|j| b.column(j)));
        }
        Self::from_columns(columns, rows)
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let columns = perm.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(columns, self.rows).expect("column lengths agree")
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.entries[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-echelon elimination; returns the rank. Does not touch the input.
pub(crate) fn gaussian_rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    let mut a: Vec<Vec<F::Elem>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = field.inv(&a[rank][col]).expect("pivot is nonzero");
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = field.mul(&row[col], &inv);
            for j in col..cols {
                let t = field.mul(&factor, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of `m` over `field`.
pub fn rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    field.rank(m)
}

/// Reduced row-echelon form in place; returns pivot columns.
pub fn rref<F: Field>(field: &F, a: &mut [Vec<F::Elem>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(r, piv);
        let inv = field.inv(&a[r][col]).expect("pivot is nonzero");
        for x in &mut a[r][col..cols] {
            *x = field.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn null_space<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let cols = m.cols();
    let mut a: Vec<Vec<F::Elem>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref(field, &mut a, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&a[r][free]);
            }
            v
        })
        .collect()
}

/// Basis of `{v : v m = 0}`; its size is `rows - rank(m)`.
pub fn left_null_space<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    null_space(field, &m.transpose())
}

/// Row vector times matrix.
pub fn vec_mat<F: Field>(field: &F, v: &[F::Elem], m: &DenseMatrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.rows(), "vector length must equal row count");
    (0..m.cols())
        .map(|j| {
            v.iter().enumerate().fold(field.zero(), |acc, (i, x)| {
                field.add(&acc, &field.mul(x, m.get(i, j)))
            })
        })
        .collect()
}

//! Dense matrices over a `Ring`, including the empty shapes.
//!
//! Matrices carry their ring value and use row-major storage. Zero-row and
//! zero-column matrices are first-class citizens: identities, products and
//! stacking all behave, which keeps the zero module from being a special
//! case anywhere downstream.

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Mat<R> {
    pub fn zero(ring: &R, rows: usize, cols: usize) -> Self {
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ring: ring.clone(), rows, cols, data }
    }

    /// Build from rows of `i64` literals; handy in tests and gallery code.
    pub fn from_i64(ring: &R, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(ring, r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<R::Elem>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn from_columns(ring: &R, rows: usize, cols: &[Vec<R::Elem>]) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch in matrix product");
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let ring = &self.ring;
        Self::from_fn(ring, self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let ring = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in matrix sum");
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.ring.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in matrix difference");
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.ring.sub(self.at(i, j), other.at(i, j))
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| self.ring.neg(self.at(i, j)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| self.ring.mul(c, self.at(i, j)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation (self on top).
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        Self::from_fn(&self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(
            &self.ring,
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.at(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.at(i - self.rows, j - self.cols).clone()
                } else {
                    self.ring.zero()
                }
            },
        )
    }

    /// The submatrix of the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    /// The submatrix of the given rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    pub(crate) fn add_multiple_of_row(&mut self, target: usize, source: usize, c: &R::Elem) {
        debug_assert_ne!(target, source);
        for j in 0..self.cols {
            let v = self.ring.add(self.at(target, j), &self.ring.mul(c, self.at(source, j)));
            self.set(target, j, v);
        }
    }

    /// col[target] += c * col[source]
    pub(crate) fn add_multiple_of_col(&mut self, target: usize, source: usize, c: &R::Elem) {
        debug_assert_ne!(target, source);
        for i in 0..self.rows {
            let v = self.ring.add(self.at(i, target), &self.ring.mul(c, self.at(i, source)));
            self.set(i, target, v);
        }
    }

    /// (row[a], row[b]) ← (x·row[a] + y·row[b], z·row[a] + w·row[b])
    pub(crate) fn transform_rows(
        &mut self,
        a: usize,
        b: usize,
        x: &R::Elem,
        y: &R::Elem,
        z: &R::Elem,
        w: &R::Elem,
    ) {
        debug_assert_ne!(a, b);
        for j in 0..self.cols {
            let (va, vb) = (self.at(a, j).clone(), self.at(b, j).clone());
            self.set(a, j, self.ring.add(&self.ring.mul(x, &va), &self.ring.mul(y, &vb)));
            self.set(b, j, self.ring.add(&self.ring.mul(z, &va), &self.ring.mul(w, &vb)));
        }
    }

    /// (col[a], col[b]) ← (x·col[a] + y·col[b], z·col[a] + w·col[b])
    pub(crate) fn transform_cols(
        &mut self,
        a: usize,
        b: usize,
        x: &R::Elem,
        y: &R::Elem,
        z: &R::Elem,
        w: &R::Elem,
    ) {
        debug_assert_ne!(a, b);
        for i in 0..self.rows {
            let (va, vb) = (self.at(i, a).clone(), self.at(i, b).clone());
            self.set(i, a, self.ring.add(&self.ring.mul(x, &va), &self.ring.mul(y, &vb)));
            self.set(i, b, self.ring.add(&self.ring.mul(z, &va), &self.ring.mul(w, &vb)));
        }
    }

    pub(crate) fn scale_row(&mut self, row: usize, c: &R::Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.at(row, j));
            self.set(row, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, col: usize, c: &R::Elem) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, self.at(i, col));
            self.set(i, col, v);
        }
    }
}

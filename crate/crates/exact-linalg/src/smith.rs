//! Smith normal form over any of the supported Euclidean rings, with full
//! transform bookkeeping.
//!
//! `smith(A)` produces `U, U⁻¹, V, V⁻¹` and the diagonal `D = U·A·V` where
//! the diagonal entries form a divisibility chain `d₁ | d₂ | …` of canonical
//! associates (positive over ℤ, `1` over a field). Pivoting is deterministic:
//! among nonzero candidates in the working submatrix the one of smallest
//! Euclidean size wins, scanning rows before columns, lowest index first —
//! over a field every nonzero entry ties, so the scan order alone decides.
//!
//! Keeping the inverses alongside the transforms costs a constant factor and
//! buys exact solving, kernel bases, image bases and determinants without a
//! second elimination pass.

use crate::mat::Mat;
use crate::ring::Ring;

#[derive(Debug, Clone)]
pub struct Smith<R: Ring> {
    pub d: Mat<R>,
    pub u: Mat<R>,
    pub u_inv: Mat<R>,
    pub v: Mat<R>,
    pub v_inv: Mat<R>,
    pub rank: usize,
    det_u: R::Elem,
    det_v: R::Elem,
}

struct Work<R: Ring> {
    ring: R,
    d: Mat<R>,
    u: Mat<R>,
    u_inv: Mat<R>,
    v: Mat<R>,
    v_inv: Mat<R>,
    det_u: R::Elem,
    det_v: R::Elem,
}

impl<R: Ring> Work<R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
        self.det_u = self.ring.neg(&self.det_u);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
        self.det_v = self.ring.neg(&self.det_v);
    }

    /// row[t] += c * row[s]
    fn row_op(&mut self, t: usize, s: usize, c: &R::Elem) {
        self.d.add_multiple_of_row(t, s, c);
        self.u.add_multiple_of_row(t, s, c);
        let neg = self.ring.neg(c);
        self.u_inv.add_multiple_of_col(s, t, &neg);
    }

    /// col[t] += c * col[s]
    fn col_op(&mut self, t: usize, s: usize, c: &R::Elem) {
        self.d.add_multiple_of_col(t, s, c);
        self.v.add_multiple_of_col(t, s, c);
        let neg = self.ring.neg(c);
        self.v_inv.add_multiple_of_row(s, t, &neg);
    }

    /// row[t] *= unit w
    fn scale_row(&mut self, t: usize, w: &R::Elem) {
        let w_inv = self.ring.unit_inv(w);
        self.d.scale_row(t, w);
        self.u.scale_row(t, w);
        self.u_inv.scale_col(t, &w_inv);
        self.det_u = self.ring.mul(&self.det_u, w);
    }

    /// Put `gcd(d[t][c], d[i][c])` at `(t, c)` and zero at `(i, c)` with one
    /// determinant-one transform on rows `t` and `i`. A single application
    /// replaces the whole quotient-remainder cascade for this entry, which
    /// keeps intermediate entries from snowballing.
    fn gcd_rows(&mut self, t: usize, i: usize, c: usize) {
        let va = self.d.at(t, c).clone();
        let vb = self.d.at(i, c).clone();
        let (g, x, y) = self.ring.ext_gcd(&va, &vb);
        let p = self.ring.exact_div(&vb, &g).expect("gcd divides");
        let q = self.ring.exact_div(&va, &g).expect("gcd divides");
        let neg_p = self.ring.neg(&p);
        // E = [[x, y], [-p, q]] acting on rows (t, i); det E = (x·va + y·vb)/g = 1.
        self.d.transform_rows(t, i, &x, &y, &neg_p, &q);
        self.u.transform_rows(t, i, &x, &y, &neg_p, &q);
        // U⁻¹ ← U⁻¹·E⁻¹ with E⁻¹ = [[q, -y], [p, x]], i.e. column ops.
        let neg_y = self.ring.neg(&y);
        self.u_inv.transform_cols(t, i, &q, &p, &neg_y, &x);
    }

    /// Column analogue: gcd of `d[r][t]` and `d[r][j]` lands at `(r, t)`,
    /// zero at `(r, j)`.
    fn gcd_cols(&mut self, t: usize, j: usize, r: usize) {
        let va = self.d.at(r, t).clone();
        let vb = self.d.at(r, j).clone();
        let (g, x, y) = self.ring.ext_gcd(&va, &vb);
        let p = self.ring.exact_div(&vb, &g).expect("gcd divides");
        let q = self.ring.exact_div(&va, &g).expect("gcd divides");
        let neg_p = self.ring.neg(&p);
        // Right-multiplication by E = [[x, -p], [y, q]] on columns (t, j).
        self.d.transform_cols(t, j, &x, &y, &neg_p, &q);
        self.v.transform_cols(t, j, &x, &y, &neg_p, &q);
        // V⁻¹ ← E⁻¹·V⁻¹ with E⁻¹ = [[q, p], [-y, x]], i.e. row ops.
        let neg_y = self.ring.neg(&y);
        self.v_inv.transform_rows(t, j, &q, &p, &neg_y, &x);
    }
}

pub fn smith<R: Ring>(a: &Mat<R>) -> Smith<R> {
    let ring = a.ring().clone();
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        ring: ring.clone(),
        d: a.clone(),
        u: Mat::identity(&ring, m),
        u_inv: Mat::identity(&ring, m),
        v: Mat::identity(&ring, n),
        v_inv: Mat::identity(&ring, n),
        det_u: ring.one(),
        det_v: ring.one(),
    };

    let mut t = 0;
    'step: while t < m.min(n) {
        'reduce: loop {
            // Deterministic pivot, re-chosen every pass: smallest Euclidean
            // size in the working submatrix, row-major scan, strict
            // improvement only, so ties keep the earliest position. Small
            // pivots keep elimination quotients (and hence fill-in) small.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if ring.is_zero(w.d.at(i, j)) {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if ring.pivot_cmp(w.d.at(i, j), w.d.at(pi, pj))
                                == std::cmp::Ordering::Less
                            {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'step; // remaining submatrix is zero
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            // Clear the pivot column: an exact-quotient row operation where
            // the pivot divides, one gcd transform (strictly shrinking the
            // pivot) where it does not.
            for i in t + 1..m {
                if ring.is_zero(w.d.at(i, t)) {
                    continue;
                }
                match ring.exact_div(w.d.at(i, t), w.d.at(t, t)) {
                    Some(q) => {
                        let c = ring.neg(&q);
                        w.row_op(i, t, &c);
                    }
                    None => w.gcd_rows(t, i, t),
                }
            }
            // Clear the pivot row. A gcd transform here mixes column t with
            // column j, which can refill the just-cleared part of column t —
            // but only while strictly shrinking the pivot, so looping back
            // terminates.
            let mut column_refilled = false;
            for j in t + 1..n {
                if ring.is_zero(w.d.at(t, j)) {
                    continue;
                }
                match ring.exact_div(w.d.at(t, j), w.d.at(t, t)) {
                    Some(q) => {
                        let c = ring.neg(&q);
                        w.col_op(j, t, &c);
                    }
                    None => {
                        w.gcd_cols(t, j, t);
                        column_refilled = true;
                    }
                }
            }
            if column_refilled && (t + 1..m).any(|i| !ring.is_zero(w.d.at(i, t))) {
                continue 'reduce;
            }
            // Row and column are clear; enforce that the pivot divides the
            // rest of the submatrix so the diagonal forms a chain. Merging
            // the offending row into row t plants a non-multiple next to the
            // pivot, so the next pass must shrink it.
            let mut offender: Option<usize> = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !ring.divides(w.d.at(t, t), w.d.at(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = ring.one();
                    w.row_op(t, i, &one);
                    continue 'reduce;
                }
                None => break 'reduce,
            }
        }

        // Normalize the pivot to its canonical associate.
        let unit = ring.canonicalizing_unit(w.d.at(t, t));
        if !(unit == ring.one()) {
            w.scale_row(t, &unit);
        }
        t += 1;
    }

    Smith {
        d: w.d,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
        det_u: w.det_u,
        det_v: w.det_v,
    }
}

impl<R: Ring> Smith<R> {
    /// The diagonal entries `d₁, …` up to `min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<R::Elem> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.at(i, i).clone())
            .collect()
    }

    /// One solution of `A·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let ring = self.d.ring();
        assert_eq!(b.len(), self.d.rows(), "rhs length mismatch");
        let c = self.u.mul_vec(b);
        let n = self.d.cols();
        let mut y = vec![ring.zero(); n];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                y[i] = ring.exact_div(ci, self.d.at(i, i))?;
            } else if !ring.is_zero(ci) {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Columnwise `solve`; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Mat<R>) -> Option<Mat<R>> {
        assert_eq!(rhs.rows(), self.d.rows(), "rhs row mismatch");
        let mut cols = Vec::with_capacity(rhs.cols());
        for j in 0..rhs.cols() {
            cols.push(self.solve(&rhs.column(j))?);
        }
        Some(Mat::from_columns(self.d.ring(), self.d.cols(), &cols))
    }

    /// A basis of `{x : A·x = 0}` as matrix columns (possibly none),
    /// Hermite-reduced so its entries don't inherit the elimination
    /// transform's growth.
    pub fn kernel_basis(&self) -> Mat<R> {
        let idx: Vec<usize> = (self.rank..self.d.cols()).collect();
        hermite_reduce_columns(&self.v.select_columns(&idx))
    }

    /// Independent columns spanning the column space (over ℤ: a lattice
    /// basis of the column span), Hermite-reduced. Before reduction,
    /// column `i` is `dᵢ ·` (column `i` of `U⁻¹`).
    pub fn image_basis(&self) -> Mat<R> {
        let ring = self.d.ring().clone();
        let m = self.d.rows();
        let raw = Mat::from_fn(&ring, m, self.rank, |i, j| {
            ring.mul(self.u_inv.at(i, j), self.d.at(j, j))
        });
        hermite_reduce_columns(&raw)
    }

    /// Determinant of the original (square) matrix.
    pub fn determinant(&self) -> R::Elem {
        let ring = self.d.ring();
        let n = self.d.rows();
        assert_eq!(n, self.d.cols(), "determinant of a non-square matrix");
        if self.rank < n {
            return ring.zero();
        }
        let mut det = ring.one();
        for i in 0..n {
            det = ring.mul(&det, self.d.at(i, i));
        }
        det = ring.mul(&det, &ring.unit_inv(&self.det_u));
        ring.mul(&det, &ring.unit_inv(&self.det_v))
    }
}

/// Canonical column form of a spanning matrix: `M·W` for unimodular `W`,
/// in column echelon with canonical pivots, entries left of each pivot
/// reduced modulo it (over a field: reduced column echelon form). The
/// column span — and for independent columns the basis property — is
/// preserved while the entry growth accumulated by elimination
/// transforms is shed; lattice bases should pass through here before
/// being handed to downstream solves.
pub fn hermite_reduce_columns<R: Ring>(m: &Mat<R>) -> Mat<R> {
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut pc = 0usize; // next pivot column
    for r in 0..rows {
        if pc >= cols {
            break;
        }
        // Sweep row r rightwards into a single gcd entry at (r, pc).
        for j in pc + 1..cols {
            if ring.is_zero(h.at(r, j)) {
                continue;
            }
            if ring.is_zero(h.at(r, pc)) {
                h.swap_cols(pc, j);
                continue;
            }
            let va = h.at(r, pc).clone();
            let vb = h.at(r, j).clone();
            match ring.exact_div(&vb, &va) {
                Some(q) => {
                    let c = ring.neg(&q);
                    h.add_multiple_of_col(j, pc, &c);
                }
                None => {
                    let (g, x, y) = ring.ext_gcd(&va, &vb);
                    let p = ring.exact_div(&vb, &g).expect("gcd divides");
                    let q = ring.exact_div(&va, &g).expect("gcd divides");
                    let neg_p = ring.neg(&p);
                    h.transform_cols(pc, j, &x, &y, &neg_p, &q);
                }
            }
        }
        if ring.is_zero(h.at(r, pc)) {
            continue; // no pivot in this row
        }
        let unit = ring.canonicalizing_unit(h.at(r, pc));
        if !(unit == ring.one()) {
            h.scale_col(pc, &unit);
        }
        // Size-reduce the entries left of the pivot.
        let pivot = h.at(r, pc).clone();
        for j in 0..pc {
            if ring.is_zero(h.at(r, j)) {
                continue;
            }
            let (q, _) = ring.div_rem(h.at(r, j), &pivot);
            if !ring.is_zero(&q) {
                let c = ring.neg(&q);
                h.add_multiple_of_col(j, pc, &c);
            }
        }
        pc += 1;
    }
    h
}

/// Kernel basis of `A` (columns).
pub fn kernel_basis<R: Ring>(a: &Mat<R>) -> Mat<R> {
    smith(a).kernel_basis()
}

/// Independent generating set of the column span of `A` (columns).
pub fn column_space_basis<R: Ring>(a: &Mat<R>) -> Mat<R> {
    smith(a).image_basis()
}

/// Exact determinant of a square matrix.
pub fn det<R: Ring>(a: &Mat<R>) -> R::Elem {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    smith(a).determinant()
}

/// Whether `A·x = b` has a solution.
pub fn solve<R: Ring>(a: &Mat<R>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    smith(a).solve(b)
}

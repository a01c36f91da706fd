//! Dense exact matrices and the Gaussian-elimination kernels every other
//! module reduces to: reduced row-echelon form, linear solving, kernels,
//! column spaces and quotient maps.
//!
//! Matrices are immutable after construction and all operations are pure,
//! so concurrent use is safe. Dimensions stay at desk scale, which is why
//! dense storage is used throughout.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

/// Result of `row_reduce`: the unique RREF, pivot columns, and the rank.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rref: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols));
        Mat {
            field,
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// Column vector from a flat slice.
    pub fn col_vec(field: FieldSpec, v: &[Scalar]) -> Self {
        Mat {
            field,
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.field.is_one(self.at(r, c))
                    } else {
                        self.field.is_zero(self.at(r, c))
                    }
                })
            })
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row_slice(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.add(self.at(r, c), other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.sub(self.at(r, c), other.at(r, c))
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.neg(self.at(r, c))
        })
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.mul(self.at(r, c), s)
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let f = self.field;
        Mat::from_fn(f, self.rows, other.cols, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if !f.is_zero(a) {
                    acc = f.add(&acc, &f.mul(a, other.at(k, c)));
                }
            }
            acc
        })
    }

    /// Apply to a flat vector (self.cols entries), returning self.rows entries.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !f.is_zero(a) {
                        acc = f.add(&acc, &f.mul(a, &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.field, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    /// Assemble a block matrix from a grid of blocks. Row/column counts must
    /// be consistent along each band.
    pub fn from_blocks(field: FieldSpec, blocks: &[Vec<Mat>]) -> Mat {
        if blocks.is_empty() || blocks[0].is_empty() {
            return Mat::zeros(field, 0, 0);
        }
        let row_heights: Vec<usize> = blocks.iter().map(|band| band[0].rows()).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols()).collect();
        let total_rows: usize = row_heights.iter().sum();
        let total_cols: usize = col_widths.iter().sum();
        let mut m = Mat::zeros(field, total_rows, total_cols);
        let mut r_off = 0;
        for (bi, band) in blocks.iter().enumerate() {
            let mut c_off = 0;
            for (bj, blk) in band.iter().enumerate() {
                assert_eq!(blk.rows(), row_heights[bi]);
                assert_eq!(blk.cols(), col_widths[bj]);
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        m.set(r_off + r, c_off + c, blk.at(r, c).clone());
                    }
                }
                c_off += blk.cols();
            }
            r_off += row_heights[bi];
        }
        m
    }

    /// The unique reduced row-echelon form, plus pivot columns and rank.
    pub fn row_reduce(&self) -> Rref {
        let f = self.field;
        let cols = self.cols;
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| self.row_slice(r).to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, pr);
            if !f.is_one(&rows[r][c]) {
                let inv = f.inv(&rows[r][c]).expect("pivot nonzero");
                for k in c..cols {
                    if !f.is_zero(&rows[r][k]) {
                        rows[r][k] = f.mul(&rows[r][k], &inv);
                    }
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !f.is_zero(&row[c]) {
                    let factor = std::mem::replace(&mut row[c], f.zero());
                    for k in (c + 1)..cols {
                        if !f.is_zero(&pivot_row[k]) {
                            row[k] = f.sub(&row[k], &f.mul(&factor, &pivot_row[k]));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            rref: Mat::from_rows(f, rows),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Solve `self * x = b` for all columns of `b` simultaneously, and
    /// return a kernel basis of `self`. The particular solution is absent
    /// when the system is inconsistent.
    pub fn solve_and_kernel(&self, b: &Mat) -> (Option<Mat>, Vec<Mat>) {
        assert_eq!(self.rows, b.rows, "right-hand side has wrong height");
        let f = self.field;
        let aug = self.hstack(b);
        let red = aug.row_reduce();
        // consistency: no pivot may fall in the b-columns
        let consistent = red.pivots.iter().all(|&p| p < self.cols);
        let pivots: Vec<usize> = red.pivots.iter().copied().filter(|&p| p < self.cols).collect();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let particular = if consistent {
            let mut x = Mat::zeros(f, self.cols, b.cols);
            for (ri, &p) in pivots.iter().enumerate() {
                for bc in 0..b.cols {
                    x.set(p, bc, red.rref.at(ri, self.cols + bc).clone());
                }
            }
            Some(x)
        } else {
            None
        };
        // kernel from the rref of self (the left block of the augmented rref)
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(red.rref.at(ri, free));
            }
            kernel.push(Mat::col_vec(f, &v));
        }
        (particular, kernel)
    }

    /// Kernel basis packed as the columns of one matrix (cols = nullity).
    pub fn kernel_matrix(&self) -> Mat {
        let (_, ker) = self.solve_and_kernel(&Mat::zeros(self.field, self.rows, 0));
        cols_to_mat(self.field, self.rows_of_kernel(), &ker)
    }

    fn rows_of_kernel(&self) -> usize {
        self.cols
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn column_space_basis(&self) -> Mat {
        let red = self.row_reduce();
        let mut cols = Vec::new();
        for &p in &red.pivots {
            cols.push(self.column(p));
        }
        Mat::from_fn(self.field, self.rows, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let (sol, _) = self.solve_and_kernel(&Mat::identity(self.field, self.rows));
        match sol {
            Some(x) if self.mul(&x).is_identity() => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Pack column vectors (each `rows × 1`) into one `rows × n` matrix.
pub fn cols_to_mat(field: FieldSpec, rows: usize, cols: &[Mat]) -> Mat {
    Mat::from_fn(field, rows, cols.len(), |r, c| cols[c].at(r, 0).clone())
}

/// Reduce a spanning set of flat vectors to an independent basis, packed as
/// matrix columns. The selection is deterministic (earliest spanning vectors
/// win).
pub fn span_basis(field: FieldSpec, dim: usize, vectors: &[Vec<Scalar>]) -> Mat {
    let m = Mat::from_fn(field, dim, vectors.len(), |r, c| vectors[c][r].clone());
    m.column_space_basis()
}

/// Does the column span of `basis` contain `v`?
pub fn span_contains(basis: &Mat, v: &[Scalar]) -> bool {
    let b = Mat::col_vec(basis.field(), v);
    basis.solve_and_kernel(&b).0.is_some()
}

/// Subspace equality via mutual rank checks.
pub fn subspace_eq(a: &Mat, b: &Mat) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = a.rank();
    let rb = b.rank();
    ra == rb && a.hstack(b).rank() == ra
}

/// For a subspace `sub` (columns independent) of an ambient space of
/// dimension `n`, return `(proj, section)` with `proj: K^n -> K^q`
/// surjective with kernel exactly the subspace, and `proj * section = id`.
pub fn quotient_maps(field: FieldSpec, n: usize, sub: &Mat) -> Result<(Mat, Mat)> {
    assert_eq!(sub.rows(), n);
    let k = sub.cols();
    if sub.rank() != k {
        return Err(Error::Invalid(
            "quotient_maps: subspace columns are dependent".into(),
        ));
    }
    // extend the subspace basis by standard basis vectors to a full basis
    let ext = sub.hstack(&Mat::identity(field, n));
    let red = ext.row_reduce();
    debug_assert_eq!(red.rank, n);
    let mut chosen: Vec<usize> = Vec::new(); // indices into identity part
    for &p in &red.pivots {
        if p >= k {
            chosen.push(p - k);
        }
    }
    debug_assert_eq!(chosen.len(), n - k);
    let mut full = sub.clone();
    let section_cols = chosen;
    let id = Mat::identity(field, n);
    for &c in &section_cols {
        full = full.hstack(&Mat::col_vec(field, &id.column(c)));
    }
    let inv = full.inverse().expect("extended basis is invertible");
    // proj = last n-k rows of inv
    let proj = Mat::from_fn(field, n - k, n, |r, c| inv.at(k + r, c).clone());
    let section = Mat::from_fn(field, n, n - k, |r, c| {
        if r == section_cols[c] {
            field.one()
        } else {
            field.zero()
        }
    });
    Ok((proj, section))
}

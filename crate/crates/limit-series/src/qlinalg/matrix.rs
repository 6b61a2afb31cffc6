//! Dense matrices with exact entries, acting on column vectors.

use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;
use super::QlinalgError;

/// A `rows x cols` matrix over a fixed field, row-major storage.
/// As a linear map it sends column vectors in `F^cols` to `F^rows`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, QlinalgError> {
        if entries.len() != rows * cols {
            return Err(QlinalgError::Shape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if !field.contains(e) {
                return Err(QlinalgError::FieldMismatch);
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Convenience constructor from integer rows, mostly for tests and fixtures.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &v in *row {
                entries.push(field.from_i64(v));
            }
        }
        Matrix::new(field, r, c, entries).expect("consistent shape")
    }

    pub fn from_rows_vec(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        Matrix::new(field, r, cols, entries).expect("consistent shape")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix product `self * other`; panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch in product");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() && !v[k].is_zero() {
                        acc = f.add(&acc, &f.mul(a, &v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
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

    /// Canonical basis of `{v : Mv = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let (rr, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let f = &self.field;
        let mut basis_rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rr.get(row_idx, fc));
            }
            basis_rows.push(v);
        }
        Subspace::from_rows(self.field, self.cols, basis_rows)
    }

    /// Canonical column space, a subspace of `F^rows`.
    pub fn image(&self) -> Subspace {
        let t = self.transpose();
        let rows: Vec<Vec<Scalar>> = (0..t.rows).map(|i| t.row(i).to_vec()).collect();
        Subspace::from_rows(self.field, self.rows, rows)
    }

    /// Rank, kernel and image in one pass over the same data.
    pub fn rank_kernel_image(&self) -> (usize, Subspace, Subspace) {
        let kernel = self.kernel();
        let image = self.image();
        let rank = self.cols - kernel.dim();
        debug_assert_eq!(rank, image.dim());
        (rank, kernel, image)
    }

    /// One particular solution of `Mx = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = &self.field;
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent system
        }
        let mut x = vec![f.zero(); self.cols];
        for (row_idx, &pc) in pivots.iter().enumerate() {
            x[pc] = rr.get(row_idx, self.cols).clone();
        }
        Some(x)
    }

    /// The image of a subspace of the source under this map.
    pub fn image_of_subspace(&self, s: &Subspace) -> Subspace {
        assert_eq!(s.ambient_dim(), self.cols, "ambient mismatch");
        let rows: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| self.apply(s.basis_row(i))).collect();
        Subspace::from_rows(self.field, self.rows, rows)
    }

    /// The preimage `{x : Mx in T}` of a subspace of the target.
    pub fn preimage_of_subspace(&self, t: &Subspace) -> Subspace {
        assert_eq!(t.ambient_dim(), self.rows, "ambient mismatch");
        // rows annihilating T, i.e. the kernel of T's basis as a map on columns
        let ann = t.basis_matrix().kernel();
        let ann_rows: Vec<Vec<Scalar>> = (0..ann.dim()).map(|i| ann.basis_row(i).to_vec()).collect();
        if ann_rows.is_empty() {
            return Subspace::full(self.field, self.cols);
        }
        let c = Matrix::from_rows_vec(self.field, self.rows, ann_rows);
        c.mul(self).kernel()
    }
}

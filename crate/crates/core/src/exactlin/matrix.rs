use std::fmt;

use num_traits::{One, Zero};

use super::{axpy, Scalar, Subspace, Vector};

/// A dense `rows × cols` matrix of rationals, stored row-major.
///
/// Linear maps act on column vectors: column `j` is the image of basis
/// vector `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "Matrix::from_rows: ragged row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let cols = columns.len();
        for c in columns {
            assert_eq!(c.len(), rows, "Matrix::from_columns: column length");
        }
        Self::from_fn(rows, cols, |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `self · v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "Matrix::apply: dimension mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *o += m * x;
                }
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "Matrix::mul: dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k).to_vec();
                axpy(out.row_mut(r), a, &orow);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// The null space `{v : self · v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = rref(self);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    /// The column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, self.columns())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (red, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }
}

/// Reduced row-echelon form and the pivot columns.
///
/// The result is canonical: two matrices with the same row space produce
/// the same nonzero rows.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.data.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = a.get(r, c).recip();
        for x in a.row_mut(r) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if !f.is_zero() {
                axpy(a.row_mut(i), &-f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rref_identity_is_fixed() {
        let (r, p) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&m(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let (r, p) = rref(&Matrix::zeros(2, 3));
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn kernel_and_image_examples() {
        let id = Matrix::identity(3);
        assert_eq!(id.kernel().rank(), 0);
        assert_eq!(id.image().rank(), 3);

        let z = Matrix::zeros(3, 3);
        assert_eq!(z.kernel().rank(), 3);
        assert_eq!(z.image().rank(), 0);

        let k = m(&[&[1, 1], &[1, 1]]).kernel();
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&[int(1), int(-1)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}

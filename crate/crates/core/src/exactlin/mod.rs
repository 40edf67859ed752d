//! Exact rational linear algebra.
//!
//! Everything in the crate reduces to a handful of primitives over the
//! rationals: dense matrices, subspaces kept in reduced row-echelon form,
//! quotient presentations with a canonical section, and closure of a subspace
//! under a family of operators. There are no tolerances anywhere.

mod matrix;
mod quotient;
mod subspace;
mod tensor;

pub use matrix::{rref, Matrix};
pub use quotient::QuotientPresentation;
pub use subspace::{close_under, Subspace, SubspaceBuilder};
pub use tensor::Tensor3;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// A dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`; panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `dst += c * src`, skipping zero entries of `src`.
pub fn axpy(dst: &mut [Scalar], c: &Scalar, src: &[Scalar]) {
    debug_assert_eq!(dst.len(), src.len());
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += c * s;
        }
    }
}

pub fn scaled(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn add(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Indices and values of the nonzero entries.
pub fn support(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// Null space of the linear map `residual: Q^n → Q^m`, assembled column by
/// column from its values on unit vectors.
pub fn solve_homogeneous(n_unknowns: usize, residual: impl Fn(&[Scalar]) -> Vector) -> Subspace {
    if n_unknowns == 0 {
        return Subspace::zero(0);
    }
    let cols: Vec<Vector> = (0..n_unknowns).map(|k| residual(&unit(n_unknowns, k))).collect();
    let m = cols[0].len();
    Matrix::from_columns(m, &cols).kernel()
}

/// Matrix of a linear map given by its action on unit vectors.
pub fn matrix_of(n_in: usize, n_out: usize, f: impl Fn(usize) -> Vector) -> Matrix {
    let cols: Vec<Vector> = (0..n_in).map(f).collect();
    Matrix::from_columns(n_out, &cols)
}

/// Solves `m · x = b`; returns one solution if any exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len());
    let bcol = Matrix::from_columns(b.len(), &[b.to_vec()]);
    let (r, pivots) = rref(&m.hstack(&bcol));
    let n = m.cols();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, n).clone();
    }
    Some(x)
}

/// Coordinates of `a ⊗ x ⊗ y` in `Q^{n_a} ⊗ Q^{n_x} ⊗ Q^{n_y}`, index
/// `p·n_x·n_y + i·n_y + j`.
pub fn outer3(a: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vector {
    let (nx, ny) = (x.len(), y.len());
    let mut out = zeros(a.len() * nx * ny);
    for (p, c) in support(a) {
        for (i, d) in support(x) {
            let cd = c * d;
            for (j, e) in support(y) {
                out[p * nx * ny + i * ny + j] += &cd * e;
            }
        }
    }
    out
}

/// `exp(m) = Σ m^k / k!` for nilpotent `m`; `None` if `m` is not nilpotent.
pub fn exp_nilpotent(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square());
    let n = m.rows();
    let mut out = Matrix::identity(n);
    if n == 0 {
        return Some(out);
    }
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(m).scale(&frac(1, k as i64));
        if term.is_zero() {
            return Some(out);
        }
        out = out.add(&term);
    }
    None
}

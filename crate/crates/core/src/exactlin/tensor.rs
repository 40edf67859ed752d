use num_traits::Zero;

use super::Scalar;

/// A dense three-slot array indexed `[i][j][k]`, with `k` contiguous.
///
/// Structure constants are stored this way throughout: `t[i][j][k]` is the
/// coefficient of basis vector `k` in the product of basis vectors `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 {
            dims: [d0, d1, d2],
            data: vec![Scalar::zero(); d0 * d1 * d2],
        }
    }

    pub fn from_fn(d0: usize, d1: usize, d2: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut t = Self::zeros(d0, d1, d2);
        for i in 0..d0 {
            for j in 0..d1 {
                let v = f(i, j);
                assert_eq!(v.len(), d2, "Tensor3::from_fn: fiber length");
                t.fiber_mut(i, j).clone_from_slice(&v);
            }
        }
        t
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.dims[0] && j < self.dims[1]);
        (i * self.dims[1] + j) * self.dims[2]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let o = self.offset(i, j);
        self.data[o + k] = value;
    }

    /// The vector `t[i][j][..]`.
    pub fn fiber(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dims[2]]
    }

    pub fn fiber_mut(&mut self, i: usize, j: usize) -> &mut [Scalar] {
        let o = self.offset(i, j);
        let n = self.dims[2];
        &mut self.data[o..o + n]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

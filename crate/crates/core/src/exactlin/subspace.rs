use num_traits::{One, Zero};

use super::{axpy, is_zero, Matrix, Scalar, Vector};

/// A linear subspace of `Q^n`, stored by its canonical RREF basis.
///
/// Because the basis is fully reduced, two subspaces are equal exactly when
/// their `Subspace` values are equal, and the coordinates of a member `v`
/// are simply `v` read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| super::unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut b = SubspaceBuilder::new(ambient_dim);
        for v in vectors {
            b.insert(v);
        }
        b.finish()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// The RREF basis rows.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows stacked into a `rank × ambient_dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim, self.basis.clone())
    }

    /// Ambient coordinates that are not pivots: the canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut mark = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            mark[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !mark[i]).collect()
    }

    /// The remainder of `v` after reduction; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim, "Subspace::reduce: dimension mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// `Σ c_i basis_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.rank());
        let mut v = super::zeros(self.ambient_dim);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, row);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(self.ambient_dim, self.basis.iter().chain(other.basis.iter()).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        // Solve Σ α_i u_i − Σ β_j w_j = 0 and keep Σ α_i u_i.
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        let m = Matrix::from_columns(self.ambient_dim, &cols);
        let k = self.rank();
        Subspace::span(
            self.ambient_dim,
            m.kernel().basis().iter().map(|sol| self.combine(&sol[..k])),
        )
    }

    /// `{ m · v : v ∈ self }`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)))
    }

    /// `{ v : m · v ∈ self }`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient_dim);
        let keep = self.non_pivots();
        let reduced: Vec<Vector> = m
            .columns()
            .into_iter()
            .map(|c| {
                let r = self.reduce(&c);
                keep.iter().map(|&i| r[i].clone()).collect()
            })
            .collect();
        Matrix::from_columns(keep.len(), &reduced).kernel()
    }

    /// Smallest subspace containing `self` and stable under every operator.
    pub fn close_under(&self, operators: &[Matrix]) -> Subspace {
        close_under(self, operators)
    }
}

/// Smallest subspace containing `seed` and stable under all `operators`.
///
/// Every vector that enters the span is pushed through every operator once;
/// the loop stops when no new direction appears.
pub fn close_under(seed: &Subspace, operators: &[Matrix]) -> Subspace {
    let n = seed.ambient_dim();
    for op in operators {
        assert!(op.rows() == n && op.cols() == n, "close_under: operator shape");
    }
    let mut b = SubspaceBuilder::new(n);
    let mut queue: Vec<Vector> = Vec::new();
    for v in seed.basis() {
        if let Some(w) = b.insert(v.clone()) {
            queue.push(w);
        }
    }
    while let Some(v) = queue.pop() {
        for op in operators {
            if let Some(w) = b.insert(op.apply(&v)) {
                queue.push(w);
            }
        }
    }
    b.finish()
}

/// Incremental construction of a subspace from a stream of vectors.
///
/// Rows are kept fully reduced so a candidate is reduced in one pass.
#[derive(Clone, Debug)]
pub struct SubspaceBuilder {
    ambient_dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl SubspaceBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        SubspaceBuilder {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ambient_dim],
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut b = Self::new(s.ambient_dim());
        for (row, &p) in s.basis().iter().zip(s.pivots()) {
            b.pivot_row[p] = Some(b.rows.len());
            b.rows.push(row.clone());
            b.pivots.push(p);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn reduce(&self, v: &mut Vector) {
        let orig: Vec<(usize, Scalar)> = self
            .pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| !v[p].is_zero())
            .map(|(r, &p)| (r, v[p].clone()))
            .collect();
        for (r, c) in orig {
            axpy(v, &-c, &self.rows[r]);
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    /// Adds `v` to the span. Returns the reduced new row when the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "SubspaceBuilder::insert: dimension mismatch");
        if self.is_full() {
            return None;
        }
        self.reduce(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                axpy(row, &-c, &v);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }

    pub fn finish(self) -> Subspace {
        let mut pairs: Vec<(usize, Vector)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace {
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, unit};

    #[test]
    fn close_under_examples() {
        let shift = Matrix::from_fn(3, 3, |r, c| if r == (c + 1) % 3 { int(1) } else { int(0) });
        assert!(close_under(&Subspace::zero(3), std::slice::from_ref(&shift)).is_zero());
        let seed = Subspace::span(3, vec![unit(3, 0)]);
        assert_eq!(close_under(&seed, &[Matrix::identity(3)]), seed);
        assert!(close_under(&seed, &[shift]).is_full());
    }

    #[test]
    fn intersection_and_preimage() {
        let u = Subspace::span(3, vec![unit(3, 0), unit(3, 1)]);
        let w = Subspace::span(3, vec![unit(3, 1), unit(3, 2)]);
        let i = u.intersection(&w);
        assert_eq!(i, Subspace::span(3, vec![unit(3, 1)]));
        // projection onto the first coordinate; preimage of 0 is span(e1, e2)
        let proj = Matrix::from_fn(3, 3, |r, c| if r == 0 && c == 0 { int(1) } else { int(0) });
        assert_eq!(Subspace::zero(3).preimage_under(&proj), w);
    }

    #[test]
    fn coordinates_read_off_pivots() {
        let s = Subspace::span(3, vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]]);
        let v = vec![int(2), int(3), int(1)];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&unit(3, 0)).is_none());
    }
}

use super::{Matrix, Scalar, Subspace, Vector};

/// `Q^n / R` with the canonical complement spanned by the non-pivot
/// coordinates of `R`'s RREF basis.
///
/// `project` reduces a vector modulo `R` and reads the complement
/// coordinates; `lift` sends quotient basis vector `k` to the ambient unit
/// vector at the `k`-th non-pivot coordinate. `project ∘ lift` is the identity
/// and `ker(project) = R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    relations: Subspace,
    complement: Vec<usize>,
}

impl QuotientPresentation {
    pub fn new(relations: Subspace) -> Self {
        let complement = relations.non_pivots();
        QuotientPresentation { relations, complement }
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient coordinates that index the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.relations.reduce(v);
        self.complement.iter().map(|&i| r[i].clone()).collect()
    }

    /// The canonical representative of a quotient vector.
    pub fn lift(&self, q: &[Scalar]) -> Vector {
        assert_eq!(q.len(), self.dim());
        let mut v = super::zeros(self.ambient_dim());
        for (x, &i) in q.iter().zip(&self.complement) {
            v[i] = x.clone();
        }
        v
    }

    /// Ambient index of the representative of quotient basis vector `k`.
    pub fn representative(&self, k: usize) -> usize {
        self.complement[k]
    }

    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ambient_dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.project(&super::unit(n, i))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Matrix {
        let (n, q) = (self.ambient_dim(), self.dim());
        Matrix::from_fn(n, q, |r, c| {
            if self.complement[c] == r {
                num_traits::One::one()
            } else {
                num_traits::Zero::zero()
            }
        })
    }
}

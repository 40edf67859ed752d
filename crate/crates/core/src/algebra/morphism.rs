use std::sync::Arc;

use super::LieRinehartAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{unit, Matrix, Scalar, Subspace, Vector};
use crate::report::{Axiom, ValidationReport};

/// A K-linear map between Lie–Rinehart algebras over the same base, stored
/// as a `dim(target) × dim(source)` matrix.
#[derive(Clone, Debug)]
pub struct LRMorphism {
    source: Arc<LieRinehartAlgebra>,
    target: Arc<LieRinehartAlgebra>,
    matrix: Matrix,
}

impl LRMorphism {
    /// Checks base and shape only; see [`validate`](Self::validate).
    pub fn new(source: Arc<LieRinehartAlgebra>, target: Arc<LieRinehartAlgebra>, matrix: Matrix) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::BaseMismatch);
        }
        crate::error::ensure_dim("morphism matrix rows", target.dim(), matrix.rows())?;
        crate::error::ensure_dim("morphism matrix columns", source.dim(), matrix.cols())?;
        Ok(LRMorphism { source, target, matrix })
    }

    /// Like [`new`](Self::new) but rejects maps that fail an axiom.
    pub fn validated(source: Arc<LieRinehartAlgebra>, target: Arc<LieRinehartAlgebra>, matrix: Matrix) -> Result<Self> {
        let f = Self::new(source, target, matrix)?;
        let report = f.validate();
        if report.is_valid() {
            Ok(f)
        } else {
            Err(Error::Invalid {
                what: "morphism",
                report,
            })
        }
    }

    pub fn identity(l: Arc<LieRinehartAlgebra>) -> Self {
        let n = l.dim();
        LRMorphism {
            source: l.clone(),
            target: l,
            matrix: Matrix::identity(n),
        }
    }

    pub fn zero(source: Arc<LieRinehartAlgebra>, target: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let m = Matrix::zeros(target.dim(), source.dim());
        Self::new(source, target, m)
    }

    pub fn source(&self) -> &Arc<LieRinehartAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieRinehartAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(v)
    }

    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&*self.source, &*self.target);
        let (n, na) = (s.dim(), s.base().dim());
        let mut report = ValidationReport::new();
        for p in 0..na {
            for i in 0..n {
                let lhs = self.apply(s.a_action().fiber(p, i));
                let rhs = t.act(&unit(na, p), &self.matrix.column(i));
                report.check(lhs == rhs, Axiom::MorphismALinear, &[p, i]);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(s.bracket_tensor().fiber(i, j));
                let rhs = t.bracket(&self.matrix.column(i), &self.matrix.column(j));
                report.check(lhs == rhs, Axiom::MorphismBracket, &[i, j]);
            }
        }
        for i in 0..n {
            let ok = t.anchor_of(&self.matrix.column(i)) == s.anchor()[i];
            report.check(ok, Axiom::MorphismAnchor, &[i]);
        }
        report
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LRMorphism) -> Result<LRMorphism> {
        if **g.target() != *self.source {
            return Err(Error::Hypothesis("composition of non-composable morphisms".into()));
        }
        Self::new(g.source.clone(), self.target.clone(), self.matrix.mul(&g.matrix))
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Result<LRMorphism> {
        let inv = self.matrix.inverse().ok_or(Error::NotInvertible)?;
        Self::new(self.target.clone(), self.source.clone(), inv)
    }

    /// The same map with a different matrix; used to build related maps
    /// between fixed algebras.
    pub fn with_matrix(&self, matrix: Matrix) -> Result<LRMorphism> {
        Self::new(self.source.clone(), self.target.clone(), matrix)
    }
}

impl PartialEq for LRMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.source == other.source && self.target == other.target
    }
}

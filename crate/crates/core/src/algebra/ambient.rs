//! Structure on a coordinate space before it is cut down to an algebra.
//!
//! Several constructions (the universal central extension, the non-abelian
//! tensor product, quotients and subalgebras) start from an ambient space on
//! which bracket, A-action and anchor are given on basis vectors by a formula,
//! and then pass to a quotient or a subspace. The [`Ambient`] trait captures
//! that data; [`quotient_algebra`] and [`subalgebra`] do the passage and check
//! that the structure descends.

use num_traits::Zero;

use super::{CommAlgebra, LieRinehartAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, support, unit, zeros, Matrix, QuotientPresentation, Scalar, Subspace, Tensor3, Vector};

/// Bracket, A-action and anchor given on the basis of a coordinate space.
pub trait Ambient {
    fn base(&self) -> &CommAlgebra;
    fn dim(&self) -> usize;
    fn bracket_basis(&self, i: usize, j: usize) -> Vector;
    /// `e_p · t_i` for the `p`-th basis vector of the base algebra.
    fn act_basis(&self, p: usize, i: usize) -> Vector;
    fn anchor_basis(&self, i: usize) -> Matrix;

    fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (i, x) in support(u) {
            for (j, y) in support(v) {
                axpy(&mut out, &(x * y), &self.bracket_basis(i, j));
            }
        }
        out
    }

    fn act_vec(&self, a: &[Scalar], u: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (p, x) in support(a) {
            for (i, y) in support(u) {
                axpy(&mut out, &(x * y), &self.act_basis(p, i));
            }
        }
        out
    }

    fn anchor_vec(&self, u: &[Scalar]) -> Matrix {
        let n = self.base().dim();
        let mut out = Matrix::zeros(n, n);
        for (i, x) in support(u) {
            out = out.add(&self.anchor_basis(i).scale(x));
        }
        out
    }

    /// Multiplication by each basis vector of the base algebra.
    fn action_operators(&self) -> Vec<Matrix> {
        let d = self.dim();
        (0..self.base().dim())
            .map(|p| {
                let cols: Vec<Vector> = (0..d).map(|i| self.act_basis(p, i)).collect();
                Matrix::from_columns(d, &cols)
            })
            .collect()
    }
}

impl Ambient for LieRinehartAlgebra {
    fn base(&self) -> &CommAlgebra {
        LieRinehartAlgebra::base(self)
    }

    fn dim(&self) -> usize {
        LieRinehartAlgebra::dim(self)
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        self.bracket_tensor().fiber(i, j).to_vec()
    }

    fn act_basis(&self, p: usize, i: usize) -> Vector {
        self.a_action().fiber(p, i).to_vec()
    }

    fn anchor_basis(&self, i: usize) -> Matrix {
        self.anchor()[i].clone()
    }
}

/// Brackets and actions of every ambient basis pair, already projected to the
/// quotient.
struct ProjectedTables {
    bracket: Vec<Vec<Vector>>,
    act: Vec<Vec<Vector>>,
}

fn projected_tables<T: Ambient + ?Sized>(amb: &T, q: &QuotientPresentation) -> ProjectedTables {
    let d = amb.dim();
    let bracket = (0..d)
        .map(|s| (0..d).map(|t| q.project(&amb.bracket_basis(s, t))).collect())
        .collect();
    let act = (0..amb.base().dim())
        .map(|p| (0..d).map(|s| q.project(&amb.act_basis(p, s))).collect())
        .collect();
    ProjectedTables { bracket, act }
}

fn combine(r: &[Scalar], rows: impl Fn(usize) -> Vector, len: usize) -> Vector {
    let mut out = zeros(len);
    for (s, c) in support(r) {
        axpy(&mut out, c, &rows(s));
    }
    out
}

/// Checks that bracket, A-action and anchor descend to `ambient / relations`.
///
/// For each basis vector `r` of the relation space and each ambient basis
/// vector `t`, both `[r, t]` and `[t, r]` must lie in the relations, `a·r` must
/// lie in the relations, and the anchor must vanish on `r`.
pub fn check_well_defined<T: Ambient + ?Sized>(
    amb: &T,
    relations: &Subspace,
    construction: &'static str,
) -> Result<()> {
    let q = QuotientPresentation::new(relations.clone());
    let tables = projected_tables(amb, &q);
    check_with_tables(amb, &q, &tables, construction)
}

fn check_with_tables<T: Ambient + ?Sized>(
    amb: &T,
    q: &QuotientPresentation,
    tables: &ProjectedTables,
    construction: &'static str,
) -> Result<()> {
    let d = amb.dim();
    let k = q.dim();
    let ill = |detail: String| Err(Error::IllDefined { construction, detail });
    for (ri, r) in q.relations().basis().iter().enumerate() {
        for (p, row) in tables.act.iter().enumerate() {
            if !combine(r, |s| row[s].clone(), k).iter().all(Zero::is_zero) {
                return ill(format!("A-action by basis {p} leaves the relations (relation {ri})"));
            }
        }
        if !amb.anchor_vec(r).is_zero() {
            return ill(format!("anchor does not vanish on relation {ri}"));
        }
        for t in 0..d {
            let left = combine(r, |s| tables.bracket[s][t].clone(), k);
            let right = combine(r, |s| tables.bracket[t][s].clone(), k);
            if !left.iter().all(Zero::is_zero) || !right.iter().all(Zero::is_zero) {
                return ill(format!("bracket of relation {ri} with basis {t} leaves the relations"));
            }
        }
    }
    Ok(())
}

/// `ambient / relations` with the induced structure, after checking that the
/// structure is well defined. The relations must already be A-stable.
pub fn quotient_algebra<T: Ambient + ?Sized>(
    amb: &T,
    relations: Subspace,
    construction: &'static str,
) -> Result<(QuotientPresentation, LieRinehartAlgebra)> {
    let q = QuotientPresentation::new(relations);
    let tables = projected_tables(amb, &q);
    check_with_tables(amb, &q, &tables, construction)?;
    let k = q.dim();
    let c = q.complement().to_vec();
    let bracket = Tensor3::from_fn(k, k, k, |i, j| tables.bracket[c[i]][c[j]].clone());
    let na = amb.base().dim();
    let a_action = Tensor3::from_fn(na, k, k, |p, i| tables.act[p][c[i]].clone());
    let anchor = c.iter().map(|&s| amb.anchor_basis(s)).collect();
    let alg = LieRinehartAlgebra::new(amb.base().clone(), a_action, bracket, anchor)?;
    Ok((q, alg))
}

/// The subspace `s` with the restricted structure, using the RREF basis of
/// `s`. Returns the algebra and the inclusion matrix (ambient × rank).
pub fn subalgebra<T: Ambient + ?Sized>(
    amb: &T,
    s: &Subspace,
    construction: &'static str,
) -> Result<(LieRinehartAlgebra, Matrix)> {
    let basis = s.basis();
    let k = basis.len();
    let coords = |v: Vector, what: &str| -> Result<Vector> {
        s.coordinates(&v).ok_or_else(|| Error::IllDefined {
            construction,
            detail: format!("subspace is not closed under {what}"),
        })
    };
    let mut bracket = Tensor3::zeros(k, k, k);
    for i in 0..k {
        for j in 0..k {
            let c = coords(amb.bracket_vec(&basis[i], &basis[j]), "the bracket")?;
            bracket.fiber_mut(i, j).clone_from_slice(&c);
        }
    }
    let na = amb.base().dim();
    let mut a_action = Tensor3::zeros(na, k, k);
    for p in 0..na {
        for (i, b) in basis.iter().enumerate() {
            let c = coords(amb.act_vec(&unit(na, p), b), "the A-action")?;
            a_action.fiber_mut(p, i).clone_from_slice(&c);
        }
    }
    let anchor = basis.iter().map(|b| amb.anchor_vec(b)).collect();
    let alg = LieRinehartAlgebra::new(amb.base().clone(), a_action, bracket, anchor)?;
    Ok((alg, Matrix::from_columns(amb.dim(), basis)))
}

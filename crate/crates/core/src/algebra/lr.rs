use num_traits::Zero;

use super::ambient::subalgebra;
use super::CommAlgebra;
use crate::error::{ensure_dim, Error, Result};
use crate::exactlin::{
    axpy, is_zero, solve_homogeneous, support, unit, zeros, Matrix, QuotientPresentation, Scalar, Subspace,
    SubspaceBuilder, Tensor3, Vector,
};
use crate::report::{Axiom, ValidationReport};

/// A Lie–Rinehart algebra over a commutative algebra `A`, given on a finite
/// basis `x_0, …, x_{n-1}` by
///
/// * `a_action[p][i][k]`: `e_p · x_i = Σ_k a_action[p][i][k] x_k`,
/// * `bracket[i][j][k]`: `[x_i, x_j] = Σ_k bracket[i][j][k] x_k`,
/// * `anchor[i]`: the derivation `α(x_i)` of `A` as a matrix acting on
///   column vectors, so column `j` holds `x_i(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartAlgebra {
    base: CommAlgebra,
    a_action: Tensor3,
    bracket: Tensor3,
    anchor: Vec<Matrix>,
}

impl LieRinehartAlgebra {
    /// Checks shapes only; use [`validate`](Self::validate) for the axioms.
    pub fn new(base: CommAlgebra, a_action: Tensor3, bracket: Tensor3, anchor: Vec<Matrix>) -> Result<Self> {
        let n = anchor.len();
        let na = base.dim();
        ensure_dim("bracket tensor", n, bracket.dims()[0])?;
        ensure_dim("bracket tensor", n, bracket.dims()[1])?;
        ensure_dim("bracket tensor", n, bracket.dims()[2])?;
        ensure_dim("A-action tensor (base slot)", na, a_action.dims()[0])?;
        ensure_dim("A-action tensor", n, a_action.dims()[1])?;
        ensure_dim("A-action tensor", n, a_action.dims()[2])?;
        for d in &anchor {
            ensure_dim("anchor matrix rows", na, d.rows())?;
            ensure_dim("anchor matrix columns", na, d.cols())?;
        }
        Ok(LieRinehartAlgebra {
            base,
            a_action,
            bracket,
            anchor,
        })
    }

    /// Like [`new`](Self::new) but rejects structures that fail an axiom.
    pub fn validated(base: CommAlgebra, a_action: Tensor3, bracket: Tensor3, anchor: Vec<Matrix>) -> Result<Self> {
        let l = Self::new(base, a_action, bracket, anchor)?;
        let report = l.validate();
        if report.is_valid() {
            Ok(l)
        } else {
            Err(Error::Invalid {
                what: "Lie-Rinehart algebra",
                report,
            })
        }
    }

    /// The free A-module `A ⊗ V` on `k` generators, with A-coordinates
    /// ordered `(p, g) ↦ p·k + g`. Bracket and anchor are zero.
    pub fn free_abelian(base: &CommAlgebra, k: usize) -> Self {
        let na = base.dim();
        let n = na * k;
        let a_action = Tensor3::from_fn(na, n, n, |p, i| {
            let (q, g) = (i / k, i % k);
            let mut out = zeros(n);
            for (r, c) in support(base.basis_product(p, q)) {
                out[r * k + g] = c.clone();
            }
            out
        });
        LieRinehartAlgebra {
            base: base.clone(),
            a_action,
            bracket: Tensor3::zeros(n, n, n),
            anchor: vec![Matrix::zeros(na, na); n],
        }
    }

    /// The zero algebra over `base`.
    pub fn zero(base: &CommAlgebra) -> Self {
        Self::free_abelian(base, 0)
    }

    pub fn base(&self) -> &CommAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.anchor.len()
    }

    pub fn a_action(&self) -> &Tensor3 {
        &self.a_action
    }

    pub fn bracket_tensor(&self) -> &Tensor3 {
        &self.bracket
    }

    pub fn anchor(&self) -> &[Matrix] {
        &self.anchor
    }

    pub fn has_zero_anchor(&self) -> bool {
        self.anchor.iter().all(Matrix::is_zero)
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (i, x) in support(u) {
            for (j, y) in support(v) {
                axpy(&mut out, &(x * y), self.bracket.fiber(i, j));
            }
        }
        out
    }

    /// `a · u`.
    pub fn act(&self, a: &[Scalar], u: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (p, x) in support(a) {
            for (i, y) in support(u) {
                axpy(&mut out, &(x * y), self.a_action.fiber(p, i));
            }
        }
        out
    }

    /// `α(u)` as a matrix on `A`.
    pub fn anchor_of(&self, u: &[Scalar]) -> Matrix {
        let na = self.base.dim();
        let mut out = Matrix::zeros(na, na);
        for (i, x) in support(u) {
            out = out.add(&self.anchor[i].scale(x));
        }
        out
    }

    /// `u(a) = α(u)(a)`.
    pub fn anchor_apply(&self, u: &[Scalar], a: &[Scalar]) -> Vector {
        self.anchor_of(u).apply(a)
    }

    /// Multiplication by `e_p` as an operator on `L`.
    pub fn act_operator(&self, p: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| self.a_action.get(p, c, r).clone())
    }

    pub fn act_operators(&self) -> Vec<Matrix> {
        (0..self.base.dim()).map(|p| self.act_operator(p)).collect()
    }

    /// `ad(u) = [u, -]`.
    pub fn adjoint(&self, u: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(u, &unit(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Checks every axiom on basis instances; each failure names the axiom
    /// and the indices involved.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.dim();
        let na = self.base.dim();
        let b = &self.bracket;

        // A-module
        let unit_a = self.base.unit();
        for i in 0..n {
            let ei = unit(n, i);
            report.check(self.act(unit_a, &ei) == ei, Axiom::ModuleUnit, &[i]);
        }
        for p in 0..na {
            for q in 0..na {
                for i in 0..n {
                    let lhs = self.act(self.base.basis_product(p, q), &unit(n, i));
                    let rhs = self.act(&unit(na, p), self.a_action.fiber(q, i));
                    report.check(lhs == rhs, Axiom::ModuleAssociativity, &[p, q, i]);
                }
            }
        }

        // Lie algebra
        for i in 0..n {
            for j in i..n {
                let ok = b.fiber(i, j).iter().zip(b.fiber(j, i)).all(|(x, y)| (x + y).is_zero());
                report.check(ok, Axiom::Antisymmetry, &[i, j]);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let mut s = self.bracket(&ei, b.fiber(j, k));
                    let t = self.bracket(&ej, b.fiber(k, i));
                    let u = self.bracket(&ek, b.fiber(i, j));
                    for (x, (y, z)) in s.iter_mut().zip(t.iter().zip(&u)) {
                        *x += y + z;
                    }
                    report.check(is_zero(&s), Axiom::Jacobi, &[i, j, k]);
                }
            }
        }

        // anchor
        for i in 0..n {
            report.check(self.base.is_derivation(&self.anchor[i]), Axiom::AnchorDerivation, &[i]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.anchor_of(b.fiber(i, j));
                let rhs = self.anchor[i].commutator(&self.anchor[j]);
                report.check(lhs == rhs, Axiom::AnchorLie, &[i, j]);
            }
        }
        for p in 0..na {
            for i in 0..n {
                let lhs = self.anchor_of(self.a_action.fiber(p, i));
                let rhs = self.base.scale_derivation(&unit(na, p), &self.anchor[i]);
                report.check(lhs == rhs, Axiom::AnchorALinear, &[p, i]);
            }
        }

        // [x, ay] = a[x, y] + x(a) y
        for i in 0..n {
            for p in 0..na {
                for j in 0..n {
                    let ei = unit(n, i);
                    let ap = unit(na, p);
                    let lhs = self.bracket(&ei, self.a_action.fiber(p, j));
                    let mut rhs = self.act(&ap, b.fiber(i, j));
                    let xa = self.anchor[i].column(p);
                    let t = self.act(&xa, &unit(n, j));
                    for (x, y) in rhs.iter_mut().zip(&t) {
                        *x += y;
                    }
                    report.check(lhs == rhs, Axiom::Leibniz, &[i, p, j]);
                }
            }
        }
        report
    }

    /// The A-span of the coordinates `vectors`, i.e. the smallest A-submodule
    /// containing them.
    pub fn a_span<I: IntoIterator<Item = Vector>>(&self, vectors: I) -> Subspace {
        Subspace::span(self.dim(), vectors).close_under(&self.act_operators())
    }

    /// `Z_A(L) = { x : [a x, z] = 0 for all a ∈ A, z ∈ L }`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let na = self.base.dim();
        solve_homogeneous(n, |x| {
            let mut out = Vec::with_capacity(na * n * n);
            for p in 0..na {
                let ax = self.act(&unit(na, p), x);
                for j in 0..n {
                    out.extend(self.bracket(&ax, &unit(n, j)));
                }
            }
            out
        })
    }

    /// `{M, N}`: the span of `a[m, n]` for `a ∈ A`, `m ∈ M`, `n ∈ N`.
    pub fn commutator(&self, m: &Subspace, n: &Subspace) -> Subspace {
        let na = self.base.dim();
        let mut b = SubspaceBuilder::new(self.dim());
        for u in m.basis() {
            for v in n.basis() {
                let br = self.bracket(u, v);
                if is_zero(&br) {
                    continue;
                }
                for p in 0..na {
                    b.insert(self.act(&unit(na, p), &br));
                    if b.is_full() {
                        return b.finish();
                    }
                }
            }
        }
        b.finish()
    }

    /// `{L, L}`.
    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.commutator(&full, &full)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().is_full()
    }

    /// `L^ab = L / {L, L}` as a presentation of A-modules.
    pub fn abelianize(&self) -> QuotientPresentation {
        QuotientPresentation::new(self.derived().close_under(&self.act_operators()))
    }

    /// Checks that `s` is an ideal in the sense used throughout: an
    /// A-submodule with `[L, s] ⊆ s` on which the anchor vanishes.
    pub fn ideal_report(&self, s: &Subspace) -> Result<()> {
        let n = self.dim();
        let fail = |detail: &str| Err(Error::Hypothesis(format!("subspace is not an ideal: {detail}")));
        for u in s.basis() {
            if !self.anchor_of(u).is_zero() {
                return fail("anchor does not vanish");
            }
            for p in 0..self.base.dim() {
                if !s.contains(&self.act(&unit(self.base.dim(), p), u)) {
                    return fail("not an A-submodule");
                }
            }
            for j in 0..n {
                if !s.contains(&self.bracket(&unit(n, j), u)) {
                    return fail("not closed under brackets with L");
                }
            }
        }
        Ok(())
    }

    /// The quotient `L / I` by an ideal, with its projection matrix.
    pub fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<(LieRinehartAlgebra, Matrix)> {
        let (q, alg) = super::ambient::quotient_algebra(self, ideal.clone(), "quotient by an ideal")?;
        Ok((alg, q.projection_matrix()))
    }

    /// `s` with the restricted structure; requires closure under bracket and
    /// A-action. Returns the algebra and the inclusion matrix.
    pub fn restrict_to(&self, s: &Subspace) -> Result<(LieRinehartAlgebra, Matrix)> {
        subalgebra(self, s, "subalgebra")
    }

    /// The direct product `L × M` over a common base with anchor
    /// `α(l, m) = α(l) + α(m)`; a valid Lie–Rinehart algebra when one of the
    /// anchors is zero. For the general categorical product use
    /// [`fiber_product`](crate::constructions::fiber_product).
    pub fn direct_sum(&self, other: &LieRinehartAlgebra) -> Result<LieRinehartAlgebra> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let (n, m) = (self.dim(), other.dim());
        let d = n + m;
        let na = self.base.dim();
        let a_action = Tensor3::from_fn(na, d, d, |p, i| {
            let mut out = zeros(d);
            if i < n {
                out[..n].clone_from_slice(self.a_action.fiber(p, i));
            } else {
                out[n..].clone_from_slice(other.a_action.fiber(p, i - n));
            }
            out
        });
        let bracket = Tensor3::from_fn(d, d, d, |i, j| {
            if i < n && j < n {
                let mut out = zeros(d);
                out[..n].clone_from_slice(self.bracket.fiber(i, j));
                out
            } else if i >= n && j >= n {
                let mut out = zeros(d);
                out[n..].clone_from_slice(other.bracket.fiber(i - n, j - n));
                out
            } else {
                zeros(d)
            }
        });
        let anchor = self.anchor.iter().chain(&other.anchor).cloned().collect();
        LieRinehartAlgebra::new(self.base.clone(), a_action, bracket, anchor)
    }

    /// Perturbs one structure constant; used by mutation tests.
    pub fn with_bracket_entry(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.bracket.set(i, j, k, value);
        out
    }

    pub fn with_action_entry(&self, p: usize, i: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.a_action.set(p, i, k, value);
        out
    }

    pub fn with_anchor_entry(&self, i: usize, r: usize, c: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.anchor[i].set(r, c, value);
        out
    }

    /// `x_i` expressed as a vector.
    pub fn basis_vector(&self, i: usize) -> Vector {
        unit(self.dim(), i)
    }
}

use super::{CommAlgebra, LieRinehartAlgebra};
use crate::error::{ensure_dim, Error, Result};
use crate::exactlin::{axpy, support, unit, zeros, Matrix, Scalar, Tensor3, Vector};
use crate::report::{Axiom, ValidationReport};

/// `dim A × m × m` action tensor from a character `χ: A → Q`:
/// `e_p · v = χ(e_p) v`.
pub(crate) fn character_action(chi: &[Scalar], m: usize) -> Tensor3 {
    let mut t = Tensor3::zeros(chi.len(), m, m);
    for (p, c) in support(chi) {
        for i in 0..m {
            t.set(p, i, i, c.clone());
        }
    }
    t
}

pub(crate) fn check_a_module(base: &CommAlgebra, a_action: &Tensor3, report: &mut ValidationReport) {
    let na = base.dim();
    let m = a_action.dims()[1];
    let act = |a: &[Scalar], v: &[Scalar]| {
        let mut out = zeros(m);
        for (p, x) in support(a) {
            for (i, y) in support(v) {
                axpy(&mut out, &(x * y), a_action.fiber(p, i));
            }
        }
        out
    };
    for i in 0..m {
        let ei = unit(m, i);
        report.check(act(base.unit(), &ei) == ei, Axiom::ModuleUnit, &[i]);
    }
    for p in 0..na {
        for q in 0..na {
            for i in 0..m {
                let lhs = act(base.basis_product(p, q), &unit(m, i));
                let rhs = act(&unit(na, p), a_action.fiber(q, i));
                report.check(lhs == rhs, Axiom::ModuleAssociativity, &[p, q, i]);
            }
        }
    }
}

fn apply3(t: &Tensor3, u: &[Scalar], v: &[Scalar], out_dim: usize) -> Vector {
    let mut out = zeros(out_dim);
    for (i, x) in support(u) {
        for (j, y) in support(v) {
            axpy(&mut out, &(x * y), t.fiber(i, j));
        }
    }
    out
}

/// A left Lie–Rinehart `(A, L)`-module: an A-module `M` with a K-bilinear
/// action `L × M → M`, stored as `l_action[i][j][k]`: `x_i · m_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftLRModule {
    a_action: Tensor3,
    l_action: Tensor3,
}

impl LeftLRModule {
    pub fn new(l: &LieRinehartAlgebra, a_action: Tensor3, l_action: Tensor3) -> Result<Self> {
        let m = a_action.dims()[1];
        ensure_dim("module A-action (base slot)", l.base().dim(), a_action.dims()[0])?;
        ensure_dim("module A-action", m, a_action.dims()[2])?;
        ensure_dim("module L-action (algebra slot)", l.dim(), l_action.dims()[0])?;
        ensure_dim("module L-action", m, l_action.dims()[1])?;
        ensure_dim("module L-action", m, l_action.dims()[2])?;
        Ok(LeftLRModule { a_action, l_action })
    }

    /// `Q^k` with `L` acting by zero and `A` acting through its augmentation.
    /// Valid exactly when the anchor composed with the augmentation vanishes.
    pub fn trivial(l: &LieRinehartAlgebra, k: usize) -> Result<Self> {
        let chi = l
            .base()
            .augmentation()
            .ok_or_else(|| Error::Hypothesis("the base algebra has no augmentation to Q".into()))?;
        Ok(LeftLRModule {
            a_action: character_action(&chi, k),
            l_action: Tensor3::zeros(l.dim(), k, k),
        })
    }

    /// `A` itself, with `x · a = α(x)(a)`.
    pub fn base_module(l: &LieRinehartAlgebra) -> Self {
        let na = l.base().dim();
        LeftLRModule {
            a_action: l.base().mult().clone(),
            l_action: Tensor3::from_fn(l.dim(), na, na, |i, j| l.anchor()[i].column(j)),
        }
    }

    /// `L` acting on itself by the bracket; a left module when the anchor
    /// is zero.
    pub fn adjoint(l: &LieRinehartAlgebra) -> Self {
        LeftLRModule {
            a_action: l.a_action().clone(),
            l_action: l.bracket_tensor().clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.a_action.dims()[1]
    }

    pub fn a_action(&self) -> &Tensor3 {
        &self.a_action
    }

    pub fn l_action(&self) -> &Tensor3 {
        &self.l_action
    }

    pub fn act_a(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        apply3(&self.a_action, a, m, self.dim())
    }

    pub fn act_l(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        apply3(&self.l_action, x, m, self.dim())
    }

    /// The operator `m ↦ x_i · m`.
    pub fn l_operator(&self, i: usize) -> Matrix {
        let m = self.dim();
        Matrix::from_fn(m, m, |r, c| self.l_action.get(i, c, r).clone())
    }

    pub fn validate(&self, l: &LieRinehartAlgebra) -> ValidationReport {
        let mut report = ValidationReport::new();
        check_a_module(l.base(), &self.a_action, &mut report);
        let (n, na, m) = (l.dim(), l.base().dim(), self.dim());
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..m {
                    let mk = unit(m, k);
                    let lhs = self.act_l(l.bracket_tensor().fiber(i, j), &mk);
                    let xi_xj = self.act_l(&unit(n, i), self.l_action.fiber(j, k));
                    let xj_xi = self.act_l(&unit(n, j), self.l_action.fiber(i, k));
                    let rhs: Vector = xi_xj.iter().zip(&xj_xi).map(|(a, b)| a - b).collect();
                    report.check(lhs == rhs, Axiom::LieModule, &[i, j, k]);
                }
            }
        }
        for p in 0..na {
            for i in 0..n {
                for k in 0..m {
                    let mk = unit(m, k);
                    let lhs = self.act_l(l.a_action().fiber(p, i), &mk);
                    let rhs = self.act_a(&unit(na, p), self.l_action.fiber(i, k));
                    report.check(lhs == rhs, Axiom::LeftALinear, &[p, i, k]);
                }
            }
        }
        for i in 0..n {
            for p in 0..na {
                for k in 0..m {
                    let lhs = self.act_l(&unit(n, i), self.a_action.fiber(p, k));
                    let mut rhs = self.act_a(&unit(na, p), self.l_action.fiber(i, k));
                    let xa = l.anchor()[i].column(p);
                    for (r, t) in rhs.iter_mut().zip(self.act_a(&xa, &unit(m, k))) {
                        *r += t;
                    }
                    report.check(lhs == rhs, Axiom::LeftLeibniz, &[i, p, k]);
                }
            }
        }
        report
    }
}

/// A right Lie–Rinehart `(A, L)`-module, stored as `r_action[j][i][k]`:
/// `m_j · x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightLRModule {
    a_action: Tensor3,
    r_action: Tensor3,
}

impl RightLRModule {
    pub fn new(l: &LieRinehartAlgebra, a_action: Tensor3, r_action: Tensor3) -> Result<Self> {
        let m = a_action.dims()[1];
        ensure_dim("module A-action (base slot)", l.base().dim(), a_action.dims()[0])?;
        ensure_dim("module A-action", m, a_action.dims()[2])?;
        ensure_dim("module right action", m, r_action.dims()[0])?;
        ensure_dim("module right action (algebra slot)", l.dim(), r_action.dims()[1])?;
        ensure_dim("module right action", m, r_action.dims()[2])?;
        Ok(RightLRModule { a_action, r_action })
    }

    /// `Q^k` with `L` acting by zero and `A` through its augmentation. The
    /// mixed law forces `x(a) m = 0`, so this is refused unless the anchor
    /// of `L` is zero.
    pub fn trivial(l: &LieRinehartAlgebra, k: usize) -> Result<Self> {
        if !l.has_zero_anchor() {
            return Err(Error::Hypothesis(
                "a trivial right module requires an algebra with zero anchor".into(),
            ));
        }
        let chi = l
            .base()
            .augmentation()
            .ok_or_else(|| Error::Hypothesis("the base algebra has no augmentation to Q".into()))?;
        let m = character_action(&chi, k);
        Self::with_zero_action(l, m)
    }

    /// The A-module given by `a_action` with `L` acting by zero. This is a
    /// right module only if `x(a) m = 0` throughout.
    pub fn with_zero_action(l: &LieRinehartAlgebra, a_action: Tensor3) -> Result<Self> {
        let k = a_action.dims()[1];
        Self::new(l, a_action, Tensor3::zeros(k, l.dim(), k))
    }

    pub fn dim(&self) -> usize {
        self.a_action.dims()[1]
    }

    pub fn a_action(&self) -> &Tensor3 {
        &self.a_action
    }

    pub fn r_action(&self) -> &Tensor3 {
        &self.r_action
    }

    pub fn act_a(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        apply3(&self.a_action, a, m, self.dim())
    }

    /// `m · x`.
    pub fn act_r(&self, m: &[Scalar], x: &[Scalar]) -> Vector {
        apply3(&self.r_action, m, x, self.dim())
    }

    pub fn validate(&self, l: &LieRinehartAlgebra) -> ValidationReport {
        let mut report = ValidationReport::new();
        check_a_module(l.base(), &self.a_action, &mut report);
        let (n, na, m) = (l.dim(), l.base().dim(), self.dim());
        for k in 0..m {
            let mk = unit(m, k);
            for i in 0..n {
                for j in i + 1..n {
                    // m[x, y] = (m x) y − (m y) x
                    let lhs = self.act_r(&mk, l.bracket_tensor().fiber(i, j));
                    let a = self.act_r(self.r_action.fiber(k, i), &unit(n, j));
                    let b = self.act_r(self.r_action.fiber(k, j), &unit(n, i));
                    let rhs: Vector = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                    report.check(lhs == rhs, Axiom::RightLieModule, &[k, i, j]);
                }
            }
        }
        for p in 0..na {
            let ap = unit(na, p);
            for k in 0..m {
                let mk = unit(m, k);
                for i in 0..n {
                    // (a m) x = m (a x) = a (m x) − x(a) m
                    let am_x = self.act_r(self.a_action.fiber(p, k), &unit(n, i));
                    let m_ax = self.act_r(&mk, l.a_action().fiber(p, i));
                    let xa = l.anchor()[i].column(p);
                    let a_mx = self.act_a(&ap, self.r_action.fiber(k, i));
                    let xa_m = self.act_a(&xa, &mk);
                    let third: Vector = a_mx.iter().zip(&xa_m).map(|(x, y)| x - y).collect();
                    report.check(am_x == m_ax && m_ax == third, Axiom::RightMixed, &[p, k, i]);
                }
            }
        }
        report
    }
}

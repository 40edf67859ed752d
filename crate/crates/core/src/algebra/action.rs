use super::LieRinehartAlgebra;
use crate::error::{ensure_dim, Result};
use crate::exactlin::{axpy, is_zero, support, unit, zeros, Scalar, Tensor3, Vector};
use crate::report::{Axiom, ValidationReport};

/// `x · m` for an action tensor `act[i][j][k]`: `x_i · m_j = Σ_k act[i][j][k] m_k`.
pub fn apply_action(act: &Tensor3, x: &[Scalar], m: &[Scalar]) -> Vector {
    let mut out = zeros(act.dims()[2]);
    for (i, c) in support(x) {
        for (j, d) in support(m) {
            axpy(&mut out, &(c * d), act.fiber(i, j));
        }
    }
    out
}

/// Checks an action of `l` on `m` on basis instances:
///
/// * `x · (a m) = a (x · m) + x(a) m` ([`Axiom::ActionLeibniz`]),
/// * `[x, y] · m = x · (y · m) − y · (x · m)` ([`Axiom::ActionLie`]),
/// * `x · [m, n] = [x · m, n] + [m, x · n]` ([`Axiom::ActionDerivation`]),
/// * when `a_linear` is set, `(a x) · m = a (x · m)` ([`Axiom::ActionALinear`]).
pub fn validate_action(
    l: &LieRinehartAlgebra,
    m: &LieRinehartAlgebra,
    act: &Tensor3,
    a_linear: bool,
) -> Result<ValidationReport> {
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    ensure_dim("action tensor (acting slot)", nl, act.dims()[0])?;
    ensure_dim("action tensor", nm, act.dims()[1])?;
    ensure_dim("action tensor", nm, act.dims()[2])?;
    let mut report = ValidationReport::new();
    for i in 0..nl {
        let xi = unit(nl, i);
        for p in 0..na {
            let ap = unit(na, p);
            let xa = l.anchor()[i].column(p);
            for j in 0..nm {
                let mj = unit(nm, j);
                let lhs = apply_action(act, &xi, m.a_action().fiber(p, j));
                let mut rhs = m.act(&ap, act.fiber(i, j));
                for (r, t) in rhs.iter_mut().zip(m.act(&xa, &mj)) {
                    *r += t;
                }
                report.check(lhs == rhs, Axiom::ActionLeibniz, &[i, p, j]);
            }
        }
    }
    for i in 0..nl {
        for k in i + 1..nl {
            for j in 0..nm {
                let lhs = apply_action(act, l.bracket_tensor().fiber(i, k), &unit(nm, j));
                let a = apply_action(act, &unit(nl, i), act.fiber(k, j));
                let b = apply_action(act, &unit(nl, k), act.fiber(i, j));
                let ok = lhs.iter().zip(a.iter().zip(&b)).all(|(l, (x, y))| *l == x - y);
                report.check(ok, Axiom::ActionLie, &[i, k, j]);
            }
        }
    }
    for i in 0..nl {
        let xi = unit(nl, i);
        for j in 0..nm {
            for k in j + 1..nm {
                let (mj, mk) = (unit(nm, j), unit(nm, k));
                let lhs = apply_action(act, &xi, m.bracket_tensor().fiber(j, k));
                let mut rhs = m.bracket(act.fiber(i, j), &mk);
                for (r, t) in rhs.iter_mut().zip(m.bracket(&mj, act.fiber(i, k))) {
                    *r += t;
                }
                report.check(lhs == rhs, Axiom::ActionDerivation, &[i, j, k]);
            }
        }
    }
    if a_linear {
        for p in 0..na {
            let ap = unit(na, p);
            for i in 0..nl {
                for j in 0..nm {
                    let lhs = apply_action(act, l.a_action().fiber(p, i), &unit(nm, j));
                    let rhs = m.act(&ap, act.fiber(i, j));
                    report.check(lhs == rhs, Axiom::ActionALinear, &[p, i, j]);
                }
            }
        }
    }
    Ok(report)
}

/// The action of a subalgebra on an ideal by the bracket, as a tensor.
pub fn bracket_action(l: &LieRinehartAlgebra) -> Tensor3 {
    l.bracket_tensor().clone()
}

/// True when the tensor is the zero action.
pub fn is_zero_action(act: &Tensor3) -> bool {
    is_zero(act.entries())
}

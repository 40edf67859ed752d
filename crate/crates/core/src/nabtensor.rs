//! Mutual actions, crossed modules, the non-abelian tensor product `L ⊗ M`
//! and the hat tensor `L ⊗̂ L`.
//!
//! Ambient coordinates of `A ⊗ L ⊗ M` are `(p, i, j) ↦ p·nl·nm + i·nm + j`
//! for `e_p ⊗ x_i ⊗ m_j`, which stands for the generator `e_p (x_i ⊗ m_j)`.

use std::sync::Arc;

use crate::algebra::{
    apply_action, quotient_algebra, validate_action, Ambient, CommAlgebra, LRMorphism, LieRinehartAlgebra,
};
use crate::error::{ensure_dim, Error, Result};
use crate::exactlin::{
    axpy, int, is_zero, matrix_of, outer3, support, unit, zeros, Matrix, QuotientPresentation, Scalar, Subspace,
    SubspaceBuilder, Tensor3, Vector,
};
use crate::report::{Axiom, ValidationReport};
use crate::uce::{build_uce, linear_section, universal_lift, UceAlgebra};

/// Actions of `L` on `M` (`l_on_m[i][j] = ^{x_i} m_j`) and of `M` on `L`
/// (`m_on_l[j][i] = ^{m_j} x_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPair {
    pub l_on_m: Tensor3,
    pub m_on_l: Tensor3,
}

impl ActionPair {
    /// Both algebras act on each other by zero.
    pub fn trivial(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra) -> Self {
        ActionPair {
            l_on_m: Tensor3::zeros(l.dim(), m.dim(), m.dim()),
            m_on_l: Tensor3::zeros(m.dim(), l.dim(), l.dim()),
        }
    }

    /// `L` acting on itself by the bracket in both slots.
    pub fn bracket(l: &LieRinehartAlgebra) -> Self {
        ActionPair {
            l_on_m: l.bracket_tensor().clone(),
            m_on_l: l.bracket_tensor().clone(),
        }
    }

    /// The same actions with the roles of `L` and `M` exchanged.
    pub fn swapped(&self) -> Self {
        ActionPair {
            l_on_m: self.m_on_l.clone(),
            m_on_l: self.l_on_m.clone(),
        }
    }

    /// `^x m`.
    pub fn act_on_m(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        apply_action(&self.l_on_m, x, m)
    }

    /// `^m x`.
    pub fn act_on_l(&self, m: &[Scalar], x: &[Scalar]) -> Vector {
        apply_action(&self.m_on_l, m, x)
    }
}

fn shape_check(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra, pair: &ActionPair) -> Result<()> {
    ensure_dim("action of L on M", l.dim(), pair.l_on_m.dims()[0])?;
    ensure_dim("action of L on M", m.dim(), pair.l_on_m.dims()[1])?;
    ensure_dim("action of M on L", m.dim(), pair.m_on_l.dims()[0])?;
    ensure_dim("action of M on L", l.dim(), pair.m_on_l.dims()[1])?;
    if l.base() != m.base() {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// `[α_L(x_i), α_M(m_j)]`.
fn pair_anchor(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra, i: usize, j: usize) -> Matrix {
    l.anchor()[i].commutator(&m.anchor()[j])
}

/// Checks both actions and the compatibility conditions on basis
/// instances:
///
/// * `−α_L(^m x) = [α_L x, α_M m]` ([`Axiom::CompatAnchorLeft`]),
/// * `α_M(^x m) = [α_L x, α_M m]` ([`Axiom::CompatAnchorRight`]),
/// * `^{(^m x)} n = [n, ^x m]` ([`Axiom::CompatLeft`]),
/// * `^{(^x m)} y = [y, ^m x]` ([`Axiom::CompatRight`]).
pub fn check_compatible(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra, pair: &ActionPair) -> Result<ValidationReport> {
    shape_check(l, m, pair)?;
    let mut report = validate_action(l, m, &pair.l_on_m, false)?;
    report.extend(validate_action(m, l, &pair.m_on_l, false)?);
    let (nl, nm) = (l.dim(), m.dim());
    for i in 0..nl {
        for j in 0..nm {
            let target = pair_anchor(l, m, i, j);
            let mx = pair.m_on_l.fiber(j, i);
            let xm = pair.l_on_m.fiber(i, j);
            report.check(
                l.anchor_of(mx).scale(&int(-1)) == target,
                Axiom::CompatAnchorLeft,
                &[i, j],
            );
            report.check(m.anchor_of(xm) == target, Axiom::CompatAnchorRight, &[i, j]);
            for k in 0..nm {
                let lhs = pair.act_on_m(mx, &unit(nm, k));
                let rhs = m.bracket(&unit(nm, k), xm);
                report.check(lhs == rhs, Axiom::CompatLeft, &[i, j, k]);
            }
            for k in 0..nl {
                let lhs = pair.act_on_l(xm, &unit(nl, k));
                let rhs = l.bracket(&unit(nl, k), mx);
                report.check(lhs == rhs, Axiom::CompatRight, &[i, j, k]);
            }
        }
    }
    Ok(report)
}

/// A crossed module `∂: R → L` with `L` acting on `R` (`action[i][j]` is
/// `x_i ∘ r_j`).
#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub r: Arc<LieRinehartAlgebra>,
    pub l: Arc<LieRinehartAlgebra>,
    pub boundary: Matrix,
    pub action: Tensor3,
}

impl CrossedModule {
    /// The inclusion of an ideal `I ⊆ L` (given as a subspace), `L` acting
    /// by the bracket.
    pub fn ideal_inclusion(l: &Arc<LieRinehartAlgebra>, ideal: &Subspace) -> Result<Self> {
        l.ideal_report(ideal)?;
        let (r, incl) = l.restrict_to(ideal)?;
        let coords = |v: &[Scalar]| ideal.coordinates(v).expect("closed under the bracket");
        let action = Tensor3::from_fn(l.dim(), r.dim(), r.dim(), |i, j| {
            coords(&l.bracket(&unit(l.dim(), i), &incl.column(j)))
        });
        Ok(CrossedModule {
            r: Arc::new(r),
            l: l.clone(),
            boundary: incl,
            action,
        })
    }

    /// `Ker f ↪ L` for a morphism `f: L → M`.
    pub fn kernel_inclusion(f: &LRMorphism) -> Result<Self> {
        Self::ideal_inclusion(f.source(), &f.kernel())
    }

    /// `0: R → L` for `R` an abelian algebra with zero anchor carrying a
    /// left module structure (`action[i][j] = x_i · r_j`).
    pub fn zero_map(l: &Arc<LieRinehartAlgebra>, r: &Arc<LieRinehartAlgebra>, action: Tensor3) -> Self {
        CrossedModule {
            r: r.clone(),
            l: l.clone(),
            boundary: Matrix::zeros(l.dim(), r.dim()),
            action,
        }
    }

    pub fn act(&self, x: &[Scalar], r: &[Scalar]) -> Vector {
        apply_action(&self.action, x, r)
    }
}

/// Checks the action (Lie law, derivation law, `(ax)∘r = a(x∘r)`,
/// `x∘(ar) = a(x∘r) + x(a)r`) and, on basis instances,
///
/// * `∂[r, r'] = [∂r, ∂r']` ([`Axiom::CrossedLieMap`]),
/// * `∂(x∘r) = [x, ∂r]` ([`Axiom::CrossedEquivariance`]),
/// * `∂(r')∘r = [r', r]` ([`Axiom::CrossedPeiffer`]),
/// * `∂(ar) = a∂(r)` ([`Axiom::CrossedALinear`]),
/// * `∂(r)(a) = 0` ([`Axiom::CrossedAnchor`]).
pub fn validate_crossed_module(xm: &CrossedModule) -> Result<ValidationReport> {
    let (l, r) = (&*xm.l, &*xm.r);
    ensure_dim("crossed module boundary rows", l.dim(), xm.boundary.rows())?;
    ensure_dim("crossed module boundary columns", r.dim(), xm.boundary.cols())?;
    if l.base() != r.base() {
        return Err(Error::BaseMismatch);
    }
    let mut report = validate_action(l, r, &xm.action, true)?;
    let (nl, nr, na) = (l.dim(), r.dim(), l.base().dim());
    let d = &xm.boundary;
    for j in 0..nr {
        for k in j + 1..nr {
            let lhs = d.apply(r.bracket_tensor().fiber(j, k));
            let rhs = l.bracket(&d.column(j), &d.column(k));
            report.check(lhs == rhs, Axiom::CrossedLieMap, &[j, k]);
        }
    }
    for i in 0..nl {
        for j in 0..nr {
            let lhs = d.apply(xm.action.fiber(i, j));
            let rhs = l.bracket(&unit(nl, i), &d.column(j));
            report.check(lhs == rhs, Axiom::CrossedEquivariance, &[i, j]);
        }
    }
    for k in 0..nr {
        for j in 0..nr {
            let lhs = xm.act(&d.column(k), &unit(nr, j));
            let rhs = r.bracket(&unit(nr, k), &unit(nr, j));
            report.check(lhs == rhs, Axiom::CrossedPeiffer, &[k, j]);
        }
    }
    for p in 0..na {
        for j in 0..nr {
            let lhs = d.apply(r.a_action().fiber(p, j));
            let rhs = l.act(&unit(na, p), &d.column(j));
            report.check(lhs == rhs, Axiom::CrossedALinear, &[p, j]);
        }
    }
    for j in 0..nr {
        report.check(l.anchor_of(&d.column(j)).is_zero(), Axiom::CrossedAnchor, &[j]);
    }
    Ok(report)
}

/// The mutual actions induced by two crossed modules `∂: L → N` and
/// `∂': M → N`: `^x m = ∂(x)∘m` and `^m x = ∂'(m)∘x`.
pub fn actions_from_crossed_modules(xl: &CrossedModule, xm: &CrossedModule) -> Result<ActionPair> {
    if *xl.l != *xm.l {
        return Err(Error::Hypothesis("the crossed modules have different targets".into()));
    }
    let (nl, nm) = (xl.r.dim(), xm.r.dim());
    Ok(ActionPair {
        l_on_m: Tensor3::from_fn(nl, nm, nm, |i, j| xm.act(&xl.boundary.column(i), &unit(nm, j))),
        m_on_l: Tensor3::from_fn(nm, nl, nl, |j, i| xl.act(&xm.boundary.column(j), &unit(nl, i))),
    })
}

/// `A ⊗ L ⊗ M` with the bracket
/// `[a(x⊗m), b(y⊗n)] = −ab(^m x ⊗ ^y n) + a α(x⊗m)(b)(y⊗n) − α(y⊗n)(a) b(x⊗m)`
/// and anchor `α(a(x⊗m)) = a[α_L x, α_M m]`.
pub struct TensorAmbient<'a> {
    l: &'a LieRinehartAlgebra,
    m: &'a LieRinehartAlgebra,
    pair: &'a ActionPair,
    anchors: Vec<Matrix>,
}

impl<'a> TensorAmbient<'a> {
    pub fn new(l: &'a LieRinehartAlgebra, m: &'a LieRinehartAlgebra, pair: &'a ActionPair) -> Self {
        let anchors = (0..l.dim() * m.dim())
            .map(|s| pair_anchor(l, m, s / m.dim(), s % m.dim()))
            .collect();
        TensorAmbient { l, m, pair, anchors }
    }

    fn decode(&self, s: usize) -> (usize, usize, usize) {
        let (nl, nm) = (self.l.dim(), self.m.dim());
        (s / (nl * nm), (s / nm) % nl, s % nm)
    }
}

impl Ambient for TensorAmbient<'_> {
    fn base(&self) -> &CommAlgebra {
        self.l.base()
    }

    fn dim(&self) -> usize {
        self.l.base().dim() * self.l.dim() * self.m.dim()
    }

    fn bracket_basis(&self, s: usize, t: usize) -> Vector {
        let (p, i, j) = self.decode(s);
        let (q, k, l) = self.decode(t);
        let (nl, nm, na) = (self.l.dim(), self.m.dim(), self.l.base().dim());
        let base = self.l.base();
        let mx = self.pair.m_on_l.fiber(j, i);
        let yn = self.pair.l_on_m.fiber(k, l);
        let mut out = zeros(self.dim());
        if !is_zero(mx) && !is_zero(yn) {
            axpy(&mut out, &int(-1), &outer3(base.basis_product(p, q), mx, yn));
        }
        let a2 = base.mul(&unit(na, p), &self.anchors[i * nm + j].column(q));
        if !is_zero(&a2) {
            for (o, v) in out.iter_mut().zip(outer3(&a2, &unit(nl, k), &unit(nm, l))) {
                *o += v;
            }
        }
        let a3 = base.mul(&self.anchors[k * nm + l].column(p), &unit(na, q));
        if !is_zero(&a3) {
            for (o, v) in out.iter_mut().zip(outer3(&a3, &unit(nl, i), &unit(nm, j))) {
                *o -= v;
            }
        }
        out
    }

    fn act_basis(&self, r: usize, s: usize) -> Vector {
        let (p, i, j) = self.decode(s);
        outer3(
            self.l.base().basis_product(r, p),
            &unit(self.l.dim(), i),
            &unit(self.m.dim(), j),
        )
    }

    fn anchor_basis(&self, s: usize) -> Matrix {
        let (p, i, j) = self.decode(s);
        let na = self.l.base().dim();
        self.l
            .base()
            .scale_derivation(&unit(na, p), &self.anchors[i * self.m.dim() + j])
    }
}

/// `L ⊗ M` with its presentation and `μ(a(x⊗m)) = −a(^m x)`,
/// `ν(a(x⊗m)) = a(^x m)`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub l: Arc<LieRinehartAlgebra>,
    pub m: Arc<LieRinehartAlgebra>,
    pub pair: ActionPair,
    pub presentation: QuotientPresentation,
    pub algebra: Arc<LieRinehartAlgebra>,
    pub mu: LRMorphism,
    pub nu: LRMorphism,
}

impl TensorAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The class of `a(x ⊗ m)`.
    pub fn class(&self, a: &[Scalar], x: &[Scalar], m: &[Scalar]) -> Vector {
        self.presentation.project(&outer3(a, x, m))
    }

    /// `α_{L⊗M} = α_L ∘ μ = α_M ∘ ν` on basis classes.
    pub fn anchor_triangle(&self) -> bool {
        (0..self.dim()).all(|k| {
            let a = &self.algebra.anchor()[k];
            *a == self.l.anchor_of(&self.mu.matrix().column(k)) && *a == self.m.anchor_of(&self.nu.matrix().column(k))
        })
    }

    /// The canonical map from `A ⊗ L ⊗ M` (the module tensor product of
    /// the free A-module on `L ⊗_K M`); it is the quotient projection.
    pub fn module_map(&self) -> Matrix {
        self.presentation.projection_matrix()
    }
}

/// The bracket relations on basis tuples with coefficient `e_p`, closed under
/// the A-action:
/// `[x,y] ⊗ m − x ⊗ ^y m + y ⊗ ^x m` and `x ⊗ [m,n] − ^n x ⊗ m + ^m x ⊗ n`.
fn tensor_relations(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra, pair: &ActionPair) -> SubspaceBuilder {
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let mut b = SubspaceBuilder::new(na * nl * nm);
    for p in 0..na {
        let ap = unit(na, p);
        for i in 0..nl {
            for j in i + 1..nl {
                for k in 0..nm {
                    let mk = unit(nm, k);
                    let mut v = outer3(&ap, l.bracket_tensor().fiber(i, j), &mk);
                    axpy(&mut v, &int(-1), &outer3(&ap, &unit(nl, i), pair.l_on_m.fiber(j, k)));
                    axpy(&mut v, &int(1), &outer3(&ap, &unit(nl, j), pair.l_on_m.fiber(i, k)));
                    if !is_zero(&v) {
                        b.insert(v);
                    }
                }
            }
        }
        for i in 0..nl {
            let xi = unit(nl, i);
            for j in 0..nm {
                for k in j + 1..nm {
                    let mut v = outer3(&ap, &xi, m.bracket_tensor().fiber(j, k));
                    axpy(&mut v, &int(-1), &outer3(&ap, pair.m_on_l.fiber(k, i), &unit(nm, j)));
                    axpy(&mut v, &int(1), &outer3(&ap, pair.m_on_l.fiber(j, i), &unit(nm, k)));
                    if !is_zero(&v) {
                        b.insert(v);
                    }
                }
            }
        }
    }
    b
}

fn finish_tensor(
    l: &Arc<LieRinehartAlgebra>,
    m: &Arc<LieRinehartAlgebra>,
    pair: &ActionPair,
    relations: SubspaceBuilder,
) -> Result<TensorAlgebra> {
    let amb = TensorAmbient::new(l, m, pair);
    let span = relations.finish().close_under(&amb.action_operators());
    let (presentation, alg) = quotient_algebra(&amb, span, "tensor bracket")?;
    let report = alg.validate();
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "tensor product",
            report,
        });
    }
    let algebra = Arc::new(alg);
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let decode = |k: usize| {
        let s = presentation.representative(k);
        (s / (nl * nm), (s / nm) % nl, s % nm)
    };
    let mu_m = matrix_of(algebra.dim(), nl, |k| {
        let (p, i, j) = decode(k);
        let v = l.act(&unit(na, p), pair.m_on_l.fiber(j, i));
        v.into_iter().map(|x| -x).collect()
    });
    let nu_m = matrix_of(algebra.dim(), nm, |k| {
        let (p, i, j) = decode(k);
        m.act(&unit(na, p), pair.l_on_m.fiber(i, j))
    });
    let mu = LRMorphism::validated(algebra.clone(), l.clone(), mu_m)?;
    let nu = LRMorphism::validated(algebra.clone(), m.clone(), nu_m)?;
    let t = TensorAlgebra {
        l: l.clone(),
        m: m.clone(),
        pair: pair.clone(),
        presentation,
        algebra,
        mu,
        nu,
    };
    if !t.anchor_triangle() {
        return Err(Error::IllDefined {
            construction: "tensor product",
            detail: "the anchor triangle does not commute".into(),
        });
    }
    Ok(t)
}

fn require_compatible(l: &LieRinehartAlgebra, m: &LieRinehartAlgebra, pair: &ActionPair) -> Result<()> {
    let report = check_compatible(l, m, pair)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid {
            what: "pair of actions",
            report,
        })
    }
}

/// `L ⊗ M` for compatible actions. The bracket is checked to descend to the
/// quotient, and `μ`, `ν` are checked to be morphisms.
pub fn tensor_product(
    l: &Arc<LieRinehartAlgebra>,
    m: &Arc<LieRinehartAlgebra>,
    pair: &ActionPair,
) -> Result<TensorAlgebra> {
    require_compatible(l, m, pair)?;
    finish_tensor(l, m, pair, tensor_relations(l, m, pair))
}

/// `L ⊗̂ L` for perfect `L` with the bracket actions: `L ⊗ L` with the
/// additional relation
/// `a[x,y] ⊗ b[x',y'] = ab([x,y] ⊗ [x',y']) − b[x',y'](a)(x⊗y) + a[x,y](b)(x'⊗y')`
/// on basis 6-tuples.
pub fn hat_tensor(l: &Arc<LieRinehartAlgebra>) -> Result<TensorAlgebra> {
    if !l.is_perfect() {
        return Err(Error::NotPerfect("the algebra"));
    }
    let pair = ActionPair::bracket(l);
    require_compatible(l, l, &pair)?;
    let mut rel = tensor_relations(l, l, &pair);
    let (n, na) = (l.dim(), l.base().dim());
    let base = l.base();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for p in 0..na {
        let ap = unit(na, p);
        for q in 0..na {
            let aq = unit(na, q);
            for &(i, j) in &pairs {
                let xy = l.bracket_tensor().fiber(i, j);
                if is_zero(xy) {
                    continue;
                }
                let a_xy = l.act(&ap, xy);
                let xy_of_b = l.anchor_apply(xy, &aq);
                for &(k, m) in &pairs {
                    let kl = l.bracket_tensor().fiber(k, m);
                    if is_zero(kl) {
                        continue;
                    }
                    let mut v = outer3(base.unit(), &a_xy, &l.act(&aq, kl));
                    axpy(&mut v, &int(-1), &outer3(base.basis_product(p, q), xy, kl));
                    let kl_of_a = base.mul(&aq, &l.anchor_apply(kl, &ap));
                    axpy(&mut v, &int(1), &outer3(&kl_of_a, &unit(n, i), &unit(n, j)));
                    let a_xy_b = base.mul(&ap, &xy_of_b);
                    axpy(&mut v, &int(-1), &outer3(&a_xy_b, &unit(n, k), &unit(n, m)));
                    if !is_zero(&v) {
                        rel.insert(v);
                    }
                }
            }
        }
    }
    finish_tensor(l, l, &pair, rel)
}

/// A K-bilinear map `L × M → T` given by `values[i][j] = f(x_i, m_j)`.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub target: Arc<LieRinehartAlgebra>,
    pub values: Tensor3,
}

impl Pairing {
    pub fn eval(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        apply_action(&self.values, x, m)
    }
}

/// Checks the pairing laws on basis instances:
///
/// * `α_T f(x, m) = [α_L x, α_M m]` ([`Axiom::PairingAnchor`]),
/// * `f([x, y], m) = f(x, ^y m) − f(y, ^x m)` ([`Axiom::PairingLeft`]),
/// * `f(x, [m, n]) = f(^n x, m) − f(^m x, n)` ([`Axiom::PairingRight`]),
/// * `f(a ^m x, b ^y n) = −ab[f(x,m), f(y,n)] − a[α_L x, α_M m](b) f(y,n)
///   + [α_L y, α_M n](a) b f(x,m)` ([`Axiom::PairingBracket`]) for `a = b = 1`,
///   or for all basis `a, b` when `all_coefficients` is set.
pub fn validate_pairing(
    l: &LieRinehartAlgebra,
    m: &LieRinehartAlgebra,
    pair: &ActionPair,
    f: &Pairing,
    all_coefficients: bool,
) -> Result<ValidationReport> {
    shape_check(l, m, pair)?;
    ensure_dim("pairing (L slot)", l.dim(), f.values.dims()[0])?;
    ensure_dim("pairing (M slot)", m.dim(), f.values.dims()[1])?;
    ensure_dim("pairing target", f.target.dim(), f.values.dims()[2])?;
    let t = &*f.target;
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let mut report = ValidationReport::new();
    for i in 0..nl {
        for j in 0..nm {
            let ok = t.anchor_of(f.values.fiber(i, j)) == pair_anchor(l, m, i, j);
            report.check(ok, Axiom::PairingAnchor, &[i, j]);
        }
    }
    for i in 0..nl {
        for k in i + 1..nl {
            for j in 0..nm {
                let lhs = f.eval(l.bracket_tensor().fiber(i, k), &unit(nm, j));
                let a = f.eval(&unit(nl, i), pair.l_on_m.fiber(k, j));
                let b = f.eval(&unit(nl, k), pair.l_on_m.fiber(i, j));
                let ok = (0..t.dim()).all(|r| lhs[r] == &a[r] - &b[r]);
                report.check(ok, Axiom::PairingLeft, &[i, k, j]);
            }
        }
    }
    for i in 0..nl {
        for j in 0..nm {
            for k in j + 1..nm {
                let lhs = f.eval(&unit(nl, i), m.bracket_tensor().fiber(j, k));
                let a = f.eval(pair.m_on_l.fiber(k, i), &unit(nm, j));
                let b = f.eval(pair.m_on_l.fiber(j, i), &unit(nm, k));
                let ok = (0..t.dim()).all(|r| lhs[r] == &a[r] - &b[r]);
                report.check(ok, Axiom::PairingRight, &[i, j, k]);
            }
        }
    }
    let coeffs: Vec<Vector> = if all_coefficients {
        (0..na).map(|p| unit(na, p)).collect()
    } else {
        vec![l.base().unit().to_vec()]
    };
    for (pa, a) in coeffs.iter().enumerate() {
        for (pb, b) in coeffs.iter().enumerate() {
            let ab = l.base().mul(a, b);
            for i in 0..nl {
                for j in 0..nm {
                    let fxm = f.values.fiber(i, j);
                    let amx = l.act(a, pair.m_on_l.fiber(j, i));
                    let xm_b = pair_anchor(l, m, i, j).apply(b);
                    for k in 0..nl {
                        for q in 0..nm {
                            let fyn = f.values.fiber(k, q);
                            let lhs = f.eval(&amx, &m.act(b, pair.l_on_m.fiber(k, q)));
                            let mut rhs = t.act(&ab, &t.bracket(fxm, fyn));
                            rhs.iter_mut().for_each(|x| *x = -x.clone());
                            axpy(&mut rhs, &int(-1), &t.act(&l.base().mul(a, &xm_b), fyn));
                            let yn_a = pair_anchor(l, m, k, q).apply(a);
                            axpy(&mut rhs, &int(1), &t.act(&l.base().mul(&yn_a, b), fxm));
                            report.check(lhs == rhs, Axiom::PairingBracket, &[pa, pb, i, j, k, q]);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The universal pairing `(x, m) ↦ x ⊗ m`.
pub fn universal_pairing(t: &TensorAlgebra) -> Pairing {
    let (nl, nm) = (t.l.dim(), t.m.dim());
    let one = t.l.base().unit();
    Pairing {
        target: t.algebra.clone(),
        values: Tensor3::from_fn(nl, nm, t.dim(), |i, j| t.class(one, &unit(nl, i), &unit(nm, j))),
    }
}

/// The morphism `φ: L ⊗ M → T` with `φ(a(x ⊗ m)) = a f(x, m)` for a
/// pairing `f` (laws checked with `a = b = 1`). The relations of the
/// presentation are checked to be killed.
pub fn factor_pairing(t: &TensorAlgebra, f: &Pairing) -> Result<LRMorphism> {
    let report = validate_pairing(&t.l, &t.m, &t.pair, f, false)?;
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "pairing",
            report,
        });
    }
    let target = &f.target;
    let (nl, nm, na) = (t.l.dim(), t.m.dim(), t.l.base().dim());
    let value = |s: usize| {
        let (p, i, j) = (s / (nl * nm), (s / nm) % nl, s % nm);
        target.act(&unit(na, p), f.values.fiber(i, j))
    };
    for (ri, r) in t.presentation.relations().basis().iter().enumerate() {
        let mut v = zeros(target.dim());
        for (s, c) in support(r) {
            axpy(&mut v, c, &value(s));
        }
        if !is_zero(&v) {
            return Err(Error::IllDefined {
                construction: "factored pairing",
                detail: format!("relation {ri} is not killed"),
            });
        }
    }
    let m = matrix_of(t.dim(), target.dim(), |k| value(t.presentation.representative(k)));
    LRMorphism::validated(t.algebra.clone(), target.clone(), m)
}

/// `L ⊗ M → L' ⊗ M'`, `a(x ⊗ m) ↦ a(f x ⊗ g m)`, after checking that the
/// relations are respected.
pub fn tensor_map(src: &TensorAlgebra, dst: &TensorAlgebra, f: &Matrix, g: &Matrix) -> Result<LRMorphism> {
    let (nl, nm, na) = (src.l.dim(), src.m.dim(), src.l.base().dim());
    let fx: Vec<Vector> = (0..nl).map(|i| f.column(i)).collect();
    let gm: Vec<Vector> = (0..nm).map(|j| g.column(j)).collect();
    let ambient = |v: &[Scalar]| {
        let mut out = zeros(dst.presentation.ambient_dim());
        for (s, c) in support(v) {
            let (p, i, j) = (s / (nl * nm), (s / nm) % nl, s % nm);
            axpy(&mut out, c, &outer3(&unit(na, p), &fx[i], &gm[j]));
        }
        out
    };
    for (ri, r) in src.presentation.relations().basis().iter().enumerate() {
        if !dst.presentation.relations().contains(&ambient(r)) {
            return Err(Error::IllDefined {
                construction: "tensor of morphisms",
                detail: format!("relation {ri} is not mapped into the relations"),
            });
        }
    }
    let m = matrix_of(src.dim(), dst.dim(), |k| {
        dst.presentation.project(&ambient(&unit(
            src.presentation.ambient_dim(),
            src.presentation.representative(k),
        )))
    });
    LRMorphism::validated(src.algebra.clone(), dst.algebra.clone(), m)
}

/// The isomorphisms `L ⊗ M → M ⊗ L`, `x ⊗ m ↦ −(m ⊗ x)`, and back; both
/// are validated as morphisms and checked to be mutually inverse.
pub fn symmetry_isomorphism(lm: &TensorAlgebra, ml: &TensorAlgebra) -> Result<(LRMorphism, LRMorphism)> {
    let there = swap_map(lm, ml)?;
    let back = swap_map(ml, lm)?;
    if back.matrix().mul(there.matrix()) != Matrix::identity(lm.dim())
        || there.matrix().mul(back.matrix()) != Matrix::identity(ml.dim())
    {
        return Err(Error::IllDefined {
            construction: "symmetry isomorphism",
            detail: "the two maps are not mutually inverse".into(),
        });
    }
    Ok((there, back))
}

fn swap_map(src: &TensorAlgebra, dst: &TensorAlgebra) -> Result<LRMorphism> {
    let (nl, nm) = (src.l.dim(), src.m.dim());
    if dst.l.dim() != nm || dst.m.dim() != nl {
        return Err(Error::Hypothesis("tensor products do not have swapped factors".into()));
    }
    let image = |s: usize| {
        let (p, i, j) = (s / (nl * nm), (s / nm) % nl, s % nm);
        p * nl * nm + j * nl + i
    };
    let ambient = |v: &[Scalar]| {
        let mut out = zeros(dst.presentation.ambient_dim());
        for (s, c) in support(v) {
            out[image(s)] = -c.clone();
        }
        out
    };
    for (ri, r) in src.presentation.relations().basis().iter().enumerate() {
        if !dst.presentation.relations().contains(&ambient(r)) {
            return Err(Error::IllDefined {
                construction: "symmetry isomorphism",
                detail: format!("relation {ri} is not mapped into the relations"),
            });
        }
    }
    let m = matrix_of(src.dim(), dst.dim(), |k| {
        dst.presentation.project(&ambient(&unit(
            src.presentation.ambient_dim(),
            src.presentation.representative(k),
        )))
    });
    LRMorphism::validated(src.algebra.clone(), dst.algebra.clone(), m)
}

/// `L ⊗̂ L` with explicit mutually inverse isomorphisms to and from
/// `uce_A(L)`, both found by lifting through central extensions.
#[derive(Clone, Debug)]
pub struct HatUce {
    pub hat: TensorAlgebra,
    pub uce: UceAlgebra,
    /// `uce_A(L) → L ⊗̂ L`, the universal lift of the identity through `μ`.
    pub to_hat: LRMorphism,
    /// `L ⊗̂ L → uce_A(L)`, factored from the pairing `(x, y) ↦ [s x, s y]`.
    pub to_uce: LRMorphism,
    pub central: bool,
}

impl HatUce {
    pub fn inverse_pair(&self) -> bool {
        self.to_uce.matrix().mul(self.to_hat.matrix()) == Matrix::identity(self.uce.dim())
            && self.to_hat.matrix().mul(self.to_uce.matrix()) == Matrix::identity(self.hat.dim())
    }
}

pub fn hat_uce_isomorphism(l: &Arc<LieRinehartAlgebra>) -> Result<HatUce> {
    let hat = hat_tensor(l)?;
    let uce = build_uce(l)?;
    let witness = crate::constructions::CentralExtensionWitness::new(hat.mu.clone())?;
    let central = witness.is_central();
    let id = LRMorphism::identity(l.clone());
    let to_hat = universal_lift(&id, &hat.mu, &uce)?;
    let s = linear_section(uce.uce_morphism.matrix())?;
    let n = l.dim();
    let ua = &uce.algebra;
    let pairing = Pairing {
        target: ua.clone(),
        values: Tensor3::from_fn(n, n, ua.dim(), |i, j| ua.bracket(&s.column(i), &s.column(j))),
    };
    let to_uce = factor_pairing(&hat, &pairing)?;
    Ok(HatUce {
        hat,
        uce,
        to_hat,
        to_uce,
        central,
    })
}

/// Exactness of `L ⊗ P → M ⊗ P → N ⊗ P` for `L →f M →g N`.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub dims: [usize; 3],
    /// `f` and `g` commute with the actions: `f(^p x) = ^p f(x)` and
    /// `^x p = ^{f(x)} p`.
    pub actions_preserved: bool,
    pub surjective: bool,
    pub image_equals_kernel: bool,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.actions_preserved && self.surjective && self.image_equals_kernel
    }
}

fn preserves(src: &TensorAlgebra, dst: &TensorAlgebra, f: &Matrix) -> bool {
    let (nl, np) = (src.l.dim(), src.m.dim());
    (0..np).all(|q| {
        (0..nl).all(|i| {
            let pq = unit(np, q);
            let xi = unit(nl, i);
            f.apply(&src.pair.act_on_l(&pq, &xi)) == dst.pair.act_on_l(&pq, &f.column(i))
                && src.pair.act_on_m(&xi, &pq) == dst.pair.act_on_m(&f.column(i), &pq)
        })
    })
}

/// Builds the three tensor products with `P` and checks that
/// `image(f ⊗ 1) = kernel(g ⊗ 1)` and that `g ⊗ 1` is onto.
pub fn tensor_exactness(
    f: &LRMorphism,
    g: &LRMorphism,
    p: &Arc<LieRinehartAlgebra>,
    pairs: [&ActionPair; 3],
) -> Result<ExactnessReport> {
    if **f.target() != **g.source() {
        return Err(Error::Hypothesis("f and g are not composable".into()));
    }
    let lp = tensor_product(f.source(), p, pairs[0])?;
    let mp = tensor_product(f.target(), p, pairs[1])?;
    let np = tensor_product(g.target(), p, pairs[2])?;
    let actions_preserved = preserves(&lp, &mp, f.matrix()) && preserves(&mp, &np, g.matrix());
    let id = Matrix::identity(p.dim());
    let f1 = tensor_map(&lp, &mp, f.matrix(), &id)?;
    let g1 = tensor_map(&mp, &np, g.matrix(), &id)?;
    Ok(ExactnessReport {
        dims: [lp.dim(), mp.dim(), np.dim()],
        actions_preserved,
        surjective: g1.is_surjective(),
        image_equals_kernel: f1.image() == g1.kernel(),
    })
}

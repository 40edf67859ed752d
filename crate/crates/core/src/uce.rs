//! The universal central extension `uce_A(L) = A ⊗ L ⊗ L / M_A L`, lifts
//! along central extensions, and the characterization checks.
//!
//! Ambient coordinates of `A ⊗ L ⊗ L` are indexed `(p, i, j) ↦ p·n² + i·n + j`
//! for `e_p ⊗ x_i ⊗ x_j`. A basis class of the quotient is written
//! `(e_p, x_i, x_j)`.

use std::sync::Arc;

use crate::algebra::{quotient_algebra, Ambient, CommAlgebra, LRMorphism, LieRinehartAlgebra};
use crate::constructions::{product_with_trivial, pullback_extension, CentralExtensionWitness};
use crate::error::{Error, Result};
use crate::exactlin::{
    exp_nilpotent, is_zero, matrix_of, outer3, solve, sub, support, unit, zeros, Matrix, QuotientPresentation, Scalar,
    Subspace, SubspaceBuilder, Vector,
};

/// `A ⊗ L ⊗ L` with the bracket, action and anchor formulas on generators.
pub struct UceAmbient<'a> {
    l: &'a LieRinehartAlgebra,
    brackets: Vec<Vector>,
    anchors: Vec<Matrix>,
}

impl<'a> UceAmbient<'a> {
    pub fn new(l: &'a LieRinehartAlgebra) -> Self {
        let n = l.dim();
        let brackets: Vec<Vector> = (0..n * n)
            .map(|s| l.bracket_tensor().fiber(s / n, s % n).to_vec())
            .collect();
        let anchors = brackets.iter().map(|b| l.anchor_of(b)).collect();
        UceAmbient { l, brackets, anchors }
    }

    fn decode(&self, s: usize) -> (usize, usize, usize) {
        let n = self.l.dim();
        (s / (n * n), (s / n) % n, s % n)
    }
}

impl Ambient for UceAmbient<'_> {
    fn base(&self) -> &CommAlgebra {
        self.l.base()
    }

    fn dim(&self) -> usize {
        self.l.base().dim() * self.l.dim() * self.l.dim()
    }

    /// `[(a,x,y),(a',x',y')] = (aa',[x,y],[x',y']) + (a[x,y](a'),x',y') − ([x',y'](a)a',x,y)`.
    fn bracket_basis(&self, s: usize, t: usize) -> Vector {
        let (p, i, j) = self.decode(s);
        let (q, k, l) = self.decode(t);
        let (n, na) = (self.l.dim(), self.l.base().dim());
        let base = self.l.base();
        let (xy, kl) = (&self.brackets[i * n + j], &self.brackets[k * n + l]);
        if is_zero(xy) && is_zero(kl) {
            return zeros(self.dim());
        }
        let mut out = outer3(base.basis_product(p, q), xy, kl);
        let a2 = base.mul(&unit(na, p), &self.anchors[i * n + j].column(q));
        let a3 = base.mul(&self.anchors[k * n + l].column(p), &unit(na, q));
        if !is_zero(&a2) {
            for (o, v) in out.iter_mut().zip(outer3(&a2, &unit(n, k), &unit(n, l))) {
                *o += v;
            }
        }
        if !is_zero(&a3) {
            for (o, v) in out.iter_mut().zip(outer3(&a3, &unit(n, i), &unit(n, j))) {
                *o -= v;
            }
        }
        out
    }

    fn act_basis(&self, r: usize, s: usize) -> Vector {
        let (p, i, j) = self.decode(s);
        let n = self.l.dim();
        outer3(self.l.base().basis_product(r, p), &unit(n, i), &unit(n, j))
    }

    /// `(a, x, y) ↦ a·α([x, y])`.
    fn anchor_basis(&self, s: usize) -> Matrix {
        let (p, i, j) = self.decode(s);
        let n = self.l.dim();
        let na = self.l.base().dim();
        self.l.base().scale_derivation(&unit(na, p), &self.anchors[i * n + j])
    }
}

/// The A-submodule `M_A L ⊆ A ⊗ L ⊗ L` spanned by the four relation families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpan {
    pub span: Subspace,
}

impl RelationSpan {
    pub fn ambient_dim(&self) -> usize {
        self.span.ambient_dim()
    }
}

/// Instantiates the four relation families on basis tuples and closes the
/// span under the A-action:
///
/// 1. `a ⊗ x ⊗ x` on diagonal basis pairs (cross terms come from 2.),
/// 2. `a ⊗ x ⊗ y + a ⊗ y ⊗ x`,
/// 3. `a ⊗ x ⊗ [y,z] + a ⊗ y ⊗ [z,x] + a ⊗ z ⊗ [x,y]` for `x < y < z`
///    (the expression is alternating),
/// 4. `a ⊗ [x,y] ⊗ [x',y'] + [x,y](a) ⊗ x' ⊗ y' − 1 ⊗ [x,y] ⊗ a[x',y']` for
///    `x < y`, `x' < y'` (antisymmetric in each pair).
pub fn relation_span(l: &LieRinehartAlgebra) -> RelationSpan {
    let (n, na) = (l.dim(), l.base().dim());
    let d = na * n * n;
    let base = l.base();
    let mut b = SubspaceBuilder::new(d);
    let bracket = |i: usize, j: usize| l.bracket_tensor().fiber(i, j).to_vec();
    for p in 0..na {
        let ap = unit(na, p);
        for j in 0..n {
            b.insert(outer3(&ap, &unit(n, j), &unit(n, j)));
            for k in j + 1..n {
                let mut v = outer3(&ap, &unit(n, j), &unit(n, k));
                for (o, w) in v.iter_mut().zip(outer3(&ap, &unit(n, k), &unit(n, j))) {
                    *o += w;
                }
                b.insert(v);
            }
        }
    }
    for p in 0..na {
        let ap = unit(na, p);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut v = outer3(&ap, &unit(n, i), &bracket(j, k));
                    for w in [
                        outer3(&ap, &unit(n, j), &bracket(k, i)),
                        outer3(&ap, &unit(n, k), &bracket(i, j)),
                    ] {
                        for (o, x) in v.iter_mut().zip(w) {
                            *o += x;
                        }
                    }
                    if !is_zero(&v) {
                        b.insert(v);
                    }
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for p in 0..na {
        let ap = unit(na, p);
        for &(i, j) in &pairs {
            let xy = bracket(i, j);
            if is_zero(&xy) {
                continue;
            }
            let xy_a = l.anchor_apply(&xy, &ap);
            for &(k, m) in &pairs {
                let kl = bracket(k, m);
                if is_zero(&kl) && is_zero(&xy_a) {
                    continue;
                }
                let mut v = outer3(&ap, &xy, &kl);
                if !is_zero(&xy_a) {
                    for (o, w) in v.iter_mut().zip(outer3(&xy_a, &unit(n, k), &unit(n, m))) {
                        *o += w;
                    }
                }
                for (o, w) in v.iter_mut().zip(outer3(base.unit(), &xy, &l.act(&ap, &kl))) {
                    *o -= w;
                }
                if !is_zero(&v) {
                    b.insert(v);
                }
            }
        }
    }
    let amb = UceAmbient::new(l);
    RelationSpan {
        span: b.finish().close_under(&amb.action_operators()),
    }
}

/// `uce_A(L)` with its presentation and the map `uce: (a, x, y) ↦ a[x, y]`.
#[derive(Clone, Debug)]
pub struct UceAlgebra {
    pub source: Arc<LieRinehartAlgebra>,
    pub presentation: QuotientPresentation,
    pub algebra: Arc<LieRinehartAlgebra>,
    pub uce_morphism: LRMorphism,
}

impl UceAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The class of `a ⊗ x ⊗ y`.
    pub fn class(&self, a: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vector {
        self.presentation.project(&outer3(a, x, y))
    }

    /// `(e_p, x_i, x_j)` for the representative of quotient basis vector `k`.
    pub fn representative(&self, k: usize) -> (usize, usize, usize) {
        let n = self.source.dim();
        let s = self.presentation.representative(k);
        (s / (n * n), (s / n) % n, s % n)
    }

    pub fn kernel(&self) -> Subspace {
        self.uce_morphism.kernel()
    }
}

/// Builds `uce_A(L)`. The structure is checked to descend to the quotient;
/// a failure is reported as [`Error::IllDefined`].
pub fn build_uce(l: &LieRinehartAlgebra) -> Result<UceAlgebra> {
    let source = Arc::new(l.clone());
    let amb = UceAmbient::new(l);
    let rel = relation_span(l);
    let (presentation, alg) = quotient_algebra(&amb, rel.span, "uce bracket")?;
    let algebra = Arc::new(alg);
    let (n, na) = (l.dim(), l.base().dim());
    let m = matrix_of(algebra.dim(), n, |k| {
        let s = presentation.representative(k);
        let (p, i, j) = (s / (n * n), (s / n) % n, s % n);
        l.act(&unit(na, p), l.bracket_tensor().fiber(i, j))
    });
    let uce_morphism = LRMorphism::validated(algebra.clone(), source.clone(), m)?;
    Ok(UceAlgebra {
        source,
        presentation,
        algebra,
        uce_morphism,
    })
}

/// `uce_A(f): (a, x, y) ↦ (a, f x, f y)` between already built extensions.
pub fn uce_map(f: &LRMorphism, su: &UceAlgebra, tu: &UceAlgebra) -> Result<LRMorphism> {
    if **f.source() != *su.source || **f.target() != *tu.source {
        return Err(Error::Hypothesis("uce_map: algebras do not match the morphism".into()));
    }
    let (n, na) = (su.source.dim(), su.source.base().dim());
    let images: Vec<Vector> = (0..n).map(|i| f.matrix().column(i)).collect();
    let ambient_image = |v: &[Scalar]| -> Vector {
        let mut out = zeros(tu.presentation.ambient_dim());
        for (s, c) in support(v) {
            let (p, i, j) = (s / (n * n), (s / n) % n, s % n);
            for (o, w) in out.iter_mut().zip(outer3(&unit(na, p), &images[i], &images[j])) {
                *o += c * w;
            }
        }
        out
    };
    for (ri, r) in su.presentation.relations().basis().iter().enumerate() {
        if !tu.presentation.relations().contains(&ambient_image(r)) {
            return Err(Error::IllDefined {
                construction: "uce of a morphism",
                detail: format!("relation {ri} is not mapped into the target relations"),
            });
        }
    }
    let m = matrix_of(su.dim(), tu.dim(), |k| {
        let s = su.presentation.representative(k);
        tu.presentation
            .project(&ambient_image(&unit(su.presentation.ambient_dim(), s)))
    });
    let map = LRMorphism::validated(su.algebra.clone(), tu.algebra.clone(), m)?;
    let lhs = tu.uce_morphism.matrix().mul(map.matrix());
    let rhs = f.matrix().mul(su.uce_morphism.matrix());
    if lhs != rhs {
        return Err(Error::IllDefined {
            construction: "uce of a morphism",
            detail: "uce ∘ uce(f) differs from f ∘ uce".into(),
        });
    }
    Ok(map)
}

/// `uce_A(f)`, building both extensions.
pub fn uce_on_morphism(f: &LRMorphism) -> Result<LRMorphism> {
    let su = build_uce(f.source())?;
    if f.source() == f.target() || **f.source() == **f.target() {
        return uce_map(f, &su, &su);
    }
    let tu = build_uce(f.target())?;
    uce_map(f, &su, &tu)
}

pub fn is_perfect(l: &LieRinehartAlgebra) -> bool {
    l.is_perfect()
}

/// The centrality witness of a surjective morphism.
pub fn is_central(p: &LRMorphism) -> Result<CentralExtensionWitness> {
    CentralExtensionWitness::new(p.clone())
}

fn require_central(g: &LRMorphism) -> Result<()> {
    let w = CentralExtensionWitness::new(g.clone())?;
    if w.is_central() {
        Ok(())
    } else {
        Err(Error::NotCentral(w.report))
    }
}

/// The linear section of a surjection `g` supported on the pivot columns of
/// its reduced row-echelon form.
pub fn linear_section(g: &Matrix) -> Result<Matrix> {
    let (_, pivots) = g.rref();
    if pivots.len() != g.rows() {
        return Err(Error::NotSurjective);
    }
    let sub = Matrix::from_fn(g.rows(), g.rows(), |r, c| g.get(r, pivots[c]).clone());
    let inv = sub.inverse().ok_or(Error::NotInvertible)?;
    let embed = Matrix::from_fn(g.cols(), g.rows(), |r, c| {
        if pivots[c] == r {
            Scalar::from_integer(1.into())
        } else {
            Scalar::from_integer(0.into())
        }
    });
    Ok(embed.mul(&inv))
}

/// All morphisms `h: L → M'` with `g ∘ h = f` for a central extension
/// `g: M' ↠ M`, as a particular solution plus the solution space of the
/// homogeneous system.
///
/// Every such `h` is `s ∘ f + φ` with `s` the linear section of `g` and `φ`
/// landing in `Ker g`; since `Ker g` is central, the morphism equations are
/// affine in `φ`.
#[derive(Clone, Debug)]
pub struct Lifts {
    pub particular: Option<LRMorphism>,
    /// Matrices `L → M'` (landing in `Ker g`) spanning the difference space.
    pub homogeneous: Vec<Matrix>,
}

impl Lifts {
    pub fn exists(&self) -> bool {
        self.particular.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.particular.is_some() && self.homogeneous.is_empty()
    }
}

pub fn solve_lifts(f: &LRMorphism, g: &LRMorphism) -> Result<Lifts> {
    if **f.target() != **g.target() {
        return Err(Error::Hypothesis("solve_lifts: f and g must share their target".into()));
    }
    require_central(g)?;
    let (l, e) = (f.source().clone(), g.source().clone());
    let (n, na) = (l.dim(), l.base().dim());
    let s = linear_section(g.matrix())?;
    let sf = s.mul(f.matrix());
    let kernel = g.kernel();
    let kb = kernel.basis_matrix().transpose(); // ne × k
    let k = kernel.rank();
    let h_of = |c: &[Scalar]| -> Matrix {
        // φ = K · C with C (k × n) read row-major
        let cm = Matrix::from_fn(k, n, |r, col| c[r * n + col].clone());
        sf.add(&kb.mul(&cm))
    };
    let residual = |c: &[Scalar]| -> Vector {
        let h = h_of(c);
        let mut out = Vec::new();
        for p in 0..na {
            for i in 0..n {
                let lhs = h.apply(l.a_action().fiber(p, i));
                let rhs = e.act(&unit(na, p), &h.column(i));
                out.extend(sub(&lhs, &rhs));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = h.apply(l.bracket_tensor().fiber(i, j));
                let rhs = e.bracket(&sf.column(i), &sf.column(j));
                out.extend(sub(&lhs, &rhs));
            }
        }
        out
    };
    let unknowns = k * n;
    let r0 = residual(&zeros(unknowns));
    let lin = matrix_of(unknowns, r0.len(), |t| sub(&residual(&unit(unknowns, t)), &r0));
    let neg: Vector = r0.iter().map(|x| -x).collect();
    let particular = match solve(&lin, &neg) {
        Some(c) => {
            let h = LRMorphism::new(l.clone(), e.clone(), h_of(&c))?;
            let report = h.validate();
            if !report.is_valid() {
                // the anchor equation is not part of the linear system; it
                // holds exactly when f respects anchors
                return Err(Error::Invalid { what: "lift", report });
            }
            Some(h)
        }
        None => None,
    };
    let homogeneous = lin
        .kernel()
        .basis()
        .iter()
        .map(|c| kb.mul(&Matrix::from_fn(k, n, |r, col| c[r * n + col].clone())))
        .collect();
    Ok(Lifts {
        particular,
        homogeneous,
    })
}

/// The lift `𝔣: uce_A(L) → M'` of `f: L → M` through a central extension
/// `g: M' ↠ M`, `𝔣(a, x, y) = a[s f x, s f y]` with `s` the linear section.
pub fn universal_lift(f: &LRMorphism, g: &LRMorphism, u: &UceAlgebra) -> Result<LRMorphism> {
    if **f.source() != *u.source || **f.target() != **g.target() {
        return Err(Error::Hypothesis("universal_lift: algebras do not match".into()));
    }
    require_central(g)?;
    let e = g.source().clone();
    let (n, na) = (u.source.dim(), u.source.base().dim());
    let sf = linear_section(g.matrix())?.mul(f.matrix());
    let br: Vec<Vector> = (0..n * n)
        .map(|s| e.bracket(&sf.column(s / n), &sf.column(s % n)))
        .collect();
    let value = |s: usize| -> Vector {
        let (p, ij) = (s / (n * n), s % (n * n));
        e.act(&unit(na, p), &br[ij])
    };
    for (ri, r) in u.presentation.relations().basis().iter().enumerate() {
        let mut v = zeros(e.dim());
        for (s, c) in support(r) {
            for (o, w) in v.iter_mut().zip(value(s)) {
                *o += c * w;
            }
        }
        if !is_zero(&v) {
            return Err(Error::IllDefined {
                construction: "universal lift",
                detail: format!("relation {ri} is not killed"),
            });
        }
    }
    let m = matrix_of(u.dim(), e.dim(), |k| value(u.presentation.representative(k)));
    let lift = LRMorphism::validated(u.algebra.clone(), e, m)?;
    if g.matrix().mul(lift.matrix()) != f.matrix().mul(u.uce_morphism.matrix()) {
        return Err(Error::IllDefined {
            construction: "universal lift",
            detail: "the lifting square does not commute".into(),
        });
    }
    Ok(lift)
}

/// True when two maps out of `E` agree on `{E, E}`.
pub fn agree_on_derived(h1: &LRMorphism, h2: &LRMorphism) -> bool {
    let d = h1.source().derived();
    let diff = h1.matrix().sub(h2.matrix());
    d.basis().iter().all(|v| is_zero(&diff.apply(v)))
}

/// Automorphisms `exp(ad x_i)` for basis vectors with nilpotent adjoint,
/// kept only when they are Lie–Rinehart automorphisms.
pub fn nilpotent_inner_automorphisms(l: &Arc<LieRinehartAlgebra>) -> Vec<LRMorphism> {
    (0..l.dim())
        .filter_map(|i| {
            let ad = l.adjoint(&unit(l.dim(), i));
            if ad.is_zero() {
                return None;
            }
            let m = exp_nilpotent(&ad)?;
            LRMorphism::validated(l.clone(), l.clone(), m).ok()
        })
        .collect()
}

/// One constructed central extension `p: E ↠ X` together with the map
/// `f: uce_A(L) → X` it is tested against.
#[derive(Clone, Debug)]
pub struct BatteryResult {
    pub name: String,
    pub kernel_dim: usize,
    pub central: bool,
    /// Exactly one morphism `h` with `p ∘ h = f`.
    pub unique_split: bool,
    /// `E = {E, E} + Ker p`.
    pub lemma_sum: bool,
    /// `Z_A(E) = p⁻¹(Z_A(X))`.
    pub lemma_center: bool,
}

impl BatteryResult {
    pub fn passed(&self) -> bool {
        self.central && self.unique_split && self.lemma_sum && self.lemma_center
    }
}

#[derive(Clone, Debug)]
pub struct CharacterizationReport {
    pub uce_dim: usize,
    pub kernel_dim: usize,
    pub center_dim: usize,
    pub uce_perfect: bool,
    pub kernel_central: bool,
    /// `Ker uce = Z_A(uce_A L)`, checked when `L` is centreless.
    pub kernel_is_center: Option<bool>,
    pub battery: Vec<BatteryResult>,
}

impl CharacterizationReport {
    pub fn passed(&self) -> bool {
        self.uce_perfect
            && self.kernel_central
            && self.kernel_is_center != Some(false)
            && self.battery.iter().all(BatteryResult::passed)
    }
}

fn battery_entry(name: &str, p: &LRMorphism, f: &LRMorphism) -> Result<BatteryResult> {
    let w = CentralExtensionWitness::new(p.clone())?;
    let central = w.is_central();
    let unique_split = central && solve_lifts(f, p)?.is_unique();
    let e = p.source();
    let lemma_sum = e.derived().sum(&w.kernel).is_full();
    let lemma_center = e.center() == p.target().center().preimage_under(p.matrix());
    Ok(BatteryResult {
        name: name.to_string(),
        kernel_dim: w.kernel.rank(),
        central,
        unique_split,
        lemma_sum,
        lemma_center,
    })
}

/// Runs the characterization battery for a perfect `L`.
///
/// Central extensions of `U = uce_A(L)` (each must split uniquely):
/// the identity, `U × Q` and `U × Q²`, the pullback of `U × Q` along an
/// automorphism `uce_A(φ)`, `uce_A(U) → U`, and its pullback along
/// `uce_A(φ)`. Central extensions of `L` (each must receive exactly one map
/// from `U` over `L`): the quotients of `U` by `0`, by each basis line of
/// `Ker uce`, and by `Ker uce`.
pub fn verify_characterization(l: &LieRinehartAlgebra) -> Result<CharacterizationReport> {
    if !l.is_perfect() {
        return Err(Error::NotPerfect("the algebra"));
    }
    let u = build_uce(l)?;
    let ua = u.algebra.clone();
    let kernel = u.kernel();
    let center_u = ua.center();
    let kernel_is_center = l.center().is_zero().then(|| kernel == center_u);

    let id_u = LRMorphism::identity(ua.clone());
    let mut battery = vec![battery_entry("identity", &id_u, &id_u)?];
    let prod1 = product_with_trivial(&ua, 1)?;
    battery.push(battery_entry("product with Q", &prod1.first, &id_u)?);
    let prod2 = product_with_trivial(&ua, 2)?;
    battery.push(battery_entry("product with Q^2", &prod2.first, &id_u)?);

    let la = u.source.clone();
    let phi = nilpotent_inner_automorphisms(&la)
        .into_iter()
        .next()
        .unwrap_or_else(|| LRMorphism::identity(la.clone()));
    let uphi = uce_map(&phi, &u, &u)?;
    let pb = pullback_extension(&prod1.first, &uphi)?;
    battery.push(battery_entry("pullback of U x Q along uce(exp ad)", &pb.p_l.p, &id_u)?);

    let uu = build_uce(&ua)?;
    battery.push(battery_entry("uce of U", &uu.uce_morphism, &id_u)?);
    let pb = pullback_extension(&uu.uce_morphism, &uphi)?;
    battery.push(battery_entry("pullback of uce(U) along uce(exp ad)", &pb.p_l.p, &id_u)?);

    let mut quotients = vec![("quotient by 0".to_string(), Subspace::zero(ua.dim()))];
    for (i, v) in kernel.basis().iter().enumerate() {
        quotients.push((
            format!("quotient by kernel line {i}"),
            Subspace::span(ua.dim(), [v.clone()]),
        ));
    }
    if kernel.rank() > 1 {
        quotients.push(("quotient by Ker uce".to_string(), kernel.clone()));
    }
    for (name, k) in quotients {
        let (q, proj) = ua.quotient_by_ideal(&k)?;
        let q = Arc::new(q);
        let down = u.uce_morphism.matrix().mul(&linear_section(&proj)?);
        let p = LRMorphism::validated(q, la.clone(), down)?;
        battery.push(battery_entry(&name, &p, &u.uce_morphism)?);
    }

    Ok(CharacterizationReport {
        uce_dim: ua.dim(),
        kernel_dim: kernel.rank(),
        center_dim: center_u.rank(),
        uce_perfect: ua.is_perfect(),
        kernel_central: kernel.is_subspace_of(&center_u),
        kernel_is_center,
        battery,
    })
}

//! Derivations of Lie–Rinehart algebras, their action on `uce_A`, and
//! lifting of automorphisms and derivations along coverings.

use std::sync::Arc;

use crate::algebra::{LRMorphism, LieRinehartAlgebra};
use crate::constructions::CentralExtensionWitness;
use crate::error::{Error, Result};
use crate::exactlin::{outer3, solve_homogeneous, support, unit, zeros, Matrix, Scalar, Subspace, Vector};
use crate::report::{Axiom, ValidationReport};
use crate::uce::{build_uce, linear_section, uce_map, UceAlgebra};

/// A derivation `(δ, δ₀)` of a Lie–Rinehart algebra: `δ` a derivation of
/// the bracket, `δ₀ ∈ Der(A)`, with `δ(ax) = aδ(x) + δ₀(a)x` and
/// `[δ₀, α(x)] = α(δx)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationPair {
    pub delta: Matrix,
    pub delta0: Matrix,
}

impl DerivationPair {
    pub fn zero(l: &LieRinehartAlgebra) -> Self {
        DerivationPair {
            delta: Matrix::zeros(l.dim(), l.dim()),
            delta0: Matrix::zeros(l.base().dim(), l.base().dim()),
        }
    }

    /// `(ad x, 0)`; a derivation pair when the anchor of `x` vanishes.
    pub fn inner(l: &LieRinehartAlgebra, x: &[Scalar]) -> Self {
        DerivationPair {
            delta: l.adjoint(x),
            delta0: l.anchor_of(x),
        }
    }

    /// `([δ, δ'], [δ₀, δ₀'])`.
    pub fn bracket(&self, other: &DerivationPair) -> DerivationPair {
        DerivationPair {
            delta: self.delta.commutator(&other.delta),
            delta0: self.delta0.commutator(&other.delta0),
        }
    }

    pub fn validate(&self, l: &LieRinehartAlgebra) -> ValidationReport {
        let (n, na) = (l.dim(), l.base().dim());
        let mut report = l.base().derivation_report(&self.delta0);
        if self.delta.rows() != n || self.delta.cols() != n {
            report.push(Axiom::PairLieDerivation, &[]);
            return report;
        }
        let d = &self.delta;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(l.bracket_tensor().fiber(i, j));
                let mut rhs = l.bracket(&d.column(i), &unit(n, j));
                for (r, t) in rhs.iter_mut().zip(l.bracket(&unit(n, i), &d.column(j))) {
                    *r += t;
                }
                report.check(lhs == rhs, Axiom::PairLieDerivation, &[i, j]);
            }
        }
        for p in 0..na {
            let ap = unit(na, p);
            let d0a = self.delta0.column(p);
            for i in 0..n {
                let lhs = d.apply(l.a_action().fiber(p, i));
                let mut rhs = l.act(&ap, &d.column(i));
                for (r, t) in rhs.iter_mut().zip(l.act(&d0a, &unit(n, i))) {
                    *r += t;
                }
                report.check(lhs == rhs, Axiom::PairALinear, &[p, i]);
            }
        }
        for i in 0..n {
            let lhs = self.delta0.commutator(&l.anchor()[i]);
            report.check(lhs == l.anchor_of(&d.column(i)), Axiom::PairAnchor, &[i]);
        }
        report
    }
}

/// A basis of `Der_Rin(L)`, solving for `δ` (row-major) and `δ₀` jointly.
pub fn rinehart_derivations(l: &LieRinehartAlgebra) -> Vec<DerivationPair> {
    let (n, na) = (l.dim(), l.base().dim());
    let split = |v: &[Scalar]| DerivationPair {
        delta: Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()),
        delta0: Matrix::from_fn(na, na, |r, c| v[n * n + r * na + c].clone()),
    };
    let space = solve_homogeneous(n * n + na * na, |v| {
        let pair = split(v);
        let d = &pair.delta;
        let mut res = Vec::new();
        for i in 0..na {
            for j in 0..na {
                let ab = l.base().basis_product(i, j);
                let lhs = pair.delta0.apply(ab);
                let a = l.base().mul(&unit(na, i), &pair.delta0.column(j));
                let b = l.base().mul(&pair.delta0.column(i), &unit(na, j));
                res.extend((0..na).map(|k| &lhs[k] - &a[k] - &b[k]));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(l.bracket_tensor().fiber(i, j));
                let a = l.bracket(&d.column(i), &unit(n, j));
                let b = l.bracket(&unit(n, i), &d.column(j));
                res.extend((0..n).map(|k| &lhs[k] - &a[k] - &b[k]));
            }
        }
        for p in 0..na {
            let ap = unit(na, p);
            for i in 0..n {
                let lhs = d.apply(l.a_action().fiber(p, i));
                let a = l.act(&ap, &d.column(i));
                let b = l.act(&pair.delta0.column(p), &unit(n, i));
                res.extend((0..n).map(|k| &lhs[k] - &a[k] - &b[k]));
            }
        }
        for i in 0..n {
            let lhs = pair.delta0.commutator(&l.anchor()[i]);
            let rhs = l.anchor_of(&d.column(i));
            res.extend(lhs.entries().iter().zip(rhs.entries()).map(|(a, b)| a - b));
        }
        res
    });
    space.basis().iter().map(|v| split(v)).collect()
}

/// `δ^uce: (a, x, y) ↦ (δ₀a, x, y) + (a, δx, y) + (a, x, δy)` on
/// `uce_A(L)`, after checking that `M_A L` is mapped into itself, that the
/// result is a derivation pair, that `uce ∘ δ^uce = δ ∘ uce`, and that
/// `Ker uce` is invariant.
pub fn uce_derivation(u: &UceAlgebra, d: &DerivationPair) -> Result<DerivationPair> {
    let l = &u.source;
    let report = d.validate(l);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "derivation pair",
            report,
        });
    }
    let (n, na) = (l.dim(), l.base().dim());
    let ambient = |v: &[Scalar]| -> Vector {
        let mut out = zeros(u.presentation.ambient_dim());
        for (s, c) in support(v) {
            let (p, i, j) = (s / (n * n), (s / n) % n, s % n);
            let (ap, xi, xj) = (unit(na, p), unit(n, i), unit(n, j));
            for term in [
                outer3(&d.delta0.column(p), &xi, &xj),
                outer3(&ap, &d.delta.column(i), &xj),
                outer3(&ap, &xi, &d.delta.column(j)),
            ] {
                for (o, t) in out.iter_mut().zip(term) {
                    *o += c * t;
                }
            }
        }
        out
    };
    for (ri, r) in u.presentation.relations().basis().iter().enumerate() {
        if !u.presentation.relations().contains(&ambient(r)) {
            return Err(Error::IllDefined {
                construction: "uce of a derivation",
                detail: format!("relation {ri} is not mapped into the relations"),
            });
        }
    }
    let cols: Vec<Vector> = (0..u.dim())
        .map(|k| {
            let rep = unit(u.presentation.ambient_dim(), u.presentation.representative(k));
            u.presentation.project(&ambient(&rep))
        })
        .collect();
    let lifted = DerivationPair {
        delta: Matrix::from_columns(u.dim(), &cols),
        delta0: d.delta0.clone(),
    };
    let report = lifted.validate(&u.algebra);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "uce of a derivation",
            report,
        });
    }
    let um = u.uce_morphism.matrix();
    if um.mul(&lifted.delta) != d.delta.mul(um) {
        return Err(Error::IllDefined {
            construction: "uce of a derivation",
            detail: "uce ∘ δ^uce differs from δ ∘ uce".into(),
        });
    }
    let kernel = u.kernel();
    if !kernel.image_under(&lifted.delta).is_subspace_of(&kernel) {
        return Err(Error::IllDefined {
            construction: "uce of a derivation",
            detail: "Ker uce is not invariant".into(),
        });
    }
    Ok(lifted)
}

/// A covering `f: L' ↠ L` with the iso `𝔣 = uce_A(f): uce_A(L') → uce_A(L)`
/// and `C = 𝔣(Ker uce')`. The composite `q = uce' ∘ 𝔣⁻¹: uce_A(L) ↠ L'` has
/// kernel `C`.
#[derive(Clone, Debug)]
pub struct Covering {
    pub f: LRMorphism,
    pub uce_source: UceAlgebra,
    pub uce_target: UceAlgebra,
    pub frak: LRMorphism,
    pub c: Subspace,
    pub q: LRMorphism,
}

impl Covering {
    pub fn new(f: LRMorphism) -> Result<Self> {
        let w = CentralExtensionWitness::new(f.clone())?;
        if !w.is_central() {
            return Err(Error::NotCentral(w.report));
        }
        if !f.source().is_perfect() {
            return Err(Error::NotPerfect("the covering source"));
        }
        let uce_source = build_uce(f.source())?;
        let uce_target = build_uce(f.target())?;
        let frak = uce_map(&f, &uce_source, &uce_target)?;
        let inv = frak.inverse()?;
        let c = uce_source.kernel().image_under(frak.matrix());
        let q = LRMorphism::validated(
            uce_target.algebra.clone(),
            f.source().clone(),
            uce_source.uce_morphism.matrix().mul(inv.matrix()),
        )?;
        Ok(Covering {
            f,
            uce_source,
            uce_target,
            frak,
            c,
            q,
        })
    }

    /// `uce_A(L) ↠ L` itself, where `C = 0`.
    pub fn universal(l: &LieRinehartAlgebra) -> Result<Self> {
        let u = build_uce(l)?;
        Self::new(u.uce_morphism)
    }

    pub fn source(&self) -> &Arc<LieRinehartAlgebra> {
        self.f.source()
    }

    pub fn target(&self) -> &Arc<LieRinehartAlgebra> {
        self.f.target()
    }
}

/// The outcome of a lifting request.
#[derive(Clone, Debug)]
pub enum Lift<T> {
    Lifted(T),
    /// `witness ∈ C` is moved outside `C`.
    Refused {
        witness: Vector,
        image: Vector,
    },
}

impl<T> Lift<T> {
    pub fn lifted(&self) -> Option<&T> {
        match self {
            Lift::Lifted(t) => Some(t),
            Lift::Refused { .. } => None,
        }
    }
}

fn moved_out(c: &Subspace, m: &Matrix) -> Option<(Vector, Vector)> {
    c.basis().iter().find_map(|v| {
        let w = m.apply(v);
        (!c.contains(&w)).then(|| (v.clone(), w))
    })
}

/// Lifts an automorphism `h` of `L` to the unique `h'` of `L'` with
/// `f h' = h f`, or refuses with a vector of `C` that `uce_A(h)` moves out.
pub fn lift_automorphism(cov: &Covering, h: &LRMorphism) -> Result<Lift<LRMorphism>> {
    if h.source() != cov.target() && **h.source() != **cov.target() || **h.target() != **cov.target() {
        return Err(Error::Hypothesis(
            "the automorphism must act on the covering target".into(),
        ));
    }
    if !h.is_isomorphism() {
        return Err(Error::NotInvertible);
    }
    let uh = uce_map(h, &cov.uce_target, &cov.uce_target)?;
    if let Some((witness, image)) = moved_out(&cov.c, uh.matrix()) {
        return Ok(Lift::Refused { witness, image });
    }
    let q = cov.q.matrix();
    let m = q.mul(uh.matrix()).mul(&linear_section(q)?);
    let lift = LRMorphism::validated(cov.source().clone(), cov.source().clone(), m)?;
    let f = cov.f.matrix();
    if f.mul(lift.matrix()) != h.matrix().mul(f) || !lift.is_isomorphism() {
        return Err(Error::IllDefined {
            construction: "lifted automorphism",
            detail: "f h' differs from h f".into(),
        });
    }
    if cov.f.kernel().image_under(lift.matrix()) != cov.f.kernel() {
        return Err(Error::IllDefined {
            construction: "lifted automorphism",
            detail: "Ker f is not preserved".into(),
        });
    }
    Ok(Lift::Lifted(lift))
}

/// Lifts `(δ, δ₀)` to the unique `(δ', δ₀)` on `L'` with `δ' f = f δ`, or
/// refuses with a vector of `C` that `δ^uce` moves out.
pub fn lift_derivation(cov: &Covering, d: &DerivationPair) -> Result<Lift<DerivationPair>> {
    let du = uce_derivation(&cov.uce_target, d)?;
    if let Some((witness, image)) = moved_out(&cov.c, &du.delta) {
        return Ok(Lift::Refused { witness, image });
    }
    let q = cov.q.matrix();
    let lifted = DerivationPair {
        delta: q.mul(&du.delta).mul(&linear_section(q)?),
        delta0: d.delta0.clone(),
    };
    let report = lifted.validate(cov.source());
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "lifted derivation",
            report,
        });
    }
    let f = cov.f.matrix();
    let kernel = cov.f.kernel();
    if f.mul(&lifted.delta) != d.delta.mul(f) || !kernel.image_under(&lifted.delta).is_subspace_of(&kernel) {
        return Err(Error::IllDefined {
            construction: "lifted derivation",
            detail: "δ' f differs from f δ or Ker f is not invariant".into(),
        });
    }
    Ok(Lift::Lifted(lifted))
}

/// The automorphism `h` of `L` induced by an automorphism `g` of `L'` with
/// `g(Ker f) = Ker f`, so that `f g = h f`.
pub fn descend(cov: &Covering, g: &LRMorphism) -> Result<LRMorphism> {
    let kernel = cov.f.kernel();
    if kernel.image_under(g.matrix()) != kernel {
        return Err(Error::Hypothesis("the automorphism does not preserve Ker f".into()));
    }
    let f = cov.f.matrix();
    let h = LRMorphism::validated(
        cov.target().clone(),
        cov.target().clone(),
        f.mul(g.matrix()).mul(&linear_section(f)?),
    )?;
    if h.matrix().mul(f) != f.mul(g.matrix()) {
        return Err(Error::IllDefined {
            construction: "descended automorphism",
            detail: "f g differs from h f".into(),
        });
    }
    Ok(h)
}

/// The subspace identities for `uce_A` of a split exact sequence
/// `L →f M ⇄(g, s) N` of perfect algebras.
#[derive(Clone, Debug)]
pub struct SplitUceReport {
    pub dims: [usize; 3],
    pub kernel_dims: [usize; 3],
    /// `φ(uce L) + σ(uce N) = uce M` with trivial intersection.
    pub decomposition: bool,
    /// `φ(uce L)` is an ideal of `uce M`.
    pub phi_ideal: bool,
    /// `Ker uce_M = φ(Ker uce_L) ⊕ σ(Ker uce_N)`.
    pub kernel_decomposition: bool,
    /// When `[f(L), s(N)] = 0`: `(u, v) ↦ φ(u) + σ(v)` is an isomorphism
    /// `uce_A(L) × uce_A(N) → uce_A(M)`.
    pub product_iso: Option<bool>,
    pub phi: LRMorphism,
    pub sigma: LRMorphism,
}

impl SplitUceReport {
    pub fn passed(&self) -> bool {
        self.decomposition && self.phi_ideal && self.kernel_decomposition && self.product_iso != Some(false)
    }
}

fn direct_sum_of(a: &Subspace, b: &Subspace, whole: &Subspace) -> bool {
    a.intersection(b).is_zero() && &a.sum(b) == whole
}

pub fn split_uce_check(f: &LRMorphism, g: &LRMorphism, s: &LRMorphism) -> Result<SplitUceReport> {
    let (l, m, n) = (f.source(), f.target(), g.target());
    if **g.source() != **m || **s.source() != **n || **s.target() != **m {
        return Err(Error::Hypothesis("the maps do not form a sequence L → M ⇄ N".into()));
    }
    if g.matrix().mul(s.matrix()) != Matrix::identity(n.dim()) {
        return Err(Error::Hypothesis("g ∘ s is not the identity".into()));
    }
    if !f.kernel().is_zero() || f.image() != g.kernel() {
        return Err(Error::Hypothesis("the sequence is not exact".into()));
    }
    for (name, x) in [("L", l), ("M", m), ("N", n)] {
        if !x.is_perfect() {
            return Err(Error::Hypothesis(format!("{name} is not perfect")));
        }
    }
    let (ul, um, un) = (build_uce(l)?, build_uce(m)?, build_uce(n)?);
    let phi = uce_map(f, &ul, &um)?;
    let sigma = uce_map(s, &un, &um)?;
    let (im_phi, im_sigma) = (phi.image(), sigma.image());
    let decomposition = direct_sum_of(&im_phi, &im_sigma, &Subspace::full(um.dim()));
    let phi_ideal = um.algebra.ideal_report(&im_phi).is_ok();
    let kernel_decomposition = direct_sum_of(
        &ul.kernel().image_under(phi.matrix()),
        &un.kernel().image_under(sigma.matrix()),
        &um.kernel(),
    );
    let commute = f.image().basis().iter().all(|x| {
        s.image()
            .basis()
            .iter()
            .all(|y| crate::exactlin::is_zero(&m.bracket(x, y)))
    });
    let product_iso = if commute {
        let prod = Arc::new(ul.algebra.direct_sum(&un.algebra)?);
        let joint = phi.matrix().hstack(sigma.matrix());
        Some(
            LRMorphism::validated(prod, um.algebra.clone(), joint)
                .map(|j| j.is_isomorphism())
                .unwrap_or(false),
        )
    } else {
        None
    };
    Ok(SplitUceReport {
        dims: [ul.dim(), um.dim(), un.dim()],
        kernel_dims: [ul.kernel().rank(), um.kernel().rank(), un.kernel().rank()],
        decomposition,
        phi_ideal,
        kernel_decomposition,
        product_iso,
        phi,
        sigma,
    })
}

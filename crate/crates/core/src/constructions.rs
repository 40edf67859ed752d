//! Builders for concrete Lie–Rinehart algebras and the builtin library.

use std::sync::Arc;

use crate::algebra::{
    character_action, check_a_module, subalgebra, validate_action, Ambient, CommAlgebra, LRMorphism, LieRinehartAlgebra,
};
use crate::error::{ensure_dim, Error, Result};
use crate::exactlin::{int, unit, zeros, Matrix, Scalar, Subspace, Tensor3, Vector};
use crate::report::{Axiom, ValidationReport};

/// A finite-dimensional Lie algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraOverK {
    bracket: Tensor3,
}

impl LieAlgebraOverK {
    pub fn new(bracket: Tensor3) -> Result<Self> {
        let [a, b, c] = bracket.dims();
        ensure_dim("Lie bracket tensor", a, b)?;
        ensure_dim("Lie bracket tensor", a, c)?;
        let g = LieAlgebraOverK { bracket };
        let report = g.validate();
        if report.is_valid() {
            Ok(g)
        } else {
            Err(Error::Invalid {
                what: "Lie algebra",
                report,
            })
        }
    }

    /// Basis `h, e, f` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
    pub fn sl2() -> Self {
        let mut b = Tensor3::zeros(3, 3, 3);
        let mut set = |i: usize, j: usize, k: usize, c: i64| {
            b.set(i, j, k, int(c));
            b.set(j, i, k, int(-c));
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 1);
        LieAlgebraOverK { bracket: b }
    }

    /// Basis `x, y, z` with `[x, y] = z`.
    pub fn heisenberg() -> Self {
        let mut b = Tensor3::zeros(3, 3, 3);
        b.set(0, 1, 2, int(1));
        b.set(1, 0, 2, int(-1));
        LieAlgebraOverK { bracket: b }
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebraOverK {
            bracket: Tensor3::zeros(n, n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dims()[0]
    }

    pub fn bracket_tensor(&self) -> &Tensor3 {
        &self.bracket
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        crate::algebra::apply_action(&self.bracket, u, v)
    }

    pub fn validate(&self) -> ValidationReport {
        self.as_lr().validate()
    }

    /// The same bracket as a Lie–Rinehart algebra over `Q`.
    pub fn as_lr(&self) -> LieRinehartAlgebra {
        lie_via_character(self, &CommAlgebra::rationals()).expect("Q has an augmentation")
    }
}

/// `g` as a Lie–Rinehart algebra over `base` with zero anchor, `A` acting
/// through its augmentation.
pub fn lie_via_character(g: &LieAlgebraOverK, base: &CommAlgebra) -> Result<LieRinehartAlgebra> {
    let chi = base
        .augmentation()
        .ok_or_else(|| Error::Hypothesis("the base algebra has no augmentation to Q".into()))?;
    let n = g.dim();
    let na = base.dim();
    LieRinehartAlgebra::new(
        base.clone(),
        character_action(&chi, n),
        g.bracket.clone(),
        vec![Matrix::zeros(na, na); n],
    )
}

/// `A ⊗ g` for a Lie map `γ: g → Der(A)`, with basis `e_p ⊗ g_i` at index
/// `p·dim g + i`.
pub fn transformation_algebra(g: &LieAlgebraOverK, base: &CommAlgebra, gamma: &[Matrix]) -> Result<LieRinehartAlgebra> {
    let (k, na) = (g.dim(), base.dim());
    ensure_dim("gamma", k, gamma.len())?;
    let mut report = ValidationReport::new();
    for (i, d) in gamma.iter().enumerate() {
        ensure_dim("gamma matrix", na, d.rows())?;
        ensure_dim("gamma matrix", na, d.cols())?;
        report.check(base.is_derivation(d), Axiom::DerivationLeibniz, &[i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut lhs = Matrix::zeros(na, na);
            for (l, c) in crate::exactlin::support(g.bracket.fiber(i, j)) {
                lhs = lhs.add(&gamma[l].scale(c));
            }
            report.check(lhs == gamma[i].commutator(&gamma[j]), Axiom::AnchorLie, &[i, j]);
        }
    }
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "action of g on A by derivations",
            report,
        });
    }
    let n = na * k;
    let idx = |p: usize, i: usize| p * k + i;
    // a ⊗ g ↦ coordinates
    let embed = |a: &[Scalar], gv: &[Scalar]| -> Vector {
        let mut out = zeros(n);
        for (p, x) in crate::exactlin::support(a) {
            for (i, y) in crate::exactlin::support(gv) {
                out[idx(p, i)] += x * y;
            }
        }
        out
    };
    let a_action = Tensor3::from_fn(na, n, n, |q, s| {
        let (p, i) = (s / k, s % k);
        embed(base.basis_product(q, p), &unit(k, i))
    });
    let bracket = Tensor3::from_fn(n, n, n, |s, t| {
        let (p, i) = (s / k, s % k);
        let (q, j) = (t / k, t % k);
        let (ap, aq) = (unit(na, p), unit(na, q));
        let mut out = embed(base.basis_product(p, q), g.bracket.fiber(i, j));
        let t1 = embed(&base.mul(&ap, &gamma[i].column(q)), &unit(k, j));
        let t2 = embed(&base.mul(&aq, &gamma[j].column(p)), &unit(k, i));
        for ((o, x), y) in out.iter_mut().zip(&t1).zip(&t2) {
            *o += x - y;
        }
        out
    });
    let anchor = (0..n)
        .map(|s| base.scale_derivation(&unit(na, s / k), &gamma[s % k]))
        .collect();
    LieRinehartAlgebra::validated(base.clone(), a_action, bracket, anchor)
}

/// Pairs `(f, D) ∈ End_K(M) ⊕ End_K(A)` in coordinates: the `m²` entries of
/// `f` row-major, then the `(dim A)²` entries of `D` row-major.
struct AtiyahAmbient {
    base: CommAlgebra,
    m: usize,
    m_ops: Vec<Matrix>,
}

impl AtiyahAmbient {
    fn split(&self, v: &[Scalar]) -> (Matrix, Matrix) {
        let (m, na) = (self.m, self.base.dim());
        let f = Matrix::from_fn(m, m, |r, c| v[r * m + c].clone());
        let d = Matrix::from_fn(na, na, |r, c| v[m * m + r * na + c].clone());
        (f, d)
    }

    fn join(&self, f: &Matrix, d: &Matrix) -> Vector {
        f.entries().iter().chain(d.entries()).cloned().collect()
    }
}

impl Ambient for AtiyahAmbient {
    fn base(&self) -> &CommAlgebra {
        &self.base
    }

    fn dim(&self) -> usize {
        self.m * self.m + self.base.dim() * self.base.dim()
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let (f1, d1) = self.split(&unit(self.dim(), i));
        let (f2, d2) = self.split(&unit(self.dim(), j));
        self.join(&f1.commutator(&f2), &d1.commutator(&d2))
    }

    fn act_basis(&self, p: usize, i: usize) -> Vector {
        let (f, d) = self.split(&unit(self.dim(), i));
        self.join(&self.m_ops[p].mul(&f), &self.base.basis_operator(p).mul(&d))
    }

    fn anchor_basis(&self, i: usize) -> Matrix {
        self.split(&unit(self.dim(), i)).1
    }
}

/// The Atiyah algebra of an A-module `M` (given by its action tensor
/// `dim A × m × m`): pairs `(f, D)` with `f(a m) = a f(m) + D(a) m`.
///
/// The basis is the RREF basis of the solution space in the ambient
/// coordinates of [`AtiyahAmbient`].
pub fn atiyah_algebra(base: &CommAlgebra, module_action: &Tensor3) -> Result<LieRinehartAlgebra> {
    let na = base.dim();
    ensure_dim("module action (base slot)", na, module_action.dims()[0])?;
    let m = module_action.dims()[1];
    ensure_dim("module action", m, module_action.dims()[2])?;
    let mut report = ValidationReport::new();
    check_a_module(base, module_action, &mut report);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "A-module",
            report,
        });
    }
    let m_ops: Vec<Matrix> = (0..na)
        .map(|p| Matrix::from_fn(m, m, |r, c| module_action.get(p, c, r).clone()))
        .collect();
    let amb = AtiyahAmbient {
        base: base.clone(),
        m,
        m_ops,
    };
    let derivations = Subspace::span(na * na, base.derivations().iter().map(|d| d.entries().to_vec()));
    let sol = crate::exactlin::solve_homogeneous(amb.dim(), |v| {
        let (f, d) = amb.split(v);
        let mut out = Vec::new();
        for p in 0..na {
            let dp = d.column(p);
            for k in 0..m {
                let mk = unit(m, k);
                let lhs = f.apply(&amb.m_ops[p].apply(&mk));
                let a = amb.m_ops[p].apply(&f.apply(&mk));
                let mut b = zeros(m);
                for (q, c) in crate::exactlin::support(&dp) {
                    for (x, y) in b.iter_mut().zip(amb.m_ops[q].apply(&mk)) {
                        *x += c * y;
                    }
                }
                out.extend(lhs.iter().zip(a.iter().zip(&b)).map(|(l, (x, y))| l - x - y));
            }
        }
        // D ∈ Der(A): the D-block must lie in the derivation space
        out.extend(derivations.reduce(d.entries()));
        out
    });
    subalgebra(&amb, &sol, "Atiyah algebra").map(|(l, _)| l)
}

/// `Der_K(A)` with identity anchor.
pub fn der_algebra(base: &CommAlgebra) -> LieRinehartAlgebra {
    atiyah_algebra(base, &Tensor3::zeros(base.dim(), 0, 0)).expect("Der(A) is always defined")
}

/// `L ⋉ R` for a Lie A-algebra `R` (zero anchor) on which `L` acts by
/// `action[i][j][k]`: `x_i ∘ r_j = Σ_k action[i][j][k] r_k`.
pub fn semidirect(l: &LieRinehartAlgebra, r: &LieRinehartAlgebra, action: &Tensor3) -> Result<LieRinehartAlgebra> {
    if l.base() != r.base() {
        return Err(Error::BaseMismatch);
    }
    if !r.has_zero_anchor() {
        return Err(Error::Hypothesis("the acted-on algebra must have zero anchor".into()));
    }
    let report = validate_action(l, r, action, true)?;
    if !report.is_valid() {
        return Err(Error::Invalid { what: "action", report });
    }
    let sum = l.direct_sum(r)?;
    let (n, k) = (l.dim(), r.dim());
    let mut bracket = sum.bracket_tensor().clone();
    for i in 0..n {
        for j in 0..k {
            for c in 0..k {
                let v = action.get(i, j, c).clone();
                bracket.set(n + j, i, n + c, -v.clone());
                bracket.set(i, n + j, n + c, v);
            }
        }
    }
    LieRinehartAlgebra::validated(l.base().clone(), sum.a_action().clone(), bracket, sum.anchor().to_vec())
}

/// A Lie–Rinehart algebra together with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub algebra: Arc<LieRinehartAlgebra>,
    pub first: LRMorphism,
    pub second: LRMorphism,
}

impl Product {
    /// The element with the given components, if it lies in the product.
    pub fn pair(&self, l: &[Scalar], n: &[Scalar]) -> Option<Vector> {
        let stacked = self.first.matrix().vstack(self.second.matrix());
        let target: Vector = l.iter().chain(n).cloned().collect();
        crate::exactlin::solve(&stacked, &target)
    }
}

/// The subalgebra of `L ⊕ N` cut out by `constraint` (a matrix on `L ⊕ N`
/// whose kernel is kept) together with the anchor condition
/// `α_L(l) = α_N(n)`. The anchor of a pair is `α_L(l)`.
fn fiber_subalgebra(
    l: &Arc<LieRinehartAlgebra>,
    n: &Arc<LieRinehartAlgebra>,
    constraint: Option<&Matrix>,
) -> Result<Product> {
    let sum = l.direct_sum(n)?;
    let (dl, dn) = (l.dim(), n.dim());
    let na = l.base().dim();
    let mut anchor = l.anchor().to_vec();
    anchor.extend(std::iter::repeat_n(Matrix::zeros(na, na), dn));
    let amb = LieRinehartAlgebra::new(
        l.base().clone(),
        sum.a_action().clone(),
        sum.bracket_tensor().clone(),
        anchor,
    )?;
    let anchor_diff: Vec<Vector> = (0..dl + dn)
        .map(|s| {
            if s < dl {
                l.anchor()[s].entries().to_vec()
            } else {
                n.anchor()[s - dl].scale(&int(-1)).entries().to_vec()
            }
        })
        .collect();
    let mut cond = Matrix::from_columns(na * na, &anchor_diff);
    if let Some(c) = constraint {
        cond = cond.vstack(c);
    }
    let (p, incl) = subalgebra(&amb, &cond.kernel(), "fiber product")?;
    let p = Arc::new(p);
    let pl = Matrix::from_fn(dl, dl + dn, |r, c| if r == c { int(1) } else { int(0) }).mul(&incl);
    let pn = Matrix::from_fn(dn, dl + dn, |r, c| if r + dl == c { int(1) } else { int(0) }).mul(&incl);
    Ok(Product {
        first: LRMorphism::validated(p.clone(), l.clone(), pl)?,
        second: LRMorphism::validated(p.clone(), n.clone(), pn)?,
        algebra: p,
    })
}

/// The product `L ×_{Der(A)} M = { (l, m) : α_L(l) = α_M(m) }`.
pub fn fiber_product(l: &Arc<LieRinehartAlgebra>, m: &Arc<LieRinehartAlgebra>) -> Result<Product> {
    if l.base() != m.base() {
        return Err(Error::BaseMismatch);
    }
    fiber_subalgebra(l, m, None)
}

/// `L × Q^k` with `Q^k` abelian, zero anchor and `A` acting through its
/// augmentation; the first projection is a central extension whenever the
/// result is a Lie–Rinehart algebra.
pub fn product_with_trivial(l: &Arc<LieRinehartAlgebra>, k: usize) -> Result<Product> {
    let t = Arc::new(lie_via_character(&LieAlgebraOverK::abelian(k), l.base())?);
    let sum = l.direct_sum(&t)?;
    let report = sum.validate();
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "product with a trivial module",
            report,
        });
    }
    fiber_product(l, &t)
}

/// A surjective morphism together with its kernel and the centrality report
/// (`Ker p ⊆ Z_A(E)`, one violation per failing `[a_p k_i, x_j]`).
#[derive(Clone, Debug)]
pub struct CentralExtensionWitness {
    pub p: LRMorphism,
    pub kernel: Subspace,
    pub report: ValidationReport,
}

impl CentralExtensionWitness {
    pub fn new(p: LRMorphism) -> Result<Self> {
        if !p.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let e = p.source().clone();
        let kernel = p.kernel();
        let (n, na) = (e.dim(), e.base().dim());
        let mut report = ValidationReport::new();
        for (i, k) in kernel.basis().iter().enumerate() {
            for q in 0..na {
                let ak = e.act(&unit(na, q), k);
                for j in 0..n {
                    let ok = crate::exactlin::is_zero(&e.bracket(&ak, &unit(n, j)));
                    report.check(ok, Axiom::Centrality, &[i, q, j]);
                }
            }
        }
        Ok(CentralExtensionWitness { p, kernel, report })
    }

    pub fn is_central(&self) -> bool {
        self.report.is_valid()
    }
}

/// The pullback of a central extension `c: N ↠ M` along `f: L → M`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub algebra: Arc<LieRinehartAlgebra>,
    pub p_l: CentralExtensionWitness,
    pub p_n: LRMorphism,
}

/// `P = { (l, n) ∈ L ×_{Der(A)} N : f(l) = c(n) }` with anchor
/// `(l, n)(a) = l(a)`.
pub fn pullback_extension(c: &LRMorphism, f: &LRMorphism) -> Result<Pullback> {
    let cw = CentralExtensionWitness::new(c.clone())?;
    if !cw.is_central() {
        return Err(Error::NotCentral(cw.report));
    }
    if **f.target() != **c.target() {
        return Err(Error::Hypothesis("f and c must have the same target".into()));
    }
    let constraint = f.matrix().hstack(&c.matrix().scale(&int(-1)));
    let prod = fiber_subalgebra(f.source(), c.source(), Some(&constraint))?;
    let p_l = CentralExtensionWitness::new(prod.first)?;
    Ok(Pullback {
        algebra: prod.algebra,
        p_l,
        p_n: prod.second,
    })
}

/// The dual numbers `A = Q[ε]` as a Lie–Rinehart algebra over themselves:
/// `[c₁ + c₂ε, c₁' + c₂'ε] = (c₁c₂' − c₂c₁')ε`, anchor `c₁ + c₂ε ↦ c₁ D`
/// with `D(ε) = ε`.
pub fn dual_numbers_lr() -> LieRinehartAlgebra {
    let a = CommAlgebra::dual_numbers();
    let mut bracket = Tensor3::zeros(2, 2, 2);
    bracket.set(0, 1, 1, int(1));
    bracket.set(1, 0, 1, int(-1));
    let d = Matrix::from_fn(2, 2, |r, c| if r == 1 && c == 1 { int(1) } else { int(0) });
    LieRinehartAlgebra::new(a.clone(), a.mult().clone(), bracket, vec![d, Matrix::zeros(2, 2)])
        .expect("shapes are consistent")
}

/// `Der(A) ⊕ A` with `[(D, a), (D', a')] = ([D, D'], D(a') − D'(a))` and the
/// projection to `Der(A)` as anchor.
pub fn der_plus_a(base: &CommAlgebra) -> Result<LieRinehartAlgebra> {
    let der = der_algebra(base);
    let a = LieRinehartAlgebra::free_abelian(base, 1);
    let na = base.dim();
    let action = Tensor3::from_fn(der.dim(), na, na, |i, j| der.anchor()[i].column(j));
    semidirect(&der, &a, &action)
}

/// `sl2 ⋉ V^{⊕k}` with `V = Q²` the standard representation.
pub fn sl2_with_standard(k: usize) -> Result<LieRinehartAlgebra> {
    let sl2 = LieAlgebraOverK::sl2().as_lr();
    let v = LieAlgebraOverK::abelian(2 * k).as_lr();
    // h v1 = v1, h v2 = -v2, e v2 = v1, f v1 = v2
    let mut act = Tensor3::zeros(3, 2 * k, 2 * k);
    for c in 0..k {
        let (v1, v2) = (2 * c, 2 * c + 1);
        act.set(0, v1, v1, int(1));
        act.set(0, v2, v2, int(-1));
        act.set(1, v2, v1, int(1));
        act.set(2, v1, v2, int(1));
    }
    semidirect(&sl2, &v, &act)
}

fn parse_call(name: &str) -> Option<(&str, Vec<&str>)> {
    let open = name.find('(')?;
    let inner = name.strip_suffix(')')?.get(open + 1..)?;
    Some((&name[..open], inner.split(',').map(str::trim).collect()))
}

/// Named commutative algebras: `rationals`, `dual_numbers`, `split(n)`,
/// `truncated(n)` (`Q[t]/(t^n)`), `square_zero(k)`.
pub fn base_builtin(name: &str) -> Result<CommAlgebra> {
    let name: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || Error::UnknownBuiltin(name.clone());
    match name.as_str() {
        "rationals" | "Q" => Ok(CommAlgebra::rationals()),
        "dual_numbers" => Ok(CommAlgebra::dual_numbers()),
        _ => {
            let (head, args) = parse_call(&name).ok_or_else(unknown)?;
            let n: usize = match args.as_slice() {
                [x] => x.parse().map_err(|_| unknown())?,
                _ => return Err(unknown()),
            };
            match head {
                "split" if n >= 1 => Ok(CommAlgebra::split(n)),
                "truncated" if n >= 1 => Ok(CommAlgebra::truncated_polynomials(n)),
                "square_zero" => Ok(CommAlgebra::square_zero(n)),
                _ => Err(unknown()),
            }
        }
    }
}

/// Named Lie algebras over `Q`: `sl2`, `heisenberg`, `abelian(n)`.
pub fn lie_builtin(name: &str) -> Result<LieAlgebraOverK> {
    let name: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match name.as_str() {
        "sl2" => Ok(LieAlgebraOverK::sl2()),
        "heisenberg" => Ok(LieAlgebraOverK::heisenberg()),
        _ => match parse_call(&name) {
            Some(("abelian", args)) if args.len() == 1 => args[0]
                .parse()
                .map(LieAlgebraOverK::abelian)
                .map_err(|_| Error::UnknownBuiltin(name.clone())),
            _ => Err(Error::UnknownBuiltin(name)),
        },
    }
}

/// Names accepted by [`builtin`], with sample arguments for the
/// parametrized ones.
pub const BUILTIN_NAMES: &[&str] = &[
    "dual_numbers",
    "der_plus_a",
    "sl2",
    "heisenberg",
    "abelian(2)",
    "transformation(sl2,dual_numbers,0)",
    "sl2xsl2",
    "sl2_v",
    "sl2_2v",
];

/// The builtin library.
///
/// * `dual_numbers`: the dual numbers over themselves, basis `1, ε`.
/// * `der_plus_a`: `Der(A) ⊕ A` over the dual numbers, basis `D, 1, ε`.
/// * `sl2`, `heisenberg`, `abelian(n)`: Lie algebras over `Q`.
/// * `transformation(g, base, 0)`: `base ⊗ g` with `γ = 0`.
/// * `sl2xsl2`: `sl2 × sl2` over `Q`.
/// * `sl2_v`, `sl2_2v`: `sl2 ⋉ Q²` and `sl2 ⋉ (Q² ⊕ Q²)`.
pub fn builtin(name: &str) -> Result<LieRinehartAlgebra> {
    let name: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match name.as_str() {
        "dual_numbers" => Ok(dual_numbers_lr()),
        "der_plus_a" => der_plus_a(&CommAlgebra::dual_numbers()),
        "sl2xsl2" => {
            let s = LieAlgebraOverK::sl2().as_lr();
            s.direct_sum(&s)
        }
        "sl2_v" => sl2_with_standard(1),
        "sl2_2v" => sl2_with_standard(2),
        _ => {
            if let Some(("transformation", args)) = parse_call(&name) {
                if let [g, base, gamma] = args.as_slice() {
                    if *gamma == "0" {
                        let g = lie_builtin(g)?;
                        let base = base_builtin(base)?;
                        let na = base.dim();
                        return transformation_algebra(&g, &base, &vec![Matrix::zeros(na, na); g.dim()]);
                    }
                }
                return Err(Error::UnknownBuiltin(name));
            }
            lie_builtin(&name).map(|g| g.as_lr())
        }
    }
}

//! Rinehart cochain and chain complexes in low degrees, the Chevalley–Eilenberg
//! comparison, and `Der_A(L, M)`.
//!
//! An `n`-tuple of basis indices `(t_0, …, t_{n−1})` of `L` is encoded
//! row-major, `Σ t_k · (dim L)^{n−1−k}`.

use crate::algebra::{CommAlgebra, LeftLRModule, LieRinehartAlgebra, RightLRModule};
use crate::constructions::{transformation_algebra, LieAlgebraOverK};
use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, is_zero, unit, zeros, Matrix, QuotientPresentation, Scalar, Subspace, SubspaceBuilder, Vector,
};

/// Environment variable that raises the degree cap.
pub const MAX_DEGREE_VAR: &str = "LIERINEHART_MAX_DEGREE";

/// Default highest degree for which groups are computed.
pub const DEFAULT_MAX_DEGREE: usize = 3;

/// The configured degree cap.
pub fn max_degree() -> usize {
    std::env::var(MAX_DEGREE_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = max_degree();
    if n > cap {
        Err(Error::DegreeCap { requested: n, cap })
    } else {
        Ok(())
    }
}

fn decode(mut s: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = s % dim;
        s /= dim;
    }
    t
}

fn encode(t: &[usize], dim: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * dim + i)
}

fn without(t: &[usize], skip: &[usize]) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

fn sign(k: usize) -> Scalar {
    Scalar::from_integer(if k.is_multiple_of(2) { 1 } else { -1 }.into())
}

/// `C^n_A(L, M)`: alternating maps `L^n → M` that are A-linear in each slot,
/// as a subspace of all coefficient tensors `f(x_{t_0}, …, x_{t_{n−1}})_k`
/// stored at `tuple·dim M + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub degree: usize,
    pub dim_l: usize,
    pub dim_m: usize,
    pub space: Subspace,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.space.rank()
    }
}

fn build_cochain_space(l: &LieRinehartAlgebra, m: &LeftLRModule, n: usize) -> CochainSpace {
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let tuples = nl.pow(n as u32);
    let d = tuples * nm;
    if n == 0 {
        return CochainSpace {
            degree: 0,
            dim_l: nl,
            dim_m: nm,
            space: Subspace::full(nm),
        };
    }
    let mut rows = SubspaceBuilder::new(d);
    for s in 0..tuples {
        let t = decode(s, n, nl);
        // alternation under adjacent transpositions (repeated entries give 2f = 0)
        for pos in 0..n - 1 {
            let mut u = t.clone();
            u.swap(pos, pos + 1);
            let s2 = encode(&u, nl);
            for k in 0..nm {
                let mut row = zeros(d);
                row[s * nm + k] += Scalar::from_integer(1.into());
                row[s2 * nm + k] += Scalar::from_integer(1.into());
                rows.insert(row);
            }
        }
        // f(a x_{t_0}, …) = a f(x_{t_0}, …)
        for p in 0..na {
            for k in 0..nm {
                let mut row = zeros(d);
                for (q, c) in l.a_action().fiber(p, t[0]).iter().enumerate() {
                    if c != &Scalar::from_integer(0.into()) {
                        let mut u = t.clone();
                        u[0] = q;
                        row[encode(&u, nl) * nm + k] += c;
                    }
                }
                for j in 0..nm {
                    let c = m.a_action().get(p, j, k);
                    row[s * nm + j] -= c;
                }
                rows.insert(row);
            }
        }
    }
    let constraints = rows.finish();
    CochainSpace {
        degree: n,
        dim_l: nl,
        dim_m: nm,
        space: constraints.basis_matrix().kernel(),
    }
}

/// `C^n_A(L, M)` for `n` up to the degree cap.
pub fn cochain_space(l: &LieRinehartAlgebra, m: &LeftLRModule, n: usize) -> Result<CochainSpace> {
    check_cap(n)?;
    Ok(build_cochain_space(l, m, n))
}

/// `(δf)(x_1, …, x_{n+1})` for a coefficient tensor `f` of degree `n`, as a
/// coefficient tensor of degree `n + 1`.
fn coboundary_tensor(l: &LieRinehartAlgebra, m: &LeftLRModule, n: usize, f: &[Scalar]) -> Vector {
    let (nl, nm) = (l.dim(), m.dim());
    let tuples = nl.pow(n as u32 + 1);
    let value = |t: &[usize]| &f[encode(t, nl) * nm..(encode(t, nl) + 1) * nm];
    let mut out = zeros(tuples * nm);
    for s in 0..tuples {
        let t = decode(s, n + 1, nl);
        let slot = &mut out[s * nm..(s + 1) * nm];
        for i in 0..=n {
            let fv = value(&without(&t, &[i]));
            if !is_zero(fv) {
                axpy(slot, &sign(i), &m.act_l(&unit(nl, t[i]), fv));
            }
        }
        for j in 0..=n {
            for k in j + 1..=n {
                let br = l.bracket_tensor().fiber(t[j], t[k]);
                let mut rest = vec![0];
                rest.extend(without(&t, &[j, k]));
                for (q, c) in br.iter().enumerate() {
                    if c.numer() != &0.into() {
                        rest[0] = q;
                        axpy(slot, &(sign(j + k) * c), value(&rest));
                    }
                }
            }
        }
    }
    out
}

/// The matrix of `δ: C^n → C^{n+1}` in the canonical cochain bases.
/// `δf` landing outside `C^{n+1}` is reported as [`Error::IllDefined`].
pub fn coboundary(l: &LieRinehartAlgebra, m: &LeftLRModule, n: usize) -> Result<Matrix> {
    check_cap(n)?;
    let src = build_cochain_space(l, m, n);
    let dst = build_cochain_space(l, m, n + 1);
    coboundary_between(l, m, &src, &dst)
}

fn coboundary_between(
    l: &LieRinehartAlgebra,
    m: &LeftLRModule,
    src: &CochainSpace,
    dst: &CochainSpace,
) -> Result<Matrix> {
    let cols = src
        .space
        .basis()
        .iter()
        .map(|f| {
            dst.space
                .coordinates(&coboundary_tensor(l, m, src.degree, f))
                .ok_or_else(|| Error::IllDefined {
                    construction: "coboundary",
                    detail: format!("δ of a degree-{} cochain is not a cochain", src.degree),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(dst.dim(), &cols))
}

/// `H^n_Rin(L, M)` with cocycle representatives (as coefficient tensors)
/// completing a basis of the coboundaries.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<Vector>,
}

pub fn cohomology(l: &LieRinehartAlgebra, m: &LeftLRModule, n: usize) -> Result<Cohomology> {
    check_cap(n)?;
    let cn = build_cochain_space(l, m, n);
    let cn1 = build_cochain_space(l, m, n + 1);
    let dn = coboundary_between(l, m, &cn, &cn1)?;
    let cycles = dn.kernel();
    let boundaries = if n == 0 {
        Subspace::zero(cn.dim())
    } else {
        let prev = build_cochain_space(l, m, n - 1);
        coboundary_between(l, m, &prev, &cn)?.image()
    };
    let mut span = SubspaceBuilder::from_subspace(&boundaries);
    let mut representatives = Vec::new();
    for z in cycles.basis() {
        if span.insert(z.clone()).is_some() {
            representatives.push(cn.space.combine(z));
        }
    }
    Ok(Cohomology {
        degree: n,
        dim: cycles.rank() - boundaries.rank(),
        representatives,
    })
}

/// `M ⊗_A Λ^n_A L` presented as a quotient of `M ⊗ L^{⊗n}` (coordinate
/// `k·(dim L)^n + tuple`) by alternation and A-balancing in the first slot.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub degree: usize,
    pub dim_l: usize,
    pub dim_m: usize,
    pub presentation: QuotientPresentation,
}

impl ChainSpace {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }
}

fn build_chain_space(l: &LieRinehartAlgebra, m: &RightLRModule, n: usize) -> ChainSpace {
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let tuples = nl.pow(n as u32);
    let d = tuples * nm;
    let mut rel = SubspaceBuilder::new(d);
    if n > 0 {
        for k in 0..nm {
            for s in 0..tuples {
                let t = decode(s, n, nl);
                for pos in 0..n - 1 {
                    let mut u = t.clone();
                    u.swap(pos, pos + 1);
                    let mut row = zeros(d);
                    row[k * tuples + s] += Scalar::from_integer(1.into());
                    row[k * tuples + encode(&u, nl)] += Scalar::from_integer(1.into());
                    rel.insert(row);
                }
                // (a m) ⊗ x ⊗ … − m ⊗ (a x) ⊗ …
                for p in 0..na {
                    let mut row = zeros(d);
                    for (j, c) in m.a_action().fiber(p, k).iter().enumerate() {
                        row[j * tuples + s] += c;
                    }
                    for (q, c) in l.a_action().fiber(p, t[0]).iter().enumerate() {
                        let mut u = t.clone();
                        u[0] = q;
                        row[k * tuples + encode(&u, nl)] -= c;
                    }
                    rel.insert(row);
                }
            }
        }
    }
    ChainSpace {
        degree: n,
        dim_l: nl,
        dim_m: nm,
        presentation: QuotientPresentation::new(rel.finish()),
    }
}

/// `C_n^A(L, M)` for `n` up to the degree cap.
pub fn chain_space(l: &LieRinehartAlgebra, m: &RightLRModule, n: usize) -> Result<ChainSpace> {
    check_cap(n)?;
    Ok(build_chain_space(l, m, n))
}

/// `∂` on the ambient generator `m_k ⊗ x_{t}`.
fn boundary_generator(l: &LieRinehartAlgebra, m: &RightLRModule, n: usize, k: usize, t: &[usize]) -> Vector {
    let (nl, nm) = (l.dim(), m.dim());
    let tuples = nl.pow(n as u32 - 1);
    let mut out = zeros(tuples * nm);
    for i in 0..n {
        let mx = m.act_r(&unit(nm, k), &unit(nl, t[i]));
        let s = encode(&without(t, &[i]), nl);
        for (j, c) in mx.iter().enumerate() {
            out[j * tuples + s] += sign(i) * c;
        }
    }
    for j in 0..n {
        for q in j + 1..n {
            let mut rest = vec![0];
            rest.extend(without(t, &[j, q]));
            for (r, c) in l.bracket_tensor().fiber(t[j], t[q]).iter().enumerate() {
                rest[0] = r;
                out[k * tuples + encode(&rest, nl)] += sign(j + q) * c;
            }
        }
    }
    out
}

fn boundary_between(l: &LieRinehartAlgebra, m: &RightLRModule, src: &ChainSpace, dst: &ChainSpace) -> Result<Matrix> {
    let (n, nl) = (src.degree, l.dim());
    let tuples = nl.pow(n as u32);
    let ambient = |v: &[Scalar]| -> Vector {
        let mut out = zeros(dst.presentation.ambient_dim());
        for (s, c) in v.iter().enumerate() {
            if c.numer() != &0.into() {
                let (k, t) = (s / tuples, decode(s % tuples, n, nl));
                axpy(&mut out, c, &boundary_generator(l, m, n, k, &t));
            }
        }
        out
    };
    for (i, r) in src.presentation.relations().basis().iter().enumerate() {
        if !dst.presentation.relations().contains(&ambient(r)) {
            return Err(Error::IllDefined {
                construction: "chain boundary",
                detail: format!("relation {i} of degree {n} is not mapped into the relations"),
            });
        }
    }
    Ok(Matrix::from_columns(
        dst.dim(),
        &(0..src.dim())
            .map(|q| {
                let rep = unit(src.presentation.ambient_dim(), src.presentation.representative(q));
                dst.presentation.project(&ambient(&rep))
            })
            .collect::<Vec<_>>(),
    ))
}

/// `∂: C_n → C_{n−1}` for `1 ≤ n ≤ cap`, after checking that the relations
/// of `C_n` map into those of `C_{n−1}`.
pub fn chain_boundary(l: &LieRinehartAlgebra, m: &RightLRModule, n: usize) -> Result<(ChainSpace, ChainSpace, Matrix)> {
    check_cap(n)?;
    if n == 0 {
        return Err(Error::Hypothesis("the boundary starts in degree 1".into()));
    }
    let report = m.validate(l);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "right module",
            report,
        });
    }
    let src = build_chain_space(l, m, n);
    let dst = build_chain_space(l, m, n - 1);
    let d = boundary_between(l, m, &src, &dst)?;
    Ok((src, dst, d))
}

/// `dim H_n^Rin(L, M)`.
pub fn homology(l: &LieRinehartAlgebra, m: &RightLRModule, n: usize) -> Result<usize> {
    check_cap(n)?;
    let report = m.validate(l);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "right module",
            report,
        });
    }
    let cn = build_chain_space(l, m, n);
    let cn1 = build_chain_space(l, m, n + 1);
    let out = if n == 0 {
        0
    } else {
        boundary_between(l, m, &cn, &build_chain_space(l, m, n - 1))?.rank()
    };
    let inc = boundary_between(l, m, &cn1, &cn)?.rank();
    Ok(cn.dim() - out - inc)
}

/// `dim M / M·L`.
pub fn coinvariants_dim(l: &LieRinehartAlgebra, m: &RightLRModule) -> usize {
    let (nl, nm) = (l.dim(), m.dim());
    let span = Subspace::span(
        nm,
        (0..nm)
            .flat_map(|k| (0..nl).map(move |i| (k, i)))
            .map(|(k, i)| m.act_r(&unit(nm, k), &unit(nl, i))),
    );
    nm - span.rank()
}

/// `M^L = {m : x·m = 0 for all x}`.
pub fn invariants(l: &LieRinehartAlgebra, m: &LeftLRModule) -> Subspace {
    let ops: Vec<Matrix> = (0..l.dim()).map(|i| m.l_operator(i)).collect();
    ops.iter()
        .fold(Matrix::zeros(0, m.dim()), |acc, op| acc.vstack(op))
        .kernel()
}

/// The zero representation of `g` on `K^k`.
pub fn trivial_representation(g: &LieAlgebraOverK, k: usize) -> Vec<Matrix> {
    vec![Matrix::zeros(k, k); g.dim()]
}

/// The adjoint representation of `g`.
pub fn adjoint_representation(g: &LieAlgebraOverK) -> Vec<Matrix> {
    let n = g.dim();
    (0..n)
        .map(|i| Matrix::from_fn(n, n, |r, c| g.bracket_tensor().get(i, c, r).clone()))
        .collect()
}

fn increasing_tuples(n: usize, dim: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, dim: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, left - 1, dim, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, dim, &mut Vec::new(), &mut out);
    out
}

/// Sorts a tuple, returning the sign of the permutation, or `None` on a
/// repeated entry.
fn sort_sign(t: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = t.to_vec();
    let mut sgn = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sgn = -sgn;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sgn))
}

/// The Chevalley–Eilenberg differential `Hom(Λ^n g, M) → Hom(Λ^{n+1} g, M)`
/// on the basis of increasing index tuples.
fn ce_differential(g: &LieAlgebraOverK, rho: &[Matrix], n: usize) -> Matrix {
    let (dg, dm) = (g.dim(), rho.first().map_or(0, Matrix::rows));
    let src = increasing_tuples(n, dg);
    let dst = increasing_tuples(n + 1, dg);
    let index = |t: &[usize]| src.iter().position(|s| s == t).unwrap();
    let mut d = Matrix::zeros(dst.len() * dm, src.len() * dm);
    for (row, t) in dst.iter().enumerate() {
        for i in 0..=n {
            let rest = without(t, &[i]);
            let col = index(&rest);
            for a in 0..dm {
                for b in 0..dm {
                    let v = rho[t[i]].get(a, b);
                    if v.numer() != &0.into() {
                        let cur = d.get(row * dm + a, col * dm + b).clone();
                        d.set(row * dm + a, col * dm + b, cur + sign(i) * v);
                    }
                }
            }
        }
        for j in 0..=n {
            for k in j + 1..=n {
                for (q, c) in g.bracket_tensor().fiber(t[j], t[k]).iter().enumerate() {
                    if c.numer() == &0.into() {
                        continue;
                    }
                    let mut args = vec![q];
                    args.extend(without(t, &[j, k]));
                    if let Some((sorted, s)) = sort_sign(&args) {
                        let col = index(&sorted);
                        let coeff = sign(j + k) * c * Scalar::from_integer(s.into());
                        for a in 0..dm {
                            let cur = d.get(row * dm + a, col * dm + a).clone();
                            d.set(row * dm + a, col * dm + a, cur + coeff.clone());
                        }
                    }
                }
            }
        }
    }
    d
}

/// `dim H^n_CE(g, M)` for a representation `rho` (one matrix per basis
/// vector of `g`), computed on `Hom(Λ^n g, M)` without any solving.
pub fn ce_cohomology(g: &LieAlgebraOverK, rho: &[Matrix], n: usize) -> Result<usize> {
    check_cap(n)?;
    crate::error::ensure_dim("representation", g.dim(), rho.len())?;
    let dm = rho.first().map_or(0, Matrix::rows);
    let cn = increasing_tuples(n, g.dim()).len() * dm;
    let out = ce_differential(g, rho, n).rank();
    let inc = if n == 0 {
        0
    } else {
        ce_differential(g, rho, n - 1).rank()
    };
    Ok(cn - out - inc)
}

/// Degree-wise comparison of Rinehart cohomology of `A ⊗ g` with the
/// Chevalley–Eilenberg cohomology of `g`, both with trivial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeComparison {
    pub degree: usize,
    pub rinehart: usize,
    pub ce: usize,
}

impl CeComparison {
    pub fn agree(&self) -> bool {
        self.rinehart == self.ce
    }
}

/// Compares `H^n_Rin(A ⊗ g, M)` and `H^n_CE(g, M)` for `M = K^k` with `A`
/// acting through its augmentation and `g` acting by zero.
pub fn rinehart_vs_ce(
    g: &LieAlgebraOverK,
    base: &CommAlgebra,
    gamma: &[Matrix],
    k: usize,
    n: usize,
) -> Result<CeComparison> {
    let l = transformation_algebra(g, base, gamma)?;
    let m = LeftLRModule::trivial(&l, k)?;
    let report = m.validate(&l);
    if !report.is_valid() {
        return Err(Error::Invalid {
            what: "trivial module",
            report,
        });
    }
    Ok(CeComparison {
        degree: n,
        rinehart: cohomology(&l, &m, n)?.dim,
        ce: ce_cohomology(g, &trivial_representation(g, k), n)?,
    })
}

/// `Der_A(L, M)` with its inner part and the low-degree sequence
/// `0 → H⁰ → M → Der_A(L, M) → H¹ → 0`.
///
/// Derivations are stored as vectors `d(x_i)_k` at `i·dim M + k`.
#[derive(Clone, Debug)]
pub struct DerModule {
    pub dim_m: usize,
    pub derivations: Subspace,
    pub inner: Subspace,
    pub invariants: Subspace,
    pub h0: usize,
    pub h1: usize,
}

impl DerModule {
    /// `dim Der = (dim M − dim H⁰) + dim H¹`, `H⁰ = M^L`, `IDer ⊆ Der` and
    /// `dim H¹ = dim Der − dim IDer`.
    pub fn exact(&self) -> bool {
        self.derivations.rank() == self.dim_m - self.h0 + self.h1
            && self.h0 == self.invariants.rank()
            && self.inner.is_subspace_of(&self.derivations)
            && self.h1 == self.derivations.rank() - self.inner.rank()
    }
}

pub fn der_module(l: &LieRinehartAlgebra, m: &LeftLRModule) -> Result<DerModule> {
    let report = m.validate(l);
    if !report.is_valid() {
        return Err(Error::Invalid { what: "module", report });
    }
    let (nl, nm, na) = (l.dim(), m.dim(), l.base().dim());
    let d = nl * nm;
    let value = |v: &[Scalar], i: usize| v[i * nm..(i + 1) * nm].to_vec();
    let on = |v: &[Scalar], x: &[Scalar]| {
        let mut out = zeros(nm);
        for (i, c) in x.iter().enumerate() {
            axpy(&mut out, c, &value(v, i));
        }
        out
    };
    let derivations = crate::exactlin::solve_homogeneous(d, |v| {
        let mut res = Vec::new();
        for p in 0..na {
            for i in 0..nl {
                let lhs = on(v, l.a_action().fiber(p, i));
                let rhs = m.act_a(&unit(na, p), &value(v, i));
                res.extend(lhs.iter().zip(&rhs).map(|(a, b)| a - b));
            }
        }
        for i in 0..nl {
            for j in i + 1..nl {
                let lhs = on(v, l.bracket_tensor().fiber(i, j));
                let a = m.act_l(&unit(nl, i), &value(v, j));
                let b = m.act_l(&unit(nl, j), &value(v, i));
                res.extend((0..nm).map(|k| &lhs[k] - &a[k] + &b[k]));
            }
        }
        res
    });
    let inner = Subspace::span(
        d,
        (0..nm).map(|k| {
            let mut v = Vec::with_capacity(d);
            for i in 0..nl {
                v.extend(m.act_l(&unit(nl, i), &unit(nm, k)));
            }
            v
        }),
    );
    Ok(DerModule {
        dim_m: nm,
        derivations,
        inner,
        invariants: invariants(l, m),
        h0: cohomology(l, m, 0)?.dim,
        h1: cohomology(l, m, 1)?.dim,
    })
}

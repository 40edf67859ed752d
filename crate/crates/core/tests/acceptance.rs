//! Acceptance run: one pass/fail line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use lierinehart::constructions::{builtin, fiber_product, lie_builtin, BUILTIN_NAMES};
use lierinehart::exactlin::{frac, int, unit, zeros, Matrix, Scalar};
use lierinehart::homology::{
    ce_cohomology, chain_boundary, coboundary, der_module, rinehart_vs_ce, trivial_representation,
};
use lierinehart::lifting::{lift_automorphism, lift_derivation, split_uce_check, Covering, Lift};
use lierinehart::nabtensor::{hat_uce_isomorphism, tensor_product, ActionPair};
use lierinehart::uce::{build_uce, solve_lifts, verify_characterization};
use lierinehart::{CommAlgebra, LRMorphism, LeftLRModule, LieRinehartAlgebra, RightLRModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, format!("took {e:.2?}, limit {limit:?}"))
}

/// Coefficient modules for the corpus: trivial where the anchor allows it,
/// `A` itself, and the adjoint module where it is a module.
fn modules(l: &LieRinehartAlgebra) -> Vec<(&'static str, LeftLRModule)> {
    let mut out = Vec::new();
    if let Ok(m) = LeftLRModule::trivial(l, 1) {
        if m.validate(l).is_valid() {
            out.push(("trivial", m));
        }
    }
    out.push(("A", LeftLRModule::base_module(l)));
    let adj = LeftLRModule::adjoint(l);
    if adj.validate(l).is_valid() {
        out.push(("adjoint", adj));
    }
    out
}

/// Adds a random nonzero amount to one bracket structure constant.
fn mutate(l: &LieRinehartAlgebra, rng: &mut ChaCha8Rng) -> (String, LieRinehartAlgebra) {
    let deltas = [int(1), int(-1), int(2), frac(1, 2), frac(-3, 2)];
    let delta: Scalar = deltas[rng.gen_range(0..deltas.len())].clone();
    let n = l.dim();
    let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
    let v = l.bracket_tensor().get(i, j, k) + &delta;
    (format!("bracket[{i}][{j}][{k}]"), l.with_bracket_entry(i, j, k, v))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0;
    for name in BUILTIN_NAMES {
        let l = builtin(name).map_err(|e| e.to_string())?;
        let r = l.validate();
        ensure(r.is_valid(), format!("{name}: {r}"))?;
        for _ in 0..50 {
            let (what, m) = mutate(&l, &mut rng);
            let r = m.validate();
            ensure(
                !r.axioms().is_empty(),
                format!("{name}: mutation of {what} went unnoticed"),
            )?;
            count += 1;
        }
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!(
        "{} builtins valid, {count} mutations all flagged",
        BUILTIN_NAMES.len()
    ))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut checks = 0;
    for name in BUILTIN_NAMES {
        let l = builtin(name).map_err(|e| e.to_string())?;
        let m = modules(&l).remove(0).1;
        for n in 0..=1 {
            let d0 = coboundary(&l, &m, n).map_err(|e| e.to_string())?;
            let d1 = coboundary(&l, &m, n + 1).map_err(|e| e.to_string())?;
            ensure(d1.mul(&d0).is_zero(), format!("{name}: δδ ≠ 0 from degree {n}"))?;
            checks += 1;
        }
        if l.has_zero_anchor() {
            let r = RightLRModule::trivial(&l, 1).map_err(|e| e.to_string())?;
            for n in 2..=3 {
                let (_, _, d2) = chain_boundary(&l, &r, n).map_err(|e| e.to_string())?;
                let (_, _, d1) = chain_boundary(&l, &r, n - 1).map_err(|e| e.to_string())?;
                ensure(d1.mul(&d2).is_zero(), format!("{name}: ∂∂ ≠ 0 from degree {n}"))?;
                checks += 1;
            }
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("{checks} compositions vanish"))
}

fn criterion_3() -> Outcome {
    let mut rows = Vec::new();
    for g in ["sl2", "heisenberg", "abelian(2)"] {
        let lie = lie_builtin(g).map_err(|e| e.to_string())?;
        for (bname, base) in [("Q", CommAlgebra::rationals()), ("dual", CommAlgebra::dual_numbers())] {
            let gamma = vec![Matrix::zeros(base.dim(), base.dim()); lie.dim()];
            let mut dims = Vec::new();
            for n in 0..=2 {
                let c = rinehart_vs_ce(&lie, &base, &gamma, 1, n).map_err(|e| e.to_string())?;
                ensure(c.agree(), format!("{g} over {bname}: {c:?}"))?;
                dims.push(c.ce);
            }
            rows.push(format!("{g}/{bname} {dims:?}"));
        }
    }
    Ok(rows.join(", "))
}

fn criterion_4() -> Outcome {
    let l = arc("sl2");
    let u = build_uce(&l).map_err(|e| e.to_string())?;
    ensure(u.dim() == 3, format!("quotient dim {}", u.dim()))?;
    ensure(u.kernel().is_zero(), "kernel is not zero")?;
    let inv = u.uce_morphism.inverse().map_err(|e| e.to_string())?;
    let back = LRMorphism::validated(l.clone(), u.algebra.clone(), inv.matrix().clone()).map_err(|e| e.to_string())?;
    ensure(
        back.matrix().mul(u.uce_morphism.matrix()) == Matrix::identity(3),
        "the inverse does not compose to the identity",
    )?;
    let sl2 = lie_builtin("sl2").map_err(|e| e.to_string())?;
    let h2 = ce_cohomology(&sl2, &trivial_representation(&sl2, 1), 2).map_err(|e| e.to_string())?;
    ensure(h2 == 0, format!("H²_CE(sl2) = {h2}"))?;
    Ok("dim 3, kernel 0, iso to sl2, H²_CE = 0".into())
}

fn criterion_5() -> Outcome {
    let mut rows = Vec::new();
    for name in ["sl2", "sl2xsl2", "transformation(sl2,dual_numbers,0)"] {
        let l = builtin(name).map_err(|e| e.to_string())?;
        let r = verify_characterization(&l).map_err(|e| e.to_string())?;
        ensure(
            r.battery.len() >= 5,
            format!("{name}: only {} extensions", r.battery.len()),
        )?;
        for b in &r.battery {
            ensure(b.passed(), format!("{name}: {b:?}"))?;
        }
        ensure(r.passed(), format!("{name}: {r:?}"))?;
        rows.push(format!("{name} {} extensions", r.battery.len()));
    }
    Ok(rows.join(", "))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for name in BUILTIN_NAMES {
        let l = Arc::new(builtin(name).map_err(|e| e.to_string())?);
        build_uce(&l).map_err(|e| format!("{name} uce: {e}"))?;
        tensor_product(&l, &l, &ActionPair::bracket(&l)).map_err(|e| format!("{name} tensor: {e}"))?;
        count += 2;
        if l.has_zero_anchor() {
            let r = RightLRModule::trivial(&l, 1).map_err(|e| e.to_string())?;
            for n in 1..=3 {
                chain_boundary(&l, &r, n).map_err(|e| format!("{name} ∂_{n}: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} well-definedness assertions hold"))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for name in BUILTIN_NAMES {
        let l = builtin(name).map_err(|e| e.to_string())?;
        for (mname, m) in modules(&l) {
            let d = der_module(&l, &m).map_err(|e| e.to_string())?;
            ensure(d.exact(), format!("{name} with {mname}: {d:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (L, M) pairs"))
}

fn criterion_8() -> Outcome {
    let l = arc("sl2");
    let u = build_uce(&l).map_err(|e| e.to_string())?;
    let cov = Covering::new(u.uce_morphism.clone()).map_err(|e| e.to_string())?;
    ensure(cov.c.is_zero(), "C ≠ 0 for the universal covering")?;
    let target = cov.target().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut autos = vec![chevalley(&target)];
    autos.extend(sl2_automorphisms(&target, 10, &mut rng));
    for (k, h) in autos.iter().enumerate() {
        let lifted = lift_automorphism(&cov, h).map_err(|e| e.to_string())?;
        let h1 = lifted.lifted().ok_or(format!("automorphism {k} refused"))?;
        let f = cov.f.matrix();
        ensure(
            f.mul(h1.matrix()) == h.matrix().mul(f),
            format!("f h' ≠ h f for automorphism {k}"),
        )?;
        let hf = LRMorphism::validated(cov.source().clone(), target.clone(), h.matrix().mul(f))
            .map_err(|e| e.to_string())?;
        let all = solve_lifts(&hf, &cov.f).map_err(|e| e.to_string())?;
        ensure(all.is_unique(), format!("lift of automorphism {k} is not unique"))?;
    }
    let (qcov, swap, mix) = quotient_covering();
    ensure(!qcov.c.is_zero(), "the quotient covering has C = 0")?;
    let refusal = match lift_automorphism(&qcov, &swap).map_err(|e| e.to_string())? {
        Lift::Refused { witness, image } => {
            ensure(qcov.c.contains(&witness) && !qcov.c.contains(&image), "bad witness")?;
            "automorphism"
        }
        Lift::Lifted(_) => return Err("the copy swap was lifted".into()),
    };
    let der = lift_derivation(&qcov, &mix).map_err(|e| e.to_string())?;
    ensure(der.lifted().is_none(), "the V→V' derivation was lifted")?;
    Ok(format!(
        "{} automorphisms lift uniquely; dim C = {} covering refuses an {refusal} and a derivation",
        autos.len(),
        qcov.c.rank()
    ))
}

fn criterion_9() -> Outcome {
    let mut rows = Vec::new();
    for name in ["sl2", "transformation(sl2,dual_numbers,0)"] {
        let l = arc(name);
        let iso = hat_uce_isomorphism(&l).map_err(|e| e.to_string())?;
        ensure(iso.hat.dim() == iso.uce.dim(), format!("{name}: dims differ"))?;
        ensure(iso.inverse_pair(), format!("{name}: maps are not mutually inverse"))?;
        rows.push(format!("{name} dim {}", iso.hat.dim()));
    }
    Ok(rows.join(", "))
}

fn criterion_10() -> Outcome {
    let s = arc("sl2");
    let prod = fiber_product(&s, &s).map_err(|e| e.to_string())?;
    let d = prod.algebra.dim();
    let first: Vec<_> = (0..3).map(|i| prod.pair(&unit(3, i), &zeros(3)).unwrap()).collect();
    let second: Vec<_> = (0..3).map(|i| prod.pair(&zeros(3), &unit(3, i)).unwrap()).collect();
    let f = LRMorphism::validated(s.clone(), prod.algebra.clone(), Matrix::from_columns(d, &first))
        .map_err(|e| e.to_string())?;
    let sec = LRMorphism::validated(s.clone(), prod.algebra.clone(), Matrix::from_columns(d, &second))
        .map_err(|e| e.to_string())?;
    let r = split_uce_check(&f, &prod.second, &sec).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{r:?}"))?;
    ensure(r.product_iso == Some(true), "no product isomorphism")?;
    Ok(format!("dims {:?}, kernels {:?}", r.dims, r.kernel_dims))
}

/// Float literals or float types in non-comment code.
fn float_hits(dir: &Path, hits: &mut Vec<String>) {
    let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().flatten().map(|e| e.path()).collect();
    entries.sort();
    for path in entries {
        if path.is_dir() {
            float_hits(&path, hits);
        } else if path.extension().is_some_and(|e| e == "rs") {
            let text = std::fs::read_to_string(&path).unwrap();
            for (no, line) in text.lines().enumerate() {
                let code = line.split("//").next().unwrap_or("");
                let b = code.as_bytes();
                let literal = (1..b.len().saturating_sub(1))
                    .any(|i| b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit())
                    && !code.contains('"');
                let typed = ["f32", "f64"].iter().any(|t| {
                    code.match_indices(t).any(|(i, _)| {
                        let before = code[..i].chars().last();
                        let after = code[i + 3..].chars().next();
                        !before.is_some_and(|c| c.is_alphanumeric() || c == '_')
                            && !after.is_some_and(|c| c.is_alphanumeric() || c == '_')
                    })
                });
                if literal || typed {
                    hits.push(format!("{}:{}", path.display(), no + 1));
                }
            }
        }
    }
}

fn criterion_11(start: Instant) -> Outcome {
    let mut hits = Vec::new();
    float_hits(&Path::new(env!("CARGO_MANIFEST_DIR")).join("src"), &mut hits);
    ensure(hits.is_empty(), format!("floating point in {hits:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "no float literals or float types in core sources; this target ran in {:.2?} (whole-suite time is in the cargo output)",
        start.elapsed()
    ))
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("axiom suites and mutation oracle", Box::new(criterion_1)),
        ("δδ = 0 and ∂∂ = 0", Box::new(criterion_2)),
        ("transformation algebras: Rinehart = CE", Box::new(criterion_3)),
        ("uce of sl2", Box::new(criterion_4)),
        ("uce characterization battery", Box::new(criterion_5)),
        ("well-definedness on the corpus", Box::new(criterion_6)),
        ("Der / H⁰ / H¹ exact sequence", Box::new(criterion_7)),
        ("lifting and refusal", Box::new(criterion_8)),
        ("hat tensor ≅ uce", Box::new(criterion_9)),
        ("split uce of sl2 × sl2", Box::new(criterion_10)),
        ("runtime and no floating point", Box::new(move || criterion_11(start))),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} [{:>8.2?}] {title}: {detail}", k + 1, t.elapsed());
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

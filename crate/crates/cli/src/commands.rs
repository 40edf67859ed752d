//! Command execution. Every command produces an [`Outcome`] whose JSON
//! report has sorted keys.

use std::sync::Arc;

use lierinehart::constructions::{
    base_builtin, lie_builtin, pullback_extension, CentralExtensionWitness, BUILTIN_NAMES,
};
use lierinehart::exactlin::{Matrix, Subspace};
use lierinehart::homology::{cohomology, homology, max_degree, rinehart_vs_ce};
use lierinehart::lifting::{lift_automorphism, lift_derivation, split_uce_check, Covering, Lift};
use lierinehart::nabtensor::{hat_uce_isomorphism, tensor_product, ActionPair};
use lierinehart::uce::{build_uce, is_central};
use lierinehart::{Error, LRMorphism, LieRinehartAlgebra, ValidationReport};
use serde_json::{json, Value};

use crate::cli::{Cli, Coefficients, Command, Source};
use crate::error::{CliError, CliResult, EXIT_INVALID, EXIT_OK};
use crate::format::{encode_algebra, encode_matrix, encode_vector, to_text};
use crate::load::{Loader, ModuleChoice, Reference};

/// The result of a successful run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    /// Human-readable text; a rendering of `report` when absent.
    pub text: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            text: None,
            exit_code: EXIT_OK,
        }
    }

    fn with_status(report: Value, passed: bool) -> Self {
        Outcome {
            exit_code: if passed { EXIT_OK } else { EXIT_INVALID },
            ..Outcome::ok(report)
        }
    }

    /// The text printed without `--json`.
    pub fn human(&self) -> String {
        match &self.text {
            Some(t) => t.clone(),
            None => render(&self.report),
        }
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                format!(
                    "{k}: {}",
                    if v.is_string() {
                        v.as_str().unwrap().to_string()
                    } else {
                        v.to_string()
                    }
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn basis(s: &Subspace) -> Value {
    json!(s.basis().iter().map(|v| encode_vector(v)).collect::<Vec<_>>())
}

fn violations(r: &ValidationReport) -> Value {
    json!(r
        .violations
        .iter()
        .map(|v| json!({ "axiom": v.axiom.to_string(), "indices": v.indices }))
        .collect::<Vec<_>>())
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let mut loader = Loader::new();
    match &cli.command {
        Command::Check(source) => check(&mut loader, source),
        Command::Center(source) => {
            let l = loader.algebra(&source.reference()?)?;
            let z = l.center();
            Ok(Outcome::ok(json!({ "dim": z.rank(), "basis": basis(&z) })))
        }
        Command::Commutator(source) => {
            let l = loader.algebra(&source.reference()?)?;
            let d = l.derived();
            Ok(Outcome::ok(
                json!({ "dim": d.rank(), "basis": basis(&d), "perfect": d.rank() == l.dim() }),
            ))
        }
        Command::Uce { source, full } => {
            let l = loader.algebra(&source.reference()?)?;
            let u = build_uce(&l)?;
            let mut report = json!({
                "quotient_dim": u.dim(),
                "kernel_dim": u.kernel().rank(),
                "perfect": l.is_perfect(),
            });
            if *full {
                report["central"] = json!(is_central(&u.uce_morphism)?.is_central());
                report["image_is_commutator"] = json!(u.uce_morphism.image() == l.derived());
            }
            Ok(Outcome::ok(report))
        }
        Command::Cohomology { source, coefficients } => {
            let l = loader.algebra(&source.reference()?)?;
            let m = loader.left_module(&l, choice(coefficients))?;
            degrees(coefficients.degree, |n| Ok(cohomology(&l, &m, n)?.dim))
        }
        Command::Homology { source, coefficients } => {
            let l = loader.algebra(&source.reference()?)?;
            let m = loader.right_module(&l, choice(coefficients))?;
            degrees(coefficients.degree, |n| homology(&l, &m, n))
        }
        Command::CompareCe {
            lie,
            base,
            trivial_module,
            degree,
        } => {
            let g = lie_builtin(lie)?;
            let base = base_builtin(base)?;
            let gamma = vec![Matrix::zeros(base.dim(), base.dim()); g.dim()];
            let range: Vec<usize> = match degree {
                Some(n) => vec![*n],
                None => (0..=max_degree()).collect(),
            };
            let mut rows = Vec::new();
            for n in range {
                match rinehart_vs_ce(&g, &base, &gamma, *trivial_module, n) {
                    Ok(c) => rows.push(c),
                    Err(Error::DegreeCap { .. }) if degree.is_none() => break,
                    Err(e) => return Err(e.into()),
                }
            }
            let agree = rows.iter().all(|c| c.agree());
            Ok(Outcome::with_status(
                json!({
                    "degrees": rows.iter().map(|c| c.degree).collect::<Vec<_>>(),
                    "rinehart": rows.iter().map(|c| c.rinehart).collect::<Vec<_>>(),
                    "ce": rows.iter().map(|c| c.ce).collect::<Vec<_>>(),
                    "agree": agree,
                }),
                agree,
            ))
        }
        Command::Tensor { l, m, actions, hat } => tensor(&mut loader, l, m.as_deref(), actions.as_deref(), *hat),
        Command::LiftAut { covering, automorphism } => {
            let h = loader.morphism(automorphism)?;
            let cov = covering_for(&mut loader, covering, h.target())?;
            Ok(Outcome::ok(match lift_automorphism(&cov, &h)? {
                Lift::Lifted(g) => json!({ "lifted": true, "lift_matrix": encode_matrix(g.matrix()) }),
                Lift::Refused { witness, image } => refused(&witness, &image),
            }))
        }
        Command::LiftDer { covering, derivation } => {
            let (l, d) = loader.derivation(derivation)?;
            let cov = covering_for(&mut loader, covering, &l)?;
            Ok(Outcome::ok(match lift_derivation(&cov, &d)? {
                Lift::Lifted(e) => json!({
                    "lifted": true,
                    "lift_matrix": encode_matrix(&e.delta),
                    "lift_delta0": encode_matrix(&e.delta0),
                }),
                Lift::Refused { witness, image } => refused(&witness, &image),
            }))
        }
        Command::Pullback { extension, map } => {
            let c = loader.morphism(extension)?;
            let f = loader.morphism(map)?;
            let p = pullback_extension(&c, &f)?;
            Ok(Outcome::ok(json!({
                "dim": p.algebra.dim(),
                "kernel_dim": p.p_l.kernel.rank(),
                "central": p.p_l.is_central(),
            })))
        }
        Command::SplitUce { f, g, s } => {
            let (f, g, s) = (loader.morphism(f)?, loader.morphism(g)?, loader.morphism(s)?);
            let r = split_uce_check(&f, &g, &s)?;
            Ok(Outcome::with_status(
                json!({
                    "dims": r.dims,
                    "kernel_dims": r.kernel_dims,
                    "decomposition": r.decomposition,
                    "phi_ideal": r.phi_ideal,
                    "kernel_decomposition": r.kernel_decomposition,
                    "product_iso": r.product_iso,
                    "passed": r.passed(),
                }),
                r.passed(),
            ))
        }
        Command::Export { source, output } => {
            let (l, _) = loader.algebra_unchecked(&source.reference()?)?;
            let text = to_text(&encode_algebra(&l));
            match output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    Ok(Outcome {
                        text: Some(format!("wrote {}", path.display())),
                        ..Outcome::ok(json!({ "written": path.display().to_string() }))
                    })
                }
                None => Ok(Outcome {
                    text: Some(text.trim_end().to_string()),
                    ..Outcome::ok(serde_json::from_str(&text).expect("round trip"))
                }),
            }
        }
        Command::Builtins => Ok(Outcome {
            text: Some(BUILTIN_NAMES.join("\n")),
            ..Outcome::ok(json!({ "builtins": BUILTIN_NAMES }))
        }),
    }
}

fn choice(c: &Coefficients) -> ModuleChoice<'_> {
    match (&c.module, c.trivial_module) {
        (Some(spec), _) => ModuleChoice::Named(spec),
        (None, k) => ModuleChoice::Trivial(k.unwrap_or(1)),
    }
}

/// `{"dim"}` for one degree, otherwise `{"dims"}` for every degree the cap allows.
fn degrees(degree: Option<usize>, f: impl Fn(usize) -> lierinehart::Result<usize>) -> CliResult<Outcome> {
    if let Some(n) = degree {
        return Ok(Outcome::ok(json!({ "dim": f(n)? })));
    }
    let mut dims = Vec::new();
    for n in 0..=max_degree() {
        match f(n) {
            Ok(d) => dims.push(d),
            Err(Error::DegreeCap { .. }) => break,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::ok(json!({ "dims": dims })))
}

fn refused(witness: &[lierinehart::Scalar], image: &[lierinehart::Scalar]) -> Value {
    json!({ "lifted": false, "witness": encode_vector(witness), "image": encode_vector(image) })
}

fn covering_for(loader: &mut Loader, spec: &str, l: &LieRinehartAlgebra) -> CliResult<Covering> {
    if spec == "universal" {
        return Ok(Covering::universal(l)?);
    }
    let f = loader.morphism(spec)?;
    if **f.target() != *l {
        return Err(CliError::Usage(format!(
            "the covering {spec} does not end in the given algebra"
        )));
    }
    Ok(Covering::new(f)?)
}

fn check(loader: &mut Loader, source: &Source) -> CliResult<Outcome> {
    let r = source.reference()?;
    let (l, doc) = loader.algebra_unchecked(&r)?;
    let mut report = l.base().validate();
    report.extend(l.validate());
    let mut modules = serde_json::Map::new();
    let mut all_valid = report.is_valid();
    if let (Some(doc), Reference::File { path, .. }, true) = (&doc, &r, report.is_valid()) {
        for (name, block) in &doc.modules {
            let spec = format!("{}#{name}", path.display());
            let result = match block.kind {
                crate::format::ModuleKind::Left => loader.left_module(&l, ModuleChoice::Named(&spec)).map(drop),
                crate::format::ModuleKind::Right => loader.right_module(&l, ModuleChoice::Named(&spec)).map(drop),
            };
            let entry = match result {
                Ok(()) => json!("valid"),
                Err(e) => {
                    all_valid = false;
                    json!(e.to_string())
                }
            };
            modules.insert(name.clone(), entry);
        }
    }
    let mut out = json!({
        "valid": all_valid,
        "dim": l.dim(),
        "base_dim": l.base().dim(),
        "violations": violations(&report),
    });
    let mut text = report.to_string();
    if !modules.is_empty() {
        for (name, status) in &modules {
            text.push_str(&format!("\nmodule {name}: {}", status.as_str().unwrap_or_default()));
        }
        out["modules"] = Value::Object(modules);
    }
    Ok(Outcome {
        text: Some(text),
        ..Outcome::with_status(out, all_valid)
    })
}

fn tensor(loader: &mut Loader, l: &str, m: Option<&str>, actions: Option<&str>, hat: bool) -> CliResult<Outcome> {
    let l = loader.algebra_spec(l)?;
    if hat {
        if m.is_some() || actions.is_some() {
            return Err(CliError::Usage(
                "--hat takes a single algebra with its bracket actions".into(),
            ));
        }
        let h = hat_uce_isomorphism(&l)?;
        return Ok(Outcome::ok(tensor_report(
            &h.hat.mu,
            &h.hat.nu,
            h.hat.dim(),
            h.central,
            Some(h.inverse_pair()),
        )));
    }
    let m: Arc<LieRinehartAlgebra> = match m {
        Some(spec) => loader.algebra_spec(spec)?,
        None => l.clone(),
    };
    let pair = match actions {
        None | Some("bracket") if *l == *m => ActionPair::bracket(&l),
        None | Some("bracket") => {
            return Err(CliError::Usage(
                "bracket actions need M = L; pass --actions <file>".into(),
            ));
        }
        Some("trivial") => ActionPair::trivial(&l, &m),
        Some(spec) => loader.actions(spec, &l, &m)?,
    };
    let t = tensor_product(&l, &m, &pair)?;
    let central = match CentralExtensionWitness::new(t.mu.clone()) {
        Ok(w) => w.is_central(),
        Err(Error::NotSurjective) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome::ok(tensor_report(&t.mu, &t.nu, t.dim(), central, None)))
}

fn tensor_report(mu: &LRMorphism, nu: &LRMorphism, dim: usize, central: bool, uce_iso: Option<bool>) -> Value {
    json!({
        "dim": dim,
        "mu_rank": mu.image().rank(),
        "nu_rank": nu.image().rank(),
        "central": central,
        "uce_iso": uce_iso,
    })
}

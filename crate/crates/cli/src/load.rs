//! Resolution of algebra, module, morphism and derivation references.
//!
//! A reference is either `builtin:<name>` or a file path, optionally
//! followed by `#<entry>` to select one entry of a `modules`, `morphisms`
//! or `derivations` block. Paths inside a file are relative to that file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use lierinehart::constructions::builtin;
use lierinehart::lifting::DerivationPair;
use lierinehart::nabtensor::ActionPair;
use lierinehart::{LRMorphism, LeftLRModule, LieRinehartAlgebra, RightLRModule};

use crate::error::{CliError, CliResult};
use crate::format::{
    decode_algebra, decode_matrix, decode_tensor, missing, read_document, Document, FormatError, ModuleKind,
};

const BUILTIN_PREFIX: &str = "builtin:";

/// A parsed reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reference {
    Builtin(String),
    File { path: PathBuf, entry: Option<String> },
}

impl Reference {
    /// Parses `spec`, resolving relative paths against `dir`.
    pub fn parse(spec: &str, dir: &Path) -> Self {
        if let Some(name) = spec.strip_prefix(BUILTIN_PREFIX) {
            return Reference::Builtin(name.to_string());
        }
        let (path, entry) = match spec.rsplit_once('#') {
            Some((p, e)) => (p, Some(e.to_string())),
            None => (spec, None),
        };
        Reference::File {
            path: dir.join(path),
            entry,
        }
    }
}

/// Either a module defined in a file or one of the standard choices.
pub enum ModuleChoice<'a> {
    Trivial(usize),
    Named(&'a str),
}

/// Loads referenced objects, sharing algebras that are read twice.
#[derive(Default)]
pub struct Loader {
    algebras: BTreeMap<String, Arc<LieRinehartAlgebra>>,
}

fn entry<'a, T>(map: &'a BTreeMap<String, T>, entry: &Option<String>, block: &str) -> CliResult<&'a T> {
    match entry {
        Some(name) => map.get(name).ok_or_else(|| {
            FormatError::Schema {
                at: format!("{block}.{name}"),
                message: "no such entry".into(),
            }
            .into()
        }),
        None if map.len() == 1 => Ok(map.values().next().unwrap()),
        None if map.is_empty() => Err(missing(block).into()),
        None => Err(FormatError::Schema {
            at: block.to_string(),
            message: format!("several entries, select one with `#name` ({})", keys(map)),
        }
        .into()),
    }
}

fn keys<T>(map: &BTreeMap<String, T>) -> String {
    map.keys().cloned().collect::<Vec<_>>().join(", ")
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn validated(l: LieRinehartAlgebra) -> CliResult<LieRinehartAlgebra> {
    let mut report = l.base().validate();
    report.extend(l.validate());
    if report.is_valid() {
        Ok(l)
    } else {
        Err(lierinehart::Error::Invalid {
            what: "Lie-Rinehart algebra",
            report,
        }
        .into())
    }
}

impl Loader {
    pub fn new() -> Self {
        Self::default()
    }

    /// The algebra at `r` without checking its axioms.
    pub fn algebra_unchecked(&self, r: &Reference) -> CliResult<(LieRinehartAlgebra, Option<Document>)> {
        match r {
            Reference::Builtin(name) => Ok((builtin(name)?, None)),
            Reference::File { path, .. } => {
                let doc = read_document(path)?;
                Ok((decode_algebra(&doc)?, Some(doc)))
            }
        }
    }

    /// The validated algebra at `r`.
    pub fn algebra(&mut self, r: &Reference) -> CliResult<Arc<LieRinehartAlgebra>> {
        let key = match r {
            Reference::Builtin(name) => format!("{BUILTIN_PREFIX}{name}"),
            Reference::File { path, .. } => path
                .canonicalize()
                .unwrap_or_else(|_| path.clone())
                .display()
                .to_string(),
        };
        if let Some(l) = self.algebras.get(&key) {
            return Ok(l.clone());
        }
        let l = Arc::new(validated(self.algebra_unchecked(r)?.0)?);
        self.algebras.insert(key, l.clone());
        Ok(l)
    }

    pub fn algebra_spec(&mut self, spec: &str) -> CliResult<Arc<LieRinehartAlgebra>> {
        self.algebra(&Reference::parse(spec, Path::new("")))
    }

    fn document(r: &Reference, what: &str) -> CliResult<(Document, PathBuf, Option<String>)> {
        match r {
            Reference::File { path, entry } => Ok((read_document(path)?, parent(path), entry.clone())),
            Reference::Builtin(name) => Err(CliError::Usage(format!("`builtin:{name}` does not name a {what}"))),
        }
    }

    /// A left module: `trivial`, `adjoint`, `base`, or an entry of a file.
    pub fn left_module(&mut self, l: &LieRinehartAlgebra, choice: ModuleChoice) -> CliResult<LeftLRModule> {
        let m = match choice {
            ModuleChoice::Trivial(k) => LeftLRModule::trivial(l, k)?,
            ModuleChoice::Named("adjoint") => LeftLRModule::adjoint(l),
            ModuleChoice::Named("base") => LeftLRModule::base_module(l),
            ModuleChoice::Named(spec) => {
                let (doc, _, e) = Self::document(&Reference::parse(spec, Path::new("")), "module")?;
                let block = entry(&doc.modules, &e, "modules")?;
                if block.kind != ModuleKind::Left {
                    return Err(CliError::Usage(format!("{spec} is not a left module")));
                }
                let (na, n, d) = (l.base().dim(), l.dim(), block.dim);
                let a = decode_tensor(&block.a_action, [na, d, d], "modules.a_action")?;
                let act = decode_tensor(&block.action, [n, d, d], "modules.action")?;
                LeftLRModule::new(l, a, act)?
            }
        };
        let report = m.validate(l);
        if !report.is_valid() {
            return Err(lierinehart::Error::Invalid {
                what: "left module",
                report,
            }
            .into());
        }
        Ok(m)
    }

    /// A right module: `trivial` or an entry of a file.
    pub fn right_module(&mut self, l: &LieRinehartAlgebra, choice: ModuleChoice) -> CliResult<RightLRModule> {
        let m = match choice {
            ModuleChoice::Trivial(k) => RightLRModule::trivial(l, k)?,
            ModuleChoice::Named(spec) => {
                let (doc, _, e) = Self::document(&Reference::parse(spec, Path::new("")), "module")?;
                let block = entry(&doc.modules, &e, "modules")?;
                if block.kind != ModuleKind::Right {
                    return Err(CliError::Usage(format!("{spec} is not a right module")));
                }
                let (na, n, d) = (l.base().dim(), l.dim(), block.dim);
                let a = decode_tensor(&block.a_action, [na, d, d], "modules.a_action")?;
                let act = decode_tensor(&block.action, [d, n, d], "modules.action")?;
                RightLRModule::new(l, a, act)?
            }
        };
        let report = m.validate(l);
        if !report.is_valid() {
            return Err(lierinehart::Error::Invalid {
                what: "right module",
                report,
            }
            .into());
        }
        Ok(m)
    }

    /// A validated morphism.
    pub fn morphism(&mut self, spec: &str) -> CliResult<LRMorphism> {
        let (doc, dir, e) = Self::document(&Reference::parse(spec, Path::new("")), "morphism")?;
        let block = entry(&doc.morphisms, &e, "morphisms")?;
        let source = self.algebra(&Reference::parse(&block.source, &dir))?;
        let target = self.algebra(&Reference::parse(&block.target, &dir))?;
        let matrix = decode_matrix(&block.matrix, target.dim(), source.dim(), "morphisms.matrix")?;
        Ok(LRMorphism::validated(source, target, matrix)?)
    }

    /// A validated derivation pair together with its algebra.
    pub fn derivation(&mut self, spec: &str) -> CliResult<(Arc<LieRinehartAlgebra>, DerivationPair)> {
        let (doc, dir, e) = Self::document(&Reference::parse(spec, Path::new("")), "derivation")?;
        let block = entry(&doc.derivations, &e, "derivations")?;
        let l = self.algebra(&Reference::parse(&block.algebra, &dir))?;
        let (n, na) = (l.dim(), l.base().dim());
        let d = DerivationPair {
            delta: decode_matrix(&block.delta, n, n, "derivations.delta")?,
            delta0: decode_matrix(&block.delta0, na, na, "derivations.delta0")?,
        };
        let report = d.validate(&l);
        if !report.is_valid() {
            return Err(lierinehart::Error::Invalid {
                what: "derivation pair",
                report,
            }
            .into());
        }
        Ok((l, d))
    }

    /// The `actions` block of a file, for the given pair of algebras.
    pub fn actions(&mut self, spec: &str, l: &LieRinehartAlgebra, m: &LieRinehartAlgebra) -> CliResult<ActionPair> {
        let (doc, _, _) = Self::document(&Reference::parse(spec, Path::new("")), "set of actions")?;
        let block = doc.actions.as_ref().ok_or_else(|| missing("actions"))?;
        Ok(ActionPair {
            l_on_m: decode_tensor(&block.l_on_m, [l.dim(), m.dim(), m.dim()], "actions.l_on_m")?,
            m_on_l: decode_tensor(&block.m_on_l, [m.dim(), l.dim(), l.dim()], "actions.m_on_l")?,
        })
    }
}

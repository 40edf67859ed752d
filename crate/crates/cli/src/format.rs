//! The declarative JSON file format.
//!
//! A document may carry any of the blocks below; commands read the ones
//! they need. Scalars are JSON integers or strings `"p/q"`. Tensors are
//! nested arrays `t[i][j][k]`, matrices are lists of rows.
//!
//! ```json
//! {
//!   "base": { "dim": 2, "unit": [1, 0], "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]] },
//!   "algebra": { "dim": 1, "a_action": [[[1]], [[0]]], "bracket": [[[0]]],
//!                "anchor": [[[0, 0], [0, 1]]] }
//! }
//! ```
//!
//! Conventions match the kernel: `base.mult[i][j]` is `e_i e_j`,
//! `algebra.a_action[p][i]` is `e_p x_i`, `algebra.bracket[i][j]` is
//! `[x_i, x_j]`, and `algebra.anchor[i]` is the matrix of `α(x_i)` on `A`.
//! Left modules store `action[i][j] = x_i · m_j`, right modules
//! `action[j][i] = m_j · x_i`. Morphism matrices have one row per target
//! coordinate.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use lierinehart::exactlin::{int, Scalar, Tensor3};
use lierinehart::{CommAlgebra, LieRinehartAlgebra, Matrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

pub type VecRepr = Vec<Num>;
pub type MatRepr = Vec<Vec<Num>>;
pub type TensorRepr = Vec<Vec<Vec<Num>>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraBlock>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<ActionsBlock>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismBlock>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derivations: BTreeMap<String, DerivationBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseBlock {
    pub dim: usize,
    pub unit: VecRepr,
    pub mult: TensorRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub a_action: TensorRepr,
    pub bracket: TensorRepr,
    pub anchor: Vec<MatRepr>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub kind: ModuleKind,
    pub dim: usize,
    pub a_action: TensorRepr,
    pub action: TensorRepr,
}

/// Mutual actions for the tensor product: `l_on_m[i][j] = ^{x_i} m_j`,
/// `m_on_l[j][i] = ^{m_j} x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionsBlock {
    pub l_on_m: TensorRepr,
    pub m_on_l: TensorRepr,
}

/// `source` and `target` are algebra references: a path relative to the
/// referencing file, or `builtin:<name>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBlock {
    pub source: String,
    pub target: String,
    pub matrix: MatRepr,
}

/// A derivation pair `(δ, δ₀)` of the referenced algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationBlock {
    pub algebra: String,
    pub delta: MatRepr,
    pub delta0: MatRepr,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{at}: malformed scalar `{value}` (expected an integer or \"p/q\")")]
    Scalar { at: String, value: String },

    #[error("{at}: dimension mismatch, expected {expected} entries, found {found}")]
    Dimension { at: String, expected: usize, found: usize },

    #[error("{at}: {message}")]
    Schema { at: String, message: String },
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

pub fn parse_document(path: &Path, text: &str) -> FormatResult<Document> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_document(path: &Path) -> FormatResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_document(path, &text)
}

pub fn decode_scalar(n: &Num, at: &str) -> FormatResult<Scalar> {
    match n {
        Num::Int(i) => Ok(int(*i)),
        Num::Text(s) => s.trim().parse().map_err(|_| FormatError::Scalar {
            at: at.to_string(),
            value: s.clone(),
        }),
    }
}

pub fn encode_scalar(s: &Scalar) -> Num {
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(i) => Num::Int(i),
        Err(_) => Num::Text(text),
    }
}

fn check_len(at: &str, expected: usize, found: usize) -> FormatResult<()> {
    if expected == found {
        Ok(())
    } else {
        Err(FormatError::Dimension {
            at: at.to_string(),
            expected,
            found,
        })
    }
}

pub fn decode_vector(v: &[Num], len: usize, at: &str) -> FormatResult<Vec<Scalar>> {
    check_len(at, len, v.len())?;
    v.iter()
        .enumerate()
        .map(|(k, n)| decode_scalar(n, &format!("{at}[{k}]")))
        .collect()
}

pub fn decode_matrix(m: &MatRepr, rows: usize, cols: usize, at: &str) -> FormatResult<Matrix> {
    check_len(at, rows, m.len())?;
    let rows_out = m
        .iter()
        .enumerate()
        .map(|(r, row)| decode_vector(row, cols, &format!("{at}[{r}]")))
        .collect::<FormatResult<Vec<_>>>()?;
    Ok(Matrix::from_rows(cols, rows_out))
}

pub fn decode_tensor(t: &TensorRepr, dims: [usize; 3], at: &str) -> FormatResult<Tensor3> {
    check_len(at, dims[0], t.len())?;
    let mut out = Tensor3::zeros(dims[0], dims[1], dims[2]);
    for (i, slab) in t.iter().enumerate() {
        check_len(&format!("{at}[{i}]"), dims[1], slab.len())?;
        for (j, fiber) in slab.iter().enumerate() {
            let v = decode_vector(fiber, dims[2], &format!("{at}[{i}][{j}]"))?;
            out.fiber_mut(i, j).clone_from_slice(&v);
        }
    }
    Ok(out)
}

pub fn encode_vector(v: &[Scalar]) -> VecRepr {
    v.iter().map(encode_scalar).collect()
}

pub fn encode_matrix(m: &Matrix) -> MatRepr {
    (0..m.rows()).map(|r| encode_vector(m.row(r))).collect()
}

pub fn encode_tensor(t: &Tensor3) -> TensorRepr {
    let [d0, d1, _] = t.dims();
    (0..d0)
        .map(|i| (0..d1).map(|j| encode_vector(t.fiber(i, j))).collect())
        .collect()
}

pub fn decode_base(b: &BaseBlock) -> FormatResult<CommAlgebra> {
    let n = b.dim;
    let unit = decode_vector(&b.unit, n, "base.unit")?;
    let mult = decode_tensor(&b.mult, [n, n, n], "base.mult")?;
    CommAlgebra::new(unit, mult).map_err(|e| FormatError::Schema {
        at: "base".into(),
        message: e.to_string(),
    })
}

/// Builds the algebra of a document, checking shapes but not axioms.
pub fn decode_algebra(doc: &Document) -> FormatResult<LieRinehartAlgebra> {
    let base_block = doc.base.as_ref().ok_or_else(|| missing("base"))?;
    let block = doc.algebra.as_ref().ok_or_else(|| missing("algebra"))?;
    let base = decode_base(base_block)?;
    let (na, n) = (base.dim(), block.dim);
    let a_action = decode_tensor(&block.a_action, [na, n, n], "algebra.a_action")?;
    let bracket = decode_tensor(&block.bracket, [n, n, n], "algebra.bracket")?;
    check_len("algebra.anchor", n, block.anchor.len())?;
    let anchor = block
        .anchor
        .iter()
        .enumerate()
        .map(|(i, m)| decode_matrix(m, na, na, &format!("algebra.anchor[{i}]")))
        .collect::<FormatResult<Vec<_>>>()?;
    LieRinehartAlgebra::new(base, a_action, bracket, anchor).map_err(|e| FormatError::Schema {
        at: "algebra".into(),
        message: e.to_string(),
    })
}

pub fn encode_base(base: &CommAlgebra) -> BaseBlock {
    BaseBlock {
        dim: base.dim(),
        unit: encode_vector(base.unit()),
        mult: encode_tensor(base.mult()),
    }
}

/// A document holding exactly the base and algebra blocks of `l`.
pub fn encode_algebra(l: &LieRinehartAlgebra) -> Document {
    Document {
        base: Some(encode_base(l.base())),
        algebra: Some(AlgebraBlock {
            dim: l.dim(),
            a_action: encode_tensor(l.a_action()),
            bracket: encode_tensor(l.bracket_tensor()),
            anchor: l.anchor().iter().map(encode_matrix).collect(),
        }),
        ..Document::default()
    }
}

pub(crate) fn missing(block: &str) -> FormatError {
    FormatError::Schema {
        at: block.to_string(),
        message: "required block is missing".into(),
    }
}

/// Serializes a document with objects indented and innermost arrays on one
/// line, so tensors read fiber by fiber.
pub fn to_text(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(key.clone())));
                write_value(item, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}}}", pad(depth)));
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}]", pad(depth)));
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("[{}]", inner.join(", ")));
        }
        other => out.push_str(&other.to_string()),
    }
}

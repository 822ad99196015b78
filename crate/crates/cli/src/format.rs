//! The on-disk instance document.
//!
//! Field elements are JSON integers or strings holding an integer or a fraction (`"3/7"`).
//! Matrices are row-major nested arrays. Maps into a tensor product over an algebra are
//! given on the ambient tensor product over the field, with row index `i * dim(N) + j`
//! for `e_i ⊗ e_j`; the loader projects them to the quotient.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }

    /// Integers that fit in an `i64` are emitted as JSON numbers.
    pub fn from_text(s: String) -> Self {
        match s.parse::<i64>() {
            Ok(n) => Scalar::Int(n),
            Err(_) => Scalar::Text(s),
        }
    }
}

pub type MatrixDoc = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rational,
    Prime { p: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    /// `products[i][j]` holds the coordinates of `e_i e_j`.
    pub products: Vec<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub name: String,
    pub dim: usize,
    pub left: String,
    pub right: String,
    /// One matrix per basis element of the left algebra.
    pub left_action: Vec<MatrixDoc>,
    /// One matrix per basis element of the right algebra, acting on column vectors.
    pub right_action: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoringDoc {
    pub name: String,
    pub carrier: String,
    /// `C -> C ⊗_k C`.
    pub comult: MatrixDoc,
    /// `C -> A`.
    pub counit: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleDoc {
    pub name: String,
    pub coring: String,
    pub carrier: String,
    /// `M -> M ⊗_k C`.
    pub coaction: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    pub name: String,
    /// An `R`-`A` bimodule.
    pub sigma: String,
    /// An `A`-`R` bimodule.
    pub dagger: String,
    /// `R -> Σ ⊗_k Σ†`.
    pub eta: MatrixDoc,
    /// `Σ† ⊗_k Σ -> A`.
    pub eps: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub coring: String,
    /// A comodule whose carrier's left algebra is `R`.
    pub comodule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FirmDoc {
    pub ring: String,
    /// Right modules over the ring, added to the generated ones.
    #[serde(default)]
    pub modules: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_size: Option<usize>,
}

/// Expected verdicts, compared against a full run in the golden tests.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectDoc {
    /// Suite name to `pass`, `fail` or `skipped`.
    #[serde(default)]
    pub suites: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_galois: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comonadic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub field: FieldSpec,
    #[serde(default)]
    pub algebras: Vec<AlgebraDoc>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDoc>,
    #[serde(default)]
    pub corings: Vec<CoringDoc>,
    #[serde(default)]
    pub comodules: Vec<ComoduleDoc>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub contexts: Vec<ContextDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firm: Option<FirmDoc>,
    #[serde(default)]
    pub params: ParamsDoc,
    #[serde(default)]
    pub expect: ExpectDoc,
}

impl InstanceFile {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> crate::error::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::error::CliError::ParseError(e.to_string()))
    }
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        serde_json::Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if is_flat(v) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

//! JSON fan documents.
//!
//! Integers are arbitrary precision. They are written as JSON numbers when
//! they fit in the 53-bit range every JSON reader handles exactly, and as
//! decimal strings otherwise. The reader accepts both forms.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::fan::{make_stacky_fan, validate, AmbientModule, Cone, StackyFan, ValidationReport};
use crate::zlinalg::IntMatrix;

pub const SCHEMA_VERSION: &str = "1";

const SAFE_MAX: i64 = (1 << 53) - 1;

fn to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if (-SAFE_MAX..=SAFE_MAX).contains(&v) => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

fn from_json(v: &Value) -> Result<BigInt, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(format!("expected an integer, found {other}")),
    };
    text.parse::<BigInt>()
        .map_err(|_| format!("not an integer: {text}"))
}

/// Serde helpers for a single arbitrary-precision integer.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_json(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Serde helpers for `Vec<BigInt>`.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(to_json).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(from_json)
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde helpers for `Vec<Vec<BigInt>>`.
pub mod bigint_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        xs.iter()
            .map(|row| row.iter().map(to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Value>>::deserialize(d)?
            .iter()
            .map(|row| row.iter().map(from_json).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub rank: usize,
    #[serde(default, with = "bigint_vec")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_bigint_vec",
        deserialize_with = "de_opt_bigint_vec"
    )]
    pub labels: Option<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

fn opt_bigint_vec<S: Serializer>(xs: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => bigint_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

fn de_opt_bigint_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
    bigint_vec::deserialize(d).map(Some)
}

/// On-disk form of a stacky fan. `beta` is given column-wise: entry `j` is
/// the lift of `beta(e_j)`, free coordinates first, then torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub schema_version: String,
    #[serde(rename = "N")]
    pub n: ModuleSpec,
    #[serde(with = "bigint_matrix")]
    pub beta: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
    pub polytopal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error(transparent)]
    Fan(#[from] crate::Error),
}

impl FanDocument {
    pub fn from_json_str(text: &str) -> Result<Self, DocumentError> {
        let doc: FanDocument =
            serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Parse(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_fan(fan: &StackyFan, metadata: Option<Metadata>) -> Self {
        FanDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: ModuleSpec {
                rank: fan.module().free_rank(),
                torsion: fan.module().torsion_orders().to_vec(),
            },
            beta: fan.b().columns(),
            max_cones: fan
                .max_cones()
                .iter()
                .map(|c| c.indices().to_vec())
                .collect(),
            polytopal: fan.is_polytopal(),
            metadata,
        }
    }

    fn parts(&self) -> Result<(AmbientModule, IntMatrix, Vec<Cone>), crate::Error> {
        let module = AmbientModule::new(self.n.rank, self.n.torsion.clone())?;
        let rows = module.dim();
        if let Some((j, col)) = self.beta.iter().enumerate().find(|(_, c)| c.len() != rows) {
            return Err(crate::Error::ShapeMismatch(format!(
                "beta column {j} has {} entries, N needs {rows}",
                col.len()
            )));
        }
        let b = IntMatrix::from_columns(rows, &self.beta);
        let cones = self
            .max_cones
            .iter()
            .map(|c| Cone::new(c.iter().copied()))
            .collect();
        Ok((module, b, cones))
    }

    /// Per-condition validation. Malformed shapes are reported against the
    /// shape condition.
    pub fn validation_report(&self) -> ValidationReport {
        match self.parts() {
            Ok((module, b, cones)) => validate(&module, &b, &cones, self.polytopal),
            Err(e) => {
                use crate::fan::{Condition, Outcome};
                let mut checks = vec![(Condition::Shape, Outcome::Fail(e))];
                checks.extend(Condition::ALL[1..].iter().map(|&c| (c, Outcome::Skipped)));
                ValidationReport { checks }
            }
        }
    }

    pub fn to_fan(&self) -> Result<StackyFan, crate::Error> {
        let (module, b, cones) = self.parts()?;
        make_stacky_fan(module, b, cones, self.polytopal)
    }
}

//! JSON interchange format for algebras.
//!
//! ```json
//! {
//!   "name": "M1",
//!   "params": { "k": 3 },
//!   "dim": 6,
//!   "constants": [ { "i": 1, "j": 1, "k": 2, "value": "1" }, ... ]
//! }
//! ```
//!
//! Indices are 1-based, values are canonical rational strings and constants
//! are listed in `(i, j, k)` order. `name` and `params` are optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::catalog::FamilyId;
use crate::error::{Error, Result};
use crate::scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, Value>>,
    pub dim: usize,
    pub constants: Vec<ConstantRecord>,
}

impl AlgebraDocument {
    pub fn from_algebra(a: &Algebra) -> Self {
        let constants = a
            .constants()
            .map(|((i, j, k), v)| ConstantRecord {
                i,
                j,
                k,
                value: scalar::to_string(v),
            })
            .collect();
        AlgebraDocument {
            name: None,
            params: None,
            dim: a.dim(),
            constants,
        }
    }

    pub fn from_family(id: &FamilyId) -> Result<Self> {
        let a = id.build()?;
        let mut doc = Self::from_algebra(&a);
        doc.name = Some(id.family().tag().to_string());
        let params = id.params_json();
        if !params.is_empty() {
            doc.params = Some(params);
        }
        Ok(doc)
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let constants = self
            .constants
            .iter()
            .map(|c| Ok(((c.i, c.j, c.k), scalar::parse(&c.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.dim, constants)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Parses a document and builds its algebra in one step.
pub fn read_algebra(text: &str) -> Result<Algebra> {
    AlgebraDocument::parse(text)?.to_algebra()
}

pub fn write_algebra(a: &Algebra) -> String {
    AlgebraDocument::from_algebra(a).to_json()
}

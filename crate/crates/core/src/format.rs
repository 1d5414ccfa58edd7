//! JSON documents read and written by the CLI.
//!
//! ```text
//! matrix file:    { "ring": <spec>, "n": <int>, "rows": [[entry, ...], ...] }
//! generator file: [entry, ...]
//! ```

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::rings::{AnyElem, AnyRing};

/// Field order of the serialized document.
#[derive(Serialize)]
struct Doc<R> {
    ring: String,
    n: usize,
    rows: R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub ring: AnyRing,
    pub matrix: Matrix<AnyElem>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<Self> {
        let field = |k: &str| {
            doc.get(k)
                .ok_or_else(|| Error::Parse(format!("matrix file lacks `{k}`")))
        };
        let ring = AnyRing::parse(
            field("ring")?
                .as_str()
                .ok_or_else(|| Error::Parse("`ring` must be a string".into()))?,
        )?;
        let n = field("n")?
            .as_u64()
            .ok_or_else(|| Error::Parse("`n` must be a non-negative integer".into()))?
            as usize;
        let rows = field("rows")?
            .as_array()
            .ok_or_else(|| Error::Parse("`rows` must be an array".into()))?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?;
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for e in row {
                entries.push(ring.elem_from_json(e)?);
            }
        }
        Ok(Self {
            matrix: Matrix::from_vec(n, entries)?,
            ring,
        })
    }

    pub fn serialize(&self) -> String {
        let rows: Vec<Vec<Value>> = self
            .matrix
            .rows()
            .map(|row| row.iter().map(|e| self.ring.elem_to_json(e)).collect())
            .collect();
        serde_json::to_string(&Doc {
            ring: self.ring.descriptor(),
            n: self.matrix.n(),
            rows,
        })
        .expect("plain JSON")
    }

    /// Re-reads the matrix as a matrix over `target`, embedding entries.
    pub fn over(&self, target: &AnyRing) -> Result<Matrix<AnyElem>> {
        if *target == self.ring {
            return Ok(self.matrix.clone());
        }
        let entries = self
            .matrix
            .entries()
            .iter()
            .map(|x| target.embed_from(&self.ring, x))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_vec(self.matrix.n(), entries)
    }
}

pub fn parse_gens(ring: &AnyRing, text: &str) -> Result<Vec<AnyElem>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = doc
        .as_array()
        .ok_or_else(|| Error::Parse("generator file must be a JSON list".into()))?;
    list.iter().map(|e| ring.elem_from_json(e)).collect()
}

pub fn gens_to_json(ring: &AnyRing, gens: &[AnyElem]) -> Value {
    Value::Array(gens.iter().map(|g| ring.elem_to_json(g)).collect())
}

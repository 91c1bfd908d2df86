//! JSON input documents.
//!
//! ```json
//! {"field": {"char": 32003}, "variables": ["x", "y"],
//!  "matrix": [["y", "0"], ["-x", "y"], ["0", "-x"]], "seed": 1}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::modpres::{rank_of_module, PresentationMatrix};
use crate::polycore::{parse_poly, PolyRing};
use crate::reescore::{ReductionSpec, ReesData};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDoc {
    #[serde(rename = "char")]
    pub characteristic: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldDoc,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Linear T-forms spanning a reduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<String>>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl InputDocument {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Short hash of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_string(self).expect("serializable");
        hex::encode(&Sha256::digest(canonical.as_bytes())[..8])
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        let field = FieldSpec::new(self.field.characteristic)?;
        for v in &self.variables {
            if !valid_name(v) {
                return Err(Error::Parse(format!("invalid variable name {v:?}")));
            }
            if v.starts_with("T_") {
                return Err(Error::Parse(format!(
                    "variable {v:?} collides with the reserved T_i names"
                )));
            }
        }
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        Ok(Arc::new(PolyRing::with_y_vars(field, &names)?))
    }

    /// Parse the matrix and check the declared rank, if any.
    pub fn presentation(&self) -> Result<PresentationMatrix> {
        let ring = self.ring()?;
        let width = self.matrix.first().map_or(0, Vec::len);
        if self.matrix.iter().any(|r| r.len() != width) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(&ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let phi = PresentationMatrix::new(ring, PolyMatrix::from_rows(rows))?;
        if let Some(declared) = self.rank {
            let computed = rank_of_module(&phi).rank_e;
            if declared != computed {
                return Err(Error::Precondition(format!(
                    "declared rank {declared} but the module has rank {computed}"
                )));
            }
        }
        Ok(phi)
    }

    pub fn reduction_spec(&self, rd: &ReesData) -> Result<Option<ReductionSpec>> {
        let Some(forms) = &self.reduction else {
            return Ok(None);
        };
        let polys = forms
            .iter()
            .map(|s| parse_poly(&rd.ring, s))
            .collect::<Result<Vec<_>>>()?;
        ReductionSpec::new(&rd.ring, polys).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"field":{"char":32003},"variables":["x","y"],"matrix":[["y"],["-x"]],"seed":3}"#;
        let doc = InputDocument::from_json(src).unwrap();
        assert_eq!(doc.seed, Some(3));
        let again = InputDocument::from_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(doc.presentation().unwrap().n(), 2);
    }

    #[test]
    fn rejects_reserved_names_and_bad_rank() {
        let src = r#"{"field":{"char":32003},"variables":["x","T_1"],"matrix":[["x"]]}"#;
        assert!(matches!(
            InputDocument::from_json(src).unwrap().presentation(),
            Err(Error::Parse(_))
        ));
        let src = r#"{"field":{"char":32003},"variables":["x","y"],"matrix":[["y"],["-x"]],"rank":2}"#;
        assert!(matches!(
            InputDocument::from_json(src).unwrap().presentation(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unknown_fields_are_errors() {
        let src = r#"{"field":{"char":32003},"variables":["x"],"matrix":[["x"]],"colour":1}"#;
        assert!(InputDocument::from_json(src).is_err());
    }
}

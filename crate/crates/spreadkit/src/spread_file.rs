//! The JSON spread-file format: a self-describing container for a
//! constant-dimension subspace code, with the field representation
//! embedded so externally produced codes can be audited.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codes::SubspaceCode;
use crate::field::FieldCtx;
use crate::subspace::Subspace;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Serialized field: GF(p^e) with its monic modulus polynomial, constant
/// term first.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct FieldDescription {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
}

#[derive(Clone, Default, Serialize, Deserialize, Debug)]
pub struct SpreadFileMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_min_subspace_distance: Option<u32>,
}

/// On-disk representation of a subspace code. Codewords are k x n matrices
/// in the packed element encoding and must be reduced-row-echelon bases;
/// the strict loader rejects non-canonical matrices, the lenient one
/// re-canonicalizes them.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct SpreadFile {
    pub format_version: u32,
    pub field: FieldDescription,
    pub n: u32,
    pub k: u32,
    pub codewords: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<SpreadFileMetadata>,
}

impl SpreadFile {
    pub fn from_code(code: &SubspaceCode, method: Option<&str>) -> Self {
        let ctx = code.ctx();
        SpreadFile {
            format_version: FORMAT_VERSION,
            field: FieldDescription {
                p: ctx.p(),
                e: ctx.e(),
                modulus: ctx.modulus_coeffs(),
            },
            n: code.ambient_dim() as u32,
            k: code.dim() as u32,
            codewords: code
                .codewords()
                .iter()
                .map(|w| w.basis().row_vecs())
                .collect(),
            metadata: Some(SpreadFileMetadata {
                method: method.map(str::to_owned),
                declared_min_subspace_distance: code.declared_min_subspace_distance(),
            }),
        }
    }

    /// Reconstructs the in-memory code. In strict mode every stored matrix
    /// must already equal its canonical reduced form.
    pub fn to_code(&self, strict: bool) -> Result<SubspaceCode> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format version {}, expected {FORMAT_VERSION}",
                self.format_version
            )));
        }
        let ctx = FieldCtx::with_modulus(self.field.p, self.field.e, &self.field.modulus)?;
        if self.k < 1 || self.n < self.k {
            return Err(Error::Format(format!("invalid dimensions k={}, n={}", self.k, self.n)));
        }
        let mut codewords = Vec::with_capacity(self.codewords.len());
        for (idx, rows) in self.codewords.iter().enumerate() {
            if rows.len() != self.k as usize {
                return Err(Error::Format(format!(
                    "codeword {idx} has {} rows, expected {}",
                    rows.len(),
                    self.k
                )));
            }
            let subspace = Subspace::from_generators(ctx, self.n as usize, rows)
                .map_err(|e| Error::Format(format!("codeword {idx}: {e}")))?;
            if subspace.dim() != self.k as usize {
                return Err(Error::Format(format!(
                    "codeword {idx} has rank {}, expected {}",
                    subspace.dim(),
                    self.k
                )));
            }
            if strict && subspace.basis().row_vecs() != *rows {
                return Err(Error::Format(format!(
                    "codeword {idx} is not in canonical reduced row echelon form"
                )));
            }
            codewords.push(subspace);
        }
        let declared = self
            .metadata
            .as_ref()
            .and_then(|m| m.declared_min_subspace_distance);
        SubspaceCode::new(ctx, self.n as usize, self.k as usize, codewords, declared)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::multi_component;

    #[test]
    fn round_trip() {
        let code = multi_component(2, 7, 3).unwrap();
        let file = SpreadFile::from_code(&code, Some("multi-component"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.json");
        file.write(&path).unwrap();
        let loaded = SpreadFile::read(&path).unwrap();
        assert_eq!(loaded.to_code(true).unwrap(), code);
        assert_eq!(loaded.to_code(false).unwrap(), code);
    }

    #[test]
    fn strict_rejects_non_canonical() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let file = SpreadFile {
            format_version: FORMAT_VERSION,
            field: FieldDescription { p: 2, e: 1, modulus: ctx.modulus_coeffs() },
            n: 4,
            k: 2,
            // Spans e1, e2 but written with a redundant leading 1 in row 2.
            codewords: vec![vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0]]],
            metadata: None,
        };
        assert!(matches!(file.to_code(true), Err(Error::Format(_))));
        let code = file.to_code(false).unwrap();
        assert_eq!(code.codewords()[0].basis().row_vecs(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn rank_deficient_codeword_rejected() {
        let file = SpreadFile {
            format_version: FORMAT_VERSION,
            field: FieldDescription { p: 2, e: 1, modulus: vec![0, 1] },
            n: 4,
            k: 2,
            codewords: vec![vec![vec![1, 1, 0, 0], vec![1, 1, 0, 0]]],
            metadata: None,
        };
        assert!(matches!(file.to_code(false), Err(Error::Format(_))));
    }

    #[test]
    fn version_checked() {
        let file = SpreadFile {
            format_version: 99,
            field: FieldDescription { p: 2, e: 1, modulus: vec![0, 1] },
            n: 4,
            k: 2,
            codewords: vec![],
            metadata: None,
        };
        assert!(matches!(file.to_code(false), Err(Error::Format(_))));
    }
}

//! The on-disk JSON document for function tables.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "group": {"kind": "cyclic", "n": 7},
//!   "labels": [0, 1, 1, 2, 1, 2, 2],
//!   "family": {"family": "coset", "m": 3},
//!   "params": {"n": 7, "ell_bar": 3, "lambda": 2, "tau": [1, 3, 3]}
//! }
//! ```
//!
//! `group.kind` is `"cyclic"` (with `n`) or `"product"` (with the field
//! orders `q`). The `params` block is only present once the table has been
//! verified. Parse and serialize round-trip exactly; artifacts written by
//! this crate always carry dense labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{densify, Family, ZdbFunction, ZdbParams};
use crate::group::GroupSpec;

pub const FORMAT_VERSION: u32 = 1;

/// Group description as serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDoc {
    Cyclic { n: u64 },
    Product { q: Vec<u64> },
}

/// A function table as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdbArtifact {
    pub format_version: u32,
    pub group: GroupDoc,
    pub labels: Vec<u64>,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ZdbParams>,
}

impl ZdbArtifact {
    pub fn from_function(f: &ZdbFunction, params: Option<&ZdbParams>) -> Self {
        let group = match f.group().field_specs() {
            None => GroupDoc::Cyclic {
                n: f.group().order(),
            },
            Some(fields) => GroupDoc::Product {
                q: fields.iter().map(|fs| fs.order()).collect(),
            },
        };
        ZdbArtifact {
            format_version: FORMAT_VERSION,
            group,
            labels: f.labels().iter().map(|&l| l as u64).collect(),
            family: f.family().clone(),
            params: params.cloned(),
        }
    }

    /// Rebuild the function table. The group is reconstructed from its
    /// description (field models are deterministic, so a product group
    /// comes back identical), and labels are densified by first occurrence,
    /// which is the identity on artifacts this crate wrote.
    pub fn to_function(&self) -> Result<ZdbFunction> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let group = match &self.group {
            GroupDoc::Cyclic { n } => GroupSpec::cyclic(*n)?,
            // Policy gates construction, not re-verification of data.
            GroupDoc::Product { q } => GroupSpec::product_with_policy(q, true)?,
        };
        if self.labels.len() as u64 != group.order() {
            return Err(Error::Malformed(format!(
                "{} labels for a group of order {}",
                self.labels.len(),
                group.order()
            )));
        }
        Ok(ZdbFunction::from_dense_labels(
            group,
            densify(&self.labels),
            self.family.clone(),
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

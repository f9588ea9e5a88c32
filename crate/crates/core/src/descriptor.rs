//! JSON manifold descriptors for user-supplied manifolds.
//!
//! ```json
//! {"b1": 2, "form": [[1]], "cup1": {"1,2": [1]}, "euler": -1, "c1": [1], "label": "demo"}
//! ```
//!
//! `cup1` keys are `"i,j"` with `1 ≤ i < j ≤ b1` and map to the class of
//! `α_i ⌣ α_j` in the `H²` basis of `form`. `c1` may be `null`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atlas::{CupTensor, ManifoldData, Summand};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDescriptor {
    pub b1: usize,
    pub form: Vec<Vec<i64>>,
    #[serde(default)]
    pub cup1: BTreeMap<String, Vec<i64>>,
    pub euler: i64,
    #[serde(default)]
    pub c1: Option<Vec<i64>>,
    #[serde(default = "default_label")]
    pub label: String,
}

fn default_label() -> String {
    "custom".to_string()
}

fn parse_key(key: &str, b1: usize) -> Result<(usize, usize)> {
    let bad = || Error::Validation(format!("cup1 key `{key}` must be \"i,j\" with 1 <= i < j <= b1 = {b1}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i == 0 || i >= j || j > b1 {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

impl ManifoldDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("malformed descriptor: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// Validates the descriptor and builds a manifold tagged `CUSTOM(label)`.
    pub fn to_manifold(&self) -> Result<ManifoldData> {
        let h2 = Lattice::from_dense(&self.form)?;
        let rank = h2.rank();
        let mut cup1 = CupTensor::new();
        for (key, class) in &self.cup1 {
            let (i, j) = parse_key(key, self.b1)?;
            if class.len() != rank {
                return Err(Error::Validation(format!(
                    "cup1 entry `{key}` has length {} but rank(H^2) = {rank}",
                    class.len()
                )));
            }
            cup1.insert(i, j, class.iter().copied().enumerate().collect());
        }
        ManifoldData::new(
            self.b1,
            h2,
            cup1,
            self.euler,
            vec![Summand::Custom(self.label.clone())],
            self.c1.clone().map(LatticeVector::new),
        )
    }

    /// Descriptor reproducing `m` (provenance is collapsed into `label`).
    pub fn from_manifold(m: &ManifoldData, label: &str) -> Self {
        let rank = m.h2().rank();
        let cup1 = m
            .cup1()
            .iter()
            .map(|(i, j, _)| (format!("{},{}", i + 1, j + 1), m.cup1().class(i, j, rank).into_coords()))
            .collect();
        ManifoldDescriptor {
            b1: m.b1(),
            form: m.h2().to_dense(),
            cup1,
            euler: m.euler(),
            c1: m.canonical_c1().map(|c| c.coords().to_vec()),
            label: label.to_string(),
        }
    }
}

/// Builds a validated manifold from a descriptor.
pub fn custom(descriptor: &ManifoldDescriptor) -> Result<ManifoldData> {
    descriptor.to_manifold()
}

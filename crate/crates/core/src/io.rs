//! On-disk formats: group files and run configuration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm_group::{GroupError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed group file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `{"degree": d, "generators": [[images...], ...], "name": optional}` with
/// 0-based images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup, name: Option<&str>) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::images).collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Compact JSON followed by a newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(self).expect("group file serializes");
        s.push('\n');
        s
    }

    pub fn to_group(&self) -> Result<PermGroup, IoError> {
        self.to_group_bounded(crate::perm_group::DEFAULT_ORDER_BOUND)
    }

    pub fn to_group_bounded(&self, order_bound: usize) -> Result<PermGroup, IoError> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| Permutation::from_images(imgs.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::from_generators_bounded(
            self.degree,
            gens,
            order_bound,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Text,
    Json,
}

/// Settings shared by every command; embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub order_bound: usize,
    pub conductor_bound: u64,
    pub format: ReportFormat,
    /// 0 means the number of available cores.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: crate::char_table::DEFAULT_SEED,
            order_bound: crate::perm_group::DEFAULT_ORDER_BOUND,
            conductor_bound: crate::cyclotomic::DEFAULT_CONDUCTOR_BOUND,
            format: ReportFormat::Json,
            threads: 0,
        }
    }
}

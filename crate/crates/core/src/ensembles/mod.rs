//! Monte Carlo samplers for models whose fluctuations converge to F_β.
//!
//! Every sampler is a pure function of its parameters and a 64-bit seed.
//! Sample `i` draws from its own counter-based stream ([`rng::stream_rng`]),
//! so the ordered output does not depend on the rayon pool size.

mod eigen;
mod gaussian;
mod growth;
mod lis;
mod queue;
pub mod rng;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use eigen::{tridiagonalize_hermitian, tridiagonalize_symmetric, SymTridiagonal};
pub use gaussian::{
    center_scale, gaussian_lambda_max, sample_gaussian_ensemble, sample_gaussian_ensemble_with,
    sample_wigner, EigenMethod, EntryLaw, ScalingSpec,
};
pub use growth::{
    growth_profile, sample_growth_env, simulate_growth, GrowthOptions, GrowthSample, PLaw,
    SweepOrder, UNREACHED,
};
pub use lis::{lis_length, random_permutation, sample_lis, sample_lis_with};
pub use queue::{
    estimate_growth_constants, last_passage_time, sample_queue, GrowthConstants, QueueScaling,
    Service,
};

/// Model tag of a [`SampleSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Goe,
    Gue,
    Gse,
    Wigner,
    Lis,
    Queue,
    Growth,
}

impl Model {
    pub const ALL: [Model; 7] = [
        Model::Goe,
        Model::Gue,
        Model::Gse,
        Model::Wigner,
        Model::Lis,
        Model::Queue,
        Model::Growth,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Goe => "goe",
            Model::Gue => "gue",
            Model::Gse => "gse",
            Model::Wigner => "wigner",
            Model::Lis => "lis",
            Model::Queue => "queue",
            Model::Growth => "growth",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Model {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown model '{s}'")))
    }
}

/// Realisations of one statistic together with everything needed to
/// reproduce them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub model: Model,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    #[serde(default = "crate_version")]
    pub version: String,
    /// Scaled statistics.
    pub values: Vec<f64>,
    /// Unscaled statistics, when a scaling was applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<Vec<f64>>,
}

fn crate_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

impl SampleSet {
    pub fn new(model: Model, seed: u64, values: Vec<f64>) -> Self {
        Self { model, params: BTreeMap::new(), seed, version: crate_version(), values, raw: None }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Unscaled values when present, otherwise the values themselves.
    pub fn raw_or_values(&self) -> &[f64] {
        self.raw.as_deref().unwrap_or(&self.values)
    }
}

fn require(cond: bool, msg: &str) -> crate::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::Error::InvalidArgument(msg.to_string()))
    }
}

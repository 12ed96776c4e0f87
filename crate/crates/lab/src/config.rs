//! Experiment configuration files.
//!
//! Configs are JSON objects; unknown keys are rejected and syntax errors
//! report the line and column.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use surfacelab_core::codes::Topology;
use surfacelab_core::noise::Preset;

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Planar,
    Toric,
}

impl LatticeKind {
    pub fn topology(self, size: usize) -> Topology {
        match self {
            LatticeKind::Planar => Topology::Planar { d: size },
            LatticeKind::Toric => Topology::Toric { l: size },
        }
    }
}

/// Planted curves `p_L = amplitude (p / p_star)^((d + 1) / 2)` used in
/// place of simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Synthetic {
    pub p_star: f64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

fn default_amplitude() -> f64 {
    0.1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_lattice")]
    pub lattice: LatticeKind,
    pub preset: Preset,
    /// Physical error rates, ascending.
    pub p: Vec<f64>,
    /// Planar distances or toric side lengths.
    pub distances: Vec<usize>,
    /// Syndrome rounds per shot; defaults to the distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    pub shots: u64,
    pub seed: u64,
    /// Worker threads; defaults to all available.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_json: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<Synthetic>,
}

fn default_lattice() -> LatticeKind {
    LatticeKind::Planar
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::Config(m));
        if self.shots == 0 {
            return bad("shots must be at least 1".into());
        }
        if self.p.is_empty() || self.distances.is_empty() {
            return bad("p and distances must be non-empty".into());
        }
        if !self.p.iter().all(|p| (0.0..=1.0).contains(p)) {
            return bad("every p must lie in [0, 1]".into());
        }
        if !self.p.windows(2).all(|w| w[0] < w[1]) {
            return bad("p grid must be strictly increasing".into());
        }
        if self.rounds == Some(0) {
            return bad("rounds must be at least 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        for &d in &self.distances {
            surfacelab_core::codes::surface_lattice(self.lattice.topology(d))?;
        }
        if let Some(s) = &self.synthetic {
            if !(s.p_star > 0.0 && s.amplitude > 0.0) {
                return bad("synthetic p_star and amplitude must be positive".into());
            }
        }
        Ok(())
    }

    pub fn rounds_for(&self, d: usize) -> usize {
        self.rounds.unwrap_or(d)
    }

    /// SHA-256 of the canonical serialisation, excluding output paths and
    /// the thread budget, which do not affect results.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.threads = None;
        c.output_csv = None;
        c.output_json = None;
        c.report = None;
        let text = serde_json::to_string(&c).expect("config serialises");
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| LabError::ConfigSyntax {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

//! Result tables and their CSV and JSON forms.
//!
//! CSV files start with `#` comment lines carrying the provenance header:
//!
//! ```text
//! # surfacelab-table v1
//! # version: 0.1.0
//! # seed: 7
//! # config_sha256: 3f1c...
//! # created_unix: 1760000000
//! preset,d,p,rounds,shots,failures,p_l,ci_lo,ci_hi
//! ```
//!
//! Only `created_unix` differs between runs of the same config.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};

pub const TABLE_FORMAT: &str = "surfacelab-table";
pub const TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub format: String,
    pub format_version: u32,
    pub version: String,
    pub seed: u64,
    pub config_sha256: String,
    pub created_unix: u64,
}

impl Provenance {
    pub fn new(cfg: &ExperimentConfig) -> Self {
        let created_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Provenance {
            format: TABLE_FORMAT.into(),
            format_version: TABLE_VERSION,
            version: env!("CARGO_PKG_VERSION").into(),
            seed: cfg.seed,
            config_sha256: cfg.hash(),
            created_unix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub preset: String,
    pub d: usize,
    pub p: f64,
    pub rounds: usize,
    pub shots: u64,
    pub failures: u64,
    pub p_l: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultTable {
    pub provenance: Provenance,
    pub rows: Vec<Row>,
}

impl ResultTable {
    /// Rows grouped by distance, each sorted by `p`.
    pub fn by_distance(&self) -> BTreeMap<usize, Vec<&Row>> {
        let mut m: BTreeMap<usize, Vec<&Row>> = BTreeMap::new();
        for r in &self.rows {
            m.entry(r.d).or_default().push(r);
        }
        for rows in m.values_mut() {
            rows.sort_by(|a, b| a.p.total_cmp(&b.p));
        }
        m
    }

    pub fn to_csv(&self) -> String {
        let p = &self.provenance;
        let mut out = format!(
            "# {} v{}\n# version: {}\n# seed: {}\n# config_sha256: {}\n# created_unix: {}\n",
            p.format, p.format_version, p.version, p.seed, p.config_sha256, p.created_unix
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("rows serialise");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        let mut first = None;
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let body = line.trim_start_matches('#').trim();
            match body.split_once(": ") {
                Some((k, v)) => {
                    fields.insert(k.to_string(), v.to_string());
                }
                None => first = Some(body.to_string()),
            }
        }
        let bad = |m: &str| LabError::Config(format!("table header: {m}"));
        let (format, version) = first
            .as_deref()
            .and_then(|f| f.split_once(" v"))
            .ok_or_else(|| bad("missing format line"))?;
        let get = |k: &str| fields.get(k).cloned().ok_or_else(|| bad(k));
        let num = |k: &str| get(k)?.parse::<u64>().map_err(|_| bad(k));
        let provenance = Provenance {
            format: format.to_string(),
            format_version: version.parse().map_err(|_| bad("format version"))?,
            version: get("version")?,
            seed: num("seed")?,
            config_sha256: get("config_sha256")?,
            created_unix: num("created_unix")?,
        };
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let rows = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<Row>, _>>()
            .map_err(|e| LabError::Config(format!("table rows: {e}")))?;
        Ok(ResultTable { provenance, rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LabError::Config(format!("table json: {e}")))
    }

    /// Reads a `.csv` or `.json` table.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        if path.extension().is_some_and(|e| e == "csv") {
            Self::from_csv(&text)
        } else {
            Self::from_json(&text)
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| LabError::io(path, e))
}

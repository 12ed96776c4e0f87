//! Parallel memory experiments.
//!
//! Shots are cut into fixed chunks independent of the thread count, and
//! each shot draws from its own stream, so tables do not depend on how
//! many workers ran them.

use rayon::prelude::*;
use surfacelab_core::codes::{surface_lattice, Schedule};
use surfacelab_core::memory::MemoryExperiment;
use surfacelab_core::noise::NoiseModel;

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::stats::wilson_interval;
use crate::table::{Provenance, ResultTable, Row};

pub const CHUNK: u64 = 1000;
pub const CONFIDENCE: f64 = 0.95;

/// Seed for one `(d, p)` point, mixed from the master seed.
pub fn point_seed(master: u64, d: usize, p: f64) -> u64 {
    let mut x = master ^ (d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ p.to_bits().rotate_left(17);
    // splitmix64 finaliser
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn make_row(cfg: &ExperimentConfig, d: usize, p: f64, shots: u64, failures: u64) -> Row {
    let (ci_lo, ci_hi) = wilson_interval(failures, shots, CONFIDENCE);
    Row {
        preset: cfg.preset.name().to_string(),
        d,
        p,
        rounds: cfg.rounds_for(d),
        shots,
        failures,
        p_l: failures as f64 / shots as f64,
        ci_lo,
        ci_hi,
    }
}

/// Runs every `(d, p)` point of `cfg`, or fills in the planted curves
/// when `cfg.synthetic` is set.
pub fn run_memory_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let rows = match &cfg.synthetic {
        Some(s) => synthetic_rows(cfg, s.p_star, s.amplitude),
        None => simulate_rows(cfg)?,
    };
    Ok(ResultTable { provenance: Provenance::new(cfg), rows })
}

fn synthetic_rows(cfg: &ExperimentConfig, p_star: f64, amplitude: f64) -> Vec<Row> {
    let mut rows = Vec::new();
    for &d in &cfg.distances {
        for &p in &cfg.p {
            let pl = (amplitude * (p / p_star).powf((d as f64 + 1.0) / 2.0)).min(0.5);
            let failures = (pl * cfg.shots as f64).round() as u64;
            rows.push(make_row(cfg, d, p, cfg.shots, failures));
        }
    }
    rows
}

fn simulate_rows(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let mut points = Vec::new();
    for &d in &cfg.distances {
        let lat = surface_lattice(cfg.lattice.topology(d))?;
        for &p in &cfg.p {
            let model = NoiseModel::new(cfg.preset, p)?;
            let exp = MemoryExperiment::new(&lat, cfg.rounds_for(d), Schedule::default(), &model)?;
            points.push((d, p, exp));
        }
    }
    let chunks = cfg.shots.div_ceil(CHUNK);
    let work: Vec<(usize, u64)> = (0..points.len()).flat_map(|i| (0..chunks).map(move |c| (i, c))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Config(format!("thread pool: {e}")))?;
    let counts: Vec<u64> = pool.install(|| {
        work.par_iter()
            .map(|&(i, c)| {
                let (d, p, exp) = &points[i];
                let start = c * CHUNK;
                let count = CHUNK.min(cfg.shots - start);
                exp.run_range(point_seed(cfg.seed, *d, *p), start, count)
            })
            .collect::<std::result::Result<Vec<u64>, _>>()
    })?;
    let mut failures = vec![0u64; points.len()];
    for (&(i, _), n) in work.iter().zip(counts) {
        failures[i] += n;
    }
    Ok(points.iter().zip(failures).map(|((d, p, _), f)| make_row(cfg, *d, *p, cfg.shots, f)).collect())
}

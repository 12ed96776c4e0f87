//! Threshold estimates from crossings of logical failure curves.
//!
//! For each pair of adjacent distances the difference of `ln p_L` is
//! interpolated linearly in `ln p` across the first grid interval where
//! the larger code goes from winning to losing.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::table::ResultTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCrossing {
    pub d_small: usize,
    pub d_large: usize,
    pub crossing: f64,
    /// Grid points on either side of the crossing.
    pub bracket: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub estimate: f64,
    /// Population standard deviation of the pair crossings.
    pub spread: f64,
    pub pairs: Vec<PairCrossing>,
}

/// Crossing of two curves sampled on the same `p` grid. Points where
/// either curve is 0 or 1 carry no log information and are skipped.
pub fn pair_crossing(p: &[f64], small: &[f64], large: &[f64]) -> Option<(f64, [f64; 2])> {
    let pts: Vec<(f64, f64, f64)> = p
        .iter()
        .zip(small.iter().zip(large))
        .filter(|(_, (&a, &b))| a > 0.0 && b > 0.0 && a < 1.0 && b < 1.0)
        .map(|(&p, (&a, &b))| (p, p.ln(), b.ln() - a.ln()))
        .collect();
    pts.windows(2).find(|w| w[0].2 < 0.0 && w[1].2 > 0.0).map(|w| {
        let t = -w[0].2 / (w[1].2 - w[0].2);
        ((w[0].1 + t * (w[1].1 - w[0].1)).exp(), [w[0].0, w[1].0])
    })
}

pub fn estimate_threshold(table: &ResultTable) -> Result<ThresholdReport> {
    let groups = table.by_distance();
    if groups.len() < 2 {
        return Err(LabError::BracketNotFound("need at least two distances".into()));
    }
    let mut pairs = Vec::new();
    let ds: Vec<usize> = groups.keys().copied().collect();
    for w in ds.windows(2) {
        let (a, b) = (&groups[&w[0]], &groups[&w[1]]);
        let shared: Vec<f64> = a.iter().map(|r| r.p).filter(|p| b.iter().any(|r| r.p == *p)).collect();
        if shared.len() < 3 {
            return Err(LabError::BracketNotFound(format!("d = {} and {} share fewer than 3 points", w[0], w[1])));
        }
        let at = |rows: &[&crate::table::Row], p: f64| rows.iter().find(|r| r.p == p).map_or(0.0, |r| r.p_l);
        let small: Vec<f64> = shared.iter().map(|&p| at(a, p)).collect();
        let large: Vec<f64> = shared.iter().map(|&p| at(b, p)).collect();
        let (crossing, bracket) = pair_crossing(&shared, &small, &large)
            .ok_or_else(|| LabError::BracketNotFound(format!("no crossing between d = {} and {}", w[0], w[1])))?;
        pairs.push(PairCrossing { d_small: w[0], d_large: w[1], crossing, bracket });
    }
    let n = pairs.len() as f64;
    let estimate = pairs.iter().map(|c| c.crossing).sum::<f64>() / n;
    let spread = (pairs.iter().map(|c| (c.crossing - estimate).powi(2)).sum::<f64>() / n).sqrt();
    Ok(ThresholdReport { estimate, spread, pairs })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

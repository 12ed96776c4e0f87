//! Failure budgets for code families.
//!
//! A gadget that corrects `x` errors fails with probability `C[x] p^(x+1)`,
//! and an algorithm of `T` steps on `N` qubits fails with probability
//! `T N C[x] p^(x+1)`. Concatenated codes have `C[x] = c^x` and a threshold
//! `p_th = 1/c`; families with `C[x] = x^(cx)` have no threshold.

use alloc::vec::Vec;

/// `C` for the Steane code at `x = 1`.
pub const STEANE_C: f64 = 1e4;

/// Published threshold estimates kept for documentation; none is
/// reproduced by simulation here.
pub const REFERENCE_THRESHOLDS: &[(&str, f64)] = &[
    ("early existence proofs, upper end", 1e-4),
    ("early existence proofs, lower end", 1e-5),
    ("post-selected concatenated codes", 0.03),
    ("upper bound on any threshold", 0.47),
    ("one-dimensional layouts, first estimate", 1e-7),
    ("one-dimensional layouts, later estimate", 1e-5),
    ("two-dimensional Steane layout", 1e-5),
    ("surface code transversal computation", 1.7e-4),
    ("surface code braided computation", 0.0075),
];

/// How `C[x]` grows with `x`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum BudgetModel {
    /// `C[x] = c^x`.
    Concatenated { c: f64 },
    /// `C[x] = x^(c x)`, with `C[0] = 1`.
    Polynomial { c: f64 },
    /// Explicit values; `x` beyond the table is unsupported.
    Table { values: Vec<f64> },
}

impl BudgetModel {
    /// `ln C[x]`, or `None` when the table has no entry.
    pub fn ln_c(&self, x: u32) -> Option<f64> {
        match self {
            BudgetModel::Concatenated { c } => Some(x as f64 * libm::log(*c)),
            BudgetModel::Polynomial { c } => {
                Some(if x == 0 { 0.0 } else { c * x as f64 * libm::log(x as f64) })
            }
            BudgetModel::Table { values } => values.get(x as usize).map(|v| libm::log(*v)),
        }
    }

    /// `C[x]`, possibly infinite.
    pub fn c_of(&self, x: u32) -> Option<f64> {
        match self {
            BudgetModel::Concatenated { c } => Some(libm::pow(*c, x as f64)),
            BudgetModel::Polynomial { c } => {
                Some(if x == 0 { 1.0 } else { libm::pow(x as f64, c * x as f64) })
            }
            BudgetModel::Table { values } => values.get(x as usize).copied(),
        }
    }

    /// `1/c` for the concatenated family.
    pub fn threshold(&self) -> Option<f64> {
        match self {
            BudgetModel::Concatenated { c } => Some(1.0 / c),
            _ => None,
        }
    }

    /// Whether every `c` or table entry is positive and finite.
    pub fn is_valid(&self) -> bool {
        match self {
            BudgetModel::Concatenated { c } | BudgetModel::Polynomial { c } => c.is_finite() && *c > 0.0,
            BudgetModel::Table { values } => !values.is_empty() && values.iter().all(|v| v.is_finite() && *v > 0.0),
        }
    }
}

/// Unclipped `C[x] p^(x+1)`.
///
/// The power is taken as `1 / (1/p)^(x+1)` so that decimal inputs such as
/// `p = 1e-3` give correctly rounded results; the log domain takes over
/// when either factor overflows.
fn raw_failure(model: &BudgetModel, x: u32, p: f64) -> Option<f64> {
    let c = model.c_of(x)?;
    if p <= 0.0 {
        return Some(0.0);
    }
    let inv = libm::pow(1.0 / p, (x + 1) as f64);
    if c.is_finite() && inv.is_finite() {
        Some(c / inv)
    } else {
        Some(libm::exp(model.ln_c(x)? + (x + 1) as f64 * libm::log(p)))
    }
}

/// `C[x] p^(x+1)` clipped to `[0, 1]`; `None` if `C[x]` is undefined.
pub fn gadget_failure(model: &BudgetModel, x: u32, p: f64) -> Option<f64> {
    raw_failure(model, x, p).map(|v| v.clamp(0.0, 1.0))
}

/// `min(1, T N C[x] p^(x+1))`.
pub fn algorithm_failure(model: &BudgetModel, t: f64, n: f64, x: u32, p: f64) -> Option<f64> {
    raw_failure(model, x, p).map(|v| (t * n * v).min(1.0))
}

/// Uncorrected error rate at which `T N p = 1`.
pub fn baseline_rate(t: f64, n: f64) -> f64 {
    1.0 / (t * n)
}

/// Largest `x` searched by [`required_distance`].
pub const X_MAX: u32 = 200;

/// Smallest `x <= X_MAX` with `algorithm_failure <= eps`.
pub fn required_distance(model: &BudgetModel, t: f64, n: f64, p: f64, eps: f64) -> Option<u32> {
    (0..=X_MAX).find(|&x| algorithm_failure(model, t, n, x, p).is_some_and(|f| f <= eps))
}

/// Minimum of `algorithm_failure` over `x <= x_max`, with its argmin.
pub fn min_failure(model: &BudgetModel, t: f64, n: f64, p: f64, x_max: u32) -> Option<(u32, f64)> {
    (0..=x_max)
        .filter_map(|x| algorithm_failure(model, t, n, x, p).map(|f| (x, f)))
        .fold(None, |best: Option<(u32, f64)>, cur| match best {
            Some(b) if b.1 <= cur.1 => Some(b),
            _ => Some(cur),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steane_gadget_is_one_percent() {
        let m = BudgetModel::Concatenated { c: STEANE_C };
        assert_eq!(gadget_failure(&m, 1, 1e-3), Some(1e-2));
        assert_eq!(m.threshold(), Some(1e-4));
        assert_eq!(gadget_failure(&m, 3, 0.0), Some(0.0));
    }

    #[test]
    fn zero_x_is_the_uncorrected_baseline() {
        for m in [BudgetModel::Concatenated { c: 50.0 }, BudgetModel::Polynomial { c: 2.0 }] {
            assert_eq!(algorithm_failure(&m, 1e3, 1e2, 0, 1e-7), Some(1e-2));
        }
        assert_eq!(baseline_rate(1e12, 1e3), 1e-15);
    }

    #[test]
    fn concatenated_below_threshold_vanishes() {
        let m = BudgetModel::Concatenated { c: 100.0 };
        let f: Vec<f64> = (0..40).map(|x| algorithm_failure(&m, 1e6, 1e6, x, 1e-3).unwrap()).collect();
        assert!(f.windows(2).all(|w| w[1] <= w[0]));
        assert!(f[39] < 1e-20);
        assert_eq!(required_distance(&m, 1e6, 1e6, 1e-2, 1e-3), None);
    }

    #[test]
    fn polynomial_family_has_a_floor() {
        let m = BudgetModel::Polynomial { c: 1.0 };
        let (_, f) = min_failure(&m, 1e6, 1e6, 0.05, 100).unwrap();
        assert!(f > 0.5);
    }

    #[test]
    fn table_family_stops_at_its_end() {
        let m = BudgetModel::Table { values: alloc::vec![1.0, 1e4] };
        assert_eq!(gadget_failure(&m, 1, 1e-3), Some(1e-2));
        assert_eq!(gadget_failure(&m, 2, 1e-3), None);
    }
}

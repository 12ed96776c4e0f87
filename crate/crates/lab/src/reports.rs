//! Braid verification and failure-budget reports.

use serde::{Deserialize, Serialize};
use surfacelab_core::budget::{
    algorithm_failure, baseline_rate, gadget_failure, required_distance, BudgetModel, X_MAX,
};
use surfacelab_core::defect::{braid_demo, verify_pauli_map, PauliMap};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidReport {
    pub steps: usize,
    pub rows: Vec<String>,
    pub expected: Vec<String>,
    pub matches: bool,
}

/// Braids a primal control hole around a dual target hole and reads off
/// the induced map. `skip` drops one step of the script first.
pub fn braid_verify(skip: Option<usize>) -> Result<BraidReport> {
    let (layout, control, target) = braid_demo()?;
    let mut script = layout.braid_cnot(control, target)?;
    if let Some(i) = skip {
        if i >= script.steps.len() {
            return Err(LabError::Config(format!("script has {} steps, cannot skip {i}", script.steps.len())));
        }
        script.steps.remove(i);
    }
    let names = ["c", "t"];
    let expected = PauliMap::cnot(2, 0, 1).rows(&names);
    let map = verify_pauli_map(&script, &layout).map_err(|e| LabError::Verification(e.to_string()))?;
    let rows = map.rows(&names);
    Ok(BraidReport { steps: script.steps.len(), matches: rows == expected, rows, expected })
}

/// Step dropped by the sabotage control: the middle of the script.
pub fn sabotage_step() -> Result<usize> {
    let (layout, control, target) = braid_demo()?;
    Ok(layout.braid_cnot(control, target)?.steps.len() / 2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetRow {
    pub x: u32,
    pub c_x: Option<f64>,
    pub gadget_failure: Option<f64>,
    pub algorithm_failure: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub model: BudgetModel,
    pub p: f64,
    pub t: f64,
    pub n: f64,
    pub epsilon: f64,
    pub p_th: Option<f64>,
    /// Error rate at which the uncorrected run fails with certainty.
    pub baseline_p: f64,
    pub rows: Vec<BudgetRow>,
    pub required_x: Option<u32>,
    /// `p >= p_th`: larger `x` never lowers the failure probability.
    pub above_threshold: bool,
    pub verdict: String,
}

pub fn budget(model: BudgetModel, p: f64, t: f64, n: f64, epsilon: f64, x_max: u32) -> Result<BudgetReport> {
    if !model.is_valid() {
        return Err(LabError::Config("budget model constants must be positive and finite".into()));
    }
    if !(0.0..=1.0).contains(&p) || t < 1.0 || n < 1.0 || !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(LabError::Config("need p in [0, 1], T >= 1, N >= 1, epsilon in (0, 1]".into()));
    }
    let rows = (0..=x_max)
        .map(|x| BudgetRow {
            x,
            c_x: model.c_of(x),
            gadget_failure: gadget_failure(&model, x, p),
            algorithm_failure: algorithm_failure(&model, t, n, x, p),
        })
        .collect();
    let p_th = model.threshold();
    let required_x = required_distance(&model, t, n, p, epsilon);
    let above_threshold = p_th.is_some_and(|th| p >= th);
    let verdict = match required_x {
        Some(x) => format!("x = {x} reaches failure <= {epsilon:e}"),
        None if above_threshold => format!("unreachable: p = {p:e} >= p_th = {:e}", p_th.unwrap_or(0.0)),
        None => format!("unreachable for x <= {X_MAX}"),
    };
    Ok(BudgetReport {
        model,
        p,
        t,
        n,
        epsilon,
        p_th,
        baseline_p: baseline_rate(t, n),
        rows,
        required_x,
        above_threshold,
        verdict,
    })
}

//! Floorplan JSON documents and SVG drawings.

use serde::{Deserialize, Serialize};
use surfacelab_core::codes::{surface_lattice, Topology};
use surfacelab_core::planner::{fanout_report, generate_tiling, FanoutReport, Floorplan};

use crate::error::{LabError, Result};

pub const FLOORPLAN_FORMAT: &str = "surfacelab-floorplan";
pub const FLOORPLAN_VERSION: u32 = 1;

/// JSON schema for [`FloorplanDoc`].
pub const FLOORPLAN_SCHEMA: &str = include_str!("../schemas/floorplan.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorplanDoc {
    pub format: String,
    pub format_version: u32,
    pub topology: Topology,
    pub conflict_radius: f64,
    /// Tile period of the frequency pattern, if one was found.
    pub period: Option<[usize; 2]>,
    pub fanout: FanoutReport,
    pub floorplan: Floorplan,
}

/// Tiling, frequency assignment and fanout report for one lattice.
pub fn plan(topology: Topology, radius: f64) -> Result<FloorplanDoc> {
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(LabError::Config(format!("conflict radius must be finite and non-negative, got {radius}")));
    }
    let lat = surface_lattice(topology)?;
    let mut plan = generate_tiling(&lat);
    plan.assign_frequencies(radius);
    let period = plan.detect_period(4).map(|(r, c)| [r, c]);
    Ok(FloorplanDoc {
        format: FLOORPLAN_FORMAT.into(),
        format_version: FLOORPLAN_VERSION,
        topology,
        conflict_radius: radius,
        period,
        fanout: fanout_report(&plan),
        floorplan: plan,
    })
}

impl FloorplanDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("floorplan serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LabError::ConfigSyntax {
            path: "<floorplan>".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Resonators as lines coloured by class, qubits as dots.
    pub fn to_svg(&self) -> String {
        const PALETTE: [&str; 10] =
            ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];
        let f = &self.floorplan;
        let scale = 40.0;
        let (w, h) = ((f.cols as f64 + 0.5) * scale, (f.rows as f64 + 0.5) * scale);
        let tx = |v: f64| (v + 0.75) * scale;
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
        );
        for r in f.resonators.iter().filter(|r| !r.wraps) {
            let colour = PALETTE[r.class.unwrap_or(0) as usize % PALETTE.len()];
            for seg in &r.segments {
                s.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"2\"/>\n",
                    tx(seg[0]) - 0.5 * scale,
                    tx(seg[1]) - 0.5 * scale,
                    tx(seg[2]) - 0.5 * scale,
                    tx(seg[3]) - 0.5 * scale
                ));
            }
        }
        for q in &f.qubits {
            s.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n",
                tx(q.x) - 0.5 * scale,
                tx(q.y) - 0.5 * scale
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}

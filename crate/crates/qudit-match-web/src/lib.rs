//! Browser bindings for the string matcher. Each export returns a JSON string;
//! the plain functions underneath are what the native tests call.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qudit_match::decompose::{self, Named};
use qudit_match::matching::{run_match_with, RunOptions};
use qudit_match::resources::{fredkin_sweep, NoiseMode};
use qudit_match::{CostReport, MatchProblem};

/// Keeps the page responsive; the largest demo instances stay well below it.
const DEMO_SUPPORT_BUDGET: usize = 1 << 18;
/// Text length limit for the page.
pub const MAX_DEMO_TEXT: usize = 24;

#[derive(Serialize)]
struct MatchView {
    k: usize,
    iterations: usize,
    top: usize,
    verified: bool,
    /// Offset probabilities in offset order.
    probabilities: Vec<f64>,
    /// Offsets found by a direct scan.
    classical: Vec<usize>,
    cost: CostReport,
}

#[derive(Serialize)]
struct SweepView {
    mode: &'static str,
    epsilon: Vec<f64>,
    proposed: Vec<f64>,
    baseline: Vec<f64>,
}

#[derive(Serialize)]
struct CircuitView {
    name: &'static str,
    dump: String,
    cost: CostReport,
    /// Op indices per time step.
    layers: Vec<Vec<usize>>,
    dims: Vec<u8>,
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// `iterations < 0` selects the default schedule.
pub fn match_json(text: &str, pattern: &str, iterations: i32) -> Result<String, String> {
    let text = text.trim();
    let pattern = pattern.trim();
    if text.len() > MAX_DEMO_TEXT {
        return Err(format!(
            "the demo takes texts of at most {MAX_DEMO_TEXT} bits"
        ));
    }
    let mut p = MatchProblem::from_bits(text, pattern).map_err(|e| e.to_string())?;
    if iterations >= 0 {
        p.iterations = Some(iterations as usize);
    }
    let r = run_match_with(
        &p,
        RunOptions {
            support_budget: DEMO_SUPPORT_BUDGET,
        },
    )
    .map_err(|e| e.to_string())?;
    let classical =
        qudit_match::classical_match(p.text(), p.pattern()).map_err(|e| e.to_string())?;
    to_json(&MatchView {
        k: p.k(),
        iterations: r.iterations,
        top: r.top,
        verified: r.verified,
        probabilities: r.offsets.values().copied().collect(),
        classical,
        cost: r.cost_report,
    })
}

pub fn sweep_json(eps_max: f64, steps: usize, mode: &str) -> Result<String, String> {
    let mode = NoiseMode::parse(mode).ok_or_else(|| format!("unknown noise mode `{mode}`"))?;
    let rows = fredkin_sweep(0.0, eps_max, steps.clamp(2, 400), mode).map_err(|e| e.to_string())?;
    to_json(&SweepView {
        mode: mode.name(),
        epsilon: rows.iter().map(|r| r.epsilon).collect(),
        proposed: rows.iter().map(|r| r.p_proposed).collect(),
        baseline: rows.iter().map(|r| r.p_baseline).collect(),
    })
}

pub fn circuit_json(name: &str, n: usize) -> Result<String, String> {
    let named = Named::parse(name).ok_or_else(|| format!("unknown circuit `{name}`"))?;
    if named == Named::Mct && !(2..=32).contains(&n) {
        return Err("the demo draws multi-controlled gates on 2 to 32 wires".into());
    }
    let spec = decompose::build(named, n).map_err(|e| e.to_string())?;
    let c = spec.circuit;
    to_json(&CircuitView {
        name: named.name(),
        dump: c.dump(),
        cost: c.cost(),
        layers: c.layers(),
        dims: c.layout().dims().to_vec(),
    })
}

#[wasm_bindgen(js_name = runMatch)]
pub fn run_match(text: &str, pattern: &str, iterations: i32) -> Result<String, JsError> {
    match_json(text, pattern, iterations).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = noiseSweep)]
pub fn noise_sweep(eps_max: f64, steps: usize, mode: &str) -> Result<String, JsError> {
    sweep_json(eps_max, steps, mode).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = showCircuit)]
pub fn show_circuit(name: &str, n: usize) -> Result<String, JsError> {
    circuit_json(name, n).map_err(|e| JsError::new(&e))
}

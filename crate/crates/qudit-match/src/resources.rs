//! Closed-form cost predictions, measured conformance and analytic gate-noise
//! success probabilities.

use serde::Serialize;

use crate::circuit::{Circuit, CostReport};
use crate::decompose::{fredkin_clifford_t, fredkin_qutrit};
use crate::error::{Error, Result};
use crate::gate::{Category, GateOp};
use crate::matching::{ceil_log2, MatchCircuit, MatchProblem};

/// Predicted per-category counts for one construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedCounts {
    pub t: f64,
    pub cnot: f64,
    pub ternary: f64,
    /// Ternary count with the oracle term read as `(M + 1) log M` instead of `(M - 1) log M`.
    pub ternary_alt: Option<f64>,
    pub quaternary: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormulaReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub log_n: u32,
    pub log_k: u32,
    pub log_m: u32,
    pub sqrt_k: f64,
    pub sqrt_n: f64,
    pub this_work: PredictedCounts,
    pub baseline: PredictedCounts,
    pub measured: Option<CostReport>,
}

fn check_sizes(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::Input(format!("need 1 <= M <= N, got N={n}, M={m}")));
    }
    Ok(())
}

/// Evaluates the cost table with `O(log x)` read as `ceil(log2 x)`.
pub fn predict_counts(n: usize, m: usize) -> Result<FormulaReport> {
    check_sizes(n, m)?;
    let k = n - m + 1;
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let log_n = ceil_log2(n as u64);
    let log_k = ceil_log2(k as u64);
    let log_m = ceil_log2(m as u64);
    let (ln, lk, lm) = (log_n as f64, log_k as f64, log_m as f64);
    let sqrt_k = kf.sqrt();
    let sqrt_n = nf.sqrt();
    let amp = 2.0 * sqrt_k;
    let ternary_core = (kf + 1.0) * lk + (3.0 * nf - 1.0) * ln;
    let this_work = PredictedCounts {
        t: 0.0,
        cnot: ((2.0 * nf - 1.0) * ln + mf) * amp,
        ternary: (ternary_core + (mf - 1.0) * lm) * amp,
        ternary_alt: Some((ternary_core + (mf + 1.0) * lm) * amp),
        quaternary: ((kf - 4.0) * lk + (mf - 4.0) * lm) * amp * amp,
    };
    let baseline = PredictedCounts {
        t: (8.0 * mf - 17.0 + 7.0 * (nf - 1.0) * ln) * 2.0 * sqrt_n,
        cnot: (7.0 * mf - 12.0 + (8.0 * nf - 9.0) * ln) * 2.0 * sqrt_n,
        ternary: 0.0,
        ternary_alt: None,
        quaternary: 0.0,
    };
    Ok(FormulaReport {
        n,
        m,
        k,
        log_n,
        log_k,
        log_m,
        sqrt_k,
        sqrt_n,
        this_work,
        baseline,
        measured: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryCheck {
    pub category: Category,
    pub measured: usize,
    pub predicted: f64,
    /// `measured <= 2 * max(predicted, 0)`.
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub formula: FormulaReport,
    pub iterations: usize,
    pub checks: Vec<CategoryCheck>,
    pub t_zero: bool,
    pub passed: bool,
}

/// Deterministic instance used for counting: alternating text, pattern = its prefix.
pub fn conformance_instance(n: usize, m: usize) -> Result<MatchProblem> {
    check_sizes(n, m)?;
    let text: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();
    MatchProblem::new(text.clone(), text[..m].to_vec())
}

/// Builds the full circuit with `ceil(sqrt K)` iterations and compares its
/// counts to the prediction. The uniform initializer, present when `K` is not
/// a power of two, is outside the comparison.
pub fn conformance(n: usize, m: usize) -> Result<ConformanceReport> {
    let mut formula = predict_counts(n, m)?;
    let problem = conformance_instance(n, m)?;
    let iterations = (problem.k() as f64).sqrt().ceil() as usize;
    let measured = MatchCircuit::build(&problem, iterations)?.circuit()?.cost();
    let p = &formula.this_work;
    let checks: Vec<CategoryCheck> = [
        (Category::Cnot, p.cnot),
        (Category::Ternary, p.ternary),
        (Category::Quaternary, p.quaternary),
    ]
    .into_iter()
    .map(|(category, predicted)| {
        let got = measured.get(category);
        CategoryCheck {
            category,
            measured: got,
            predicted,
            within: got as f64 <= 2.0 * predicted.max(0.0),
        }
    })
    .collect();
    let t_zero = measured.t == 0;
    let passed = t_zero && checks.iter().all(|c| c.within);
    formula.measured = Some(measured);
    Ok(ConformanceReport {
        formula,
        iterations,
        checks,
        t_zero,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseMode {
    /// Every gate fails with probability `epsilon`.
    Uniform,
    /// Single-qudit error `w * epsilon * d^2 / 4`, two-qudit error `epsilon * d^4 / 16`.
    DimensionPenalty,
}

impl NoiseMode {
    pub fn name(self) -> &'static str {
        match self {
            NoiseMode::Uniform => "uniform",
            NoiseMode::DimensionPenalty => "dimension-penalty",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uniform" => Some(NoiseMode::Uniform),
            "dimension-penalty" => Some(NoiseMode::DimensionPenalty),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    pub epsilon: f64,
    pub mode: NoiseMode,
    /// Weight of single-qudit gates relative to two-qudit ones in the penalty mode.
    pub single_weight: f64,
}

pub const DEFAULT_SINGLE_WEIGHT: f64 = 0.1;

impl NoiseModel {
    pub fn new(epsilon: f64, mode: NoiseMode) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::Input(format!("epsilon {epsilon} outside [0, 1)")));
        }
        Ok(Self {
            epsilon,
            mode,
            single_weight: DEFAULT_SINGLE_WEIGHT,
        })
    }

    /// Error probability of one gate acting on `arity` wires with `d` levels.
    pub fn gate_error(&self, arity: usize, d: u8) -> f64 {
        let d = d as f64;
        match self.mode {
            NoiseMode::Uniform => self.epsilon,
            NoiseMode::DimensionPenalty if arity <= 1 => {
                self.single_weight * self.epsilon * d * d / 4.0
            }
            NoiseMode::DimensionPenalty => self.epsilon * d.powi(4) / 16.0,
        }
    }
}

/// `(arity, levels)` of every gate.
pub fn gate_census(c: &Circuit) -> Vec<(usize, u8)> {
    c.ops()
        .iter()
        .map(|op| {
            let arity = op.wires().len();
            let d = match *op {
                GateOp::Swap { a, .. } => c.layout().dim(a),
                _ => op.levels(),
            };
            (arity, d)
        })
        .collect()
}

/// Chance that no gate fails: the product of `1 - e_g`.
pub fn success_probability(c: &Circuit, model: &NoiseModel) -> Result<f64> {
    let mut p = 1.0;
    for (arity, d) in gate_census(c) {
        let e = model.gate_error(arity, d);
        if !(0.0..1.0).contains(&e) {
            return Err(Error::Input(format!("gate error {e} outside [0, 1)")));
        }
        p *= 1.0 - e;
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub p_proposed: f64,
    pub p_baseline: f64,
    pub mode: NoiseMode,
}

pub const SWEEP_HEADER: &str = "epsilon,p_proposed,p_baseline,mode";

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.epsilon,
            self.p_proposed,
            self.p_baseline,
            self.mode.name()
        )
    }
}

/// Success of the qutrit Fredkin against the Clifford+T one over evenly spaced `epsilon`.
pub fn fredkin_sweep(
    eps_min: f64,
    eps_max: f64,
    steps: usize,
    mode: NoiseMode,
) -> Result<Vec<SweepRow>> {
    if steps == 0 {
        return Err(Error::Input("a sweep needs at least one step".into()));
    }
    if !(0.0 <= eps_min && eps_min <= eps_max && eps_max < 1.0) {
        return Err(Error::Input(format!(
            "bad epsilon range [{eps_min}, {eps_max}]"
        )));
    }
    let proposed = fredkin_qutrit(0, 1, 2)?;
    let baseline = fredkin_clifford_t(0, 1, 2)?;
    (0..steps)
        .map(|i| {
            let epsilon = if steps == 1 {
                eps_min
            } else {
                eps_min + (eps_max - eps_min) * i as f64 / (steps - 1) as f64
            };
            let model = NoiseModel::new(epsilon, mode)?;
            Ok(SweepRow {
                epsilon,
                p_proposed: success_probability(&proposed, &model)?,
                p_baseline: success_probability(&baseline, &model)?,
                mode,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv());
        s.push('\n');
    }
    s
}

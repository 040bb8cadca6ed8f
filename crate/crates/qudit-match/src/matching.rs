//! Grover-style search for every offset at which a binary pattern occurs in a
//! binary text.
//!
//! Wire order: index register (most significant bit first), text, pattern,
//! ancillas, output. The state preparation `U` encodes both strings, spreads
//! the index register over the `K = N - M + 1` offsets, rotates the text left
//! by the index value and XORs the first `M` text bits into the pattern, so the
//! pattern register is all-zero exactly on matching offsets.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::circuit::{infer_dims, Circuit, CostReport};
use crate::decompose::{fredkin_qutrit_gates, mct_gates};
use crate::error::{Error, Result};
use crate::gate::{cx, x, GateOp};
use crate::layout::{RegisterLayout, Role};
use crate::state::SparseState;

/// Default cap on the number of nonzero amplitudes during a run.
pub const DEFAULT_SUPPORT_BUDGET: usize = 1 << 22;
/// Environment variable overriding [`DEFAULT_SUPPORT_BUDGET`].
pub const SUPPORT_BUDGET_ENV: &str = "QUDIT_MATCH_SUPPORT_BUDGET";
/// Largest circuit the engine will construct.
pub const MAX_CIRCUIT_OPS: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchProblem {
    text: Vec<u8>,
    pattern: Vec<u8>,
    pub iterations: Option<usize>,
    pub expected_matches: Option<usize>,
}

fn bits_of(s: &str, what: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Input(format!(
                "{what} contains `{other}`, expected only 0 and 1"
            ))),
        })
        .collect()
}

/// Eight bits per byte, most significant first.
pub fn ascii_bits(s: &str) -> Result<Vec<u8>> {
    if !s.is_ascii() {
        return Err(Error::Input("ASCII mode needs ASCII input".into()));
    }
    Ok(s.bytes()
        .flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1))
        .collect())
}

impl MatchProblem {
    pub fn new(text: Vec<u8>, pattern: Vec<u8>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Input("pattern is empty".into()));
        }
        if pattern.len() > text.len() {
            return Err(Error::Input(format!(
                "pattern of length {} is longer than the text ({})",
                pattern.len(),
                text.len()
            )));
        }
        if text.iter().chain(&pattern).any(|&b| b > 1) {
            return Err(Error::Input("strings must be binary".into()));
        }
        Ok(Self {
            text,
            pattern,
            iterations: None,
            expected_matches: None,
        })
    }

    pub fn from_bits(text: &str, pattern: &str) -> Result<Self> {
        Self::new(bits_of(text, "text")?, bits_of(pattern, "pattern")?)
    }

    pub fn from_ascii(text: &str, pattern: &str) -> Result<Self> {
        Self::new(ascii_bits(text)?, ascii_bits(pattern)?)
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn m(&self) -> usize {
        self.pattern.len()
    }

    /// Number of candidate offsets.
    pub fn k(&self) -> usize {
        self.n() - self.m() + 1
    }

    pub fn index_width(&self) -> usize {
        ceil_log2(self.k() as u64) as usize
    }
}

pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Brute-force scan, the reference answer.
pub fn classical_match(text: &[u8], pattern: &[u8]) -> Result<Vec<usize>> {
    if pattern.is_empty() {
        return Err(Error::Input("pattern is empty".into()));
    }
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    Ok((0..=text.len() - pattern.len())
        .filter(|&k| text[k..k + pattern.len()] == *pattern)
        .collect())
}

/// Wire ranges of the five registers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registers {
    pub index: Range<usize>,
    pub text: Range<usize>,
    pub pattern: Range<usize>,
    pub ancilla: Range<usize>,
    pub output: usize,
}

impl Registers {
    pub fn of(layout: &RegisterLayout) -> Result<Self> {
        let range = |role: Role| -> Result<Range<usize>> {
            let ws = layout.wires_with(role);
            match (ws.first(), ws.last()) {
                (Some(&a), Some(&b)) if b - a + 1 == ws.len() => Ok(a..b + 1),
                (None, _) => Ok(0..0),
                _ => Err(Error::Layout(format!(
                    "{} wires are not contiguous",
                    role.name()
                ))),
            }
        };
        let out = layout.wires_with(Role::Output);
        if out.len() != 1 {
            return Err(Error::Layout(format!(
                "expected one output wire, found {}",
                out.len()
            )));
        }
        Ok(Self {
            index: range(Role::Index)?,
            text: range(Role::Text)?,
            pattern: range(Role::Pattern)?,
            ancilla: range(Role::Ancilla)?,
            output: out[0],
        })
    }
}

/// All wires binary; decompositions widen them later.
pub fn build_layout(problem: &MatchProblem) -> Result<RegisterLayout> {
    let mut roles = Vec::new();
    roles.extend(std::iter::repeat_n(Role::Index, problem.index_width()));
    roles.extend(std::iter::repeat_n(Role::Text, problem.n()));
    roles.extend(std::iter::repeat_n(Role::Pattern, problem.m()));
    roles.extend(std::iter::repeat_n(Role::Ancilla, problem.n().div_ceil(2)));
    roles.push(Role::Output);
    RegisterLayout::new(vec![2; roles.len()], roles)
}

fn finish(ops: Vec<GateOp>, layout: &RegisterLayout) -> Result<Circuit> {
    Circuit::with_roles(ops, layout.roles().to_vec())
}

/// The two reflection layers whose product rotates `n` positions left by `r`.
///
/// Position `j` goes to `r - j`, then to `-(r - j)`, i.e. to `j - r (mod n)`.
pub fn rotation_layers(n: usize, r: usize) -> [Vec<(usize, usize)>; 2] {
    let reflect = |c: usize| -> Vec<(usize, usize)> {
        (0..n)
            .filter_map(|i| {
                let j = (c + n - i) % n;
                (i < j).then_some((i, j))
            })
            .collect()
    };
    [reflect(r % n), reflect(0)]
}

fn cyclic_shift_ops(regs: &Registers) -> Result<Vec<GateOp>> {
    let text: Vec<usize> = regs.text.clone().collect();
    let anc: Vec<usize> = regs.ancilla.clone().collect();
    let n = text.len();
    let width = regs.index.len();
    let mut ops = Vec::new();
    for (j, iw) in regs.index.clone().enumerate() {
        let r = (1usize << (width - 1 - j)) % n;
        if r == 0 {
            continue;
        }
        let layers = rotation_layers(n, r);
        let controls_needed = layers.iter().map(Vec::len).max().unwrap_or(0);
        let copies = controls_needed.saturating_sub(1);
        if copies > anc.len() {
            return Err(Error::Layout(format!(
                "{copies} index copies needed, {} ancillas",
                anc.len()
            )));
        }
        // Doubling fan-out: every wire already holding the bit copies it once per round.
        let mut holders = vec![iw];
        let mut fan = Vec::new();
        while holders.len() < copies + 1 {
            for h in holders.clone() {
                if holders.len() == copies + 1 {
                    break;
                }
                let t = anc[holders.len() - 1];
                fan.push(cx(h, t));
                holders.push(t);
            }
        }
        ops.extend_from_slice(&fan);
        for layer in &layers {
            for (&(p, q), &c) in layer.iter().zip(&holders) {
                ops.extend(fredkin_qutrit_gates(c, text[p], text[q])?);
            }
        }
        ops.extend(fan.iter().rev().copied());
    }
    Ok(ops)
}

/// Controlled rotation of the text register by the index value.
pub fn build_cyclic_shift(layout: &RegisterLayout) -> Result<Circuit> {
    let regs = Registers::of(layout)?;
    finish(cyclic_shift_ops(&regs)?, layout)
}

fn state_prep_ops(problem: &MatchProblem, regs: &Registers) -> Result<Vec<GateOp>> {
    if regs.text.len() != problem.n() || regs.pattern.len() != problem.m() {
        return Err(Error::Layout("layout does not fit the problem".into()));
    }
    let mut ops = Vec::new();
    for (i, &b) in problem.text().iter().enumerate() {
        if b == 1 {
            ops.push(x(regs.text.start + i));
        }
    }
    for (i, &b) in problem.pattern().iter().enumerate() {
        if b == 1 {
            ops.push(x(regs.pattern.start + i));
        }
    }
    let width = regs.index.len();
    let k = problem.k() as u128;
    if width > 0 {
        if k == 1u128 << width {
            ops.extend(regs.index.clone().map(|wire| GateOp::H { wire }));
        } else {
            ops.push(GateOp::UniformInit {
                first: regs.index.start,
                len: width,
                count: k,
            });
        }
    }
    ops.extend(cyclic_shift_ops(regs)?);
    for i in 0..problem.m() {
        ops.push(cx(regs.text.start + i, regs.pattern.start + i));
    }
    Ok(ops)
}

/// The preparation unitary `U`: encode, spread the index, rotate, compare.
pub fn build_state_prep(problem: &MatchProblem, layout: &RegisterLayout) -> Result<Circuit> {
    let regs = Registers::of(layout)?;
    finish(state_prep_ops(problem, &regs)?, layout)
}

fn oracle_ops(regs: &Registers) -> Result<Vec<GateOp>> {
    let pattern: Vec<usize> = regs.pattern.clone().collect();
    let mut ops: Vec<GateOp> = pattern.iter().map(|&w| x(w)).collect();
    ops.extend(mct_gates(&pattern, regs.output)?);
    ops.extend(pattern.iter().map(|&w| x(w)));
    Ok(ops)
}

/// Flips the output wire, hence the phase, when the pattern register is all-zero.
pub fn build_oracle(layout: &RegisterLayout) -> Result<Circuit> {
    let regs = Registers::of(layout)?;
    finish(oracle_ops(&regs)?, layout)
}

fn diffusion_ops(regs: &Registers) -> Result<Vec<GateOp>> {
    let idx: Vec<usize> = regs.index.clone().collect();
    let Some((&last, rest)) = idx.split_last() else {
        return Ok(Vec::new());
    };
    let mut ops: Vec<GateOp> = idx.iter().map(|&w| x(w)).collect();
    ops.push(GateOp::H { wire: last });
    if rest.is_empty() {
        ops.push(x(last));
    } else {
        ops.extend(mct_gates(rest, last)?);
    }
    ops.push(GateOp::H { wire: last });
    ops.extend(idx.iter().map(|&w| x(w)));
    Ok(ops)
}

/// Reflection about the all-zero index value.
pub fn build_diffusion(layout: &RegisterLayout) -> Result<Circuit> {
    let regs = Registers::of(layout)?;
    finish(diffusion_ops(&regs)?, layout)
}

/// Iterations for `t` matches among `k` offsets; no amplification when `t = 0`.
pub fn grover_iterations(k: usize, t: usize) -> usize {
    if t == 0 || t >= k {
        return 0;
    }
    let theta = ((t as f64) / (k as f64)).sqrt().asin();
    let r = (std::f64::consts::PI / (4.0 * theta) - 0.5).round();
    r.max(0.0) as usize
}

/// Circuit stages of a run, kept apart so the simulation can check iterate boundaries.
#[derive(Debug, Clone)]
pub struct MatchCircuit {
    pub layout: RegisterLayout,
    pub registers: Registers,
    /// Output preparation followed by `U`.
    pub prep: Vec<GateOp>,
    /// One Grover iterate: oracle, `U` inverse, reflection, `U`.
    pub iterate: Vec<GateOp>,
    pub iterations: usize,
}

impl MatchCircuit {
    pub fn build(problem: &MatchProblem, iterations: usize) -> Result<Self> {
        let base = build_layout(problem)?;
        let regs = Registers::of(&base)?;
        let u = state_prep_ops(problem, &regs)?;
        let u_inv: Vec<GateOp> = u.iter().rev().map(GateOp::inverse).collect();
        let mut prep = vec![x(regs.output), GateOp::H { wire: regs.output }];
        prep.extend_from_slice(&u);
        let mut iterate = oracle_ops(&regs)?;
        iterate.extend(u_inv);
        iterate.extend(diffusion_ops(&regs)?);
        iterate.extend_from_slice(&u);
        let total = prep.len() as u128 + iterate.len() as u128 * iterations as u128;
        if total > MAX_CIRCUIT_OPS as u128 {
            return Err(Error::Budget(format!(
                "{total} gates exceed the limit of {MAX_CIRCUIT_OPS}"
            )));
        }
        let mut all = prep.clone();
        all.extend_from_slice(&iterate);
        let dims = infer_dims(&all, base.wires())?;
        Ok(Self {
            layout: base.with_dims(dims)?,
            registers: regs,
            prep,
            iterate,
            iterations,
        })
    }

    /// The whole run as one flat circuit.
    pub fn circuit(&self) -> Result<Circuit> {
        let mut ops = self.prep.clone();
        for _ in 0..self.iterations {
            ops.extend_from_slice(&self.iterate);
        }
        Circuit::new(self.layout.clone(), ops)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    /// Probability of each offset `0..K`.
    pub offsets: BTreeMap<usize, f64>,
    pub top: usize,
    pub iterations: usize,
    pub verified: bool,
    pub cost_report: CostReport,
    /// Support size after the preparation and after each iterate.
    pub support_trace: Vec<usize>,
    pub max_support: usize,
    /// Worst ancilla excitation probability seen at an iterate boundary.
    pub ancilla_residual: f64,
    /// Final probability on levels above 1.
    pub leakage: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub support_budget: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        let support_budget = std::env::var(SUPPORT_BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_SUPPORT_BUDGET);
        Self { support_budget }
    }
}

pub fn run_match(problem: &MatchProblem) -> Result<MatchResult> {
    run_match_with(problem, RunOptions::default())
}

pub fn run_match_with(problem: &MatchProblem, opts: RunOptions) -> Result<MatchResult> {
    let r = match (problem.iterations, problem.expected_matches) {
        (Some(r), _) => r,
        (None, t) => grover_iterations(problem.k(), t.unwrap_or(1)),
    };
    let mc = MatchCircuit::build(problem, r)?;
    let regs = &mc.registers;
    let mut st = SparseState::zero(mc.layout.clone());
    let mut trace = Vec::with_capacity(r + 1);
    let mut max_support = 1;
    let mut ancilla_residual: f64 = 0.0;
    let anc = regs.ancilla.clone();

    let mut run = |st: &mut SparseState, ops: &[GateOp]| -> Result<()> {
        for op in ops {
            st.apply(op)?;
            max_support = max_support.max(st.support());
            if st.support() > opts.support_budget {
                return Err(Error::Budget(format!(
                    "support reached {} (budget {}); trace so far {:?}",
                    st.support(),
                    opts.support_budget,
                    trace
                )));
            }
        }
        trace.push(st.support());
        let excited = st.probability_where(|d| d[anc.clone()].iter().any(|&v| v != 0));
        ancilla_residual = ancilla_residual.max(excited);
        Ok(())
    };
    run(&mut st, &mc.prep)?;
    for _ in 0..r {
        run(&mut st, &mc.iterate)?;
    }

    let k = problem.k();
    let mut offsets: BTreeMap<usize, f64> = (0..k).map(|o| (o, 0.0)).collect();
    if regs.index.is_empty() {
        offsets.insert(0, 1.0);
    } else {
        let idx: Vec<usize> = regs.index.clone().collect();
        for (digits, p) in st.marginal(&idx)? {
            let v = digits
                .iter()
                .fold(0usize, |acc, &d| (acc << 1) | d as usize);
            *offsets.entry(v).or_insert(0.0) += p;
        }
    }
    let mut top = 0;
    for (&o, &p) in &offsets {
        if p > offsets[&top] + 1e-12 {
            top = o;
        }
    }
    let verified = top + problem.m() <= problem.n()
        && problem.text()[top..top + problem.m()] == *problem.pattern();
    let leakage = st.probability_where(|d| d.iter().any(|&v| v > 1));
    let cost_report = mc.circuit()?.cost();
    Ok(MatchResult {
        offsets,
        top,
        iterations: r,
        verified,
        cost_report,
        support_trace: trace,
        max_support,
        ancilla_residual,
        leakage,
    })
}

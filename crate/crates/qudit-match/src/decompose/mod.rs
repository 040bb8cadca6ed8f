//! Gate decompositions: qutrit-assisted and Clifford+T Toffoli and Fredkin
//! gates, plus the multi-controlled Toffoli planner.

pub mod mct;

use serde::Serialize;

use crate::circuit::{Circuit, CostReport};
use crate::error::{Error, Result};
use crate::gate::{cshift, cx, GateOp};
use crate::verify::ReferencePermutation;

pub use mct::{mct_gates, plan, target_quaternary, MctPlan};

fn distinct(ws: &[usize]) -> Result<()> {
    for i in 0..ws.len() {
        if ws[i + 1..].contains(&ws[i]) {
            return Err(Error::Input(format!("wire w{} used twice", ws[i])));
        }
    }
    Ok(())
}

fn wires_for(ws: &[usize]) -> usize {
    ws.iter().max().map_or(0, |m| m + 1)
}

/// Clifford+T Toffoli: 6 CNOT, 7 T, 2 H.
pub fn toffoli_clifford_t_gates(c0: usize, c1: usize, t: usize) -> Result<Vec<GateOp>> {
    distinct(&[c0, c1, t])?;
    use GateOp::{Tdg, H, T};
    Ok(vec![
        H { wire: t },
        cx(c1, t),
        Tdg { wire: t },
        cx(c0, t),
        T { wire: t },
        cx(c1, t),
        Tdg { wire: t },
        cx(c0, t),
        T { wire: c1 },
        T { wire: t },
        H { wire: t },
        cx(c0, c1),
        T { wire: c0 },
        Tdg { wire: c1 },
        cx(c0, c1),
    ])
}

/// Qutrit-assisted Toffoli: three ternary gates, the second control briefly at level 2.
pub fn toffoli_qutrit_gates(c0: usize, c1: usize, t: usize) -> Result<Vec<GateOp>> {
    distinct(&[c0, c1, t])?;
    Ok(vec![
        cshift(c0, 1, c1, 1, 3),
        cshift(c1, 2, t, 1, 2),
        cshift(c0, 1, c1, 2, 3),
    ])
}

/// Qutrit-assisted Fredkin: 2 CNOT and 3 ternary gates, `a` raised to a qutrit.
pub fn fredkin_qutrit_gates(c: usize, a: usize, b: usize) -> Result<Vec<GateOp>> {
    distinct(&[c, a, b])?;
    let mut ops = vec![cx(b, a)];
    ops.extend(toffoli_qutrit_gates(c, a, b)?);
    ops.push(cx(b, a));
    Ok(ops)
}

/// Clifford+T Fredkin: 7 CNOT, 7 T, 2 H and 3 phase Cliffords.
///
/// Starts from `CX(b,a) Toffoli(c,a,b) CX(b,a)` with the leading `CX(b,a) H(b)
/// CX(a,b)` rewritten as a single CNOT between local Cliffords.
pub fn fredkin_clifford_t_gates(c: usize, a: usize, b: usize) -> Result<Vec<GateOp>> {
    distinct(&[c, a, b])?;
    use GateOp::{Sdg, Tdg, H, S, T};
    Ok(vec![
        Sdg { wire: a },
        S { wire: b },
        cx(b, a),
        H { wire: b },
        Tdg { wire: b },
        cx(c, b),
        T { wire: b },
        cx(a, b),
        Tdg { wire: b },
        cx(c, b),
        S { wire: a },
        T { wire: a },
        T { wire: b },
        H { wire: b },
        cx(c, a),
        T { wire: c },
        Tdg { wire: a },
        cx(c, a),
        cx(b, a),
    ])
}

pub fn toffoli_clifford_t(c0: usize, c1: usize, t: usize) -> Result<Circuit> {
    Circuit::from_ops(
        toffoli_clifford_t_gates(c0, c1, t)?,
        wires_for(&[c0, c1, t]),
    )
}

pub fn toffoli_qutrit(c0: usize, c1: usize, t: usize) -> Result<Circuit> {
    Circuit::from_ops(toffoli_qutrit_gates(c0, c1, t)?, wires_for(&[c0, c1, t]))
}

pub fn fredkin_qutrit(c: usize, a: usize, b: usize) -> Result<Circuit> {
    Circuit::from_ops(fredkin_qutrit_gates(c, a, b)?, wires_for(&[c, a, b]))
}

pub fn fredkin_clifford_t(c: usize, a: usize, b: usize) -> Result<Circuit> {
    Circuit::from_ops(fredkin_clifford_t_gates(c, a, b)?, wires_for(&[c, a, b]))
}

/// `n`-wire multi-controlled Toffoli on wires `0..n`, target last.
pub fn mct_ududit(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Input(format!(
            "a multi-controlled Toffoli needs at least 2 wires, got {n}"
        )));
    }
    let controls: Vec<usize> = (0..n - 1).collect();
    Circuit::from_ops(mct_gates(&controls, n - 1)?, n)
}

/// Named decompositions exposed by the command line and the demo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Named {
    ToffoliCliffordT,
    ToffoliQutrit,
    FredkinCliffordT,
    FredkinQutrit,
    Mct,
}

impl Named {
    pub const ALL: [Named; 5] = [
        Named::ToffoliCliffordT,
        Named::ToffoliQutrit,
        Named::FredkinCliffordT,
        Named::FredkinQutrit,
        Named::Mct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Named::ToffoliCliffordT => "toffoli-ct",
            Named::ToffoliQutrit => "toffoli-qutrit",
            Named::FredkinCliffordT => "fredkin-ct",
            Named::FredkinQutrit => "fredkin-qutrit",
            Named::Mct => "mct",
        }
    }

    pub fn parse(s: &str) -> Option<Named> {
        Named::ALL.into_iter().find(|n| n.name() == s)
    }
}

/// A built decomposition together with what it should implement and cost.
#[derive(Debug, Clone)]
pub struct DecompositionSpec {
    pub name: Named,
    pub circuit: Circuit,
    pub reference: ReferencePermutation,
    pub expected: ExpectedCost,
}

/// Gate counts a decomposition is built to hit. Depth is only given where
/// it is part of the construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExpectedCost {
    pub cnot: usize,
    pub t: usize,
    pub ternary: usize,
    pub quaternary: usize,
    pub depth: Option<usize>,
}

impl ExpectedCost {
    pub fn matches(&self, r: &CostReport) -> bool {
        r.cnot == self.cnot
            && r.t == self.t
            && r.ternary == self.ternary
            && r.quaternary == self.quaternary
            && self.depth.is_none_or(|d| d == r.depth)
    }
}

/// Builds a named decomposition; `n` is the wire count for `Mct` and ignored otherwise.
pub fn build(name: Named, n: usize) -> Result<DecompositionSpec> {
    let (circuit, reference, expected) = match name {
        Named::ToffoliCliffordT => (
            toffoli_clifford_t(0, 1, 2)?,
            ReferencePermutation::Toffoli,
            ExpectedCost {
                cnot: 6,
                t: 7,
                ..Default::default()
            },
        ),
        Named::ToffoliQutrit => (
            toffoli_qutrit(0, 1, 2)?,
            ReferencePermutation::Toffoli,
            ExpectedCost {
                ternary: 3,
                depth: Some(3),
                ..Default::default()
            },
        ),
        Named::FredkinCliffordT => (
            fredkin_clifford_t(0, 1, 2)?,
            ReferencePermutation::Fredkin,
            ExpectedCost {
                cnot: 7,
                t: 7,
                ..Default::default()
            },
        ),
        Named::FredkinQutrit => (
            fredkin_qutrit(0, 1, 2)?,
            ReferencePermutation::Fredkin,
            ExpectedCost {
                cnot: 2,
                ternary: 3,
                ..Default::default()
            },
        ),
        Named::Mct => {
            let c = mct_ududit(n)?;
            let expected = if n == 2 {
                ExpectedCost {
                    cnot: 1,
                    depth: Some(1),
                    ..Default::default()
                }
            } else {
                let p = plan(n)?;
                ExpectedCost {
                    ternary: 2 * n - 3 - p.quaternary,
                    quaternary: p.quaternary,
                    depth: Some(p.depth),
                    ..Default::default()
                }
            };
            (c, ReferencePermutation::Mct { controls: n - 1 }, expected)
        }
    };
    Ok(DecompositionSpec {
        name,
        circuit,
        reference,
        expected,
    })
}

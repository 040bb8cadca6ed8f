//! Gate vocabulary, categories and the one-line text notation.
//!
//! Notation, one gate per line:
//!
//! ```text
//! X+1%3 w5            increment wire 5 by 1 modulo 3
//! C[w3@1] X+2%3 w5    same, only when wire 3 is at level 1
//! H w0   T w1   Tdg w1   S w1   Sdg w1
//! SWAP w2 w7
//! INIT[5] w0 w1 w2    reflection taking |000> to the uniform state over 0..5
//! ```
//!
//! An increment modulo `d` cycles levels `0..d` and leaves higher levels alone,
//! so it stays a permutation on a wire that was widened by another gate. `H`,
//! `T` and `S` likewise act on levels 0 and 1 only.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::MAX_DIM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateOp {
    Shift {
        wire: usize,
        amount: u8,
        modulus: u8,
    },
    H {
        wire: usize,
    },
    T {
        wire: usize,
    },
    Tdg {
        wire: usize,
    },
    S {
        wire: usize,
    },
    Sdg {
        wire: usize,
    },
    ControlledShift {
        control: usize,
        level: u8,
        target: usize,
        amount: u8,
        modulus: u8,
    },
    Swap {
        a: usize,
        b: usize,
    },
    /// Householder reflection on the binary wires `first..first+len` swapping
    /// |0> with the uniform superposition over the first `count` values.
    UniformInit {
        first: usize,
        len: usize,
        count: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    SingleQudit,
    T,
    Cnot,
    Ternary,
    Quaternary,
    Swap,
    Initializer,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::SingleQudit,
        Category::T,
        Category::Cnot,
        Category::Ternary,
        Category::Quaternary,
        Category::Swap,
        Category::Initializer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::SingleQudit => "single_qudit",
            Category::T => "t",
            Category::Cnot => "cnot",
            Category::Ternary => "ternary",
            Category::Quaternary => "quaternary",
            Category::Swap => "swap",
            Category::Initializer => "initializer",
        }
    }
}

/// Binary X on a wire.
pub fn x(wire: usize) -> GateOp {
    GateOp::Shift {
        wire,
        amount: 1,
        modulus: 2,
    }
}

/// Ordinary CNOT.
pub fn cx(control: usize, target: usize) -> GateOp {
    GateOp::ControlledShift {
        control,
        level: 1,
        target,
        amount: 1,
        modulus: 2,
    }
}

pub fn cshift(control: usize, level: u8, target: usize, amount: u8, modulus: u8) -> GateOp {
    GateOp::ControlledShift {
        control,
        level,
        target,
        amount,
        modulus,
    }
}

impl GateOp {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            GateOp::Shift { wire, .. }
            | GateOp::H { wire }
            | GateOp::T { wire }
            | GateOp::Tdg { wire }
            | GateOp::S { wire }
            | GateOp::Sdg { wire } => vec![wire],
            GateOp::ControlledShift {
                control, target, ..
            } => vec![control, target],
            GateOp::Swap { a, b } => vec![a, b],
            GateOp::UniformInit { first, len, .. } => (first..first + len).collect(),
        }
    }

    pub fn max_wire(&self) -> usize {
        match *self {
            GateOp::ControlledShift {
                control, target, ..
            } => control.max(target),
            GateOp::Swap { a, b } => a.max(b),
            GateOp::UniformInit { first, len, .. } => first + len.saturating_sub(1),
            GateOp::Shift { wire, .. }
            | GateOp::H { wire }
            | GateOp::T { wire }
            | GateOp::Tdg { wire }
            | GateOp::S { wire }
            | GateOp::Sdg { wire } => wire,
        }
    }

    pub fn category(&self) -> Category {
        match *self {
            GateOp::Shift { .. } | GateOp::H { .. } | GateOp::S { .. } | GateOp::Sdg { .. } => {
                Category::SingleQudit
            }
            GateOp::T { .. } | GateOp::Tdg { .. } => Category::T,
            GateOp::ControlledShift { level, modulus, .. } => match level.max(modulus - 1) {
                0 | 1 => Category::Cnot,
                2 => Category::Ternary,
                _ => Category::Quaternary,
            },
            GateOp::Swap { .. } => Category::Swap,
            GateOp::UniformInit { .. } => Category::Initializer,
        }
    }

    /// Largest number of levels the gate itself distinguishes on any wire.
    pub fn levels(&self) -> u8 {
        match *self {
            GateOp::Shift { modulus, .. } => modulus,
            GateOp::ControlledShift { level, modulus, .. } => (level + 1).max(modulus),
            _ => 2,
        }
    }

    pub fn inverse(&self) -> GateOp {
        match *self {
            GateOp::Shift {
                wire,
                amount,
                modulus,
            } => GateOp::Shift {
                wire,
                amount: modulus - amount,
                modulus,
            },
            GateOp::ControlledShift {
                control,
                level,
                target,
                amount,
                modulus,
            } => GateOp::ControlledShift {
                control,
                level,
                target,
                amount: modulus - amount,
                modulus,
            },
            GateOp::T { wire } => GateOp::Tdg { wire },
            GateOp::Tdg { wire } => GateOp::T { wire },
            GateOp::S { wire } => GateOp::Sdg { wire },
            GateOp::Sdg { wire } => GateOp::S { wire },
            g @ (GateOp::H { .. } | GateOp::Swap { .. } | GateOp::UniformInit { .. }) => g,
        }
    }

    /// Minimum dimension each touched wire needs, as `(wire, dim)` pairs.
    pub fn required_dims(&self) -> Vec<(usize, u8)> {
        match *self {
            GateOp::Shift { wire, modulus, .. } => vec![(wire, modulus)],
            GateOp::ControlledShift {
                control,
                level,
                target,
                modulus,
                ..
            } => {
                vec![(control, (level + 1).max(2)), (target, modulus)]
            }
            _ => self.wires().into_iter().map(|w| (w, 2)).collect(),
        }
    }

    /// Structural checks that do not depend on a layout.
    pub fn check_shape(&self) -> Result<()> {
        match *self {
            GateOp::Shift {
                amount, modulus, ..
            }
            | GateOp::ControlledShift {
                amount, modulus, ..
            } => {
                if !(2..=MAX_DIM).contains(&modulus) {
                    return Err(Error::Gate(format!("modulus {modulus} outside 2..=4")));
                }
                if amount == 0 || amount >= modulus {
                    return Err(Error::Gate(format!(
                        "increment {amount} outside 1..{modulus}"
                    )));
                }
            }
            _ => {}
        }
        match *self {
            GateOp::ControlledShift {
                control,
                target,
                level,
                ..
            } => {
                if control == target {
                    return Err(Error::Gate(format!(
                        "control and target are both w{control}"
                    )));
                }
                if level >= MAX_DIM {
                    return Err(Error::Gate(format!("activation level {level} above 3")));
                }
            }
            GateOp::Swap { a, b } if a == b => {
                return Err(Error::Gate(format!("swap of w{a} with itself")));
            }
            GateOp::UniformInit { len, count, .. } => {
                if len == 0 || len > 127 {
                    return Err(Error::Gate(format!("initializer over {len} wires")));
                }
                if count == 0 || count > 1u128 << len {
                    return Err(Error::Gate(format!(
                        "initializer count {count} does not fit {len} wires"
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Checks the gate against concrete wire dimensions.
    pub fn validate(&self, dims: &[u8]) -> Result<()> {
        self.check_shape()?;
        for w in self.wires() {
            if w >= dims.len() {
                return Err(Error::WireOutOfRange {
                    wire: w,
                    wires: dims.len(),
                });
            }
        }
        for (w, d) in self.required_dims() {
            if dims[w] < d {
                return Err(Error::LevelOutOfRange {
                    wire: w,
                    level: d - 1,
                    dim: dims[w],
                });
            }
        }
        if let GateOp::Swap { a, b } = *self {
            if dims[a] != dims[b] {
                return Err(Error::Gate(format!(
                    "swap between w{a} (dim {}) and w{b} (dim {})",
                    dims[a], dims[b]
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GateOp::Shift {
                wire,
                amount,
                modulus,
            } => write!(f, "X+{amount}%{modulus} w{wire}"),
            GateOp::H { wire } => write!(f, "H w{wire}"),
            GateOp::T { wire } => write!(f, "T w{wire}"),
            GateOp::Tdg { wire } => write!(f, "Tdg w{wire}"),
            GateOp::S { wire } => write!(f, "S w{wire}"),
            GateOp::Sdg { wire } => write!(f, "Sdg w{wire}"),
            GateOp::ControlledShift {
                control,
                level,
                target,
                amount,
                modulus,
            } => {
                write!(f, "C[w{control}@{level}] X+{amount}%{modulus} w{target}")
            }
            GateOp::Swap { a, b } => write!(f, "SWAP w{a} w{b}"),
            GateOp::UniformInit { first, len, count } => {
                write!(f, "INIT[{count}]")?;
                for w in first..first + len {
                    write!(f, " w{w}")?;
                }
                Ok(())
            }
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        msg: msg.into(),
    }
}

fn parse_wire(tok: &str) -> Result<usize> {
    tok.strip_prefix('w')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(format!("expected a wire like w3, found `{tok}`")))
}

/// Parses `X+a%d`.
fn parse_shift(tok: &str) -> Result<(u8, u8)> {
    let body = tok
        .strip_prefix("X+")
        .ok_or_else(|| bad(format!("expected an increment like X+1%3, found `{tok}`")))?;
    let (a, d) = body
        .split_once('%')
        .ok_or_else(|| bad(format!("increment `{tok}` lacks a modulus")))?;
    let a = a
        .parse()
        .map_err(|_| bad(format!("bad increment in `{tok}`")))?;
    let d = d
        .parse()
        .map_err(|_| bad(format!("bad modulus in `{tok}`")))?;
    Ok((a, d))
}

impl FromStr for GateOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<GateOp> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let arity = |n: usize| {
            if toks.len() == n {
                Ok(())
            } else {
                Err(bad(format!("`{s}` should have {n} fields")))
            }
        };
        let head = *toks.first().ok_or_else(|| bad("empty gate"))?;
        let op = match head {
            "H" | "T" | "Tdg" | "S" | "Sdg" => {
                arity(2)?;
                let wire = parse_wire(toks[1])?;
                match head {
                    "H" => GateOp::H { wire },
                    "T" => GateOp::T { wire },
                    "Tdg" => GateOp::Tdg { wire },
                    "S" => GateOp::S { wire },
                    _ => GateOp::Sdg { wire },
                }
            }
            "SWAP" => {
                arity(3)?;
                GateOp::Swap {
                    a: parse_wire(toks[1])?,
                    b: parse_wire(toks[2])?,
                }
            }
            _ if head.starts_with("X+") => {
                arity(2)?;
                let (amount, modulus) = parse_shift(head)?;
                GateOp::Shift {
                    wire: parse_wire(toks[1])?,
                    amount,
                    modulus,
                }
            }
            _ if head.starts_with("C[") => {
                arity(3)?;
                let inner = head
                    .strip_prefix("C[")
                    .and_then(|h| h.strip_suffix(']'))
                    .ok_or_else(|| bad(format!("malformed control `{head}`")))?;
                let (cw, lvl) = inner
                    .split_once('@')
                    .ok_or_else(|| bad(format!("control `{head}` lacks a level")))?;
                let level = lvl
                    .parse()
                    .map_err(|_| bad(format!("bad level in `{head}`")))?;
                let (amount, modulus) = parse_shift(toks[1])?;
                GateOp::ControlledShift {
                    control: parse_wire(cw)?,
                    level,
                    target: parse_wire(toks[2])?,
                    amount,
                    modulus,
                }
            }
            _ if head.starts_with("INIT[") => {
                let count = head
                    .strip_prefix("INIT[")
                    .and_then(|h| h.strip_suffix(']'))
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| bad(format!("malformed initializer `{head}`")))?;
                let wires = toks[1..]
                    .iter()
                    .map(|t| parse_wire(t))
                    .collect::<Result<Vec<_>>>()?;
                let first = *wires
                    .first()
                    .ok_or_else(|| bad("initializer without wires"))?;
                if wires.iter().enumerate().any(|(i, &w)| w != first + i) {
                    return Err(bad("initializer wires must be consecutive"));
                }
                GateOp::UniformInit {
                    first,
                    len: wires.len(),
                    count,
                }
            }
            _ => return Err(bad(format!("unknown gate `{head}`"))),
        };
        op.check_shape().map_err(|e| bad(e.to_string()))?;
        Ok(op)
    }
}

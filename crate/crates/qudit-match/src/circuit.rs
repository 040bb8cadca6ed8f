//! Gate sequences over a register layout, with depth, cost and a text dump.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::{Category, GateOp};
use crate::layout::{RegisterLayout, Role, MAX_DIM};

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: RegisterLayout,
    ops: Vec<GateOp>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub single_qudit: usize,
    pub t: usize,
    pub cnot: usize,
    pub ternary: usize,
    pub quaternary: usize,
    pub swap: usize,
    pub initializer: usize,
    pub total: usize,
    pub depth: usize,
    pub wires: usize,
    pub ancillas: usize,
    /// Number of wires at each dimension.
    pub dims: BTreeMap<u8, usize>,
}

impl CostReport {
    pub fn get(&self, c: Category) -> usize {
        match c {
            Category::SingleQudit => self.single_qudit,
            Category::T => self.t,
            Category::Cnot => self.cnot,
            Category::Ternary => self.ternary,
            Category::Quaternary => self.quaternary,
            Category::Swap => self.swap,
            Category::Initializer => self.initializer,
        }
    }

    fn bump(&mut self, c: Category) {
        let slot = match c {
            Category::SingleQudit => &mut self.single_qudit,
            Category::T => &mut self.t,
            Category::Cnot => &mut self.cnot,
            Category::Ternary => &mut self.ternary,
            Category::Quaternary => &mut self.quaternary,
            Category::Swap => &mut self.swap,
            Category::Initializer => &mut self.initializer,
        };
        *slot += 1;
        self.total += 1;
    }
}

/// Smallest per-wire dimensions that every op in `ops` fits in.
pub fn infer_dims(ops: &[GateOp], wires: usize) -> Result<Vec<u8>> {
    let mut dims = vec![2u8; wires];
    for op in ops {
        op.check_shape()?;
        for (w, d) in op.required_dims() {
            if w >= wires {
                return Err(Error::WireOutOfRange { wire: w, wires });
            }
            if d > MAX_DIM {
                return Err(Error::DimensionOverflow { wire: w, needed: d });
            }
            dims[w] = dims[w].max(d);
        }
    }
    // Swapped wires must agree; repeat until stable since swaps can chain.
    loop {
        let mut changed = false;
        for op in ops {
            if let GateOp::Swap { a, b } = *op {
                let m = dims[a].max(dims[b]);
                changed |= dims[a] != m || dims[b] != m;
                dims[a] = m;
                dims[b] = m;
            }
        }
        if !changed {
            return Ok(dims);
        }
    }
}

impl Circuit {
    pub fn new(layout: RegisterLayout, ops: Vec<GateOp>) -> Result<Self> {
        for op in &ops {
            op.validate(layout.dims())?;
        }
        Ok(Self { layout, ops })
    }

    /// Infers dimensions and tags every wire as data.
    pub fn from_ops(ops: Vec<GateOp>, wires: usize) -> Result<Self> {
        Self::with_roles(ops, vec![Role::Data; wires])
    }

    /// Infers dimensions for the given roles.
    pub fn with_roles(ops: Vec<GateOp>, roles: Vec<Role>) -> Result<Self> {
        let dims = infer_dims(&ops, roles.len())?;
        let layout = RegisterLayout::new(dims, roles)?;
        Ok(Self { layout, ops })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<GateOp> {
        self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Greedy ASAP layering: op indices grouped by the layer they land in.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut free = vec![0usize; self.layout.wires()];
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (i, op) in self.ops.iter().enumerate() {
            let ws = op.wires();
            let at = ws.iter().map(|&w| free[w]).max().unwrap_or(0);
            if at == layers.len() {
                layers.push(Vec::new());
            }
            layers[at].push(i);
            for w in ws {
                free[w] = at + 1;
            }
        }
        layers
    }

    pub fn depth(&self) -> usize {
        let mut free = vec![0usize; self.layout.wires()];
        let mut depth = 0;
        for op in &self.ops {
            let ws = op.wires();
            let at = ws.iter().map(|&w| free[w]).max().unwrap_or(0) + 1;
            for w in ws {
                free[w] = at;
            }
            depth = depth.max(at);
        }
        depth
    }

    pub fn cost(&self) -> CostReport {
        let mut r = CostReport::default();
        for op in &self.ops {
            r.bump(op.category());
        }
        r.depth = self.depth();
        r.wires = self.layout.wires();
        r.ancillas = self.layout.count(Role::Ancilla);
        for &d in self.layout.dims() {
            *r.dims.entry(d).or_insert(0) += 1;
        }
        r
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            layout: self.layout.clone(),
            ops: self.ops.iter().rev().map(GateOp::inverse).collect(),
        }
    }

    /// `self` followed by `other` on the same wires, widening dimensions as needed.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.layout.roles() != other.layout.roles() {
            return Err(Error::Layout(
                "composed circuits have different wire roles".into(),
            ));
        }
        let dims = self
            .layout
            .dims()
            .iter()
            .zip(other.layout.dims())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&other.ops);
        Circuit::new(self.layout.with_dims(dims)?, ops)
    }

    /// Text dump: a `dims` header, a `roles` line, then one gate per line.
    pub fn dump(&self) -> String {
        let mut s = String::from("dims");
        for d in self.layout.dims() {
            let _ = write!(s, " {d}");
        }
        s.push_str("\nroles");
        for r in self.layout.roles() {
            let _ = write!(s, " {}", r.name());
        }
        s.push('\n');
        for op in &self.ops {
            let _ = writeln!(s, "{op}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut dims: Option<Vec<u8>> = None;
        let mut roles: Option<Vec<Role>> = None;
        let mut ops = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            if let Some(rest) = line.strip_prefix("dims") {
                if dims.is_some() {
                    return Err(perr("second dims header".into()));
                }
                let d = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u8>()
                            .map_err(|_| perr(format!("bad dimension `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                dims = Some(d);
            } else if let Some(rest) = line.strip_prefix("roles") {
                let r = rest
                    .split_whitespace()
                    .map(|t| parse_role(t).ok_or_else(|| perr(format!("unknown role `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                roles = Some(r);
            } else {
                if dims.is_none() {
                    return Err(perr("gate before the dims header".into()));
                }
                let op: GateOp = line.parse().map_err(|e| match e {
                    Error::Parse { msg, .. } => perr(msg),
                    other => other,
                })?;
                ops.push(op);
            }
        }
        let dims = dims.ok_or(Error::Parse {
            line: 0,
            msg: "missing dims header".into(),
        })?;
        let roles = roles.unwrap_or_else(|| vec![Role::Data; dims.len()]);
        Circuit::new(RegisterLayout::new(dims, roles)?, ops)
    }
}

fn parse_role(t: &str) -> Option<Role> {
    Some(match t {
        "index" => Role::Index,
        "text" => Role::Text,
        "pattern" => Role::Pattern,
        "ancilla" => Role::Ancilla,
        "output" => Role::Output,
        "data" => Role::Data,
        _ => return None,
    })
}

//! Ancilla-free multi-controlled Toffoli on wires of dimension up to 4.
//!
//! Controls are merged along a tree. Each internal node is a control wire that
//! absorbs its children with controlled increments, so that it sits at one
//! particular "active" level exactly when all controls below it are 1. The root
//! then flips the target, and the absorbing gates are undone in reverse.
//!
//! Node kinds, with `w` the node's own wire (initially a plain control in {0,1}):
//!
//! * leaf: active at 1.
//! * single(x): `C[x@ax] X+1%3 w`, active at 2.
//! * adapter(x): a leaf `l` enters negatively with `C[l@0] X+3%4 w`, after which
//!   `w` is 1 only on `l = w = 1`; then `C[x@ax] X+1%3 w` makes it active at 2.
//! * double(x, y): `C[x@ax] X+1%3 w` then `C[y@ay] X+1%4 w`, active at 3.
//!
//! A tree over `c` controls always has `c - 1` absorbing gates, so the whole
//! circuit has `2c - 1` gates. A dynamic program over (size, kind, size minus
//! twice its quaternary count) picks, for the requested quaternary count, the
//! tree whose absorbing stage finishes earliest.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::{cshift, GateOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Leaf,
    Raised,
    Doubled,
}

impl Kind {
    fn active(self) -> u8 {
        match self {
            Kind::Leaf => 1,
            Kind::Raised => 2,
            Kind::Doubled => 3,
        }
    }

    fn doubled(self) -> i32 {
        (self == Kind::Doubled) as i32
    }
}

type Key = (usize, Kind, i32);

#[derive(Debug, Clone, Copy)]
enum How {
    Leaf,
    Single(Key),
    Adapter(Key),
    Double(Key, Key),
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    finish: u32,
    how: How,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Single(Box<Shape>),
    Adapter(Box<Shape>),
    Double(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn size(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Single(x) => x.size() + 1,
            Shape::Adapter(x) => x.size() + 2,
            Shape::Double(x, y) => x.size() + y.size() + 1,
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Shape::Leaf => Kind::Leaf,
            Shape::Single(_) | Shape::Adapter(_) => Kind::Raised,
            Shape::Double(..) => Kind::Doubled,
        }
    }
}

#[derive(Default)]
struct Table {
    by_size: Vec<BTreeMap<(Kind, i32), Cell>>,
}

impl Table {
    fn offer(&mut self, size: usize, kind: Kind, delta: i32, finish: u32, how: How) {
        let slot = &mut self.by_size[size];
        match slot.get(&(kind, delta)) {
            Some(c) if c.finish <= finish => {}
            _ => {
                slot.insert((kind, delta), Cell { finish, how });
            }
        }
    }

    fn grow_to(&mut self, max: usize) {
        if self.by_size.is_empty() {
            self.by_size.push(BTreeMap::new());
            self.by_size.push(BTreeMap::new());
            self.offer(1, Kind::Leaf, 1, 0, How::Leaf);
        }
        while self.by_size.len() <= max {
            let s = self.by_size.len();
            self.by_size.push(BTreeMap::new());
            let single: Vec<_> = self.entries(s - 1);
            for (k, d, f) in single {
                let x = (s - 1, k, d);
                self.offer(
                    s,
                    Kind::Raised,
                    d + 1 - 2 * k.doubled(),
                    f + 1,
                    How::Single(x),
                );
            }
            if s >= 3 {
                for (k, d, f) in self.entries(s - 2) {
                    let x = (s - 2, k, d);
                    self.offer(
                        s,
                        Kind::Raised,
                        d - 2 * k.doubled(),
                        f.max(1) + 1,
                        How::Adapter(x),
                    );
                }
            }
            for s1 in 1..s - 1 {
                let s2 = s - 1 - s1;
                let first = self.entries(s1);
                let second = self.entries(s2);
                for &(k1, d1, f1) in &first {
                    for &(k2, d2, f2) in &second {
                        let delta = d1 + d2 - 1 - 2 * k1.doubled();
                        let finish = (f1 + 1).max(f2) + 1;
                        self.offer(
                            s,
                            Kind::Doubled,
                            delta,
                            finish,
                            How::Double((s1, k1, d1), (s2, k2, d2)),
                        );
                    }
                }
            }
        }
    }

    fn entries(&self, size: usize) -> Vec<(Kind, i32, u32)> {
        self.by_size[size]
            .iter()
            .map(|(&(k, d), c)| (k, d, c.finish))
            .collect()
    }

    fn shape(&self, key: Key) -> Shape {
        let (s, k, d) = key;
        match self.by_size[s][&(k, d)].how {
            How::Leaf => Shape::Leaf,
            How::Single(x) => Shape::Single(Box::new(self.shape(x))),
            How::Adapter(x) => Shape::Adapter(Box::new(self.shape(x))),
            How::Double(x, y) => Shape::Double(Box::new(self.shape(x)), Box::new(self.shape(y))),
        }
    }
}

/// The tree chosen for an `n`-wire gate, with its predicted cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MctPlan {
    pub wires: usize,
    pub shape: Shape,
    pub quaternary: usize,
    pub target_quaternary: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MctPlanSummary {
    pub wires: usize,
    pub gates: usize,
    pub quaternary: usize,
    pub target_quaternary: usize,
    pub depth: usize,
}

impl MctPlan {
    pub fn summary(&self) -> MctPlanSummary {
        MctPlanSummary {
            wires: self.wires,
            gates: 2 * self.wires - 3,
            quaternary: self.quaternary,
            target_quaternary: self.target_quaternary,
            depth: self.depth,
        }
    }
}

fn table() -> &'static Mutex<Table> {
    static T: OnceLock<Mutex<Table>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(Table::default()))
}

fn plans() -> &'static Mutex<HashMap<usize, Arc<MctPlan>>> {
    static P: OnceLock<Mutex<HashMap<usize, Arc<MctPlan>>>> = OnceLock::new();
    P.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Largest supported gate, bounded by planner cost.
pub const MAX_MCT_WIRES: usize = 128;

/// Quaternary count aimed for by an `n`-wire gate.
pub fn target_quaternary(n: usize) -> usize {
    n.saturating_sub(4)
}

/// Plans an `n`-wire gate (`n - 1` controls). Needs `n >= 3`.
///
/// The tree uses exactly `target_quaternary(n)` quaternary gates when such a
/// tree exists; otherwise the nearest achievable count, preferring fewer.
pub fn plan(n: usize) -> Result<Arc<MctPlan>> {
    if n < 3 {
        return Err(Error::Input(format!(
            "an absorbing tree needs at least 3 wires, got {n}"
        )));
    }
    if n > MAX_MCT_WIRES {
        return Err(Error::Budget(format!(
            "{n}-wire gate above the planner limit of {MAX_MCT_WIRES}"
        )));
    }
    if let Some(p) = plans().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let c = n - 1;
    let want = target_quaternary(n) as i64;
    let mut t = table().lock().unwrap();
    t.grow_to(c);
    let mut best: Option<((i64, i64, u32), Key)> = None;
    for (&(k, d), cell) in &t.by_size[c] {
        if k == Kind::Leaf {
            continue;
        }
        // Each absorbing gate appears twice; a doubled root adds one more.
        let q = (c as i64 - d as i64) + k.doubled() as i64;
        let rank = ((q - want).abs(), q, cell.finish);
        if best.as_ref().is_none_or(|(r, _)| rank < *r) {
            best = Some((rank, (c, k, d)));
        }
    }
    let ((_, q, finish), key) = best.expect("every size above one has a non-leaf tree");
    let plan = Arc::new(MctPlan {
        wires: n,
        shape: t.shape(key),
        quaternary: q as usize,
        target_quaternary: want as usize,
        depth: 2 * finish as usize + 1,
    });
    drop(t);
    plans().lock().unwrap().insert(n, plan.clone());
    Ok(plan)
}

/// Gates flipping `target` when every wire in `controls` is 1.
pub fn mct_gates(controls: &[usize], target: usize) -> Result<Vec<GateOp>> {
    let mut seen = controls.to_vec();
    seen.push(target);
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input(
            "repeated wire in a multi-controlled gate".into(),
        ));
    }
    match controls.len() {
        0 => {
            return Err(Error::Input(
                "a multi-controlled gate needs at least one control".into(),
            ))
        }
        1 => return Ok(vec![cshift(controls[0], 1, target, 1, 2)]),
        _ => {}
    }
    let p = plan(controls.len() + 1)?;
    let mut down = Vec::with_capacity(controls.len());
    let mut next = controls.iter().copied();
    let root = emit(&p.shape, &mut next, &mut down);
    let mut ops = down.clone();
    ops.push(cshift(root, p.shape.kind().active(), target, 1, 2));
    ops.extend(down.iter().rev().map(GateOp::inverse));
    Ok(ops)
}

/// Emits the absorbing gates for `shape`, returning the node's wire.
fn emit(shape: &Shape, wires: &mut impl Iterator<Item = usize>, out: &mut Vec<GateOp>) -> usize {
    match shape {
        Shape::Leaf => wires.next().expect("one wire per tree node"),
        Shape::Single(x) => {
            let xw = emit(x, wires, out);
            let w = wires.next().expect("one wire per tree node");
            out.push(cshift(xw, x.kind().active(), w, 1, 3));
            w
        }
        Shape::Adapter(x) => {
            let xw = emit(x, wires, out);
            let leaf = wires.next().expect("one wire per tree node");
            let w = wires.next().expect("one wire per tree node");
            out.push(cshift(leaf, 0, w, 3, 4));
            out.push(cshift(xw, x.kind().active(), w, 1, 3));
            w
        }
        Shape::Double(x, y) => {
            let xw = emit(x, wires, out);
            let yw = emit(y, wires, out);
            let w = wires.next().expect("one wire per tree node");
            out.push(cshift(xw, x.kind().active(), w, 1, 3));
            out.push(cshift(yw, y.kind().active(), w, 1, 4));
            w
        }
    }
}

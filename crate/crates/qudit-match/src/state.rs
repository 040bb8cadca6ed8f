//! Sparse mixed-radix state vectors.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::FRAC_1_SQRT_2;
use std::hash::{BuildHasherDefault, DefaultHasher};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::GateOp;
use crate::layout::{BasisIndex, RegisterLayout};

/// Amplitudes with magnitude below this are dropped after mixing gates.
pub const PRUNE_CUTOFF: f64 = 1e-12;
/// Norm drift tolerated before a state is renormalised.
pub const RENORM_DRIFT: f64 = 1e-9;

type Amplitudes = HashMap<BasisIndex, Complex64, BuildHasherDefault<DefaultHasher>>;

#[derive(Debug, Clone)]
pub struct SparseState {
    layout: RegisterLayout,
    amps: Amplitudes,
}

impl SparseState {
    pub fn basis(layout: RegisterLayout, digits: &[u8]) -> Result<Self> {
        let idx = layout.encode(digits)?;
        let mut amps = Amplitudes::default();
        amps.insert(idx, Complex64::new(1.0, 0.0));
        Ok(Self { layout, amps })
    }

    pub fn zero(layout: RegisterLayout) -> Self {
        let mut amps = Amplitudes::default();
        amps.insert(0, Complex64::new(1.0, 0.0));
        Self { layout, amps }
    }

    /// Builds a state from explicit amplitudes, normalising them.
    pub fn from_amplitudes(
        layout: RegisterLayout,
        entries: impl IntoIterator<Item = (BasisIndex, Complex64)>,
    ) -> Result<Self> {
        let mut amps = Amplitudes::default();
        for (idx, a) in entries {
            if idx >= layout.size() {
                return Err(Error::Input(format!(
                    "basis index {idx} outside the layout"
                )));
            }
            *amps.entry(idx).or_default() += a;
        }
        amps.retain(|_, a| a.norm() >= PRUNE_CUTOFF);
        let mut s = Self { layout, amps };
        let n = s.norm_sqr();
        if n == 0.0 {
            return Err(Error::Input("state has no nonzero amplitude".into()));
        }
        s.scale(1.0 / n.sqrt());
        Ok(s)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, idx: BasisIndex) -> Complex64 {
        self.amps.get(&idx).copied().unwrap_or_default()
    }

    /// Nonzero entries in ascending index order.
    pub fn entries(&self) -> Vec<(BasisIndex, Complex64)> {
        let mut v: Vec<_> = self.amps.iter().map(|(&k, &a)| (k, a)).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries().iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    fn scale(&mut self, f: f64) {
        for a in self.amps.values_mut() {
            *a *= f;
        }
    }

    pub fn apply_all<'a>(&mut self, ops: impl IntoIterator<Item = &'a GateOp>) -> Result<()> {
        for op in ops {
            self.apply(op)?;
        }
        Ok(())
    }

    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.layout.dims())?;
        let lay = &self.layout;
        match *op {
            GateOp::Shift {
                wire,
                amount,
                modulus,
            } => {
                permute(&mut self.amps, |idx| {
                    shifted(lay, idx, wire, amount, modulus)
                });
            }
            GateOp::ControlledShift {
                control,
                level,
                target,
                amount,
                modulus,
            } => {
                permute(&mut self.amps, |idx| {
                    if lay.digit(idx, control) == level {
                        shifted(lay, idx, target, amount, modulus)
                    } else {
                        idx
                    }
                });
            }
            GateOp::Swap { a, b } => {
                permute(&mut self.amps, |idx| {
                    let (da, db) = (lay.digit(idx, a), lay.digit(idx, b));
                    lay.set_digit(lay.set_digit(idx, a, db), b, da)
                });
            }
            GateOp::T { wire } => self.phase(
                wire,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ),
            GateOp::Tdg { wire } => self.phase(
                wire,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ),
            GateOp::S { wire } => self.phase(wire, Complex64::new(0.0, 1.0)),
            GateOp::Sdg { wire } => self.phase(wire, Complex64::new(0.0, -1.0)),
            GateOp::H { wire } => {
                self.hadamard(wire);
                self.settle();
            }
            GateOp::UniformInit { first, len, count } => {
                self.uniform_reflect(first, len, count);
                self.settle();
            }
        }
        Ok(())
    }

    fn phase(&mut self, wire: usize, p: Complex64) {
        let lay = &self.layout;
        for (&idx, a) in self.amps.iter_mut() {
            if lay.digit(idx, wire) == 1 {
                *a *= p;
            }
        }
    }

    fn hadamard(&mut self, wire: usize) {
        let old = std::mem::take(&mut self.amps);
        let stride = self.layout.stride(wire);
        self.amps.reserve(old.len() * 2);
        for (idx, a) in old {
            let d = self.layout.digit(idx, wire);
            if d > 1 {
                *self.amps.entry(idx).or_default() += a;
                continue;
            }
            let base = idx - d as BasisIndex * stride;
            let h = a * FRAC_1_SQRT_2;
            *self.amps.entry(base).or_default() += h;
            *self.amps.entry(base + stride).or_default() += if d == 0 { h } else { -h };
        }
    }

    fn uniform_reflect(&mut self, first: usize, len: usize, count: u128) {
        if count == 1 {
            return;
        }
        let lay = &self.layout;
        let inv = 1.0 / (count as f64).sqrt();
        let vv = 2.0 - 2.0 * inv;
        let old = std::mem::take(&mut self.amps);
        let mut groups: BTreeMap<BasisIndex, Vec<(u128, Complex64)>> = BTreeMap::new();
        for (idx, a) in old {
            let mut value = 0u128;
            let mut rest = idx;
            let mut binary = true;
            for w in first..first + len {
                let d = lay.digit(idx, w);
                binary &= d < 2;
                value = (value << 1) | d as u128;
                rest -= d as BasisIndex * lay.stride(w);
            }
            if binary {
                groups.entry(rest).or_default().push((value, a));
            } else {
                self.amps.insert(idx, a);
            }
        }
        let place = |rest: BasisIndex, value: u128| {
            (0..len).fold(rest, |acc, i| {
                let bit = (value >> (len - 1 - i)) & 1;
                acc + bit as BasisIndex * lay.stride(first + i)
            })
        };
        for (rest, group) in groups {
            let mut dot = Complex64::default();
            for &(v, a) in &group {
                if v == 0 {
                    dot += a;
                }
                if v < count {
                    dot -= a * inv;
                }
            }
            let factor = dot * (2.0 / vv);
            for (v, a) in group {
                *self.amps.entry(place(rest, v)).or_default() += a;
            }
            if factor.norm() < PRUNE_CUTOFF {
                continue;
            }
            *self.amps.entry(rest).or_default() -= factor;
            for v in 0..count {
                *self.amps.entry(place(rest, v)).or_default() += factor * inv;
            }
        }
    }

    /// Drops negligible amplitudes and corrects norm drift.
    fn settle(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_CUTOFF);
        let n = self.norm_sqr();
        if (n - 1.0).abs() > RENORM_DRIFT && n > 0.0 {
            self.scale(1.0 / n.sqrt());
        }
    }

    /// Probability distribution of the digits on `wires`, in outcome order.
    pub fn marginal(&self, wires: &[usize]) -> Result<BTreeMap<Vec<u8>, f64>> {
        if wires.is_empty() {
            return Err(Error::Input("no wires to measure".into()));
        }
        for &w in wires {
            self.layout.check_wire(w)?;
        }
        let mut out = BTreeMap::new();
        for (idx, a) in self.entries() {
            let key: Vec<u8> = wires.iter().map(|&w| self.layout.digit(idx, w)).collect();
            *out.entry(key).or_insert(0.0) += a.norm_sqr();
        }
        Ok(out)
    }

    /// Total probability of basis states satisfying `pred`.
    pub fn probability_where(&self, pred: impl Fn(&[u8]) -> bool) -> f64 {
        let mut digits = vec![0u8; self.layout.wires()];
        let mut total = 0.0;
        for (idx, a) in self.entries() {
            for (w, d) in digits.iter_mut().enumerate() {
                *d = self.layout.digit(idx, w);
            }
            if pred(&digits) {
                total += a.norm_sqr();
            }
        }
        total
    }

    /// `<self|other>`; both states must share a layout.
    pub fn inner_product(&self, other: &SparseState) -> Result<Complex64> {
        if self.layout != other.layout {
            return Err(Error::Layout(
                "inner product between different layouts".into(),
            ));
        }
        Ok(self
            .entries()
            .into_iter()
            .map(|(idx, a)| a.conj() * other.amplitude(idx))
            .sum())
    }
}

fn permute(amps: &mut Amplitudes, f: impl Fn(BasisIndex) -> BasisIndex) {
    let old = std::mem::take(amps);
    amps.reserve(old.len());
    for (idx, a) in old {
        amps.insert(f(idx), a);
    }
}

#[inline]
fn shifted(
    lay: &RegisterLayout,
    idx: BasisIndex,
    wire: usize,
    amount: u8,
    modulus: u8,
) -> BasisIndex {
    let d = lay.digit(idx, wire);
    if d >= modulus {
        idx
    } else {
        lay.set_digit(idx, wire, (d + amount) % modulus)
    }
}

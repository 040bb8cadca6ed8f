//! Test-only reference simulator. It builds each gate's local matrix from
//! scratch and applies it to a dense vector, sharing no code with the sparse
//! engine beyond the `GateOp` description itself.
#![allow(dead_code)]

use num_complex::Complex64;
use qudit_match::GateOp;

pub const DENSE_CAP: usize = 4096;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect())
        .collect()
}

/// Local matrix of `op` over its wires (in `op.wires()` order, first wire most
/// significant) given those wires' dimensions.
pub fn local_matrix(op: &GateOp, dims: &[usize]) -> Matrix {
    let size: usize = dims.iter().product();
    let mut m = vec![vec![c(0.0); size]; size];
    let phase = |theta: f64| Complex64::from_polar(1.0, theta);
    let quarter = std::f64::consts::FRAC_PI_4;
    match *op {
        GateOp::Shift {
            amount, modulus, ..
        } => {
            for l in 0..size {
                let out = if l < modulus as usize {
                    (l + amount as usize) % modulus as usize
                } else {
                    l
                };
                m[out][l] = c(1.0);
            }
        }
        GateOp::H { .. } => {
            m = identity(size);
            let h = 1.0 / 2f64.sqrt();
            m[0][0] = c(h);
            m[0][1] = c(h);
            m[1][0] = c(h);
            m[1][1] = c(-h);
        }
        GateOp::T { .. } | GateOp::Tdg { .. } | GateOp::S { .. } | GateOp::Sdg { .. } => {
            m = identity(size);
            m[1][1] = match *op {
                GateOp::T { .. } => phase(quarter),
                GateOp::Tdg { .. } => phase(-quarter),
                GateOp::S { .. } => phase(2.0 * quarter),
                _ => phase(-2.0 * quarter),
            };
        }
        GateOp::ControlledShift {
            level,
            amount,
            modulus,
            ..
        } => {
            let (dc, dt) = (dims[0], dims[1]);
            for a in 0..dc {
                for b in 0..dt {
                    let nb = if a == level as usize && b < modulus as usize {
                        (b + amount as usize) % modulus as usize
                    } else {
                        b
                    };
                    m[a * dt + nb][a * dt + b] = c(1.0);
                }
            }
        }
        GateOp::Swap { .. } => {
            let d = dims[0];
            for a in 0..d {
                for b in 0..d {
                    m[b * d + a][a * d + b] = c(1.0);
                }
            }
        }
        GateOp::UniformInit { len, count, .. } => {
            // Binary value of each local basis state, or None off the binary subspace.
            let value = |mut idx: usize| -> Option<usize> {
                let mut v = 0;
                let mut place = 1;
                for i in (0..len).rev() {
                    let d = idx % dims[i];
                    idx /= dims[i];
                    if d > 1 {
                        return None;
                    }
                    v += d * place;
                    place *= 2;
                }
                Some(v)
            };
            let count = count as usize;
            let u = 1.0 / (count as f64).sqrt();
            let mut w = vec![0.0; size];
            for (i, wi) in w.iter_mut().enumerate() {
                if let Some(v) = value(i) {
                    *wi = if v == 0 { 1.0 } else { 0.0 } - if v < count { u } else { 0.0 };
                }
            }
            let norm: f64 = w.iter().map(|x| x * x).sum();
            m = identity(size);
            if norm > 1e-15 {
                for i in 0..size {
                    for j in 0..size {
                        m[i][j] -= c(2.0 * w[i] * w[j] / norm);
                    }
                }
            }
        }
    }
    m
}

pub fn unitarity_error(m: &Matrix) -> f64 {
    let n = m.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s: Complex64 = (0..n).map(|k| m[k][i].conj() * m[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - want).norm());
        }
    }
    worst
}

#[derive(Debug, Clone)]
pub struct Dense {
    pub dims: Vec<usize>,
    pub amps: Vec<Complex64>,
}

impl Dense {
    pub fn basis(dims: &[u8], digits: &[u8]) -> Dense {
        let dims: Vec<usize> = dims.iter().map(|&d| d as usize).collect();
        let size: usize = dims.iter().product();
        assert!(
            size <= DENSE_CAP,
            "dense reference limited to {DENSE_CAP} amplitudes, got {size}"
        );
        let mut amps = vec![c(0.0); size];
        amps[Self::index_of(&dims, digits)] = c(1.0);
        Dense { dims, amps }
    }

    pub fn index_of(dims: &[usize], digits: &[u8]) -> usize {
        digits
            .iter()
            .zip(dims)
            .fold(0, |acc, (&d, &n)| acc * n + d as usize)
    }

    pub fn digits_of(dims: &[usize], mut idx: usize) -> Vec<u8> {
        let mut out = vec![0u8; dims.len()];
        for w in (0..dims.len()).rev() {
            out[w] = (idx % dims[w]) as u8;
            idx /= dims[w];
        }
        out
    }

    pub fn apply(&mut self, op: &GateOp) {
        let wires = op.wires();
        let ldims: Vec<usize> = wires.iter().map(|&w| self.dims[w]).collect();
        let m = local_matrix(op, &ldims);
        let mut out = vec![c(0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == c(0.0) {
                continue;
            }
            let mut digits = Self::digits_of(&self.dims, i);
            let col = wires
                .iter()
                .zip(&ldims)
                .fold(0, |acc, (&w, &n)| acc * n + digits[w] as usize);
            for (row, mrow) in m.iter().enumerate() {
                let f = mrow[col];
                if f == c(0.0) {
                    continue;
                }
                let mut r = row;
                for (k, &w) in wires.iter().enumerate().rev() {
                    digits[w] = (r % ldims[k]) as u8;
                    r /= ldims[k];
                }
                out[Self::index_of(&self.dims, &digits)] += f * a;
            }
        }
        self.amps = out;
    }

    pub fn apply_all<'a>(&mut self, ops: impl IntoIterator<Item = &'a GateOp>) {
        for op in ops {
            self.apply(op);
        }
    }

    pub fn amplitude(&self, digits: &[u8]) -> Complex64 {
        self.amps[Self::index_of(&self.dims, digits)]
    }
}

/// Grover success per matching offset after `r` iterations with `t` of `k` offsets marked.
pub fn grover_law(r: usize, t: usize, k: usize) -> f64 {
    let theta = ((t as f64) / (k as f64)).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2) / t as f64
}

/// Brute-force occurrences, written independently of the library scan.
pub fn occurrences(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    if pattern.len() > text.len() {
        return out;
    }
    'outer: for k in 0..=text.len() - pattern.len() {
        for (i, &p) in pattern.iter().enumerate() {
            if text[k + i] != p {
                continue 'outer;
            }
        }
        out.push(k);
    }
    out
}

pub fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

pub fn all_bit_strings(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..(1 << n)).map(move |v| (0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect())
}

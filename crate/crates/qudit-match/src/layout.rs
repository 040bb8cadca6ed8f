//! Mixed-radix register layouts and basis-index arithmetic.
//!
//! Wire 0 is the most significant digit. Every wire has dimension 2, 3 or 4.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_DIM: u8 = 4;

/// Position of a computational basis state in the mixed-radix index space.
pub type BasisIndex = u128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Index,
    Text,
    Pattern,
    Ancilla,
    Output,
    /// Plain data wire of a standalone gate decomposition.
    Data,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Index => "index",
            Role::Text => "text",
            Role::Pattern => "pattern",
            Role::Ancilla => "ancilla",
            Role::Output => "output",
            Role::Data => "data",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    dims: Vec<u8>,
    roles: Vec<Role>,
    strides: Vec<BasisIndex>,
    size: BasisIndex,
}

impl RegisterLayout {
    pub fn new(dims: Vec<u8>, roles: Vec<Role>) -> Result<Self> {
        if dims.len() != roles.len() {
            return Err(Error::Layout(format!(
                "{} dimensions given for {} roles",
                dims.len(),
                roles.len()
            )));
        }
        if dims.is_empty() {
            return Err(Error::Layout("a layout needs at least one wire".into()));
        }
        for (w, &d) in dims.iter().enumerate() {
            if !(2..=MAX_DIM).contains(&d) {
                return Err(Error::Layout(format!(
                    "wire {w} has unsupported dimension {d}"
                )));
            }
        }
        let mut strides = vec![0; dims.len()];
        let mut acc: BasisIndex = 1;
        for w in (0..dims.len()).rev() {
            strides[w] = acc;
            acc = acc
                .checked_mul(dims[w] as BasisIndex)
                .ok_or(Error::IndexOverflow)?;
        }
        Ok(Self {
            dims,
            roles,
            strides,
            size: acc,
        })
    }

    /// All wires binary, all tagged as data.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n], vec![Role::Data; n])
    }

    pub fn dims(&self) -> &[u8] {
        &self.dims
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn wires(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, wire: usize) -> u8 {
        self.dims[wire]
    }

    pub fn stride(&self, wire: usize) -> BasisIndex {
        self.strides[wire]
    }

    /// Number of basis states, the product of all wire dimensions.
    pub fn size(&self) -> BasisIndex {
        self.size
    }

    pub fn role(&self, wire: usize) -> Role {
        self.roles[wire]
    }

    pub fn wires_with(&self, role: Role) -> Vec<usize> {
        (0..self.wires())
            .filter(|&w| self.roles[w] == role)
            .collect()
    }

    pub fn count(&self, role: Role) -> usize {
        self.roles.iter().filter(|&&r| r == role).count()
    }

    pub fn check_wire(&self, wire: usize) -> Result<()> {
        if wire < self.wires() {
            Ok(())
        } else {
            Err(Error::WireOutOfRange {
                wire,
                wires: self.wires(),
            })
        }
    }

    /// Same roles, new dimensions.
    pub fn with_dims(&self, dims: Vec<u8>) -> Result<Self> {
        Self::new(dims, self.roles.clone())
    }

    pub fn encode(&self, digits: &[u8]) -> Result<BasisIndex> {
        if digits.len() != self.wires() {
            return Err(Error::Input(format!(
                "expected {} digits, got {}",
                self.wires(),
                digits.len()
            )));
        }
        let mut idx = 0;
        for (w, &v) in digits.iter().enumerate() {
            if v >= self.dims[w] {
                return Err(Error::LevelOutOfRange {
                    wire: w,
                    level: v,
                    dim: self.dims[w],
                });
            }
            idx += v as BasisIndex * self.strides[w];
        }
        Ok(idx)
    }

    pub fn decode(&self, idx: BasisIndex) -> Result<Vec<u8>> {
        if idx >= self.size {
            return Err(Error::Input(format!(
                "basis index {idx} outside a space of {}",
                self.size
            )));
        }
        Ok((0..self.wires()).map(|w| self.digit(idx, w)).collect())
    }

    #[inline]
    pub fn digit(&self, idx: BasisIndex, wire: usize) -> u8 {
        ((idx / self.strides[wire]) % self.dims[wire] as BasisIndex) as u8
    }

    /// Replace the digit on `wire`. The caller guarantees `level < dim(wire)`.
    #[inline]
    pub fn set_digit(&self, idx: BasisIndex, wire: usize, level: u8) -> BasisIndex {
        let s = self.strides[wire];
        let old = self.digit(idx, wire) as BasisIndex;
        idx - old * s + level as BasisIndex * s
    }
}

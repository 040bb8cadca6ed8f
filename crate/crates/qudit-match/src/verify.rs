//! Checks a circuit against a classical reversible reference on binary inputs.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::layout::BasisIndex;
use crate::state::SparseState;

/// Largest number of data wires whose full binary truth table is checked.
pub const MAX_VERIFY_WIRES: usize = 20;
const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum ReferencePermutation {
    /// Bits `(c0, c1, t)`: `t ^= c0 & c1`.
    Toffoli,
    /// Bits `(c, a, b)`: swap `a` and `b` when `c` is set.
    Fredkin,
    /// `controls` control bits followed by one target bit.
    Mct { controls: usize },
}

impl ReferencePermutation {
    pub fn arity(&self) -> usize {
        match self {
            ReferencePermutation::Toffoli | ReferencePermutation::Fredkin => 3,
            ReferencePermutation::Mct { controls } => controls + 1,
        }
    }

    pub fn apply(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = bits.to_vec();
        match self {
            ReferencePermutation::Toffoli => out[2] ^= bits[0] & bits[1],
            ReferencePermutation::Fredkin => {
                if bits[0] == 1 {
                    out.swap(1, 2);
                }
            }
            ReferencePermutation::Mct { controls } => {
                if bits[..*controls].iter().all(|&b| b == 1) {
                    out[*controls] ^= 1;
                }
            }
        }
        out
    }

    /// Positions the reference never changes.
    pub fn preserved(&self) -> Vec<usize> {
        match self {
            ReferencePermutation::Toffoli => vec![0, 1],
            ReferencePermutation::Fredkin => vec![0],
            ReferencePermutation::Mct { controls } => (0..*controls).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Every binary input maps to the reference output.
    pub equivalent: bool,
    /// Largest probability found outside the binary subspace at the end.
    pub leakage: f64,
    /// Controls and ancillas end where they started on every input.
    pub restored: bool,
    /// All inputs pick up the same phase.
    pub phase_consistent: bool,
    pub inputs_checked: usize,
    pub first_failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self, phase_strict: bool) -> bool {
        self.equivalent
            && self.restored
            && self.leakage <= TOL
            && (!phase_strict || self.phase_consistent)
    }
}

/// Runs every binary input of the data wires (all wires not listed in
/// `ancillas`, in ascending order) with ancillas at 0.
pub fn verify_on_binary_subspace(
    c: &Circuit,
    p: &ReferencePermutation,
    ancillas: &[usize],
    phase_strict: bool,
) -> Result<VerificationReport> {
    let lay = c.layout();
    for &a in ancillas {
        lay.check_wire(a)?;
    }
    let data: Vec<usize> = (0..lay.wires()).filter(|w| !ancillas.contains(w)).collect();
    if data.len() != p.arity() {
        return Err(Error::Input(format!(
            "reference acts on {} bits but the circuit has {} data wires",
            p.arity(),
            data.len()
        )));
    }
    if data.len() > MAX_VERIFY_WIRES {
        return Err(Error::Budget(format!(
            "{} data wires exceed the verification limit of {MAX_VERIFY_WIRES}",
            data.len()
        )));
    }
    let keep = p.preserved();
    let mut report = VerificationReport {
        equivalent: true,
        leakage: 0.0,
        restored: true,
        phase_consistent: true,
        inputs_checked: 0,
        first_failure: None,
    };
    let mut ref_phase: Option<Complex64> = None;
    let fail = |report: &mut VerificationReport, msg: String| {
        if report.first_failure.is_none() {
            report.first_failure = Some(msg);
        }
    };

    for x in 0u64..(1u64 << data.len()) {
        let bits: Vec<u8> = (0..data.len())
            .map(|i| ((x >> (data.len() - 1 - i)) & 1) as u8)
            .collect();
        let mut digits = vec![0u8; lay.wires()];
        for (i, &w) in data.iter().enumerate() {
            digits[w] = bits[i];
        }
        let mut st = SparseState::basis(lay.clone(), &digits)?;
        st.apply_all(c.ops())?;

        let want_bits = p.apply(&bits);
        let mut want = vec![0u8; lay.wires()];
        for (i, &w) in data.iter().enumerate() {
            want[w] = want_bits[i];
        }
        let want_idx: BasisIndex = lay.encode(&want)?;
        let amp = st.amplitude(want_idx);

        let leak = st.probability_where(|d| d.iter().any(|&v| v > 1));
        report.leakage = report.leakage.max(leak);
        if amp.norm_sqr() < 1.0 - TOL {
            report.equivalent = false;
            fail(
                &mut report,
                format!("input {bits:?} does not reach {want_bits:?}"),
            );
        }
        let kept = st.probability_where(|d| {
            keep.iter().all(|&i| d[data[i]] == bits[i]) && ancillas.iter().all(|&a| d[a] == 0)
        });
        if kept < 1.0 - TOL {
            report.restored = false;
            fail(
                &mut report,
                format!("input {bits:?} leaves a control or ancilla changed"),
            );
        }
        match ref_phase {
            None => ref_phase = Some(amp),
            Some(r) => {
                if (amp - r).norm() > 1e-7 {
                    report.phase_consistent = false;
                    if phase_strict {
                        fail(
                            &mut report,
                            format!("input {bits:?} picks up a different phase"),
                        );
                    }
                }
            }
        }
        report.inputs_checked += 1;
    }
    Ok(report)
}

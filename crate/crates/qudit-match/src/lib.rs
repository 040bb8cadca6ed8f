//! Sparse mixed-radix circuit simulation, qudit-assisted gate decompositions
//! and a Grover-style binary string matcher built from them.
//!
//! Wires are qubits that decompositions may temporarily widen to qutrits or
//! ququarts. Inputs and outputs stay binary.

pub mod circuit;
pub mod decompose;
pub mod error;
pub mod gate;
pub mod layout;
pub mod matching;
pub mod resources;
pub mod state;
pub mod verify;

pub use circuit::{infer_dims, Circuit, CostReport};
pub use error::{Error, Result};
pub use gate::{Category, GateOp};
pub use layout::{BasisIndex, RegisterLayout, Role};
pub use matching::{classical_match, run_match, MatchProblem, MatchResult};
pub use state::SparseState;
pub use verify::{verify_on_binary_subspace, ReferencePermutation, VerificationReport};

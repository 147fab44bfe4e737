//! Simulation core for code-switching magic-state preparation.
//!
//! A flagged `|+⟩` preparation on the 15-qubit quantum Reed-Muller code is
//! sampled with a Pauli-frame engine, the transversal `T` layer is folded into
//! a Clifford error frame, and the state is teleported into the Steane code
//! where an exact stabilizer tableau evaluates the logical observables.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circuit;
pub mod circuits;
pub mod codes;
pub mod error;
pub mod estimate;
pub mod faults;
pub mod frame;
pub mod gate;
pub mod noise;
pub mod pauli;
pub mod protocol;
pub mod reduction;
pub mod rng;
pub mod tableau;

pub use circuit::{Basis, Circuit, Instruction, Record, Role};
pub use codes::{CssCode, DecoderTable, StabilizerType};
pub use error::Error;
pub use estimate::{Estimate, Tally};
pub use frame::{FaultTable, FrameProgram, FrameSample};
pub use gate::Gate;
pub use noise::{LocationKind, NoiseKind, NoiseLocation, NoiseModel, NoisyCircuit};
pub use pauli::{PauliKind, PauliOperator, SignedPauli};
pub use protocol::{DecompositionState, Mode, Protocol, ShotRecord};
pub use reduction::{CliffordFrame, FrameReducer, TieBreak};
pub use tableau::{Measurement, Tableau};

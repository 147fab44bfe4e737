//! Circuit-level depolarizing noise.
//!
//! Every preparation, gate and measurement is one noise location:
//!
//! | operation | fault                 | when   |
//! |-----------|-----------------------|--------|
//! | `PREP_Z`  | `X` w.p. `p_i`        | after  |
//! | `PREP_X`  | `Z` w.p. `p_i`        | after  |
//! | `MEAS_Z`  | `X` w.p. `p_m`        | before |
//! | `MEAS_X`  | `Z` w.p. `p_m`        | before |
//! | 1q gate   | `X`,`Y`,`Z` w.p. `p_1/3` each | after |
//! | CNOT      | 15 two-qubit Paulis w.p. `p_2/15` each | after |

use alloc::vec::Vec;

use crate::circuit::{Basis, Circuit, Instruction};
use crate::error::Error;
use crate::gate::Gate;
use crate::pauli::PauliKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    Uniform,
    Multiparameter,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub p_i: f64,
    pub p_m: f64,
    pub p_1: f64,
    pub p_2: f64,
}

fn check(name: &'static str, value: f64) -> Result<f64, Error> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Probability { name, value })
    }
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self {
            kind: NoiseKind::Uniform,
            p_i: 0.0,
            p_m: 0.0,
            p_1: 0.0,
            p_2: 0.0,
        }
    }

    pub fn uniform(p: f64) -> Result<Self, Error> {
        let p = check("p", p)?;
        Ok(Self {
            kind: NoiseKind::Uniform,
            p_i: p,
            p_m: p,
            p_1: p,
            p_2: p,
        })
    }

    pub fn multiparameter(p_i: f64, p_m: f64, p_1: f64, p_2: f64) -> Result<Self, Error> {
        Ok(Self {
            kind: NoiseKind::Multiparameter,
            p_i: check("p_i", p_i)?,
            p_m: check("p_m", p_m)?,
            p_1: check("p_1", p_1)?,
            p_2: check("p_2", p_2)?,
        })
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_i == 0.0 && self.p_m == 0.0 && self.p_1 == 0.0 && self.p_2 == 0.0
    }

    pub fn probability(&self, kind: LocationKind) -> f64 {
        match kind {
            LocationKind::PrepZ | LocationKind::PrepX => self.p_i,
            LocationKind::MeasZ | LocationKind::MeasX => self.p_m,
            LocationKind::Gate1 => self.p_1,
            LocationKind::Gate2 => self.p_2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocationKind {
    PrepZ,
    PrepX,
    MeasZ,
    MeasX,
    Gate1,
    Gate2,
}

impl LocationKind {
    /// Number of distinct non-identity faults.
    pub fn options(&self) -> usize {
        match self {
            LocationKind::Gate1 => 3,
            LocationKind::Gate2 => 15,
            _ => 1,
        }
    }

    /// Measurement faults act before the operation, all others after.
    pub fn before(&self) -> bool {
        matches!(self, LocationKind::MeasZ | LocationKind::MeasX)
    }
}

const KINDS: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseLocation {
    pub instruction: usize,
    pub kind: LocationKind,
    pub qubits: (usize, Option<usize>),
    pub probability: f64,
}

impl NoiseLocation {
    pub fn options(&self) -> usize {
        self.kind.options()
    }

    /// Pauli letters of fault `option` on the first and second qubit.
    pub fn fault_kinds(&self, option: usize) -> (PauliKind, PauliKind) {
        debug_assert!(option < self.options());
        match self.kind {
            LocationKind::PrepZ | LocationKind::MeasZ => (PauliKind::X, PauliKind::I),
            LocationKind::PrepX | LocationKind::MeasX => (PauliKind::Z, PauliKind::I),
            LocationKind::Gate1 => (KINDS[option + 1], PauliKind::I),
            LocationKind::Gate2 => (KINDS[(option + 1) / 4], KINDS[(option + 1) % 4]),
        }
    }

    /// Fault `option` as `(x_mask, z_mask)`.
    #[inline]
    pub fn fault_masks(&self, option: usize) -> (u64, u64) {
        let (a, b) = self.fault_kinds(option);
        let (ax, az) = a.bits();
        let (mut x, mut z) = ((ax as u64) << self.qubits.0, (az as u64) << self.qubits.0);
        if let Some(q) = self.qubits.1 {
            let (bx, bz) = b.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        (x, z)
    }

    /// Option index matching the given masks, if any.
    pub fn option_for(&self, x: u64, z: u64) -> Option<usize> {
        (0..self.options()).find(|&o| self.fault_masks(o) == (x, z))
    }
}

/// Enumerates the noise locations of `circuit` with strengths from `noise`.
pub fn locations(circuit: &Circuit, noise: &NoiseModel) -> Vec<NoiseLocation> {
    let mut out = Vec::new();
    for (i, inst) in circuit.instructions().iter().enumerate() {
        let (kind, qubits) = match inst {
            Instruction::Prep { qubit, basis } => (
                if *basis == Basis::Z {
                    LocationKind::PrepZ
                } else {
                    LocationKind::PrepX
                },
                (*qubit, None),
            ),
            Instruction::Measure { qubit, basis, .. } => (
                if *basis == Basis::Z {
                    LocationKind::MeasZ
                } else {
                    LocationKind::MeasX
                },
                (*qubit, None),
            ),
            Instruction::Gate(Gate::Cnot(c, t)) => (LocationKind::Gate2, (*c, Some(*t))),
            Instruction::Gate(g) => (LocationKind::Gate1, (g.qubits().0, None)),
            Instruction::Conditional { .. } => continue,
        };
        out.push(NoiseLocation {
            instruction: i,
            kind,
            qubits,
            probability: noise.probability(kind),
        });
    }
    out
}

/// A circuit paired with its annotated noise locations.
#[derive(Clone, Debug)]
pub struct NoisyCircuit {
    pub circuit: Circuit,
    pub noise: NoiseModel,
    pub locations: Vec<NoiseLocation>,
}

pub fn add_noise(circuit: &Circuit, noise: &NoiseModel) -> NoisyCircuit {
    NoisyCircuit {
        circuit: circuit.clone(),
        noise: *noise,
        locations: locations(circuit, noise),
    }
}

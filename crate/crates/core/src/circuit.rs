//! Circuit IR and its line-based text form.
//!
//! Text format, one instruction per line, qubits labeled from 1:
//!
//! ```text
//! # comment
//! qubits 8
//! PREP_Z 2
//! PREP_X 1
//! CNOT 1 2
//! MEAS_Z 8 verification zbar
//! IF 0 Z3 Z4
//! ```
//!
//! An optional `inputs 1 2 …` line lists qubits that arrive already prepared.
//! `MEAS_Z`/`MEAS_X` take a role (`flag`, `verification`, `syndrome`,
//! `teleport`, `tomography`) and an optional label. Measurement records are
//! numbered from 0 in program order; `IF r P` applies `P` when record `r` reads −1.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::gate::Gate;
use crate::pauli::{PauliOperator, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

/// Purpose of a measurement record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Flag,
    Verification,
    Syndrome,
    TeleportReadout,
    Tomography,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::Flag => "flag",
            Role::Verification => "verification",
            Role::Syndrome => "syndrome",
            Role::TeleportReadout => "teleport",
            Role::Tomography => "tomography",
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "flag" => Role::Flag,
            "verification" => Role::Verification,
            "syndrome" => Role::Syndrome,
            "teleport" => Role::TeleportReadout,
            "tomography" => Role::Tomography,
            _ => return Err(Error::Parse(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Prep { qubit: usize, basis: Basis },
    Gate(Gate),
    Measure { qubit: usize, basis: Basis, record: usize },
    /// Applies `pauli` when `record` reads −1.
    Conditional { record: usize, pauli: PauliOperator },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub qubit: usize,
    pub basis: Basis,
    pub role: Role,
    pub label: Option<String>,
    /// Index of the producing instruction.
    pub instruction: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    instructions: Vec<Instruction>,
    records: Vec<Record>,
    prepared: u64,
    inputs: u64,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        Ok(Self {
            n,
            instructions: Vec::new(),
            records: Vec::new(),
            prepared: 0,
            inputs: 0,
        })
    }

    /// Circuit whose qubits in `inputs` (bit mask) arrive already prepared.
    pub fn with_inputs(n: usize, inputs: u64) -> Result<Self, Error> {
        let mut c = Self::new(n)?;
        if inputs & !crate::pauli::mask_for(n) != 0 {
            return Err(Error::QubitOutOfRange {
                qubit: 63 - inputs.leading_zeros() as usize,
                n,
            });
        }
        c.prepared = inputs;
        c.inputs = inputs;
        Ok(c)
    }

    /// Mask of qubits treated as prepared on entry.
    pub fn inputs(&self) -> u64 {
        self.inputs
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    fn check_qubit(&self, q: usize) -> Result<(), Error> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        Ok(())
    }

    fn check_prepared(&self, q: usize) -> Result<(), Error> {
        self.check_qubit(q)?;
        if self.prepared >> q & 1 == 0 {
            return Err(Error::InvalidGate("qubit used before preparation"));
        }
        Ok(())
    }

    pub fn prep(&mut self, qubit: usize, basis: Basis) -> Result<(), Error> {
        self.check_qubit(qubit)?;
        self.prepared |= 1 << qubit;
        self.instructions.push(Instruction::Prep { qubit, basis });
        Ok(())
    }

    pub fn prep_z(&mut self, qubit: usize) -> Result<(), Error> {
        self.prep(qubit, Basis::Z)
    }

    pub fn prep_x(&mut self, qubit: usize) -> Result<(), Error> {
        self.prep(qubit, Basis::X)
    }

    pub fn gate(&mut self, gate: Gate) -> Result<(), Error> {
        gate.check(self.n)?;
        let (a, b) = gate.qubits();
        self.check_prepared(a)?;
        if let Some(b) = b {
            self.check_prepared(b)?;
        }
        self.instructions.push(Instruction::Gate(gate));
        Ok(())
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<(), Error> {
        self.gate(Gate::Cnot(control, target))
    }

    /// Appends a measurement and returns its record index.
    pub fn measure(
        &mut self,
        qubit: usize,
        basis: Basis,
        role: Role,
        label: Option<&str>,
    ) -> Result<usize, Error> {
        self.check_prepared(qubit)?;
        let record = self.records.len();
        self.records.push(Record {
            qubit,
            basis,
            role,
            label: label.map(String::from),
            instruction: self.instructions.len(),
        });
        self.instructions.push(Instruction::Measure {
            qubit,
            basis,
            record,
        });
        Ok(record)
    }

    pub fn conditional(&mut self, record: usize, pauli: PauliOperator) -> Result<(), Error> {
        if record >= self.records.len() {
            return Err(Error::InvalidRecord(record));
        }
        if pauli.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: pauli.n(),
            });
        }
        self.instructions
            .push(Instruction::Conditional { record, pauli });
        Ok(())
    }

    /// Appends `other` with its qubit `i` placed on `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<(), Error> {
        if map.len() != other.n {
            return Err(Error::SizeMismatch {
                left: map.len(),
                right: other.n,
            });
        }
        let base = self.records.len();
        for inst in &other.instructions {
            match inst {
                Instruction::Prep { qubit, basis } => self.prep(map[*qubit], *basis)?,
                Instruction::Gate(g) => self.gate(g.map_qubits(|q| map[q]))?,
                Instruction::Measure { record, .. } => {
                    let r = &other.records[*record];
                    self.measure(map[r.qubit], r.basis, r.role, r.label.as_deref())?;
                }
                Instruction::Conditional { record, pauli } => {
                    let (mut x, mut z) = (0u64, 0u64);
                    for q in 0..other.n {
                        x |= (pauli.x_mask() >> q & 1) << map[q];
                        z |= (pauli.z_mask() >> q & 1) << map[q];
                    }
                    self.conditional(base + record, PauliOperator::from_masks(self.n, x, z)?)?;
                }
            }
        }
        Ok(())
    }

    /// Number of preparation, gate and measurement instructions.
    pub fn operation_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| !matches!(i, Instruction::Conditional { .. }))
            .count()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::CircuitText { line, message };
            let mut words = content.split_whitespace();
            let head = words.next().unwrap_or_default();
            if head == "qubits" {
                if circuit.is_some() {
                    return Err(err("duplicate qubits header".into()));
                }
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("expected qubit count".into()))?;
                circuit = Some(Circuit::new(n).map_err(|e| err(e.to_string()))?);
                continue;
            }
            if head == "inputs" {
                let c = circuit
                    .as_mut()
                    .ok_or_else(|| err("missing `qubits N` header".into()))?;
                let mut mask = 0u64;
                for w in words {
                    match w.parse::<usize>() {
                        Ok(l) if (1..=c.n).contains(&l) => mask |= 1 << (l - 1),
                        _ => return Err(err(format!("bad qubit label `{w}`"))),
                    }
                }
                c.prepared |= mask;
                c.inputs |= mask;
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err("missing `qubits N` header".into()))?;
            let rest: Vec<&str> = words.collect();
            let label = |w: &str| -> Result<usize, Error> {
                match w.parse::<usize>() {
                    Ok(l) if l >= 1 => Ok(l - 1),
                    _ => Err(err(format!("bad qubit label `{w}`"))),
                }
            };
            let result = match head {
                "PREP_Z" | "PREP_X" => {
                    let [q] = rest[..] else {
                        return Err(err("expected one qubit".into()));
                    };
                    let basis = if head == "PREP_Z" { Basis::Z } else { Basis::X };
                    c.prep(label(q)?, basis)
                }
                "MEAS_Z" | "MEAS_X" => {
                    let basis = if head == "MEAS_Z" { Basis::Z } else { Basis::X };
                    let (q, role, tag) = match rest[..] {
                        [q, r] => (q, r, None),
                        [q, r, t] => (q, r, Some(t)),
                        _ => return Err(err("expected qubit, role and optional label".into())),
                    };
                    let role: Role = role.parse().map_err(|e: Error| err(e.to_string()))?;
                    c.measure(label(q)?, basis, role, tag).map(|_| ())
                }
                "IF" => {
                    let (r, p) = rest
                        .split_first()
                        .ok_or_else(|| err("expected record and pauli".into()))?;
                    let record: usize =
                        r.parse().map_err(|_| err(format!("bad record `{r}`")))?;
                    let pauli = PauliOperator::parse(c.n_qubits(), &p.join(" "))
                        .map_err(|e| err(e.to_string()))?;
                    c.conditional(record, pauli)
                }
                name => {
                    let qubits = rest
                        .iter()
                        .map(|w| label(w))
                        .collect::<Result<Vec<_>, _>>()?;
                    Gate::from_mnemonic(name, &qubits).and_then(|g| c.gate(g))
                }
            };
            result.map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::CircuitText {
            line: 0,
            message: "empty circuit".into(),
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        if self.inputs != 0 {
            f.write_str("inputs")?;
            for q in 0..self.n {
                if self.inputs >> q & 1 == 1 {
                    write!(f, " {}", q + 1)?;
                }
            }
            writeln!(f)?;
        }
        for inst in &self.instructions {
            match inst {
                Instruction::Prep { qubit, basis } => {
                    let b = if *basis == Basis::Z { "Z" } else { "X" };
                    writeln!(f, "PREP_{b} {}", qubit + 1)?;
                }
                Instruction::Gate(g) => writeln!(f, "{g}")?,
                Instruction::Measure { record, .. } => {
                    let r = &self.records[*record];
                    let b = if r.basis == Basis::Z { "Z" } else { "X" };
                    write!(f, "MEAS_{b} {} {}", r.qubit + 1, r.role.as_str())?;
                    match &r.label {
                        Some(l) => writeln!(f, " {l}")?,
                        None => writeln!(f)?,
                    }
                }
                Instruction::Conditional { record, pauli } => writeln!(f, "IF {record} {pauli}")?,
            }
        }
        Ok(())
    }
}

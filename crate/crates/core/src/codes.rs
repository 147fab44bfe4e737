//! Steane `[[7,1,3]]` and quantum Reed-Muller `[[15,1,3]]` codes.
//!
//! Qubits are 0-based in the API; the tables below use the 1-based labels of
//! the usual color-code drawings.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::gate::Gate;
use crate::pauli::{PauliKind, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerType {
    X,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub name: &'static str,
    pub n: usize,
    pub z_stabilizers: Vec<PauliOperator>,
    pub x_stabilizers: Vec<PauliOperator>,
    /// Indices into `z_stabilizers` of an independent generating set.
    pub measured_z: Vec<usize>,
    /// Index sets into `z_stabilizers` whose products are the identity.
    pub constraints: Vec<Vec<usize>>,
    pub logical_z: PauliOperator,
    pub logical_x: PauliOperator,
    pub d_x: usize,
    pub d_z: usize,
}

const STEANE_PLAQUETTES: [[usize; 4]; 3] = [[1, 2, 6, 7], [2, 3, 4, 7], [4, 5, 6, 7]];

const QRM_PLAQUETTES: [[usize; 4]; 18] = [
    [1, 2, 6, 7],
    [2, 3, 4, 7],
    [4, 5, 6, 7],
    [1, 6, 8, 13],
    [1, 2, 8, 9],
    [2, 3, 9, 10],
    [3, 4, 10, 11],
    [4, 5, 11, 12],
    [5, 6, 12, 13],
    [6, 7, 13, 14],
    [2, 7, 9, 14],
    [4, 7, 11, 14],
    [8, 12, 13, 15],
    [8, 9, 10, 15],
    [10, 11, 12, 15],
    [8, 9, 13, 14],
    [9, 10, 11, 14],
    [11, 12, 13, 14],
];

const QRM_CELLS: [[usize; 8]; 4] = [
    [1, 2, 6, 7, 8, 9, 13, 14],
    [4, 5, 6, 7, 11, 12, 13, 14],
    [2, 3, 4, 7, 9, 10, 11, 14],
    [8, 9, 10, 11, 12, 13, 14, 15],
];

/// Plaquette labels `p_k` (1-based) of the ten measured qRM generators.
pub const QRM_MEASURED: [usize; 10] = [1, 2, 3, 7, 8, 9, 13, 16, 17, 18];

const QRM_CONSTRAINTS: [[usize; 4]; 8] = [
    [4, 5, 10, 11],
    [1, 5, 10, 16],
    [8, 9, 10, 12],
    [3, 8, 10, 18],
    [6, 7, 11, 12],
    [2, 6, 12, 17],
    [13, 15, 16, 17],
    [14, 15, 16, 18],
];

fn labels(n: usize, kind: PauliKind, l: &[usize]) -> PauliOperator {
    PauliOperator::on_labels(n, kind, l).expect("static code table")
}

/// Steane code with Z-plaquettes `p1..p3` and X-plaquettes `p4..p6`.
pub fn build_steane() -> CssCode {
    CssCode {
        name: "steane",
        n: 7,
        z_stabilizers: STEANE_PLAQUETTES
            .iter()
            .map(|p| labels(7, PauliKind::Z, p))
            .collect(),
        x_stabilizers: STEANE_PLAQUETTES
            .iter()
            .map(|p| labels(7, PauliKind::X, p))
            .collect(),
        measured_z: alloc::vec![0, 1, 2],
        constraints: Vec::new(),
        logical_z: labels(7, PauliKind::Z, &[1, 2, 3]),
        logical_x: labels(7, PauliKind::X, &[1, 2, 3]),
        d_x: 3,
        d_z: 3,
    }
}

/// qRM code: 18 Z-plaquettes, 4 X-cells, `Z̄ = Z1Z2Z3`, `X̄ = X1…X7`.
pub fn build_qrm() -> CssCode {
    CssCode {
        name: "qrm",
        n: 15,
        z_stabilizers: QRM_PLAQUETTES
            .iter()
            .map(|p| labels(15, PauliKind::Z, p))
            .collect(),
        x_stabilizers: QRM_CELLS
            .iter()
            .map(|c| labels(15, PauliKind::X, c))
            .collect(),
        measured_z: QRM_MEASURED.iter().map(|k| k - 1).collect(),
        constraints: QRM_CONSTRAINTS
            .iter()
            .map(|c| c.iter().map(|k| k - 1).collect())
            .collect(),
        logical_z: labels(15, PauliKind::Z, &[1, 2, 3]),
        logical_x: labels(15, PauliKind::X, &[1, 2, 3, 4, 5, 6, 7]),
        d_x: 7,
        d_z: 3,
    }
}

/// Rank over GF(2) of a set of operators, viewed as `2n`-bit symplectic vectors.
pub fn gf2_rank(ops: &[PauliOperator]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for op in ops {
        let mut v = (op.x_mask() as u128) << 64 | op.z_mask() as u128;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

impl CssCode {
    pub fn stabilizers(&self, which: StabilizerType) -> &[PauliOperator] {
        match which {
            StabilizerType::X => &self.x_stabilizers,
            StabilizerType::Z => &self.z_stabilizers,
        }
    }

    /// Bit `i` set iff `error` anticommutes with stabilizer `i` of the given type.
    pub fn syndrome(&self, error: &PauliOperator, which: StabilizerType) -> u64 {
        self.stabilizers(which)
            .iter()
            .enumerate()
            .fold(0, |acc, (i, s)| {
                acc | ((!s.commutes_unchecked(error)) as u64) << i
            })
    }

    /// Syndrome against the measured Z generators only.
    pub fn measured_z_syndrome(&self, error: &PauliOperator) -> u64 {
        self.measured_z.iter().enumerate().fold(0, |acc, (i, &k)| {
            acc | ((!self.z_stabilizers[k].commutes_unchecked(error)) as u64) << i
        })
    }

    pub fn measured_z_generators(&self) -> Vec<PauliOperator> {
        self.measured_z.iter().map(|&k| self.z_stabilizers[k]).collect()
    }

    /// Checks commutation structure, constraints and generator rank.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        for x in &self.x_stabilizers {
            if self.z_stabilizers.iter().any(|z| !x.commutes_unchecked(z)) {
                return Err("x and z stabilizers anticommute");
            }
        }
        for l in [&self.logical_x, &self.logical_z] {
            let all = self.x_stabilizers.iter().chain(&self.z_stabilizers);
            if all.clone().any(|s| !s.commutes_unchecked(l)) {
                return Err("logical operator anticommutes with a stabilizer");
            }
        }
        if self.logical_x.commutes_unchecked(&self.logical_z) {
            return Err("logical x and z commute");
        }
        for c in &self.constraints {
            let prod = c
                .iter()
                .fold(PauliOperator::raw(self.n, 0, 0), |a, &k| a * self.z_stabilizers[k]);
            if !prod.is_identity() {
                return Err("constraint product is not the identity");
            }
        }
        let gens = self.measured_z_generators();
        let rz = gf2_rank(&self.z_stabilizers);
        if gf2_rank(&gens) != rz {
            return Err("measured generators do not span the z stabilizers");
        }
        if rz + gf2_rank(&self.x_stabilizers) + 1 != self.n {
            return Err("stabilizer count does not leave one logical qubit");
        }
        Ok(())
    }

    /// Human-readable stabilizer listing.
    pub fn listing(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} [[{},1,{}]]", self.name, self.n, self.d_x.min(self.d_z));
        for (i, z) in self.z_stabilizers.iter().enumerate() {
            let mark = if self.measured_z.contains(&i) { " *" } else { "" };
            let _ = writeln!(s, "Z{:<3} {z}{mark}", i + 1);
        }
        for (i, x) in self.x_stabilizers.iter().enumerate() {
            let _ = writeln!(s, "X{:<3} {x}", i + 1);
        }
        let _ = writeln!(s, "Zbar {}", self.logical_z);
        let _ = writeln!(s, "Xbar {}", self.logical_x);
        s
    }
}

/// Syndrome-to-qubit lookup for a perfect distance-3 code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderTable {
    n: usize,
    entries: Vec<Option<usize>>,
}

impl DecoderTable {
    /// Table over the Z-stabilizer syndromes of single-qubit X errors.
    pub fn build(code: &CssCode) -> Self {
        let m = code.z_stabilizers.len();
        let mut entries = alloc::vec![None; 1 << m];
        for q in (0..code.n).rev() {
            let e = PauliOperator::raw(code.n, 1 << q, 0);
            let s = code.syndrome(&e, StabilizerType::Z) as usize;
            entries[s] = Some(q);
        }
        entries[0] = None;
        Self { n: code.n, entries }
    }

    /// Qubit to correct for `syndrome`, or `None` for the trivial syndrome.
    pub fn decode(&self, syndrome: u64) -> Option<usize> {
        self.entries.get(syndrome as usize).copied().flatten()
    }

    pub fn correction(&self, syndrome: u64, kind: PauliKind) -> PauliOperator {
        match self.decode(syndrome) {
            Some(q) => PauliOperator::single(self.n, q, kind).expect("qubit in range"),
            None => PauliOperator::raw(self.n, 0, 0),
        }
    }
}

/// Steane Z-correction for a 3-bit X-plaquette syndrome.
pub fn steane_decode(syndrome: u64) -> PauliOperator {
    DecoderTable::build(&build_steane()).correction(syndrome, PauliKind::Z)
}

/// `S̄`: `S` on odd-labeled qubits, `S†` on even-labeled ones.
pub fn qrm_s_bar() -> Vec<Gate> {
    (0..15)
        .map(|q| if q % 2 == 0 { Gate::S(q) } else { Gate::Sdg(q) })
        .collect()
}

pub fn qrm_s_bar_dag() -> Vec<Gate> {
    qrm_s_bar().iter().map(Gate::inverse).collect()
}

/// `T̄` pattern: `(qubit, daggered)`, `T` on odd labels and `T†` on even labels.
pub fn qrm_t_bar() -> Vec<(usize, bool)> {
    (0..15).map(|q| (q, q % 2 == 1)).collect()
}

/// Gates of a Pauli operator, applied at `offset`.
pub fn pauli_gates(p: &PauliOperator, offset: usize) -> Vec<Gate> {
    (0..p.n())
        .filter_map(|q| match p.kind(q) {
            PauliKind::I => None,
            PauliKind::X => Some(Gate::X(q + offset)),
            PauliKind::Y => Some(Gate::Y(q + offset)),
            PauliKind::Z => Some(Gate::Z(q + offset)),
        })
        .collect()
}

/// Transversal CNOT from qRM qubit `i` to Steane qubit `i`, `i = 1..7`.
pub fn logical_cnot(qrm_offset: usize, steane_offset: usize) -> Vec<Gate> {
    (0..7)
        .map(|i| Gate::Cnot(qrm_offset + i, steane_offset + i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_invariants_hold() {
        build_steane().check_invariants().unwrap();
        build_qrm().check_invariants().unwrap();
    }

    #[test]
    fn qrm_counts() {
        let q = build_qrm();
        assert_eq!(gf2_rank(&q.z_stabilizers), 10);
        assert_eq!(q.constraints.len(), 8);
        assert_eq!(q.logical_x.weight(), 7);
        let gamma1 = [3usize, 4, 9, 10]
            .iter()
            .fold(PauliOperator::identity(15).unwrap(), |a, &k| a * q.z_stabilizers[k]);
        assert!(gamma1.is_identity());
    }

    #[test]
    fn syndromes() {
        let q = build_qrm();
        let z15 = PauliOperator::parse(15, "Z15").unwrap();
        assert_eq!(q.syndrome(&z15, StabilizerType::X), 0b1000);
        assert_eq!(q.syndrome(&PauliOperator::identity(15).unwrap(), StabilizerType::X), 0);
        let s = build_steane();
        let z2 = PauliOperator::parse(7, "Z2").unwrap();
        assert_eq!(s.syndrome(&z2, StabilizerType::X), 0b011);
    }

    #[test]
    fn steane_decoder() {
        assert!(steane_decode(0).is_identity());
        assert_eq!(steane_decode(0b001), PauliOperator::parse(7, "Z1").unwrap());
        assert_eq!(steane_decode(0b111), PauliOperator::parse(7, "Z7").unwrap());
        let s = build_steane();
        for q in 0..7 {
            let e = PauliOperator::raw(7, 0, 1 << q);
            assert_eq!(steane_decode(s.syndrome(&e, StabilizerType::X)), e);
        }
    }

    #[test]
    fn every_single_z_error_is_detected_by_measured_generators() {
        let q = build_qrm();
        for i in 0..15 {
            let e = PauliOperator::raw(15, 1 << i, 0);
            assert_ne!(q.measured_z_syndrome(&e), 0);
        }
    }

    #[test]
    fn listing_names_measured_generators() {
        let l = build_qrm().listing();
        assert!(l.contains("Z13  Z8 Z12 Z13 Z15 *"));
        assert!(l.contains("Xbar X1 X2 X3 X4 X5 X6 X7"));
    }
}

//! Builders for the encoding, verification and flagged extraction circuits.

use alloc::vec::Vec;

use crate::circuit::{Basis, Circuit, Role};
use crate::codes::build_qrm;
use crate::error::Error;

/// Steane `|0̄⟩` on 7 data qubits plus a verification ancilla (qubit 8).
///
/// The ancilla measures `Z3 Z6 Z7`, a representative of `Z̄`.
pub fn steane_zero_prep() -> Circuit {
    build_steane_prep().expect("static circuit")
}

fn build_steane_prep() -> Result<Circuit, Error> {
    let mut c = Circuit::new(8)?;
    for q in [1, 3, 5] {
        c.prep_x(q - 1)?;
    }
    for q in [2, 4, 6, 7, 8] {
        c.prep_z(q - 1)?;
    }
    let cnots = [
        (3, 4),
        (3, 2),
        (5, 4),
        (1, 2),
        (5, 6),
        (2, 7),
        (5, 7),
        (1, 6),
        (3, 8),
        (7, 8),
        (6, 8),
    ];
    for (a, b) in cnots {
        c.cnot(a - 1, b - 1)?;
    }
    c.measure(7, Basis::Z, Role::Verification, Some("zbar"))?;
    Ok(c)
}

/// qRM `|+̄⟩` on 15 data qubits plus a verification ancilla (qubit 16).
///
/// The ancilla measures `X2 X4 X6 X8 X10 X12 X14 = X̄ c1 c2 c3`.
pub fn qrm_plus_prep() -> Circuit {
    build_qrm_prep(16).expect("static circuit")
}

const QRM_ENCODER: [(usize, usize); 25] = [
    (7, 4),
    (11, 12),
    (7, 2),
    (11, 10),
    (13, 12),
    (14, 7),
    (14, 11),
    (13, 8),
    (4, 3),
    (14, 8),
    (8, 1),
    (12, 15),
    (9, 8),
    (11, 15),
    (14, 6),
    (9, 2),
    (11, 4),
    (7, 6),
    (9, 10),
    (2, 1),
    (12, 5),
    (6, 5),
    (10, 15),
    (10, 3),
    (13, 6),
];

fn build_qrm_prep(n: usize) -> Result<Circuit, Error> {
    let mut c = Circuit::new(n)?;
    for q in 1..=16 {
        if [7, 9, 11, 13, 14, 16].contains(&q) {
            c.prep_x(q - 1)?;
        } else {
            c.prep_z(q - 1)?;
        }
    }
    for (a, b) in QRM_ENCODER {
        c.cnot(a - 1, b - 1)?;
    }
    for t in [2, 4, 6, 8, 10, 12, 14] {
        c.cnot(15, t - 1)?;
    }
    c.measure(15, Basis::X, Role::Verification, Some("xbar"))?;
    Ok(c)
}

/// Template slot holding an ancilla or flag rather than a data qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Data(usize),
    Anc(usize),
    Flag,
}

use Slot::{Anc, Data, Flag};

/// Two plaquettes `A = {1,2,6,7}`, `B = {4,5,6,7}` with one flag.
const PAIR_TEMPLATE: [(Slot, Slot); 10] = [
    (Data(7), Anc(0)),
    (Flag, Anc(0)),
    (Data(6), Anc(0)),
    (Anc(0), Anc(1)),
    (Data(2), Anc(0)),
    (Data(1), Anc(0)),
    (Data(4), Anc(1)),
    (Data(5), Anc(1)),
    (Flag, Anc(0)),
    (Flag, Anc(1)),
];

/// Three plaquettes `A = {1,2,6,7}`, `B = {4,5,6,7}`, `C = {2,3,4,7}` with one flag.
const TRIPLE_TEMPLATE: [(Slot, Slot); 15] = [
    (Data(7), Anc(0)),
    (Flag, Anc(0)),
    (Anc(0), Anc(2)),
    (Data(6), Anc(0)),
    (Anc(0), Anc(1)),
    (Data(2), Anc(0)),
    (Data(1), Anc(0)),
    (Data(5), Anc(1)),
    (Data(4), Anc(1)),
    (Data(2), Anc(2)),
    (Data(3), Anc(2)),
    (Data(4), Anc(2)),
    (Flag, Anc(0)),
    (Flag, Anc(1)),
    (Flag, Anc(2)),
];

const TEMPLATE_SUPPORTS: [[usize; 4]; 3] = [[1, 2, 6, 7], [4, 5, 6, 7], [2, 3, 4, 7]];

/// Extraction groups in execution order, as plaquette labels in template order `(A, B[, C])`.
pub const EXTRACTION_GROUPS: [&[usize]; 4] = [&[13, 9], &[7, 8], &[1, 3, 2], &[16, 18, 17]];

/// Template-slot to qRM-label assignments for [`EXTRACTION_GROUPS`].
pub const EXTRACTION_MAPPINGS: [&[(usize, usize)]; 4] = [
    &[(1, 8), (2, 15), (6, 12), (7, 13), (4, 5), (5, 6)],
    &[(1, 3), (2, 10), (6, 4), (7, 11), (4, 5), (5, 12)],
    &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7)],
    &[(1, 8), (2, 9), (3, 10), (4, 11), (5, 12), (6, 13), (7, 14)],
];

/// Register layout: 15 qRM data qubits followed by four ancillas.
pub const STAGE1_QUBITS: usize = 19;

/// Flagged extraction of a group of qRM Z-plaquettes (1-based labels `p_k`).
///
/// `mapping` assigns template data slots `1..=7` to 1-based qRM qubits. The
/// circuit acts on [`STAGE1_QUBITS`] qubits: syndrome ancillas are qubits 16,
/// 17 (and 18), followed by the flag.
pub fn flagged_extraction(group: &[usize], mapping: &[(usize, usize)]) -> Result<Circuit, Error> {
    let template: &[(Slot, Slot)] = match group.len() {
        2 => &PAIR_TEMPLATE,
        3 => &TRIPLE_TEMPLATE,
        _ => return Err(Error::ExtractionGroup(group.to_vec())),
    };
    let qrm = build_qrm();
    if group.iter().any(|&k| k == 0 || k > qrm.z_stabilizers.len()) {
        return Err(Error::ExtractionGroup(group.to_vec()));
    }
    let mut slot_to_qubit = [None::<usize>; 8];
    for &(slot, label) in mapping {
        if !(1..=7).contains(&slot) || !(1..=15).contains(&label) {
            return Err(Error::SlotMapping("slot or qubit label out of range"));
        }
        if slot_to_qubit[slot].replace(label - 1).is_some() {
            return Err(Error::SlotMapping("slot assigned twice"));
        }
    }
    let assigned: Vec<usize> = slot_to_qubit.iter().flatten().copied().collect();
    if (1..assigned.len()).any(|i| assigned[..i].contains(&assigned[i])) {
        return Err(Error::SlotMapping("two slots share a qubit"));
    }
    for (a, &k) in group.iter().enumerate() {
        let mut mapped = 0u64;
        for &s in &TEMPLATE_SUPPORTS[a] {
            let q = slot_to_qubit[s].ok_or(Error::SlotMapping("template slot left unassigned"))?;
            mapped |= 1 << q;
        }
        if mapped != qrm.z_stabilizers[k - 1].z_mask() {
            return Err(Error::ExtractionGroup(group.to_vec()));
        }
    }
    let anc = |i: usize| 15 + i;
    let flag = 15 + group.len();
    let resolve = |s: Slot| match s {
        Data(d) => slot_to_qubit[d].expect("checked above"),
        Anc(i) => anc(i),
        Flag => flag,
    };
    let mut c = Circuit::with_inputs(STAGE1_QUBITS, (1 << 15) - 1)?;
    for i in 0..group.len() {
        c.prep_z(anc(i))?;
    }
    c.prep_x(flag)?;
    for &(ctrl, tgt) in template {
        c.cnot(resolve(ctrl), resolve(tgt))?;
    }
    for (i, &k) in group.iter().enumerate() {
        let label = alloc::format!("p{k}");
        c.measure(anc(i), Basis::Z, Role::Syndrome, Some(&label))?;
    }
    c.measure(flag, Basis::X, Role::Flag, None)?;
    Ok(c)
}

/// The ten measured generators grouped into the four flagged rounds.
pub fn extraction_rounds() -> Vec<Circuit> {
    EXTRACTION_GROUPS
        .iter()
        .zip(EXTRACTION_MAPPINGS)
        .map(|(g, m)| flagged_extraction(g, m).expect("static mapping"))
        .collect()
}

/// `|+̄⟩` preparation, its verification and the four flagged extraction rounds.
pub fn stage1_circuit() -> Circuit {
    stage1_circuit_with(&EXTRACTION_GROUPS, &EXTRACTION_MAPPINGS).expect("static circuit")
}

/// Stage-1 circuit with custom extraction rounds, executed in the given order.
pub fn stage1_circuit_with(
    groups: &[&[usize]],
    mappings: &[&[(usize, usize)]],
) -> Result<Circuit, Error> {
    if groups.len() != mappings.len() {
        return Err(Error::SlotMapping("one mapping per group"));
    }
    let mut c = build_qrm_prep(STAGE1_QUBITS)?;
    let identity: Vec<usize> = (0..STAGE1_QUBITS).collect();
    for (g, m) in groups.iter().zip(mappings) {
        c.append_mapped(&flagged_extraction(g, m)?, &identity)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Instruction;
    use crate::codes::build_steane;
    use crate::pauli::{PauliOperator, SignedPauli};
    use crate::tableau::Tableau;

    fn run(c: &Circuit) -> (Tableau, Vec<i8>) {
        let mut t = Tableau::new(c.n_qubits()).unwrap();
        let mut out = Vec::new();
        for inst in c.instructions() {
            match inst {
                Instruction::Prep { qubit, basis } => match basis {
                    Basis::Z => t.reset(*qubit).unwrap(),
                    Basis::X => t.reset_plus(*qubit).unwrap(),
                },
                Instruction::Gate(g) => t.apply(g).unwrap(),
                Instruction::Measure { qubit, basis, .. } => {
                    let s = match basis {
                        Basis::Z => "Z",
                        Basis::X => "X",
                    };
                    let o = SignedPauli::parse(c.n_qubits(), &alloc::format!("{s}{}", qubit + 1))
                        .unwrap();
                    let m = t.measure_with(&o, || false).unwrap();
                    assert!(m.deterministic);
                    out.push(m.value());
                }
                Instruction::Conditional { .. } => unreachable!(),
            }
        }
        (t, out)
    }

    fn embed(p: &PauliOperator, n: usize) -> SignedPauli {
        SignedPauli::positive(p.embed(n, 0).unwrap())
    }

    #[test]
    fn steane_prep_is_zero_state() {
        let c = steane_zero_prep();
        let (t, out) = run(&c);
        assert_eq!(out, [1]);
        let code = build_steane();
        for s in code.z_stabilizers.iter().chain(&code.x_stabilizers) {
            assert_eq!(t.expectation(&embed(s, 8)).unwrap(), 1);
        }
        assert_eq!(t.expectation(&embed(&code.logical_z, 8)).unwrap(), 1);
    }

    #[test]
    fn qrm_prep_is_plus_state() {
        let c = qrm_plus_prep();
        let (t, out) = run(&c);
        assert_eq!(out, [1]);
        let code = build_qrm();
        for s in code.z_stabilizers.iter().chain(&code.x_stabilizers) {
            assert_eq!(t.expectation(&embed(s, 16)).unwrap(), 1);
        }
        assert_eq!(t.expectation(&embed(&code.logical_x, 16)).unwrap(), 1);
        assert_eq!(t.expectation(&embed(&code.logical_z, 16)).unwrap(), 0);
    }

    #[test]
    fn qrm_verification_observable_is_logical_x() {
        let code = build_qrm();
        let v = PauliOperator::parse(15, "X2 X4 X6 X8 X10 X12 X14").unwrap();
        let prod = code.logical_x * code.x_stabilizers[0] * code.x_stabilizers[1] * code.x_stabilizers[2];
        assert_eq!(v, prod);
    }

    #[test]
    fn stage1_reference_is_all_plus() {
        let c = stage1_circuit();
        assert_eq!(c.records().len(), 15);
        let (t, out) = run(&c);
        assert!(out.iter().all(|&v| v == 1));
        let code = build_qrm();
        for s in code.z_stabilizers.iter().chain(&code.x_stabilizers) {
            assert_eq!(t.expectation(&embed(s, STAGE1_QUBITS)).unwrap(), 1);
        }
    }

    #[test]
    fn extraction_rejects_bad_groups() {
        assert!(flagged_extraction(&[1], &[]).is_err());
        assert!(flagged_extraction(&[1, 2, 3, 4], &[]).is_err());
        assert!(flagged_extraction(&[13, 9], EXTRACTION_MAPPINGS[1]).is_err());
        assert!(flagged_extraction(&[13, 9], &[(1, 8), (1, 9)]).is_err());
        assert!(flagged_extraction(&[13, 9], EXTRACTION_MAPPINGS[0]).is_ok());
    }
}

//! Fault-tolerance properties of the preparation and extraction gadgets.

use colorswitch_core::circuits::{extraction_rounds, qrm_plus_prep, stage1_circuit, steane_zero_prep};
use colorswitch_core::codes::{build_qrm, build_steane, logical_cnot};
use colorswitch_core::frame::FrameProgram;
use colorswitch_core::noise::add_noise;
use colorswitch_core::protocol::through_logical_cnot;
use colorswitch_core::{Circuit, FrameReducer, FrameSample, NoiseModel, PauliOperator, SignedPauli, TieBreak};

fn span(gens: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &g in gens {
        for i in 0..out.len() {
            out.push(out[i] ^ g);
        }
    }
    out
}

fn min_weight(mask: u64, group: &[u64]) -> u32 {
    group.iter().map(|g| (mask ^ g).count_ones()).min().unwrap()
}

/// Every single fault of `circuit`, with its frame restricted to `data` qubits.
fn single_faults(circuit: &Circuit, data: usize) -> Vec<(usize, usize, u64, u64, FrameSample)> {
    let noisy = add_noise(circuit, &NoiseModel::uniform(1e-3).unwrap());
    let program = FrameProgram::compile(&noisy).unwrap();
    let mut out = Vec::new();
    for (l, loc) in program.locations().iter().enumerate() {
        for o in 0..loc.options() {
            let s = program.propagate(&[(l as u32, o as u8)]);
            let lo = (1u64 << data) - 1;
            out.push((l, o, s.frame.x_mask() & lo, s.frame.z_mask() & lo, s));
        }
    }
    out
}

#[test]
fn qrm_verification_flags_heavy_z_errors() {
    let code = build_qrm();
    let group = span(&code.z_stabilizers.iter().map(|s| s.z_mask()).collect::<Vec<_>>());
    let mut heavy = 0;
    for (l, o, _, z, s) in single_faults(&qrm_plus_prep(), 15) {
        if min_weight(z, &group) >= 2 {
            heavy += 1;
            assert_ne!(s.flips, 0, "location {l} option {o} leaves an unflagged Z error");
        }
    }
    assert!(heavy > 0);
}

#[test]
fn flagged_rounds_leave_at_most_single_z_errors() {
    let code = build_qrm();
    let group = span(&code.z_stabilizers.iter().map(|s| s.z_mask()).collect::<Vec<_>>());
    for (r, round) in extraction_rounds().iter().enumerate() {
        let mut hooks = 0;
        for (l, o, _, z, s) in single_faults(round, 15) {
            let w = min_weight(z, &group);
            if w >= 2 {
                hooks += 1;
                assert_ne!(s.flips, 0, "round {r}: location {l} option {o}");
            }
        }
        assert!(hooks > 0, "round {r} has no hook errors to flag");
    }
}

#[test]
fn steane_verification_flags_heavy_x_errors() {
    let code = build_steane();
    let group = span(&code.x_stabilizers.iter().map(|s| s.x_mask()).collect::<Vec<_>>());
    let mut heavy = 0;
    for (l, o, x, _, s) in single_faults(&steane_zero_prep(), 7) {
        if min_weight(x, &group) >= 2 {
            heavy += 1;
            assert_ne!(s.flips, 0, "location {l} option {o} leaves an unflagged X error");
        }
    }
    assert!(heavy > 0);
}

#[test]
fn undetected_stage1_data_faults_reduce_to_weight_one() {
    let mut reducer = FrameReducer::qrm(TieBreak::LexMin);
    let mut escaping_x = 0;
    for (_, _, x, _, s) in single_faults(&stage1_circuit(), 15) {
        if s.flips != 0 {
            continue;
        }
        let reduced = reducer.reduce(&PauliOperator::from_masks(15, x, 0).unwrap());
        assert!(reduced.weight() <= 1, "escaping X residual {reduced}");
        if !reduced.is_identity() {
            escaping_x += 1;
        }
    }
    assert!(escaping_x > 0, "some X fault on the data goes undetected");
}

#[test]
fn logical_cnot_maps_logicals() {
    let (qrm, steane) = (build_qrm(), build_steane());
    let n = 22;
    let conjugate = |p: PauliOperator| {
        let mut s = SignedPauli::positive(p);
        for g in logical_cnot(0, 15) {
            s = s.conjugate_by(&g).unwrap();
        }
        s
    };
    let xq = qrm.logical_x.embed(n, 0).unwrap();
    let xs = steane.logical_x.embed(n, 15).unwrap();
    let zq = qrm.logical_z.embed(n, 0).unwrap();
    let zs = steane.logical_z.embed(n, 15).unwrap();
    // Equal up to Steane stabilizers: X^7 on the Steane block is X̄ times one.
    let sx = span(&steane.x_stabilizers.iter().map(|s| s.x_mask() << 15).collect::<Vec<_>>());
    let sz = span(&steane.z_stabilizers.iter().map(|s| s.z_mask() << 15).collect::<Vec<_>>());
    let cx = conjugate(xq);
    assert!(!cx.negative && cx.op.z_mask() == 0);
    assert!(sx.contains(&(cx.op.x_mask() ^ xq.x_mask() ^ xs.x_mask())));
    let cz = conjugate(zs);
    assert!(!cz.negative && cz.op.x_mask() == 0);
    assert!(sz.contains(&(cz.op.z_mask() ^ zq.z_mask() ^ zs.z_mask())));
    assert_eq!(conjugate(zq), SignedPauli::positive(zq));
    let (x, z) = through_logical_cnot(xq.x_mask(), zs.z_mask());
    assert_eq!(x, cx.op.x_mask());
    assert_eq!(z, cz.op.z_mask());
}

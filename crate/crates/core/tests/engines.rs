//! Frame engine against the tableau, and the tableau against dense state vectors.

mod common;

use colorswitch_core::circuits::stage1_circuit;
use colorswitch_core::frame::FrameProgram;
use colorswitch_core::noise::add_noise;
use colorswitch_core::reduction::to_clifford_frame;
use colorswitch_core::{Gate, NoiseModel, PauliOperator, SignedPauli, Tableau};
use colorswitch_testkit::{Op, StateVector};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn frame_matches_tableau(circuit: &colorswitch_core::Circuit, faults: &[(usize, usize)]) {
    let program = FrameProgram::compile(&add_noise(circuit, &NoiseModel::uniform(0.01).unwrap())).unwrap();
    let mut sorted: Vec<(u32, u8)> = faults.iter().map(|&(l, o)| (l as u32, o as u8)).collect();
    sorted.sort_unstable();
    let frame = program.propagate(&sorted);
    let (reference, ideal) = run_with_faults(circuit, program.locations(), &[]);
    let (outcomes, faulty) = run_with_faults(circuit, program.locations(), faults);
    assert_eq!(reference, program.reference());
    assert_eq!(outcomes ^ reference, frame.flips, "flips for faults {faults:?}");
    let mut shifted = ideal.clone();
    shifted.apply_pauli(&frame.frame).unwrap();
    assert!(same_state(&faulty, &shifted), "final frame for faults {faults:?}");
}

#[test]
fn stage1_single_faults_agree_exactly() {
    let c = stage1_circuit();
    let program = FrameProgram::compile(&add_noise(&c, &NoiseModel::uniform(0.01).unwrap())).unwrap();
    let mut checked = 0;
    for (l, loc) in program.locations().iter().enumerate() {
        for o in 0..loc.options() {
            frame_matches_tableau(&c, &[(l, o)]);
            checked += 1;
        }
    }
    assert!(checked > program.locations().len());
}

#[test]
fn random_small_circuits_agree_exactly() {
    let mut rng = Lcg(7);
    for _ in 0..1000 {
        let n = 1 + rng.below(5);
        let c = random_deterministic_circuit(&mut rng, n);
        let locs = add_noise(&c, &NoiseModel::uniform(0.01).unwrap()).locations;
        let k = 1 + rng.below(3);
        let mut faults: Vec<(usize, usize)> = Vec::new();
        while faults.len() < k {
            let l = rng.below(locs.len());
            if faults.iter().all(|f| f.0 != l) {
                faults.push((l, rng.below(locs[l].options())));
            }
        }
        frame_matches_tableau(&c, &faults);
    }
}

fn tvd(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

/// Empirical computational-basis distribution of a tableau state.
fn tableau_histogram(t: &Tableau, shots: usize, rng: &mut StdRng) -> Vec<f64> {
    let n = t.n();
    let mut counts = vec![0usize; 1 << n];
    for _ in 0..shots {
        let mut s = t.clone();
        let mut bits = 0;
        for q in 0..n {
            let z = SignedPauli::positive(PauliOperator::single(n, q, colorswitch_core::PauliKind::Z).unwrap());
            let m = s.measure_with(&z, || rng.random::<bool>()).unwrap();
            bits |= (m.negative as usize) << q;
        }
        counts[bits] += 1;
    }
    counts.iter().map(|&c| c as f64 / shots as f64).collect()
}

#[test]
fn tableau_matches_state_vector_distributions() {
    let mut shape = Lcg(11);
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..12 {
        let n = 2 + shape.below(5);
        let gates = random_clifford(&mut shape, n, 30);
        let mut t = Tableau::new(n).unwrap();
        let mut sv = StateVector::zero(n).unwrap();
        for g in &gates {
            t.apply(g).unwrap();
            sv.apply(to_op(g)).unwrap();
        }
        let d = tvd(&tableau_histogram(&t, 40_000, &mut rng), &sv.probabilities());
        assert!(d < 0.05, "tvd {d} on {n} qubits");
    }
}

#[test]
fn two_qubit_s_bar_analogue_matches_state_vector() {
    let gates = [Gate::H(0), Gate::H(1), Gate::S(0), Gate::Sdg(1), Gate::H(0), Gate::Cnot(0, 1), Gate::H(1)];
    let mut t = Tableau::new(2).unwrap();
    let mut sv = StateVector::zero(2).unwrap();
    for g in &gates {
        t.apply(g).unwrap();
        sv.apply(to_op(g)).unwrap();
    }
    let mut rng = StdRng::seed_from_u64(9);
    let d = tvd(&tableau_histogram(&t, 100_000, &mut rng), &sv.probabilities());
    assert!(d < 0.01, "tvd {d}");
}

#[test]
fn t_on_plus_has_x_expectation_one_over_root_two() {
    let mut sv = StateVector::zero(1).unwrap();
    sv.run(&[Op::H(0), Op::T(0)]).unwrap();
    assert!((sv.expectation("X").unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
}

/// `T`-layer with `T` on even 0-based qubits and `T†` on odd ones.
fn t_layer(n: usize) -> Vec<Op> {
    (0..n).map(|q| if q % 2 == 0 { Op::T(q) } else { Op::Tdg(q) }).collect()
}

#[test]
fn single_qubit_frame_trick() {
    let mut a = StateVector::zero(1).unwrap();
    a.run(&[Op::H(0), Op::X(0), Op::T(0)]).unwrap();
    let mut b = StateVector::zero(1).unwrap();
    b.run(&[Op::H(0), Op::T(0)]).unwrap();
    let frame = to_clifford_frame(&PauliOperator::parse(1, "X1").unwrap());
    assert_eq!(frame.gates(0), [Gate::X(0), Gate::S(0)]);
    b.run(&frame.gates(0).iter().map(to_op).collect::<Vec<_>>()).unwrap();
    assert!((a.overlap(&b) - 1.0).abs() < 1e-12);
}

#[test]
fn clifford_frame_equals_pauli_before_t_layer() {
    let mut rng = Lcg(3);
    for _ in 0..200 {
        let n = 1 + rng.below(4);
        let mut prep: Vec<Op> = random_clifford(&mut rng, n, 10).iter().map(to_op).collect();
        prep.push(Op::T(rng.below(n)));
        prep.extend(random_clifford(&mut rng, n, 5).iter().map(to_op));
        let p = PauliOperator::from_masks(n, rng.next() & ((1 << n) - 1), rng.next() & ((1 << n) - 1)).unwrap();

        let mut before = StateVector::zero(n).unwrap();
        before.run(&prep).unwrap();
        before.apply_pauli(&pauli_string(&p)).unwrap();
        before.run(&t_layer(n)).unwrap();

        let mut after = StateVector::zero(n).unwrap();
        after.run(&prep).unwrap();
        after.run(&t_layer(n)).unwrap();
        after.run(&to_clifford_frame(&p).gates(0).iter().map(to_op).collect::<Vec<_>>()).unwrap();

        assert!((before.overlap(&after) - 1.0).abs() < 1e-9, "frame {p}");
    }
}

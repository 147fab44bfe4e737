#![allow(dead_code)]

use colorswitch_core::circuit::{Basis, Circuit, Instruction};
use colorswitch_core::noise::NoiseLocation;
use colorswitch_core::{Gate, PauliKind, PauliOperator, SignedPauli, Tableau};
use colorswitch_testkit::Op;

pub fn to_op(g: &Gate) -> Op {
    match *g {
        Gate::H(q) => Op::H(q),
        Gate::S(q) => Op::S(q),
        Gate::Sdg(q) => Op::Sdg(q),
        Gate::X(q) => Op::X(q),
        Gate::Y(q) => Op::Y(q),
        Gate::Z(q) => Op::Z(q),
        Gate::Cnot(c, t) => Op::Cnot(c, t),
    }
}

/// Pauli string with character `q` acting on qubit `q`.
pub fn pauli_string(p: &PauliOperator) -> String {
    (0..p.n())
        .map(|q| match p.kind(q) {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        })
        .collect()
}

pub fn observable(n: usize, q: usize, basis: Basis) -> SignedPauli {
    let kind = match basis {
        Basis::Z => PauliKind::Z,
        Basis::X => PauliKind::X,
    };
    SignedPauli::positive(PauliOperator::single(n, q, kind).unwrap())
}

/// Runs `circuit` on a tableau with explicit Pauli faults, returning the
/// outcome bits and the final state. Random outcomes read `+1`.
pub fn run_with_faults(
    circuit: &Circuit,
    locations: &[NoiseLocation],
    faults: &[(usize, usize)],
) -> (u64, Tableau) {
    let n = circuit.n_qubits();
    let mut t = Tableau::new(n).unwrap();
    let mut outcomes = 0u64;
    let inject = |t: &mut Tableau, i: usize, before: bool| {
        for &(l, o) in faults {
            let loc = &locations[l];
            if loc.instruction == i && loc.kind.before() == before {
                let (x, z) = loc.fault_masks(o);
                t.apply_pauli(&PauliOperator::from_masks(n, x, z).unwrap()).unwrap();
            }
        }
    };
    for (i, inst) in circuit.instructions().iter().enumerate() {
        inject(&mut t, i, true);
        match inst {
            Instruction::Prep { qubit, basis } => match basis {
                Basis::Z => t.reset(*qubit).unwrap(),
                Basis::X => t.reset_plus(*qubit).unwrap(),
            },
            Instruction::Gate(g) => t.apply(g).unwrap(),
            Instruction::Measure { qubit, basis, record } => {
                let m = t.measure_with(&observable(n, *qubit, *basis), || false).unwrap();
                outcomes |= (m.negative as u64) << record;
            }
            Instruction::Conditional { record, pauli } => {
                if outcomes >> record & 1 == 1 {
                    t.apply_pauli(pauli).unwrap();
                }
            }
        }
        inject(&mut t, i, false);
    }
    (outcomes, t)
}

/// True when every stabilizer generator of `a` has the same sign in `b`.
pub fn same_state(a: &Tableau, b: &Tableau) -> bool {
    a.stabilizers().all(|s| b.expectation(&s).unwrap() == 1)
}

/// Small deterministic LCG, enough for picking circuit shapes in tests.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next() % k as u64) as usize
    }
}

pub fn random_clifford(rng: &mut Lcg, n: usize, len: usize) -> Vec<Gate> {
    (0..len)
        .map(|_| {
            let q = rng.below(n);
            match rng.below(if n > 1 { 8 } else { 7 }) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                2 => Gate::Sdg(q),
                3 => Gate::X(q),
                4 => Gate::Y(q),
                5 => Gate::Z(q),
                6 => Gate::H(q),
                _ => {
                    let t = (q + 1 + rng.below(n - 1)) % n;
                    Gate::Cnot(q, t)
                }
            }
        })
        .collect()
}

/// Prepare, scramble, unscramble, measure: every reference outcome is +1.
pub fn random_deterministic_circuit(rng: &mut Lcg, n: usize) -> Circuit {
    let mut c = Circuit::new(n).unwrap();
    let bases: Vec<Basis> = (0..n).map(|_| if rng.below(2) == 0 { Basis::Z } else { Basis::X }).collect();
    for q in 0..n {
        c.prep(q, bases[q]).unwrap();
    }
    for round in 0..2 {
        let len = 4 + rng.below(8);
        let g = random_clifford(rng, n, len);
        for gate in &g {
            c.gate(*gate).unwrap();
        }
        for gate in g.iter().rev() {
            c.gate(gate.inverse()).unwrap();
        }
        let measured = if round == 0 { rng.below(n) + 1 } else { n };
        for q in 0..measured {
            c.measure(q, bases[q], colorswitch_core::Role::Syndrome, None).unwrap();
            if round == 0 {
                c.prep(q, bases[q]).unwrap();
            }
        }
    }
    c
}

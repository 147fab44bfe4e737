//! Pauli-frame sampling against a noiseless reference circuit.
//!
//! The reference run is checked once on the tableau: every measurement must be
//! deterministic, and its outcome becomes the reference bit. A shot then only
//! tracks the Pauli difference to the reference and which records it flips.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::circuit::{Basis, Instruction};
use crate::error::Error;
use crate::noise::{NoiseLocation, NoisyCircuit};
use crate::pauli::PauliOperator;
use crate::rng::{below, SparseBernoulli};
use crate::tableau::Tableau;

/// Residual frame and flipped records of one shot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameSample {
    pub frame: PauliOperator,
    /// Bit `r` set iff record `r` differs from the reference.
    pub flips: u64,
}

impl FrameSample {
    pub fn flip(&self, record: usize) -> bool {
        self.flips >> record & 1 == 1
    }
}

/// One fault: a location index and one of its Pauli options.
pub type Fault = (u32, u8);

#[derive(Clone, Debug)]
pub struct FrameProgram {
    noisy: NoisyCircuit,
    /// Location index per instruction, if it is a noise site.
    site: Vec<Option<u32>>,
    reference: u64,
    sampler: SparseBernoulli,
}

impl FrameProgram {
    /// Compiles a noisy circuit, validating its reference run.
    pub fn compile(noisy: &NoisyCircuit) -> Result<Self, Error> {
        let circuit = &noisy.circuit;
        if circuit.records().len() > 64 {
            return Err(Error::TooManyRecords(circuit.records().len()));
        }
        let mut site = alloc::vec![None; circuit.instructions().len()];
        for (i, loc) in noisy.locations.iter().enumerate() {
            site[loc.instruction] = Some(i as u32);
        }
        let reference = reference_outcomes(circuit.instructions(), circuit.n_qubits())?;
        let probs: Vec<f64> = noisy.locations.iter().map(|l| l.probability).collect();
        Ok(Self {
            noisy: noisy.clone(),
            site,
            reference,
            sampler: SparseBernoulli::new(&probs),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.noisy.circuit.n_qubits()
    }

    pub fn n_records(&self) -> usize {
        self.noisy.circuit.records().len()
    }

    pub fn locations(&self) -> &[NoiseLocation] {
        &self.noisy.locations
    }

    pub fn noisy(&self) -> &NoisyCircuit {
        &self.noisy
    }

    /// Reference outcomes, bit `r` set iff record `r` reads −1 without noise.
    pub fn reference(&self) -> u64 {
        self.reference
    }

    /// Draws the faults of one shot, sorted by location.
    pub fn sample_faults<R: RngCore + ?Sized>(&self, rng: &mut R, out: &mut Vec<Fault>) {
        let mut sites = Vec::new();
        self.sampler.sample(rng, &mut sites);
        out.extend(sites.into_iter().map(|s| {
            let k = self.noisy.locations[s as usize].options();
            (s, below(rng, k) as u8)
        }));
    }

    pub fn sample_shot<R: RngCore + ?Sized>(&self, rng: &mut R) -> FrameSample {
        let mut faults = Vec::new();
        self.sample_faults(rng, &mut faults);
        self.propagate(&faults)
    }

    /// Runs the frame with the given faults and no random noise.
    pub fn forced_fault_shot(
        &self,
        faults: &[(usize, PauliOperator)],
    ) -> Result<FrameSample, Error> {
        let mut list = Vec::with_capacity(faults.len());
        for (loc, pauli) in faults {
            let l = self
                .noisy
                .locations
                .get(*loc)
                .ok_or(Error::InvalidLocation(*loc))?;
            if pauli.n() != self.n_qubits() {
                return Err(Error::SizeMismatch {
                    left: self.n_qubits(),
                    right: pauli.n(),
                });
            }
            let opt = l
                .option_for(pauli.x_mask(), pauli.z_mask())
                .ok_or_else(|| Error::InvalidFault {
                    location: *loc,
                    fault: alloc::format!("{pauli}"),
                })?;
            list.push((*loc as u32, opt as u8));
        }
        list.sort_unstable();
        Ok(self.propagate(&list))
    }

    /// Propagates faults sorted by location index.
    pub fn propagate(&self, faults: &[Fault]) -> FrameSample {
        debug_assert!(faults.windows(2).all(|w| w[0].0 <= w[1].0));
        let n = self.n_qubits();
        let (mut x, mut z, mut flips) = (0u64, 0u64, 0u64);
        let mut next = 0usize;
        let locs = &self.noisy.locations;
        let inject = |x: &mut u64, z: &mut u64, site: u32, next: &mut usize| {
            while *next < faults.len() && faults[*next].0 == site {
                let (fx, fz) = locs[site as usize].fault_masks(faults[*next].1 as usize);
                *x ^= fx;
                *z ^= fz;
                *next += 1;
            }
        };
        for (i, inst) in self.noisy.circuit.instructions().iter().enumerate() {
            let site = self.site[i];
            let before = site.is_some_and(|s| locs[s as usize].kind.before());
            if before {
                inject(&mut x, &mut z, site.unwrap(), &mut next);
            }
            match inst {
                Instruction::Prep { qubit, .. } => {
                    x &= !(1 << qubit);
                    z &= !(1 << qubit);
                }
                Instruction::Gate(g) => {
                    let mut neg = false;
                    g.conjugate_row(&mut x, &mut z, &mut neg);
                }
                Instruction::Measure {
                    qubit,
                    basis,
                    record,
                } => {
                    let bit = match basis {
                        Basis::Z => x >> qubit & 1,
                        Basis::X => z >> qubit & 1,
                    };
                    flips |= bit << record;
                }
                Instruction::Conditional { record, pauli } => {
                    if flips >> record & 1 == 1 {
                        x ^= pauli.x_mask();
                        z ^= pauli.z_mask();
                    }
                }
            }
            if let (Some(s), false) = (site, before) {
                inject(&mut x, &mut z, s, &mut next);
            }
        }
        FrameSample {
            frame: PauliOperator::raw(n, x, z),
            flips,
        }
    }
}

fn reference_outcomes(instructions: &[Instruction], n: usize) -> Result<u64, Error> {
    let mut t = Tableau::new(n)?;
    let map: Vec<usize> = (0..n).collect();
    execute_noiseless(&mut t, instructions, &map)
}

/// Runs instructions on `t` with qubit `q` placed on `map[q]`.
///
/// Returns the outcome bits; fails if any measurement is random.
pub fn execute_noiseless(
    t: &mut Tableau,
    instructions: &[Instruction],
    map: &[usize],
) -> Result<u64, Error> {
    let mut outcomes = 0u64;
    for (i, inst) in instructions.iter().enumerate() {
        match inst {
            Instruction::Prep { qubit, basis } => match basis {
                Basis::Z => t.reset(map[*qubit])?,
                Basis::X => t.reset_plus(map[*qubit])?,
            },
            Instruction::Gate(g) => t.apply(&g.map_qubits(|q| map[q]))?,
            Instruction::Measure {
                qubit,
                basis,
                record,
            } => {
                let q = map[*qubit];
                let (x, z) = match basis {
                    Basis::Z => (0, 1 << q),
                    Basis::X => (1 << q, 0),
                };
                let m = t.measure_masks(x, z, false, || false);
                if !m.deterministic {
                    return Err(Error::NondeterministicMeasurement { instruction: i });
                }
                outcomes |= (m.negative as u64) << record;
            }
            Instruction::Conditional { record, pauli } => {
                if outcomes >> record & 1 == 1 {
                    let (mut x, mut z) = (0u64, 0u64);
                    for q in 0..pauli.n() {
                        x |= (pauli.x_mask() >> q & 1) << map[q];
                        z |= (pauli.z_mask() >> q & 1) << map[q];
                    }
                    t.apply_pauli_masks(x, z);
                }
            }
        }
    }
    Ok(outcomes)
}

/// Precomputed effect of every single fault; shots become XORs of table rows.
///
/// Valid because frame propagation is linear over GF(2).
#[derive(Clone, Debug)]
pub struct FaultTable {
    program: FrameProgram,
    offsets: Vec<u32>,
    effects: Vec<(u64, u64, u64)>,
}

impl FaultTable {
    pub fn new(program: FrameProgram) -> Self {
        let mut offsets = Vec::with_capacity(program.locations().len() + 1);
        let mut effects = Vec::new();
        for (l, loc) in program.locations().iter().enumerate() {
            offsets.push(effects.len() as u32);
            for o in 0..loc.options() {
                let s = program.propagate(&[(l as u32, o as u8)]);
                effects.push((s.frame.x_mask(), s.frame.z_mask(), s.flips));
            }
        }
        offsets.push(effects.len() as u32);
        Self {
            program,
            offsets,
            effects,
        }
    }

    pub fn program(&self) -> &FrameProgram {
        &self.program
    }

    /// `(frame_x, frame_z, flips)` of a single fault.
    #[inline]
    pub fn effect(&self, fault: Fault) -> (u64, u64, u64) {
        self.effects[(self.offsets[fault.0 as usize] + fault.1 as u32) as usize]
    }

    pub fn combine(&self, faults: &[Fault]) -> FrameSample {
        let (mut x, mut z, mut f) = (0, 0, 0);
        for &fault in faults {
            let (a, b, c) = self.effect(fault);
            x ^= a;
            z ^= b;
            f ^= c;
        }
        FrameSample {
            frame: PauliOperator::raw(self.program.n_qubits(), x, z),
            flips: f,
        }
    }

    /// Same distribution and rng consumption as [`FrameProgram::sample_shot`].
    pub fn sample_shot<R: RngCore + ?Sized>(&self, rng: &mut R, scratch: &mut Vec<Fault>) -> FrameSample {
        scratch.clear();
        self.program.sample_faults(rng, scratch);
        self.combine(scratch)
    }
}

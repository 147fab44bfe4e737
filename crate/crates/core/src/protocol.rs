//! One Monte Carlo shot of the full protocol.
//!
//! Stage 1 samples the flagged qRM `|+̄⟩` preparation with the frame engine and
//! reduces the accepted frame `P`. Downstream, each of the four stabilizer
//! states of the magic-state decomposition is evolved exactly on a 23-qubit
//! tableau: `C(P)`, T-layer noise, the noisy Steane `|0̄⟩`, the transversal
//! CNOT, the noisy X readout of the qRM block and the final tomography.
//!
//! Register: qRM qubits `0..15`, Steane qubits `15..22`, a shared ancilla `22`.
//!
//! All downstream faults are Paulis. Those occurring before the transversal
//! CNOT are pushed through it, so every downstream error is one Pauli applied
//! right before readout.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::circuits::{qrm_plus_prep, stage1_circuit, steane_zero_prep};
use crate::codes::{build_qrm, build_steane, logical_cnot, qrm_s_bar, qrm_s_bar_dag, DecoderTable};
use crate::error::Error;
use crate::frame::{execute_noiseless, Fault, FaultTable, FrameProgram};
use crate::gate::Gate;
use crate::noise::{add_noise, LocationKind, NoiseLocation, NoiseModel};
use crate::pauli::{PauliOperator, SignedPauli};
use crate::reduction::{to_clifford_frame, CliffordFrame, FrameReducer, TieBreak};
use crate::rng::{below, coin, SparseBernoulli};
use crate::tableau::Tableau;

pub const QRM_OFFSET: usize = 0;
pub const STEANE_OFFSET: usize = 15;
pub const ANCILLA: usize = 22;
pub const JOINT_QUBITS: usize = 23;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    ErrorCorrect,
    PostSelect,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::ErrorCorrect => "ec",
            Mode::PostSelect => "ps",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "ec" | "error-correct" => Some(Mode::ErrorCorrect),
            "ps" | "post-select" => Some(Mode::PostSelect),
            _ => None,
        }
    }
}

/// How the final logical value is recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Readout {
    /// Exact conditional expectation in `{−1, 0, +1}` given the sampled syndromes.
    #[default]
    Expectation,
    /// A sampled `±1` outcome.
    Sample,
}

/// Stabilizer states of the decomposition of `|T̄⟩⟨T̄|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionState {
    Plus,
    Minus,
    YPlus,
    YMinus,
}

impl DecompositionState {
    pub const ALL: [DecompositionState; 4] = [
        DecompositionState::Plus,
        DecompositionState::Minus,
        DecompositionState::YPlus,
        DecompositionState::YMinus,
    ];

    pub fn index(&self) -> usize {
        *self as usize
    }

    /// Coefficient sign in the estimator.
    pub fn sign(&self) -> i8 {
        match self {
            DecompositionState::Plus | DecompositionState::YPlus => 1,
            _ => -1,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DecompositionState::Plus => "plus",
            DecompositionState::Minus => "minus",
            DecompositionState::YPlus => "y_plus",
            DecompositionState::YMinus => "y_minus",
        }
    }

    /// Noiseless value of the logical observable of `basis`.
    pub fn ideal(&self, basis: TomographyBasis) -> i8 {
        match (self, basis) {
            (DecompositionState::Plus, TomographyBasis::X) => 1,
            (DecompositionState::Minus, TomographyBasis::X) => -1,
            (DecompositionState::YPlus, TomographyBasis::Y) => 1,
            (DecompositionState::YMinus, TomographyBasis::Y) => -1,
            _ => 0,
        }
    }

    /// Logical gate on `|+̄⟩` producing this state.
    pub fn logical_gates(&self) -> Vec<Gate> {
        match self {
            DecompositionState::Plus => Vec::new(),
            DecompositionState::Minus => (0..3).map(Gate::Z).collect(),
            DecompositionState::YPlus => qrm_s_bar(),
            DecompositionState::YMinus => qrm_s_bar_dag(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TomographyBasis {
    X,
    Y,
}

impl TomographyBasis {
    pub const ALL: [TomographyBasis; 2] = [TomographyBasis::X, TomographyBasis::Y];
}

/// Outcome of one shot across all states and bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ShotRecord {
    pub stage1_accepted: bool,
    /// Steane verification and qRM syndrome of each state's teleportation.
    pub teleport_accepted: [bool; 4],
    /// Final syndrome check; always true in error-correct mode.
    pub tomography_accepted: [[bool; 2]; 4],
    /// `[state][basis]` logical value, zero unless the branch is accepted.
    pub outcomes: [[i8; 2]; 4],
}

impl ShotRecord {
    pub fn accepted(&self, state: usize, basis: usize) -> bool {
        self.stage1_accepted && self.teleport_accepted[state] && self.tomography_accepted[state][basis]
    }

    /// Delta contribution of a fully accepted noiseless-like shot.
    pub fn delta(&self) -> i32 {
        DecompositionState::ALL
            .iter()
            .map(|s| s.sign() as i32 * (self.outcomes[s.index()][0] + self.outcomes[s.index()][1]) as i32)
            .sum()
    }
}

/// Which part of the protocol a noise location belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Stage1,
    TLayer,
    SteanePrep,
    LogicalCnot,
    Readout,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolLocation {
    pub stage: Stage,
    /// Location with qubits in the stage's own register.
    pub location: NoiseLocation,
}

/// Aggregated downstream error of one state's run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DownstreamError {
    /// Pauli on the joint register right before the qRM readout.
    pub x: u64,
    pub z: u64,
    pub steane_rejected: bool,
}

impl DownstreamError {
    pub fn is_trivial(&self) -> bool {
        self.x | self.z == 0 && !self.steane_rejected
    }
}

/// Per-basis result of an exact downstream evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct BranchExact {
    pub accept: f64,
    /// `Σ P(branch) · value` over accepted branches.
    pub weighted_value: f64,
    /// A nontrivial final syndrome occurred with nonzero probability.
    pub corrected: bool,
}

struct Observable {
    x: u64,
    z: u64,
    negative: bool,
}

fn steane_observables() -> ([[Observable; 3]; 2], [Observable; 2]) {
    let code = build_steane();
    let joint = |p: &PauliOperator| p.embed(JOINT_QUBITS, STEANE_OFFSET).expect("fits");
    let plaq = |b: usize| {
        core::array::from_fn(|i| {
            let s = joint(&code.x_stabilizers[i]);
            let y = b == 1;
            Observable {
                x: s.x_mask(),
                z: if y { s.x_mask() } else { 0 },
                negative: false,
            }
        })
    };
    let xl = SignedPauli::positive(joint(&code.logical_x));
    let zl = SignedPauli::positive(joint(&code.logical_z));
    let yl = SignedPauli::i_product(&xl, &zl).expect("anticommuting logicals");
    let obs = |s: SignedPauli| Observable {
        x: s.op.x_mask(),
        z: s.op.z_mask(),
        negative: s.negative,
    };
    ([plaq(0), plaq(1)], [obs(xl), obs(yl)])
}

/// Immutable protocol description shared by all workers.
#[derive(Clone, Debug)]
pub struct Protocol {
    noise: NoiseModel,
    mode: Mode,
    readout: Readout,
    tie: TieBreak,
    stage1: FaultTable,
    steane: FaultTable,
    downstream_sites: Vec<NoiseLocation>,
    downstream_sampler: SparseBernoulli,
    base: [Tableau; 4],
    cnot_done: [Tableau; 4],
    cells: [u64; 4],
    xbar_qrm: u64,
    plaquettes: [[(u64, u64); 3]; 2],
    logicals: [(u64, u64, bool); 2],
    decoder: DecoderTable,
    stage1_flag_records: u64,
}

impl Protocol {
    pub fn new(noise: NoiseModel, mode: Mode) -> Result<Self, Error> {
        Self::with_options(noise, mode, TieBreak::LexMin, Readout::Expectation)
    }

    pub fn with_options(
        noise: NoiseModel,
        mode: Mode,
        tie: TieBreak,
        readout: Readout,
    ) -> Result<Self, Error> {
        Self::with_stage1(noise, mode, tie, readout, &stage1_circuit())
    }

    /// Protocol with a custom stage-1 circuit on the 19-qubit stage-1 register.
    pub fn with_stage1(
        noise: NoiseModel,
        mode: Mode,
        tie: TieBreak,
        readout: Readout,
        s1: &crate::circuit::Circuit,
    ) -> Result<Self, Error> {
        let stage1_flag_records = s1
            .records()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.role == crate::circuit::Role::Flag)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        let stage1 = FaultTable::new(FrameProgram::compile(&add_noise(s1, &noise))?);
        let steane = FaultTable::new(FrameProgram::compile(&add_noise(&steane_zero_prep(), &noise))?);
        if stage1.program().reference() != 0 || steane.program().reference() != 0 {
            return Err(Error::InvalidGate("reference outcomes must all be +1"));
        }

        let mut sites = Vec::new();
        for q in 0..15 {
            sites.push(NoiseLocation {
                instruction: usize::MAX,
                kind: LocationKind::Gate1,
                qubits: (QRM_OFFSET + q, None),
                probability: noise.p_1,
            });
        }
        for i in 0..7 {
            sites.push(NoiseLocation {
                instruction: usize::MAX,
                kind: LocationKind::Gate2,
                qubits: (QRM_OFFSET + i, Some(STEANE_OFFSET + i)),
                probability: noise.p_2,
            });
        }
        for q in 0..15 {
            sites.push(NoiseLocation {
                instruction: usize::MAX,
                kind: LocationKind::MeasX,
                qubits: (QRM_OFFSET + q, None),
                probability: noise.p_m,
            });
        }
        let probs: Vec<f64> = sites.iter().map(|s| s.probability).collect();

        let qrm_map: Vec<usize> = (0..15).map(|q| QRM_OFFSET + q).chain([ANCILLA]).collect();
        let steane_map: Vec<usize> = (0..7).map(|q| STEANE_OFFSET + q).chain([ANCILLA]).collect();
        let mut base = Vec::with_capacity(4);
        let mut cnot_done = Vec::with_capacity(4);
        for state in DecompositionState::ALL {
            let mut t = Tableau::new(JOINT_QUBITS)?;
            execute_noiseless(&mut t, qrm_plus_prep().instructions(), &qrm_map)?;
            for g in state.logical_gates() {
                t.apply(&g)?;
            }
            execute_noiseless(&mut t, steane_zero_prep().instructions(), &steane_map)?;
            let mut c = t.clone();
            for g in logical_cnot(QRM_OFFSET, STEANE_OFFSET) {
                c.apply(&g)?;
            }
            base.push(t);
            cnot_done.push(c);
        }

        let qrm = build_qrm();
        let cells = core::array::from_fn(|i| qrm.x_stabilizers[i].x_mask() << QRM_OFFSET);
        let (plaq, logs) = steane_observables();
        Ok(Self {
            noise,
            mode,
            readout,
            tie,
            stage1,
            steane,
            downstream_sites: sites,
            downstream_sampler: SparseBernoulli::new(&probs),
            base: base.try_into().expect("four states"),
            cnot_done: cnot_done.try_into().expect("four states"),
            cells,
            xbar_qrm: qrm.logical_x.x_mask() << QRM_OFFSET,
            plaquettes: core::array::from_fn(|b| core::array::from_fn(|i| (plaq[b][i].x, plaq[b][i].z))),
            logicals: core::array::from_fn(|b| (logs[b].x, logs[b].z, logs[b].negative)),
            decoder: DecoderTable::build(&build_steane()),
            stage1_flag_records,
        })
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn readout(&self) -> Readout {
        self.readout
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie
    }

    pub fn stage1(&self) -> &FaultTable {
        &self.stage1
    }

    pub fn steane(&self) -> &FaultTable {
        &self.steane
    }

    /// Records of the stage-1 circuit with the flag role.
    pub fn stage1_flag_records(&self) -> u64 {
        self.stage1_flag_records
    }

    pub fn runner(&self) -> Runner<'_> {
        Runner {
            protocol: self,
            reducer: FrameReducer::qrm(self.tie),
            scratch: Vec::new(),
            sites: Vec::new(),
        }
    }

    /// Every noise location of the protocol, stage 1 first.
    pub fn locations(&self) -> Vec<ProtocolLocation> {
        let mut out: Vec<ProtocolLocation> = self
            .stage1
            .program()
            .locations()
            .iter()
            .map(|&location| ProtocolLocation {
                stage: Stage::Stage1,
                location,
            })
            .collect();
        let sites = |stage, range: core::ops::Range<usize>| {
            self.downstream_sites[range]
                .iter()
                .map(move |&location| ProtocolLocation { stage, location })
        };
        out.extend(sites(Stage::TLayer, 0..15));
        out.extend(self.steane.program().locations().iter().map(|&location| ProtocolLocation {
            stage: Stage::SteanePrep,
            location,
        }));
        out.extend(sites(Stage::LogicalCnot, 15..22));
        out.extend(sites(Stage::Readout, 22..37));
        out
    }

    /// Downstream error from explicit faults.
    ///
    /// `site_faults` index [`Protocol::downstream_sites`] (T layer, CNOT,
    /// readout); `steane_faults` index the Steane preparation locations.
    pub fn downstream_error(
        &self,
        site_faults: &[Fault],
        steane_faults: &[Fault],
    ) -> DownstreamError {
        let s = self.steane.combine(steane_faults);
        let (mut bx, mut bz) = (
            (s.frame.x_mask() & 0x7f) << STEANE_OFFSET,
            (s.frame.z_mask() & 0x7f) << STEANE_OFFSET,
        );
        let (mut ax, mut az) = (0u64, 0u64);
        for &(site, opt) in site_faults {
            let loc = &self.downstream_sites[site as usize];
            let (fx, fz) = loc.fault_masks(opt as usize);
            if site < 15 {
                bx ^= fx;
                bz ^= fz;
            } else {
                ax ^= fx;
                az ^= fz;
            }
        }
        let (x, z) = through_logical_cnot(bx, bz);
        DownstreamError {
            x: x ^ ax,
            z: z ^ az,
            steane_rejected: s.flips != 0,
        }
    }

    /// T-layer, transversal CNOT and readout sites, in that order.
    pub fn downstream_sites(&self) -> &[NoiseLocation] {
        &self.downstream_sites
    }

    fn prepared(&self, state: usize, frame: &CliffordFrame) -> Tableau {
        if frame.is_identity() {
            return self.cnot_done[state].clone();
        }
        let mut t = self.base[state].clone();
        t.apply_pauli_masks(frame.residual.x_mask() << QRM_OFFSET, frame.residual.z_mask() << QRM_OFFSET);
        for g in frame.gates(QRM_OFFSET) {
            if !matches!(g, Gate::X(_) | Gate::Y(_) | Gate::Z(_)) {
                t.apply_unchecked(&g);
            }
        }
        for g in logical_cnot(QRM_OFFSET, STEANE_OFFSET) {
            t.apply_unchecked(&g);
        }
        t
    }

    /// Samples one state's downstream evolution and readout.
    pub fn run_downstream<R: RngCore + ?Sized>(
        &self,
        state: DecompositionState,
        frame: &CliffordFrame,
        error: &DownstreamError,
        rng: &mut R,
        record: &mut ShotRecord,
    ) {
        let s = state.index();
        record.teleport_accepted[s] = false;
        record.tomography_accepted[s] = [false; 2];
        record.outcomes[s] = [0; 2];
        if error.steane_rejected {
            return;
        }
        if frame.is_identity() && error.x | error.z == 0 {
            record.teleport_accepted[s] = true;
            record.tomography_accepted[s] = [true; 2];
            for (b, basis) in TomographyBasis::ALL.iter().enumerate() {
                let v = state.ideal(*basis);
                record.outcomes[s][b] = match (self.readout, v) {
                    (Readout::Sample, 0) => {
                        if coin(rng) {
                            -1
                        } else {
                            1
                        }
                    }
                    _ => v,
                };
            }
            return;
        }
        let mut t = self.prepared(s, frame);
        t.apply_pauli_masks(error.x, error.z);
        for &c in &self.cells {
            if t.measure_masks(c, 0, false, || coin(rng)).negative {
                return;
            }
        }
        let m = t.measure_masks(self.xbar_qrm, 0, false, || coin(rng)).negative;
        record.teleport_accepted[s] = true;
        for b in 0..2 {
            let mut tb = t.clone();
            let mut syndrome = 0u64;
            for (i, &(x, z)) in self.plaquettes[b].iter().enumerate() {
                let neg = tb.measure_masks(x, z, false, || coin(rng)).negative;
                syndrome |= (neg as u64) << i;
            }
            let flip = match self.mode {
                Mode::PostSelect if syndrome != 0 => continue,
                Mode::PostSelect => false,
                Mode::ErrorCorrect => self.decoder.decode(syndrome).is_some_and(|q| q < 3),
            };
            record.tomography_accepted[s][b] = true;
            let (x, z, neg) = self.logicals[b];
            let v = match self.readout {
                Readout::Expectation => tb.expectation_masks(x, z, neg),
                Readout::Sample => tb.measure_masks(x, z, neg, || coin(rng)).value(),
            };
            record.outcomes[s][b] = if m ^ flip { -v } else { v };
        }
    }

    /// Exact per-basis acceptance and weighted logical value for one state.
    pub fn exact_downstream(
        &self,
        state: DecompositionState,
        frame: &CliffordFrame,
        error: &DownstreamError,
    ) -> [BranchExact; 2] {
        let mut out = [BranchExact::default(); 2];
        if error.steane_rejected {
            return out;
        }
        let mut t = self.prepared(state.index(), frame);
        t.apply_pauli_masks(error.x, error.z);
        let mut p_accept = 1.0;
        for &c in &self.cells {
            p_accept *= t.postselect_masks(c, 0, false, false);
            if p_accept == 0.0 {
                return out;
            }
        }
        for m in [false, true] {
            let mut tm = t.clone();
            let pm = p_accept * tm.postselect_masks(self.xbar_qrm, 0, false, m);
            if pm == 0.0 {
                continue;
            }
            for b in 0..2 {
                let (x, z, neg) = self.logicals[b];
                for syndrome in 0..8u64 {
                    if self.mode == Mode::PostSelect && syndrome != 0 {
                        break;
                    }
                    let mut ts = tm.clone();
                    let mut p = pm;
                    for (i, &(px, pz)) in self.plaquettes[b].iter().enumerate() {
                        p *= ts.postselect_masks(px, pz, false, syndrome >> i & 1 == 1);
                        if p == 0.0 {
                            break;
                        }
                    }
                    if p == 0.0 {
                        continue;
                    }
                    let flip = self.decoder.decode(syndrome).is_some_and(|q| q < 3);
                    let v = ts.expectation_masks(x, z, neg) as f64;
                    out[b].accept += p;
                    out[b].weighted_value += p * if m ^ flip { -v } else { v };
                    out[b].corrected |= syndrome != 0;
                }
            }
        }
        out
    }
}

/// Phase-free image of a Pauli under the transversal CNOT.
#[inline]
pub fn through_logical_cnot(mut x: u64, mut z: u64) -> (u64, u64) {
    let lo = 0x7fu64;
    x ^= ((x >> QRM_OFFSET) & lo) << STEANE_OFFSET;
    z ^= ((z >> STEANE_OFFSET) & lo) << QRM_OFFSET;
    (x, z)
}

/// Per-worker state: frame reducer memo and scratch buffers.
#[derive(Clone, Debug)]
pub struct Runner<'a> {
    protocol: &'a Protocol,
    reducer: FrameReducer,
    scratch: Vec<Fault>,
    sites: Vec<u32>,
}

impl Runner<'_> {
    pub fn protocol(&self) -> &Protocol {
        self.protocol
    }

    pub fn reducer(&mut self) -> &mut FrameReducer {
        &mut self.reducer
    }

    /// Stage 1 only: the reduced data frame if every record reads +1.
    pub fn run_stage1<R: RngCore + ?Sized>(&mut self, rng: &mut R) -> Option<PauliOperator> {
        let s = self.protocol.stage1.sample_shot(rng, &mut self.scratch);
        if s.flips != 0 {
            return None;
        }
        let data = s.frame.restrict(0, 15).expect("15 data qubits");
        Some(self.reducer.reduce(&data))
    }

    pub fn sample_downstream_error<R: RngCore + ?Sized>(&mut self, rng: &mut R) -> DownstreamError {
        let p = self.protocol;
        self.scratch.clear();
        p.steane.program().sample_faults(rng, &mut self.scratch);
        let steane: Vec<Fault> = core::mem::take(&mut self.scratch);
        self.sites.clear();
        p.downstream_sampler.sample(rng, &mut self.sites);
        let faults: Vec<Fault> = self
            .sites
            .iter()
            .map(|&s| (s, below(rng, p.downstream_sites[s as usize].options()) as u8))
            .collect();
        let e = p.downstream_error(&faults, &steane);
        self.scratch = steane;
        e
    }

    pub fn run_shot<R: RngCore + ?Sized>(&mut self, rng: &mut R) -> ShotRecord {
        let mut record = ShotRecord::default();
        let Some(frame) = self.run_stage1(rng) else {
            return record;
        };
        record.stage1_accepted = true;
        let cf = to_clifford_frame(&frame);
        for state in DecompositionState::ALL {
            let e = self.sample_downstream_error(rng);
            self.protocol.run_downstream(state, &cf, &e, rng, &mut record);
        }
        record
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::shot_rng;

    #[test]
    fn noiseless_shot_gives_delta_four() {
        let p = Protocol::new(NoiseModel::noiseless(), Mode::ErrorCorrect).unwrap();
        let mut r = p.runner();
        let rec = r.run_shot(&mut shot_rng(0, 0));
        assert!(rec.stage1_accepted);
        for s in 0..4 {
            for b in 0..2 {
                assert!(rec.accepted(s, b));
            }
        }
        assert_eq!(rec.delta(), 4);
    }

    #[test]
    fn exact_evaluation_matches_ideal_without_faults() {
        let p = Protocol::new(NoiseModel::noiseless(), Mode::ErrorCorrect).unwrap();
        let id = to_clifford_frame(&PauliOperator::identity(15).unwrap());
        let e = DownstreamError::default();
        for state in DecompositionState::ALL {
            let mut rec = ShotRecord::default();
            // X on a qRM qubit right before its X readout forces the tableau path.
            let harmless = DownstreamError { x: 1, z: 0, steane_rejected: false };
            p.run_downstream(state, &id, &harmless, &mut shot_rng(1, 0), &mut rec);
            let ex = p.exact_downstream(state, &id, &e);
            for (b, basis) in TomographyBasis::ALL.iter().enumerate() {
                assert_eq!(ex[b].accept, 1.0);
                assert_eq!(ex[b].weighted_value, state.ideal(*basis) as f64);
                assert_eq!(rec.outcomes[state.index()][b], state.ideal(*basis));
            }
        }
    }

    #[test]
    fn z15_before_readout_is_rejected() {
        let p = Protocol::new(NoiseModel::noiseless(), Mode::ErrorCorrect).unwrap();
        let id = to_clifford_frame(&PauliOperator::identity(15).unwrap());
        let e = DownstreamError { x: 0, z: 1 << 14, steane_rejected: false };
        let mut rec = ShotRecord::default();
        rec.stage1_accepted = true;
        p.run_downstream(DecompositionState::Plus, &id, &e, &mut shot_rng(2, 0), &mut rec);
        assert!(!rec.teleport_accepted[0]);
        assert_eq!(p.exact_downstream(DecompositionState::Plus, &id, &e)[0].accept, 0.0);
    }
}

//! Exhaustive fault injection over the whole protocol.
//!
//! A fault combination is a set of `(location, option)` pairs over
//! [`Protocol::locations`]. Stage-1 faults are combined through the stage-1
//! fault table; downstream faults hit all four decomposition states alike and
//! are evaluated exactly, branch by branch.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::frame::Fault;
use crate::protocol::{
    BranchExact, DecompositionState, DownstreamError, Protocol, Stage, TomographyBasis,
};
use crate::reduction::{to_clifford_frame, FrameReducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultClass {
    /// A stage-1 flag record fired.
    Flagged,
    /// Some other check rejects the combination with certainty.
    Rejected,
    /// Accepted with a nontrivial syndrome or frame and the ideal logical values.
    Corrected,
    /// Accepted with certainty, trivially.
    Benign,
    LogicalFailure,
}

impl FaultClass {
    pub const ALL: [FaultClass; 5] = [
        FaultClass::Flagged,
        FaultClass::Rejected,
        FaultClass::Corrected,
        FaultClass::Benign,
        FaultClass::LogicalFailure,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FaultClass::Flagged => "flagged",
            FaultClass::Rejected => "rejected",
            FaultClass::Corrected => "corrected",
            FaultClass::Benign => "benign",
            FaultClass::LogicalFailure => "LOGICAL-FAILURE",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FaultReport {
    pub order: usize,
    pub combinations: u64,
    pub counts: [u64; 5],
    /// `Σ P(combination) · δ` over all combinations, where `δ` is the shift
    /// of the infidelity estimator caused by the combination with everything
    /// else noiseless. For order 2 this is the leading-order infidelity.
    pub weighted_infidelity: f64,
    /// The first few failing combinations, as global `(location, option)` pairs.
    pub failures: Vec<Vec<Fault>>,
}

impl FaultReport {
    pub const MAX_EXAMPLES: usize = 32;

    pub fn count(&self, class: FaultClass) -> u64 {
        self.counts[class.index()]
    }

    pub fn logical_failures(&self) -> u64 {
        self.count(FaultClass::LogicalFailure)
    }

    fn add(&mut self, (class, shift): (FaultClass, f64), weight: f64, faults: &[Fault]) {
        self.combinations += 1;
        self.weighted_infidelity += weight * shift;
        self.counts[class.index()] += 1;
        if class == FaultClass::LogicalFailure && self.failures.len() < Self::MAX_EXAMPLES {
            self.failures.push(faults.to_vec());
        }
    }
}

type Key = (u64, u64, u64, u64, bool);

pub struct FaultEnumerator<'a> {
    protocol: &'a Protocol,
    reducer: FrameReducer,
    layout: Vec<(Stage, u32, u8)>,
    memo: BTreeMap<Key, (FaultClass, f64)>,
    weights: Vec<f64>,
    stage1: Vec<Fault>,
    steane: Vec<Fault>,
    sites: Vec<Fault>,
}

impl<'a> FaultEnumerator<'a> {
    pub fn new(protocol: &'a Protocol) -> Self {
        let mut layout = Vec::new();
        let mut weights = Vec::new();
        let mut local = [0u32; 3];
        for loc in protocol.locations() {
            weights.push(loc.location.probability / loc.location.options() as f64);
            let slot = match loc.stage {
                Stage::Stage1 => 0,
                Stage::SteanePrep => 1,
                _ => 2,
            };
            layout.push((loc.stage, local[slot], loc.location.options() as u8));
            local[slot] += 1;
        }
        Self {
            protocol,
            reducer: FrameReducer::qrm(protocol.tie_break()),
            layout,
            memo: BTreeMap::new(),
            weights,
            stage1: Vec::new(),
            steane: Vec::new(),
            sites: Vec::new(),
        }
    }

    /// `(stage, stage-local index, option count)` per global location.
    pub fn layout(&self) -> &[(Stage, u32, u8)] {
        &self.layout
    }

    pub fn classify(&mut self, faults: &[Fault]) -> Result<FaultClass, Error> {
        self.evaluate(faults).map(|(c, _)| c)
    }

    /// Probability of one specific option at global location `l`.
    pub fn option_probability(&self, l: usize) -> f64 {
        self.weights[l]
    }

    /// Class and infidelity shift `δ = (Δ_ideal − Δ) / 8` of a combination.
    pub fn evaluate(&mut self, faults: &[Fault]) -> Result<(FaultClass, f64), Error> {
        self.stage1.clear();
        self.steane.clear();
        self.sites.clear();
        for &(l, o) in faults {
            let &(stage, local, opts) = self
                .layout
                .get(l as usize)
                .ok_or(Error::InvalidLocation(l as usize))?;
            if o >= opts {
                return Err(Error::InvalidLocation(l as usize));
            }
            match stage {
                Stage::Stage1 => self.stage1.push((local, o)),
                Stage::SteanePrep => self.steane.push((local, o)),
                _ => self.sites.push((local, o)),
            }
        }
        let p = self.protocol;
        let s1 = p.stage1().combine(&self.stage1);
        if s1.flips & p.stage1_flag_records() != 0 {
            return Ok((FaultClass::Flagged, 0.0));
        }
        if s1.flips != 0 {
            return Ok((FaultClass::Rejected, 0.0));
        }
        let frame = self
            .reducer
            .reduce(&s1.frame.restrict(0, 15).expect("15 data qubits"));
        let err = p.downstream_error(&self.sites, &self.steane);
        if err.steane_rejected {
            return Ok((FaultClass::Rejected, 0.0));
        }
        if frame.is_identity() && err.is_trivial() {
            return Ok((FaultClass::Benign, 0.0));
        }
        let key = (frame.x_mask(), frame.z_mask(), err.x, err.z, err.steane_rejected);
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let cf = to_clifford_frame(&frame);
        let results: [[BranchExact; 2]; 4] =
            core::array::from_fn(|s| p.exact_downstream(DecompositionState::ALL[s], &cf, &err));
        let c = (judge(&results, !frame.is_identity()), shift(&results));
        self.memo.insert(key, c);
        Ok(c)
    }

    pub fn enumerate(&mut self, order: usize) -> Result<FaultReport, Error> {
        let mut report = FaultReport {
            order,
            ..FaultReport::default()
        };
        let n = self.layout.len();
        match order {
            1 => {
                for l in 0..n {
                    for o in 0..self.layout[l].2 {
                        let f = [(l as u32, o)];
                        let c = self.evaluate(&f)?;
                        report.add(c, self.weights[l], &f);
                    }
                }
            }
            2 => {
                for l1 in 0..n {
                    for l2 in l1 + 1..n {
                        for o1 in 0..self.layout[l1].2 {
                            for o2 in 0..self.layout[l2].2 {
                                let f = [(l1 as u32, o1), (l2 as u32, o2)];
                                let c = self.evaluate(&f)?;
                                report.add(c, self.weights[l1] * self.weights[l2], &f);
                            }
                        }
                    }
                }
            }
            _ => return Err(Error::FaultOrder(order)),
        }
        Ok(report)
    }
}

/// `−(1/8) Σ s_k (V_k − ideal_k · A_k)` over the eight branches.
fn shift(results: &[[BranchExact; 2]; 4]) -> f64 {
    let mut d = 0.0;
    for (s, state) in DecompositionState::ALL.iter().enumerate() {
        for (b, basis) in TomographyBasis::ALL.iter().enumerate() {
            let r = &results[s][b];
            d += state.sign() as f64 * (r.weighted_value - state.ideal(*basis) as f64 * r.accept);
        }
    }
    -d / 8.0
}

fn judge(results: &[[BranchExact; 2]; 4], nontrivial_frame: bool) -> FaultClass {
    let mut any_accept = false;
    let mut all_certain = true;
    let mut corrected = nontrivial_frame;
    for b in 0..2 {
        let a0 = results[0][b].accept;
        for (s, state) in DecompositionState::ALL.iter().enumerate() {
            let r = &results[s][b];
            if r.accept != a0 {
                return FaultClass::LogicalFailure;
            }
            if r.accept > 0.0 {
                any_accept = true;
                let ideal = state.ideal(TomographyBasis::ALL[b]) as f64;
                if r.weighted_value != ideal * r.accept {
                    return FaultClass::LogicalFailure;
                }
            }
            all_certain &= r.accept == 1.0;
            corrected |= r.corrected;
        }
    }
    if !any_accept {
        FaultClass::Rejected
    } else if all_certain && !corrected {
        FaultClass::Benign
    } else {
        FaultClass::Corrected
    }
}

/// Per-state exact results for an explicit downstream error and identity frame.
pub fn exact_for_error(protocol: &Protocol, err: &DownstreamError) -> [[BranchExact; 2]; 4] {
    let id = to_clifford_frame(&crate::pauli::PauliOperator::raw(15, 0, 0));
    core::array::from_fn(|s| protocol.exact_downstream(DecompositionState::ALL[s], &id, err))
}

//! Minimum-weight reduction of qRM frames and the Clifford frame `C(P)`.
//!
//! A frame `P` acting on `|+̄⟩` is only defined up to stabilizers and `X̄`.
//! The reduction scans the full coset: 32 X offsets generated by the four
//! X-cells and `X̄`, times 1024 Z offsets generated by the ten measured
//! Z-plaquettes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::codes::{build_qrm, CssCode};
use crate::gate::Gate;
use crate::pauli::PauliOperator;

/// Choice among equal-weight coset representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Smallest `(x_mask, z_mask)` as integers, qubit 1 in the lowest bit.
    #[default]
    LexMin,
    LexMax,
    /// Skip the reduction and keep the frame as sampled.
    Disabled,
}

/// Span of a generator list as a table of all XOR combinations.
fn span(gens: &[u64]) -> Vec<u64> {
    let mut out = alloc::vec![0u64];
    for &g in gens {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] ^ g);
        }
    }
    out
}

/// Coset reducer with a memo table; cheap to clone per worker.
#[derive(Clone, Debug)]
pub struct FrameReducer {
    x_offsets: Vec<u64>,
    z_offsets: Vec<u64>,
    tie: TieBreak,
    memo: BTreeMap<(u64, u64), (u64, u64)>,
}

impl FrameReducer {
    pub fn new(code: &CssCode, tie: TieBreak) -> Self {
        let mut xg: Vec<u64> = code.x_stabilizers.iter().map(|s| s.x_mask()).collect();
        xg.push(code.logical_x.x_mask());
        let zg: Vec<u64> = code
            .measured_z_generators()
            .iter()
            .map(|s| s.z_mask())
            .collect();
        Self {
            x_offsets: span(&xg),
            z_offsets: span(&zg),
            tie,
            memo: BTreeMap::new(),
        }
    }

    pub fn qrm(tie: TieBreak) -> Self {
        Self::new(&build_qrm(), tie)
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie
    }

    /// Minimum-weight member of `P · ⟨stabilizers, X̄⟩`.
    pub fn reduce(&mut self, p: &PauliOperator) -> PauliOperator {
        let key = (p.x_mask(), p.z_mask());
        if self.tie == TieBreak::Disabled || key == (0, 0) {
            return *p;
        }
        let (x, z) = match self.memo.get(&key) {
            Some(v) => *v,
            None => {
                let v = self.scan(key.0, key.1);
                self.memo.insert(key, v);
                v
            }
        };
        PauliOperator::raw(p.n(), x, z)
    }

    fn scan(&self, x: u64, z: u64) -> (u64, u64) {
        let max = self.tie == TieBreak::LexMax;
        let mut best = (u32::MAX, x, z);
        for &ox in &self.x_offsets {
            let xs = x ^ ox;
            for &oz in &self.z_offsets {
                let zs = z ^ oz;
                let w = (xs | zs).count_ones();
                if w > best.0 {
                    continue;
                }
                let better = w < best.0
                    || if max {
                        (xs, zs) > (best.1, best.2)
                    } else {
                        (xs, zs) < (best.1, best.2)
                    };
                if better {
                    best = (w, xs, zs);
                }
            }
        }
        (best.1, best.2)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// `T̄ P T̄† = C(P)` up to phase: the Pauli `P` followed by `S`/`S†` on its X support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordFrame {
    /// Qubits receiving `S` (odd labels) or `S†` (even labels).
    pub s_pattern: u64,
    pub residual: PauliOperator,
}

impl CliffordFrame {
    pub fn is_identity(&self) -> bool {
        self.s_pattern == 0 && self.residual.is_identity()
    }

    /// Gates in application order: residual Pauli, then the S layer.
    pub fn gates(&self, offset: usize) -> Vec<Gate> {
        let mut g = crate::codes::pauli_gates(&self.residual, offset);
        for q in 0..self.residual.n() {
            if self.s_pattern >> q & 1 == 1 {
                g.push(if q % 2 == 0 {
                    Gate::S(q + offset)
                } else {
                    Gate::Sdg(q + offset)
                });
            }
        }
        g
    }
}

pub fn to_clifford_frame(reduced: &PauliOperator) -> CliffordFrame {
    CliffordFrame {
        s_pattern: reduced.x_mask(),
        residual: *reduced,
    }
}

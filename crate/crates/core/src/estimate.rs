//! Sufficient statistics and the fidelity estimator.
//!
//! Every shot contributes to eight branches `k = 2·state + basis`, each with an
//! acceptance indicator `a_k` and a value `v_k ∈ {−1, 0, 1}`. The tally keeps
//! the per-branch sums and all pairwise cross sums, so partial tallies merge
//! exactly and the delta-method variance of `Δ = Σ s_k V_k / A_k` is available
//! without a second pass.

use core::ops::Range;

use crate::protocol::{DecompositionState, Protocol, ShotRecord};
use crate::rng::shot_rng;

pub const BRANCHES: usize = 8;
const VARS: usize = 2 * BRANCHES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub shots: u64,
    pub stage1_accepted: u64,
    pub accepted: [u64; BRANCHES],
    pub value_sum: [i64; BRANCHES],
    /// `Σ y_i y_j` over shots with `y = (a_0..a_7, v_0..v_7)`.
    pub cross: [[i64; VARS]; VARS],
}

impl Default for Tally {
    fn default() -> Self {
        Self {
            shots: 0,
            stage1_accepted: 0,
            accepted: [0; BRANCHES],
            value_sum: [0; BRANCHES],
            cross: [[0; VARS]; VARS],
        }
    }
}

fn sign(k: usize) -> f64 {
    DecompositionState::ALL[k / 2].sign() as f64
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, shot: &ShotRecord) {
        self.shots += 1;
        if !shot.stage1_accepted {
            return;
        }
        self.stage1_accepted += 1;
        let mut y = [0i64; VARS];
        for k in 0..BRANCHES {
            let (s, b) = (k / 2, k % 2);
            if shot.accepted(s, b) {
                y[k] = 1;
                y[BRANCHES + k] = shot.outcomes[s][b] as i64;
            }
        }
        for k in 0..BRANCHES {
            self.accepted[k] += y[k] as u64;
            self.value_sum[k] += y[BRANCHES + k];
        }
        for i in 0..VARS {
            if y[i] == 0 {
                continue;
            }
            for j in 0..VARS {
                self.cross[i][j] += y[i] * y[j];
            }
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.shots += other.shots;
        self.stage1_accepted += other.stage1_accepted;
        for k in 0..BRANCHES {
            self.accepted[k] += other.accepted[k];
            self.value_sum[k] += other.value_sum[k];
        }
        for i in 0..VARS {
            for j in 0..VARS {
                self.cross[i][j] += other.cross[i][j];
            }
        }
    }

    pub fn n_tot(&self) -> u64 {
        BRANCHES as u64 * self.shots
    }

    pub fn n_post(&self) -> u64 {
        self.accepted.iter().sum()
    }

    /// `None` when some branch has no accepted shot.
    pub fn estimate(&self) -> Option<Estimate> {
        if self.shots == 0 || self.accepted.contains(&0) {
            return None;
        }
        let n = self.shots as f64;
        let mut mean = [0.0; VARS];
        for k in 0..BRANCHES {
            mean[k] = self.accepted[k] as f64 / n;
            mean[BRANCHES + k] = self.value_sum[k] as f64 / n;
        }
        let mut expectations = [[0.0; 2]; 4];
        let mut delta = 0.0;
        let mut grad = [0.0; VARS];
        for k in 0..BRANCHES {
            let (a, v) = (mean[k], mean[BRANCHES + k]);
            let e = v / a;
            expectations[k / 2][k % 2] = e;
            delta += sign(k) * e;
            grad[k] = -sign(k) * v / (a * a);
            grad[BRANCHES + k] = sign(k) / a;
        }
        let mut var = 0.0;
        for i in 0..VARS {
            for j in 0..VARS {
                let cov = self.cross[i][j] as f64 / n - mean[i] * mean[j];
                var += grad[i] * cov * grad[j];
            }
        }
        let sigma_delta = libm::sqrt(var.max(0.0) / n);
        let n_tot = self.n_tot();
        let n_post = self.n_post();
        let p_accept = n_post as f64 / n_tot as f64;
        Some(Estimate {
            shots: self.shots,
            n_tot,
            n_post,
            p_accept,
            p_reject: 1.0 - p_accept,
            sigma_accept: libm::sqrt(p_accept * (1.0 - p_accept) / n),
            delta,
            p_fail: 0.5 - delta / 8.0,
            sigma_fail: sigma_delta / 8.0,
            expectations,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub shots: u64,
    /// Branch count, eight per shot.
    pub n_tot: u64,
    /// Accepted branches.
    pub n_post: u64,
    pub p_accept: f64,
    pub p_reject: f64,
    /// Binomial standard error of the acceptance rate over shots.
    pub sigma_accept: f64,
    pub delta: f64,
    pub p_fail: f64,
    pub sigma_fail: f64,
    /// `[state][basis]` conditional expectation over accepted shots.
    pub expectations: [[f64; 2]; 4],
}

/// Runs shots `range` with per-shot random streams of `seed`.
pub fn run_shots(protocol: &Protocol, seed: u64, range: Range<u64>) -> Tally {
    let mut runner = protocol.runner();
    let mut tally = Tally::new();
    for shot in range {
        let mut rng = shot_rng(seed, shot);
        tally.record(&runner.run_shot(&mut rng));
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal() -> ShotRecord {
        ShotRecord {
            stage1_accepted: true,
            teleport_accepted: [true; 4],
            tomography_accepted: [[true; 2]; 4],
            outcomes: [[1, 0], [-1, 0], [0, 1], [0, -1]],
        }
    }

    #[test]
    fn noiseless_records() {
        let mut t = Tally::new();
        for _ in 0..10 {
            t.record(&ideal());
        }
        let e = t.estimate().unwrap();
        assert_eq!(e.delta, 4.0);
        assert_eq!(e.p_fail, 0.0);
        assert_eq!(e.p_accept, 1.0);
        assert_eq!(e.sigma_fail, 0.0);
    }

    #[test]
    fn no_accepted_shots_gives_none() {
        let mut t = Tally::new();
        t.record(&ShotRecord::default());
        assert!(t.estimate().is_none());
        assert!(Tally::new().estimate().is_none());
    }

    #[test]
    fn merge_is_concatenation() {
        let mut bad = ideal();
        bad.outcomes[0][0] = -1;
        bad.tomography_accepted[2][1] = false;
        let shots = [ideal(), bad, ShotRecord::default(), ideal()];
        let mut all = Tally::new();
        shots.iter().for_each(|s| all.record(s));
        let mut a = Tally::new();
        let mut b = Tally::new();
        shots[..1].iter().for_each(|s| a.record(s));
        shots[1..].iter().for_each(|s| b.record(s));
        a.merge(&b);
        assert_eq!(a, all);
    }
}

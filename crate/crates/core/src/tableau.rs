//! Stabilizer/destabilizer tableau simulator.
//!
//! Rows `0..n` are destabilizers and rows `n..2n` stabilizers. Each row is a
//! signed Y-literal Pauli packed into two words, so qubit counts are capped at
//! [`MAX_QUBITS`](crate::pauli::MAX_QUBITS). Observables of any weight can be
//! measured directly; single-qubit measurements are the weight-one case.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::Error;
use crate::gate::Gate;
use crate::pauli::{mask_for, product_phase_masks, PauliOperator, SignedPauli, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Row {
    x: u64,
    z: u64,
    neg: bool,
}

impl Row {
    #[inline]
    fn anticommutes(&self, x: u64, z: u64) -> bool {
        ((self.x & z) ^ (self.z & x)).count_ones() & 1 == 1
    }

    /// `self ← other · self`, keeping only the real part of the phase.
    #[inline]
    fn left_multiply(&mut self, other: &Row) {
        let k = product_phase_masks(other.x, other.z, self.x, self.z)
            + 2 * (self.neg as u32 + other.neg as u32);
        self.x ^= other.x;
        self.z ^= other.z;
        self.neg = k & 2 != 0;
    }
}

/// Result of a Pauli measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `true` for eigenvalue −1.
    pub negative: bool,
    pub deterministic: bool,
}

impl Measurement {
    pub fn value(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// Pure stabilizer state on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: Vec<Row>,
}

impl Tableau {
    /// `|0…0⟩` on `n` qubits.
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let mut rows = Vec::with_capacity(2 * n);
        rows.extend((0..n).map(|q| Row {
            x: 1 << q,
            z: 0,
            neg: false,
        }));
        rows.extend((0..n).map(|q| Row {
            x: 0,
            z: 1 << q,
            neg: false,
        }));
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stabilizer generators as signed operators.
    pub fn stabilizers(&self) -> impl Iterator<Item = SignedPauli> + '_ {
        self.rows[self.n..].iter().map(move |r| {
            SignedPauli::new(PauliOperator::raw(self.n, r.x, r.z), r.neg)
        })
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<(), Error> {
        gate.check(self.n)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_unchecked(&mut self, gate: &Gate) {
        for r in &mut self.rows {
            gate.conjugate_row(&mut r.x, &mut r.z, &mut r.neg);
        }
        debug_assert!(self.stabilizers_commute());
    }

    /// Applies a Pauli operator as a gate.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<(), Error> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        self.apply_pauli_masks(p.x_mask(), p.z_mask());
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_pauli_masks(&mut self, x: u64, z: u64) {
        if x | z == 0 {
            return;
        }
        for r in &mut self.rows {
            r.neg ^= r.anticommutes(x, z);
        }
    }

    fn check_observable(&self, obs: &SignedPauli) -> Result<(), Error> {
        if obs.op.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: obs.op.n(),
            });
        }
        Ok(())
    }

    /// Index of the first stabilizer row anticommuting with `(x, z)`.
    fn anticommuting_stabilizer(&self, x: u64, z: u64) -> Option<usize> {
        (self.n..2 * self.n).find(|&i| self.rows[i].anticommutes(x, z))
    }

    /// Sign of `(x, z)` as a stabilizer-group member; requires it to commute with every stabilizer.
    fn deterministic_sign(&self, x: u64, z: u64) -> bool {
        let mut acc = Row { x: 0, z: 0, neg: false };
        for i in 0..self.n {
            if self.rows[i].anticommutes(x, z) {
                acc.left_multiply(&self.rows[i + self.n]);
            }
        }
        debug_assert!(acc.x == x && acc.z == z);
        acc.neg
    }

    /// Measures `obs`, drawing random outcomes from `choose`.
    pub fn measure_with(
        &mut self,
        obs: &SignedPauli,
        choose: impl FnOnce() -> bool,
    ) -> Result<Measurement, Error> {
        self.check_observable(obs)?;
        Ok(self.measure_masks(obs.op.x_mask(), obs.op.z_mask(), obs.negative, choose))
    }

    pub(crate) fn measure_masks(
        &mut self,
        x: u64,
        z: u64,
        obs_negative: bool,
        choose: impl FnOnce() -> bool,
    ) -> Measurement {
        match self.anticommuting_stabilizer(x, z) {
            None => Measurement {
                negative: self.deterministic_sign(x, z) ^ obs_negative,
                deterministic: true,
            },
            Some(p) => {
                let pivot = self.rows[p];
                for i in 0..2 * self.n {
                    if i != p && self.rows[i].anticommutes(x, z) {
                        self.rows[i].left_multiply(&pivot);
                    }
                }
                let negative = choose();
                self.rows[p - self.n] = pivot;
                self.rows[p] = Row {
                    x,
                    z,
                    neg: negative ^ obs_negative,
                };
                debug_assert!(self.stabilizers_commute());
                Measurement {
                    negative,
                    deterministic: false,
                }
            }
        }
    }

    pub fn measure<R: RngCore + ?Sized>(
        &mut self,
        obs: &SignedPauli,
        rng: &mut R,
    ) -> Result<Measurement, Error> {
        self.measure_with(obs, || rng.next_u32() & 1 == 1)
    }

    /// Projects onto the `negative` eigenspace of `obs`.
    ///
    /// Returns the probability of that outcome (`1`, `1/2` or `0`); the state is
    /// left untouched when the probability is zero.
    pub fn postselect(&mut self, obs: &SignedPauli, negative: bool) -> Result<f64, Error> {
        self.check_observable(obs)?;
        Ok(self.postselect_masks(obs.op.x_mask(), obs.op.z_mask(), obs.negative, negative))
    }

    pub(crate) fn postselect_masks(&mut self, x: u64, z: u64, obs_neg: bool, negative: bool) -> f64 {
        let m = self.measure_masks(x, z, obs_neg, || negative);
        match (m.deterministic, m.negative == negative) {
            (false, _) => 0.5,
            (true, true) => 1.0,
            (true, false) => 0.0,
        }
    }

    /// `±1` when `obs` has a definite value, `0` when its outcome is random.
    pub fn expectation(&self, obs: &SignedPauli) -> Result<i8, Error> {
        self.check_observable(obs)?;
        Ok(self.expectation_masks(obs.op.x_mask(), obs.op.z_mask(), obs.negative))
    }

    pub(crate) fn expectation_masks(&self, x: u64, z: u64, obs_neg: bool) -> i8 {
        if self.anticommuting_stabilizer(x, z).is_some() {
            0
        } else if self.deterministic_sign(x, z) ^ obs_neg {
            -1
        } else {
            1
        }
    }

    /// Resets qubit `q` to `|0⟩`.
    pub fn reset(&mut self, q: usize) -> Result<(), Error> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        let m = self.measure_masks(0, 1 << q, false, || false);
        if m.negative {
            self.apply_pauli_masks(1 << q, 0);
        }
        Ok(())
    }

    /// Resets qubit `q` to `|+⟩`.
    pub fn reset_plus(&mut self, q: usize) -> Result<(), Error> {
        self.reset(q)?;
        self.apply_unchecked(&Gate::H(q));
        Ok(())
    }

    /// Every stabilizer row commutes with every other and destabilizer pairing holds.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let full = mask_for(n);
        for i in 0..2 * n {
            if (self.rows[i].x | self.rows[i].z) & !full != 0 {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = &self.rows[n + i];
                let d = &self.rows[j];
                let anti = d.anticommutes(s.x, s.z);
                if anti != (i == j) {
                    return false;
                }
            }
        }
        self.stabilizers_commute()
    }

    fn stabilizers_commute(&self) -> bool {
        let n = self.n;
        (n..2 * n).all(|i| {
            (i + 1..2 * n).all(|j| !self.rows[i].anticommutes(self.rows[j].x, self.rows[j].z))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliKind;

    fn obs(n: usize, s: &str) -> SignedPauli {
        SignedPauli::parse(n, s).unwrap()
    }

    struct Counter(u64);
    impl RngCore for Counter {
        fn next_u32(&mut self) -> u32 {
            self.next_u64() as u32
        }
        fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 17
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            for b in dst {
                *b = self.next_u32() as u8;
            }
        }
    }

    #[test]
    fn zero_state_measurements() {
        let mut t = Tableau::new(1).unwrap();
        let m = t.measure(&obs(1, "Z1"), &mut Counter(1)).unwrap();
        assert!(m.deterministic && !m.negative);
        let mut t = Tableau::new(2).unwrap();
        assert!(!t.measure(&obs(2, "X1"), &mut Counter(1)).unwrap().deterministic);
        let t = Tableau::new(7).unwrap();
        assert_eq!(t.expectation(&obs(7, "Z1 Z2 Z6 Z7")).unwrap(), 1);
    }

    #[test]
    fn x_on_zero_is_unbiased() {
        let mut rng = Counter(7);
        let total: i64 = (0..10_000)
            .map(|_| {
                let mut t = Tableau::new(1).unwrap();
                t.measure(&obs(1, "X1"), &mut rng).unwrap().value() as i64
            })
            .sum();
        assert!((total as f64 / 10_000.0).abs() < 0.05);
    }

    #[test]
    fn bell_pair_correlations() {
        let mut t = Tableau::new(2).unwrap();
        t.apply(&Gate::H(0)).unwrap();
        t.apply(&Gate::Cnot(0, 1)).unwrap();
        assert_eq!(t.expectation(&obs(2, "X1 X2")).unwrap(), 1);
        assert_eq!(t.expectation(&obs(2, "Z1 Z2")).unwrap(), 1);
        assert_eq!(t.expectation(&obs(2, "Y1 Y2")).unwrap(), -1);
        assert_eq!(t.expectation(&obs(2, "Z1")).unwrap(), 0);
        let a = t.measure_with(&obs(2, "Z1"), || true).unwrap();
        assert!(a.negative && !a.deterministic);
        assert_eq!(t.expectation(&obs(2, "Z2")).unwrap(), -1);
        assert!(t.is_valid());
    }

    #[test]
    fn s_gate_maps_plus_to_y_eigenstate() {
        let mut t = Tableau::new(1).unwrap();
        t.apply(&Gate::H(0)).unwrap();
        t.apply(&Gate::S(0)).unwrap();
        assert_eq!(t.expectation(&obs(1, "Y1")).unwrap(), 1);
        t.apply(&Gate::Sdg(0)).unwrap();
        t.apply(&Gate::Sdg(0)).unwrap();
        assert_eq!(t.expectation(&obs(1, "Y1")).unwrap(), -1);
    }

    #[test]
    fn postselection_probabilities() {
        let mut t = Tableau::new(1).unwrap();
        assert_eq!(t.postselect(&obs(1, "Z1"), true).unwrap(), 0.0);
        assert_eq!(t.postselect(&obs(1, "X1"), true).unwrap(), 0.5);
        assert_eq!(t.expectation(&obs(1, "X1")).unwrap(), -1);
    }

    #[test]
    fn reset_restores_zero() {
        let mut t = Tableau::new(2).unwrap();
        t.apply(&Gate::H(0)).unwrap();
        t.apply(&Gate::Cnot(0, 1)).unwrap();
        t.reset(1).unwrap();
        assert_eq!(t.expectation(&obs(2, "Z2")).unwrap(), 1);
        t.reset_plus(0).unwrap();
        assert_eq!(t.expectation(&obs(2, "X1")).unwrap(), 1);
    }

    #[test]
    fn pauli_gates_flip_signs() {
        let mut t = Tableau::new(3).unwrap();
        t.apply_pauli(&PauliOperator::on(3, PauliKind::X, &[0, 2]).unwrap())
            .unwrap();
        assert_eq!(t.expectation(&obs(3, "Z1")).unwrap(), -1);
        assert_eq!(t.expectation(&obs(3, "Z2")).unwrap(), 1);
        assert_eq!(t.expectation(&obs(3, "Z1 Z3")).unwrap(), 1);
    }
}

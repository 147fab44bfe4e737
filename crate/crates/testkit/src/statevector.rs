//! Dense state-vector simulator for at most six qubits.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

pub const MAX_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    H(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateVectorError {
    TooManyQubits(usize),
    QubitOutOfRange(usize),
    BadPauli(String),
}

impl fmt::Display for StateVectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateVectorError::TooManyQubits(n) => write!(f, "{n} qubits exceeds the limit of {MAX_QUBITS}"),
            StateVectorError::QubitOutOfRange(q) => write!(f, "qubit {q} out of range"),
            StateVectorError::BadPauli(s) => write!(f, "bad Pauli string {s:?}"),
        }
    }
}

impl std::error::Error for StateVectorError {}

/// Amplitudes indexed by basis state; qubit `q` is bit `q` of the index.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self, StateVectorError> {
        if n > MAX_QUBITS {
            return Err(StateVectorError::TooManyQubits(n));
        }
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = c(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, StateVectorError> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || n > MAX_QUBITS {
            return Err(StateVectorError::TooManyQubits(n));
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn check(&self, q: usize) -> Result<(), StateVectorError> {
        if q >= self.n {
            Err(StateVectorError::QubitOutOfRange(q))
        } else {
            Ok(())
        }
    }

    fn single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a = self.amps[i];
                let b = self.amps[i | bit];
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[i | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    pub fn apply(&mut self, op: Op) -> Result<(), StateVectorError> {
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let (o, z, i1) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
        let h = c(FRAC_1_SQRT_2, 0.0);
        match op {
            Op::Cnot(a, b) => {
                self.check(a)?;
                self.check(b)?;
                if a == b {
                    return Err(StateVectorError::QubitOutOfRange(a));
                }
                for i in 0..self.amps.len() {
                    if i >> a & 1 == 1 && i >> b & 1 == 0 {
                        self.amps.swap(i, i | 1 << b);
                    }
                }
                return Ok(());
            }
            Op::H(q) | Op::S(q) | Op::Sdg(q) | Op::T(q) | Op::Tdg(q) | Op::X(q) | Op::Y(q) | Op::Z(q) => {
                self.check(q)?;
                let m = match op {
                    Op::H(_) => [[h, h], [h, -h]],
                    Op::S(_) => [[o, z], [z, i1]],
                    Op::Sdg(_) => [[o, z], [z, -i1]],
                    Op::T(_) => [[o, z], [z, w]],
                    Op::Tdg(_) => [[o, z], [z, w.conj()]],
                    Op::X(_) => [[z, o], [o, z]],
                    Op::Y(_) => [[z, -i1], [i1, z]],
                    _ => [[o, z], [z, -o]],
                };
                self.single(q, m);
            }
        }
        Ok(())
    }

    pub fn run(&mut self, ops: &[Op]) -> Result<(), StateVectorError> {
        ops.iter().try_for_each(|&op| self.apply(op))
    }

    /// Applies a Pauli string such as `"XIZ"` (character `q` acts on qubit `q`).
    pub fn apply_pauli(&mut self, pauli: &str) -> Result<(), StateVectorError> {
        let ops = self.pauli_ops(pauli)?;
        self.run(&ops)
    }

    fn pauli_ops(&self, pauli: &str) -> Result<Vec<Op>, StateVectorError> {
        if pauli.chars().count() != self.n {
            return Err(StateVectorError::BadPauli(pauli.to_string()));
        }
        pauli
            .chars()
            .enumerate()
            .filter(|(_, ch)| *ch != 'I')
            .map(|(q, ch)| match ch {
                'X' => Ok(Op::X(q)),
                'Y' => Ok(Op::Y(q)),
                'Z' => Ok(Op::Z(q)),
                _ => Err(StateVectorError::BadPauli(pauli.to_string())),
            })
            .collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨self|other⟩|`, which is 1 iff the states agree up to global phase.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// `⟨ψ|P|ψ⟩` for a Pauli string.
    pub fn expectation(&self, pauli: &str) -> Result<f64, StateVectorError> {
        let mut p = self.clone();
        p.apply_pauli(pauli)?;
        Ok(self.inner(&p).re)
    }

    /// Probability of each computational basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples a full computational-basis measurement, as a bit pattern.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let r: f64 = rng.random();
        let mut acc = 0.0;
        for (i, p) in self.probabilities().into_iter().enumerate() {
            acc += p;
            if r < acc {
                return i;
            }
        }
        self.amps.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_on_plus() {
        let mut s = StateVector::zero(1).unwrap();
        s.run(&[Op::H(0), Op::T(0)]).unwrap();
        assert!((s.expectation("X").unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.expectation("Y").unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bell_state() {
        let mut s = StateVector::zero(2).unwrap();
        s.run(&[Op::H(0), Op::Cnot(0, 1)]).unwrap();
        assert!((s.expectation("ZZ").unwrap() - 1.0).abs() < 1e-12);
        assert!((s.expectation("YY").unwrap() + 1.0).abs() < 1e-12);
        assert!(s.expectation("ZI").unwrap().abs() < 1e-12);
    }

    #[test]
    fn size_limit() {
        assert_eq!(StateVector::zero(7).unwrap_err(), StateVectorError::TooManyQubits(7));
    }
}

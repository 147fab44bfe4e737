//! Clifford gate set shared by the tableau and frame engines.

use core::fmt;

use crate::error::Error;

/// Clifford gate on 0-based qubit indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// Control, target.
    Cnot(usize, usize),
}

impl Gate {
    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot(..))
    }

    /// Qubits touched, first slot always valid.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                (q, None)
            }
            Gate::Cnot(c, t) => (c, Some(t)),
        }
    }

    pub fn check(&self, n: usize) -> Result<(), Error> {
        let (a, b) = self.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        if let Gate::Cnot(c, t) = *self {
            if c == t {
                return Err(Error::InvalidGate("cnot control equals target"));
            }
        }
        Ok(())
    }

    /// Same gate with qubits sent through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Y(q) => Gate::Y(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::Cnot(c, t) => Gate::Cnot(f(c), f(t)),
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    /// In-place `U P U†` on a signed Y-literal row.
    #[inline]
    pub(crate) fn conjugate_row(&self, x: &mut u64, z: &mut u64, neg: &mut bool) {
        match *self {
            Gate::H(q) => {
                let xb = *x >> q & 1;
                let zb = *z >> q & 1;
                *neg ^= xb & zb == 1;
                *x = (*x & !(1 << q)) | zb << q;
                *z = (*z & !(1 << q)) | xb << q;
            }
            Gate::S(q) => {
                let xb = *x >> q & 1;
                let zb = *z >> q & 1;
                *neg ^= xb & zb == 1;
                *z ^= xb << q;
            }
            Gate::Sdg(q) => {
                let xb = *x >> q & 1;
                let zb = *z >> q & 1;
                *neg ^= xb & (zb ^ 1) == 1;
                *z ^= xb << q;
            }
            Gate::X(q) => *neg ^= *z >> q & 1 == 1,
            Gate::Z(q) => *neg ^= *x >> q & 1 == 1,
            Gate::Y(q) => *neg ^= (*x ^ *z) >> q & 1 == 1,
            Gate::Cnot(c, t) => {
                let xc = *x >> c & 1;
                let zc = *z >> c & 1;
                let xt = *x >> t & 1;
                let zt = *z >> t & 1;
                *neg ^= xc & zt & (xt ^ zc ^ 1) == 1;
                *x ^= xc << t;
                *z ^= zt << c;
            }
        }
    }

    pub(crate) fn mnemonic(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "S_DAG",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Cnot(..) => "CNOT",
        }
    }

    /// Parses a mnemonic with 0-based qubit operands.
    pub(crate) fn from_mnemonic(name: &str, qubits: &[usize]) -> Result<Gate, Error> {
        let one = |f: fn(usize) -> Gate| match qubits {
            [q] => Ok(f(*q)),
            _ => Err(Error::InvalidGate("wrong operand count")),
        };
        match name {
            "H" => one(Gate::H),
            "S" => one(Gate::S),
            "S_DAG" => one(Gate::Sdg),
            "X" => one(Gate::X),
            "Y" => one(Gate::Y),
            "Z" => one(Gate::Z),
            "CNOT" | "CX" => match qubits {
                [c, t] => Ok(Gate::Cnot(*c, *t)),
                _ => Err(Error::InvalidGate("wrong operand count")),
            },
            _ => Err(Error::UnknownInstruction(alloc::string::String::from(name))),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qubits() {
            (a, None) => write!(f, "{} {}", self.mnemonic(), a + 1),
            (a, Some(b)) => write!(f, "{} {} {}", self.mnemonic(), a + 1, b + 1),
        }
    }
}

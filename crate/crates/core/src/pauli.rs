//! Phase-free and signed Pauli operators over at most 64 qubits.
//!
//! A [`PauliOperator`] stores one X mask and one Z mask in a machine word each;
//! qubit `q` carries `X` iff bit `q` of the X mask is set, `Z` iff bit `q` of the
//! Z mask is set, and `Y` iff both are. Products ignore phase.
//!
//! [`SignedPauli`] adds a real sign for Hermitian operators such as stabilizer
//! rows. The convention is the literal one: the operator with both bits set on a
//! qubit is the Hermitian `Y = iXZ`, not `XZ`.
//!
//! Text form uses 1-based qubit labels to match circuit figures: `"X1 Z3 Y7"`,
//! with `"I"` for the identity and an optional leading `+`/`-` for signed values.

use alloc::string::String;
use core::fmt;
use core::ops::Mul;

use crate::error::Error;

/// Largest qubit count a mask-backed operator can represent.
pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const NON_IDENTITY: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    fn letter(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

#[inline]
pub(crate) fn mask_for(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exponent `k` such that `a * b = i^k (a ⊕ b)` for Y-literal operators.
#[inline]
pub(crate) fn product_phase_masks(ax: u64, az: u64, bx: u64, bz: u64) -> u32 {
    let x1z2 = ax & bz;
    let anti = x1z2 ^ (az & bx);
    let px = ax ^ bx;
    let pz = az ^ bz;
    let minus = anti & (px ^ pz ^ x1z2);
    (anti.count_ones() + 2 * minus.count_ones()) & 3
}

/// Phase-free Pauli operator on `n ≤ 64` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliOperator {
    n: u8,
    x: u64,
    z: u64,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self, Error> {
        Self::from_masks(n, 0, 0)
    }

    /// Builds an operator from raw masks; bits above `n` are rejected.
    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self, Error> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let valid = mask_for(n);
        if (x | z) & !valid != 0 {
            return Err(Error::QubitOutOfRange {
                qubit: 64 - (x | z).leading_zeros() as usize - 1,
                n,
            });
        }
        Ok(Self { n: n as u8, x, z })
    }

    /// Internal constructor for masks already known to fit.
    #[inline]
    pub(crate) const fn raw(n: usize, x: u64, z: u64) -> Self {
        Self { n: n as u8, x, z }
    }

    /// Operator with `kind` on each of the listed 0-based qubits.
    pub fn on(n: usize, kind: PauliKind, qubits: &[usize]) -> Result<Self, Error> {
        let mut op = Self::identity(n)?;
        for &q in qubits {
            op = op.with(q, kind)?;
        }
        Ok(op)
    }

    /// Operator with `kind` on each of the listed 1-based qubit labels.
    pub fn on_labels(n: usize, kind: PauliKind, labels: &[usize]) -> Result<Self, Error> {
        let mut op = Self::identity(n)?;
        for &l in labels {
            if l == 0 {
                return Err(Error::QubitOutOfRange { qubit: 0, n });
            }
            op = op.with(l - 1, kind)?;
        }
        Ok(op)
    }

    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Result<Self, Error> {
        Self::identity(n)?.with(qubit, kind)
    }

    /// Returns a copy with qubit `q` replaced by `kind`.
    pub fn with(mut self, q: usize, kind: PauliKind) -> Result<Self, Error> {
        if q >= self.n() {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n() });
        }
        let bit = 1u64 << q;
        let (x, z) = kind.bits();
        self.x = (self.x & !bit) | if x { bit } else { 0 };
        self.z = (self.z & !bit) | if z { bit } else { 0 };
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn kind(&self, q: usize) -> PauliKind {
        PauliKind::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    /// X-only part of the operator.
    pub fn x_part(&self) -> Self {
        Self { z: 0, ..*self }
    }

    /// Z-only part of the operator.
    pub fn z_part(&self) -> Self {
        Self { x: 0, ..*self }
    }

    fn check_size(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Phase-free product.
    pub fn multiply(&self, other: &Self) -> Result<Self, Error> {
        self.check_size(other)?;
        Ok(Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        })
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &Self) -> Result<bool, Error> {
        self.check_size(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Exponent `k ∈ 0..4` with `self * other = i^k (self ⊕ other)`.
    pub fn product_phase(&self, other: &Self) -> Result<u32, Error> {
        self.check_size(other)?;
        Ok(product_phase_masks(self.x, self.z, other.x, other.z))
    }

    /// Embeds this operator into a larger register starting at `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> Result<Self, Error> {
        if offset + self.n() > n {
            return Err(Error::QubitOutOfRange {
                qubit: offset + self.n() - 1,
                n,
            });
        }
        Self::from_masks(n, self.x << offset, self.z << offset)
    }

    /// Restricts to qubits `offset..offset + n`.
    pub fn restrict(&self, offset: usize, n: usize) -> Result<Self, Error> {
        if offset + n > self.n() {
            return Err(Error::QubitOutOfRange {
                qubit: offset + n - 1,
                n: self.n(),
            });
        }
        let m = mask_for(n);
        Self::from_masks(n, (self.x >> offset) & m, (self.z >> offset) & m)
    }

    /// Parses the text form; `n` fixes the register size.
    pub fn parse(n: usize, text: &str) -> Result<Self, Error> {
        let mut op = Self::identity(n)?;
        for token in text.split_whitespace() {
            if token == "I" {
                continue;
            }
            let mut chars = token.chars();
            let kind = match chars.next() {
                Some('X') => PauliKind::X,
                Some('Y') => PauliKind::Y,
                Some('Z') => PauliKind::Z,
                _ => return Err(Error::Parse(String::from(token))),
            };
            let label: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(String::from(token)))?;
            if label == 0 || label > n {
                return Err(Error::QubitOutOfRange { qubit: label, n });
            }
            if op.kind(label - 1) != PauliKind::I {
                return Err(Error::Parse(String::from(token)));
            }
            op = op.with(label - 1, kind)?;
        }
        Ok(op)
    }
}

impl Mul for PauliOperator {
    type Output = PauliOperator;

    /// Phase-free product; panics when register sizes differ.
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs).expect("pauli size mismatch")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for q in 0..self.n() {
            let k = self.kind(q);
            if k == PauliKind::I {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}{}", k.letter(), q + 1)?;
        }
        Ok(())
    }
}

/// Hermitian Pauli operator with a real sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedPauli {
    pub op: PauliOperator,
    pub negative: bool,
}

impl SignedPauli {
    pub fn positive(op: PauliOperator) -> Self {
        Self { op, negative: false }
    }

    pub fn new(op: PauliOperator, negative: bool) -> Self {
        Self { op, negative }
    }

    pub fn negated(self) -> Self {
        Self {
            negative: !self.negative,
            ..self
        }
    }

    /// `i^k · op` as a signed operator, if the phase is real.
    pub fn from_phase(exponent: u32, op: PauliOperator) -> Result<Self, Error> {
        match exponent & 3 {
            0 => Ok(Self::new(op, false)),
            2 => Ok(Self::new(op, true)),
            _ => Err(Error::NonHermitian),
        }
    }

    /// Product of two commuting signed operators.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        let k = self.op.product_phase(&other.op)?;
        let sign = 2 * (self.negative as u32 + other.negative as u32);
        Self::from_phase(k + sign, self.op * other.op)
    }

    /// `i · a · b` for anticommuting `a`, `b`; gives `Y = iXZ` from `X` and `Z`.
    pub fn i_product(a: &Self, b: &Self) -> Result<Self, Error> {
        let k = a.op.product_phase(&b.op)?;
        let sign = 2 * (a.negative as u32 + b.negative as u32);
        Self::from_phase(1 + k + sign, a.op * b.op)
    }

    /// Heisenberg image `U P U†` under a Clifford gate.
    pub fn conjugate_by(&self, gate: &crate::gate::Gate) -> Result<Self, Error> {
        gate.check(self.op.n())?;
        let (mut x, mut z, mut neg) = (self.op.x, self.op.z, self.negative);
        gate.conjugate_row(&mut x, &mut z, &mut neg);
        Ok(Self {
            op: PauliOperator::raw(self.op.n(), x, z),
            negative: neg,
        })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self, Error> {
        let t = text.trim_start();
        if let Some(rest) = t.strip_prefix('-') {
            Ok(Self::new(PauliOperator::parse(n, rest)?, true))
        } else {
            Ok(Self::positive(PauliOperator::parse(
                n,
                t.strip_prefix('+').unwrap_or(t),
            )?))
        }
    }
}

impl PauliOperator {
    /// Phase-free Heisenberg image under a Clifford gate.
    pub fn conjugate_by(&self, gate: &crate::gate::Gate) -> Result<Self, Error> {
        Ok(SignedPauli::positive(*self).conjugate_by(gate)?.op)
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { '-' } else { '+' }, self.op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;

    fn p(n: usize, s: &str) -> PauliOperator {
        PauliOperator::parse(n, s).unwrap()
    }

    #[test]
    fn x_times_z_is_y_up_to_phase() {
        let y = p(1, "X1") * p(1, "Z1");
        assert_eq!(y.kind(0), PauliKind::Y);
    }

    #[test]
    fn plaquette_products() {
        let p1 = p(7, "Z1 Z2 Z6 Z7");
        assert!((p1 * p1).is_identity());
        assert_eq!(p1 * p(7, "Z2 Z3 Z4 Z7"), p(7, "Z1 Z3 Z4 Z6"));
    }

    #[test]
    fn commutation_examples() {
        assert!(!p(1, "X1").commutes(&p(1, "Z1")).unwrap());
        assert!(p(2, "X1").commutes(&p(2, "Z2")).unwrap());
        let c1 = p(15, "X1 X2 X6 X7 X8 X9 X13 X14");
        assert!(c1.commutes(&p(15, "Z1 Z2 Z6 Z7")).unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(PauliOperator::identity(4).unwrap().weight(), 0);
        assert_eq!(p(5, "Y3").weight(), 1);
        assert_eq!(p(15, "X1 X2 X3 X4 X5 X6 X7").weight(), 7);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(matches!(
            p(2, "X1").multiply(&p(3, "X1")),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(p(2, "X1").commutes(&p(3, "Z1")).is_err());
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!(PauliOperator::parse(3, "X4").is_err());
        assert!(PauliOperator::parse(3, "X0").is_err());
        assert!(PauliOperator::parse(3, "W1").is_err());
        assert!(PauliOperator::parse(3, "X1 Z1").is_err());
        assert_eq!(PauliOperator::parse(3, "I").unwrap().weight(), 0);
    }

    #[test]
    fn display_uses_one_based_labels() {
        assert_eq!(p(7, "Y7 X1 Z3").to_string(), "X1 Z3 Y7");
        assert_eq!(PauliOperator::identity(3).unwrap().to_string(), "I");
    }

    #[test]
    fn standard_conjugations() {
        let s = SignedPauli::positive(p(1, "X1"))
            .conjugate_by(&Gate::S(0))
            .unwrap();
        assert_eq!(s, SignedPauli::positive(p(1, "Y1")));
        let c = SignedPauli::positive(p(2, "X1"))
            .conjugate_by(&Gate::Cnot(0, 1))
            .unwrap();
        assert_eq!(c.op, p(2, "X1 X2"));
        let h = SignedPauli::positive(p(1, "Z1"))
            .conjugate_by(&Gate::H(0))
            .unwrap();
        assert_eq!(h, SignedPauli::positive(p(1, "X1")));
        assert!(SignedPauli::positive(p(1, "X1"))
            .conjugate_by(&Gate::H(3))
            .is_err());
    }

    #[test]
    fn i_product_builds_hermitian_y() {
        let x = SignedPauli::positive(p(1, "X1"));
        let z = SignedPauli::positive(p(1, "Z1"));
        assert_eq!(
            SignedPauli::i_product(&x, &z).unwrap(),
            SignedPauli::positive(p(1, "Y1"))
        );
        // Z̄ X̄ ordering flips the sign.
        assert_eq!(SignedPauli::i_product(&z, &x).unwrap().negative, true);
        assert!(SignedPauli::i_product(&x, &x).is_err());
    }
}

//! Slow, deliberately simple reference implementations for the test suites.
//!
//! Nothing here depends on `colorswitch-core`: states are dense complex
//! vectors, Pauli operators are strings of `I`/`X`/`Y`/`Z` characters.

pub mod coset;
pub mod statevector;

pub use coset::{coset_minimizer_oracle, QrmTables};
pub use statevector::{Op, StateVector, StateVectorError};

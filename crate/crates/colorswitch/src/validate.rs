//! Noiseless checks of every circuit fixture and of the end-to-end protocol.
//!
//! A fixture is a circuit plus the signed Paulis that must stabilize its
//! output. In text form these are `#! expect <pauli>` lines inside the
//! circuit file, which the circuit parser skips as comments.

use std::fmt;

use colorswitch_core::circuits::{qrm_plus_prep, stage1_circuit, steane_zero_prep};
use colorswitch_core::codes::{build_qrm, build_steane};
use colorswitch_core::estimate::run_shots;
use colorswitch_core::frame::execute_noiseless;
use colorswitch_core::{Circuit, CssCode, Mode, NoiseModel, PauliOperator, Protocol, SignedPauli, Tableau};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub circuit: Circuit,
    pub expected: Vec<SignedPauli>,
}

impl Fixture {
    pub fn parse(name: &str, text: &str) -> Result<Self, CliError> {
        let circuit = Circuit::parse(text)?;
        let n = circuit.n_qubits();
        let mut expected = Vec::new();
        for line in text.lines() {
            if let Some(p) = line.trim().strip_prefix("#! expect") {
                expected.push(SignedPauli::parse(n, p.trim())?);
            }
        }
        Ok(Fixture {
            name: name.into(),
            circuit,
            expected,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.expected {
            s += &format!("#! expect {e}\n");
        }
        s + &self.circuit.to_text()
    }

    /// Runs the circuit; all outcomes must be deterministic `+1` and every
    /// expected operator must have expectation `+1`.
    pub fn check(&self) -> Result<(), String> {
        let n = self.circuit.n_qubits();
        let mut t = Tableau::new(n).map_err(|e| e.to_string())?;
        let map: Vec<usize> = (0..n).collect();
        let outcomes = execute_noiseless(&mut t, self.circuit.instructions(), &map).map_err(|e| e.to_string())?;
        if outcomes != 0 {
            return Err(format!("reference outcomes {outcomes:#b} are not all +1"));
        }
        for e in &self.expected {
            let v = t.expectation(e).map_err(|err| err.to_string())?;
            if v != 1 {
                return Err(format!("{e} has expectation {v}"));
            }
        }
        Ok(())
    }
}

fn code_stabilizers(code: &CssCode, n: usize, logical: &PauliOperator) -> Vec<SignedPauli> {
    code.x_stabilizers
        .iter()
        .chain(&code.z_stabilizers)
        .chain([logical])
        .map(|s| SignedPauli::positive(s.embed(n, 0).expect("fits")))
        .collect()
}

pub fn builtin_fixtures() -> Vec<Fixture> {
    let (qrm, steane) = (build_qrm(), build_steane());
    let mut out = Vec::new();
    for (name, c) in [("qrm_plus_prep", qrm_plus_prep()), ("stage1", stage1_circuit())] {
        let n = c.n_qubits();
        out.push(Fixture {
            name: name.into(),
            expected: code_stabilizers(&qrm, n, &qrm.logical_x),
            circuit: c,
        });
    }
    let c = steane_zero_prep();
    out.push(Fixture {
        name: "steane_zero_prep".into(),
        expected: code_stabilizers(&steane, c.n_qubits(), &steane.logical_z),
        circuit: c,
    });
    out
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub outcome: Result<(), String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Ok(()) => write!(f, "ok    {}", self.name),
            Err(e) => write!(f, "FAIL  {}: {e}", self.name),
        }
    }
}

fn check(name: impl Into<String>, outcome: Result<(), String>) -> Check {
    Check {
        name: name.into(),
        outcome,
    }
}

fn noiseless_run(mode: Mode) -> Result<(), String> {
    let p = Protocol::new(NoiseModel::noiseless(), mode).map_err(|e| e.to_string())?;
    let e = run_shots(&p, 0, 0..64).estimate().ok_or("no accepted shots")?;
    if e.p_accept != 1.0 || e.delta != 4.0 || e.p_fail != 0.0 {
        return Err(format!(
            "acceptance {}, delta {}, p_fail {}",
            e.p_accept, e.delta, e.p_fail
        ));
    }
    Ok(())
}

/// All checks, built-in fixtures first, then `extra`.
pub fn run_checks(extra: &[Fixture]) -> Vec<Check> {
    let mut out = vec![
        check("qrm code invariants", build_qrm().check_invariants().map_err(String::from)),
        check("steane code invariants", build_steane().check_invariants().map_err(String::from)),
    ];
    for f in builtin_fixtures().iter().chain(extra) {
        out.push(check(format!("fixture {}", f.name), f.check()));
    }
    for mode in [Mode::ErrorCorrect, Mode::PostSelect] {
        out.push(check(format!("noiseless protocol ({})", mode.as_str()), noiseless_run(mode)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_checks_pass() {
        for c in run_checks(&[]) {
            assert!(c.outcome.is_ok(), "{c}");
        }
    }

    #[test]
    fn fixture_text_round_trips() {
        for f in builtin_fixtures() {
            let back = Fixture::parse(&f.name, &f.to_text()).unwrap();
            assert_eq!(back.circuit, f.circuit);
            assert_eq!(back.expected, f.expected);
            assert!(back.check().is_ok());
        }
    }

    #[test]
    fn wrong_expectation_fails() {
        let f = Fixture::parse("bell", "#! expect -Z1 Z2\nqubits 2\nPREP_X 1\nPREP_Z 2\nCNOT 1 2\n").unwrap();
        assert!(f.check().is_err());
    }
}

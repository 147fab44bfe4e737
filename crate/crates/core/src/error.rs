use alloc::string::String;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("operator sizes differ: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("unsupported qubit count {0} (must be 1..=64)")]
    QubitCount(usize),
    #[error("product has an imaginary phase")]
    NonHermitian,
    #[error("invalid gate: {0}")]
    InvalidGate(&'static str),
    #[error("unknown instruction `{0}`")]
    UnknownInstruction(String),
    #[error("parse error near `{0}`")]
    Parse(String),
    #[error("line {line}: {message}")]
    CircuitText { line: usize, message: String },
    #[error("measurement at instruction {instruction} is not deterministic on the noiseless circuit")]
    NondeterministicMeasurement { instruction: usize },
    #[error("noise location {0} does not exist")]
    InvalidLocation(usize),
    #[error("fault {fault} is not a valid option at location {location}")]
    InvalidFault { location: usize, fault: String },
    #[error("probability `{name}` = {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("stabilizer group {0:?} does not match a flagged extraction template")]
    ExtractionGroup(alloc::vec::Vec<usize>),
    #[error("template slot mapping invalid: {0}")]
    SlotMapping(&'static str),
    #[error("circuit uses {0} measurement records; the frame engine supports at most 64")]
    TooManyRecords(usize),
    #[error("record {0} does not exist")]
    InvalidRecord(usize),
    #[error("fault order {0} is not supported (use 1 or 2)")]
    FaultOrder(usize),
}

//! Result files: a fixed-column CSV and a JSON sidecar.

use std::fs::File;
use std::path::{Path, PathBuf};

use colorswitch_core::circuits::{stage1_circuit, steane_zero_prep};
use colorswitch_core::codes::{build_qrm, build_steane};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::sweep::SweepResult;

pub const CSV_HEADER: [&str; 9] = [
    "p",
    "mode",
    "n_tot",
    "n_post",
    "accept_rate",
    "delta",
    "p_fail",
    "sigma_fail",
    "seed",
];

/// One CSV line. `p` is a number, or `p_i;p_m;p_1;p_2` for multiparameter noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: String,
    pub mode: String,
    pub n_tot: u64,
    pub n_post: u64,
    pub accept_rate: f64,
    pub delta: f64,
    pub p_fail: f64,
    pub sigma_fail: f64,
    pub seed: u64,
}

impl From<&SweepResult> for CsvRow {
    fn from(r: &SweepResult) -> Self {
        CsvRow {
            p: r.noise.label(),
            mode: r.mode.clone(),
            n_tot: r.n_tot,
            n_post: r.n_post,
            accept_rate: r.accept_rate,
            delta: r.delta,
            p_fail: r.p_fail,
            sigma_fail: r.sigma_fail,
            seed: r.seed,
        }
    }
}

pub fn write_csv(rows: &[CsvRow], path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    w.write_record(CSV_HEADER).map_err(|e| CliError::format(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| CliError::format(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    let header = r.headers().map_err(|e| CliError::format(path, e))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::format(path, "unexpected CSV header"));
    }
    r.deserialize()
        .map(|row| row.map_err(|e| CliError::format(path, e)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub version: String,
    pub fixtures_sha256: String,
    pub config: RunConfig,
    pub results: Vec<SweepResult>,
}

impl Sidecar {
    pub fn new(config: &RunConfig, results: &[SweepResult]) -> Self {
        Sidecar {
            version: env!("CARGO_PKG_VERSION").into(),
            fixtures_sha256: fixtures_hash(),
            config: config.clone(),
            results: results.to_vec(),
        }
    }
}

/// `results.csv` → `results.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_sidecar(sidecar: &Sidecar, path: &Path) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(sidecar).map_err(|e| CliError::format(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

pub fn read_sidecar(path: &Path) -> Result<Sidecar, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::format(path, e))
}

/// Writes the CSV at `config.output` and its sidecar next to it.
pub fn emit_results(config: &RunConfig, results: &[SweepResult]) -> Result<(PathBuf, PathBuf), CliError> {
    let csv = config.output.clone();
    let rows: Vec<CsvRow> = results.iter().map(CsvRow::from).collect();
    write_csv(&rows, &csv)?;
    let json = sidecar_path(&csv);
    write_sidecar(&Sidecar::new(config, results), &json)?;
    Ok((csv, json))
}

/// SHA-256 over the circuit texts and code listings used by every run.
pub fn fixtures_hash() -> String {
    let mut h = Sha256::new();
    for part in [
        stage1_circuit().to_text(),
        steane_zero_prep().to_text(),
        build_qrm().listing(),
        build_steane().listing(),
    ] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

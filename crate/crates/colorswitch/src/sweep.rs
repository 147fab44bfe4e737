//! Parallel Monte Carlo over a list of noise points.
//!
//! Shots are cut into fixed chunks; each chunk is an independent tally keyed
//! by the global shot index, so the merged result does not depend on the
//! worker count or on scheduling.

use colorswitch_core::estimate::run_shots;
use colorswitch_core::{Protocol, Tally};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{NoiseSpec, RunConfig};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub noise: NoiseSpec,
    pub mode: String,
    pub shots: u64,
    pub n_tot: u64,
    pub n_post: u64,
    pub accept_rate: f64,
    pub p_reject: f64,
    pub sigma_accept: f64,
    pub delta: f64,
    pub p_fail: f64,
    pub sigma_fail: f64,
    pub seed: u64,
    /// `[state][basis]` with states `+, −, Y+, Y−` and bases `X, Y`.
    pub expectations: [[f64; 2]; 4],
}

pub fn protocol_for(config: &RunConfig, noise: &NoiseSpec) -> Result<Protocol, CliError> {
    Ok(Protocol::with_options(
        noise.model(),
        config.mode(),
        config.tie_break(),
        config.readout(),
    )?)
}

pub fn tally_point(config: &RunConfig, noise: &NoiseSpec) -> Result<Tally, CliError> {
    let protocol = protocol_for(config, noise)?;
    let chunks: Vec<(u64, u64)> = (0..config.shots.div_ceil(config.chunk))
        .map(|i| (i * config.chunk, ((i + 1) * config.chunk).min(config.shots)))
        .collect();
    let parts: Vec<Tally> = chunks
        .par_iter()
        .map(|&(a, b)| run_shots(&protocol, config.seed, a..b))
        .collect();
    let mut total = Tally::new();
    for t in &parts {
        total.merge(t);
    }
    Ok(total)
}

pub fn result_from_tally(
    config: &RunConfig,
    noise: &NoiseSpec,
    tally: &Tally,
) -> Result<SweepResult, CliError> {
    let e = tally.estimate().ok_or_else(|| CliError::NoAcceptedShots {
        point: noise.label(),
    })?;
    Ok(SweepResult {
        noise: *noise,
        mode: config.mode().as_str().into(),
        shots: e.shots,
        n_tot: e.n_tot,
        n_post: e.n_post,
        accept_rate: e.p_accept,
        p_reject: e.p_reject,
        sigma_accept: e.sigma_accept,
        delta: e.delta,
        p_fail: e.p_fail,
        sigma_fail: e.sigma_fail,
        seed: config.seed,
        expectations: e.expectations,
    })
}

pub fn run_point(config: &RunConfig, noise: &NoiseSpec) -> Result<SweepResult, CliError> {
    result_from_tally(config, noise, &tally_point(config, noise)?)
}

pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepResult>, CliError> {
    config.points.iter().map(|n| run_point(config, n)).collect()
}

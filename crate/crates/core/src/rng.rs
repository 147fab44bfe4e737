//! Counter-based randomness: every shot owns an independent ChaCha8 stream.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Generator for shot `shot` of a run seeded with `seed`.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Uniform draw in `(0, 1]`.
#[inline]
pub fn unit_open0<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..k`.
#[inline]
pub fn below<R: RngCore + ?Sized>(rng: &mut R, k: usize) -> usize {
    ((rng.next_u64() as u128 * k as u128) >> 64) as usize
}

#[inline]
pub fn coin<R: RngCore + ?Sized>(rng: &mut R) -> bool {
    rng.next_u32() & 1 == 1
}

/// Draws independent Bernoulli events over groups of equally likely sites.
///
/// Sites sharing a probability are visited by geometric skips, so the cost
/// scales with the number of events rather than the number of sites.
#[derive(Clone, Debug)]
pub struct SparseBernoulli {
    classes: Vec<(f64, f64, Vec<u32>)>,
}

impl SparseBernoulli {
    pub fn new(probabilities: &[f64]) -> Self {
        let mut classes: Vec<(f64, f64, Vec<u32>)> = Vec::new();
        for (i, &p) in probabilities.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            match classes.iter_mut().find(|c| c.0 == p) {
                Some(c) => c.2.push(i as u32),
                None => {
                    let log_q = if p >= 1.0 { f64::NEG_INFINITY } else { libm::log1p(-p) };
                    classes.push((p, log_q, alloc::vec![i as u32]));
                }
            }
        }
        Self { classes }
    }

    /// Pushes the indices of all sites that fire, in increasing order.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R, out: &mut Vec<u32>) {
        let start = out.len();
        for (_, log_q, sites) in &self.classes {
            let mut pos = 0usize;
            loop {
                let gap = if *log_q == f64::NEG_INFINITY {
                    0.0
                } else {
                    libm::floor(libm::log(unit_open0(rng)) / log_q)
                };
                if gap >= (sites.len() - pos) as f64 {
                    break;
                }
                pos += gap as usize;
                out.push(sites[pos]);
                pos += 1;
                if pos >= sites.len() {
                    break;
                }
            }
        }
        if self.classes.len() > 1 {
            out[start..].sort_unstable();
        }
    }
}

//! Monte Carlo area estimate, used only as a cross-check of certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounding_region_at_level;
use crate::error::{Error, Result};
use crate::polycore::{log_abs_eval, ComplexPoint, MonicPolynomial};

/// Two-sided 99% normal quantile.
const Z99: f64 = 2.575_829_303_548_900_4;
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    /// Wilson 99% interval half-width, in area units.
    pub half_width: f64,
    pub samples: u64,
    pub hits: u64,
}

impl MonteCarloEstimate {
    /// Whether `[estimate - k * half_width, estimate + k * half_width]`
    /// meets `[lo, hi]`.
    pub fn overlaps(&self, lo: f64, hi: f64, k: f64) -> bool {
        self.estimate - k * self.half_width <= hi && lo <= self.estimate + k * self.half_width
    }
}

/// Uniform sampling over the bounding region. Chunk `i` draws from ChaCha
/// stream `i` of `seed`, so the result is independent of thread count.
pub fn monte_carlo_area(p: &MonicPolynomial, level: f64, samples: u64, seed: u64) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    if !(level > 0.0) {
        return Err(Error::InvalidParameter("level must be positive".into()));
    }
    let region = bounding_region_at_level(p, level);
    let log_level = level.ln();
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = CHUNK.min(samples - chunk * CHUNK);
            let mut hits = 0u64;
            for _ in 0..count {
                let z = ComplexPoint::new(
                    region.min.re + region.width() * rng.gen::<f64>(),
                    region.min.im + region.height() * rng.gen::<f64>(),
                );
                if log_abs_eval(p, z) < log_level {
                    hits += 1;
                }
            }
            hits
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let n = samples as f64;
    let phat = hits as f64 / n;
    let z2 = Z99 * Z99;
    let half = Z99 / (1.0 + z2 / n) * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let area = region.area();
    Ok(MonteCarloEstimate {
        estimate: phat * area,
        half_width: half * area,
        samples,
        hits,
    })
}

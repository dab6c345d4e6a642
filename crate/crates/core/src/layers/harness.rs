use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{rotate_analytic, FourierBesselField};
use super::forward::{induction_forward, PlaneToSphereKernel, UnconstrainedKernel};
use super::signal::rotate_signal;
use super::{random_weights, LayerConfig};
use crate::error::{Error, Result};
use crate::so2_so3::Rotation3;

/// A run passes iff every relative residual is below this.
pub const EQUIVARIANCE_THRESHOLD: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialResult {
    pub theta: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub config: LayerConfig,
    pub seed: u64,
    pub trials: Vec<Vec<TrialResult>>,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

struct Trial {
    weights: Vec<f64>,
    field: FourierBesselField,
    thetas: Vec<f64>,
}

/// `‖Φ(π(h) f) − π↑(h) Φ(f)‖ / ‖Φ(f)‖` for `h = R_z(θ)` on random weights, analytic
/// Fourier-Bessel fields and angles. Trials are drawn sequentially from `seed` and evaluated
/// in parallel.
pub fn run_harness<K: PlaneToSphereKernel + ?Sized>(
    kernel: &K,
    config: &LayerConfig,
    trials: usize,
    angles: usize,
    seed: u64,
) -> Result<EquivarianceReport> {
    if trials == 0 || angles == 0 {
        return Err(Error::InvalidKernelConfig("at least one trial and one angle are required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn = (0..trials)
        .map(|_| {
            Ok(Trial {
                weights: random_weights(&mut rng, kernel.weight_count()),
                field: config.random_field(&mut rng)?,
                thetas: (0..angles).map(|_| rng.gen_range(-PI..PI)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let results = drawn
        .par_iter()
        .map(|t| {
            let base = induction_forward(&config.sample(&t.field)?, kernel, &t.weights)?;
            let norm = base.norm();
            t.thetas
                .iter()
                .map(|&theta| {
                    let moved = induction_forward(&config.sample(&rotate_analytic(&t.field, theta))?, kernel, &t.weights)?;
                    let expected = rotate_signal(&base, &Rotation3::about_z(theta));
                    let residual = if norm > 0.0 { moved.distance(&expected)? / norm } else { 0.0 };
                    Ok(TrialResult { theta, residual })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = results.iter().flatten().map(|t| t.residual).fold(0.0, f64::max);
    Ok(EquivarianceReport {
        config: config.clone(),
        seed,
        trials: results,
        max_residual,
        threshold: EQUIVARIANCE_THRESHOLD,
        pass: max_residual < EQUIVARIANCE_THRESHOLD,
    })
}

/// Harness on the steerable induction kernel described by `config`.
pub fn equivariance_harness(config: &LayerConfig, trials: usize, angles: usize, seed: u64) -> Result<EquivarianceReport> {
    run_harness(&config.kernel()?, config, trials, angles, seed)
}

/// Harness on a non-steerable kernel of the same shape; expected to fail.
pub fn negative_control(config: &LayerConfig, trials: usize, angles: usize, seed: u64) -> Result<EquivarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let kernel = UnconstrainedKernel::random(&mut rng, &config.fiber()?, config.channels, config.lmax, &config.radial()?, 2);
    run_harness(&kernel, config, trials, angles, seed)
}

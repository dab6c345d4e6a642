use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::forward::{combine_responses, PlaneToSphereKernel};
use super::nonlinearity::{default_band, Nonlinearity, NonlinearityPass};
use super::{random_weights, LayerConfig};
use crate::error::{Error, Result};

pub const FD_STEP: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradientReport {
    pub config: LayerConfig,
    pub seed: u64,
    pub nonlinearity: Option<Nonlinearity>,
    pub weights: usize,
    pub loss: f64,
    pub gradient_norm: f64,
    /// `max_b |g_b − g̃_b| / max_b |g̃_b|`, with `g̃` the central difference.
    pub max_relative_error: f64,
    pub threshold: f64,
    pub pass: bool,
}

struct Loss<'a> {
    lmax: usize,
    responses: &'a [DMatrix<f64>],
    nonlinearity: Option<(Nonlinearity, usize)>,
}

impl Loss<'_> {
    fn value(&self, w: &[f64]) -> Result<f64> {
        let s = combine_responses(self.lmax, self.responses, w)?;
        Ok(match self.nonlinearity {
            None => s.coeffs().norm_squared(),
            Some((kind, band)) => NonlinearityPass::forward(&s, kind, band)?.1.coeffs().norm_squared(),
        })
    }

    /// `∂L/∂w_b = ⟨∂L/∂c, R_b⟩` with `L = ‖out‖²`.
    fn gradient(&self, w: &[f64]) -> Result<(f64, Vec<f64>)> {
        let s = combine_responses(self.lmax, self.responses, w)?;
        let (loss, grad_c) = match self.nonlinearity {
            None => (s.coeffs().norm_squared(), s.coeffs() * 2.0),
            Some((kind, band)) => {
                let (pass, out) = NonlinearityPass::forward(&s, kind, band)?;
                (out.coeffs().norm_squared(), pass.backward(&(out.coeffs() * 2.0)))
            }
        };
        Ok((loss, self.responses.iter().map(|r| r.dot(&grad_c)).collect()))
    }
}

/// Analytic vs central-difference gradient of `‖layer(f)‖²` w.r.t. the kernel weights, on a
/// random field and weights drawn from `seed`. `zero_inputs` uses zero weights and a zero field.
pub fn gradient_check(
    config: &LayerConfig,
    nonlinearity: Option<Nonlinearity>,
    seed: u64,
    zero_inputs: bool,
) -> Result<GradientReport> {
    if nonlinearity == Some(Nonlinearity::Relu) {
        return Err(Error::InvalidKernelConfig("gradient checks need a smooth nonlinearity (softplus)".into()));
    }
    let kernel = config.kernel()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = config.sample(&config.random_field(&mut rng)?)?;
    let mut weights = random_weights(&mut rng, kernel.weight_count());
    let field = if zero_inputs {
        weights.iter_mut().for_each(|w| *w = 0.0);
        field.scale(0.0)
    } else {
        field
    };
    let responses = kernel.responses(&field)?;
    let loss = Loss { lmax: config.lmax, responses: &responses, nonlinearity: nonlinearity.map(|k| (k, default_band(config.lmax).max(1))) };
    let (value, analytic) = loss.gradient(&weights)?;
    let numeric = (0..weights.len())
        .into_par_iter()
        .map(|b| {
            let mut w = weights.clone();
            w[b] = weights[b] + FD_STEP;
            let up = loss.value(&w)?;
            w[b] = weights[b] - FD_STEP;
            let down = loss.value(&w)?;
            Ok((up - down) / (2.0 * FD_STEP))
        })
        .collect::<Result<Vec<f64>>>()?;
    let scale = numeric.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = analytic.iter().zip(&numeric).fold(0.0f64, |m, (a, n)| m.max((a - n).abs()));
    let max_relative_error = if scale > 0.0 { diff / scale } else { diff };
    let threshold = if nonlinearity.is_some() { 1e-6 } else { 1e-8 };
    Ok(GradientReport {
        config: config.clone(),
        seed,
        nonlinearity,
        weights: weights.len(),
        loss: value,
        gradient_norm: analytic.iter().map(|g| g * g).sum::<f64>().sqrt(),
        max_relative_error,
        threshold,
        pass: max_relative_error < threshold,
    })
}

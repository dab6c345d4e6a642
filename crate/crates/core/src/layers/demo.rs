use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::correlation::{argmax, softmax, sphere_to_so3_correlation};
use super::field::{rotate_analytic, AnalyticField, BesselMode, FourierBesselField};
use super::forward::induction_forward;
use super::nonlinearity::{default_band, spherical_nonlinearity, Nonlinearity};
use super::signal::SphericalSignal;
use super::{random_weights, LayerConfig};
use crate::error::{Error, Result};
use crate::kernels::InductionKernel;
use crate::so2_so3::{Rotation3, So2Rep, So3Grid};

/// Built-in scalar test patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// No rotational symmetry.
    Comet,
    /// Three-fold symmetric, so the pose is only defined up to a third of a turn.
    Trefoil,
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comet" => Ok(Pattern::Comet),
            "trefoil" => Ok(Pattern::Trefoil),
            _ => Err(Error::InvalidKernelConfig(format!("unknown pattern `{s}` (comet or trefoil)"))),
        }
    }
}

impl Pattern {
    pub fn field(&self) -> FourierBesselField {
        let mode = |n: u32, k: f64, a: f64, b: f64| BesselMode { n, k, a: vec![a], b: vec![b] };
        let modes = match self {
            Pattern::Comet => vec![mode(0, 0.8, 0.5, 0.0), mode(1, 1.2, 1.0, 0.0), mode(2, 1.6, 0.4, 0.6)],
            Pattern::Trefoil => vec![mode(0, 0.8, 0.3, 0.0), mode(3, 1.5, 1.0, 0.0)],
        };
        FourierBesselField::new(So2Rep::trivial(1).expect("positive"), 1.5, modes).expect("valid pattern")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoConfig {
    pub pattern: Pattern,
    /// True in-plane angle of the rendered pattern.
    pub angle: f64,
    pub lmax: usize,
    pub channels: usize,
    pub temperature: f64,
    pub seed: u64,
    pub grid: (usize, usize, usize),
}

impl Default for DemoConfig {
    fn default() -> Self {
        Self { pattern: Pattern::Comet, angle: PI / 3.0, lmax: 4, channels: 4, temperature: 0.05, seed: 0, grid: (24, 12, 24) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub config: DemoConfig,
    pub argmax: [f64; 3],
    /// `α + γ` of the argmax cell, wrapped to `[0, 2π)`.
    pub in_plane_angle: f64,
    /// Geodesic distance between the argmax rotation and `R_z(angle)`.
    pub error: f64,
    pub probability: f64,
}

pub struct PoseDistribution {
    pub report: DemoReport,
    pub grid: So3Grid,
    pub probabilities: Vec<f64>,
}

fn geodesic(a: &Rotation3, b: &Rotation3) -> f64 {
    a.quaternion().angle_to(&b.quaternion())
}

/// Renders the pattern at `angle`, runs layer → softplus → correlation with the response to the
/// unrotated pattern, and reads out a softmax distribution over the SO(3) grid.
pub fn pose_demo(config: &DemoConfig) -> Result<PoseDistribution> {
    if !(config.temperature > 0.0) {
        return Err(Error::InvalidKernelConfig("temperature must be positive".into()));
    }
    let layer = LayerConfig { fiber_in: "0:1".into(), channels: config.channels, lmax: config.lmax, grid_size: 121, spacing: 0.1, ..LayerConfig::default() };
    let kernel = layer.kernel()?;
    let weights = random_weights(&mut ChaCha8Rng::seed_from_u64(config.seed), kernel.weight_count());
    let pattern = config.pattern.field();
    let run = |f: &dyn AnalyticField| -> Result<SphericalSignal> {
        let s = induction_forward(&layer.sample(f)?, &kernel as &InductionKernel, &weights)?;
        spherical_nonlinearity(&s, Nonlinearity::Softplus, default_band(config.lmax).max(1))
    };
    let template = run(&pattern)?;
    let observed = run(&rotate_analytic(&pattern, config.angle))?;
    let corr = sphere_to_so3_correlation(&observed, &template)?;
    let grid = So3Grid::new(config.grid.0, config.grid.1, config.grid.2);
    let values = corr.evaluate_grid(&grid);
    let scale = config.temperature * template.norm().powi(2).max(f64::MIN_POSITIVE);
    let probabilities = softmax(&values.iter().map(|v| v / scale).collect::<Vec<_>>());
    let best = argmax(&values).ok_or_else(|| Error::InvalidKernelConfig("empty SO(3) grid".into()))?;
    let (a, b, g) = grid.angles(best);
    let found = Rotation3::from_euler(a, b, g);
    let report = DemoReport {
        config: config.clone(),
        argmax: [a, b, g],
        in_plane_angle: (a + g).rem_euclid(TAU),
        error: geodesic(&found, &Rotation3::about_z(config.angle)),
        probability: probabilities[best],
    };
    Ok(PoseDistribution { report, grid, probabilities })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_the_in_plane_angle() {
        let d = pose_demo(&DemoConfig { lmax: 3, grid: (12, 6, 12), ..DemoConfig::default() }).unwrap();
        // the true angle lies on the grid
        assert!(d.report.error < 1e-6, "{:?}", d.report);
        assert!((d.report.in_plane_angle - PI / 3.0).abs() < 1e-9);
        assert!((d.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn patterns_parse() {
        assert_eq!("trefoil".parse::<Pattern>().unwrap(), Pattern::Trefoil);
        assert!("square".parse::<Pattern>().is_err());
    }
}

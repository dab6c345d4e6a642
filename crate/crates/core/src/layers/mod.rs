//! The induction layer: planar feature fields in, band-limited spherical signals out, with a
//! spherical nonlinearity, an S² → SO(3) correlation head and numerical checks.

pub mod correlation;
pub mod demo;
pub mod field;
pub mod forward;
pub mod gradient;
pub mod harness;
pub mod nonlinearity;
pub mod signal;

use rand::Rng;
use serde::Serialize;

pub use correlation::{argmax, softmax, sphere_to_so3_correlation, So3Signal};
pub use field::{rotate_analytic, rotate_field, AnalyticField, BesselMode, FourierBesselField, PlanarFeatureField, RotatedField};
pub use forward::{combine_responses, induction_forward, PlaneToSphereKernel, UnconstrainedKernel};
pub use gradient::{gradient_check, GradientReport};
pub use harness::{equivariance_harness, negative_control, run_harness, EquivarianceReport, TrialResult, EQUIVARIANCE_THRESHOLD};
pub use nonlinearity::{default_band, spherical_nonlinearity, Nonlinearity, NonlinearityPass};
pub use signal::{rotate_signal, SphericalSignal};

use crate::error::Result;
use crate::kernels::{build_induction_kernel, InductionKernel, RadialProfileSet};
use crate::so2_so3::So2Rep;

/// Everything needed to build a layer and its random test inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerConfig {
    /// Input fiber, e.g. `"0:1,1:1"`.
    pub fiber_in: String,
    pub channels: usize,
    pub lmax: usize,
    pub radial_count: usize,
    pub r_max: f64,
    /// Pixels per side of the square input grid.
    pub grid_size: usize,
    pub spacing: f64,
    pub field_modes: usize,
    pub field_max_order: u32,
    pub field_window: f64,
}

impl Default for LayerConfig {
    fn default() -> Self {
        Self {
            fiber_in: "0:1,1:1".into(),
            channels: 2,
            lmax: 6,
            radial_count: 3,
            r_max: 3.0,
            grid_size: 161,
            spacing: 0.125,
            field_modes: 6,
            field_max_order: 3,
            field_window: 1.5,
        }
    }
}

impl LayerConfig {
    pub fn fiber(&self) -> Result<So2Rep> {
        So2Rep::parse(&self.fiber_in)
    }

    pub fn radial(&self) -> Result<RadialProfileSet> {
        RadialProfileSet::rings(self.radial_count, self.r_max)
    }

    pub fn kernel(&self) -> Result<InductionKernel> {
        build_induction_kernel(&self.fiber()?, self.channels, self.lmax, &self.radial()?)
    }

    pub fn random_field<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<FourierBesselField> {
        Ok(FourierBesselField::random(rng, &self.fiber()?, self.field_modes, self.field_max_order, self.field_window))
    }

    pub fn sample(&self, field: &dyn AnalyticField) -> Result<PlanarFeatureField> {
        PlanarFeatureField::sample(field, self.grid_size, self.grid_size, self.spacing)
    }
}

pub(crate) fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

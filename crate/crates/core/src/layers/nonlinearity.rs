use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use super::signal::SphericalSignal;
use crate::error::{Error, Result};
use crate::so2_so3::SphereGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonlinearity {
    Relu,
    Softplus,
}

impl Nonlinearity {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Nonlinearity::Relu => x.max(0.0),
            Nonlinearity::Softplus => x.max(0.0) + (-x.abs()).exp().ln_1p(),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            Nonlinearity::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Nonlinearity::Softplus => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
        }
    }
}

impl FromStr for Nonlinearity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relu" => Ok(Nonlinearity::Relu),
            "softplus" => Ok(Nonlinearity::Softplus),
            _ => Err(Error::InvalidKernelConfig(format!("unknown nonlinearity `{s}` (relu or softplus)"))),
        }
    }
}

/// Default quadrature band for a signal of degree `lmax`.
pub fn default_band(lmax: usize) -> usize {
    2 * lmax
}

/// Synthesize on the band-`band` grid, apply `kind` pointwise, project back to degree `ℓmax`.
pub fn spherical_nonlinearity(signal: &SphericalSignal, kind: Nonlinearity, band: usize) -> Result<SphericalSignal> {
    if band < signal.lmax() {
        return Err(Error::InvalidKernelConfig(format!("grid band {band} is below lmax {}", signal.lmax())));
    }
    let grid = SphereGrid::new(band);
    let values = signal.synthesize(&grid).map(|v| kind.apply(v));
    SphericalSignal::analyze(&grid, signal.lmax(), &values)
}

/// Grid-space forward and backward pass of [`spherical_nonlinearity`].
pub struct NonlinearityPass {
    grid: SphereGrid,
    harmonics: DMatrix<f64>,
    kind: Nonlinearity,
    pre: DMatrix<f64>,
    lmax: usize,
}

impl NonlinearityPass {
    pub fn forward(signal: &SphericalSignal, kind: Nonlinearity, band: usize) -> Result<(Self, SphericalSignal)> {
        if band < signal.lmax() {
            return Err(Error::InvalidKernelConfig(format!("grid band {band} is below lmax {}", signal.lmax())));
        }
        let grid = SphereGrid::new(band);
        let harmonics = grid.harmonics(signal.lmax());
        let pre = &harmonics * signal.coeffs().transpose();
        let out = SphericalSignal::analyze(&grid, signal.lmax(), &pre.map(|v| kind.apply(v)))?;
        Ok((Self { grid, harmonics, kind, pre, lmax: signal.lmax() }, out))
    }

    /// Gradient w.r.t. the input coefficients given the gradient w.r.t. the output coefficients
    /// (both `channels × (ℓmax+1)²`).
    pub fn backward(&self, grad_out: &DMatrix<f64>) -> DMatrix<f64> {
        // out = (Yᵀ W σ(Y cᵀ))ᵀ
        let w = self.grid.weights();
        let mut g = &self.harmonics * grad_out.transpose();
        for i in 0..g.nrows() {
            for c in 0..g.ncols() {
                g[(i, c)] *= w[i] * self.kind.derivative(self.pre[(i, c)]);
            }
        }
        (self.harmonics.transpose() * g).transpose()
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layers::signal::rotate_signal;
    use crate::so2_so3::{sh_len, Rotation3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(seed: u64, lmax: usize) -> SphericalSignal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SphericalSignal::new(lmax, DMatrix::from_fn(2, sh_len(lmax), |_, _| rng.gen_range(-1.0..1.0))).unwrap()
    }

    #[test]
    fn relu_keeps_positive_constants() {
        let mut c = DMatrix::zeros(1, sh_len(3));
        c[(0, 0)] = 2.5;
        let s = SphericalSignal::new(3, c).unwrap();
        let out = spherical_nonlinearity(&s, Nonlinearity::Relu, 6).unwrap();
        assert!(out.distance(&s).unwrap() < 1e-10);
    }

    #[test]
    fn relu_parts_sum_to_absolute_value() {
        let s = random_signal(1, 4);
        let grid = SphereGrid::new(8);
        let v = s.synthesize(&grid);
        let r = Nonlinearity::Relu;
        let lhs = v.map(|x| r.apply(x) + r.apply(-x));
        assert!((lhs - v.abs()).amax() < 1e-10);
    }

    #[test]
    fn equivariance_error_shrinks_with_band() {
        let s = random_signal(2, 4);
        let g = Rotation3::from_euler(0.4, 1.1, -0.7);
        let err = |band| {
            let a = spherical_nonlinearity(&rotate_signal(&s, &g), Nonlinearity::Relu, band).unwrap();
            let b = rotate_signal(&spherical_nonlinearity(&s, Nonlinearity::Relu, band).unwrap(), &g);
            a.distance(&b).unwrap()
        };
        let (e1, e2, e4) = (err(4), err(8), err(16));
        assert!(e2 < e1 && e4 < e2, "{e1} {e2} {e4}");
    }

    #[test]
    fn softplus_is_stable_and_smooth() {
        let s = Nonlinearity::Softplus;
        assert!((s.apply(0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((s.apply(800.0) - 800.0).abs() < 1e-12);
        assert!(s.apply(-800.0) >= 0.0);
        for x in [-3.0, -0.2, 0.0, 1.7] {
            let fd = (s.apply(x + 1e-6) - s.apply(x - 1e-6)) / 2e-6;
            assert!((fd - s.derivative(x)).abs() < 1e-8);
        }
        assert!("tanh".parse::<Nonlinearity>().is_err());
    }

    #[test]
    fn band_below_lmax_is_rejected() {
        assert!(spherical_nonlinearity(&random_signal(3, 4), Nonlinearity::Relu, 3).is_err());
    }
}

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::so2_so3::So2Rep;

/// A feature field `f: ℝ² → V` that can be evaluated anywhere.
pub trait AnalyticField: Sync {
    fn fiber(&self) -> &So2Rep;
    fn value(&self, x: f64, y: f64) -> Vec<f64>;
}

/// One Fourier-Bessel mode `J_n(k r) (a cos nφ + b sin nφ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BesselMode {
    pub n: u32,
    pub k: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// `e^{-r²/(2s²)} Σ_modes J_n(k r) (a cos nφ + b sin nφ)`.
#[derive(Clone, Debug)]
pub struct FourierBesselField {
    fiber: So2Rep,
    window: f64,
    modes: Vec<BesselMode>,
}

impl FourierBesselField {
    pub fn new(fiber: So2Rep, window: f64, modes: Vec<BesselMode>) -> Result<Self> {
        let d = fiber.dim();
        if modes.iter().any(|m| m.a.len() != d || m.b.len() != d) {
            return Err(Error::ShapeMismatch(format!("mode coefficients must have fiber dimension {d}")));
        }
        if !(window > 0.0) {
            return Err(Error::ShapeMismatch("window must be positive".into()));
        }
        Ok(Self { fiber, window, modes })
    }

    /// Random modes with orders up to `max_order` and wavenumbers in `[0.5, 2]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, fiber: &So2Rep, modes: usize, max_order: u32, window: f64) -> Self {
        let d = fiber.dim();
        let modes = (0..modes)
            .map(|_| BesselMode {
                n: rng.gen_range(0..=max_order),
                k: rng.gen_range(0.5..2.0),
                a: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                b: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            })
            .collect();
        Self { fiber: fiber.clone(), window, modes }
    }

    pub fn modes(&self) -> &[BesselMode] {
        &self.modes
    }
}

impl AnalyticField for FourierBesselField {
    fn fiber(&self) -> &So2Rep {
        &self.fiber
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        let r = x.hypot(y);
        let phi = y.atan2(x);
        let w = (-r * r / (2.0 * self.window * self.window)).exp();
        let mut out = vec![0.0; self.fiber.dim()];
        for m in &self.modes {
            let j = puruspe::Jn(m.n, m.k * r) * w;
            let (s, c) = (m.n as f64 * phi).sin_cos();
            for (o, (a, b)) in out.iter_mut().zip(m.a.iter().zip(&m.b)) {
                *o += j * (a * c + b * s);
            }
        }
        out
    }
}

/// `[π(h) f](r) = ρ(θ) f(R_{-θ} r)`, exact for analytic fields.
pub struct RotatedField<'a> {
    inner: &'a dyn AnalyticField,
    theta: f64,
    rho: DMatrix<f64>,
}

impl<'a> RotatedField<'a> {
    pub fn new(inner: &'a dyn AnalyticField, theta: f64) -> Self {
        Self { inner, theta, rho: inner.fiber().matrix(theta) }
    }
}

impl AnalyticField for RotatedField<'_> {
    fn fiber(&self) -> &So2Rep {
        self.inner.fiber()
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        let (s, c) = self.theta.sin_cos();
        let v = self.inner.value(c * x + s * y, -s * x + c * y);
        (&self.rho * nalgebra::DVector::from_vec(v)).as_slice().to_vec()
    }
}

pub fn rotate_analytic(field: &dyn AnalyticField, theta: f64) -> RotatedField<'_> {
    RotatedField::new(field, theta)
}

/// Samples on an `H × W` grid centred on the origin with spacing `Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarFeatureField {
    height: usize,
    width: usize,
    spacing: f64,
    fiber: So2Rep,
    values: Vec<f64>,
}

impl PlanarFeatureField {
    pub fn new(height: usize, width: usize, spacing: f64, fiber: So2Rep, values: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::ShapeMismatch("grid must be at least 1x1".into()));
        }
        if !(spacing > 0.0) {
            return Err(Error::ShapeMismatch("grid spacing must be positive".into()));
        }
        if values.len() != height * width * fiber.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {height}x{width} grid of dimension-{} fibers",
                values.len(),
                fiber.dim()
            )));
        }
        Ok(Self { height, width, spacing, fiber, values })
    }

    pub fn zeros(height: usize, width: usize, spacing: f64, fiber: So2Rep) -> Result<Self> {
        let n = height * width * fiber.dim();
        Self::new(height, width, spacing, fiber, vec![0.0; n])
    }

    pub fn sample(field: &dyn AnalyticField, height: usize, width: usize, spacing: f64) -> Result<Self> {
        let mut out = Self::zeros(height, width, spacing, field.fiber().clone())?;
        let d = out.fiber.dim();
        let coords: Vec<(f64, f64)> = (0..height * width).map(|p| out.position(p)).collect();
        out.values
            .par_chunks_mut(d)
            .zip(coords.par_iter())
            .for_each(|(chunk, &(x, y))| chunk.copy_from_slice(&field.value(x, y)));
        Ok(out)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn fiber(&self) -> &So2Rep {
        &self.fiber
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(x, y)` of pixel `p` (row-major, rows along `y`).
    pub fn position(&self, p: usize) -> (f64, f64) {
        let (i, j) = (p / self.width, p % self.width);
        (
            (j as f64 - (self.width as f64 - 1.0) / 2.0) * self.spacing,
            (i as f64 - (self.height as f64 - 1.0) / 2.0) * self.spacing,
        )
    }

    pub fn fiber_at(&self, p: usize) -> &[f64] {
        let d = self.fiber.dim();
        &self.values[p * d..(p + 1) * d]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch("fields have different shapes".into()));
        }
        let mut out = self.clone();
        out.values.iter_mut().zip(&other.values).for_each(|(a, b)| *a += b);
        Ok(out)
    }

    /// Bilinear value at `(x, y)`; zero outside the grid.
    fn interpolate(&self, x: f64, y: f64) -> Vec<f64> {
        let d = self.fiber.dim();
        let u = x / self.spacing + (self.width as f64 - 1.0) / 2.0;
        let v = y / self.spacing + (self.height as f64 - 1.0) / 2.0;
        let (j0, i0) = (u.floor(), v.floor());
        let (fu, fv) = (u - j0, v - i0);
        let mut out = vec![0.0; d];
        for (di, wi) in [(0, 1.0 - fv), (1, fv)] {
            for (dj, wj) in [(0, 1.0 - fu), (1, fu)] {
                let (i, j) = (i0 as i64 + di, j0 as i64 + dj);
                if i < 0 || j < 0 || i >= self.height as i64 || j >= self.width as i64 {
                    continue;
                }
                let f = self.fiber_at(i as usize * self.width + j as usize);
                for (o, v) in out.iter_mut().zip(f) {
                    *o += wi * wj * v;
                }
            }
        }
        out
    }
}

/// `ρ(θ) f(R_{-θ} r)` on the same grid by bilinear resampling. This is approximate (O(Δ²)
/// interpolation error); analytic fields should be rotated with [`rotate_analytic`] instead.
pub fn rotate_field(field: &PlanarFeatureField, theta: f64) -> PlanarFeatureField {
    let rho = field.fiber.matrix(theta);
    let (s, c) = theta.sin_cos();
    let d = field.fiber.dim();
    let mut values = vec![0.0; field.values.len()];
    for p in 0..field.pixels() {
        let (x, y) = field.position(p);
        let src = field.interpolate(c * x + s * y, -s * x + c * y);
        let rotated = &rho * nalgebra::DVector::from_vec(src);
        values[p * d..(p + 1) * d].copy_from_slice(rotated.as_slice());
    }
    PlanarFeatureField { values, ..field.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn zero_angle_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = FourierBesselField::random(&mut rng, &So2Rep::parse("0:1,1:1").unwrap(), 4, 3, 1.5);
        let g = PlanarFeatureField::sample(&f, 9, 9, 0.5).unwrap();
        assert_eq!(rotate_field(&g, 0.0), g);
        let r = PlanarFeatureField::sample(&rotate_analytic(&f, 0.0), 9, 9, 0.5).unwrap();
        assert_eq!(r, g);
    }

    #[test]
    fn half_turn_twice_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = FourierBesselField::random(&mut rng, &So2Rep::parse("1:1").unwrap(), 3, 2, 1.0);
        let once = rotate_analytic(&f, PI);
        let twice = rotate_analytic(&once, PI);
        for (x, y) in [(0.3, 0.2), (-1.0, 0.7)] {
            let (a, b) = (twice.value(x, y), f.value(x, y));
            assert!(a.iter().zip(&b).all(|(u, v)| (u - v).abs() < 1e-13));
        }
        // on an odd grid the half turn maps pixels to pixels
        let g = PlanarFeatureField::sample(&f, 7, 7, 0.4).unwrap();
        let back = rotate_field(&rotate_field(&g, PI), PI);
        assert!(back.values().iter().zip(g.values()).all(|(u, v)| (u - v).abs() < 1e-12));
    }

    #[test]
    fn scalar_fibers_are_transported_without_mixing() {
        let f = FourierBesselField::new(
            So2Rep::parse("0:2").unwrap(),
            1.0,
            vec![BesselMode { n: 1, k: 1.0, a: vec![1.0, 0.0], b: vec![0.0, 0.0] }],
        )
        .unwrap();
        let r = rotate_analytic(&f, 0.7);
        let v = r.value(0.5, 0.1);
        assert_eq!(v[1], 0.0);
        let (s, c) = 0.7f64.sin_cos();
        assert!((v[0] - f.value(c * 0.5 + s * 0.1, -s * 0.5 + c * 0.1)[0]).abs() < 1e-15);
    }

    #[test]
    fn shapes_are_checked() {
        let rep = So2Rep::parse("1:1").unwrap();
        assert!(PlanarFeatureField::new(2, 2, 1.0, rep.clone(), vec![0.0; 7]).is_err());
        assert!(PlanarFeatureField::new(0, 2, 1.0, rep, vec![]).is_err());
    }
}

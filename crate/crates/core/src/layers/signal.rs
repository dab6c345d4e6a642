use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::so2_so3::wigner::wigner_blocks;
use crate::so2_so3::{sh_eval, sh_len, Rotation3, SphereGrid, MAX_DEGREE};

/// Band-limited real signal on S² with scalar channels, stored as one row of stacked
/// real harmonic coefficients `c_{ℓm}` per channel.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalSignal {
    lmax: usize,
    coeffs: DMatrix<f64>,
}

impl SphericalSignal {
    pub fn new(lmax: usize, coeffs: DMatrix<f64>) -> Result<Self> {
        if lmax > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { l: lmax, max: MAX_DEGREE });
        }
        if coeffs.ncols() != sh_len(lmax) || coeffs.nrows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "coefficients are {}x{}, expected channels x {}",
                coeffs.nrows(),
                coeffs.ncols(),
                sh_len(lmax)
            )));
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::ShapeMismatch("non-finite coefficient".into()));
        }
        Ok(Self { lmax, coeffs })
    }

    pub fn zeros(lmax: usize, channels: usize) -> Result<Self> {
        Self::new(lmax, DMatrix::zeros(channels, sh_len(lmax)))
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn channels(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    /// Channel × `(2ℓ+1)` coefficients of degree `ℓ`.
    pub fn block(&self, l: usize) -> DMatrix<f64> {
        self.coeffs.columns(l * l, 2 * l + 1).into_owned()
    }

    pub fn degree_norms(&self) -> Vec<f64> {
        (0..=self.lmax).map(|l| self.coeffs.columns(l * l, 2 * l + 1).norm()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok((&self.coeffs - &other.coeffs).norm())
    }

    /// Channel values at the unit vector `n`.
    pub fn evaluate(&self, n: &[f64; 3]) -> Result<DVector<f64>> {
        Ok(&self.coeffs * sh_eval(self.lmax, n)?)
    }

    /// Point × channel values on a quadrature grid.
    pub fn synthesize(&self, grid: &SphereGrid) -> DMatrix<f64> {
        grid.harmonics(self.lmax) * self.coeffs.transpose()
    }

    /// Coefficients up to `lmax` of point × channel grid values.
    pub fn analyze(grid: &SphereGrid, lmax: usize, values: &DMatrix<f64>) -> Result<Self> {
        let y = grid.harmonics(lmax);
        if values.nrows() != y.nrows() {
            return Err(Error::ShapeMismatch(format!("{} values for {} grid points", values.nrows(), y.nrows())));
        }
        let w = DVector::from_column_slice(grid.weights());
        let weighted = DMatrix::from_fn(values.nrows(), values.ncols(), |i, c| w[i] * values[(i, c)]);
        Self::new(lmax, (y.transpose() * weighted).transpose())
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.lmax != other.lmax || self.channels() != other.channels() {
            return Err(Error::ShapeMismatch(format!(
                "signals differ: lmax {} vs {}, {} vs {} channels",
                self.lmax,
                other.lmax,
                self.channels(),
                other.channels()
            )));
        }
        Ok(())
    }
}

/// `[π↑(g) f](n̂) = f(g⁻¹ n̂)`, i.e. `c_ℓ ↦ D^ℓ(g) c_ℓ` per channel.
pub fn rotate_signal(signal: &SphericalSignal, g: &Rotation3) -> SphericalSignal {
    let d = wigner_blocks(signal.lmax, g).expect("lmax validated on construction");
    let mut out = signal.coeffs.clone();
    for (l, dl) in d.iter().enumerate() {
        let block = signal.coeffs.columns(l * l, 2 * l + 1) * dl.transpose();
        out.columns_mut(l * l, 2 * l + 1).copy_from(&block);
    }
    SphericalSignal { lmax: signal.lmax, coeffs: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(rng: &mut ChaCha8Rng, lmax: usize, channels: usize) -> SphericalSignal {
        SphericalSignal::new(lmax, DMatrix::from_fn(channels, sh_len(lmax), |_, _| rng.gen_range(-1.0..1.0))).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_signal(&mut rng, 6, 3);
        assert!(rotate_signal(&s, &Rotation3::identity()).distance(&s).unwrap() < 1e-12);
        for _ in 0..5 {
            let g = Rotation3::random(&mut rng);
            let r = rotate_signal(&s, &g);
            assert!(rotate_signal(&r, &g.inverse()).distance(&s).unwrap() < 1e-10);
            for (a, b) in r.degree_norms().iter().zip(s.degree_norms()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rotation_moves_values_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_signal(&mut rng, 5, 2);
        let grid = SphereGrid::new(10);
        for _ in 0..3 {
            let g = Rotation3::random(&mut rng);
            let r = rotate_signal(&s, &g);
            let gi = g.inverse();
            for &(t, p) in grid.angles().iter().step_by(17) {
                let n = crate::so2_so3::direction(t, p);
                let lhs = r.evaluate(&n).unwrap();
                let rhs = s.evaluate(&gi.apply(&n)).unwrap();
                assert!((lhs - rhs).amax() < 1e-8);
            }
        }
    }

    #[test]
    fn analysis_inverts_synthesis() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_signal(&mut rng, 4, 2);
        let grid = SphereGrid::new(4);
        let back = SphericalSignal::analyze(&grid, 4, &s.synthesize(&grid)).unwrap();
        assert!(back.distance(&s).unwrap() < 1e-12);
    }

    #[test]
    fn shapes_are_checked() {
        assert!(SphericalSignal::new(2, DMatrix::zeros(1, 8)).is_err());
        assert!(SphericalSignal::new(11, DMatrix::zeros(1, 144)).is_err());
        let a = SphericalSignal::zeros(2, 1).unwrap();
        assert!(a.distance(&SphericalSignal::zeros(3, 1).unwrap()).is_err());
    }
}

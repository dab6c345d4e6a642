use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

const RANK_TOL: f64 = 1e-8;
const RANK_SAMPLES: usize = 256;

/// Gaussian rings `ψ_j(r)`, evenly extended in `r` so they are smooth at the origin, and an
/// origin taper `τ_m(r) = (1 - e^{-r²/w²})^{m/2}` that makes frequency-`m` kernels vanish there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialProfileSet {
    centers: Vec<f64>,
    width: f64,
    r_max: f64,
}

impl RadialProfileSet {
    pub fn new(centers: Vec<f64>, width: f64, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidKernelConfig(format!("r_max must be positive, got {r_max}")));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidKernelConfig(format!("ring width must be positive, got {width}")));
        }
        if centers.is_empty() {
            return Err(Error::InvalidKernelConfig("at least one radial profile is required".into()));
        }
        let set = Self { centers, width, r_max };
        set.check_rank()?;
        Ok(set)
    }

    /// `count` rings equispaced on `[0, r_max]` with width `r_max / count`.
    pub fn rings(count: usize, r_max: f64) -> Result<Self> {
        let centers = match count {
            0 => Vec::new(),
            1 => vec![0.0],
            n => (0..n).map(|j| r_max * j as f64 / (n - 1) as f64).collect(),
        };
        Self::new(centers, r_max / count.max(1) as f64, r_max)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn profile(&self, j: usize, r: f64) -> f64 {
        let c = self.centers[j];
        let s = 2.0 * self.width * self.width;
        (-(r - c).powi(2) / s).exp() + (-(r + c).powi(2) / s).exp()
    }

    pub fn taper(&self, m: usize, r: f64) -> f64 {
        if m == 0 {
            return 1.0;
        }
        let t = -(-(r * r) / (self.width * self.width)).exp_m1();
        t.powf(m as f64 / 2.0)
    }

    /// `ψ_j(r)·τ_m(r)`.
    pub fn value(&self, j: usize, m: usize, r: f64) -> f64 {
        self.profile(j, r) * self.taper(m, r)
    }

    fn check_rank(&self) -> Result<()> {
        let extent = self.r_max + 4.0 * self.width;
        let samples = DMatrix::from_fn(RANK_SAMPLES, self.len(), |i, j| {
            let r = extent * i as f64 / (RANK_SAMPLES - 1) as f64;
            self.profile(j, r) * r.sqrt()
        });
        let sv = samples.singular_values();
        let max = sv.max();
        let min = sv.min();
        if !(min > RANK_TOL * max) {
            return Err(Error::RankDeficientRadialBasis(format!(
                "{} profiles span only {} dimensions",
                self.len(),
                sv.iter().filter(|&&s| s > RANK_TOL * max).count()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let r = RadialProfileSet::rings(3, 3.0).unwrap();
        assert_eq!(r.centers(), &[0.0, 1.5, 3.0]);
        assert_eq!(r.width(), 1.0);
    }

    #[test]
    fn duplicate_rings_are_rejected() {
        let e = RadialProfileSet::new(vec![1.0, 1.0], 0.5, 2.0).unwrap_err();
        assert!(matches!(e, Error::RankDeficientRadialBasis(_)));
        assert!(RadialProfileSet::rings(0, 1.0).is_err());
        assert!(RadialProfileSet::new(vec![0.0], 0.0, 1.0).is_err());
    }

    #[test]
    fn taper_vanishes_at_origin_only_for_m_positive() {
        let r = RadialProfileSet::rings(2, 2.0).unwrap();
        assert_eq!(r.value(1, 3, 0.0), 0.0);
        assert!(r.value(0, 0, 0.0) > 0.0);
        assert!((r.taper(2, 10.0) - 1.0).abs() < 1e-15);
    }
}

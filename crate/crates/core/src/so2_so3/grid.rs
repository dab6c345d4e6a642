use std::f64::consts::{PI, TAU};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};

use super::harmonics::{sh_eval_angles, sh_len};

/// Gauss-Legendre in `cos β` times uniform in `α`: `B+1` by `2B+2` points, exact for
/// products of two band-`B` functions.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    band: usize,
    angles: Vec<(f64, f64)>,
    weights: Vec<f64>,
}

impl SphereGrid {
    pub fn new(band: usize) -> Self {
        let n_beta = band + 1;
        let n_alpha = 2 * band + 2;
        let gl = GaussLegendre::new(NonZeroUsize::new(n_beta).expect("positive"));
        let mut angles = Vec::with_capacity(n_beta * n_alpha);
        let mut weights = Vec::with_capacity(n_beta * n_alpha);
        for &(x, w) in gl.as_node_weight_pairs() {
            let theta = x.clamp(-1.0, 1.0).acos();
            for a in 0..n_alpha {
                angles.push((theta, TAU * a as f64 / n_alpha as f64));
                weights.push(w * TAU / n_alpha as f64);
            }
        }
        Self { band, angles, weights }
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// `(θ, φ)` polar angles of every point.
    pub fn angles(&self) -> &[(f64, f64)] {
        &self.angles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Rows are grid points, columns stacked harmonics up to `lmax`.
    pub fn harmonics(&self, lmax: usize) -> DMatrix<f64> {
        let n = sh_len(lmax);
        let mut y = DMatrix::zeros(self.len(), n);
        for (q, &(t, p)) in self.angles.iter().enumerate() {
            y.row_mut(q).copy_from(&sh_eval_angles(lmax, t, p).transpose());
        }
        y
    }

    /// Coefficients of sampled values: `c = Yᵀ W v`.
    pub fn analyze(&self, y: &DMatrix<f64>, values: &DVector<f64>) -> DVector<f64> {
        let weighted = DVector::from_iterator(self.len(), values.iter().zip(&self.weights).map(|(v, w)| v * w));
        y.transpose() * weighted
    }
}

/// Equiangular ZYZ grid on SO(3): `α, γ` uniform on `[0, 2π)`, `β` at midpoints offset so
/// that the first cell is the identity.
#[derive(Clone, Debug)]
pub struct So3Grid {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub n_gamma: usize,
}

impl So3Grid {
    pub fn new(n_alpha: usize, n_beta: usize, n_gamma: usize) -> Self {
        Self { n_alpha, n_beta, n_gamma }
    }

    pub fn len(&self) -> usize {
        self.n_alpha * self.n_beta * self.n_gamma
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn betas(&self) -> Vec<f64> {
        (0..self.n_beta).map(|b| PI * b as f64 / self.n_beta as f64).collect()
    }

    /// `(α, γ)` pairs in row-major order, α outer.
    pub fn alpha_gamma(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.n_alpha * self.n_gamma);
        for a in 0..self.n_alpha {
            for g in 0..self.n_gamma {
                out.push((TAU * a as f64 / self.n_alpha as f64, TAU * g as f64 / self.n_gamma as f64));
            }
        }
        out
    }

    /// Flat index of `(α_i, β_j, γ_k)`, β outermost.
    pub fn index(&self, a: usize, b: usize, g: usize) -> usize {
        (b * self.n_alpha + a) * self.n_gamma + g
    }

    pub fn angles(&self, index: usize) -> (f64, f64, f64) {
        let g = index % self.n_gamma;
        let a = (index / self.n_gamma) % self.n_alpha;
        let b = index / (self.n_gamma * self.n_alpha);
        (
            TAU * a as f64 / self.n_alpha as f64,
            PI * b as f64 / self.n_beta as f64,
            TAU * g as f64 / self.n_gamma as f64,
        )
    }
}

impl Default for So3Grid {
    fn default() -> Self {
        Self::new(24, 12, 24)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_cover_the_sphere() {
        for b in [0, 3, 8] {
            let g = SphereGrid::new(b);
            assert_eq!(g.len(), 2 * (b + 1) * (b + 1));
            assert!((g.total_weight() - 4.0 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_is_identity() {
        for lmax in [0, 2, 6, 8] {
            let g = SphereGrid::new(lmax);
            let y = g.harmonics(lmax);
            let w = DMatrix::from_diagonal(&DVector::from_column_slice(g.weights()));
            let gram = y.transpose() * w * &y;
            let n = sh_len(lmax);
            assert!((gram - DMatrix::identity(n, n)).amax() < 1e-12, "lmax = {lmax}");
        }
    }

    #[test]
    fn so3_indexing_round_trip() {
        let g = So3Grid::default();
        assert_eq!(g.len(), 24 * 12 * 24);
        assert_eq!(g.angles(0), (0.0, 0.0, 0.0));
        let i = g.index(5, 7, 11);
        let (a, b, c) = g.angles(i);
        assert!((a - TAU * 5.0 / 24.0).abs() < 1e-15 && (b - PI * 7.0 / 12.0).abs() < 1e-15);
        assert!((c - TAU * 11.0 / 24.0).abs() < 1e-15);
    }
}

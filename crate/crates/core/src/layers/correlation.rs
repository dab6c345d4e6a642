use nalgebra::DMatrix;
use rayon::prelude::*;

use super::signal::SphericalSignal;
use crate::error::{Error, Result};
use crate::so2_so3::wigner::{wigner_blocks, wigner_blocks_fixed_beta};
use crate::so2_so3::{Rotation3, So3Grid};

/// Band-limited real function on SO(3), `f(g) = Σ_ℓ ⟨C_ℓ, D^ℓ(g)⟩_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct So3Signal {
    blocks: Vec<DMatrix<f64>>,
}

impl So3Signal {
    pub fn new(blocks: Vec<DMatrix<f64>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::ShapeMismatch("an SO(3) signal needs at least degree 0".into()));
        }
        for (l, b) in blocks.iter().enumerate() {
            if b.shape() != (2 * l + 1, 2 * l + 1) {
                return Err(Error::ShapeMismatch(format!("degree {l} block is {}x{}", b.nrows(), b.ncols())));
            }
        }
        Ok(Self { blocks })
    }

    pub fn lmax(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[DMatrix<f64>] {
        &self.blocks
    }

    pub fn evaluate(&self, g: &Rotation3) -> f64 {
        let d = wigner_blocks(self.lmax(), g).expect("degree validated when correlating");
        self.blocks.iter().zip(&d).map(|(c, d)| c.dot(d)).sum()
    }

    /// `(L_h f)(g) = f(h⁻¹ g)`, i.e. `C_ℓ ↦ D^ℓ(h) C_ℓ`.
    pub fn left_translate(&self, h: &Rotation3) -> Self {
        let d = wigner_blocks(self.lmax(), h).expect("degree validated when correlating");
        Self { blocks: self.blocks.iter().zip(&d).map(|(c, d)| d * c).collect() }
    }

    /// Values at every cell of `grid`, in the grid's flat order.
    pub fn evaluate_grid(&self, grid: &So3Grid) -> Vec<f64> {
        let ag = grid.alpha_gamma();
        let per_beta: Vec<Vec<f64>> = grid
            .betas()
            .par_iter()
            .map(|&beta| {
                wigner_blocks_fixed_beta(self.lmax(), beta, &ag)
                    .expect("degree validated when correlating")
                    .iter()
                    .map(|d| self.blocks.iter().zip(d).map(|(c, d)| c.dot(d)).sum())
                    .collect()
            })
            .collect();
        per_beta.concat()
    }
}

/// `f(g) = ⟨rotate_signal(filter, g), signal⟩`, summed over channels.
pub fn sphere_to_so3_correlation(signal: &SphericalSignal, filter: &SphericalSignal) -> Result<So3Signal> {
    signal.check_same(filter)?;
    let blocks = (0..=signal.lmax())
        .map(|l| {
            let (s, f) = (signal.block(l), filter.block(l));
            s.transpose() * f
        })
        .collect();
    So3Signal::new(blocks)
}

/// `e^{v_i} / Σ_j e^{v_j}`.
pub fn softmax(values: &[f64]) -> Vec<f64> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = values.iter().map(|v| (v - max).exp()).collect();
    let z: f64 = e.iter().sum();
    e.into_iter().map(|v| v / z).collect()
}

pub fn argmax(values: &[f64]) -> Option<usize> {
    values.iter().enumerate().fold(None, |best, (i, &v)| match best {
        Some((_, b)) if b >= v => best,
        _ => Some((i, v)),
    }).map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layers::signal::rotate_signal;
    use crate::so2_so3::sh_len;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(rng: &mut ChaCha8Rng, lmax: usize) -> SphericalSignal {
        SphericalSignal::new(lmax, DMatrix::from_fn(3, sh_len(lmax), |_, _| rng.gen_range(-1.0..1.0))).unwrap()
    }

    fn inner(a: &SphericalSignal, b: &SphericalSignal) -> f64 {
        a.coeffs().dot(b.coeffs())
    }

    #[test]
    fn evaluation_is_the_rotated_inner_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let (s, f) = (random_signal(&mut rng, 5), random_signal(&mut rng, 5));
        let c = sphere_to_so3_correlation(&s, &f).unwrap();
        for _ in 0..10 {
            let g = Rotation3::random(&mut rng);
            assert!((c.evaluate(&g) - inner(&rotate_signal(&f, &g), &s)).abs() < 1e-8);
        }
    }

    #[test]
    fn grid_evaluation_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (s, f) = (random_signal(&mut rng, 3), random_signal(&mut rng, 3));
        let c = sphere_to_so3_correlation(&s, &f).unwrap();
        let grid = So3Grid::new(6, 4, 5);
        let v = c.evaluate_grid(&grid);
        assert_eq!(v.len(), grid.len());
        for (i, val) in v.iter().enumerate() {
            let (a, b, g) = grid.angles(i);
            assert!((val - c.evaluate(&Rotation3::from_euler(a, b, g))).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_filter_and_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let s = random_signal(&mut rng, 2);
        let z = SphericalSignal::new(2, DMatrix::zeros(3, 9)).unwrap();
        let c = sphere_to_so3_correlation(&s, &z).unwrap();
        assert_eq!(c.evaluate(&Rotation3::random(&mut rng)), 0.0);
        assert!(sphere_to_so3_correlation(&s, &random_signal(&mut rng, 3)).is_err());
    }

    #[test]
    fn softmax_is_a_distribution() {
        let p = softmax(&[1000.0, 999.0, -5.0]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p[0] > p[1] && p[1] > p[2]);
        assert_eq!(argmax(&[0.1, 3.0, 3.0, -1.0]), Some(1));
        assert_eq!(argmax(&[]), None);
    }
}

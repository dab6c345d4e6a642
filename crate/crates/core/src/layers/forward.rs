use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use super::field::PlanarFeatureField;
use super::signal::SphericalSignal;
use crate::error::{Error, Result};
use crate::kernels::{InductionKernel, RadialProfileSet};
use crate::so2_so3::{sh_len, So2Rep};

/// A linear map from planar fields to spherical signals with scalar channels, written as
/// `Φ_w(f) = Σ_b w_b R_b(f)`.
pub trait PlaneToSphereKernel: Sync {
    fn fiber_in(&self) -> &So2Rep;
    fn channels(&self) -> usize;
    fn lmax(&self) -> usize;
    fn weight_count(&self) -> usize;
    /// `R_b(f)` for every weight `b`, each `channels × (ℓmax+1)²`.
    fn responses(&self, field: &PlanarFeatureField) -> Result<Vec<DMatrix<f64>>>;
}

fn check_fiber(kernel: &(impl PlaneToSphereKernel + ?Sized), field: &PlanarFeatureField) -> Result<()> {
    if field.fiber() != kernel.fiber_in() {
        return Err(Error::ShapeMismatch(format!("field fiber {} does not match kernel input {}", field.fiber(), kernel.fiber_in())));
    }
    Ok(())
}

/// `Δ² Σ_p ψ_j(r_p) τ_m(r_p) (cos mφ_p, sin mφ_p) f(r_p)`, indexed `[j][m]`.
struct Moments {
    cos: Vec<Vec<DVector<f64>>>,
    sin: Vec<Vec<DVector<f64>>>,
}

impl Moments {
    fn new(field: &PlanarFeatureField, radial: &RadialProfileSet, m_max: usize) -> Self {
        let (nj, nm, d) = (radial.len(), m_max + 1, field.fiber().dim());
        // per-row partial sums, added in row order so results do not depend on scheduling
        let rows: Vec<Vec<f64>> = (0..field.height())
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0.0; 2 * nj * nm * d];
                for p in i * field.width()..(i + 1) * field.width() {
                    let (x, y) = field.position(p);
                    let (r, phi) = (x.hypot(y), y.atan2(x));
                    let f = field.fiber_at(p);
                    for j in 0..nj {
                        for m in 0..nm {
                            let w = radial.value(j, m, r);
                            let (s, c) = (m as f64 * phi).sin_cos();
                            let o = 2 * (j * nm + m) * d;
                            for (k, v) in f.iter().enumerate() {
                                acc[o + k] += w * c * v;
                                acc[o + d + k] += w * s * v;
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let mut acc = vec![0.0; 2 * nj * nm * d];
        for row in rows {
            acc.iter_mut().zip(row).for_each(|(a, b)| *a += b);
        }
        let area = field.spacing() * field.spacing();
        let at = |j: usize, m: usize, part: usize| {
            let o = 2 * (j * nm + m) * d + part * d;
            DVector::from_iterator(d, acc[o..o + d].iter().map(|v| v * area))
        };
        Self {
            cos: (0..nj).map(|j| (0..nm).map(|m| at(j, m, 0)).collect()).collect(),
            sin: (0..nj).map(|j| (0..nm).map(|m| at(j, m, 1)).collect()).collect(),
        }
    }
}

impl PlaneToSphereKernel for InductionKernel {
    fn fiber_in(&self) -> &So2Rep {
        InductionKernel::fiber_in(self)
    }

    fn channels(&self) -> usize {
        self.out_dim()
    }

    fn lmax(&self) -> usize {
        InductionKernel::lmax(self)
    }

    fn weight_count(&self) -> usize {
        InductionKernel::weight_count(self)
    }

    fn responses(&self, field: &PlanarFeatureField) -> Result<Vec<DMatrix<f64>>> {
        check_fiber(self, field)?;
        if self.fiber_out().iter().any(|&l| l != 0) {
            return Err(Error::InvalidKernelConfig("the layer needs scalar output fibers".into()));
        }
        let lmax = InductionKernel::lmax(self);
        let m_max = (0..=lmax).map(|l| self.basis(l).m_max()).max().unwrap_or(0);
        let moments = Moments::new(field, self.basis(0).radial(), m_max);
        let (c, dv) = (self.out_dim(), field.fiber().dim());
        let mut out = Vec::with_capacity(InductionKernel::weight_count(self));
        for l in 0..=lmax {
            let basis = self.basis(l);
            for (b, el) in basis.elements().iter().enumerate() {
                let sol = basis.element_solution(b);
                let (mc, ms) = (&moments.cos[el.radial][sol.m], &moments.sin[el.radial][sol.m]);
                let mut r = DMatrix::zeros(c, sh_len(lmax));
                for k in 0..2 * l + 1 {
                    let col = sol.a.columns(k * dv, dv) * mc + sol.b.columns(k * dv, dv) * ms;
                    r.set_column(l * l + k, &col);
                }
                out.push(r);
            }
        }
        Ok(out)
    }
}

/// `Σ_b w_b R_b`.
pub fn combine_responses(lmax: usize, responses: &[DMatrix<f64>], weights: &[f64]) -> Result<SphericalSignal> {
    if responses.len() != weights.len() || responses.is_empty() {
        return Err(Error::ShapeMismatch(format!("{} weights for {} basis elements", weights.len(), responses.len())));
    }
    let mut c = DMatrix::zeros(responses[0].nrows(), responses[0].ncols());
    for (r, w) in responses.iter().zip(weights) {
        c += r * *w;
    }
    SphericalSignal::new(lmax, c)
}

/// `[Φ(f)](n̂) = ∫ κ(n̂, r) f(r) dr` by the pixel sum `Δ² Σ_p κ(n̂, r_p) f(r_p)`.
pub fn induction_forward<K: PlaneToSphereKernel + ?Sized>(
    field: &PlanarFeatureField,
    kernel: &K,
    weights: &[f64],
) -> Result<SphericalSignal> {
    if weights.len() != kernel.weight_count() {
        return Err(Error::ShapeMismatch(format!("{} weights for {} basis elements", weights.len(), kernel.weight_count())));
    }
    combine_responses(kernel.lmax(), &kernel.responses(field)?, weights)
}

/// Kernel with the same shape as an induction kernel but no steerability: element `b` is
/// `ψ_j(r) (M_b + (x / r_max) N_b)` with fixed random matrices. Used as a negative control.
#[derive(Clone, Debug)]
pub struct UnconstrainedKernel {
    fiber_in: So2Rep,
    channels: usize,
    lmax: usize,
    radial: RadialProfileSet,
    mats: Vec<(DMatrix<f64>, DMatrix<f64>)>,
}

impl UnconstrainedKernel {
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        fiber_in: &So2Rep,
        channels: usize,
        lmax: usize,
        radial: &RadialProfileSet,
        per_profile: usize,
    ) -> Self {
        let cols = sh_len(lmax) * fiber_in.dim();
        let mut draw = || DMatrix::from_fn(channels, cols, |_, _| rng.gen_range(-1.0..1.0));
        let mats = (0..radial.len() * per_profile).map(|_| (draw(), draw())).collect();
        Self { fiber_in: fiber_in.clone(), channels, lmax, radial: radial.clone(), mats }
    }

    fn per_profile(&self) -> usize {
        self.mats.len() / self.radial.len()
    }
}

impl PlaneToSphereKernel for UnconstrainedKernel {
    fn fiber_in(&self) -> &So2Rep {
        &self.fiber_in
    }

    fn channels(&self) -> usize {
        self.channels
    }

    fn lmax(&self) -> usize {
        self.lmax
    }

    fn weight_count(&self) -> usize {
        self.mats.len()
    }

    fn responses(&self, field: &PlanarFeatureField) -> Result<Vec<DMatrix<f64>>> {
        check_fiber(self, field)?;
        let dv = self.fiber_in.dim();
        let area = field.spacing() * field.spacing();
        // Δ² Σ_p ψ_j(r_p) f_p and Δ² Σ_p ψ_j(r_p) (x_p / r_max) f_p
        let mut plain = vec![DVector::zeros(dv); self.radial.len()];
        let mut lin = plain.clone();
        for p in 0..field.pixels() {
            let (x, y) = field.position(p);
            let f = DVector::from_column_slice(field.fiber_at(p));
            for j in 0..self.radial.len() {
                let w = self.radial.profile(j, x.hypot(y)) * area;
                plain[j] += &f * w;
                lin[j] += &f * (w * x / self.radial.r_max());
            }
        }
        let n = sh_len(self.lmax);
        Ok(self
            .mats
            .iter()
            .enumerate()
            .map(|(b, (m, k))| {
                let j = b / self.per_profile();
                DMatrix::from_fn(self.channels, n, |c, i| {
                    let cols = i * dv..(i + 1) * dv;
                    cols.clone().zip(plain[j].iter()).map(|(col, v)| m[(c, col)] * v).sum::<f64>()
                        + cols.zip(lin[j].iter()).map(|(col, v)| k[(c, col)] * v).sum::<f64>()
                })
            })
            .collect())
    }
}

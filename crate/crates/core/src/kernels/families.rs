use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::radial::RadialProfileSet;
use super::solver::{BasisSummary, SteerableKernelBasis};
use crate::error::{Error, Result};
use crate::so2_so3::{degrees_matrix, restrict_degrees, restrict_wigner, sh_eval, wigner_d, Rotation3, So2Rep, MAX_DEGREE};

/// Angular cutoff of the per-ℓ SO(2) solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AngularCutoff {
    /// Every frequency the input and output can couple.
    Complete,
    Fixed(usize),
}

impl AngularCutoff {
    fn solve(&self, in_rep: &So2Rep, out_rep: &So2Rep, radial: &RadialProfileSet) -> SteerableKernelBasis {
        match self {
            AngularCutoff::Complete => SteerableKernelBasis::solve_complete(in_rep, out_rep, radial),
            AngularCutoff::Fixed(m) => SteerableKernelBasis::solve(in_rep, out_rep, radial, *m),
        }
    }
}

fn check_degrees(lmax: usize, fiber_out: &[usize]) -> Result<()> {
    if lmax > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { l: lmax, max: MAX_DEGREE });
    }
    if fiber_out.is_empty() {
        return Err(Error::InvalidKernelConfig("output fiber must have at least one channel".into()));
    }
    if let Some(&l) = fiber_out.iter().find(|&&l| l > MAX_DEGREE) {
        return Err(Error::DegreeOutOfRange { l, max: MAX_DEGREE });
    }
    Ok(())
}

fn split(weights: &[f64], counts: impl Iterator<Item = usize>) -> Result<Vec<&[f64]>> {
    let mut out = Vec::new();
    let mut rest = weights;
    for c in counts {
        if rest.len() < c {
            return Err(Error::ShapeMismatch("too few weights for the kernel".into()));
        }
        let (head, tail) = rest.split_at(c);
        out.push(head);
        rest = tail;
    }
    if !rest.is_empty() {
        return Err(Error::ShapeMismatch(format!("{} surplus weights", rest.len())));
    }
    Ok(out)
}

/// Input representation `Res D^ℓ ⊗ ρ` of the per-ℓ kernel, harmonic index outer.
pub fn harmonic_input(l: usize, fiber_in: &So2Rep) -> So2Rep {
    restrict_wigner(l).tensor(fiber_in)
}

/// Image → S² kernel `κ(n̂, r) = Σ_ℓ Σ_m Y_ℓm(n̂) F_ℓ(r)[:, m]`, with `F_ℓ` steerable from
/// `Res D^ℓ ⊗ ρ` to `Res ρ↑`. The output fiber `ρ↑` is a list of SO(3) degrees.
#[derive(Clone, Debug)]
pub struct InductionKernel {
    fiber_in: So2Rep,
    fiber_out: Vec<usize>,
    per_l: Vec<SteerableKernelBasis>,
}

impl InductionKernel {
    pub fn new(
        fiber_in: &So2Rep,
        fiber_out: &[usize],
        lmax: usize,
        radial: &RadialProfileSet,
        cutoff: AngularCutoff,
    ) -> Result<Self> {
        check_degrees(lmax, fiber_out)?;
        let out = restrict_degrees(fiber_out)?;
        let per_l = (0..=lmax)
            .into_par_iter()
            .map(|l| cutoff.solve(&harmonic_input(l, fiber_in), &out, radial))
            .collect();
        Ok(Self { fiber_in: fiber_in.clone(), fiber_out: fiber_out.to_vec(), per_l })
    }

    pub fn lmax(&self) -> usize {
        self.per_l.len() - 1
    }

    pub fn fiber_in(&self) -> &So2Rep {
        &self.fiber_in
    }

    pub fn fiber_out(&self) -> &[usize] {
        &self.fiber_out
    }

    pub fn out_dim(&self) -> usize {
        self.fiber_out.iter().map(|l| 2 * l + 1).sum()
    }

    pub fn basis(&self, l: usize) -> &SteerableKernelBasis {
        &self.per_l[l]
    }

    pub fn weight_count(&self) -> usize {
        self.per_l.iter().map(SteerableKernelBasis::len).sum()
    }

    pub fn split_weights<'a>(&self, weights: &'a [f64]) -> Result<Vec<&'a [f64]>> {
        split(weights, self.per_l.iter().map(SteerableKernelBasis::len))
    }

    pub fn summaries(&self) -> Vec<BasisSummary> {
        self.per_l.iter().map(SteerableKernelBasis::summary).collect()
    }

    /// `κ(n̂, r)` as a `dim ρ↑ × dim ρ` matrix.
    pub fn evaluate(&self, weights: &[f64], n: &[f64; 3], x: f64, y: f64) -> Result<DMatrix<f64>> {
        let w = self.split_weights(weights)?;
        let yv = sh_eval(self.lmax(), n)?;
        let dv = self.fiber_in.dim();
        let mut k = DMatrix::zeros(self.out_dim(), dv);
        for (l, basis) in self.per_l.iter().enumerate() {
            let f = basis.combine(w[l], x, y)?;
            for m in 0..2 * l + 1 {
                k += f.columns(m * dv, dv) * yv[l * l + m];
            }
        }
        Ok(k)
    }

    /// `‖κ(h n̂, h r) − ρ↑(h) κ(n̂, r) ρ(h)ᵀ‖` for the in-plane rotation `h = R_z(θ)`.
    pub fn constraint_residual(&self, weights: &[f64], theta: f64, n: &[f64; 3], x: f64, y: f64) -> Result<f64> {
        let h = Rotation3::about_z(theta);
        let (s, c) = theta.sin_cos();
        let lhs = self.evaluate(weights, &h.apply(n), c * x - s * y, s * x + c * y)?;
        let rhs = degrees_matrix(&self.fiber_out, &h)? * self.evaluate(weights, n, x, y)? * self.fiber_in.matrix(theta).transpose();
        Ok((lhs - rhs).norm())
    }
}

/// Image → S² kernel with `out_channels` scalar output fibers.
pub fn build_induction_kernel(
    fiber_in: &So2Rep,
    out_channels: usize,
    lmax: usize,
    radial: &RadialProfileSet,
) -> Result<InductionKernel> {
    InductionKernel::new(fiber_in, &vec![0; out_channels], lmax, radial, AngularCutoff::Complete)
}

/// Image → SO(3) kernel `κ(g, r) = Σ_ℓ Σ_{kk'} D^ℓ_{kk'}(g) F_ℓ(r)[k', k]`.
///
/// Under left translation the column index `k'` of `D^ℓ` is a spectator, so `F_ℓ` is steerable
/// from `Res D^ℓ ⊗ ρ` to `(2ℓ+1)` copies of `Res ρ↑`; row block `k'` is one copy.
#[derive(Clone, Debug)]
pub struct So3Kernel {
    fiber_in: So2Rep,
    fiber_out: Vec<usize>,
    per_l: Vec<SteerableKernelBasis>,
}

impl So3Kernel {
    pub fn new(
        fiber_in: &So2Rep,
        fiber_out: &[usize],
        lmax: usize,
        radial: &RadialProfileSet,
        cutoff: AngularCutoff,
    ) -> Result<Self> {
        check_degrees(lmax, fiber_out)?;
        let out = restrict_degrees(fiber_out)?;
        let per_l = (0..=lmax)
            .into_par_iter()
            .map(|l| {
                let out_l = So2Rep::trivial(2 * l + 1).expect("positive").tensor(&out);
                cutoff.solve(&harmonic_input(l, fiber_in), &out_l, radial)
            })
            .collect();
        Ok(Self { fiber_in: fiber_in.clone(), fiber_out: fiber_out.to_vec(), per_l })
    }

    pub fn lmax(&self) -> usize {
        self.per_l.len() - 1
    }

    pub fn basis(&self, l: usize) -> &SteerableKernelBasis {
        &self.per_l[l]
    }

    pub fn out_dim(&self) -> usize {
        self.fiber_out.iter().map(|l| 2 * l + 1).sum()
    }

    pub fn weight_count(&self) -> usize {
        self.per_l.iter().map(SteerableKernelBasis::len).sum()
    }

    pub fn summaries(&self) -> Vec<BasisSummary> {
        self.per_l.iter().map(SteerableKernelBasis::summary).collect()
    }

    pub fn evaluate(&self, weights: &[f64], g: &Rotation3, x: f64, y: f64) -> Result<DMatrix<f64>> {
        let w = split(weights, self.per_l.iter().map(SteerableKernelBasis::len))?;
        let (dv, dout) = (self.fiber_in.dim(), self.out_dim());
        let mut k = DMatrix::zeros(dout, dv);
        for (l, basis) in self.per_l.iter().enumerate() {
            let f = basis.combine(w[l], x, y)?;
            let d = wigner_d(l, g)?;
            for kk in 0..2 * l + 1 {
                for kp in 0..2 * l + 1 {
                    k += f.view((kp * dout, kk * dv), (dout, dv)) * d[(kk, kp)];
                }
            }
        }
        Ok(k)
    }

    /// `‖κ(h g, h r) − ρ↑(h) κ(g, r) ρ(h)ᵀ‖` for `h = R_z(θ)`.
    pub fn constraint_residual(&self, weights: &[f64], theta: f64, g: &Rotation3, x: f64, y: f64) -> Result<f64> {
        let h = Rotation3::about_z(theta);
        let (s, c) = theta.sin_cos();
        let lhs = self.evaluate(weights, &h.compose(g), c * x - s * y, s * x + c * y)?;
        let rhs = degrees_matrix(&self.fiber_out, &h)? * self.evaluate(weights, g, x, y)? * self.fiber_in.matrix(theta).transpose();
        Ok((lhs - rhs).norm())
    }
}

pub fn build_so3_kernel(
    fiber_in: &So2Rep,
    fiber_out: &[usize],
    lmax: usize,
    radial: &RadialProfileSet,
) -> Result<So3Kernel> {
    So3Kernel::new(fiber_in, fiber_out, lmax, radial, AngularCutoff::Complete)
}

fn check_z(z_samples: &[f64]) -> Result<()> {
    if z_samples.is_empty() {
        return Err(Error::InvalidKernelConfig("at least one z sample is required".into()));
    }
    Ok(())
}

/// Image → volume: for each depth `z`, `κ_z` is steerable from `ρ` to `Res ρ↑`.
#[derive(Clone, Debug)]
pub struct VolumeKernel {
    fiber_in: So2Rep,
    fiber_out: Vec<usize>,
    z: Vec<f64>,
    per_z: Vec<SteerableKernelBasis>,
}

impl VolumeKernel {
    pub fn z_samples(&self) -> &[f64] {
        &self.z
    }

    pub fn basis(&self, zi: usize) -> &SteerableKernelBasis {
        &self.per_z[zi]
    }

    pub fn weight_count(&self) -> usize {
        self.per_z.iter().map(SteerableKernelBasis::len).sum()
    }

    pub fn summaries(&self) -> Vec<BasisSummary> {
        self.per_z.iter().map(SteerableKernelBasis::summary).collect()
    }

    pub fn evaluate(&self, weights: &[f64], zi: usize, x: f64, y: f64) -> Result<DMatrix<f64>> {
        let w = split(weights, self.per_z.iter().map(SteerableKernelBasis::len))?;
        self.per_z[zi].combine(w[zi], x, y)
    }

    pub fn constraint_residual(&self, weights: &[f64], theta: f64, zi: usize, x: f64, y: f64) -> Result<f64> {
        let (s, c) = theta.sin_cos();
        let lhs = self.evaluate(weights, zi, c * x - s * y, s * x + c * y)?;
        let h = Rotation3::about_z(theta);
        let rhs = degrees_matrix(&self.fiber_out, &h)? * self.evaluate(weights, zi, x, y)? * self.fiber_in.matrix(theta).transpose();
        Ok((lhs - rhs).norm())
    }
}

pub fn build_volume_kernel(
    fiber_in: &So2Rep,
    fiber_out: &[usize],
    z_samples: &[f64],
    radial: &RadialProfileSet,
) -> Result<VolumeKernel> {
    check_z(z_samples)?;
    check_degrees(0, fiber_out)?;
    let out = restrict_degrees(fiber_out)?;
    let per_z = z_samples.par_iter().map(|_| SteerableKernelBasis::solve_complete(fiber_in, &out, radial)).collect();
    Ok(VolumeKernel { fiber_in: fiber_in.clone(), fiber_out: fiber_out.to_vec(), z: z_samples.to_vec(), per_z })
}

/// Image → ℝ³ × S²: an image → S² kernel for each depth `z`.
#[derive(Clone, Debug)]
pub struct R3S2Kernel {
    z: Vec<f64>,
    per_z: Vec<InductionKernel>,
}

impl R3S2Kernel {
    pub fn z_samples(&self) -> &[f64] {
        &self.z
    }

    pub fn slice(&self, zi: usize) -> &InductionKernel {
        &self.per_z[zi]
    }

    pub fn weight_count(&self) -> usize {
        self.per_z.iter().map(InductionKernel::weight_count).sum()
    }

    pub fn split_weights<'a>(&self, weights: &'a [f64]) -> Result<Vec<&'a [f64]>> {
        split(weights, self.per_z.iter().map(InductionKernel::weight_count))
    }

    pub fn evaluate(&self, weights: &[f64], n: &[f64; 3], x: f64, y: f64, zi: usize) -> Result<DMatrix<f64>> {
        let w = self.split_weights(weights)?;
        self.per_z[zi].evaluate(w[zi], n, x, y)
    }

    pub fn constraint_residual(&self, weights: &[f64], theta: f64, n: &[f64; 3], x: f64, y: f64, zi: usize) -> Result<f64> {
        let w = self.split_weights(weights)?;
        self.per_z[zi].constraint_residual(w[zi], theta, n, x, y)
    }
}

pub fn build_r3s2_kernel(
    fiber_in: &So2Rep,
    fiber_out: &[usize],
    lmax: usize,
    z_samples: &[f64],
    radial: &RadialProfileSet,
) -> Result<R3S2Kernel> {
    check_z(z_samples)?;
    let per_z = z_samples
        .par_iter()
        .map(|_| InductionKernel::new(fiber_in, fiber_out, lmax, radial, AngularCutoff::Complete))
        .collect::<Result<Vec<_>>>()?;
    Ok(R3S2Kernel { z: z_samples.to_vec(), per_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so2_so3::direction;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn isotropic_pooling_at_lmax_zero() {
        let radial = RadialProfileSet::rings(3, 3.0).unwrap();
        let k = build_induction_kernel(&So2Rep::parse("0:1").unwrap(), 2, 0, &radial).unwrap();
        // one isotropic profile per ring and channel
        assert_eq!(k.weight_count(), 6);
        assert!(k.basis(0).angular().iter().all(|a| a.m == 0));
    }

    #[test]
    fn per_l_inputs_contain_each_frequency_once() {
        let radial = RadialProfileSet::rings(1, 1.0).unwrap();
        let k = build_induction_kernel(&So2Rep::parse("0:1").unwrap(), 1, 6, &radial).unwrap();
        for l in 0..=6 {
            let m = k.basis(l).in_rep().multiplicities();
            assert_eq!(m.len(), l + 1);
            assert!(m.values().all(|&c| c == 1));
            // frequency 0 couples once, every other frequency twice
            assert_eq!(k.basis(l).angular_count(), 2 * l + 1);
        }
    }

    #[test]
    fn families_satisfy_their_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let radial = RadialProfileSet::rings(2, 2.0).unwrap();
        let rho = So2Rep::parse("0:1,1:1").unwrap();

        let s2 = InductionKernel::new(&rho, &[0, 1], 3, &radial, AngularCutoff::Complete).unwrap();
        let w = weights(s2.weight_count(), &mut rng);
        let so3 = build_so3_kernel(&rho, &[0, 1], 2, &radial).unwrap();
        let w3 = weights(so3.weight_count(), &mut rng);
        let vol = build_volume_kernel(&rho, &[1, 0], &[-0.5, 0.0, 0.5], &radial).unwrap();
        let wv = weights(vol.weight_count(), &mut rng);
        let r3 = build_r3s2_kernel(&rho, &[0], 2, &[0.0, 1.0], &radial).unwrap();
        let wr = weights(r3.weight_count(), &mut rng);
        for _ in 0..10 {
            let t = rng.gen_range(-3.0..3.0);
            let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let n = direction(rng.gen_range(0.0..std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU));
            let g = Rotation3::random(&mut rng);
            assert!(s2.constraint_residual(&w, t, &n, x, y).unwrap() < 1e-8);
            assert!(so3.constraint_residual(&w3, t, &g, x, y).unwrap() < 1e-8);
            assert!(vol.constraint_residual(&wv, t, 1, x, y).unwrap() < 1e-8);
            assert!(r3.constraint_residual(&wr, t, &n, x, y, 1).unwrap() < 1e-8);
        }
    }

    #[test]
    fn so3_counts_are_copies_of_sphere_counts() {
        let radial = RadialProfileSet::rings(1, 1.0).unwrap();
        let rho = So2Rep::parse("1:1").unwrap();
        let s2 = build_induction_kernel(&rho, 1, 3, &radial).unwrap();
        let so3 = build_so3_kernel(&rho, &[0], 3, &radial).unwrap();
        assert_eq!(so3.basis(0).len(), s2.basis(0).len());
        for l in 0..=3 {
            assert_eq!(so3.basis(l).len(), (2 * l + 1) * s2.basis(l).len());
        }
    }

    #[test]
    fn z_independence() {
        let radial = RadialProfileSet::rings(2, 1.0).unwrap();
        let rho = So2Rep::parse("0:1,2:1").unwrap();
        let vol = build_volume_kernel(&rho, &[0, 0], &[0.0, 0.3, 0.9], &radial).unwrap();
        assert!(vol.summaries().windows(2).all(|w| w[0] == w[1]));
        let r3 = build_r3s2_kernel(&rho, &[0], 2, &[0.0], &radial).unwrap();
        let s2 = InductionKernel::new(&rho, &[0], 2, &radial, AngularCutoff::Complete).unwrap();
        assert_eq!(r3.slice(0).summaries(), s2.summaries());
        assert!(build_volume_kernel(&rho, &[0], &[], &radial).is_err());
    }

    #[test]
    fn linearity_in_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let radial = RadialProfileSet::rings(2, 2.0).unwrap();
        let k = build_induction_kernel(&So2Rep::parse("1:1").unwrap(), 2, 2, &radial).unwrap();
        let (a, b) = (weights(k.weight_count(), &mut rng), weights(k.weight_count(), &mut rng));
        let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let n = direction(0.4, 1.0);
        let lhs = k.evaluate(&ab, &n, 0.3, -0.8).unwrap();
        let rhs = k.evaluate(&a, &n, 0.3, -0.8).unwrap() + k.evaluate(&b, &n, 0.3, -0.8).unwrap();
        assert!((lhs - rhs).amax() < 1e-12);
    }
}

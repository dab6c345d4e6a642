use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::radial::RadialProfileSet;
use crate::error::{Error, Result};
use crate::so2_so3::{So2Irrep, So2Rep};

/// Singular values at or below this fraction of the largest are null directions.
pub const NULLSPACE_TOL: f64 = 1e-8;

/// One angular solution `A cos mφ + B sin mφ` of the constraint, in ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularSolution {
    pub m: usize,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

impl AngularSolution {
    pub fn at(&self, phi: f64) -> DMatrix<f64> {
        let (s, c) = (self.m as f64 * phi).sin_cos();
        &self.a * c + &self.b * s
    }
}

/// Basis element `ψ_j(r) τ_m(r) (A cos mφ + B sin mφ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub radial: usize,
    pub angular: usize,
}

/// Solutions of `F(R_θ r) = ρ_out(θ) F(r) ρ_in(θ)⁻¹` with angular frequencies up to `m_max`.
#[derive(Clone, Debug)]
pub struct SteerableKernelBasis {
    in_rep: So2Rep,
    out_rep: So2Rep,
    radial: RadialProfileSet,
    m_max: usize,
    angular: Vec<AngularSolution>,
    elements: Vec<BasisElement>,
}

/// Orthonormal null vectors of `e` via QR then SVD of the triangular factor.
pub fn nullspace(e: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let n = e.ncols();
    let r = if e.nrows() > n { e.clone().qr().r() } else { e.clone() };
    let mut square = DMatrix::zeros(n, n);
    square.view_mut((0, 0), (r.nrows().min(n), n)).copy_from(&r.rows(0, r.nrows().min(n)));
    let svd = square.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.max();
    (0..n)
        .filter(|&i| svd.singular_values[i] <= NULLSPACE_TOL * smax)
        .map(|i| vt.row(i).transpose())
        .collect()
}

/// Null directions of the frequency-`m` constraint between two irreducible blocks. Each is
/// `(A, B)` of shape `dim(out) × dim(in)`.
fn solve_block_pair(m: usize, bin: So2Irrep, bout: So2Irrep) -> Vec<(DMatrix<f64>, DMatrix<f64>)> {
    // enough rotations to pin down trig polynomials of this degree
    let n = 4 * (m.max(bin.k + bout.k) + 1);
    let (di, dout) = (bin.dim(), bout.dim());
    let k = di * dout;
    let unknowns = if m == 0 { k } else { 2 * k };
    let mut e = DMatrix::zeros(unknowns * n, unknowns);
    let ident = DMatrix::<f64>::identity(k, k);
    for t in 0..n {
        let theta = TAU * t as f64 / n as f64;
        // vec(ρo X ρiᵀ) = (ρi ⊗ ρo) vec X
        let kr = bin.matrix(theta).kronecker(&bout.matrix(theta));
        let (s, c) = (m as f64 * theta).sin_cos();
        let row = t * unknowns;
        if m == 0 {
            e.view_mut((row, 0), (k, k)).copy_from(&(&ident - &kr));
        } else {
            e.view_mut((row, 0), (k, k)).copy_from(&(&ident * c - &kr));
            e.view_mut((row, k), (k, k)).copy_from(&(&ident * s));
            e.view_mut((row + k, 0), (k, k)).copy_from(&(&ident * -s));
            e.view_mut((row + k, k), (k, k)).copy_from(&(&ident * c - &kr));
        }
    }
    nullspace(&e)
        .into_iter()
        .map(|v| {
            let a = DMatrix::from_column_slice(dout, di, &v.as_slice()[..k]);
            let b = if m == 0 { DMatrix::zeros(dout, di) } else { DMatrix::from_column_slice(dout, di, &v.as_slice()[k..]) };
            (a, b)
        })
        .collect()
}

fn offsets(rep: &So2Rep) -> Vec<usize> {
    rep.blocks()
        .iter()
        .scan(0, |o, b| {
            let here = *o;
            *o += b.dim();
            Some(here)
        })
        .collect()
}

/// Angular solutions at frequency `m`. The constraint is solved between every pair of
/// irreducible blocks and mapped back through the representations' bases.
fn solve_frequency(m: usize, in_rep: &So2Rep, out_rep: &So2Rep) -> Vec<AngularSolution> {
    let (oi, oo) = (offsets(in_rep), offsets(out_rep));
    let mut out = Vec::new();
    for (bo, &off_o) in out_rep.blocks().iter().zip(&oo) {
        for (bi, &off_i) in in_rep.blocks().iter().zip(&oi) {
            for (a, b) in solve_block_pair(m, *bi, *bo) {
                let embed = |x: &DMatrix<f64>| {
                    let mut h = DMatrix::zeros(out_rep.dim(), in_rep.dim());
                    h.view_mut((off_o, off_i), (bo.dim(), bi.dim())).copy_from(x);
                    out_rep.basis() * h * in_rep.basis().transpose()
                };
                out.push(AngularSolution { m, a: embed(&a), b: embed(&b) });
            }
        }
    }
    out
}

impl SteerableKernelBasis {
    pub fn solve(in_rep: &So2Rep, out_rep: &So2Rep, radial: &RadialProfileSet, m_max: usize) -> Self {
        let angular: Vec<AngularSolution> = (0..=m_max).flat_map(|m| solve_frequency(m, in_rep, out_rep)).collect();
        let elements = (0..radial.len())
            .flat_map(|j| (0..angular.len()).map(move |a| BasisElement { radial: j, angular: a }))
            .collect();
        Self { in_rep: in_rep.clone(), out_rep: out_rep.clone(), radial: radial.clone(), m_max, angular, elements }
    }

    /// All frequencies the pair can couple, so the basis is complete.
    pub fn solve_complete(in_rep: &So2Rep, out_rep: &So2Rep, radial: &RadialProfileSet) -> Self {
        Self::solve(in_rep, out_rep, radial, in_rep.max_frequency() + out_rep.max_frequency())
    }

    pub fn in_rep(&self) -> &So2Rep {
        &self.in_rep
    }

    pub fn out_rep(&self) -> &So2Rep {
        &self.out_rep
    }

    pub fn radial(&self) -> &RadialProfileSet {
        &self.radial
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn angular(&self) -> &[AngularSolution] {
        &self.angular
    }

    pub fn angular_count(&self) -> usize {
        self.angular.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element_solution(&self, b: usize) -> &AngularSolution {
        &self.angular[self.elements[b].angular]
    }

    /// Scalar radial-times-taper factor of element `b` at radius `r`.
    pub fn element_radial(&self, b: usize, r: f64) -> f64 {
        let el = &self.elements[b];
        self.radial.value(el.radial, self.angular[el.angular].m, r)
    }

    /// Element `b` at the planar point `(x, y)`.
    pub fn evaluate(&self, b: usize, x: f64, y: f64) -> DMatrix<f64> {
        let r = x.hypot(y);
        let phi = y.atan2(x);
        self.element_solution(b).at(phi) * self.element_radial(b, r)
    }

    /// `Σ_b w_b F_b(x, y)`.
    pub fn combine(&self, weights: &[f64], x: f64, y: f64) -> Result<DMatrix<f64>> {
        if weights.len() != self.len() {
            return Err(Error::ShapeMismatch(format!("{} weights for {} basis elements", weights.len(), self.len())));
        }
        let mut out = DMatrix::zeros(self.out_rep.dim(), self.in_rep.dim());
        for (b, w) in weights.iter().enumerate() {
            if *w != 0.0 {
                out += self.evaluate(b, x, y) * *w;
            }
        }
        Ok(out)
    }

    /// `‖F(R_θ r) − ρ_out(θ) F(r) ρ_in(θ)ᵀ‖_F` for element `b`.
    pub fn steerability_residual(&self, b: usize, theta: f64, x: f64, y: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let lhs = self.evaluate(b, c * x - s * y, s * x + c * y);
        let rhs = self.out_rep.matrix(theta) * self.evaluate(b, x, y) * self.in_rep.matrix(theta).transpose();
        (lhs - rhs).norm()
    }
}

/// Solution count per radial profile from frequency matching of irrep pairs.
pub fn analytic_count(in_rep: &So2Rep, out_rep: &So2Rep, m_max: usize) -> usize {
    let mut n = 0;
    for a in in_rep.blocks() {
        for b in out_rep.blocks() {
            n += match (a.k, b.k) {
                (0, 0) => 1,
                (0, k) | (k, 0) => {
                    if k <= m_max {
                        2
                    } else {
                        0
                    }
                }
                (p, q) => {
                    let near = if p.abs_diff(q) <= m_max { 2 } else { 0 };
                    let far = if p + q <= m_max { 2 } else { 0 };
                    near + far
                }
            };
        }
    }
    n
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisSummary {
    pub in_rep: String,
    pub out_rep: String,
    pub m_max: usize,
    pub angular: usize,
    pub radial: usize,
    pub count: usize,
}

impl SteerableKernelBasis {
    pub fn summary(&self) -> BasisSummary {
        BasisSummary {
            in_rep: self.in_rep.to_string(),
            out_rep: self.out_rep.to_string(),
            m_max: self.m_max,
            angular: self.angular.len(),
            radial: self.radial.len(),
            count: self.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> So2Rep {
        So2Rep::parse(s).unwrap()
    }

    #[test]
    fn scalar_isotropic() {
        let r = RadialProfileSet::rings(1, 1.0).unwrap();
        let b = SteerableKernelBasis::solve(&rep("0:1"), &rep("0:1"), &r, 0);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn scalar_to_vector() {
        let r = RadialProfileSet::rings(1, 1.0).unwrap();
        let b = SteerableKernelBasis::solve(&rep("0:1"), &rep("1:1"), &r, 2);
        assert_eq!(b.len(), 2);
        assert!(b.angular().iter().all(|a| a.m == 1));
    }

    #[test]
    fn counts_match_frequency_matching() {
        let r = RadialProfileSet::rings(2, 2.0).unwrap();
        for (i, o, m) in [("0:1,1:1", "2:1", 3), ("1:2", "1:1,3:1", 4), ("2:1", "2:1", 1), ("0:2", "0:1,4:1", 2)] {
            let (i, o) = (rep(i), rep(o));
            let b = SteerableKernelBasis::solve(&i, &o, &r, m);
            assert_eq!(b.angular_count(), analytic_count(&i, &o, m));
            assert_eq!(b.len(), 2 * analytic_count(&i, &o, m));
        }
    }

    #[test]
    fn elements_are_steerable() {
        let r = RadialProfileSet::rings(2, 2.0).unwrap();
        let b = SteerableKernelBasis::solve(&rep("0:1,2:1"), &rep("1:1,3:1"), &r, 5);
        for e in 0..b.len() {
            for (t, x, y) in [(0.3, 0.4, -1.1), (2.5, -1.3, 0.2), (-1.0, 0.0, 0.7)] {
                assert!(b.steerability_residual(e, t, x, y) < 1e-10);
            }
        }
    }

    #[test]
    fn weights_length_is_checked() {
        let r = RadialProfileSet::rings(1, 1.0).unwrap();
        let b = SteerableKernelBasis::solve(&rep("0:1"), &rep("0:1"), &r, 0);
        assert!(b.combine(&[1.0, 2.0], 0.1, 0.1).is_err());
    }
}

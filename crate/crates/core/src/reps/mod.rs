//! Unitary matrix representations of finite groups.

mod decompose;
mod irreps;

pub use decompose::{decompose, decompose_character, hom_dimension, Decomposition};
pub use irreps::IrrepTable;

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

pub type CMatrix = DMatrix<Complex64>;

/// Frobenius-norm tolerance for the identity, unitarity and homomorphism checks.
pub const REP_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
    label: Option<String>,
}

impl Representation {
    /// Validates identity, unitarity and `ρ(g·s) = ρ(g)ρ(s)` for every `g` and generator `s`,
    /// which together imply the full homomorphism property.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>, label: Option<String>) -> Result<Self> {
        let rep = Self::new_unchecked(group, matrices, label)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Shape checks only. Callers guarantee the homomorphism property.
    pub(crate) fn new_unchecked(
        group: Arc<FiniteGroup>,
        matrices: Vec<CMatrix>,
        label: Option<String>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 {
            return Err(Error::InvalidRepresentation("zero-dimensional".into()));
        }
        if matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::InvalidRepresentation("matrices of inconsistent shape".into()));
        }
        Ok(Self { group, dim, matrices, label })
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let eye = CMatrix::identity(self.dim, self.dim);
        if (&self.matrices[g.identity()] - &eye).norm() > REP_TOL {
            return Err(Error::InvalidRepresentation("identity not mapped to I".into()));
        }
        for (x, m) in self.matrices.iter().enumerate() {
            if (m.adjoint() * m - &eye).norm() > REP_TOL {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix of {} is not unitary",
                    g.label(x)
                )));
            }
        }
        for x in 0..g.order() {
            for &s in g.generators() {
                let lhs = &self.matrices[g.mul(x, s)];
                let rhs = &self.matrices[x] * &self.matrices[s];
                if (lhs - rhs).norm() > REP_TOL {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism fails at ({}, {})",
                        g.label(x),
                        g.label(s)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        label: Option<String>,
        f: impl Fn(usize) -> CMatrix,
    ) -> Result<Self> {
        let matrices = (0..group.order()).map(f).collect();
        Self::new(group, matrices, label)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let one = CMatrix::identity(1, 1);
        let matrices = vec![one; group.order()];
        Self { group, dim: 1, matrices, label: Some("trivial".into()) }
    }

    /// Left regular representation, `L(g)e_x = e_{g·x}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| {
                let mut m = CMatrix::zeros(n, n);
                for x in 0..n {
                    m[(group.mul(g, x), x)] = Complex64::new(1.0, 0.0);
                }
                m
            })
            .collect();
        Self { group, dim: n, matrices, label: Some("regular".into()) }
    }

    /// Permutation representation from an action `act(g, x)` on `points` points.
    pub fn permutation(
        group: Arc<FiniteGroup>,
        points: usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        Self::from_fn(group, None, |g| {
            let mut m = CMatrix::zeros(points, points);
            for x in 0..points {
                m[(act(g, x), x)] = Complex64::new(1.0, 0.0);
            }
            m
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Trace per group element.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(CMatrix::trace).collect()
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if !self.group.same_table(&other.group) {
            return Err(Error::GroupMismatch {
                expected: self.group.name().to_string(),
                found: other.group.name().to_string(),
            });
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let (a, b) = (self.dim, other.dim);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(x, y)| {
                let mut m = CMatrix::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(x);
                m.view_mut((a, a), (b, b)).copy_from(y);
                m
            })
            .collect();
        Ok(Self { group: self.group.clone(), dim: a + b, matrices, label: None })
    }

    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(x, y)| x.kronecker(y)).collect();
        Ok(Self { group: self.group.clone(), dim: self.dim * other.dim, matrices, label: None })
    }

    /// Complex conjugate representation.
    pub fn conjugate(&self) -> Self {
        Self {
            group: self.group.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
            label: self.label.as_ref().map(|l| format!("conj({l})")),
        }
    }

    /// `ρ ⊕ conj(ρ)` written in a real basis: `ρ = A + iB` becomes `[[A, -B], [B, A]]`.
    pub fn real_pair(&self) -> Self {
        let d = self.dim;
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let mut r = CMatrix::zeros(2 * d, 2 * d);
                for i in 0..d {
                    for j in 0..d {
                        let z = m[(i, j)];
                        r[(i, j)] = z.re.into();
                        r[(i, j + d)] = (-z.im).into();
                        r[(i + d, j)] = z.im.into();
                        r[(i + d, j + d)] = z.re.into();
                    }
                }
                r
            })
            .collect();
        Self { group: self.group.clone(), dim: 2 * d, matrices, label: None }
    }

    /// Real matrices, if every entry has negligible imaginary part.
    pub fn real_matrices(&self) -> Option<Vec<DMatrix<f64>>> {
        if self.matrices.iter().flat_map(|m| m.iter()).any(|z| z.im.abs() > REP_TOL) {
            return None;
        }
        Some(self.matrices.iter().map(|m| m.map(|z| z.re)).collect())
    }

    /// Same representation viewed on the opposite group, `g ↦ ρ(g)ᵀ`.
    pub fn transpose_to(&self, opposite: Arc<FiniteGroup>) -> Result<Self> {
        if opposite.order() != self.group.order() {
            return Err(Error::GroupMismatch {
                expected: format!("{}^op", self.group.name()),
                found: opposite.name().to_string(),
            });
        }
        let matrices = self.matrices.iter().map(|m| m.transpose()).collect();
        Self::new(opposite, matrices, self.label.clone())
    }

    /// Largest `‖ρ(a)ρ(b) − ρ(ab)‖_F` over all pairs.
    pub fn homomorphism_defect(&self) -> f64 {
        let g = &self.group;
        let mut worst: f64 = 0.0;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let d = (&self.matrices[a] * &self.matrices[b] - &self.matrices[g.mul(a, b)]).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(3).unwrap())
    }

    #[test]
    fn regular_rep_is_a_representation() {
        let r = Representation::regular(z3());
        assert_eq!(r.dim(), 3);
        assert!(r.homomorphism_defect() < 1e-14);
        let ch = r.character();
        assert_eq!(ch[0].re, 3.0);
        assert_eq!(ch[1].norm(), 0.0);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = z3();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        // the map g^j -> ω^(j²) is not multiplicative
        let res = Representation::from_fn(g, None, |j| CMatrix::from_element(1, 1, w.powu((j * j) as u32)));
        assert!(matches!(res, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn sums_and_products() {
        let g = z3();
        let r = Representation::regular(g.clone());
        let t = Representation::trivial(g.clone());
        assert_eq!(r.direct_sum(&t).unwrap().dim(), 4);
        let p = r.tensor_product(&r).unwrap();
        assert_eq!(p.dim(), 9);
        assert!(p.homomorphism_defect() < 1e-12);
        let other = Arc::new(FiniteGroup::cyclic(4).unwrap());
        assert!(r.direct_sum(&Representation::trivial(other)).is_err());
    }

    #[test]
    fn real_pair_is_real_and_valid() {
        let g = z3();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let rho = Representation::from_fn(g, None, |j| CMatrix::from_element(1, 1, w.powu(j as u32))).unwrap();
        let real = rho.real_pair();
        assert!(real.real_matrices().is_some());
        assert!(real.homomorphism_defect() < 1e-12);
    }
}

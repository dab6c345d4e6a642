use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, Quaternion, UnitQuaternion, Vector3};
use rand::Rng;
use serde::Serialize;

/// Below this `sin β` the ZYZ angles are treated as gimbal-locked.
const GIMBAL_EPS: f64 = 1e-12;

/// A rotation `R = R_z(α)·R_y(β)·R_z(γ)` with `α, γ ∈ [0, 2π)` and `β ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rotation3 {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

pub fn rz(t: f64) -> Matrix3<f64> {
    let (s, c) = t.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

pub fn ry(t: f64) -> Matrix3<f64> {
    let (s, c) = t.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self { alpha: 0.0, beta: 0.0, gamma: 0.0 }
    }

    /// Canonicalizes arbitrary angles through the rotation matrix.
    pub fn from_euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::from_matrix(&(rz(alpha) * ry(beta) * rz(gamma)))
    }

    /// In-plane rotation about the optical (z) axis.
    pub fn about_z(theta: f64) -> Self {
        Self { alpha: wrap(theta), beta: 0.0, gamma: 0.0 }
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        let sb = m[(0, 2)].hypot(m[(1, 2)]);
        let beta = sb.atan2(m[(2, 2)]);
        if sb > GIMBAL_EPS {
            let alpha = m[(1, 2)].atan2(m[(0, 2)]);
            let gamma = m[(2, 1)].atan2(-m[(2, 0)]);
            Self { alpha: wrap(alpha), beta, gamma: wrap(gamma) }
        } else if m[(2, 2)] > 0.0 {
            Self { alpha: wrap(m[(1, 0)].atan2(m[(0, 0)])), beta: 0.0, gamma: 0.0 }
        } else {
            Self { alpha: wrap((-m[(1, 0)]).atan2(-m[(0, 0)])), beta: PI, gamma: 0.0 }
        }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        rz(self.alpha) * ry(self.beta) * rz(self.gamma)
    }

    pub fn quaternion(&self) -> UnitQuaternion<f64> {
        let z = Vector3::z_axis();
        UnitQuaternion::from_axis_angle(&z, self.alpha)
            * UnitQuaternion::from_axis_angle(&Vector3::y_axis(), self.beta)
            * UnitQuaternion::from_axis_angle(&z, self.gamma)
    }

    pub fn from_quaternion(q: &UnitQuaternion<f64>) -> Self {
        Self::from_matrix(q.to_rotation_matrix().matrix())
    }

    /// `self · other`, composed through quaternions.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_quaternion(&(self.quaternion() * other.quaternion()))
    }

    pub fn inverse(&self) -> Self {
        Self::from_matrix(&self.matrix().transpose())
    }

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let r = self.matrix() * Vector3::new(v[0], v[1], v[2]);
        [r[0], r[1], r[2]]
    }

    /// Haar-uniform sample (Shoemake's subgroup algorithm).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
        let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
        let q = Quaternion::new(b * (TAU * u3).cos(), a * (TAU * u2).sin(), a * (TAU * u2).cos(), b * (TAU * u3).sin());
        Self::from_quaternion(&UnitQuaternion::from_quaternion(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn euler_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let r = Rotation3::random(&mut rng);
            assert!((Rotation3::from_matrix(&r.matrix()).matrix() - r.matrix()).norm() < 1e-13);
            assert!((0.0..TAU).contains(&r.alpha) && (0.0..=PI).contains(&r.beta));
        }
    }

    #[test]
    fn gimbal_cases() {
        for (a, b, g) in [(0.3, 0.0, 1.1), (0.3, PI, 1.1), (5.0, 0.0, 4.0)] {
            let r = Rotation3::from_euler(a, b, g);
            assert!((r.matrix() - rz(a) * ry(b) * rz(g)).norm() < 1e-14);
        }
    }

    #[test]
    fn composition_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let (a, b) = (Rotation3::random(&mut rng), Rotation3::random(&mut rng));
            assert!((a.compose(&b).matrix() - a.matrix() * b.matrix()).norm() < 1e-12);
            assert!((a.compose(&a.inverse()).matrix() - Matrix3::identity()).norm() < 1e-12);
        }
    }

    #[test]
    fn about_z_is_rz() {
        let r = Rotation3::about_z(-0.7);
        assert!((r.matrix() - rz(-0.7)).norm() < 1e-15);
    }
}

use std::f64::consts::PI;

use nalgebra::DVector;

use crate::error::{Error, Result};

pub const UNIT_TOL: f64 = 1e-12;

/// Position of `Y_ℓm` in the stacked vector.
pub fn sh_index(l: usize, m: i64) -> usize {
    (l * l) + (m + l as i64) as usize
}

pub fn sh_len(lmax: usize) -> usize {
    (lmax + 1) * (lmax + 1)
}

/// Stacked real orthonormal harmonics at polar angles, without Condon-Shortley phase.
/// `m > 0` carries `cos mφ`, `m < 0` carries `sin |m|φ`.
pub fn sh_eval_angles(lmax: usize, theta: f64, phi: f64) -> DVector<f64> {
    let (s, x) = theta.sin_cos();
    let mut out = DVector::zeros(sh_len(lmax));
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            pmm *= ((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
        }
        let (sm, cm) = (m as f64 * phi).sin_cos();
        let mut put = |l: usize, p: f64| {
            if m == 0 {
                out[sh_index(l, 0)] = p;
            } else {
                out[sh_index(l, m as i64)] = std::f64::consts::SQRT_2 * p * cm;
                out[sh_index(l, -(m as i64))] = std::f64::consts::SQRT_2 * p * sm;
            }
        };
        put(m, pmm);
        if m == lmax {
            break;
        }
        // normalized three-term recurrence in l
        let mut p_prev = pmm;
        let mut p_cur = ((2 * m + 3) as f64).sqrt() * x * pmm;
        put(m + 1, p_cur);
        for l in m + 2..=lmax {
            let a = |l: usize| (((4 * l * l - 1) as f64) / ((l * l - m * m) as f64)).sqrt();
            let p_next = a(l) * (x * p_cur - p_prev / a(l - 1));
            p_prev = p_cur;
            p_cur = p_next;
            put(l, p_cur);
        }
    }
    out
}

/// Stacked `Y_0..Y_ℓmax` at a unit vector.
pub fn sh_eval(lmax: usize, n: &[f64; 3]) -> Result<DVector<f64>> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitVector(norm));
    }
    let theta = (n[0].hypot(n[1])).atan2(n[2]);
    let phi = n[1].atan2(n[0]);
    Ok(sh_eval_angles(lmax, theta, phi))
}

pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

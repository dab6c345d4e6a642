use nalgebra::DMatrix;
use num_complex::Complex64;

use super::rotation::Rotation3;
use crate::error::{Error, Result};
use crate::reps::CMatrix;

/// Largest degree evaluated by the factorial-sum formula at full accuracy.
pub const MAX_DEGREE: usize = 10;

fn factorials() -> [f64; 2 * MAX_DEGREE + 2] {
    let mut f = [1.0; 2 * MAX_DEGREE + 2];
    for i in 1..f.len() {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// Complex small-d matrix `d^ℓ_{m'm}(β)`, rows and columns ordered `-ℓ..=ℓ`.
pub fn small_d(l: usize, beta: f64) -> Result<DMatrix<f64>> {
    if l > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { l, max: MAX_DEGREE });
    }
    let f = factorials();
    let li = l as i64;
    let (s, c) = (beta / 2.0).sin_cos();
    let n = 2 * l + 1;
    let mut d = DMatrix::zeros(n, n);
    for mp in -li..=li {
        for m in -li..=li {
            let pre = (f[(li + m) as usize] * f[(li - m) as usize] * f[(li + mp) as usize] * f[(li - mp) as usize]).sqrt();
            let mut sum = 0.0;
            for k in 0..=2 * li {
                let (a1, a2, a3) = (li + m - k, li - k - mp, k - m + mp);
                if a1 < 0 || a2 < 0 || a3 < 0 {
                    continue;
                }
                let sign = if a3 % 2 == 0 { 1.0 } else { -1.0 };
                let den = f[a1 as usize] * f[k as usize] * f[a2 as usize] * f[a3 as usize];
                sum += sign * c.powi((2 * li - 2 * k + m - mp) as i32) * s.powi((2 * k - m + mp) as i32) / den;
            }
            d[((mp + li) as usize, (m + li) as usize)] = pre * sum;
        }
    }
    Ok(d)
}

/// Complex-to-real change of basis: real `Y = U · Y^C`.
pub fn complex_to_real(l: usize) -> CMatrix {
    let li = l as i64;
    let n = 2 * l + 1;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = CMatrix::zeros(n, n);
    for m in -li..=li {
        let row = (m + li) as usize;
        let mu = m.abs();
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        if m == 0 {
            u[(row, l)] = Complex64::new(1.0, 0.0);
        } else if m > 0 {
            u[(row, (m + li) as usize)] = Complex64::new(sign * r, 0.0);
            u[(row, (li - m) as usize)] = Complex64::new(r, 0.0);
        } else {
            u[(row, (mu + li) as usize)] = Complex64::new(0.0, -sign * r);
            u[(row, (li - mu) as usize)] = Complex64::new(0.0, r);
        }
    }
    u
}

/// Real Wigner-D from Euler angles, given a precomputed `d^ℓ(β)`.
fn real_from_small_d(l: usize, d: &DMatrix<f64>, alpha: f64, gamma: f64) -> DMatrix<f64> {
    let li = l as i64;
    let n = 2 * l + 1;
    // conj(D^C) = e^{i m' α} d e^{i m γ}
    let conj_dc = CMatrix::from_fn(n, n, |i, j| {
        let (mp, m) = (i as i64 - li, j as i64 - li);
        Complex64::from_polar(d[(i, j)], mp as f64 * alpha + m as f64 * gamma)
    });
    let u = complex_to_real(l);
    let real = &u * conj_dc * u.adjoint();
    real.map(|z| z.re)
}

/// `D^ℓ(R)` in the real spherical-harmonic basis, so that `Y_ℓ(R n̂) = D^ℓ(R) Y_ℓ(n̂)`.
pub fn wigner_d(l: usize, r: &Rotation3) -> Result<DMatrix<f64>> {
    let d = small_d(l, r.beta)?;
    Ok(real_from_small_d(l, &d, r.alpha, r.gamma))
}

/// Block-diagonal `D^0 ⊕ … ⊕ D^{ℓmax}` as a list.
pub fn wigner_blocks(lmax: usize, r: &Rotation3) -> Result<Vec<DMatrix<f64>>> {
    (0..=lmax).map(|l| wigner_d(l, r)).collect()
}

/// Evaluates many rotations sharing a `β`, reusing `d^ℓ(β)`.
pub fn wigner_blocks_fixed_beta(lmax: usize, beta: f64, angles: &[(f64, f64)]) -> Result<Vec<Vec<DMatrix<f64>>>> {
    let ds: Vec<DMatrix<f64>> = (0..=lmax).map(|l| small_d(l, beta)).collect::<Result<_>>()?;
    Ok(angles
        .iter()
        .map(|&(a, g)| ds.iter().enumerate().map(|(l, d)| real_from_small_d(l, d, a, g)).collect())
        .collect())
}

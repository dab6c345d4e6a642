//! SO(2) and SO(3): rotations, real Wigner-D matrices, real spherical harmonics,
//! quadrature grids and the SO(2) ⊆ SO(3) branching of `D^ℓ`.

pub mod grid;
pub mod harmonics;
pub mod rotation;
pub mod so2;
pub mod wigner;

use std::collections::BTreeMap;

use nalgebra::DMatrix;

pub use grid::{So3Grid, SphereGrid};
pub use harmonics::{direction, sh_eval, sh_eval_angles, sh_index, sh_len};
pub use rotation::Rotation3;
pub use so2::{So2Irrep, So2Rep};
pub use wigner::{wigner_d, MAX_DEGREE};

use crate::error::Result;

/// `Res D^ℓ` as an SO(2) representation: frequencies `0, 1, …, ℓ` once each, with the
/// permutation `Q` to the blocks `Y_0, (Y_1, Y_-1), (Y_2, Y_-2), …`.
pub fn restrict_wigner(l: usize) -> So2Rep {
    let n = 2 * l + 1;
    let mut q = DMatrix::zeros(n, n);
    // row of m = 0 within the block
    let off = l;
    q[(off, 0)] = 1.0;
    let mut blocks = vec![So2Irrep { k: 0 }];
    for k in 1..=l {
        q[(off + k, 2 * k - 1)] = 1.0;
        q[(off - k, 2 * k)] = 1.0;
        blocks.push(So2Irrep { k });
    }
    So2Rep::new(blocks, q).expect("permutation basis")
}

pub fn restrict_wigner_multiplicities(l: usize) -> BTreeMap<usize, usize> {
    restrict_wigner(l).multiplicities()
}

/// `Res (D^{ℓ_1} ⊕ D^{ℓ_2} ⊕ …)`.
pub fn restrict_degrees(degrees: &[usize]) -> Result<So2Rep> {
    So2Rep::direct_sum_all(&degrees.iter().map(|&l| restrict_wigner(l)).collect::<Vec<_>>())
}

/// `⊕_j D^{ℓ_j}(R)` for an SO(3) fiber given by its degrees.
pub fn degrees_matrix(degrees: &[usize], r: &Rotation3) -> Result<DMatrix<f64>> {
    let n: usize = degrees.iter().map(|l| 2 * l + 1).sum();
    let mut m = DMatrix::zeros(n, n);
    let mut o = 0;
    for &l in degrees {
        let d = wigner_d(l, r)?;
        m.view_mut((o, o), (2 * l + 1, 2 * l + 1)).copy_from(&d);
        o += 2 * l + 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn restriction_block_diagonalizes_z_rotations() {
        for l in 0..=MAX_DEGREE {
            let r = restrict_wigner(l);
            assert_eq!(r.dim(), 2 * l + 1);
            for t in [0.0, 0.4, 2.9, -1.3] {
                let d = wigner_d(l, &Rotation3::about_z(t)).unwrap();
                assert!((r.matrix(t) - d).norm() < 1e-10, "l = {l}");
            }
        }
    }

    #[test]
    fn harmonics_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let g = Rotation3::random(&mut rng);
            let n = direction(rand::Rng::gen_range(&mut rng, 0.0..3.1), rand::Rng::gen_range(&mut rng, 0.0..6.2));
            let y = sh_eval(8, &n).unwrap();
            let yg = sh_eval(8, &g.apply(&n)).unwrap();
            for l in 0..=8 {
                let s = l * l;
                let d = wigner_d(l, &g).unwrap();
                let lhs = yg.rows(s, 2 * l + 1);
                let rhs = &d * y.rows(s, 2 * l + 1);
                assert!((lhs - rhs).amax() < 1e-10, "l = {l}");
            }
        }
    }

    #[test]
    fn degrees_of_a_fiber() {
        let r = restrict_degrees(&[0, 2]).unwrap();
        assert_eq!(r.multiplicities(), BTreeMap::from([(0, 2), (1, 1), (2, 1)]));
        let g = Rotation3::about_z(0.6);
        assert!((degrees_matrix(&[0, 2], &g).unwrap() - r.matrix(0.6)).norm() < 1e-12);
    }
}

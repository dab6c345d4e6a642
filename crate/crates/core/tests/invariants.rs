use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;

use indres::groups::{CosetDecomposition, Permutation, SubgroupEmbedding};
use indres::induce_restrict::{induce, irrep_tables, restrict};
use indres::kernels::{analytic_count, RadialProfileSet, SteerableKernelBasis};
use indres::layers::{rotate_signal, SphericalSignal};
use indres::reps::decompose;
use indres::so2_so3::{wigner_d, Rotation3, So2Rep};

fn so2_rep() -> impl Strategy<Value = So2Rep> {
    prop::collection::btree_map(0usize..5, 1usize..3, 1..4).prop_map(|m: BTreeMap<usize, usize>| So2Rep::from_multiplicities(&m).unwrap())
}

fn rotation() -> impl Strategy<Value = Rotation3> {
    (-PI..PI, 0.0..PI, -PI..PI).prop_map(|(a, b, g)| Rotation3::from_euler(a, b, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn so2_reps_are_orthogonal_homomorphisms(r in so2_rep(), a in -PI..PI, b in -PI..PI) {
        let (ma, mb) = (r.matrix(a), r.matrix(b));
        prop_assert!((r.matrix(a + b) - &ma * &mb).amax() < 1e-12);
        prop_assert!((ma.transpose() * &ma - DMatrix::identity(r.dim(), r.dim())).amax() < 1e-12);
    }

    #[test]
    fn so2_tensor_products(p in so2_rep(), q in so2_rep(), t in -PI..PI) {
        let pq = p.tensor(&q);
        prop_assert_eq!(pq.dim(), p.dim() * q.dim());
        let dense = p.matrix(t).kronecker(&q.matrix(t));
        let (a, b) = (pq.matrix(t).trace(), dense.trace());
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn basis_size_matches_frequency_matching(p in so2_rep(), q in so2_rep(), extra in 0usize..3) {
        let radial = RadialProfileSet::rings(2, 2.0).unwrap();
        let m = p.max_frequency() + q.max_frequency() + extra;
        let basis = SteerableKernelBasis::solve(&p, &q, &radial, m);
        prop_assert_eq!(basis.angular_count(), analytic_count(&p, &q, m));
    }

    #[test]
    fn wigner_matrices_are_orthogonal(g in rotation(), l in 0usize..9) {
        let d = wigner_d(l, &g).unwrap();
        prop_assert!((d.transpose() * &d - DMatrix::identity(2 * l + 1, 2 * l + 1)).amax() < 1e-11);
    }

    #[test]
    fn signal_rotation_is_an_isometric_action(
        coeffs in prop::collection::vec(-1.0f64..1.0, 2 * 16),
        g in rotation(),
        h in rotation(),
    ) {
        let s = SphericalSignal::new(3, DMatrix::from_row_slice(2, 16, &coeffs)).unwrap();
        let once = rotate_signal(&rotate_signal(&s, &h), &g);
        let gh = Rotation3::from_matrix(&(g.matrix() * h.matrix()));
        prop_assert!((rotate_signal(&s, &g).norm() - s.norm()).abs() < 1e-10);
        prop_assert!(once.distance(&rotate_signal(&s, &gh)).unwrap() < 1e-10);
    }

    #[test]
    fn permutations_invert(images in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.sign(), p.inverse().sign());
    }

    #[test]
    fn induction_scales_dimension_and_restriction_recovers_it(
        pair in prop::sample::select(vec![("A4", "Z3"), ("S4", "1"), ("A5", "Z5"), ("S3", "Z3")]),
        mult in prop::collection::vec(0usize..3, 5),
    ) {
        let e = SubgroupEmbedding::standard(pair.0, pair.1).unwrap();
        let (ht, gt) = irrep_tables(&e).unwrap();
        let mut m: Vec<usize> = mult.into_iter().cycle().take(ht.len()).collect();
        if m.iter().all(|&x| x == 0) {
            m[0] = 1;
        }
        let rep = ht.direct_sum_of(&m).unwrap();
        let ind = induce(&rep, &CosetDecomposition::new(e.clone())).unwrap();
        prop_assert_eq!(ind.dim(), e.index() * rep.dim());
        prop_assert!(ind.homomorphism_defect() < 1e-10);
        // Res Ind ρ contains ρ
        let back = decompose(&restrict(&ind, &e).unwrap(), &ht).unwrap();
        for (have, want) in back.multiplicities().iter().zip(&m) {
            prop_assert!(have >= want);
        }
        prop_assert_eq!(decompose(&ind, &gt).unwrap().dim(), ind.dim());
    }
}

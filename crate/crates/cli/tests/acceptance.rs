//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use indres::groups::{CosetDecomposition, SubgroupEmbedding};
use indres::induce_restrict::{
    branching_table, check_frobenius, completeness_check, induce, induction_table, irrep_tables, InducedBlocks,
};
use indres::kernels::{
    build_r3s2_kernel, build_volume_kernel, AngularCutoff, InductionKernel, RadialProfileSet, So3Kernel,
    SteerableKernelBasis,
};
use indres::layers::{
    equivariance_harness, gradient_check, negative_control, rotate_signal, sphere_to_so3_correlation, argmax,
    LayerConfig, Nonlinearity, SphericalSignal,
};
use indres::reps::{decompose, Decomposition, IrrepTable};
use indres::so2_so3::{
    direction, restrict_wigner_multiplicities, sh_eval, sh_index, wigner::wigner_blocks, wigner_d, Rotation3, So2Irrep,
    So2Rep, So3Grid,
};
use indres::tetra::{fixture_checks, TetraSetup};

const PAIRS: [(&str, &str); 4] = [("A4", "Z3"), ("Z3", "1"), ("A4", "1"), ("A5", "Z5")];

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn setup(g: &str, h: &str) -> (SubgroupEmbedding, IrrepTable, IrrepTable) {
    let e = SubgroupEmbedding::standard(g, h).unwrap();
    let (ht, gt) = irrep_tables(&e).unwrap();
    (e, ht, gt)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> usize {
    let s: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    let v = s.re / a.len() as f64;
    assert!((v - v.round()).abs() < 1e-9 && s.im.abs() < 1e-9 * a.len() as f64, "non-integral multiplicity {s}");
    v.round() as usize
}

/// `(1/|H|) Σ_{x∈G} χ̇(x⁻¹ g x)`.
fn induced_character(e: &SubgroupEmbedding, chi: &[Complex64]) -> Vec<Complex64> {
    let g = e.parent();
    let n = e.sub().order() as f64;
    (0..g.order())
        .map(|y| {
            let total: Complex64 = (0..g.order())
                .filter_map(|x| e.preimage(g.mul(g.mul(g.inv(x), y), x)).map(|h| chi[h]))
                .sum();
            total / n
        })
        .collect()
}

fn frobenius() -> Outcome {
    let mut cells = 0;
    for (g, h) in PAIRS {
        let (e, ht, gt) = setup(g, h);
        let cosets = CosetDecomposition::new(e.clone());
        let b = branching_table(&e, &gt, &ht).unwrap();
        let i = induction_table(&cosets, &ht, &gt).unwrap();
        let r = check_frobenius(&b, &i);
        if !r.pass {
            return Err(format!("{g}/{h}: {:?}", r.mismatch));
        }
        for (rho, r) in ht.labels().iter().zip(ht.irreps()) {
            let chi = r.character();
            let ind = induced_character(&e, &chi);
            for (sigma, s) in gt.labels().iter().zip(gt.irreps()) {
                let xs = s.character();
                let restricted: Vec<Complex64> = (0..e.sub().order()).map(|x| xs[e.embed(x)]).collect();
                let by_res = inner(&restricted, &chi);
                let by_ind = inner(&ind, &xs);
                if b.get(sigma, rho) != Some(by_res) || i.get(rho, sigma) != Some(by_ind) {
                    return Err(format!("{g}/{h} ({sigma}, {rho}) differs from the character oracle"));
                }
                cells += 1;
            }
        }
    }
    let (e, ht, gt) = setup("A4", "Z3");
    let i = induction_table(&CosetDecomposition::new(e.clone()), &ht, &gt).unwrap();
    let b = branching_table(&e, &gt, &ht).unwrap();
    let want = |pairs: &[&str]| Decomposition::from_pairs(&gt, &pairs.iter().map(|l| (*l, 1)).collect::<Vec<_>>()).unwrap();
    let row = |rho: &str| Decomposition::new(&gt, gt.labels().iter().map(|s| i.get(rho, s).unwrap()).collect()).unwrap();
    let worked = row("rho1") == want(&["sigma1", "sigma3"])
        && row("rho+") == want(&["sigma1+", "sigma3"])
        && row("rho-") == want(&["sigma1-", "sigma3"])
        && ht.labels().iter().all(|r| b.get("sigma3", r) == Some(1));
    ensure(worked, format!("B = I^T on 4 embeddings, {cells} cells match the character oracle, Z3/A4 worked values {}", if worked { "match" } else { "differ" }))
}

fn completeness() -> Outcome {
    for (g, h) in PAIRS {
        let (e, ht, gt) = setup(g, h);
        let r = completeness_check(&e, &ht, &gt).unwrap();
        if !r.pass {
            return Err(format!("{g}/{h}: {:?} vs {:?}", r.induced_regular.nonzero(), r.regular.nonzero()));
        }
    }
    let (e, ht, gt) = setup("A4", "Z3");
    let r = completeness_check(&e, &ht, &gt).unwrap();
    let want = Decomposition::from_pairs(&gt, &[("sigma1", 1), ("sigma1+", 1), ("sigma1-", 1), ("sigma3", 3)]).unwrap();
    ensure(
        r.induced_regular == want && r.regular == want,
        format!("Ind regular = regular on 4 embeddings; Z3/A4 gives {:?}", r.induced_regular.nonzero()),
    )
}

fn dimension_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..50 {
        let (g, h) = PAIRS[rng.gen_range(0..PAIRS.len())];
        let (e, ht, gt) = setup(g, h);
        let mut mult: Vec<usize> = (0..ht.len()).map(|_| rng.gen_range(0..3)).collect();
        if mult.iter().all(|&m| m == 0) {
            mult[0] = 1;
        }
        let rep = ht.direct_sum_of(&mult).unwrap();
        let cosets = CosetDecomposition::new(e.clone());
        let ind = induce(&rep, &cosets).unwrap();
        let want = e.index() * rep.dim();
        let blocks = InducedBlocks::new(&rep, &cosets).unwrap();
        if ind.dim() != want || blocks.dim() != want || decompose(&ind, &gt).unwrap().dim() != want {
            return Err(format!("trial {t}: {g}/{h} dim {} index {} induced {}", rep.dim(), e.index(), ind.dim()));
        }
    }
    Ok("dim Ind = |G:H| dim on 50 random direct sums".into())
}

fn tetra() -> Outcome {
    let s = TetraSetup::new().unwrap();
    let checks = fixture_checks(&s).unwrap();
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let detail = checks.iter().map(|c| c.name).collect::<Vec<_>>().join(", ");
    ensure(failed.is_empty() && checks.len() == 9, if failed.is_empty() { format!("{} checks: {detail}", checks.len()) } else { failed.join("; ") })
}

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    direction(rng.gen_range(-1.0f64..1.0).acos(), rng.gen_range(0.0..TAU))
}

fn harmonics() -> Outcome {
    const L: usize = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sh: f64 = 0.0;
    for _ in 0..100 {
        let g = Rotation3::random(&mut rng);
        let n = random_direction(&mut rng);
        let (y, yg) = (sh_eval(L, &n).unwrap(), sh_eval(L, &g.apply(&n)).unwrap());
        for (l, d) in wigner_blocks(L, &g).unwrap().iter().enumerate() {
            let o = sh_index(l, -(l as i64));
            let want = d * y.rows(o, 2 * l + 1);
            sh = sh.max((yg.rows(o, 2 * l + 1) - want).amax());
        }
    }
    let mut comp: f64 = 0.0;
    for _ in 0..100 {
        let (a, b) = (Rotation3::random(&mut rng), Rotation3::random(&mut rng));
        let ab = Rotation3::from_matrix(&(a.matrix() * b.matrix()));
        for l in 0..=L {
            let lhs = wigner_d(l, &ab).unwrap();
            comp = comp.max((lhs - wigner_d(l, &a).unwrap() * wigner_d(l, &b).unwrap()).amax());
        }
    }
    // frequencies of D^ℓ(R_z(t)) read off its eigenvalues e^{±ikt}
    let t = 0.1;
    let mut restrict_ok = true;
    for l in 0..=L {
        let eig = wigner_d(l, &Rotation3::about_z(t)).unwrap().complex_eigenvalues();
        let mut counts = std::collections::BTreeMap::new();
        for z in eig.iter() {
            *counts.entry((z.arg().abs() / t).round() as usize).or_insert(0usize) += 1;
        }
        let oracle: std::collections::BTreeMap<usize, usize> =
            counts.into_iter().map(|(k, c)| (k, if k == 0 { c } else { c / 2 })).collect();
        let want: std::collections::BTreeMap<usize, usize> = (0..=l).map(|k| (k, 1)).collect();
        restrict_ok &= oracle == want && restrict_wigner_multiplicities(l) == oracle;
    }
    ensure(
        sh < 1e-10 && comp < 1e-10 && restrict_ok,
        format!("SH residual {sh:.1e}, composition {comp:.1e}, restriction {}", if restrict_ok { "matches" } else { "differs" }),
    )
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)).qr().q()
}

fn random_rep(rng: &mut ChaCha8Rng) -> So2Rep {
    let blocks: Vec<So2Irrep> = (0..rng.gen_range(1..=3)).map(|_| So2Irrep { k: rng.gen_range(0..=4) }).collect();
    let dim = blocks.iter().map(So2Irrep::dim).sum();
    So2Rep::new(blocks, random_orthogonal(rng, dim)).unwrap()
}

fn rank(e: &DMatrix<f64>) -> usize {
    let s = e.clone().svd(false, false).singular_values;
    let smax = s.max();
    s.iter().filter(|&&x| x > 1e-8 * smax).count()
}

/// Dimension of `{(A, B) : κ(φ + θ) = ρo(θ) κ(φ) ρi(θ)ᵀ}` for `κ = A cos mφ + B sin mφ`, from
/// 64 random angles on the full matrices.
fn brute_force_count(rin: &So2Rep, rout: &So2Rep, m_max: usize, rng: &mut ChaCha8Rng) -> usize {
    let k = rin.dim() * rout.dim();
    let id = DMatrix::<f64>::identity(k, k);
    let mut total = 0;
    for m in 0..=m_max {
        let u = if m == 0 { k } else { 2 * k };
        let mut e = DMatrix::zeros(64 * u, u);
        for t in 0..64 {
            let theta = rng.gen_range(0.0..TAU);
            let kr = rin.matrix(theta).kronecker(&rout.matrix(theta));
            let (s, c) = (m as f64 * theta).sin_cos();
            if m == 0 {
                e.view_mut((t * u, 0), (k, k)).copy_from(&(&id - &kr));
            } else {
                e.view_mut((t * u, 0), (k, k)).copy_from(&(&id * c - &kr));
                e.view_mut((t * u, k), (k, k)).copy_from(&(&id * s));
                e.view_mut((t * u + k, 0), (k, k)).copy_from(&(&id * -s));
                e.view_mut((t * u + k, k), (k, k)).copy_from(&(&id * c - &kr));
            }
        }
        total += u - rank(&e);
    }
    total
}

fn polar(rng: &mut ChaCha8Rng, r_max: f64) -> (f64, f64) {
    let (r, phi) = (rng.gen_range(0.0..r_max), rng.gen_range(0.0..TAU));
    (r * phi.cos(), r * phi.sin())
}

fn kernel_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let radial = RadialProfileSet::rings(2, 2.5).unwrap();
    let mut worst: f64 = 0.0;
    let mut elements = 0;
    for t in 0..20 {
        let (rin, rout) = (random_rep(&mut rng), random_rep(&mut rng));
        let m_max = rin.max_frequency() + rout.max_frequency() + rng.gen_range(0..2);
        let basis = SteerableKernelBasis::solve(&rin, &rout, &radial, m_max);
        let want = brute_force_count(&rin, &rout, m_max, &mut rng);
        if basis.angular_count() != want || basis.len() != want * radial.len() {
            return Err(format!("pair {t} ({rin} -> {rout}, m <= {m_max}): solver {} vs nullspace {want}", basis.angular_count()));
        }
        for b in 0..basis.len() {
            for _ in 0..200 {
                let theta = rng.gen_range(-PI..PI);
                let (x, y) = polar(&mut rng, 2.5);
                let scale = basis.evaluate(b, x, y).norm().max(1.0);
                worst = worst.max(basis.steerability_residual(b, theta, x, y) / scale);
            }
            elements += 1;
        }
    }
    if worst >= 1e-8 {
        return Err(format!("element steerability residual {worst:.1e}"));
    }

    let fin = So2Rep::parse("0:1,1:1,2:1").unwrap();
    let sphere = InductionKernel::new(&fin, &[0, 1, 2], 3, &radial, AngularCutoff::Complete).unwrap();
    let so3 = So3Kernel::new(&fin, &[0, 1], 2, &radial, AngularCutoff::Complete).unwrap();
    let z = [-0.7, 0.0, 0.4];
    let volume = build_volume_kernel(&fin, &[0, 1, 2], &z, &radial).unwrap();
    let r3s2 = build_r3s2_kernel(&fin, &[0, 1], 2, &z, &radial).unwrap();
    let w = |n: usize, rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() };
    let (ws, wo, wv, wr) = (
        w(sphere.weight_count(), &mut rng),
        w(so3.weight_count(), &mut rng),
        w(volume.weight_count(), &mut rng),
        w(r3s2.weight_count(), &mut rng),
    );
    let mut family = [0.0f64; 4];
    for _ in 0..200 {
        let theta = rng.gen_range(-PI..PI);
        let (x, y) = polar(&mut rng, 2.5);
        let n = random_direction(&mut rng);
        let g = Rotation3::random(&mut rng);
        let zi = rng.gen_range(0..z.len());
        let rel = |r: f64, v: f64| r / v.max(1.0);
        family[0] = family[0].max(rel(sphere.constraint_residual(&ws, theta, &n, x, y).unwrap(), sphere.evaluate(&ws, &n, x, y).unwrap().norm()));
        family[1] = family[1].max(rel(so3.constraint_residual(&wo, theta, &g, x, y).unwrap(), so3.evaluate(&wo, &g, x, y).unwrap().norm()));
        family[2] = family[2].max(rel(volume.constraint_residual(&wv, theta, zi, x, y).unwrap(), volume.evaluate(&wv, zi, x, y).unwrap().norm()));
        family[3] = family[3].max(rel(r3s2.constraint_residual(&wr, theta, &n, x, y, zi).unwrap(), r3s2.evaluate(&wr, &n, x, y, zi).unwrap().norm()));
    }
    ensure(
        family.iter().all(|&r| r < 1e-8),
        format!(
            "20 pairs match the nullspace oracle, {elements} elements at 200 points each (max {worst:.1e}); families sphere {:.1e}, SO(3) {:.1e}, volume {:.1e}, R3xS2 {:.1e}",
            family[0], family[1], family[2], family[3]
        ),
    )
}

fn layer_equivariance() -> Outcome {
    let c = LayerConfig::default();
    assert_eq!(c.lmax, 6);
    let r = equivariance_harness(&c, 20, 1, 2024).unwrap();
    let n = negative_control(&c, 20, 1, 2024).unwrap();
    ensure(
        r.max_residual < 1e-5 && n.max_residual > 1e-1,
        format!("lmax 6, 20 trials: max residual {:.1e}; non-steerable control {:.2}", r.max_residual, n.max_residual),
    )
}

fn gradients() -> Outcome {
    let c = LayerConfig { lmax: 4, ..LayerConfig::default() };
    let soft = gradient_check(&c, Some(Nonlinearity::Softplus), 8, false).unwrap();
    let lin = gradient_check(&c, None, 8, false).unwrap();
    ensure(
        soft.max_relative_error < 1e-6 && lin.max_relative_error < 1e-8,
        format!("softplus {:.1e}, linear {:.1e} over {} weights", soft.max_relative_error, lin.max_relative_error, lin.weights),
    )
}

fn random_signal(rng: &mut ChaCha8Rng, lmax: usize, channels: usize) -> SphericalSignal {
    SphericalSignal::new(lmax, DMatrix::from_fn(channels, (lmax + 1) * (lmax + 1), |_, _| rng.gen_range(-1.0..1.0))).unwrap()
}

fn correlation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (s, f) = (random_signal(&mut rng, 4, 3), random_signal(&mut rng, 4, 3));
        let h = Rotation3::random(&mut rng);
        let base = sphere_to_so3_correlation(&s, &f).unwrap();
        let moved = sphere_to_so3_correlation(&rotate_signal(&s, &h), &f).unwrap();
        let shifted = base.left_translate(&h);
        for _ in 0..20 {
            let g = Rotation3::random(&mut rng);
            let want = base.evaluate(&Rotation3::from_matrix(&(h.matrix().transpose() * g.matrix())));
            worst = worst.max((moved.evaluate(&g) - want).abs()).max((shifted.evaluate(&g) - want).abs());
        }
    }
    let grid = So3Grid::new(12, 6, 12);
    let mut identity = true;
    for _ in 0..5 {
        let s = random_signal(&mut rng, 4, 3);
        let best = argmax(&sphere_to_so3_correlation(&s, &s).unwrap().evaluate_grid(&grid)).unwrap();
        let (a, b, g) = grid.angles(best);
        let q = Rotation3::from_euler(a, b, g).quaternion();
        identity &= q.angle() < 1e-9;
    }
    ensure(worst < 1e-8 && identity, format!("left-equivariance residual {worst:.1e}; self-correlation peak at identity: {identity}"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_indres");
    let runs: [&[&str]; 6] = [
        &["frobenius", "--group", "A5", "--subgroup", "Z5"],
        &["tetra-demo"],
        &["kernel-basis", "--family", "so3", "--in-rep", "0:1,2:1", "--degrees", "1,2", "--lmax", "2", "--seed", "5"],
        &["equivariance", "--lmax", "3", "--trials", "4", "--grid", "121", "--spacing", "0.15", "--seed", "11"],
        &["gradcheck", "--lmax", "3", "--seed", "3"],
        &["demo", "pose", "--lmax", "3", "--grid", "12,6,12", "--seed", "1"],
    ];
    for args in runs {
        let out: Vec<_> = (0..2).map(|_| Command::new(bin).args(args).output().unwrap()).collect();
        if !out[0].status.success() || out[0].stdout.is_empty() {
            return Err(format!("`{}` failed: {}", args.join(" "), String::from_utf8_lossy(&out[0].stderr)));
        }
        if out[0].stdout != out[1].stdout {
            return Err(format!("`{}` output differs between runs", args.join(" ")));
        }
        serde_json::from_slice::<serde_json::Value>(&out[0].stdout).map_err(|e| format!("`{}`: {e}", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical across repeated runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("frobenius reciprocity", frobenius),
        ("completeness", completeness),
        ("dimension law", dimension_law),
        ("tetrahedron fixtures", tetra),
        ("harmonics", harmonics),
        ("kernel solver", kernel_solver),
        ("layer equivariance", layer_equivariance),
        ("gradient check", gradients),
        ("correlation head", correlation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {d}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

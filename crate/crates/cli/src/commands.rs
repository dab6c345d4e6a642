use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail};
use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use indres::groups::{CosetDecomposition, FiniteGroup, SubgroupEmbedding};
use indres::induce_restrict::{
    branching_table, check_frobenius, completeness_check, induce as induce_rep, induction_table, irrep_tables,
};
use indres::kernels::{
    analytic_count, build_r3s2_kernel, build_volume_kernel, harmonic_input, AngularCutoff, InductionKernel,
    RadialProfileSet, So3Kernel, SteerableKernelBasis,
};
use indres::layers::demo::{pose_demo, DemoConfig, Pattern};
use indres::layers::{equivariance_harness, gradient_check, negative_control, LayerConfig, Nonlinearity};
use indres::reps::{decompose as decompose_rep, Decomposition, IrrepTable, Representation};
use indres::so2_so3::{direction, restrict_degrees, Rotation3, So2Rep};
use indres::tetra::{fixture_checks, TetraSetup};

use crate::output::{csv_string, num, write_file, Report};
use crate::GroupPair;

const DEFAULT_GROUPS: [&str; 10] = ["1", "Z2", "Z3", "Z4", "Z5", "S3", "S4", "S5", "A4", "A5"];
const RESIDUAL_TOL: f64 = 1e-8;

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `{"result": ..., <fields of value>}`.
fn with_result(value: impl Serialize, pass: bool) -> anyhow::Result<Value> {
    let mut map = Map::new();
    map.insert("result".into(), json!(verdict(pass)));
    match serde_json::to_value(value)? {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    Ok(Value::Object(map))
}

fn decomposition_json(d: &Decomposition) -> Value {
    let mut m = Map::new();
    for (l, c) in d.labels().iter().zip(d.multiplicities()) {
        m.insert(l.clone(), json!(c));
    }
    Value::Object(m)
}

fn group(name: &str) -> anyhow::Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::builtin(name)?))
}

/// `a,b*c,...`: direct sum over `,` of tensor products over `*` of `regular`, `trivial`,
/// `natural` or irrep labels.
fn parse_rep(text: &str, table: &IrrepTable) -> anyhow::Result<Representation> {
    let g = table.group().clone();
    let atom = |s: &str| -> anyhow::Result<Representation> {
        Ok(match s {
            "regular" => Representation::regular(g.clone()),
            "trivial" => Representation::trivial(g.clone()),
            "natural" => {
                let n = g.degree().ok_or_else(|| anyhow!("`natural` needs a permutation group"))?;
                let gg = g.clone();
                Representation::permutation(g.clone(), n, move |h, x| gg.permutation(h).expect("permutation group").apply(x))?
            }
            label => table.irrep(label)?.clone(),
        })
    };
    let mut total: Option<Representation> = None;
    for term in text.split(',').map(str::trim) {
        if term.is_empty() {
            bail!("empty term in representation `{text}`");
        }
        let mut prod: Option<Representation> = None;
        for f in term.split('*').map(str::trim) {
            let a = atom(f)?;
            prod = Some(match prod {
                None => a,
                Some(p) => p.tensor_product(&a)?,
            });
        }
        let p = prod.expect("non-empty term");
        total = Some(match total {
            None => p,
            Some(t) => t.direct_sum(&p)?,
        });
    }
    total.ok_or_else(|| anyhow!("empty representation"))
}

pub fn groups(names: &[String]) -> anyhow::Result<Report> {
    let names: Vec<String> = if names.is_empty() { DEFAULT_GROUPS.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for n in &names {
        let g = group(n)?;
        let table = IrrepTable::for_group(g.clone()).ok();
        let irreps: Vec<Value> = table
            .iter()
            .flat_map(|t| t.labels().iter().zip(t.dims()).map(|(l, d)| json!({"label": l, "dim": d})).collect::<Vec<_>>())
            .collect();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        if let Some(t) = &table {
            for (l, d) in t.labels().iter().zip(t.dims()) {
                rows.push(vec![g.name().to_string(), g.order().to_string(), sizes.len().to_string(), l.clone(), d.to_string()]);
            }
        }
        out.push(json!({"name": g.name(), "order": g.order(), "classes": sizes.len(), "class_sizes": sizes, "irreps": irreps}));
    }
    Ok(Report::new(json!({ "groups": out }), &["group", "order", "classes", "irrep", "dim"], rows))
}

pub fn decompose(group_name: &str, text: &str) -> anyhow::Result<Report> {
    let g = group(group_name)?;
    let table = IrrepTable::for_group(g.clone())?;
    let rep = parse_rep(text, &table)?;
    let d = decompose_rep(&rep, &table)?;
    let rows = d.labels().iter().zip(d.multiplicities()).map(|(l, m)| vec![l.clone(), m.to_string()]).collect();
    let j = json!({"group": g.name(), "rep": text, "dim": rep.dim(), "decomposition": decomposition_json(&d)});
    Ok(Report::new(j, &["irrep", "multiplicity"], rows))
}

struct Setup {
    embedding: SubgroupEmbedding,
    h: IrrepTable,
    g: IrrepTable,
}

fn setup(p: &GroupPair) -> anyhow::Result<Setup> {
    let embedding = SubgroupEmbedding::standard(&p.group, &p.subgroup)?;
    let (h, g) = irrep_tables(&embedding)?;
    Ok(Setup { embedding, h, g })
}

pub fn branch(p: &GroupPair) -> anyhow::Result<Report> {
    let s = setup(p)?;
    let b = branching_table(&s.embedding, &s.g, &s.h)?;
    let mut header = vec!["irrep"];
    header.extend(b.cols.iter().map(String::as_str));
    let rows = b
        .rows
        .iter()
        .zip(&b.entries)
        .map(|(r, e)| std::iter::once(r.clone()).chain(e.iter().map(usize::to_string)).collect())
        .collect();
    let j = json!({"group": p.group, "subgroup": p.subgroup, "index": s.embedding.index(), "branching": b});
    Ok(Report::new(j, &header, rows))
}

pub fn induce(p: &GroupPair, text: &str) -> anyhow::Result<Report> {
    let s = setup(p)?;
    let rep = parse_rep(text, &s.h)?;
    let cosets = CosetDecomposition::new(s.embedding.clone());
    let ind = induce_rep(&rep, &cosets)?;
    let d = decompose_rep(&ind, &s.g)?;
    let pass = ind.dim() == cosets.index() * rep.dim();
    let rows = d.labels().iter().zip(d.multiplicities()).map(|(l, m)| vec![l.clone(), m.to_string()]).collect();
    let j = json!({
        "group": p.group,
        "subgroup": p.subgroup,
        "rep": text,
        "index": cosets.index(),
        "dim": rep.dim(),
        "induced_dim": ind.dim(),
        "homomorphism_defect": ind.homomorphism_defect(),
        "decomposition": decomposition_json(&d),
    });
    Ok(Report::new(with_result(j, pass)?, &["irrep", "multiplicity"], rows).verdict(pass))
}

pub fn frobenius(p: &GroupPair) -> anyhow::Result<Report> {
    let s = setup(p)?;
    let cosets = CosetDecomposition::new(s.embedding.clone());
    let b = branching_table(&s.embedding, &s.g, &s.h)?;
    let i = induction_table(&cosets, &s.h, &s.g)?;
    let r = check_frobenius(&b, &i);
    let mut rows = Vec::new();
    for (si, sigma) in b.rows.iter().enumerate() {
        for (ri, rho) in b.cols.iter().enumerate() {
            let ind = i.rows.iter().position(|x| x == rho).and_then(|k| i.cols.iter().position(|x| x == sigma).map(|c| i.entries[k][c]));
            rows.push(vec![sigma.clone(), rho.clone(), b.entries[si][ri].to_string(), ind.map_or(String::new(), |v| v.to_string())]);
        }
    }
    let j = json!({
        "result": verdict(r.pass),
        "group": p.group,
        "subgroup": p.subgroup,
        "mismatch": r.mismatch,
        "branching": b,
        "induction": i,
    });
    Ok(Report::new(j, &["sigma", "rho", "branching", "induction"], rows).verdict(r.pass))
}

pub fn completeness(p: &GroupPair) -> anyhow::Result<Report> {
    let s = setup(p)?;
    let r = completeness_check(&s.embedding, &s.h, &s.g)?;
    let rows = r
        .regular
        .labels()
        .iter()
        .zip(r.induced_regular.multiplicities().iter().zip(r.regular.multiplicities()))
        .map(|(l, (a, b))| vec![l.clone(), a.to_string(), b.to_string()])
        .collect();
    let j = json!({
        "result": verdict(r.pass),
        "group": p.group,
        "subgroup": p.subgroup,
        "induced_regular": decomposition_json(&r.induced_regular),
        "regular": decomposition_json(&r.regular),
    });
    Ok(Report::new(j, &["irrep", "induced_regular", "regular"], rows).verdict(r.pass))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Plane → plane, between two SO(2) representations.
    So2,
    /// Plane → sphere.
    Sphere,
    /// Plane → SO(3).
    So3,
    /// Plane → volume.
    Volume,
    /// Plane → ℝ³ × S².
    R3s2,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, value_enum, default_value = "so2")]
    pub family: Family,
    /// Input SO(2) representation, `freq:mult,...`.
    #[arg(long = "in-rep", default_value = "0:1")]
    pub in_rep: String,
    /// Output SO(2) representation (so2 family).
    #[arg(long = "out-rep", default_value = "0:1")]
    pub out_rep: String,
    /// Output SO(3) degrees (other families).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub degrees: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub lmax: usize,
    /// Depth samples (volume and r3s2 families).
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub z: Vec<f64>,
    /// Angular cutoff; defaults to every frequency the representations can couple.
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub radial: usize,
    #[arg(long, default_value_t = 3.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the elements of one basis block on a 9×9 grid as CSV.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub block: usize,
}

enum Built {
    So2(SteerableKernelBasis),
    Sphere(InductionKernel),
    So3(So3Kernel),
    Volume(indres::kernels::VolumeKernel),
    R3s2(indres::kernels::R3S2Kernel),
}

impl Built {
    fn blocks(&self, lmax: usize) -> Vec<&SteerableKernelBasis> {
        match self {
            Built::So2(b) => vec![b],
            Built::Sphere(k) => (0..=lmax).map(|l| k.basis(l)).collect(),
            Built::So3(k) => (0..=lmax).map(|l| k.basis(l)).collect(),
            Built::Volume(k) => (0..k.z_samples().len()).map(|z| k.basis(z)).collect(),
            Built::R3s2(k) => (0..k.z_samples().len()).flat_map(|z| (0..=lmax).map(move |l| k.slice(z).basis(l))).collect(),
        }
    }

    fn weight_count(&self) -> usize {
        match self {
            Built::So2(b) => b.len(),
            Built::Sphere(k) => k.weight_count(),
            Built::So3(k) => k.weight_count(),
            Built::Volume(k) => k.weight_count(),
            Built::R3s2(k) => k.weight_count(),
        }
    }

    /// Largest sampled constraint residual over 50 random points and angles.
    fn residual(&self, rng: &mut ChaCha8Rng) -> anyhow::Result<f64> {
        let w: Vec<f64> = (0..self.weight_count()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let t = rng.gen_range(-PI..PI);
            let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let n = direction(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let g = Rotation3::random(rng);
            let r = match self {
                Built::So2(b) => (0..b.len()).map(|e| b.steerability_residual(e, t, x, y)).fold(0.0, f64::max),
                Built::Sphere(k) => k.constraint_residual(&w, t, &n, x, y)?,
                Built::So3(k) => k.constraint_residual(&w, t, &g, x, y)?,
                Built::Volume(k) => {
                    let zi = rng.gen_range(0..k.z_samples().len());
                    k.constraint_residual(&w, t, zi, x, y)?
                }
                Built::R3s2(k) => {
                    let zi = rng.gen_range(0..k.z_samples().len());
                    k.constraint_residual(&w, t, &n, x, y, zi)?
                }
            };
            worst = worst.max(r);
        }
        Ok(worst)
    }
}

fn dump_block(basis: &SteerableKernelBasis, r_max: f64) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    for b in 0..basis.len() {
        let el = &basis.elements()[b];
        let m = basis.element_solution(b).m;
        for i in 0..9 {
            for j in 0..9 {
                let (x, y) = (r_max * (j as f64 / 4.0 - 1.0), r_max * (i as f64 / 4.0 - 1.0));
                let v = basis.evaluate(b, x, y);
                for r in 0..v.nrows() {
                    for c in 0..v.ncols() {
                        rows.push(vec![
                            b.to_string(),
                            m.to_string(),
                            el.radial.to_string(),
                            num(x),
                            num(y),
                            r.to_string(),
                            c.to_string(),
                            num(v[(r, c)]),
                        ]);
                    }
                }
            }
        }
    }
    let header: Vec<String> = ["element", "m", "radial", "x", "y", "row", "col", "value"].iter().map(|s| s.to_string()).collect();
    csv_string(&header, &rows)
}

pub fn kernel_basis(a: &KernelArgs) -> anyhow::Result<Report> {
    let radial = RadialProfileSet::rings(a.radial, a.r_max)?;
    let fin = So2Rep::parse(&a.in_rep)?;
    let cutoff = a.m_max.map_or(AngularCutoff::Complete, AngularCutoff::Fixed);
    let built = match a.family {
        Family::So2 => {
            let out = So2Rep::parse(&a.out_rep)?;
            Built::So2(match a.m_max {
                Some(m) => SteerableKernelBasis::solve(&fin, &out, &radial, m),
                None => SteerableKernelBasis::solve_complete(&fin, &out, &radial),
            })
        }
        Family::Sphere => Built::Sphere(InductionKernel::new(&fin, &a.degrees, a.lmax, &radial, cutoff)?),
        Family::So3 => Built::So3(So3Kernel::new(&fin, &a.degrees, a.lmax, &radial, cutoff)?),
        Family::Volume => Built::Volume(build_volume_kernel(&fin, &a.degrees, &a.z, &radial)?),
        Family::R3s2 => Built::R3s2(build_r3s2_kernel(&fin, &a.degrees, a.lmax, &a.z, &radial)?),
    };
    let blocks = built.blocks(a.lmax);
    let summaries: Vec<_> = blocks.iter().map(|b| b.summary()).collect();
    let total: usize = summaries.iter().map(|s| s.count).sum();
    // frequency-matching count for the two families whose blocks are plain pairs
    let analytic = match a.family {
        Family::So2 => Some(blocks.iter().map(|b| radial.len() * analytic_count(b.in_rep(), b.out_rep(), b.m_max())).sum::<usize>()),
        Family::Sphere => {
            let out = restrict_degrees(&a.degrees)?;
            Some(
                blocks
                    .iter()
                    .enumerate()
                    .map(|(l, b)| radial.len() * analytic_count(&harmonic_input(l, &fin), &out, b.m_max()))
                    .sum(),
            )
        }
        _ => None,
    };
    let residual = built.residual(&mut ChaCha8Rng::seed_from_u64(a.seed))?;
    let pass = residual < RESIDUAL_TOL && analytic.is_none_or(|n| n == total);
    if let Some(path) = &a.dump {
        let b = blocks.get(a.block).ok_or_else(|| anyhow!("block {} out of range ({} blocks)", a.block, blocks.len()))?;
        write_file(path, &dump_block(b, a.r_max)?)?;
    }
    let rows = summaries
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![i.to_string(), s.in_rep.clone(), s.out_rep.clone(), s.m_max.to_string(), s.angular.to_string(), s.radial.to_string(), s.count.to_string()]
        })
        .collect();
    let j = json!({
        "result": verdict(pass),
        "family": a.family,
        "in_rep": a.in_rep,
        "radial": radial,
        "blocks": summaries,
        "total": total,
        "analytic_total": analytic,
        "max_residual": residual,
        "tolerance": RESIDUAL_TOL,
    });
    Ok(Report::new(j, &["block", "in_rep", "out_rep", "m_max", "angular", "radial", "count"], rows).verdict(pass))
}

#[derive(Args, Debug)]
pub struct LayerArgs {
    #[arg(long, default_value_t = 6)]
    pub lmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Input fiber, `freq:mult,...`.
    #[arg(long, default_value = "0:1,1:1")]
    pub fiber: String,
    #[arg(long, default_value_t = 2)]
    pub channels: usize,
    #[arg(long, default_value_t = 3)]
    pub radial: usize,
    #[arg(long, default_value_t = 3.0)]
    pub r_max: f64,
    /// Pixels per side of the input grid.
    #[arg(long, default_value_t = 161)]
    pub grid: usize,
    #[arg(long, default_value_t = 0.125)]
    pub spacing: f64,
}

impl LayerArgs {
    fn config(&self) -> LayerConfig {
        LayerConfig {
            fiber_in: self.fiber.clone(),
            channels: self.channels,
            lmax: self.lmax,
            radial_count: self.radial,
            r_max: self.r_max,
            grid_size: self.grid,
            spacing: self.spacing,
            ..LayerConfig::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct EquivarianceArgs {
    #[command(flatten)]
    pub layer: LayerArgs,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Rotation angles per trial.
    #[arg(long, default_value_t = 1)]
    pub angles: usize,
    /// Run on a non-steerable kernel instead; the harness is expected to FAIL.
    #[arg(long)]
    pub negative_control: bool,
}

pub fn equivariance(a: &EquivarianceArgs) -> anyhow::Result<Report> {
    let c = a.layer.config();
    let r = if a.negative_control {
        negative_control(&c, a.trials, a.angles, a.layer.seed)?
    } else {
        equivariance_harness(&c, a.trials, a.angles, a.layer.seed)?
    };
    let rows = r
        .trials
        .iter()
        .enumerate()
        .flat_map(|(t, v)| v.iter().enumerate().map(move |(k, x)| vec![t.to_string(), k.to_string(), num(x.theta), num(x.residual)]))
        .collect();
    let pass = r.pass;
    let mut j = with_result(&r, pass)?;
    j["kernel"] = json!(if a.negative_control { "unconstrained" } else { "steerable" });
    Ok(Report::new(j, &["trial", "angle", "theta", "residual"], rows).verdict(pass))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradPath {
    None,
    Softplus,
}

#[derive(Args, Debug)]
pub struct GradArgs {
    #[command(flatten)]
    pub layer: LayerArgs,
    #[arg(long, value_enum, default_value = "softplus")]
    pub nonlinearity: GradPath,
    /// Zero weights and a zero field.
    #[arg(long)]
    pub zero: bool,
}

pub fn gradcheck(a: &GradArgs) -> anyhow::Result<Report> {
    let nl = match a.nonlinearity {
        GradPath::None => None,
        GradPath::Softplus => Some(Nonlinearity::Softplus),
    };
    let r = gradient_check(&a.layer.config(), nl, a.layer.seed, a.zero)?;
    let rows = vec![vec![r.weights.to_string(), num(r.loss), num(r.gradient_norm), num(r.max_relative_error), num(r.threshold)]];
    let pass = r.pass;
    Ok(Report::new(with_result(&r, pass)?, &["weights", "loss", "gradient_norm", "max_relative_error", "threshold"], rows).verdict(pass))
}

pub fn tetra_demo() -> anyhow::Result<Report> {
    let s = TetraSetup::new()?;
    let mut stacking = Vec::new();
    let mut rows = Vec::new();
    for (g, blocks) in s.symbolic_rows() {
        let psi: Vec<String> = blocks.iter().map(|(k, h)| format!("Psi{k}[{h}]")).collect();
        rows.push(vec!["stacking".into(), g.clone(), format!("[{}]", psi.join("; "))]);
        stacking.push(json!({"g": g, "psi": psi}));
    }
    let checks = fixture_checks(&s)?;
    let pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        rows.push(vec!["check".into(), c.name.to_string(), verdict(c.pass).to_string()]);
    }
    let j = json!({"result": verdict(pass), "stacking": stacking, "checks": checks});
    Ok(Report::new(j, &["section", "key", "value"], rows).verdict(pass))
}

#[derive(Args, Debug)]
pub struct PoseArgs {
    #[arg(long, default_value = "comet")]
    pub pattern: String,
    /// True in-plane angle in degrees.
    #[arg(long, default_value_t = 60.0, allow_hyphen_values = true)]
    pub angle: f64,
    #[arg(long, default_value_t = 4)]
    pub lmax: usize,
    #[arg(long, default_value_t = 4)]
    pub channels: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Softmax temperature relative to the template energy.
    #[arg(long, default_value_t = 0.05)]
    pub temperature: f64,
    /// SO(3) grid `n_alpha,n_beta,n_gamma`.
    #[arg(long, value_delimiter = ',', default_value = "24,12,24")]
    pub grid: Vec<usize>,
    /// Write the SO(3) distribution as CSV.
    #[arg(long)]
    pub dump_dist: Option<PathBuf>,
}

pub fn pose(a: &PoseArgs) -> anyhow::Result<Report> {
    let [na, nb, ng] = a.grid[..] else {
        bail!("--grid takes three sizes, got {}", a.grid.len());
    };
    if na == 0 || nb == 0 || ng == 0 {
        bail!("grid sizes must be positive");
    }
    let pattern: Pattern = a.pattern.parse()?;
    let config = DemoConfig {
        pattern,
        angle: a.angle.to_radians(),
        lmax: a.lmax,
        channels: a.channels,
        temperature: a.temperature,
        seed: a.seed,
        grid: (na, nb, ng),
    };
    let d = pose_demo(&config)?;
    if let Some(path) = &a.dump_dist {
        let rows: Vec<Vec<String>> = d
            .probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let (x, y, z) = d.grid.angles(i);
                vec![num(x), num(y), num(z), num(*p)]
            })
            .collect();
        let header: Vec<String> = ["alpha", "beta", "gamma", "probability"].iter().map(|s| s.to_string()).collect();
        write_file(path, &csv_string(&header, &rows)?)?;
    }
    let r = &d.report;
    let rows = vec![vec![
        a.pattern.clone(),
        num(a.angle),
        num(r.argmax[0]),
        num(r.argmax[1]),
        num(r.argmax[2]),
        num(r.in_plane_angle.to_degrees()),
        num(r.error.to_degrees()),
        num(r.probability),
    ]];
    let j = json!({
        "pattern": a.pattern,
        "angle_deg": a.angle,
        "argmax": r.argmax,
        "in_plane_angle_deg": r.in_plane_angle.to_degrees(),
        "error_deg": r.error.to_degrees(),
        "probability": r.probability,
        "grid": [na, nb, ng],
        "report": r,
    });
    Ok(Report::new(
        j,
        &["pattern", "angle_deg", "alpha", "beta", "gamma", "in_plane_angle_deg", "error_deg", "probability"],
        rows,
    ))
}

//! Built-in irreducible representations for cyclic groups, S3, S4, S5, A4 and A5.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{CMatrix, Representation};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Permutation};

#[derive(Clone, Debug)]
pub struct IrrepTable {
    group: Arc<FiniteGroup>,
    irreps: Vec<Representation>,
    labels: Vec<String>,
    // irrep × conjugacy class
    characters: Vec<Vec<Complex64>>,
}

impl IrrepTable {
    /// Built-in table for groups whose multiplication table matches a named built-in.
    ///
    /// Opposite groups (named `X^op`) get the transposed irreps of `X`.
    pub fn for_group(group: Arc<FiniteGroup>) -> Result<Self> {
        let unavailable = || Error::IrrepsUnavailable(group.name().to_string());
        if let Some(base) = group.name().strip_suffix("^op") {
            let base = Arc::new(FiniteGroup::builtin(base).map_err(|_| unavailable())?);
            if !base.opposite().same_table(&group) {
                return Err(unavailable());
            }
            let table = Self::for_group(base)?;
            let irreps = table
                .irreps
                .iter()
                .map(|r| r.transpose_to(group.clone()))
                .collect::<Result<Vec<_>>>()?;
            return Self::from_irreps(group, table.labels, irreps);
        }
        let builtin = FiniteGroup::builtin(group.name()).map_err(|_| unavailable())?;
        if !builtin.same_table(&group) {
            return Err(unavailable());
        }
        let (labels, irreps) = build(&group).ok_or_else(unavailable)??;
        Self::from_irreps(group, labels, irreps)
    }

    /// Table from caller-supplied irreps. Characters are sampled on class representatives.
    pub fn from_irreps(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        irreps: Vec<Representation>,
    ) -> Result<Self> {
        if labels.len() != irreps.len() {
            return Err(Error::InvalidRepresentation("one label per irrep required".into()));
        }
        let irreps: Vec<Representation> = irreps
            .into_iter()
            .zip(&labels)
            .map(|(r, l)| r.with_label(l.clone()))
            .collect();
        let characters = irreps
            .iter()
            .map(|r| {
                group.conjugacy_classes().iter().map(|c| r.matrix(c[0]).trace()).collect()
            })
            .collect();
        Ok(Self { group, irreps, labels, characters })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Representation::dim).collect()
    }

    /// `characters()[i][c]` is the character of irrep `i` on conjugacy class `c`.
    pub fn characters(&self) -> &[Vec<Complex64>] {
        &self.characters
    }

    /// Index of an irrep by label. `_` is ignored, `plus`/`minus` stand for `+`/`-`,
    /// and `trivial` always names the trivial irrep.
    pub fn position(&self, label: &str) -> Option<usize> {
        let want = normalize(label);
        if want == "trivial" {
            return Some(0);
        }
        self.labels.iter().position(|l| normalize(l) == want)
    }

    pub fn irrep(&self, label: &str) -> Result<&Representation> {
        self.position(label).map(|i| &self.irreps[i]).ok_or_else(|| Error::UnknownIrrep {
            group: self.group.name().to_string(),
            label: label.to_string(),
        })
    }

    /// `⊕_i ρ_i^{⊕ m_i}` in table order.
    pub fn direct_sum_of(&self, multiplicities: &[usize]) -> Result<Representation> {
        if multiplicities.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} multiplicities for {} irreps",
                multiplicities.len(),
                self.len()
            )));
        }
        let mut out: Option<Representation> = None;
        for (rho, &m) in self.irreps.iter().zip(multiplicities) {
            for _ in 0..m {
                out = Some(match out {
                    None => rho.clone(),
                    Some(acc) => acc.direct_sum(rho)?,
                });
            }
        }
        out.ok_or_else(|| Error::InvalidRepresentation("empty direct sum".into()))
    }

    /// Largest deviation of `(1/|G|)·Σ_C |C|·χ_i(C)·conj(χ_j(C))` from `δ_ij`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.group.order() as f64;
        let sizes: Vec<f64> =
            self.group.conjugacy_classes().iter().map(|c| c.len() as f64).collect();
        let mut worst: f64 = 0.0;
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let s: Complex64 = a
                    .iter()
                    .zip(b)
                    .zip(&sizes)
                    .map(|((x, y), &w)| x * y.conj() * w)
                    .sum::<Complex64>()
                    / n;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

fn normalize(label: &str) -> String {
    label
        .trim()
        .to_ascii_lowercase()
        .replace("plus", "+")
        .replace("minus", "-")
        .replace('_', "")
}

type Built = Result<(Vec<String>, Vec<Representation>)>;

fn build(group: &Arc<FiniteGroup>) -> Option<Built> {
    let name = group.name();
    if group.order() == 1 {
        return Some(Ok((vec!["trivial".into()], vec![Representation::trivial(group.clone())])));
    }
    if name.starts_with('Z') || name.starts_with('C') {
        return Some(cyclic_irreps(group, 1));
    }
    Some(match name {
        "A3" => {
            let c = group.element("(1,2,3)").expect("A3 contains (1,2,3)");
            cyclic_irreps(group, c)
        }
        "S2" => sn_irreps(group, 2),
        "S3" => sn_irreps(group, 3),
        "S4" => sn_irreps(group, 4),
        "S5" => sn_irreps(group, 5),
        "A4" => a4_irreps(group),
        "A5" => a5_irreps(group),
        _ => return None,
    })
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn one_dim(group: &Arc<FiniteGroup>, label: &str, f: impl Fn(usize) -> Complex64) -> Result<Representation> {
    Representation::from_fn(group.clone(), Some(label.into()), |g| CMatrix::from_element(1, 1, f(g)))
}

/// `ρ_k(c^j) = ω^{jk}` for a cyclic group generated by `c`.
fn cyclic_irreps(group: &Arc<FiniteGroup>, generator: usize) -> Built {
    let n = group.order();
    let mut power = vec![0; n];
    let mut x = group.identity();
    for j in 0..n {
        power[x] = j;
        x = group.mul(x, generator);
    }
    let labels: Vec<String> = if n == 3 {
        vec!["rho1".into(), "rho+".into(), "rho-".into()]
    } else {
        (0..n).map(|k| format!("rho_{k}")).collect()
    };
    let irreps = (0..n)
        .map(|k| {
            one_dim(group, &labels[k], |g| {
                Complex64::from_polar(1.0, 2.0 * PI * ((power[g] * k) % n) as f64 / n as f64)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((labels, irreps))
}

/// Orthonormal basis (rows) of the complement of the all-ones vector in `ℝⁿ`.
fn helmert(n: usize) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(n - 1, n);
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for j in 0..k {
            h[(k - 1, j)] = 1.0 / norm;
        }
        h[(k - 1, k)] = -(k as f64) / norm;
    }
    h
}

/// Permutation action on `points` points with the trivial summand removed.
fn reduced_permutation(
    group: &Arc<FiniteGroup>,
    points: usize,
    label: &str,
    act: impl Fn(usize, usize) -> usize,
) -> Result<Representation> {
    let h = helmert(points);
    Representation::from_fn(group.clone(), Some(label.into()), |g| {
        let mut p = DMatrix::<f64>::zeros(points, points);
        for x in 0..points {
            p[(act(g, x), x)] = 1.0;
        }
        (&h * p * h.transpose()).map(c)
    })
}

fn natural(group: &Arc<FiniteGroup>, label: &str) -> Result<Representation> {
    let n = group.degree().expect("permutation group");
    reduced_permutation(group, n, label, |g, x| group.permutation(g).expect("perm").apply(x))
}

fn sign(group: &Arc<FiniteGroup>) -> Result<Representation> {
    one_dim(group, "sign", |g| c(group.permutation(g).expect("perm").sign() as f64))
}

fn twist(rep: &Representation, sgn: &Representation, label: &str) -> Result<Representation> {
    Ok(rep.tensor_product(sgn)?.with_label(label))
}

/// Subgroups of order five, each given by its sorted element list.
fn sylow5(group: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let mut subs: Vec<Vec<usize>> = Vec::new();
    for g in 0..group.order() {
        if group.element_order(g) != 5 {
            continue;
        }
        let mut s = vec![group.identity()];
        let mut x = g;
        while x != group.identity() {
            s.push(x);
            x = group.mul(x, g);
        }
        s.sort_unstable();
        if !subs.contains(&s) {
            subs.push(s);
        }
    }
    subs
}

/// Conjugation action on Sylow 5-subgroups, minus the trivial summand.
fn sylow_rep(group: &Arc<FiniteGroup>, label: &str) -> Result<Representation> {
    let subs = sylow5(group);
    let act = |g: usize, i: usize| {
        let mut image: Vec<usize> = subs[i].iter().map(|&x| group.conjugate(g, x)).collect();
        image.sort_unstable();
        subs.iter().position(|s| *s == image).expect("conjugate of a Sylow subgroup")
    };
    reduced_permutation(group, subs.len(), label, act)
}

/// Exterior square of a real orthogonal representation.
fn wedge2(rep: &Representation) -> Vec<DMatrix<f64>> {
    let d = rep.dim();
    let pairs: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    rep.matrices()
        .iter()
        .map(|m| {
            let m = m.map(|z| z.re);
            DMatrix::from_fn(pairs.len(), pairs.len(), |a, b| {
                let (i, j) = pairs[a];
                let (k, l) = pairs[b];
                m[(i, k)] * m[(j, l)] - m[(i, l)] * m[(j, k)]
            })
        })
        .collect()
}

/// Restriction of a real orthogonal representation to the isotypic component of a real
/// character given per element. The component must be a single copy of the irrep.
fn isotypic(
    group: &Arc<FiniteGroup>,
    matrices: &[DMatrix<f64>],
    chi: impl Fn(usize) -> f64,
    dim: usize,
    label: &str,
) -> Result<Representation> {
    let n = matrices[0].nrows();
    let mut proj = DMatrix::<f64>::zeros(n, n);
    for (g, m) in matrices.iter().enumerate() {
        proj += m * chi(g);
    }
    proj *= dim as f64 / group.order() as f64;
    let sym = (&proj + proj.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let cols: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    if cols.len() != dim {
        return Err(Error::NonRepresentation(format!(
            "isotypic projector for {label} has rank {} instead of {dim}",
            cols.len()
        )));
    }
    let basis = eig.eigenvectors.select_columns(&cols);
    Representation::from_fn(group.clone(), Some(label.into()), |g| {
        (basis.transpose() * &matrices[g] * &basis).map(c)
    })
}

fn sn_irreps(group: &Arc<FiniteGroup>, n: usize) -> Built {
    let trivial = Representation::trivial(group.clone());
    let sgn = sign(group)?;
    match n {
        2 => Ok((vec!["trivial".into(), "sign".into()], vec![trivial, sgn])),
        3 => {
            let std = natural(group, "standard")?;
            Ok((vec!["trivial".into(), "sign".into(), "standard".into()], vec![trivial, sgn, std]))
        }
        4 => {
            let std = natural(group, "standard")?;
            let std_sign = twist(&std, &sgn, "standard_sign")?;
            // the action on the three ways of pairing up four points
            let pairings: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
            let key = |p: [usize; 4]| {
                let mut a = [p[0].min(p[1]), p[0].max(p[1])];
                let mut b = [p[2].min(p[3]), p[2].max(p[3])];
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                [a[0], a[1], b[0], b[1]]
            };
            let act = |g: usize, i: usize| {
                let perm: &Permutation = group.permutation(g).expect("perm");
                let q = pairings[i];
                let image = key([perm.apply(q[0]), perm.apply(q[1]), perm.apply(q[2]), perm.apply(q[3])]);
                pairings.iter().position(|&p| p == image).expect("pairing")
            };
            let two = reduced_permutation(group, 3, "two", act)?;
            Ok((
                vec!["trivial".into(), "sign".into(), "two".into(), "standard".into(), "standard_sign".into()],
                vec![trivial, sgn, two, std, std_sign],
            ))
        }
        5 => {
            let std = natural(group, "standard")?;
            let std_sign = twist(&std, &sgn, "standard_sign")?;
            let five = sylow_rep(group, "five")?;
            let five_sign = twist(&five, &sgn, "five_sign")?;
            let w = wedge2(&std);
            let wedge = Representation::new(group.clone(), w.iter().map(|m| m.map(c)).collect(), Some("wedge".into()))?;
            Ok((
                ["trivial", "sign", "standard", "standard_sign", "five", "five_sign", "wedge"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                vec![trivial, sgn, std, std_sign, five, five_sign, wedge],
            ))
        }
        _ => Err(Error::IrrepsUnavailable(group.name().to_string())),
    }
}

fn a4_irreps(group: &Arc<FiniteGroup>) -> Built {
    let cyc = group.element("(1,2,3)").expect("A4 contains (1,2,3)");
    let v4: Vec<usize> = ["e", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"]
        .iter()
        .map(|s| group.element(s).expect("Klein four-group element"))
        .collect();
    // the image of g in A4/V4 ≅ Z3, as a power of the class of (1,2,3)
    let mut power = vec![0usize; group.order()];
    let mut x = group.identity();
    for k in 0..3 {
        for &v in &v4 {
            power[group.mul(x, v)] = k;
        }
        x = group.mul(x, cyc);
    }
    let w = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * (k % 3) as f64 / 3.0);
    let labels: Vec<String> = ["sigma1", "sigma1+", "sigma1-", "sigma3"].iter().map(|s| s.to_string()).collect();
    let irreps = vec![
        Representation::trivial(group.clone()),
        one_dim(group, "sigma1+", |g| w(power[g]))?,
        one_dim(group, "sigma1-", |g| w(2 * power[g]))?,
        natural(group, "sigma3")?,
    ];
    Ok((labels, irreps))
}

fn a5_irreps(group: &Arc<FiniteGroup>) -> Built {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let four = natural(group, "sigma4")?;
    let five = sylow_rep(group, "sigma5")?;
    let wedge = wedge2(&four);
    let g5 = group.element("(1,2,3,4,5)").expect("5-cycle");
    let class_a = group.class_of(g5);
    let class_b = group.class_of(group.mul(g5, g5));
    let chi = |golden: f64, conj: f64| {
        move |g: usize| {
            let k = group.class_of(g);
            match group.element_order(g) {
                1 => 3.0,
                2 => -1.0,
                3 => 0.0,
                _ if k == class_a => golden,
                _ if k == class_b => conj,
                _ => unreachable!("A5 has two classes of 5-cycles"),
            }
        }
    };
    let three_a = isotypic(group, &wedge, chi(phi, 1.0 - phi), 3, "sigma3a")?;
    let three_b = isotypic(group, &wedge, chi(1.0 - phi, phi), 3, "sigma3b")?;
    let labels = ["sigma1", "sigma3a", "sigma3b", "sigma4", "sigma5"].iter().map(|s| s.to_string()).collect();
    Ok((labels, vec![Representation::trivial(group.clone()), three_a, three_b, four, five]))
}

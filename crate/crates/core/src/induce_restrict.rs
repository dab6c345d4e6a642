//! Restriction, block induction, branching/induction tables and the reciprocity checks.

use rayon::prelude::*;
use serde::Serialize;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{CosetDecomposition, SubgroupEmbedding};
use crate::reps::{decompose, decompose_character, CMatrix, Decomposition, IrrepTable, Representation};

fn mismatch(expected: &str, found: &str) -> Error {
    Error::GroupMismatch { expected: expected.to_string(), found: found.to_string() }
}

/// `Res(ρ)(h) = ρ(embed(h))`.
pub fn restrict(rep: &Representation, embedding: &SubgroupEmbedding) -> Result<Representation> {
    if !rep.group().same_table(embedding.parent()) {
        return Err(mismatch(embedding.parent().name(), rep.group().name()));
    }
    let matrices = embedding.map().iter().map(|&g| rep.matrix(g).clone()).collect();
    Representation::new_unchecked(embedding.sub().clone(), matrices, rep.label().map(str::to_string))
}

/// The induced representation kept in sparse block form: the matrix of `g` has the single
/// non-zero block `ρ(h_i(g))` at block position `(j_g(i), i)` in each block column `i`.
#[derive(Clone, Debug)]
pub struct InducedBlocks {
    cosets: CosetDecomposition,
    base: Representation,
}

impl InducedBlocks {
    pub fn new(rep: &Representation, cosets: &CosetDecomposition) -> Result<Self> {
        let sub = cosets.embedding().sub();
        if !rep.group().same_table(sub) {
            return Err(mismatch(sub.name(), rep.group().name()));
        }
        Ok(Self { cosets: cosets.clone(), base: rep.clone() })
    }

    pub fn dim(&self) -> usize {
        self.cosets.index() * self.base.dim()
    }

    pub fn cosets(&self) -> &CosetDecomposition {
        &self.cosets
    }

    pub fn base(&self) -> &Representation {
        &self.base
    }

    /// `(j_g(i), ρ(h_i(g)))` for block column `i`.
    pub fn block(&self, g: usize, i: usize) -> (usize, &CMatrix) {
        (self.cosets.perm(g, i), self.base.matrix(self.cosets.factor(g, i)))
    }

    /// `χ(g) = Σ_{i : j_g(i) = i} tr ρ(h_i(g))`.
    pub fn character(&self) -> Vec<Complex64> {
        let k = self.cosets.index();
        (0..self.cosets.embedding().parent().order())
            .map(|g| {
                (0..k)
                    .filter(|&i| self.cosets.perm(g, i) == i)
                    .map(|i| self.base.matrix(self.cosets.factor(g, i)).trace())
                    .sum()
            })
            .collect()
    }

    /// Applies the matrix of `g` to a stacked vector without forming it.
    pub fn apply(&self, g: usize, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.base.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for i in 0..self.cosets.index() {
            let (j, m) = self.block(g, i);
            for r in 0..d {
                out[j * d + r] = (0..d).map(|c| m[(r, c)] * v[i * d + c]).sum();
            }
        }
        out
    }

    pub fn dense_matrix(&self, g: usize) -> CMatrix {
        let d = self.base.dim();
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.cosets.index() {
            let (j, b) = self.block(g, i);
            m.view_mut((j * d, i * d), (d, d)).copy_from(b);
        }
        m
    }

    pub fn to_representation(&self) -> Representation {
        let parent = self.cosets.embedding().parent().clone();
        let matrices = (0..parent.order()).map(|g| self.dense_matrix(g)).collect();
        Representation::new_unchecked(parent, matrices, self.base.label().map(|l| format!("Ind({l})")))
            .expect("block matrices have consistent shape")
    }
}

pub fn induce(rep: &Representation, cosets: &CosetDecomposition) -> Result<Representation> {
    Ok(InducedBlocks::new(rep, cosets)?.to_representation())
}

fn check_table(table: &IrrepTable, group: &crate::groups::FiniteGroup) -> Result<()> {
    if !table.group().same_table(group) {
        return Err(mismatch(group.name(), table.group().name()));
    }
    Ok(())
}

/// Irrep tables for `(sub, parent)`.
pub fn irrep_tables(embedding: &SubgroupEmbedding) -> Result<(IrrepTable, IrrepTable)> {
    Ok((
        IrrepTable::for_group(embedding.sub().clone())?,
        IrrepTable::for_group(embedding.parent().clone())?,
    ))
}

/// `B[σ][ρ]`, multiplicity of the H-irrep `ρ` in `Res σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingTable {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

/// `I[ρ][σ]`, multiplicity of the G-irrep `σ` in `Ind ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionTable {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

impl BranchingTable {
    pub fn get(&self, sigma: &str, rho: &str) -> Option<usize> {
        let r = self.rows.iter().position(|l| l == sigma)?;
        let c = self.cols.iter().position(|l| l == rho)?;
        Some(self.entries[r][c])
    }
}

impl InductionTable {
    pub fn get(&self, rho: &str, sigma: &str) -> Option<usize> {
        let r = self.rows.iter().position(|l| l == rho)?;
        let c = self.cols.iter().position(|l| l == sigma)?;
        Some(self.entries[r][c])
    }
}

/// Computed row by row as `decompose(restrict(σ))`.
pub fn branching_table(
    embedding: &SubgroupEmbedding,
    g_table: &IrrepTable,
    h_table: &IrrepTable,
) -> Result<BranchingTable> {
    check_table(g_table, embedding.parent())?;
    check_table(h_table, embedding.sub())?;
    let entries = g_table
        .irreps()
        .par_iter()
        .map(|sigma| Ok(decompose(&restrict(sigma, embedding)?, h_table)?.multiplicities().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BranchingTable { rows: g_table.labels().to_vec(), cols: h_table.labels().to_vec(), entries })
}

/// Computed row by row from the character of the block-induced representation.
pub fn induction_table(
    cosets: &CosetDecomposition,
    h_table: &IrrepTable,
    g_table: &IrrepTable,
) -> Result<InductionTable> {
    check_table(g_table, cosets.embedding().parent())?;
    check_table(h_table, cosets.embedding().sub())?;
    let entries = h_table
        .irreps()
        .par_iter()
        .map(|rho| {
            let ind = InducedBlocks::new(rho, cosets)?;
            Ok(decompose_character(&ind.character(), ind.dim(), g_table)?.multiplicities().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InductionTable { rows: h_table.labels().to_vec(), cols: g_table.labels().to_vec(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrobeniusMismatch {
    /// The two tables are not indexed by the same irreps.
    Labels,
    Entry { sigma: String, rho: String, branching: usize, induction: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub pass: bool,
    pub mismatch: Option<FrobeniusMismatch>,
}

/// Entrywise `B = Iᵀ`.
pub fn check_frobenius(b: &BranchingTable, i: &InductionTable) -> FrobeniusReport {
    if b.rows != i.cols || b.cols != i.rows {
        return FrobeniusReport { pass: false, mismatch: Some(FrobeniusMismatch::Labels) };
    }
    for (s, sigma) in b.rows.iter().enumerate() {
        for (r, rho) in b.cols.iter().enumerate() {
            if b.entries[s][r] != i.entries[r][s] {
                return FrobeniusReport {
                    pass: false,
                    mismatch: Some(FrobeniusMismatch::Entry {
                        sigma: sigma.clone(),
                        rho: rho.clone(),
                        branching: b.entries[s][r],
                        induction: i.entries[r][s],
                    }),
                };
            }
        }
    }
    FrobeniusReport { pass: true, mismatch: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub pass: bool,
    pub induced_regular: Decomposition,
    pub regular: Decomposition,
}

/// Compares `Ind(regular(H))` with `regular(G)` irrep by irrep.
pub fn completeness_check(
    embedding: &SubgroupEmbedding,
    h_table: &IrrepTable,
    g_table: &IrrepTable,
) -> Result<CompletenessReport> {
    check_table(h_table, embedding.sub())?;
    check_table(g_table, embedding.parent())?;
    let cosets = CosetDecomposition::new(embedding.clone());
    let reg_h = Representation::regular(embedding.sub().clone());
    let ind = InducedBlocks::new(&reg_h, &cosets)?;
    let induced_regular = decompose_character(&ind.character(), ind.dim(), g_table)?;
    let regular = decompose(&Representation::regular(embedding.parent().clone()), g_table)?;
    Ok(CompletenessReport { pass: induced_regular == regular, induced_regular, regular })
}

/// `Σ_ρ m_ρ·Σ_σ n_σ·B[σ][ρ]`: the dimension of `Hom_H(h_layer, Res g_layer)`.
pub fn boundary_compatibility(
    h_layer: &Decomposition,
    g_layer: &Decomposition,
    b: &BranchingTable,
) -> Result<usize> {
    if h_layer.labels() != b.cols.as_slice() || g_layer.labels() != b.rows.as_slice() {
        return Err(Error::TableMismatch(
            "layer decompositions are not indexed like the branching table".into(),
        ));
    }
    let mut total = 0;
    for (r, &m) in h_layer.multiplicities().iter().enumerate() {
        let restricted: usize =
            g_layer.multiplicities().iter().enumerate().map(|(s, &n)| n * b.entries[s][r]).sum();
        total += m * restricted;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(parent: &str, sub: &str) -> (SubgroupEmbedding, CosetDecomposition, IrrepTable, IrrepTable) {
        let e = SubgroupEmbedding::standard(parent, sub).unwrap();
        let c = CosetDecomposition::new(e.clone());
        let (h, g) = irrep_tables(&e).unwrap();
        (e, c, h, g)
    }

    #[test]
    fn restriction_of_a4_irreps() {
        let (e, _, h, g) = setup("A4", "Z3");
        let res3 = decompose(&restrict(g.irrep("sigma3").unwrap(), &e).unwrap(), &h).unwrap();
        assert_eq!(res3.multiplicities(), &[1, 1, 1]);
        let res_plus = decompose(&restrict(g.irrep("sigma1+").unwrap(), &e).unwrap(), &h).unwrap();
        assert_eq!(res_plus.nonzero(), vec![("rho+", 1)]);
    }

    #[test]
    fn induction_from_z3() {
        let (_, c, h, g) = setup("A4", "Z3");
        for (rho, expect) in [("rho1", "sigma1"), ("rho+", "sigma1+"), ("rho-", "sigma1-")] {
            let ind = induce(h.irrep(rho).unwrap(), &c).unwrap();
            assert_eq!(ind.dim(), 4);
            assert!(ind.homomorphism_defect() < 1e-12);
            let d = decompose(&ind, &g).unwrap();
            assert_eq!(d.nonzero(), vec![(expect, 1), ("sigma3", 1)]);
        }
    }

    #[test]
    fn sparse_character_matches_dense_trace() {
        let (_, c, h, _) = setup("A5", "Z5");
        let blocks = InducedBlocks::new(h.irrep("rho_2").unwrap(), &c).unwrap();
        let dense = blocks.to_representation();
        for (a, b) in blocks.character().iter().zip(dense.character()) {
            assert!((a - b).norm() < 1e-12);
        }
        let v: Vec<Complex64> = (0..12).map(|k| Complex64::new(k as f64, 1.0)).collect();
        let w = blocks.apply(7, &v);
        let m = dense.matrix(7);
        for r in 0..12 {
            let expect: Complex64 = (0..12).map(|k| m[(r, k)] * v[k]).sum();
            assert!((w[r] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn tables_and_reciprocity() {
        let (e, c, h, g) = setup("A4", "Z3");
        let b = branching_table(&e, &g, &h).unwrap();
        let i = induction_table(&c, &h, &g).unwrap();
        assert_eq!(b.entries[3], vec![1, 1, 1]);
        assert_eq!(b.entries[0], vec![1, 0, 0]);
        assert_eq!(i.get("rho1", "sigma1"), Some(1));
        assert_eq!(i.get("rho1", "sigma3"), Some(1));
        assert!(check_frobenius(&b, &i).pass);

        let mut broken = i.clone();
        broken.entries[1][2] += 1;
        let report = check_frobenius(&b, &broken);
        assert!(!report.pass);
        assert_eq!(
            report.mismatch,
            Some(FrobeniusMismatch::Entry {
                sigma: "sigma1-".into(),
                rho: "rho+".into(),
                branching: 0,
                induction: 1
            })
        );
    }

    #[test]
    fn trivial_subgroup_induces_regular() {
        let (_, c, h, g) = setup("A4", "1");
        let i = induction_table(&c, &h, &g).unwrap();
        assert_eq!(i.entries[0], g.dims());
    }

    #[test]
    fn completeness() {
        for (p, s) in [("A4", "Z3"), ("Z3", "1"), ("A4", "A4"), ("A5", "Z5")] {
            let (e, _, h, g) = setup(p, s);
            let r = completeness_check(&e, &h, &g).unwrap();
            assert!(r.pass, "{p} ⊇ {s}");
        }
    }

    #[test]
    fn boundary_examples() {
        let (e, _, h, g) = setup("A4", "Z3");
        let b = branching_table(&e, &g, &h).unwrap();
        let hl = Decomposition::from_pairs(&h, &[("rho1", 1)]).unwrap();
        let gl = Decomposition::from_pairs(&g, &[("sigma3", 1)]).unwrap();
        assert_eq!(boundary_compatibility(&hl, &gl, &b).unwrap(), 1);
        let hl = Decomposition::from_pairs(&h, &[("rho+", 1)]).unwrap();
        let gl = Decomposition::from_pairs(&g, &[("sigma1", 1)]).unwrap();
        assert_eq!(boundary_compatibility(&hl, &gl, &b).unwrap(), 0);
        let zero_h = Decomposition::new(&h, vec![0; 3]).unwrap();
        let zero_g = Decomposition::new(&g, vec![0; 4]).unwrap();
        assert_eq!(boundary_compatibility(&zero_h, &zero_g, &b).unwrap(), 0);
        assert!(boundary_compatibility(&zero_g, &zero_h, &b).is_err());
    }
}

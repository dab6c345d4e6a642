use num_complex::Complex64;
use serde::Serialize;

use super::{IrrepTable, Representation};
use crate::error::{Error, Result};

/// Inner products farther than this from an integer are reported as failures.
pub const ROUNDING_TOL: f64 = 1e-6;

/// Multiplicity of each irrep, in irrep-table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    labels: Vec<String>,
    dims: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl Decomposition {
    pub fn new(table: &IrrepTable, multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.len() != table.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} multiplicities for {} irreps",
                multiplicities.len(),
                table.len()
            )));
        }
        Ok(Self { labels: table.labels().to_vec(), dims: table.dims(), multiplicities })
    }

    /// Builds from `(label, count)` pairs; unlisted irreps get multiplicity zero.
    pub fn from_pairs(table: &IrrepTable, pairs: &[(&str, usize)]) -> Result<Self> {
        let mut m = vec![0; table.len()];
        for (label, count) in pairs {
            let i = table.position(label).ok_or_else(|| Error::UnknownIrrep {
                group: table.group().name().to_string(),
                label: label.to_string(),
            })?;
            m[i] += count;
        }
        Self::new(table, m)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn get(&self, label: &str) -> usize {
        self.labels.iter().position(|l| l == label).map_or(0, |i| self.multiplicities[i])
    }

    /// `Σ m_i·dim_i`.
    pub fn dim(&self) -> usize {
        self.multiplicities.iter().zip(&self.dims).map(|(m, d)| m * d).sum()
    }

    /// Non-zero entries as `(label, count)`.
    pub fn nonzero(&self) -> Vec<(&str, usize)> {
        self.labels
            .iter()
            .zip(&self.multiplicities)
            .filter(|(_, &m)| m > 0)
            .map(|(l, &m)| (l.as_str(), m))
            .collect()
    }

    /// `Σ_i a_i·b_i`, the dimension of the intertwiner space.
    pub fn dot(&self, other: &Self) -> usize {
        self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let multiplicities =
            self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect();
        Self { labels: self.labels.clone(), dims: self.dims.clone(), multiplicities }
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.nonzero().iter().map(|(l, m)| format!("{l}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Multiplicities `(1/|G|)·Σ_g χ(g)·conj(χ_i(g))` from a per-element character.
pub fn decompose_character(character: &[Complex64], dim: usize, table: &IrrepTable) -> Result<Decomposition> {
    let group = table.group();
    if character.len() != group.order() {
        return Err(Error::ShapeMismatch(format!(
            "character has {} entries for a group of order {}",
            character.len(),
            group.order()
        )));
    }
    let n = group.order() as f64;
    let mut mult = Vec::with_capacity(table.len());
    for (label, chi) in table.labels().iter().zip(table.characters()) {
        let s: Complex64 = (0..group.order())
            .map(|g| character[g] * chi[group.class_of(g)].conj())
            .sum::<Complex64>()
            / n;
        let r = s.re.round();
        if (s - Complex64::new(r, 0.0)).norm() > ROUNDING_TOL || r < 0.0 {
            return Err(Error::NonRepresentation(format!(
                "multiplicity of {label} is {:.9}{:+.9}i",
                s.re, s.im
            )));
        }
        mult.push(r as usize);
    }
    let d = Decomposition::new(table, mult)?;
    if d.dim() != dim {
        return Err(Error::NonRepresentation(format!(
            "multiplicities reconstruct dimension {} instead of {dim}",
            d.dim()
        )));
    }
    Ok(d)
}

pub fn decompose(rep: &Representation, table: &IrrepTable) -> Result<Decomposition> {
    if !rep.group().same_table(table.group()) {
        return Err(Error::GroupMismatch {
            expected: table.group().name().to_string(),
            found: rep.group().name().to_string(),
        });
    }
    decompose_character(&rep.character(), rep.dim(), table)
}

/// `dim Hom_G(a, b) = Σ_i m_i(a)·m_i(b)`.
pub fn hom_dimension(a: &Representation, b: &Representation, table: &IrrepTable) -> Result<usize> {
    Ok(decompose(a, table)?.dot(&decompose(b, table)?))
}

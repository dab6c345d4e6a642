use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Standard block of frequency `k`: `[1]` for `k = 0`, rotation by `kθ` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct So2Irrep {
    pub k: usize,
}

impl So2Irrep {
    pub fn dim(&self) -> usize {
        if self.k == 0 {
            1
        } else {
            2
        }
    }

    pub fn matrix(&self, theta: f64) -> DMatrix<f64> {
        if self.k == 0 {
            return DMatrix::identity(1, 1);
        }
        let (s, c) = (self.k as f64 * theta).sin_cos();
        DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
    }
}

/// Orthogonal SO(2) representation `ρ(θ) = P · ⊕_b R_{k_b}(θ) · Pᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct So2Rep {
    blocks: Vec<So2Irrep>,
    basis: DMatrix<f64>,
}

impl So2Rep {
    pub fn new(blocks: Vec<So2Irrep>, basis: DMatrix<f64>) -> Result<Self> {
        let dim: usize = blocks.iter().map(So2Irrep::dim).sum();
        if dim == 0 {
            return Err(Error::InvalidSo2Rep("empty representation".into()));
        }
        if basis.nrows() != dim || basis.ncols() != dim {
            return Err(Error::InvalidSo2Rep(format!(
                "basis is {}x{} for dimension {dim}",
                basis.nrows(),
                basis.ncols()
            )));
        }
        if (basis.transpose() * &basis - DMatrix::identity(dim, dim)).norm() > 1e-10 {
            return Err(Error::InvalidSo2Rep("basis is not orthogonal".into()));
        }
        Ok(Self { blocks, basis })
    }

    /// Blocks in ascending frequency, standard basis.
    pub fn from_multiplicities(mult: &BTreeMap<usize, usize>) -> Result<Self> {
        let blocks: Vec<So2Irrep> =
            mult.iter().flat_map(|(&k, &n)| std::iter::repeat_n(So2Irrep { k }, n)).collect();
        let dim = blocks.iter().map(So2Irrep::dim).sum();
        Self::new(blocks, DMatrix::identity(dim, dim))
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Self::from_multiplicities(&BTreeMap::from([(0, n)]))
    }

    /// Parses `"0:2,1:1"` (frequency:count pairs).
    pub fn parse(s: &str) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, n) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidSo2Rep(format!("`{part}` is not frequency:count")))?;
            let k: usize = k.trim().parse().map_err(|_| Error::InvalidSo2Rep(format!("bad frequency `{k}`")))?;
            let n: usize = n.trim().parse().map_err(|_| Error::InvalidSo2Rep(format!("bad count `{n}`")))?;
            *mult.entry(k).or_insert(0) += n;
        }
        Self::from_multiplicities(&mult)
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn blocks(&self) -> &[So2Irrep] {
        &self.blocks
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn max_frequency(&self) -> usize {
        self.blocks.iter().map(|b| b.k).max().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.k).or_insert(0) += 1;
        }
        m
    }

    /// `⊕_b R_{k_b}(θ)`, before the change of basis.
    pub fn block_matrix(&self, theta: f64) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut o = 0;
        for b in &self.blocks {
            let d = b.dim();
            m.view_mut((o, o), (d, d)).copy_from(&b.matrix(theta));
            o += d;
        }
        m
    }

    pub fn matrix(&self, theta: f64) -> DMatrix<f64> {
        &self.basis * self.block_matrix(theta) * self.basis.transpose()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut basis = DMatrix::zeros(a + b, a + b);
        basis.view_mut((0, 0), (a, a)).copy_from(&self.basis);
        basis.view_mut((a, a), (b, b)).copy_from(&other.basis);
        let blocks = self.blocks.iter().chain(&other.blocks).copied().collect();
        Self { blocks, basis }
    }

    pub fn direct_sum_all(reps: &[Self]) -> Result<Self> {
        let (first, rest) = reps.split_first().ok_or_else(|| Error::InvalidSo2Rep("empty sum".into()))?;
        Ok(rest.iter().fold(first.clone(), |acc, r| acc.direct_sum(r)))
    }

    /// `self ⊗ other` with Kronecker ordering (`self` outer), re-split into standard blocks.
    pub fn tensor(&self, other: &Self) -> Self {
        let db = other.dim();
        let n = self.dim() * db;
        let mut t = DMatrix::zeros(n, n);
        let mut blocks = Vec::new();
        let mut col = 0;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut oa = 0;
        for a in &self.blocks {
            let mut ob = 0;
            for b in &other.blocks {
                let idx = |i: usize, j: usize| (oa + i) * db + ob + j;
                let mut push = |k: usize, cols: &[&[(usize, usize, f64)]]| {
                    for c in cols {
                        for &(i, j, v) in *c {
                            t[(idx(i, j), col)] = v;
                        }
                        col += 1;
                    }
                    blocks.push(So2Irrep { k });
                };
                match (a.k, b.k) {
                    (0, 0) => push(0, &[&[(0, 0, 1.0)]]),
                    (0, q) => push(q, &[&[(0, 0, 1.0)], &[(0, 1, 1.0)]]),
                    (p, 0) => push(p, &[&[(0, 0, 1.0)], &[(1, 0, 1.0)]]),
                    (p, q) => {
                        push(p + q, &[&[(0, 0, r), (1, 1, -r)], &[(0, 1, r), (1, 0, r)]]);
                        let w1: &[(usize, usize, f64)] = &[(0, 0, r), (1, 1, r)];
                        let w2: &[(usize, usize, f64)] = &[(1, 0, r), (0, 1, -r)];
                        let w2n: &[(usize, usize, f64)] = &[(1, 0, -r), (0, 1, r)];
                        if p == q {
                            push(0, &[w1]);
                            push(0, &[w2]);
                        } else if p > q {
                            push(p - q, &[w1, w2]);
                        } else {
                            push(q - p, &[w1, w2n]);
                        }
                    }
                }
                ob += b.dim();
            }
            oa += a.dim();
        }
        let basis = self.basis.kronecker(&other.basis) * t;
        Self { blocks, basis }
    }

    /// Repeats the representation `n` times.
    pub fn repeat(&self, n: usize) -> Result<Self> {
        Self::direct_sum_all(&vec![self.clone(); n])
    }
}

impl fmt::Display for So2Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities().iter().map(|(k, n)| format!("{k}:{n}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

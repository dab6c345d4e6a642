use super::SubgroupEmbedding;
use crate::error::{Error, Result};

/// Left cosets `g_i·H` with the factorization `g·g_i = g_{j_g(i)}·h_i(g)`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    embedding: SubgroupEmbedding,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    // both indexed by g * index + i
    perm: Vec<usize>,
    factor: Vec<usize>,
}

impl CosetDecomposition {
    /// Representatives are the smallest element index in each coset, cosets ordered by them.
    pub fn new(embedding: SubgroupEmbedding) -> Self {
        let parent = embedding.parent().clone();
        let mut coset_of = vec![usize::MAX; parent.order()];
        let mut reps = Vec::new();
        for g in 0..parent.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in embedding.map() {
                coset_of[parent.mul(g, h)] = reps.len();
            }
            reps.push(g);
        }
        Self::finish(embedding, reps, coset_of)
    }

    /// Uses the given representatives, in the given order.
    pub fn with_representatives(embedding: SubgroupEmbedding, reps: Vec<usize>) -> Result<Self> {
        let parent = embedding.parent().clone();
        if reps.len() != embedding.index() {
            return Err(Error::InvalidCosetRepresentatives(format!(
                "{} representatives for index {}",
                reps.len(),
                embedding.index()
            )));
        }
        let mut coset_of = vec![usize::MAX; parent.order()];
        for (i, &g) in reps.iter().enumerate() {
            if g >= parent.order() {
                return Err(Error::InvalidCosetRepresentatives(format!(
                    "element {g} out of range"
                )));
            }
            for &h in embedding.map() {
                let x = parent.mul(g, h);
                if coset_of[x] != usize::MAX {
                    return Err(Error::InvalidCosetRepresentatives(format!(
                        "{} and {} lie in the same coset",
                        parent.label(reps[coset_of[x]]),
                        parent.label(g)
                    )));
                }
                coset_of[x] = i;
            }
        }
        Ok(Self::finish(embedding, reps, coset_of))
    }

    fn finish(embedding: SubgroupEmbedding, reps: Vec<usize>, coset_of: Vec<usize>) -> Self {
        let parent = embedding.parent().clone();
        let k = reps.len();
        let mut perm = vec![0; parent.order() * k];
        let mut factor = vec![0; parent.order() * k];
        for g in 0..parent.order() {
            for (i, &gi) in reps.iter().enumerate() {
                let x = parent.mul(g, gi);
                let j = coset_of[x];
                let h = parent.mul(parent.inv(reps[j]), x);
                perm[g * k + i] = j;
                factor[g * k + i] = embedding.preimage(h).expect("g_j⁻¹·x lies in H");
            }
        }
        Self { embedding, reps, coset_of, perm, factor }
    }

    pub fn embedding(&self) -> &SubgroupEmbedding {
        &self.embedding
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// `j_g(i)`.
    #[inline]
    pub fn perm(&self, g: usize, i: usize) -> usize {
        self.perm[g * self.reps.len() + i]
    }

    /// `h_i(g)` as a subgroup element index.
    #[inline]
    pub fn factor(&self, g: usize, i: usize) -> usize {
        self.factor[g * self.reps.len() + i]
    }

    /// Coset containing the parent element `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// `(i, h)` with `x = g_i·h`.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let parent = self.embedding.parent();
        let i = self.coset_of[x];
        let h = parent.mul(parent.inv(self.reps[i]), x);
        (i, self.embedding.preimage(h).expect("g_i⁻¹·x lies in H"))
    }

    /// Exhaustive check of partition, factorization and compositionality.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let parent = self.embedding.parent();
        let sub = self.embedding.sub();
        let k = self.reps.len();
        let mut hits = vec![0usize; parent.order()];
        for &gi in &self.reps {
            for &h in self.embedding.map() {
                hits[parent.mul(gi, h)] += 1;
            }
        }
        if hits.iter().any(|&c| c != 1) {
            return Err("cosets do not partition the group".into());
        }
        let e = parent.identity();
        for i in 0..k {
            if self.perm(e, i) != i || self.factor(e, i) != sub.identity() {
                return Err(format!("identity acts non-trivially on coset {i}"));
            }
        }
        for g in 0..parent.order() {
            for i in 0..k {
                let lhs = parent.mul(g, self.reps[i]);
                let rhs = parent.mul(
                    self.reps[self.perm(g, i)],
                    self.embedding.embed(self.factor(g, i)),
                );
                if lhs != rhs {
                    return Err(format!("factorization fails at g={}, i={i}", parent.label(g)));
                }
            }
        }
        for g in 0..parent.order() {
            for g2 in 0..parent.order() {
                let prod = parent.mul(g2, g);
                for i in 0..k {
                    let j = self.perm(g, i);
                    if self.perm(g2, j) != self.perm(prod, i) {
                        return Err(format!(
                            "j_g' ∘ j_g != j_g'g at g={}, g'={}",
                            parent.label(g),
                            parent.label(g2)
                        ));
                    }
                    if self.factor(prod, i) != sub.mul(self.factor(g2, j), self.factor(g, i)) {
                        return Err(format!(
                            "h_i(g'g) != h_j(g')·h_i(g) at g={}, g'={}",
                            parent.label(g),
                            parent.label(g2)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn z3_in_a4_has_four_cosets() {
        let c = CosetDecomposition::new(SubgroupEmbedding::standard("A4", "Z3").unwrap());
        assert_eq!(c.index(), 4);
        assert_eq!(c.representatives()[0], c.embedding().parent().identity());
        c.check_invariants().unwrap();
    }

    #[test]
    fn improper_subgroup_has_one_coset() {
        let g = Arc::new(FiniteGroup::builtin("A4").unwrap());
        let c = CosetDecomposition::new(SubgroupEmbedding::improper(g.clone()));
        assert_eq!(c.index(), 1);
        for x in 0..g.order() {
            assert_eq!(c.perm(x, 0), 0);
            assert_eq!(c.factor(x, 0), x);
        }
    }

    #[test]
    fn trivial_subgroup_gives_regular_action() {
        let g = Arc::new(FiniteGroup::builtin("Z3").unwrap());
        let c = CosetDecomposition::new(SubgroupEmbedding::trivial(g.clone()));
        assert_eq!(c.index(), 3);
        // brute force: g·g_i is itself the representative of coset j_g(i)
        for x in 0..3 {
            for i in 0..3 {
                let y = g.mul(x, c.representatives()[i]);
                assert_eq!(c.representatives()[c.perm(x, i)], y);
            }
        }
        c.check_invariants().unwrap();
    }

    #[test]
    fn custom_representatives_validate() {
        let emb = SubgroupEmbedding::standard("A4", "Z3").unwrap();
        let p = emb.parent().clone();
        let same_coset = vec![
            p.identity(),
            p.element("(1,2,3)").unwrap(),
            p.element("(2,3,4)").unwrap(),
            p.element("(1,3,4)").unwrap(),
        ];
        assert!(CosetDecomposition::with_representatives(emb.clone(), same_coset).is_err());
        let reps = vec![
            p.identity(),
            p.element("(1,2,4)").unwrap(),
            p.element("(2,3,4)").unwrap(),
            p.element("(1,4,3)").unwrap(),
        ];
        let c = CosetDecomposition::with_representatives(emb, reps).unwrap();
        c.check_invariants().unwrap();
    }

    #[test]
    fn deterministic_tables() {
        let a = CosetDecomposition::new(SubgroupEmbedding::standard("A5", "Z5").unwrap());
        let b = CosetDecomposition::new(SubgroupEmbedding::standard("A5", "Z5").unwrap());
        assert_eq!(a.reps, b.reps);
        assert_eq!(a.perm, b.perm);
        assert_eq!(a.factor, b.factor);
        a.check_invariants().unwrap();
    }
}

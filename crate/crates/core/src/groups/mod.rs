//! Finite groups stored as dense multiplication tables.

mod coset;
mod perm;

pub use coset::CosetDecomposition;
pub use perm::Permutation;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order accepted by the built-in constructors.
pub const MAX_BUILTIN_ORDER: usize = 120;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    generators: Vec<usize>,
    perms: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Validates an explicit Cayley table, `table[a][b] = a·b`.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroupTable(format!(
                    "row {a} has length {} instead of {n}",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::InvalidGroupTable(format!(
                        "entry ({a},{b}) = {c} out of range"
                    )));
                }
                mul.push(c);
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or_else(|| {
                    Error::InvalidGroupTable(format!("element {g} has no inverse"))
                })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidGroupTable(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            None => (0..n).map(|g| g.to_string()).collect(),
        };
        Ok(Self::assemble(name.into(), n, mul, inv, identity, labels, None))
    }

    /// Closure of a set of permutations, elements sorted by image vector (identity first).
    pub fn from_generators(name: impl Into<String>, gens: &[Permutation]) -> Result<Self> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidGroupTable("no generators".into()))?;
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidGroupTable("generators of different degree".into()));
        }
        let mut elems = vec![Permutation::identity(degree)];
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(elems[0].clone(), ());
        let mut frontier = 0;
        while frontier < elems.len() {
            let x = elems[frontier].clone();
            frontier += 1;
            for s in gens {
                let y = s.compose(&x);
                if !seen.contains_key(&y) {
                    if elems.len() >= MAX_BUILTIN_ORDER * 100 {
                        return Err(Error::InvalidGroupTable("group too large".into()));
                    }
                    seen.insert(y.clone(), ());
                    elems.push(y);
                }
            }
        }
        Ok(Self::from_permutation_list(name.into(), elems))
    }

    fn from_permutation_list(name: String, mut elems: Vec<Permutation>) -> Self {
        elems.sort();
        let n = elems.len();
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inv = elems.iter().map(|p| index[&p.inverse()]).collect();
        let identity = elems.iter().position(Permutation::is_identity).unwrap_or(0);
        let labels = elems.iter().map(|p| p.to_string()).collect();
        Self::assemble(name, n, mul, inv, identity, labels, Some(elems))
    }

    fn assemble(
        name: String,
        order: usize,
        mul: Vec<usize>,
        inv: Vec<usize>,
        identity: usize,
        labels: Vec<String>,
        perms: Option<Vec<Permutation>>,
    ) -> Self {
        let mut g = Self {
            name,
            order,
            mul,
            inv,
            identity,
            labels,
            classes: Vec::new(),
            class_of: vec![usize::MAX; order],
            generators: Vec::new(),
            perms,
        };
        g.compute_classes();
        g.generators = g.greedy_generators();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut classes = Vec::new();
        for g in 0..n {
            if self.class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|x| self.mul(self.mul(x, g), self.inv[x]))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                self.class_of[c] = classes.len();
            }
            classes.push(class);
        }
        self.classes = classes;
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut members = vec![self.identity];
        for g in 0..self.order {
            if span[g] {
                continue;
            }
            gens.push(g);
            // regenerate the span from scratch with the enlarged generating set
            let mut frontier = 0;
            while frontier < members.len() {
                let x = members[frontier];
                frontier += 1;
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !span[y] {
                        span[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        gens
    }

    /// Cyclic group `Z_n` with elements `g^j` stored at index `j`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_BUILTIN_ORDER {
            return Err(Error::UnknownGroup(format!("Z{n}")));
        }
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inv = (0..n).map(|j| (n - j) % n).collect();
        let labels = (0..n)
            .map(|j| match j {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{j}"),
            })
            .collect();
        let name = if n == 1 { "1".to_string() } else { format!("Z{n}") };
        Ok(Self::assemble(name, n, mul, inv, 0, labels, None))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1 is supported")
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::UnknownGroup(format!("S{n}")));
        }
        Ok(Self::from_permutation_list(format!("S{n}"), all_permutations(n)))
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::UnknownGroup(format!("A{n}")));
        }
        let even = all_permutations(n).into_iter().filter(|p| p.sign() == 1).collect();
        Ok(Self::from_permutation_list(format!("A{n}"), even))
    }

    /// Resolves `Z<n>`, `C<n>`, `S<n>`, `A<n>`, `1` and `trivial`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(name.to_string());
        let t = name.trim();
        if t == "1" || t.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        let (head, tail) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        match head {
            "Z" | "C" => Self::cyclic(n).map_err(|_| unknown()),
            "S" => Self::symmetric(n).map_err(|_| unknown()),
            "A" => Self::alternating(n).map_err(|_| unknown()),
            _ => Err(unknown()),
        }
    }

    /// Same elements with the reversed product `a ⋆ b = b·a`.
    ///
    /// For permutation groups this turns right-to-left composition into
    /// left-to-right composition.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mul = (0..n * n).map(|k| self.mul[(k % n) * n + k / n]).collect();
        Self::assemble(
            format!("{}^op", self.name),
            n,
            mul,
            self.inv.clone(),
            self.identity,
            self.labels.clone(),
            self.perms.clone(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutation(&self, g: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[g])
    }

    pub fn is_permutation_group(&self) -> bool {
        self.perms.is_some()
    }

    /// Permutation degree for permutation groups.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().and_then(|p| p.first()).map(Permutation::degree)
    }

    /// Looks up an element by label or, for permutation groups, by cycle notation.
    pub fn element(&self, label: &str) -> Option<usize> {
        if let Some(g) = self.labels.iter().position(|l| l == label.trim()) {
            return Some(g);
        }
        let degree = self.degree()?;
        let p = Permutation::parse(degree, label).ok()?;
        self.index_of_permutation(&p)
    }

    pub fn index_of_permutation(&self, p: &Permutation) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// `a·b·a⁻¹`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv[a])
    }

    /// True when both groups carry the same multiplication table.
    pub fn same_table(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.mul == other.mul)
    }

    /// Exhaustive check of the table invariants, reporting the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.order;
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(format!("identity fails at {g}"));
            }
            if self.mul(g, self.inv[g]) != self.identity {
                return Err(format!("inverse fails at {g}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut count = vec![0usize; n];
        for class in &self.classes {
            for &g in class {
                count[g] += 1;
                for x in 0..n {
                    if self.class_of[self.conjugate(x, g)] != self.class_of[g] {
                        return Err(format!("class of {g} not closed under conjugation"));
                    }
                }
            }
        }
        if count.iter().any(|&c| c != 1) {
            return Err("conjugacy classes do not partition the group".into());
        }
        Ok(())
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_images(prefix.clone()).expect("valid by construction"));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Injective homomorphism `sub → parent`, stored as an index map.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    sub: Arc<FiniteGroup>,
    parent: Arc<FiniteGroup>,
    embed: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl SubgroupEmbedding {
    pub fn new(sub: Arc<FiniteGroup>, parent: Arc<FiniteGroup>, embed: Vec<usize>) -> Result<Self> {
        if embed.len() != sub.order() {
            return Err(Error::InvalidEmbedding(format!(
                "map has {} entries for a subgroup of order {}",
                embed.len(),
                sub.order()
            )));
        }
        let mut preimage = vec![None; parent.order()];
        for (h, &g) in embed.iter().enumerate() {
            if g >= parent.order() {
                return Err(Error::InvalidEmbedding(format!("image {g} out of range")));
            }
            if preimage[g].is_some() {
                return Err(Error::InvalidEmbedding(format!("not injective at {g}")));
            }
            preimage[g] = Some(h);
        }
        if embed[sub.identity()] != parent.identity() {
            return Err(Error::InvalidEmbedding("identity not preserved".into()));
        }
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                if embed[sub.mul(a, b)] != parent.mul(embed[a], embed[b]) {
                    return Err(Error::InvalidEmbedding(format!(
                        "not a homomorphism at ({}, {})",
                        sub.label(a),
                        sub.label(b)
                    )));
                }
            }
        }
        Ok(Self { sub, parent, embed, preimage })
    }

    /// `{e} ⊆ G`.
    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let embed = vec![parent.identity()];
        Self::new(Arc::new(FiniteGroup::trivial()), parent, embed)
            .expect("trivial subgroup is always valid")
    }

    /// `G ⊆ G`.
    pub fn improper(parent: Arc<FiniteGroup>) -> Self {
        let embed = (0..parent.order()).collect();
        Self::new(parent.clone(), parent, embed).expect("identity map is always valid")
    }

    /// The cyclic subgroup generated by `g`, with `Z_n`'s `g^j` sent to `g^j`.
    pub fn cyclic(parent: Arc<FiniteGroup>, g: usize) -> Result<Self> {
        let n = parent.element_order(g);
        let mut embed = Vec::with_capacity(n);
        let mut x = parent.identity();
        for _ in 0..n {
            embed.push(x);
            x = parent.mul(x, g);
        }
        Self::new(Arc::new(FiniteGroup::cyclic(n)?), parent, embed)
    }

    /// Resolves a named subgroup of a named built-in group.
    ///
    /// Supported: the group itself, `1`/`trivial`, `Z<n>` inside `Z<m>` (n | m),
    /// `Z<n>` inside `S<m>`/`A<m>` generated by `(1,..,n)` (or `(1,2)(3,4)` for
    /// `Z2` where the transposition is odd), and `S<k>`/`A<k>` inside `S<m>`/`A<m>`
    /// acting on the first `k` points.
    pub fn standard(parent: &str, sub: &str) -> Result<Self> {
        let parent_group = Arc::new(FiniteGroup::builtin(parent)?);
        Self::standard_in(parent_group, sub)
    }

    pub fn standard_in(parent: Arc<FiniteGroup>, sub: &str) -> Result<Self> {
        let unknown = || Error::UnknownSubgroup {
            parent: parent.name().to_string(),
            sub: sub.to_string(),
        };
        let sub_group = FiniteGroup::builtin(sub).map_err(|_| unknown())?;
        if sub_group.order() == 1 {
            return Ok(Self::trivial(parent));
        }
        if sub_group.name() == parent.name() {
            return Ok(Self::improper(parent));
        }
        let is_cyclic_name = sub.trim().starts_with('Z') || sub.trim().starts_with('C');
        if is_cyclic_name {
            let n = sub_group.order();
            let generator = if let Some(m) = parent.degree() {
                let cycle: Vec<usize> = (1..=n).collect();
                let candidates = [
                    Permutation::from_cycles(m, &[&cycle]),
                    Permutation::from_cycles(m, &[&[1, 2], &[3, 4]]),
                ];
                candidates
                    .iter()
                    .filter_map(|p| p.as_ref().ok())
                    .filter(|p| {
                        let mut x = (*p).clone();
                        let mut k = 1;
                        while !x.is_identity() {
                            x = x.compose(p);
                            k += 1;
                        }
                        k == n
                    })
                    .find_map(|p| parent.index_of_permutation(p))
            } else if parent.name().starts_with('Z') && parent.order().is_multiple_of(n) {
                Some(parent.order() / n)
            } else {
                None
            };
            let g = generator.ok_or_else(unknown)?;
            return Self::cyclic(parent, g);
        }
        let (Some(k), Some(m)) = (sub_group.degree(), parent.degree()) else {
            return Err(unknown());
        };
        if k > m {
            return Err(unknown());
        }
        let mut embed = Vec::with_capacity(sub_group.order());
        for h in 0..sub_group.order() {
            let p = sub_group.permutation(h).expect("permutation group");
            let mut images = p.images().to_vec();
            images.extend(k..m);
            let q = Permutation::from_images(images).expect("extension is a permutation");
            embed.push(parent.index_of_permutation(&q).ok_or_else(unknown)?);
        }
        Self::new(Arc::new(sub_group), parent, embed)
    }

    pub fn sub(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn embed(&self, h: usize) -> usize {
        self.embed[h]
    }

    pub fn map(&self) -> &[usize] {
        &self.embed
    }

    /// The subgroup element mapping to `g`, if `g` lies in the image.
    pub fn preimage(&self, g: usize) -> Option<usize> {
        self.preimage[g]
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.sub.order()
    }
}

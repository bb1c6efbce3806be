//! Finite permutation groups backed by a stabilizer chain (Schreier-Sims).

use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::classes::ClassData;
use super::{PermError, Permutation};
use crate::config::Config;

/// One level of the stabilizer chain: the group generated by `gens` fixes all
/// base points of earlier levels; `transversal[p]` maps the base point to `p`.
#[derive(Clone, Debug)]
pub(crate) struct ChainLevel {
    pub base: u32,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    pub transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(degree: usize, base: u32) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        ChainLevel {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.transversal[self.base as usize] = Some(Permutation::identity(degree));
        self.orbit.push(self.base);
        let mut queue = VecDeque::new();
        queue.push_back(self.base);
        while let Some(p) = queue.pop_front() {
            let tp = self.transversal[p as usize].clone().unwrap();
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q as usize].is_none() {
                    self.transversal[q as usize] = Some(tp.compose(g));
                    self.orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
    }
}

/// A finite permutation group: generators, stabilizer chain, exact order, and
/// lazily computed conjugacy class data.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<ChainLevel>,
    order: BigUint,
    name: String,
    pub(crate) classes: OnceLock<ClassData>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            order: self.order.clone(),
            name: self.name.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup({}, degree {}, order {})",
            self.name, self.degree, self.order
        )
    }
}

impl PermGroup {
    /// Builds the group generated by `generators`, constructing a stabilizer
    /// chain. Base points are chosen as the smallest moved points.
    pub fn build(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::build_with_base(degree, generators, &[])
    }

    /// Like [`PermGroup::build`], but prefers the given 0-based points (in
    /// order) as base points while they are moved by the relevant stabilizer.
    pub fn build_with_base(
        degree: usize,
        generators: Vec<Permutation>,
        base_hint: &[u32],
    ) -> Result<Self, PermError> {
        if generators.is_empty() {
            return Err(PermError::EmptyGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        let mut builder = ChainBuilder {
            degree,
            levels: Vec::new(),
            base_hint: base_hint.to_vec(),
        };
        // Seed the first level with a base point moved by the whole group so
        // base hints hold even when individual generators fix them.
        if generators.iter().any(|g| !g.is_identity()) {
            let moved = |p: u32| generators.iter().any(|g| g.apply(p) != p);
            let base = base_hint
                .iter()
                .copied()
                .find(|&p| moved(p))
                .unwrap_or_else(|| (0..degree as u32).find(|&p| moved(p)).unwrap());
            builder.levels.push(ChainLevel::new(degree, base));
        }
        for g in &generators {
            builder.extend_with(g.clone());
        }
        let mut order = BigUint::one();
        for level in &builder.levels {
            order *= BigUint::from(level.orbit.len());
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: builder.levels,
            order,
            name: String::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; panics if it does not fit (callers guard with bounds).
    pub fn order_u64(&self) -> u64 {
        self.order
            .to_u64()
            .expect("group order exceeds u64; use order()")
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn chain(&self) -> &[ChainLevel] {
        &self.chain
    }

    /// Base points of the stabilizer chain, in chain order.
    pub fn base(&self) -> Vec<u32> {
        self.chain.iter().map(|l| l.base).collect()
    }

    /// Strong generators of the stabilizer of the first base point, i.e. the
    /// second group of the chain. Empty if the chain has at most one level.
    pub fn first_point_stabilizer_gens(&self) -> Vec<Permutation> {
        if self.chain.len() < 2 {
            return Vec::new();
        }
        self.chain[1].gens.clone()
    }

    /// Sifts `g` through the chain; returns the residue and the number of
    /// levels passed. Membership holds iff the residue is the identity.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        let mut residue = g.clone();
        for (i, level) in self.chain.iter().enumerate() {
            let p = residue.apply(level.base);
            match &level.transversal[p as usize] {
                Some(t) => residue = residue.compose(&t.inverse()),
                None => return (residue, i),
            }
        }
        (residue, self.chain.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift(g);
        residue.is_identity()
    }

    /// Whether every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Uniformly random element, as the product of independently uniform
    /// transversal representatives (deepest level applied first).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.chain.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            let t = level.transversal[p as usize].as_ref().unwrap();
            g = g.compose(t);
        }
        g
    }

    /// Iterates over all elements in stabilizer-chain order: the transversal
    /// index at the top level is the most significant digit.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            group: self,
            indices: vec![0; self.chain.len()],
            done: false,
        }
    }

    /// Whether the group is transitive on all `degree` points.
    pub fn is_transitive(&self) -> bool {
        self.orbit_of(0).len() == self.degree
    }

    /// Orbit of a 0-based point under the group, in BFS discovery order.
    pub fn orbit_of(&self, point: u32) -> Vec<u32> {
        orbit_of_point(self.degree, &self.generators, point)
    }

    /// Orbits of the group on points, each sorted, ordered by smallest point.
    pub fn point_orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if seen[p as usize] {
                continue;
            }
            let mut orbit = self.orbit_of(p);
            for &q in &orbit {
                seen[q as usize] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Center order, via iterated centralizers of the generators.
    pub fn center_order(&self, cfg: &Config) -> Result<BigUint, PermError> {
        let mut index = BigUint::one();
        let mut current: Vec<Permutation> = self.generators.clone();
        for g in &self.generators {
            let orbit =
                super::classes::conjugation_orbit(self.degree, &current, g, cfg.orbit_cap)?;
            index *= BigUint::from(orbit.elements.len());
            current = orbit.stabilizer_gens.clone();
            if current.is_empty() {
                current.push(self.identity());
            }
        }
        Ok(self.order.clone() / index)
    }
}

struct ChainBuilder {
    degree: usize,
    levels: Vec<ChainLevel>,
    base_hint: Vec<u32>,
}

impl ChainBuilder {
    /// Adds one generator to the top of the chain and restores the strong
    /// generating property below it.
    fn extend_with(&mut self, g: Permutation) {
        if g.is_identity() {
            return;
        }
        if self.levels.is_empty() {
            let base = self.pick_base(&g);
            self.levels.push(ChainLevel::new(self.degree, base));
        }
        self.add_generator(0, g);
    }

    fn pick_base(&self, g: &Permutation) -> u32 {
        for &h in &self.base_hint {
            if g.apply(h) != h {
                return h;
            }
        }
        (0..self.degree as u32)
            .find(|&p| g.apply(p) != p)
            .expect("non-identity permutation moves some point")
    }

    fn add_generator(&mut self, level: usize, g: Permutation) {
        self.levels[level].gens.push(g);
        self.schreier_sims_at(level);
    }

    /// Verifies Schreier generators of `level`, recursing deeper as residues
    /// surface. Assumes levels above `level` are unaffected.
    fn schreier_sims_at(&mut self, level: usize) {
        self.levels[level].rebuild_orbit(self.degree);
        let orbit = self.levels[level].orbit.clone();
        let gen_count = self.levels[level].gens.len();
        for &p in &orbit {
            for gi in 0..gen_count {
                let (schreier, trivial) = {
                    let lv = &self.levels[level];
                    let tp = lv.transversal[p as usize].as_ref().unwrap();
                    let s = &lv.gens[gi];
                    let q = s.apply(p);
                    let tq = lv.transversal[q as usize].as_ref().unwrap();
                    let h = tp.compose(s).compose(&tq.inverse());
                    let trivial = h.is_identity();
                    (h, trivial)
                };
                if trivial {
                    continue;
                }
                let residue = self.sift_from(level + 1, schreier);
                if residue.is_identity() {
                    continue;
                }
                if level + 1 == self.levels.len() {
                    let base = self.pick_base(&residue);
                    self.levels.push(ChainLevel::new(self.degree, base));
                }
                self.add_generator(level + 1, residue);
            }
        }
    }

    fn sift_from(&self, start: usize, g: Permutation) -> Permutation {
        let mut residue = g;
        for level in &self.levels[start.min(self.levels.len())..] {
            let p = residue.apply(level.base);
            match &level.transversal[p as usize] {
                Some(t) => residue = residue.compose(&t.inverse()),
                None => return residue,
            }
        }
        residue
    }
}

/// Orbit of `point` under a generator list, BFS discovery order.
pub fn orbit_of_point(degree: usize, gens: &[Permutation], point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

/// Exhaustive iterator over group elements in stabilizer-chain order.
pub struct ElementIter<'a> {
    group: &'a PermGroup,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let chain = self.group.chain();
        let mut g = Permutation::identity(self.group.degree());
        for (level, &idx) in chain.iter().zip(&self.indices).rev() {
            let p = level.orbit[idx];
            g = g.compose(level.transversal[p as usize].as_ref().unwrap());
        }
        // advance the index vector, least significant digit last
        let mut carry = true;
        for (level, idx) in chain.iter().zip(self.indices.iter_mut()).rev() {
            if !carry {
                break;
            }
            *idx += 1;
            if *idx < level.orbit.len() {
                carry = false;
            } else {
                *idx = 0;
            }
        }
        if carry {
            self.done = true;
        }
        Some(g)
    }
}

/// Builds a group from generators, verifying the enumeration bound first.
pub fn build_group(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, PermError> {
    PermGroup::build(degree, generators)
}

//! Block systems and primitivity for transitive groups.

use super::{PermGroup, Permutation};

/// A system of imprimitivity: blocks partition the points, each block sorted,
/// blocks ordered by smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<u32>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// The minimal block system in which `a` and `b` share a block
/// (Atkinson's algorithm). `None` when that system is the whole point set.
fn minimal_block_with(gens: &[Permutation], degree: usize, a: u32, b: u32) -> Option<BlockSystem> {
    let mut uf = UnionFind::new(degree);
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let gx = g.apply(x);
            let gy = g.apply(y);
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    let mut buckets: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for p in 0..degree as u32 {
        buckets.entry(uf.find(p)).or_default().push(p);
    }
    if buckets.len() <= 1 {
        return None;
    }
    Some(BlockSystem {
        blocks: buckets.into_values().collect(),
    })
}

/// All distinct minimal block systems obtained by seeding point pairs
/// `(0, p)`. Empty for a primitive group.
pub fn minimal_block_systems(group: &PermGroup) -> Vec<BlockSystem> {
    let degree = group.degree();
    let gens = group.generators();
    let mut out: Vec<BlockSystem> = Vec::new();
    for p in 1..degree as u32 {
        if let Some(system) = minimal_block_with(gens, degree, 0, p) {
            if system.blocks.len() < degree && !out.contains(&system) {
                out.push(system);
            }
        }
    }
    out
}

impl PermGroup {
    /// Whether the group is transitive and preserves no nontrivial block
    /// system. Degree-1 and degree-2 transitive groups count as primitive.
    pub fn is_primitive(&self) -> bool {
        self.is_transitive() && minimal_block_systems(self).is_empty()
    }
}

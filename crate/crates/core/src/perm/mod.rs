//! Permutations and finite permutation groups.

mod blocks;
mod classes;
mod cosets;
mod group;
mod normalizer;
mod parse;

pub use blocks::{minimal_block_systems, BlockSystem};
pub use classes::{
    conjugation_orbit, simultaneous_transporter, transporter_bfs, ClassData, ClassId, ConjOrbit,
    ConjugacyClass,
};
pub use cosets::{coset_action, CosetAction};
pub use group::{build_group, orbit_of_point, ElementIter, PermGroup};
pub use normalizer::normalizer_in_sym;
pub use parse::split_perm_list;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images are not a bijection of 1..={0}")]
    NotBijective(usize),
    #[error("point {0} out of range for degree {1}")]
    PointOutOfRange(usize, usize),
    #[error("cannot parse permutation from {0:?}: {1}")]
    Parse(String, String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: String, bound: u64 },
    #[error("subgroup check failed: {0}")]
    NotASubgroup(String),
    #[error("action kernel is nontrivial (subgroup is not core-free)")]
    CoreNotTrivial,
    #[error("degree {0} exceeds the brute-force normalizer bound {1}")]
    NormalizerDegree(usize, usize),
}

/// A permutation of the points `{1..n}`, stored as a 0-based image array:
/// `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image array, verifying bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijective(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree {
                    return Err(PermError::PointOutOfRange(p + 1, degree));
                }
                if seen[p] {
                    return Err(PermError::NotBijective(degree));
                }
                seen[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Product `self * other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Conjugate `self^h = h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), h.degree());
        // (h^-1 g h)(x) = h(g(h^-1(x))); with right action, fill via images of h.
        let mut images = vec![0u32; self.images.len()];
        for (i, &hi) in h.images.iter().enumerate() {
            images[hi as usize] = h.images[self.images[i] as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        if k == 0 {
            return Permutation::identity(n);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = Permutation::identity(n);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.compose(&sq);
            }
            sq = sq.compose(&sq);
            exp >>= 1;
        }
        result
    }

    /// Cycles of the permutation as 0-based point lists, fixed points included,
    /// each cycle starting at its smallest point, cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.images[p as usize];
            }
        }
        count
    }

    /// Degree minus the number of cycles (fixed points count as cycles).
    pub fn index(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Multiset of cycle lengths, sorted ascending. A conjugation invariant.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut lengths: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        lengths.sort_unstable();
        lengths
    }

    /// Order as a group element.
    pub fn order(&self) -> u64 {
        let mut ord: u64 = 1;
        for c in self.cycles() {
            ord = num_integer::lcm(ord, c.len() as u64);
        }
        ord
    }
}

/// Product `p * q` evaluated left to right: x -> q(p(x)).
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.compose(q))
}

/// Conjugate `g^h = h^-1 g h`.
pub fn conjugate(g: &Permutation, h: &Permutation) -> Result<Permutation, PermError> {
    if g.degree() != h.degree() {
        return Err(PermError::DegreeMismatch(g.degree(), h.degree()));
    }
    Ok(g.conjugate_by(h))
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation on 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut printed = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (k, &p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
            printed = true;
        }
        if !printed {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Braid words and their action on tuples of group elements.
//!
//! The elementary operation `Q_i` replaces entries `i, i+1` of a tuple by
//! `(g_{i+1}, g_{i+1}^-1 g_i g_{i+1})`; it preserves the product of the
//! entries. Words act left to right: the first letter is applied first.

use std::fmt;

use thiserror::Error;

use crate::config::Config;
use crate::perm::{ClassId, PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum BraidError {
    #[error("tuple needs at least 2 entries, got {0}")]
    TooShort(usize),
    #[error("entry product does not equal the declared product")]
    ProductMismatch,
    #[error("entry degrees differ")]
    DegreeMismatch,
    #[error("braid index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("coalesced entry is the identity; result is inadmissible")]
    CoalesceIdentity,
    #[error("tuple entry lies outside the group")]
    EntryOutsideGroup,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("cannot parse braid word {0:?}")]
    ParseWord(String),
}

/// An ordered tuple of permutations with a declared product (the identity in
/// the product-one setting; arbitrary in the fixed-product variant).
/// Immutable: every braid application returns a fresh tuple.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    entries: Vec<Permutation>,
    declared_product: Permutation,
}

impl Tuple {
    pub fn new(entries: Vec<Permutation>, declared_product: Permutation) -> Result<Self, BraidError> {
        if entries.len() < 2 {
            return Err(BraidError::TooShort(entries.len()));
        }
        let degree = declared_product.degree();
        if entries.iter().any(|e| e.degree() != degree) {
            return Err(BraidError::DegreeMismatch);
        }
        let product = entries
            .iter()
            .fold(Permutation::identity(degree), |acc, g| acc.compose(g));
        if product != declared_product {
            return Err(BraidError::ProductMismatch);
        }
        Ok(Tuple {
            entries,
            declared_product,
        })
    }

    /// Product-one tuple.
    pub fn with_product_one(entries: Vec<Permutation>) -> Result<Self, BraidError> {
        let degree = entries.first().map(|e| e.degree()).unwrap_or(0);
        Tuple::new(entries, Permutation::identity(degree))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.declared_product.degree()
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    pub fn declared_product(&self) -> &Permutation {
        &self.declared_product
    }

    /// No identity entries and the entries generate a transitive group.
    pub fn is_admissible(&self) -> bool {
        if self.entries.iter().any(|e| e.is_identity()) {
            return false;
        }
        crate::perm::orbit_of_point(self.degree(), &self.entries, 0).len() == self.degree()
    }

    /// Entrywise conjugation; the declared product conjugates along.
    pub fn conjugate_by(&self, c: &Permutation) -> Tuple {
        Tuple {
            entries: self.entries.iter().map(|e| e.conjugate_by(c)).collect(),
            declared_product: self.declared_product.conjugate_by(c),
        }
    }

    /// `Q_i` (1-based): entries `i, i+1` become `(g_{i+1}, g_{i+1}^-1 g_i g_{i+1})`.
    pub fn apply_q(&self, i: usize) -> Result<Tuple, BraidError> {
        let r = self.len();
        if i == 0 || i >= r {
            return Err(BraidError::IndexOutOfRange(i, r - 1));
        }
        let mut entries = self.entries.clone();
        let gi = entries[i - 1].clone();
        let gj = entries[i].clone();
        entries[i - 1] = gj.clone();
        entries[i] = gi.conjugate_by(&gj);
        Ok(Tuple {
            entries,
            declared_product: self.declared_product.clone(),
        })
    }

    /// `Q_i^-1`: entries `i, i+1` become `(g_i g_{i+1} g_i^-1, g_i)`.
    pub fn apply_q_inverse(&self, i: usize) -> Result<Tuple, BraidError> {
        let r = self.len();
        if i == 0 || i >= r {
            return Err(BraidError::IndexOutOfRange(i, r - 1));
        }
        let mut entries = self.entries.clone();
        let gi = entries[i - 1].clone();
        let gj = entries[i].clone();
        entries[i - 1] = gj.conjugate_by(&gi.inverse());
        entries[i] = gi;
        Ok(Tuple {
            entries,
            declared_product: self.declared_product.clone(),
        })
    }

    /// Replaces the last two entries by their product.
    pub fn coalesce(&self) -> Result<Tuple, BraidError> {
        let r = self.len();
        if r < 3 {
            return Err(BraidError::TooShort(r));
        }
        let merged = self.entries[r - 2].compose(&self.entries[r - 1]);
        if merged.is_identity() {
            return Err(BraidError::CoalesceIdentity);
        }
        let mut entries = self.entries[..r - 2].to_vec();
        entries.push(merged);
        Ok(Tuple {
            entries,
            declared_product: self.declared_product.clone(),
        })
    }

    /// Serialization for orbit files: semicolon-separated 1-based image lists.
    pub fn to_line(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.image_list_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_line(line: &str, degree: usize) -> Result<Tuple, BraidError> {
        let mut entries = Vec::new();
        for part in line.split(';') {
            entries.push(Permutation::parse(&format!("[{}]", part.trim()), degree)?);
        }
        let degree = entries
            .first()
            .map(|e| e.degree())
            .ok_or(BraidError::TooShort(0))?;
        let product = entries
            .iter()
            .fold(Permutation::identity(degree), |acc, g| acc.compose(g));
        Tuple::new(entries, product)
    }
}

impl fmt::Debug for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A word in the braid generators: signed 1-based indices, applied left to
/// right. `[2, 1, 1, -2]` is `Q2 Q1 Q1 Q2^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn apply(&self, t: &Tuple) -> Result<Tuple, BraidError> {
        let mut cur = t.clone();
        for &letter in &self.0 {
            cur = if letter > 0 {
                cur.apply_q(letter as usize)?
            } else {
                cur.apply_q_inverse((-letter) as usize)?
            };
        }
        Ok(cur)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        BraidWord(letters)
    }

    /// Image under `kappa: Q_i -> (i, i+1)` as a position permutation of
    /// `{1..r}` (0-based internally).
    pub fn kappa(&self, r: usize) -> Permutation {
        let mut p = Permutation::identity(r);
        for &letter in &self.0 {
            let i = letter.unsigned_abs() as usize - 1;
            let swap = Permutation::from_cycles(r, &[vec![i as u32, i as u32 + 1]]).unwrap();
            p = p.compose(&swap);
        }
        p
    }

    pub fn parse(input: &str) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for tok in input.split_whitespace() {
            let v: i32 = tok
                .parse()
                .map_err(|_| BraidError::ParseWord(input.to_string()))?;
            if v == 0 {
                return Err(BraidError::ParseWord(input.to_string()));
            }
            letters.push(v);
        }
        Ok(BraidWord(letters))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The pure braid generator `Q_ij = Q_{j-1} ... Q_{i+1} Q_i^2 Q_{i+1}^-1 ... Q_{j-1}^-1`
/// for `1 <= i < j <= r`.
pub fn pure_generator_word(i: usize, j: usize, r: usize) -> Result<BraidWord, BraidError> {
    if i == 0 || i >= j || j > r {
        return Err(BraidError::IndexOutOfRange(i.max(j), r));
    }
    let mut letters: Vec<i32> = Vec::new();
    for k in ((i + 1)..j).rev() {
        letters.push(k as i32);
    }
    letters.push(i as i32);
    letters.push(i as i32);
    for k in (i + 1)..j {
        letters.push(-(k as i32));
    }
    Ok(BraidWord(letters))
}

/// The alternative expression `Q_i^-1 ... Q_{j-2}^-1 Q_{j-1}^2 Q_{j-2} ... Q_i`
/// for the same pure generator; must act identically on every tuple.
pub fn pure_generator_word_alt(i: usize, j: usize, r: usize) -> Result<BraidWord, BraidError> {
    if i == 0 || i >= j || j > r {
        return Err(BraidError::IndexOutOfRange(i.max(j), r));
    }
    let mut letters: Vec<i32> = Vec::new();
    for k in i..(j - 1) {
        letters.push(-(k as i32));
    }
    letters.push((j - 1) as i32);
    letters.push((j - 1) as i32);
    for k in (i..(j - 1)).rev() {
        letters.push(k as i32);
    }
    Ok(BraidWord(letters))
}

/// An ordered list of class labels with its block partition. Labels are
/// block-ordered: equal classes occupy contiguous positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSignature {
    pub class_ids: Vec<ClassId>,
    pub labels: Vec<String>,
    /// Lengths of the contiguous blocks of equal classes.
    pub blocks: Vec<usize>,
}

impl ClassSignature {
    pub fn new(class_ids: Vec<ClassId>, labels: Vec<String>) -> Result<Self, BraidError> {
        if class_ids.len() < 2 {
            return Err(BraidError::TooShort(class_ids.len()));
        }
        // block-ordered check: a class may not reappear after a different one
        let mut seen: Vec<ClassId> = Vec::new();
        for window in class_ids.windows(2) {
            if window[0] != window[1] && seen.contains(&window[1]) {
                return Err(BraidError::ProductMismatch);
            }
            if !seen.contains(&window[0]) {
                seen.push(window[0]);
            }
        }
        let mut blocks = Vec::new();
        let mut run = 1usize;
        for k in 1..class_ids.len() {
            if class_ids[k] == class_ids[k - 1] {
                run += 1;
            } else {
                blocks.push(run);
                run = 1;
            }
        }
        blocks.push(run);
        Ok(ClassSignature {
            class_ids,
            labels,
            blocks,
        })
    }

    pub fn len(&self) -> usize {
        self.class_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_ids.is_empty()
    }

    /// 1-based block index boundaries: position `i` and `i+1` share a block
    /// iff they fall inside the same partition part.
    pub fn block_of(&self, position: usize) -> usize {
        let mut acc = 0;
        for (b, &len) in self.blocks.iter().enumerate() {
            acc += len;
            if position <= acc {
                return b;
            }
        }
        self.blocks.len()
    }

    pub fn display_labels(&self) -> String {
        format!("({})", self.labels.join(","))
    }
}

impl fmt::Display for ClassSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_labels())
    }
}

/// Classifies each entry of a tuple and derives the signature. The tuple must
/// already be block-ordered; use [`reorder_to_signature`] first otherwise.
pub fn signature_of(t: &Tuple, group: &PermGroup, cfg: &Config) -> Result<ClassSignature, BraidError> {
    let data = group.class_data(cfg)?;
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    for e in t.entries() {
        let id = data.class_of(e).ok_or(BraidError::EntryOutsideGroup)?;
        ids.push(id);
        labels.push(data.classes[id].label.clone());
    }
    ClassSignature::new(ids, labels)
}

/// Sorts the entries into block order (ascending class label order, stable)
/// by a braid word of `Q_i` moves; returns the sorted tuple and the word.
pub fn reorder_to_signature(
    t: &Tuple,
    group: &PermGroup,
    cfg: &Config,
) -> Result<(Tuple, BraidWord), BraidError> {
    let data = group.class_data(cfg)?;
    let mut ids = Vec::new();
    for e in t.entries() {
        ids.push(data.class_of(e).ok_or(BraidError::EntryOutsideGroup)?);
    }
    let mut letters = Vec::new();
    let mut current = t.clone();
    // stable insertion sort: move entry k left past larger classes
    for k in 2..=t.len() {
        let mut pos = k;
        while pos > 1 && ids[pos - 2] > ids[pos - 1] {
            // Q_{pos-1} moves the entry at pos to pos-1
            current = current.apply_q(pos - 1)?;
            ids.swap(pos - 2, pos - 1);
            letters.push((pos - 1) as i32);
            pos -= 1;
        }
    }
    Ok((current, BraidWord(letters)))
}

/// The generating set of `B_P`: the `Q_i` with `i, i+1` in the same block
/// (listed first), then the `Q_ij` with `i, j` in different blocks, in
/// lexicographic `(i, j)` order.
pub fn bp_generators(sig: &ClassSignature) -> Vec<BraidWord> {
    bp_generators_named(sig).into_iter().map(|(_, w)| w).collect()
}

pub fn bp_generators_named(sig: &ClassSignature) -> Vec<(String, BraidWord)> {
    let r = sig.len();
    let mut out = Vec::new();
    for i in 1..r {
        if sig.block_of(i) == sig.block_of(i + 1) {
            out.push((format!("Q_{i}"), BraidWord(vec![i as i32])));
        }
    }
    for i in 1..r {
        for j in (i + 1)..=r {
            if sig.block_of(i) != sig.block_of(j) {
                out.push((
                    format!("Q_{i}_{j}"),
                    pure_generator_word(i, j, r).unwrap(),
                ));
            }
        }
    }
    out
}

/// All pure braid generators `Q_ij`, `1 <= i < j <= r`, lexicographic.
pub fn pure_generators_named(r: usize) -> Vec<(String, BraidWord)> {
    let mut out = Vec::new();
    for i in 1..r {
        for j in (i + 1)..=r {
            out.push((
                format!("Q_{i}_{j}"),
                pure_generator_word(i, j, r).unwrap(),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn s3_tuple() -> Tuple {
        Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(2,3)", 3),
            perm("(1,2,3)", 3),
        ])
        .unwrap()
    }

    #[test]
    fn q1_on_s3_triple() {
        // ((1,2),(2,3),(1,2,3)) --Q1--> ((2,3),(1,3),(1,2,3))
        let t = s3_tuple();
        let u = t.apply_q(1).unwrap();
        assert_eq!(u.entries()[0], perm("(2,3)", 3));
        assert_eq!(u.entries()[1], perm("(1,3)", 3));
        assert_eq!(u.entries()[2], perm("(1,2,3)", 3));
        assert!(u.declared_product().is_identity());
        // inverse undoes it
        assert_eq!(u.apply_q_inverse(1).unwrap(), t);
    }

    #[test]
    fn product_is_invariant_under_braiding() {
        let t = s3_tuple();
        for i in 1..t.len() {
            assert!(t.apply_q(i).unwrap().declared_product().is_identity());
            assert!(t.apply_q_inverse(i).unwrap().declared_product().is_identity());
        }
        assert!(t.apply_q(0).is_err());
        assert!(t.apply_q(3).is_err());
    }

    fn random_s4_tuple(r: usize, rng: &mut impl Rng) -> Tuple {
        let g = PermGroup::build(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap();
        loop {
            let mut entries: Vec<Permutation> =
                (0..r - 1).map(|_| g.random_element(rng)).collect();
            let prod = entries
                .iter()
                .fold(Permutation::identity(4), |acc, x| acc.compose(x));
            entries.push(prod.inverse());
            if let Ok(t) = Tuple::with_product_one(entries) {
                return t;
            }
        }
    }

    #[test]
    fn braid_relations_hold_on_tuples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let r = rng.gen_range(3..=6);
            let t = random_s4_tuple(r, &mut rng);
            for i in 1..r - 1 {
                let lhs = t.apply_q(i).unwrap().apply_q(i + 1).unwrap().apply_q(i).unwrap();
                let rhs = t
                    .apply_q(i + 1)
                    .unwrap()
                    .apply_q(i)
                    .unwrap()
                    .apply_q(i + 1)
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
            for i in 1..r {
                for j in 1..r {
                    if i.abs_diff(j) > 1 {
                        let lhs = t.apply_q(i).unwrap().apply_q(j).unwrap();
                        let rhs = t.apply_q(j).unwrap().apply_q(i).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn pure_generator_two_forms_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let r = rng.gen_range(3..=6);
            let t = random_s4_tuple(r, &mut rng);
            for i in 1..r {
                for j in (i + 1)..=r {
                    let a = pure_generator_word(i, j, r).unwrap().apply(&t).unwrap();
                    let b = pure_generator_word_alt(i, j, r).unwrap().apply(&t).unwrap();
                    assert_eq!(a, b, "forms differ at ({i},{j}), r={r}");
                }
            }
        }
    }

    #[test]
    fn adjacent_pure_generator_is_square() {
        let w = pure_generator_word(2, 3, 4).unwrap();
        assert_eq!(w.0, vec![2, 2]);
        let w13 = pure_generator_word(1, 3, 3).unwrap();
        assert_eq!(w13.0, vec![2, 1, 1, -2]);
    }

    #[test]
    fn kappa_matches_position_permutation() {
        let w = BraidWord(vec![1, 2]);
        let k = w.kappa(3);
        // positions: Q1 swaps 1,2 then Q2 swaps 2,3: 1->2->3, 2->1, 3->2... as images
        assert_eq!(k, perm("(1,3,2)", 3));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let r = rng.gen_range(3..=5);
            let t = random_s4_tuple(r, &mut rng);
            let len = rng.gen_range(0..6);
            let word = BraidWord(
                (0..len)
                    .map(|_| {
                        let i = rng.gen_range(1..r as i32);
                        if rng.gen_bool(0.5) {
                            i
                        } else {
                            -i
                        }
                    })
                    .collect(),
            );
            let image = word.apply(&t).unwrap();
            let kappa = word.kappa(r);
            // entry classes travel along kappa: cycle types suffice in S4
            for pos in 0..r {
                let from = kappa
                    .images()
                    .iter()
                    .position(|&x| x as usize == pos)
                    .unwrap();
                assert_eq!(
                    image.entries()[pos].cycle_type(),
                    t.entries()[from].cycle_type()
                );
            }
        }
    }

    #[test]
    fn bp_generators_per_partition() {
        // single block: Q_1..Q_{r-1}
        let sig = ClassSignature::new(vec![0, 0, 0, 0], vec!["2A".into(); 4]).unwrap();
        let named = bp_generators_named(&sig);
        let names: Vec<&str> = named.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["Q_1", "Q_2", "Q_3"]);
        // all singletons: the pure braid generators
        let sig = ClassSignature::new(vec![0, 1, 2], vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let names: Vec<String> = bp_generators_named(&sig).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["Q_1_2", "Q_1_3", "Q_2_3"]);
        // [2,2]: Q1, Q3 and the cross pairs
        let sig = ClassSignature::new(
            vec![0, 0, 1, 1],
            vec!["2A".into(), "2A".into(), "3A".into(), "3A".into()],
        )
        .unwrap();
        let names: Vec<String> = bp_generators_named(&sig).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["Q_1", "Q_3", "Q_1_3", "Q_1_4", "Q_2_3", "Q_2_4"]);
        assert_eq!(sig.blocks, vec![2, 2]);
    }

    #[test]
    fn signature_must_be_block_ordered() {
        assert!(ClassSignature::new(vec![0, 1, 0], vec!["a".into(), "b".into(), "a".into()])
            .is_err());
    }

    #[test]
    fn reorder_sorts_classes_stably() {
        let g = PermGroup::build(3, vec![perm("(1,2)", 3), perm("(1,2,3)", 3)]).unwrap();
        let cfg = Config::default();
        let t = Tuple::with_product_one(vec![
            perm("(1,2,3)", 3),
            perm("(1,2)", 3),
            perm("(1,2)", 3),
            perm("(1,3,2)", 3),
            perm("(2,3)", 3),
            perm("(2,3)", 3),
        ])
        .unwrap();
        let (sorted, word) = reorder_to_signature(&t, &g, &cfg).unwrap();
        let sig = signature_of(&sorted, &g, &cfg).unwrap();
        assert_eq!(sig.labels, vec!["2A", "2A", "2A", "2A", "3A", "3A"]);
        assert_eq!(sig.blocks, vec![4, 2]);
        // the emitted word reproduces the sorted tuple
        assert_eq!(word.apply(&t).unwrap(), sorted);
        // already sorted input gives the empty word
        let (again, word2) = reorder_to_signature(&sorted, &g, &cfg).unwrap();
        assert_eq!(again, sorted);
        assert!(word2.0.is_empty());
    }

    #[test]
    fn coalesce_merges_last_two() {
        let t = s3_tuple();
        let c = t.coalesce().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.entries()[1], perm("(2,3)", 3).compose(&perm("(1,2,3)", 3)));
        assert!(c.declared_product().is_identity());
        // merging inverse pair fails
        let bad = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(1,2)", 3),
            perm("(1,2,3)", 3),
            perm("(1,3,2)", 3),
        ])
        .unwrap();
        assert!(matches!(bad.coalesce(), Err(BraidError::CoalesceIdentity)));
    }

    #[test]
    fn word_roundtrip() {
        let w = BraidWord::parse("2 1 1 -2").unwrap();
        assert_eq!(w.0, vec![2, 1, 1, -2]);
        assert_eq!(w.to_string(), "2 1 1 -2");
        assert_eq!(w.inverse().0, vec![2, -1, -1, -2]);
        assert!(BraidWord::parse("2 0").is_err());
    }
}

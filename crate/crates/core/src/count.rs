//! Character-free structure constants: exact counts of class-constrained
//! tuples with a prescribed product, and tuple counting for orbits.
//!
//! The count `|E(C_1,...,C_r)|` is folded one class at a time. Write
//! `f_k(x)` for the number of ways to write `x` as a product `g_1 ... g_k`
//! with `g_i` in `C_i`; this is a class function, stored as one big integer
//! per conjugacy class. The transition appends class `C`:
//! `f_{k+1}(d) = sum over b in C of f_k(d b^-1)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use thiserror::Error;

use crate::braid::{ClassSignature, Tuple};
use crate::config::Config;
use crate::perm::{conjugation_orbit, ClassId, PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum CountError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("element has no class in the table")]
    UnknownClass,
    #[error("signature is empty")]
    EmptySignature,
}

/// Integer coefficients indexed by the conjugacy classes of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector(pub Vec<BigUint>);

impl ClassVector {
    pub fn zero(classes: usize) -> Self {
        ClassVector(vec![BigUint::zero(); classes])
    }
}

/// For classes `A`, `B`: the vector whose `D`-coefficient counts the pairs
/// `(a, b)` in `A x B` with `a b = d`, for one fixed representative `d` of
/// each class `D`. Computed by fixing `d` and scanning `b` over `B`.
pub fn class_product_counts(
    group: &PermGroup,
    a: ClassId,
    b: ClassId,
    cfg: &Config,
) -> Result<ClassVector, CountError> {
    let data = group.class_data(cfg)?;
    let n = data.classes.len();
    let mut out = ClassVector::zero(n);
    for (d_id, class_d) in data.classes.iter().enumerate() {
        let d = &class_d.representative;
        let mut count = BigUint::zero();
        for x in data.classes[b].elements() {
            // a = d * b^-1 must land in A
            let cand = d.compose(&x.inverse());
            if data.classes[a].contains(&cand) {
                count += BigUint::one();
            }
        }
        out.0[d_id] = count;
    }
    Ok(out)
}

/// Exact `|{(g_1,...,g_r) : g_i in C_i, g_1...g_r = product}|`.
pub fn structure_constant_with_product(
    group: &PermGroup,
    sig: &ClassSignature,
    product: &Permutation,
    cfg: &Config,
) -> Result<BigUint, CountError> {
    let data = group.class_data(cfg)?;
    let n = data.classes.len();
    if sig.class_ids.is_empty() {
        return Err(CountError::EmptySignature);
    }
    // f after the first class: one way per element of C_1
    let mut f = vec![BigUint::zero(); n];
    f[sig.class_ids[0]] = BigUint::one();
    for &cid in &sig.class_ids[1..] {
        let mut next = vec![BigUint::zero(); n];
        for (d_id, class_d) in data.classes.iter().enumerate() {
            let d = &class_d.representative;
            let mut acc = BigUint::zero();
            for b in data.classes[cid].elements() {
                let x = d.compose(&b.inverse());
                let xc = data.class_of(&x).ok_or(CountError::UnknownClass)?;
                acc += &f[xc];
            }
            next[d_id] = acc;
        }
        f = next;
    }
    let pc = data.class_of(product).ok_or(CountError::UnknownClass)?;
    Ok(f[pc].clone())
}

/// Structure constant for product 1 (the basic setting).
pub fn structure_constant(
    group: &PermGroup,
    sig: &ClassSignature,
    cfg: &Config,
) -> Result<BigUint, CountError> {
    structure_constant_with_product(group, sig, &group.identity(), cfg)
}

/// Number of raw tuples in the simultaneous-conjugation orbit of `t`:
/// `|G| / |C_G(t)|`, via iterated centralizers. Since braid moves preserve
/// the generated subgroup, this is constant along a braid orbit.
pub fn inn_orbit_size(group: &PermGroup, t: &Tuple, cfg: &Config) -> Result<BigUint, CountError> {
    let mut index = BigUint::one();
    let mut gens: Vec<Permutation> = group.generators().to_vec();
    for entry in t.entries() {
        let orbit = conjugation_orbit(group.degree(), &gens, entry, cfg.orbit_cap)?;
        index *= BigUint::from(orbit.len());
        gens = orbit.stabilizer_gens.clone();
        if gens.is_empty() {
            break; // centralizer is trivial from here on
        }
    }
    Ok(index)
}

/// Centralizer order of the whole tuple, `|C_G(t)|`.
pub fn tuple_centralizer_order(
    group: &PermGroup,
    t: &Tuple,
    cfg: &Config,
) -> Result<BigUint, CountError> {
    Ok(group.order() / inn_orbit_size(group, t, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::build(3, vec![perm("(1,2)", 3), perm("(1,2,3)", 3)]).unwrap()
    }

    fn sig(group: &PermGroup, labels: &[&str], cfg: &Config) -> ClassSignature {
        let data = group.class_data(cfg).unwrap();
        let ids: Vec<ClassId> = labels
            .iter()
            .map(|l| data.by_label(l).unwrap().id)
            .collect();
        ClassSignature::new(ids, labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn s3_transposition_products() {
        let g = s3();
        let cfg = Config::default();
        let data = g.class_data(&cfg).unwrap();
        let a = data.by_label("2A").unwrap().id;
        let v = class_product_counts(&g, a, a, &cfg).unwrap();
        // 3 pairs multiply to the identity; 3 pairs to each fixed 3-cycle
        let labels: Vec<(&str, u64)> = data
            .classes
            .iter()
            .zip(&v.0)
            .map(|(c, n)| (c.label.as_str(), u64::try_from(n).unwrap()))
            .collect();
        assert_eq!(labels, vec![("1A", 3), ("2A", 0), ("3A", 3)]);
        // identity class as left factor: indicator of B
        let e = data.by_label("1A").unwrap().id;
        let v = class_product_counts(&g, e, a, &cfg).unwrap();
        let total: Vec<u64> = v.0.iter().map(|n| u64::try_from(n).unwrap()).collect();
        assert_eq!(total, vec![0, 1, 0]);
    }

    #[test]
    fn pair_totals_cover_all_products() {
        let g = PermGroup::build(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap();
        let cfg = Config::default();
        let data = g.class_data(&cfg).unwrap();
        for a in 0..data.classes.len() {
            for b in 0..data.classes.len() {
                let v = class_product_counts(&g, a, b, &cfg).unwrap();
                let total: BigUint = v
                    .0
                    .iter()
                    .zip(&data.classes)
                    .map(|(n, c)| n * BigUint::from(c.size))
                    .sum();
                assert_eq!(
                    total,
                    BigUint::from(data.classes[a].size) * BigUint::from(data.classes[b].size)
                );
            }
        }
    }

    #[test]
    fn s3_four_transpositions_is_27() {
        let g = s3();
        let cfg = Config::default();
        let s = sig(&g, &["2A", "2A", "2A", "2A"], &cfg);
        assert_eq!(structure_constant(&g, &s, &cfg).unwrap(), BigUint::from(27u32));
    }

    #[test]
    fn two_classes_pair_count() {
        // (C, C^-1-class) with r = 2 gives |C|
        let g = s3();
        let cfg = Config::default();
        let s = sig(&g, &["3A", "3A"], &cfg);
        assert_eq!(structure_constant(&g, &s, &cfg).unwrap(), BigUint::from(2u32));
        let s = sig(&g, &["2A", "2A"], &cfg);
        assert_eq!(structure_constant(&g, &s, &cfg).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn brute_force_oracle_small_groups() {
        use rand::{Rng, SeedableRng};
        let cfg = Config::default();
        let groups = vec![
            s3(),
            PermGroup::build(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap(),
            PermGroup::build(4, vec![perm("(1,2,3)", 4), perm("(2,3,4)", 4)]).unwrap(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for g in &groups {
            let data = g.class_data(&cfg).unwrap();
            let nontrivial: Vec<ClassId> = data
                .classes
                .iter()
                .filter(|c| c.element_order > 1)
                .map(|c| c.id)
                .collect();
            for _ in 0..8 {
                let r = rng.gen_range(2..=4usize);
                let mut ids: Vec<ClassId> =
                    (0..r).map(|_| nontrivial[rng.gen_range(0..nontrivial.len())]).collect();
                ids.sort_unstable();
                let labels = ids
                    .iter()
                    .map(|&i| data.classes[i].label.clone())
                    .collect();
                let s = ClassSignature::new(ids.clone(), labels).unwrap();
                let fast = structure_constant(g, &s, &cfg).unwrap();
                // brute force over the Cartesian product of the first r-1 classes
                let mut brute = 0u64;
                let mut stack: Vec<(usize, Permutation)> =
                    vec![(0, Permutation::identity(g.degree()))];
                while let Some((k, prod)) = stack.pop() {
                    if k == r - 1 {
                        let last = prod.inverse();
                        if data.classes[ids[r - 1]].contains(&last) {
                            brute += 1;
                        }
                        continue;
                    }
                    for x in data.classes[ids[k]].elements() {
                        stack.push((k + 1, prod.compose(x)));
                    }
                }
                assert_eq!(fast, BigUint::from(brute), "signature {:?}", s.labels);
            }
        }
    }

    #[test]
    fn structure_constant_invariant_under_reordering() {
        let g = PermGroup::build(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap();
        let cfg = Config::default();
        let data = g.class_data(&cfg).unwrap();
        let orderings = [
            ["2A", "2B", "3A"],
            ["2A", "3A", "2B"],
            ["2B", "2A", "3A"],
            ["3A", "2A", "2B"],
        ];
        let mut values = Vec::new();
        for labels in &orderings {
            let ids: Vec<ClassId> = labels
                .iter()
                .map(|l| data.by_label(l).unwrap().id)
                .collect();
            // bypass block-ordering for the invariance check: fold directly
            let fake = ClassSignature {
                class_ids: ids,
                labels: labels.iter().map(|s| s.to_string()).collect(),
                blocks: vec![1; 3],
            };
            values.push(structure_constant(&g, &fake, &cfg).unwrap());
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn fixed_product_mode_counts_correctly() {
        let g = s3();
        let cfg = Config::default();
        let s = sig(&g, &["2A", "2A"], &cfg);
        // pairs of transpositions with product (1,2,3): brute force gives 3
        let target = perm("(1,2,3)", 3);
        let c = structure_constant_with_product(&g, &s, &target, &cfg).unwrap();
        assert_eq!(c, BigUint::from(3u32));
    }

    #[test]
    fn inn_orbit_sizes_in_s3() {
        let g = s3();
        let cfg = Config::default();
        let t = Tuple::with_product_one(vec![perm("(1,2)", 3); 4]).unwrap();
        assert_eq!(inn_orbit_size(&g, &t, &cfg).unwrap(), BigUint::from(3u32));
        assert_eq!(
            tuple_centralizer_order(&g, &t, &cfg).unwrap(),
            BigUint::from(2u32)
        );
        let gen_tuple = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(1,2)", 3),
            perm("(1,3)", 3),
            perm("(1,3)", 3),
        ])
        .unwrap();
        assert_eq!(
            inn_orbit_size(&g, &gen_tuple, &cfg).unwrap(),
            BigUint::from(6u32)
        );
        let ids = Tuple::new(
            vec![Permutation::identity(3); 3],
            Permutation::identity(3),
        )
        .unwrap();
        assert_eq!(inn_orbit_size(&g, &ids, &cfg).unwrap(), BigUint::one());
    }
}

//! Brute-force normalizer in the full symmetric group, for small degree.

use super::{PermError, PermGroup, Permutation};
use crate::config::Config;

/// Iterates all permutations of degree `n` in lexicographic image order.
fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut images: Vec<u32> = (0..n as u32).collect();
    loop {
        f(&Permutation::from_images(images.clone()).unwrap());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
            return;
        };
        let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
}

/// `N_{S_n}(G)` by scanning all of `S_n`; degree must stay within
/// `cfg.normalizer_degree_bound`. For larger degrees the caller must supply
/// normalizer generators externally.
pub fn normalizer_in_sym(group: &PermGroup, cfg: &Config) -> Result<PermGroup, PermError> {
    let n = group.degree();
    if n > cfg.normalizer_degree_bound {
        return Err(PermError::NormalizerDegree(n, cfg.normalizer_degree_bound));
    }
    let mut gens = group.generators().to_vec();
    let mut current = PermGroup::build(n, gens.clone())?;
    for_each_permutation(n, |t| {
        if current.contains(t) {
            return;
        }
        let normalizes = group
            .generators()
            .iter()
            .all(|s| group.contains(&s.conjugate_by(t)));
        if normalizes {
            gens.push(t.clone());
            current = PermGroup::build(n, gens.clone()).unwrap();
        }
    });
    Ok(current.with_name(format!("N_S{}({})", n, group.name())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn normalizer_of_a3_is_s3() {
        let g = PermGroup::build(3, vec![perm("(1,2,3)", 3)]).unwrap();
        let n = normalizer_in_sym(&g, &Config::default()).unwrap();
        assert_eq!(n.order_u64(), 6);
        assert!(n.contains_group(&g));
    }

    #[test]
    fn normalizer_of_c4_in_s4_is_dihedral() {
        let g = PermGroup::build(4, vec![perm("(1,2,3,4)", 4)]).unwrap();
        let n = normalizer_in_sym(&g, &Config::default()).unwrap();
        assert_eq!(n.order_u64(), 8);
    }

    #[test]
    fn normalizer_of_full_symmetric_group() {
        let g = PermGroup::build(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap();
        let n = normalizer_in_sym(&g, &Config::default()).unwrap();
        assert_eq!(n.order_u64(), 24);
    }

    #[test]
    fn degree_bound_enforced() {
        let g = PermGroup::build(9, vec![perm("(1,2,3,4,5,6,7,8,9)", 9)]).unwrap();
        assert!(matches!(
            normalizer_in_sym(&g, &Config::default()),
            Err(PermError::NormalizerDegree(9, 8))
        ));
    }
}

//! Permutation action on the right cosets of a subgroup.

use num_traits::ToPrimitive;

use super::{PermError, PermGroup, Permutation};
use crate::config::Config;

/// The coset action of a group on the right cosets of a core-free subgroup.
pub struct CosetAction {
    /// The image group, acting on `[G:U]` points.
    pub quotient: PermGroup,
    /// Image of each original generator, aligned with `G.generators()`.
    pub generator_images: Vec<Permutation>,
    /// Canonical representative of the coset behind each new point.
    pub coset_reps: Vec<Permutation>,
    subgroup: PermGroup,
    rep_index: std::collections::HashMap<Permutation, u32>,
}

impl CosetAction {
    /// Image of an arbitrary group element under the coset action.
    pub fn translate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        let images: Vec<u32> = self
            .coset_reps
            .iter()
            .map(|rep| {
                let canon = min_coset_rep(&self.subgroup, &rep.compose(g));
                self.rep_index
                    .get(&canon)
                    .copied()
                    .ok_or(PermError::NotAMember)
            })
            .collect::<Result<_, _>>()?;
        Permutation::from_images(images)
    }
}

/// Canonical element of the coset `U*x`: minimizes the images of U's base
/// points, level by level.
fn min_coset_rep(u: &PermGroup, x: &Permutation) -> Permutation {
    let mut rep = x.clone();
    for level in u.chain() {
        let best = level
            .orbit
            .iter()
            .copied()
            .min_by_key(|&q| rep.apply(q))
            .unwrap();
        let t = level.transversal[best as usize].as_ref().unwrap();
        rep = t.compose(&rep);
    }
    rep
}

/// Builds the action of `group` on the right cosets of the subgroup generated
/// by `subgroup_gens`. Fails if the subgroup is not contained in the group,
/// the index exceeds `cfg.orbit_cap`, or the action is not faithful.
pub fn coset_action(
    group: &PermGroup,
    subgroup_gens: &[Permutation],
    cfg: &Config,
) -> Result<CosetAction, PermError> {
    let degree = group.degree();
    for g in subgroup_gens {
        if !group.contains(g) {
            return Err(PermError::NotASubgroup(format!(
                "generator {g} lies outside the group"
            )));
        }
    }
    let u = PermGroup::build(degree, subgroup_gens.to_vec())?;
    let index = group.order() / u.order();
    let m = index
        .to_usize()
        .filter(|&m| m <= cfg.orbit_cap)
        .ok_or_else(|| PermError::EnumerationBound {
            order: index.to_string(),
            bound: cfg.orbit_cap as u64,
        })?;

    let mut reps: Vec<Permutation> = vec![min_coset_rep(&u, &Permutation::identity(degree))];
    let mut lookup: std::collections::HashMap<Permutation, u32> = Default::default();
    lookup.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); group.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        let rep = reps[head].clone();
        for (gi, s) in group.generators().iter().enumerate() {
            let canon = min_coset_rep(&u, &rep.compose(s));
            let idx = match lookup.get(&canon) {
                Some(&i) => i,
                None => {
                    let i = reps.len() as u32;
                    lookup.insert(canon.clone(), i);
                    reps.push(canon);
                    i
                }
            };
            images[gi].push(idx);
        }
        head += 1;
    }
    debug_assert_eq!(reps.len(), m);
    let generator_images: Vec<Permutation> = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<_, _>>()?;
    let quotient = PermGroup::build(m, generator_images.clone())?
        .with_name(format!("{}/cosets", group.name()));
    if quotient.order() != group.order() {
        return Err(PermError::CoreNotTrivial);
    }
    Ok(CosetAction {
        quotient,
        generator_images,
        rep_index: lookup,
        coset_reps: reps,
        subgroup: u,
    })
}

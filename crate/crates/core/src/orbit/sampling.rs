//! Random class-constrained tuples and subgroup-assisted tuple discovery.
//!
//! Small orbits are rarely hit by uniform sampling. Subgroups generated by
//! already-found tuples are therefore registered, and tuples lying inside
//! them are enumerated (or sampled) directly.

use std::collections::HashSet;

use rand::Rng;

use super::{OrbitContext, OrbitError};
use crate::braid::Tuple;
use crate::perm::{PermGroup, Permutation};

/// Draws one candidate: uniform class elements for the first `r-1` positions,
/// the forced completion for the last. `None` when the completion misses the
/// last class (the caller retries).
pub fn random_tuple<R: Rng>(ctx: &OrbitContext<'_>, rng: &mut R) -> Option<Tuple> {
    let r = ctx.tuple_len();
    let degree = ctx.degree();
    let mut entries: Vec<Permutation> = Vec::with_capacity(r);
    let mut product = Permutation::identity(degree);
    for class in &ctx.position_classes[..r - 1] {
        let u = ctx.equivalence.random_element(rng);
        let g = class.representative.conjugate_by(&u);
        product = product.compose(&g);
        entries.push(g);
    }
    let last = product.inverse().compose(&ctx.product);
    if !ctx.position_classes[r - 1].contains(&last) {
        return None;
    }
    entries.push(last);
    Some(Tuple::new(entries, ctx.product.clone()).expect("product holds by construction"))
}

/// Dedup registry of already-processed small subgroups, keyed by their full
/// element sets.
#[derive(Default)]
pub struct SubgroupRegistry {
    seen: HashSet<u64>,
}

impl SubgroupRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers the subgroup generated by `tuple` if it is small enough and
    /// new; returns every class-constrained product-`p` tuple found inside it
    /// (exhaustively when the search space is small, by sampling otherwise).
    pub fn harvest<R: Rng>(
        &mut self,
        ctx: &OrbitContext<'_>,
        tuple: &Tuple,
        rng: &mut R,
    ) -> Result<Vec<Tuple>, OrbitError> {
        let degree = ctx.degree();
        let h = PermGroup::build(degree, tuple.entries().to_vec())?;
        match u64::try_from(h.order()) {
            Ok(o) if o <= ctx.cfg.subgroup_order_cutoff => {}
            _ => return Ok(Vec::new()),
        }
        let mut elements: Vec<Permutation> = h.elements().collect();
        elements.sort_unstable();
        let mut key: u64 = 0xcbf29ce484222325;
        for e in &elements {
            for &x in e.images() {
                key ^= x as u64;
                key = key.wrapping_mul(0x100000001b3);
            }
            key = key.wrapping_mul(0x100000001b3);
        }
        if !self.seen.insert(key) {
            return Ok(Vec::new());
        }

        // class intersections per position
        let lists: Vec<Vec<Permutation>> = ctx
            .position_classes
            .iter()
            .map(|class| {
                elements
                    .iter()
                    .filter(|x| class.contains(x))
                    .cloned()
                    .collect()
            })
            .collect();
        if lists.iter().any(|l| l.is_empty()) {
            return Ok(Vec::new());
        }
        let r = ctx.tuple_len();
        let space: u128 = lists[..r - 1]
            .iter()
            .map(|l| l.len() as u128)
            .product();
        let last_set: HashSet<&Permutation> = lists[r - 1].iter().collect();
        let mut out = Vec::new();
        if space <= ctx.cfg.subgroup_enum_cap as u128 {
            // exhaustive depth-first enumeration over the first r-1 slots
            let mut prefix: Vec<Permutation> = Vec::with_capacity(r);
            let mut products = vec![Permutation::identity(degree)];
            enumerate(
                &lists,
                r,
                &ctx.product,
                &last_set,
                &mut prefix,
                &mut products,
                &mut out,
            );
        } else {
            for _ in 0..ctx.cfg.batch_size * 32 {
                let mut entries: Vec<Permutation> = Vec::with_capacity(r);
                let mut product = Permutation::identity(degree);
                for l in &lists[..r - 1] {
                    let g = l[rng.gen_range(0..l.len())].clone();
                    product = product.compose(&g);
                    entries.push(g);
                }
                let last = product.inverse().compose(&ctx.product);
                if last_set.contains(&last) {
                    entries.push(last);
                    out.push(Tuple::new(entries, ctx.product.clone()).unwrap());
                }
            }
        }
        Ok(out)
    }
}

fn enumerate(
    lists: &[Vec<Permutation>],
    r: usize,
    target: &Permutation,
    last_set: &HashSet<&Permutation>,
    prefix: &mut Vec<Permutation>,
    products: &mut Vec<Permutation>,
    out: &mut Vec<Tuple>,
) {
    let k = prefix.len();
    if k == r - 1 {
        let last = products.last().unwrap().inverse().compose(target);
        if last_set.contains(&last) {
            let mut entries = prefix.clone();
            entries.push(last);
            out.push(Tuple::new(entries, target.clone()).unwrap());
        }
        return;
    }
    for g in &lists[k] {
        products.push(products.last().unwrap().compose(g));
        prefix.push(g.clone());
        enumerate(lists, r, target, last_set, prefix, products, out);
        prefix.pop();
        products.pop();
    }
}

/// Collects tuples inside the small subgroups generated by the given known
/// tuples. One-shot form of the registry used by the main loop.
pub fn subgroup_assisted_tuples<R: Rng>(
    ctx: &OrbitContext<'_>,
    known: &[Tuple],
    rng: &mut R,
) -> Result<Vec<Tuple>, OrbitError> {
    let mut registry = SubgroupRegistry::new();
    let mut out = Vec::new();
    for t in known {
        out.extend(registry.harvest(ctx, t, rng)?);
    }
    Ok(out)
}

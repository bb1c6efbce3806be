//! Genus arithmetic: admissibility and the Riemann-Hurwitz genus of a tuple,
//! genus-zero signature search, and the reduced-curve genera for 4-tuples.
//!
//! For tuples of length 4 the braid group acts on conjugation classes of
//! product-one tuples through a quotient in which `Q1 Q3^-1` and
//! `(Q1 Q2 Q3)^2` generate a normal Klein 4-group V. The full braid orbit
//! (all class orderings) is closed under `Q1, Q2, Q3`; the set F of V-orbits
//! carries the branch cycles `gamma_0 = Q1 Q2`, `gamma_1 = Q1 Q2 Q1`,
//! `gamma_inf = Q2` of a cover of the line branched over three points, whose
//! genus the Riemann-Hurwitz formula yields.
//!
//! The "straight" variant remembers an ordering of the branch points.
//! Normalizing an ordered 4-set to (0, 1, infinity, lambda) is unique, so no
//! Klein quotient appears: the fiber over the lambda-line is a pure-braid
//! orbit of the block-ordered representatives, and the loops around
//! lambda = 0, 1, infinity act as the pure braids `Q_14`, `Q_24`, `Q_34`
//! (the moving point colliding with each anchor in turn).

use thiserror::Error;

use crate::braid::{ClassSignature, Tuple};
use crate::config::Config;
use crate::orbit::{OrbitError, TupleStore, WordSchedule};
use crate::perm::{ClassId, ConjugacyClass, PermError, PermGroup};

#[derive(Debug, Error)]
pub enum HurwitzError {
    #[error("tuple is not admissible (identity entry or intransitive)")]
    NotAdmissible,
    #[error("index sum {0} is odd; no cover has these branch cycles")]
    ParityViolation(usize),
    #[error("genus would be negative (index sum {index_sum}, points {points})")]
    NegativeGenus { index_sum: usize, points: usize },
    #[error("reduced-curve computation requires tuples of length 4, got {0}")]
    NotLengthFour(usize),
    #[error("reduced-curve computation requires product one")]
    ProductNotOne,
    #[error("branch cycles are intransitive on a component; diagnostic: {0}")]
    Intransitive(String),
    #[error("action of {word} does not respect the V-orbit partition")]
    NotBlockRespecting { word: String },
    #[error("quotient relation {0} fails on the orbit; diagnostic dump: {1}")]
    RelationFailure(&'static str, String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Genus of the cover with branch cycles `t` on `n` points, from
/// `2(n + g - 1) = sum of Ind`.
pub fn tuple_genus(t: &Tuple, n: usize) -> Result<u64, HurwitzError> {
    if !t.is_admissible() {
        return Err(HurwitzError::NotAdmissible);
    }
    let index_sum: usize = t.entries().iter().map(|e| e.index()).sum();
    if index_sum % 2 != 0 {
        return Err(HurwitzError::ParityViolation(index_sum));
    }
    let rhs = index_sum / 2 + 1;
    if rhs < n {
        return Err(HurwitzError::NegativeGenus {
            index_sum,
            points: n,
        });
    }
    Ok((rhs - n) as u64)
}

/// Whether `t` is a genus-zero system on `n` points, and whether the
/// generated group is primitive.
pub fn is_genus_zero_system(t: &Tuple, n: usize) -> (bool, Option<bool>) {
    if !t.is_admissible() {
        return (false, None);
    }
    let index_sum: usize = t.entries().iter().map(|e| e.index()).sum();
    if index_sum != 2 * (n - 1) {
        return (false, None);
    }
    let group = PermGroup::build(n, t.entries().to_vec()).expect("admissible entries");
    (true, Some(group.is_primitive()))
}

/// All block-ordered multisets of nontrivial classes, `3 <= r <= r_max`,
/// whose index sum meets the genus-zero condition `2(n-1)`. A necessary
/// condition only; the braid computation decides which signatures carry
/// generating tuples.
pub fn genus_zero_signatures(
    group: &PermGroup,
    r_max: usize,
    cfg: &Config,
) -> Result<Vec<ClassSignature>, HurwitzError> {
    genus_zero_signatures_in_range(group, 3, r_max, cfg)
}

pub fn genus_zero_signatures_in_range(
    group: &PermGroup,
    r_min: usize,
    r_max: usize,
    cfg: &Config,
) -> Result<Vec<ClassSignature>, HurwitzError> {
    let data = group.class_data(cfg).map_err(OrbitError::from)?;
    let target = 2 * (group.degree() - 1);
    let nontrivial: Vec<(ClassId, usize)> = data
        .classes
        .iter()
        .filter(|c| c.element_order > 1)
        .map(|c| (c.id, c.representative.index()))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<ClassId> = Vec::new();
    search(
        &nontrivial,
        0,
        target,
        r_min,
        r_max,
        &mut stack,
        &mut |ids: &[ClassId]| {
            let labels = ids
                .iter()
                .map(|&i| data.classes[i].label.clone())
                .collect();
            out.push(ClassSignature::new(ids.to_vec(), labels).expect("sorted ids"));
        },
    );
    Ok(out)
}

fn search(
    classes: &[(ClassId, usize)],
    from: usize,
    remaining: usize,
    r_min: usize,
    r_max: usize,
    stack: &mut Vec<ClassId>,
    emit: &mut impl FnMut(&[ClassId]),
) {
    if remaining == 0 {
        if stack.len() >= r_min {
            emit(stack);
        }
        return;
    }
    if stack.len() == r_max {
        return;
    }
    for (k, &(id, ind)) in classes.iter().enumerate().skip(from) {
        if ind > remaining {
            continue;
        }
        stack.push(id);
        search(classes, k, remaining - ind, r_min, r_max, stack, emit);
        stack.pop();
    }
}

/// Which conjugation equivalence the fiber uses: the group's own classes, or
/// an overgroup's (normalizer) classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusVariant {
    Inner,
    Normalizer,
}

/// Genus data for one connected cover component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGenus {
    pub fiber_size: usize,
    pub branch_indices: [usize; 3],
    pub genus: u64,
}

/// The reduced-curve genera attached to one braid orbit of 4-tuples.
#[derive(Clone, Debug)]
pub struct ReducedGenusReport {
    pub variant: GenusVariant,
    /// Conjugation classes of tuples in the full braid orbit, all orderings.
    pub full_orbit_size: usize,
    pub inner: CurveGenus,
    /// One entry per component of the ordered-branch-points cover.
    pub straight: Vec<CurveGenus>,
}

impl ReducedGenusReport {
    /// The straight genus. Components are permuted transitively by the braid
    /// group, hence isomorphic; this returns their common genus, or `None`
    /// in the unexpected case that they disagree.
    pub fn straight_genus(&self) -> Option<u64> {
        let first = self.straight.first()?.genus;
        self.straight
            .iter()
            .all(|c| c.genus == first)
            .then_some(first)
    }
}

// index maps are 1-based permutations of 1..=n stored as Vec<u32>
fn comp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize - 1]).collect()
}

fn inv_map(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize - 1] = i as u32 + 1;
    }
    out
}

fn identity_map(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

fn orbits_of(maps: &[&Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start as u32];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head] as usize;
            head += 1;
            for m in maps {
                let y = m[x] as usize - 1;
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y as u32);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Action induced on a partition; errors if a block's image straddles blocks.
fn induced_on_blocks(
    map: &[u32],
    block_of: &[u32],
    block_count: usize,
    word: &str,
) -> Result<Vec<u32>, HurwitzError> {
    let mut out = vec![0u32; block_count];
    for (i, &img) in map.iter().enumerate() {
        let from = block_of[i] as usize;
        let to = block_of[img as usize - 1] + 1;
        if out[from] == 0 {
            out[from] = to;
        } else if out[from] != to {
            return Err(HurwitzError::NotBlockRespecting {
                word: word.to_string(),
            });
        }
    }
    Ok(out)
}

fn map_index(map: &[u32]) -> usize {
    let n = map.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x] as usize - 1;
        }
    }
    n - cycles
}

fn rh_genus(fiber: usize, inds: [usize; 3]) -> Result<u64, HurwitzError> {
    let total: usize = inds.iter().sum();
    if total % 2 != 0 {
        return Err(HurwitzError::ParityViolation(total));
    }
    let rhs = total / 2 + 1;
    if rhs < fiber {
        return Err(HurwitzError::NegativeGenus {
            index_sum: total,
            points: fiber,
        });
    }
    Ok((rhs - fiber) as u64)
}

/// Computes the inner and straight reduced-curve genera for a closed braid
/// orbit. `equivalence` and `classes` fix the conjugation equivalence (the
/// group itself, or its normalizer with the normalizer's classes); the
/// `variant` tag records which was meant.
pub fn reduced_genus(
    equivalence: &PermGroup,
    classes: &[&ConjugacyClass],
    record: &crate::orbit::OrbitRecord,
    variant: GenusVariant,
    cfg: &Config,
) -> Result<ReducedGenusReport, HurwitzError> {
    let seed = record
        .representatives
        .first()
        .ok_or(HurwitzError::NotLengthFour(0))?;
    if seed.len() != 4 {
        return Err(HurwitzError::NotLengthFour(seed.len()));
    }
    if !seed.declared_product().is_identity() {
        return Err(HurwitzError::ProductNotOne);
    }

    // close the full braid orbit (all class orderings) under Q1, Q2, Q3
    let schedule = WordSchedule::standard(4);
    let mut store = TupleStore::new(
        equivalence.degree(),
        classes,
        &schedule,
        cfg.canon_orbit_cap,
        cfg.orbit_cap,
    );
    store.lookup_or_insert(seed).map_err(OrbitError::from)?;
    let mut q_actions: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut next: u32 = 1;
    while next <= store.len() as u32 {
        let t = store.rep(next).clone();
        for (k, action) in q_actions.iter_mut().enumerate() {
            let image = t.apply_q(k + 1).map_err(OrbitError::from)?;
            let (idx, _) = store.lookup_or_insert(&image).map_err(OrbitError::from)?;
            action.push(idx);
            if store.len() > cfg.orbit_cap {
                return Err(OrbitError::CapExceeded {
                    cap: cfg.orbit_cap,
                    checkpoint: None,
                }
                .into());
            }
        }
        next += 1;
    }
    let n = store.len();
    let [q1, q2, q3] = &q_actions;

    // the Klein 4-group acting on conjugation classes of the orbit
    let v1 = comp(q1, &inv_map(q3));
    let v123 = comp(&comp(q1, q2), q3);
    let v2 = comp(&v123, &v123);
    let dump = |m: &[u32]| -> String { format!("{:?}", &m[..m.len().min(32)]) };
    if comp(&v1, &v1) != identity_map(n) {
        return Err(HurwitzError::RelationFailure("(Q1 Q3^-1)^2 = 1", dump(&v1)));
    }
    if comp(&v2, &v2) != identity_map(n) {
        return Err(HurwitzError::RelationFailure("(Q1 Q2 Q3)^4 = 1", dump(&v2)));
    }
    if comp(&v1, &v2) != comp(&v2, &v1) {
        return Err(HurwitzError::RelationFailure("[V1, V2] = 1", dump(&v1)));
    }

    // F: V-orbits
    let v_orbit_list = orbits_of(&[&v1, &v2], n);
    let mut block_of = vec![0u32; n];
    for (b, orbit) in v_orbit_list.iter().enumerate() {
        for &x in orbit {
            block_of[x as usize] = b as u32;
        }
    }
    let f_size = v_orbit_list.len();

    // inner curve: gamma_0 = Q1 Q2, gamma_1 = Q1 Q2 Q1, gamma_inf = Q2
    let gamma0 = induced_on_blocks(&comp(q1, q2), &block_of, f_size, "Q1 Q2")?;
    let gamma1 = induced_on_blocks(&comp(&comp(q1, q2), q1), &block_of, f_size, "Q1 Q2 Q1")?;
    let gammainf = induced_on_blocks(q2, &block_of, f_size, "Q2")?;
    if comp(&gamma0, &comp(&gamma0, &gamma0)) != identity_map(f_size) {
        return Err(HurwitzError::RelationFailure("gamma0^3 = 1", dump(&gamma0)));
    }
    if comp(&gamma1, &gamma1) != identity_map(f_size) {
        return Err(HurwitzError::RelationFailure("gamma1^2 = 1", dump(&gamma1)));
    }
    if comp(&comp(&gamma0, &gamma1), &gammainf) != identity_map(f_size) {
        return Err(HurwitzError::RelationFailure(
            "gamma0 gamma1 gammainf = 1",
            dump(&gammainf),
        ));
    }
    if orbits_of(&[&gamma0, &gamma1, &gammainf], f_size).len() != 1 {
        return Err(HurwitzError::Intransitive(format!(
            "inner fiber of size {f_size} splits"
        )));
    }
    let inner_inds = [
        map_index(&gamma0),
        map_index(&gamma1),
        map_index(&gammainf),
    ];
    let inner = CurveGenus {
        fiber_size: f_size,
        branch_indices: inner_inds,
        genus: rh_genus(f_size, inner_inds)?,
    };

    // straight curve: fibers are pure-braid orbits of the block-ordered
    // representatives; the loops around lambda = 0, 1, infinity act as
    // Q_14, Q_24, Q_34 (recorded on the closed orbit)
    let pure = |name: &str| -> Result<&Vec<u32>, HurwitzError> {
        record
            .pure_names
            .iter()
            .position(|p| p == name)
            .map(|i| &record.pure_actions[i])
            .ok_or(HurwitzError::Orbit(OrbitError::MissingImage))
    };
    let a = pure("Q_1_4")?;
    let b = pure("Q_2_4")?;
    let c = inv_map(&comp(a, b));
    if pure("Q_3_4")? != &c {
        return Err(HurwitzError::RelationFailure(
            "Q_14 Q_24 Q_34 = 1 (straight)",
            dump(&c),
        ));
    }
    let mut straight = Vec::new();
    for component in orbits_of(&[a, b], record.len()) {
        let pos: std::collections::HashMap<u32, u32> = component
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k as u32))
            .collect();
        let restrict = |m: &[u32]| -> Vec<u32> {
            component
                .iter()
                .map(|&x| pos[&(m[x as usize] - 1)] + 1)
                .collect()
        };
        let (ra, rb, rc) = (restrict(a), restrict(b), restrict(&c));
        let inds = [map_index(&ra), map_index(&rb), map_index(&rc)];
        straight.push(CurveGenus {
            fiber_size: component.len(),
            branch_indices: inds,
            genus: rh_genus(component.len(), inds)?,
        });
    }

    Ok(ReducedGenusReport {
        variant,
        full_orbit_size: n,
        inner,
        straight,
    })
}

//! Dixon-Schreier closure of a braid orbit, with recorded generator actions
//! and resumable checkpoints.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use super::store::TupleStore;
use super::{OrbitContext, OrbitError};
use crate::braid::{bp_generators_named, pure_generators_named, BraidWord, ClassSignature, Tuple};
use crate::count::inn_orbit_size;
use crate::perm::PermGroup;

/// One braid orbit: canonical representatives of the conjugation orbits it
/// contains, the permutation each generator of `B_P` induces on them, the
/// same for every pure braid generator, and the per-orbit invariants.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub signature: ClassSignature,
    pub representatives: Vec<Tuple>,
    pub generator_names: Vec<String>,
    /// `generator_actions[g][k]` is the 1-based index of the image of
    /// representative `k+1` under generator `g`.
    pub generator_actions: Vec<Vec<u32>>,
    pub pure_names: Vec<String>,
    pub pure_actions: Vec<Vec<u32>>,
    pub generated_subgroup_order: BigUint,
    pub centralizer_order: BigUint,
    /// Raw tuples covered: length times the conjugation-orbit size.
    pub tuple_count: BigUint,
    pub generates_target: bool,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Breadth-first closure of the orbit of `seed` under the generators of
/// `B_P`, canonicalizing through the store.
pub fn braid_orbit(ctx: &OrbitContext<'_>, seed: &Tuple) -> Result<OrbitRecord, OrbitError> {
    braid_orbit_with_store(ctx, seed).map(|(record, _)| record)
}

pub(crate) fn braid_orbit_with_store<'c>(
    ctx: &'c OrbitContext<'_>,
    seed: &Tuple,
) -> Result<(OrbitRecord, TupleStore<'c>), OrbitError> {
    if !ctx.matches_signature(seed) {
        return Err(OrbitError::SeedMismatch);
    }
    let mut store = ctx.new_store();
    store.lookup_or_insert(seed)?;
    let record = close_over(ctx, seed, &mut store)?;
    Ok((record, store))
}

fn close_over(
    ctx: &OrbitContext<'_>,
    seed: &Tuple,
    store: &mut TupleStore<'_>,
) -> Result<OrbitRecord, OrbitError> {
    let named = bp_generators_named(&ctx.sig);
    let generator_names: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
    let words: Vec<BraidWord> = named.into_iter().map(|(_, w)| w).collect();
    let mut generator_actions: Vec<Vec<u32>> = vec![Vec::new(); words.len()];

    let mut next: u32 = 1;
    while next <= store.len() as u32 {
        let t = store.rep(next).clone();
        for (gi, word) in words.iter().enumerate() {
            let image = word.apply(&t)?;
            let (idx, _) = store.lookup_or_insert(&image)?;
            generator_actions[gi].push(idx);
            if store.len() > ctx.cfg.orbit_cap {
                let checkpoint = write_checkpoint_if_configured(ctx, store, next)?;
                return Err(OrbitError::CapExceeded {
                    cap: ctx.cfg.orbit_cap,
                    checkpoint,
                });
            }
        }
        next += 1;
    }

    // pure braid generator actions; the orbit is closed, so every image is
    // already present
    let pure = pure_generators_named(ctx.tuple_len());
    let mut pure_names = Vec::with_capacity(pure.len());
    let mut pure_actions = Vec::with_capacity(pure.len());
    for (name, word) in pure {
        let mut action = Vec::with_capacity(store.len());
        for k in 1..=store.len() as u32 {
            let image = word.apply(store.rep(k))?;
            let idx = store.lookup(&image)?.ok_or(OrbitError::MissingImage)?;
            action.push(idx);
        }
        pure_names.push(name);
        pure_actions.push(action);
    }

    let subgroup = PermGroup::build(ctx.degree(), seed.entries().to_vec())?;
    let generates_target = subgroup.order() == ctx.target.order()
        && seed.entries().iter().all(|e| ctx.target.contains(e));
    let orbit_size = inn_orbit_size(ctx.equivalence, seed, ctx.cfg)?;
    let centralizer_order = ctx.equivalence.order() / &orbit_size;
    let tuple_count = BigUint::from(store.len()) * &orbit_size;

    Ok(OrbitRecord {
        signature: ctx.sig.clone(),
        representatives: store.reps().to_vec(),
        generator_names,
        generator_actions,
        pure_names,
        pure_actions,
        generated_subgroup_order: subgroup.order().clone(),
        centralizer_order,
        tuple_count,
        generates_target,
    })
}

/// Re-verifies a record: every recorded action is a bijection, and the braid
/// relation holds between recorded actions of adjacent elementary generators.
pub fn verify_record(record: &OrbitRecord) -> Result<(), String> {
    let n = record.representatives.len();
    let all = record
        .generator_actions
        .iter()
        .zip(&record.generator_names)
        .chain(record.pure_actions.iter().zip(&record.pure_names));
    for (action, name) in all {
        if action.len() != n {
            return Err(format!("action {name} has wrong length"));
        }
        let mut seen = vec![false; n];
        for &img in action {
            if img == 0 || img as usize > n || seen[img as usize - 1] {
                return Err(format!("action {name} is not a bijection"));
            }
            seen[img as usize - 1] = true;
        }
    }
    // adjacent elementary generators recorded together must satisfy the
    // braid relation
    for i in 0..record.generator_names.len() {
        for j in 0..record.generator_names.len() {
            let (a, b) = (&record.generator_names[i], &record.generator_names[j]);
            let (qa, qb) = (parse_elementary(a), parse_elementary(b));
            if let (Some(x), Some(y)) = (qa, qb) {
                if y == x + 1 {
                    let pa = &record.generator_actions[i];
                    let pb = &record.generator_actions[j];
                    let lhs = compose3(pa, pb, pa);
                    let rhs = compose3(pb, pa, pb);
                    if lhs != rhs {
                        return Err(format!("braid relation fails between {a} and {b}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn parse_elementary(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("Q_")?;
    if rest.contains('_') {
        return None;
    }
    rest.parse().ok()
}

fn compose3(a: &[u32], b: &[u32], c: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|&x| c[b[x as usize - 1] as usize - 1])
        .collect()
}

// ---------------------------------------------------------------------------
// checkpoints
// ---------------------------------------------------------------------------

fn write_checkpoint_if_configured(
    ctx: &OrbitContext<'_>,
    store: &TupleStore<'_>,
    queue: u32,
) -> Result<Option<PathBuf>, OrbitError> {
    let Some(dir) = &ctx.checkpoint_dir else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!(
        "checkpoint_{}.braid",
        ctx.sig.labels.join("_").replace(',', "_")
    ));
    let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(f, "checkpoint v1")?;
    writeln!(f, "group {}", ctx.equivalence.name())?;
    writeln!(f, "degree {}", ctx.degree())?;
    writeln!(f, "signature {}", ctx.sig.labels.join(","))?;
    writeln!(f, "schedule {}", ctx.schedule.version)?;
    writeln!(f, "rng {} {}", ctx.rng_header.0, ctx.rng_header.1)?;
    writeln!(f, "queue {queue}")?;
    writeln!(f, "representatives {}", store.len())?;
    for k in 1..=store.len() as u32 {
        writeln!(f, "{}", store.rep(k).to_line())?;
    }
    writeln!(f, "end")?;
    Ok(Some(path))
}

/// Resumes a checkpointed closure: the stored representatives are re-seeded
/// into a fresh store (insertion order is deterministic, so indices are
/// stable) and the closure continues under the given, presumably raised, cap.
pub fn resume_braid_orbit(
    ctx: &OrbitContext<'_>,
    path: &Path,
) -> Result<OrbitRecord, OrbitError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let bad = |msg: &str| OrbitError::BadCheckpoint(msg.to_string());
    if lines.next() != Some("checkpoint v1") {
        return Err(bad("missing header"));
    }
    let mut degree = 0usize;
    let mut sig_labels: Vec<String> = Vec::new();
    let mut count = 0usize;
    for line in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("degree ") {
            degree = rest.parse().map_err(|_| bad("degree"))?;
        } else if let Some(rest) = line.strip_prefix("signature ") {
            sig_labels = rest.split(',').map(|s| s.to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("schedule ") {
            if rest != ctx.schedule.version {
                return Err(bad("schedule version mismatch"));
            }
        } else if let Some(rest) = line.strip_prefix("representatives ") {
            count = rest.parse().map_err(|_| bad("representative count"))?;
            break;
        }
    }
    if degree != ctx.degree() || sig_labels != ctx.sig.labels {
        return Err(bad("checkpoint does not match the context"));
    }
    let mut reps = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| bad("truncated"))?;
        reps.push(Tuple::parse_line(line, degree)?);
    }
    let seed = reps.first().cloned().ok_or_else(|| bad("empty"))?;
    if !ctx.matches_signature(&seed) {
        return Err(OrbitError::SeedMismatch);
    }
    let mut store = ctx.new_store();
    for t in &reps {
        store.lookup_or_insert(t)?;
    }
    close_over(ctx, &seed, &mut store)
}

//! The main loop: batches of random tuples seed new orbit closures until the
//! structure-constant countdown (or the chosen stop rule) says every tuple is
//! accounted for.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use super::closure::braid_orbit_with_store;
use super::sampling::{random_tuple, SubgroupRegistry};
use super::{OrbitContext, OrbitError, OrbitRecord};
use crate::count::structure_constant_with_product;

/// Stop rule for the main loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// Run until the countdown reaches zero: every tuple accounted for.
    Exact,
    /// Stop once fewer tuples remain than `|G/Z(G)|`; no orbit of generating
    /// tuples can still be missing then.
    Threshold,
    /// No countdown; stop after a configured number of idle rounds.
    Unlimited,
}

#[derive(Debug)]
pub struct RunResult {
    pub orbits: Vec<OrbitRecord>,
    /// Exact cardinality of the tuple set, when the mode required it.
    pub structure_constant: Option<BigUint>,
    /// Remaining count after each newly found orbit, in discovery order.
    pub remaining_trace: Vec<BigUint>,
    pub rounds: usize,
}

impl RunResult {
    /// Orbits of tuples generating the target group.
    pub fn generating_orbits(&self) -> impl Iterator<Item = &OrbitRecord> {
        self.orbits.iter().filter(|o| o.generates_target)
    }
}

/// Repeatedly samples a batch of random tuples, closes a braid orbit for each
/// sample not yet accounted for, and adjusts the countdown, interleaving
/// subgroup-assisted tuples to reach small orbits.
pub fn all_braid_orbits<R: Rng>(
    ctx: &OrbitContext<'_>,
    mode: CountMode,
    rng: &mut R,
) -> Result<RunResult, OrbitError> {
    let countdown_needed = matches!(mode, CountMode::Exact | CountMode::Threshold);
    let structure_constant = if countdown_needed {
        Some(structure_constant_with_product(
            ctx.equivalence,
            &ctx.sig,
            &ctx.product,
            ctx.cfg,
        )?)
    } else {
        None
    };
    let threshold = if mode == CountMode::Threshold {
        ctx.equivalence.order() / ctx.equivalence.center_order(ctx.cfg)?
    } else {
        BigUint::zero()
    };

    let mut remaining = structure_constant.clone();
    let mut remaining_trace = Vec::new();
    let mut orbits: Vec<OrbitRecord> = Vec::new();
    let mut stores: Vec<super::store::TupleStore<'_>> = Vec::new();
    let mut registry = SubgroupRegistry::new();
    let mut rounds = 0usize;
    let mut idle_rounds = 0usize;

    let stop = |remaining: &Option<BigUint>, idle: usize| -> bool {
        match mode {
            CountMode::Exact => remaining.as_ref().unwrap().is_zero(),
            CountMode::Threshold => remaining.as_ref().unwrap() < &threshold,
            CountMode::Unlimited => idle >= ctx.cfg.idle_rounds,
        }
    };

    while !stop(&remaining, idle_rounds) {
        rounds += 1;
        if rounds > ctx.cfg.max_rounds {
            return Err(OrbitError::RoundCap(ctx.cfg.max_rounds));
        }
        // collect a batch of random tuples
        let mut work: VecDeque<crate::braid::Tuple> = VecDeque::new();
        let mut attempts = 0usize;
        while work.len() < ctx.cfg.batch_size && attempts < ctx.cfg.batch_size * 10_000 {
            attempts += 1;
            if let Some(t) = random_tuple(ctx, rng) {
                work.push_back(t);
            }
        }
        let mut found_this_round = false;
        while let Some(t) = work.pop_front() {
            let mut known = false;
            for s in stores.iter_mut() {
                if s.lookup(&t)?.is_some() {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let (record, store) = braid_orbit_with_store(ctx, &t)?;
            if let Some(rem) = remaining.as_mut() {
                if &record.tuple_count > rem {
                    return Err(OrbitError::AccountingUnderflow);
                }
                *rem -= &record.tuple_count;
                remaining_trace.push(rem.clone());
            }
            if std::env::var_os("BRAID_TRACE").is_some() {
                eprintln!(
                    "trace: round {rounds} orbit {} length {} subgroup {} tuples {} remaining {}",
                    orbits.len() + 1,
                    record.len(),
                    record.generated_subgroup_order,
                    record.tuple_count,
                    remaining
                        .as_ref()
                        .map(|r| r.to_string())
                        .unwrap_or_default()
                );
            }
            // register the generated subgroup; tuples found inside it join
            // the work queue so small orbits surface without random luck
            for extra in registry.harvest(ctx, &t, rng)? {
                work.push_back(extra);
            }
            orbits.push(record);
            stores.push(store);
            found_this_round = true;
            if stop(&remaining, idle_rounds) {
                break;
            }
        }
        idle_rounds = if found_this_round { 0 } else { idle_rounds + 1 };
    }

    Ok(RunResult {
        orbits,
        structure_constant,
        remaining_trace,
        rounds,
    })
}

//! Braid orbit enumeration: fingerprinted tuple storage, Dixon-Schreier
//! closure, random tuple generation with subgroup assistance, and the main
//! loop with structure-constant countdown.

mod closure;
mod fingerprint;
mod main_loop;
mod sampling;
mod store;

pub use closure::{braid_orbit, resume_braid_orbit, verify_record, OrbitRecord};
pub use fingerprint::{Fingerprint, WordSchedule, SCHEDULE_VERSION};
pub use main_loop::{all_braid_orbits, CountMode, RunResult};
pub use sampling::{random_tuple, subgroup_assisted_tuples, SubgroupRegistry};
pub use store::TupleStore;

use std::path::PathBuf;

use thiserror::Error;

use crate::braid::{BraidError, ClassSignature, Tuple};
use crate::config::Config;
use crate::count::CountError;
use crate::perm::{ConjugacyClass, PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("tuple entry belongs to none of the store's classes")]
    EntryClassNotInStore,
    #[error("seed tuple does not match the signature")]
    SeedMismatch,
    #[error("orbit exceeded the representative cap of {cap}{}", checkpoint.as_ref().map(|p| format!("; checkpoint written to {}", p.display())).unwrap_or_default())]
    CapExceeded {
        cap: usize,
        checkpoint: Option<PathBuf>,
    },
    #[error("closed orbit is missing the image of a recorded word")]
    MissingImage,
    #[error("accounting underflow: orbits cover more tuples than the structure constant")]
    AccountingUnderflow,
    #[error("main loop exceeded {0} rounds")]
    RoundCap(usize),
    #[error("checkpoint file malformed: {0}")]
    BadCheckpoint(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Everything a braid-orbit computation needs: the equivalence group for
/// tuple storage (the group itself, or an overgroup in normalizer mode), the
/// target group for the "generates" check, per-position class handles, the
/// frozen word schedule, and the declared tuple product.
pub struct OrbitContext<'a> {
    pub equivalence: &'a PermGroup,
    pub target: &'a PermGroup,
    pub sig: ClassSignature,
    pub position_classes: Vec<&'a ConjugacyClass>,
    pub store_classes: Vec<&'a ConjugacyClass>,
    pub schedule: WordSchedule,
    pub product: Permutation,
    pub cfg: &'a Config,
    pub checkpoint_dir: Option<PathBuf>,
    /// (seed, stream position) recorded into checkpoint headers
    pub rng_header: (u64, u128),
}

impl<'a> OrbitContext<'a> {
    /// Context for a product-one run over a block-ordered signature, with the
    /// group itself as the equivalence group.
    pub fn for_signature(
        group: &'a PermGroup,
        sig: ClassSignature,
        cfg: &'a Config,
    ) -> Result<Self, OrbitError> {
        let data = group.class_data(cfg)?;
        let position_classes: Vec<&ConjugacyClass> =
            sig.class_ids.iter().map(|&id| &data.classes[id]).collect();
        let mut store_classes: Vec<&ConjugacyClass> = Vec::new();
        for c in &position_classes {
            if !store_classes.iter().any(|k| k.id == c.id) {
                store_classes.push(c);
            }
        }
        let schedule = WordSchedule::standard(sig.len());
        Ok(OrbitContext {
            equivalence: group,
            target: group,
            position_classes,
            store_classes,
            schedule,
            product: group.identity(),
            cfg,
            checkpoint_dir: None,
            rng_header: (cfg.seed, 0),
            sig,
        })
    }

    /// Context built from standalone class handles (used when full class data
    /// is out of enumeration bounds). Classes are aligned with the signature.
    pub fn from_handles(
        group: &'a PermGroup,
        sig: ClassSignature,
        position_classes: Vec<&'a ConjugacyClass>,
        cfg: &'a Config,
    ) -> Self {
        let mut store_classes: Vec<&ConjugacyClass> = Vec::new();
        for c in &position_classes {
            if !store_classes
                .iter()
                .any(|k| std::ptr::eq(*k as *const _, *c as *const _))
            {
                store_classes.push(c);
            }
        }
        let schedule = WordSchedule::standard(sig.len());
        OrbitContext {
            equivalence: group,
            target: group,
            position_classes,
            store_classes,
            schedule,
            product: group.identity(),
            cfg,
            checkpoint_dir: None,
            rng_header: (cfg.seed, 0),
            sig,
        }
    }

    /// Sets the generation-check target (normalizer mode: the equivalence
    /// group is the overgroup, the target the original group).
    pub fn with_target(mut self, target: &'a PermGroup) -> Self {
        self.target = target;
        self
    }

    pub fn with_product(mut self, product: Permutation) -> Self {
        self.product = product;
        self
    }

    pub fn with_checkpoint_dir(mut self, dir: PathBuf) -> Self {
        self.checkpoint_dir = Some(dir);
        self
    }

    pub fn tuple_len(&self) -> usize {
        self.sig.len()
    }

    pub fn degree(&self) -> usize {
        self.equivalence.degree()
    }

    /// Verifies that a tuple matches the signature position by position.
    pub fn matches_signature(&self, t: &Tuple) -> bool {
        t.len() == self.sig.len()
            && t.declared_product() == &self.product
            && t.entries()
                .iter()
                .zip(&self.position_classes)
                .all(|(e, c)| c.contains(e))
    }

    pub(crate) fn new_store(&self) -> TupleStore<'_> {
        TupleStore::new(
            self.degree(),
            &self.store_classes,
            &self.schedule,
            self.cfg.canon_orbit_cap,
            self.cfg.orbit_cap,
        )
    }
}

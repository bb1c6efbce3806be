//! Fingerprint-hashed storage of tuples up to simultaneous conjugation.
//!
//! Tuples are normalized before storage: the first entry is conjugated onto
//! its class representative, then the second entry onto a per-run canonical
//! element of its orbit under the centralizer of the first. Equivalent tuples
//! then agree in their first two entries, and the remaining conjugacy test
//! runs inside the (small) simultaneous centralizer of those two.

use std::collections::HashMap;

use super::fingerprint::{Fingerprint, WordSchedule};
use super::OrbitError;
use crate::braid::Tuple;
use crate::perm::{conjugation_orbit, simultaneous_transporter, ConjugacyClass, Permutation};

struct CanonOrbitInfo {
    /// Generators of the centralizer of (class rep, canonical element).
    stab_gens: Vec<Permutation>,
}

#[derive(Default)]
struct CanonTable {
    /// element -> (orbit id, shift) with `element^shift = canonical element`
    map: HashMap<Permutation, (u32, Permutation)>,
    orbits: Vec<CanonOrbitInfo>,
}

struct StoreKit<'a> {
    class: &'a ConjugacyClass,
    canon: CanonTable,
    /// set when a canonicalization orbit exceeded the cap; lookups then fall
    /// back to pairwise conjugacy tests inside the full centralizer
    canon_disabled: bool,
}

/// A hash-addressed store of canonical tuple representatives, one per orbit
/// of the equivalence group (inner conjugation, or an overgroup's).
/// Indices are 1-based.
pub struct TupleStore<'a> {
    degree: usize,
    kits: Vec<StoreKit<'a>>,
    schedule: &'a WordSchedule,
    reps: Vec<Tuple>,
    fingerprints: Vec<Fingerprint>,
    buckets: HashMap<u64, Vec<u32>>,
    canon_cap: usize,
    transporter_cap: usize,
}

impl<'a> TupleStore<'a> {
    pub fn new(
        degree: usize,
        classes: &[&'a ConjugacyClass],
        schedule: &'a WordSchedule,
        canon_cap: usize,
        transporter_cap: usize,
    ) -> Self {
        TupleStore {
            degree,
            kits: classes
                .iter()
                .map(|class| StoreKit {
                    class,
                    canon: CanonTable::default(),
                    canon_disabled: false,
                })
                .collect(),
            schedule,
            reps: Vec::new(),
            fingerprints: Vec::new(),
            buckets: HashMap::new(),
            canon_cap,
            transporter_cap,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// 1-based access to the stored canonical representatives.
    pub fn rep(&self, index: u32) -> &Tuple {
        &self.reps[index as usize - 1]
    }

    pub fn reps(&self) -> &[Tuple] {
        &self.reps
    }

    fn kit_of(&self, entry: &Permutation) -> Result<usize, OrbitError> {
        self.kits
            .iter()
            .position(|k| k.class.contains(entry))
            .ok_or(OrbitError::EntryClassNotInStore)
    }

    /// Conjugates the tuple so its first entry is the class representative
    /// and its second the canonical element of its centralizer orbit.
    fn normalize(&mut self, t: &Tuple) -> Result<(Tuple, usize, Option<u32>), OrbitError> {
        let kit_idx = self.kit_of(&t.entries()[0])?;
        let u = self.kits[kit_idx]
            .class
            .transporter_from_rep(&t.entries()[0])
            .expect("entry verified in class");
        let t1 = t.conjugate_by(&u.inverse());
        debug_assert_eq!(
            t1.entries()[0],
            self.kits[kit_idx].class.representative
        );
        if self.kits[kit_idx].canon_disabled {
            return Ok((t1, kit_idx, None));
        }
        let x = t1.entries()[1].clone();
        if let Some((oid, shift)) = self.kits[kit_idx].canon.map.get(&x) {
            let oid = *oid;
            let t2 = t1.conjugate_by(&shift.clone());
            return Ok((t2, kit_idx, Some(oid)));
        }
        // expand a new canonicalization orbit rooted at x
        let centralizer_gens = self.kits[kit_idx].class.centralizer.generators().to_vec();
        match conjugation_orbit(self.degree, &centralizer_gens, &x, self.canon_cap) {
            Ok(orbit) => {
                let kit = &mut self.kits[kit_idx];
                let oid = kit.canon.orbits.len() as u32;
                for (elem, trans) in orbit.elements.iter().zip(&orbit.transporters) {
                    kit.canon
                        .map
                        .insert(elem.clone(), (oid, trans.inverse()));
                }
                kit.canon.orbits.push(CanonOrbitInfo {
                    stab_gens: orbit.stabilizer_gens,
                });
                Ok((t1, kit_idx, Some(oid)))
            }
            Err(_) => {
                self.kits[kit_idx].canon_disabled = true;
                Ok((t1, kit_idx, None))
            }
        }
    }

    fn probe(
        &mut self,
        t: &Tuple,
        insert: bool,
    ) -> Result<(Option<u32>, Option<u32>), OrbitError> {
        let (norm, kit_idx, oid) = self.normalize(t)?;
        let fp = self.schedule.fingerprint(&norm);
        let addr = fp.address();
        let candidates: Vec<u32> = self.buckets.get(&addr).cloned().unwrap_or_default();
        for cand in candidates {
            let stored = &self.reps[cand as usize - 1];
            if self.fingerprints[cand as usize - 1] != fp {
                continue;
            }
            if stored.entries()[0] != norm.entries()[0] {
                continue;
            }
            let matched = match oid {
                Some(oid) => {
                    if stored.entries()[1] != norm.entries()[1] {
                        continue;
                    }
                    let stab = &self.kits[kit_idx].canon.orbits[oid as usize].stab_gens;
                    let gens = if stab.is_empty() {
                        vec![Permutation::identity(self.degree)]
                    } else {
                        stab.clone()
                    };
                    simultaneous_transporter(
                        self.degree,
                        &gens,
                        &stored.entries()[2..],
                        &norm.entries()[2..],
                        self.transporter_cap,
                    )?
                    .is_some()
                }
                None => {
                    let gens = self.kits[kit_idx].class.centralizer.generators().to_vec();
                    simultaneous_transporter(
                        self.degree,
                        &gens,
                        &stored.entries()[1..],
                        &norm.entries()[1..],
                        self.transporter_cap,
                    )?
                    .is_some()
                }
            };
            if matched {
                return Ok((Some(cand), None));
            }
        }
        if !insert {
            return Ok((None, None));
        }
        let index = self.reps.len() as u32 + 1;
        self.reps.push(norm);
        self.fingerprints.push(fp);
        self.buckets.entry(addr).or_default().push(index);
        Ok((None, Some(index)))
    }

    /// Finds the stored representative equivalent to `t`, inserting `t` as a
    /// new canonical representative if none exists. Returns the 1-based index
    /// and whether an insertion happened.
    pub fn lookup_or_insert(&mut self, t: &Tuple) -> Result<(u32, bool), OrbitError> {
        match self.probe(t, true)? {
            (Some(found), _) => Ok((found, false)),
            (None, Some(inserted)) => Ok((inserted, true)),
            _ => unreachable!(),
        }
    }

    /// Membership-only probe (may still grow canonicalization tables).
    pub fn lookup(&mut self, t: &Tuple) -> Result<Option<u32>, OrbitError> {
        Ok(self.probe(t, false)?.0)
    }
}

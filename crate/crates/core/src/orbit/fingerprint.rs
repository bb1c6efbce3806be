//! Conjugation-invariant fingerprints: orders of fixed words evaluated in
//! the tuple entries, hashed into a bucket address.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::Tuple;
use crate::perm::Permutation;

/// A frozen list of eight words in the tuple entries: the first four single
/// letters (padded cyclically for short tuples), plus four short compositions
/// generated pseudo-randomly once from a fixed seed. The version tag guards
/// compatibility of stored data.
#[derive(Clone, Debug)]
pub struct WordSchedule {
    pub version: &'static str,
    tuple_len: usize,
    words: Vec<Vec<(u8, i8)>>,
}

pub const SCHEDULE_VERSION: &str = "v1";
const SCHEDULE_SEED: u64 = 0xb7a1d_0001;

impl WordSchedule {
    pub fn standard(tuple_len: usize) -> WordSchedule {
        assert!(tuple_len >= 2, "tuples have at least two entries");
        let mut words: Vec<Vec<(u8, i8)>> = Vec::with_capacity(8);
        for k in 0..4usize {
            words.push(vec![((k % tuple_len) as u8, 1)]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SCHEDULE_SEED ^ tuple_len as u64);
        for k in 0..4usize {
            let len = 2 + (k % 2);
            let word: Vec<(u8, i8)> = (0..len)
                .map(|_| {
                    let entry = rng.gen_range(0..tuple_len) as u8;
                    let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
                    (entry, exp)
                })
                .collect();
            words.push(word);
        }
        WordSchedule {
            version: SCHEDULE_VERSION,
            tuple_len,
            words,
        }
    }

    pub fn tuple_len(&self) -> usize {
        self.tuple_len
    }

    pub fn fingerprint(&self, t: &Tuple) -> Fingerprint {
        debug_assert_eq!(t.len(), self.tuple_len);
        let degree = t.degree();
        let values = self
            .words
            .iter()
            .map(|word| {
                let mut value = Permutation::identity(degree);
                for &(entry, exp) in word {
                    let e = &t.entries()[entry as usize];
                    if exp > 0 {
                        value = value.compose(e);
                    } else {
                        value = value.compose(&e.inverse());
                    }
                }
                value.order()
            })
            .collect();
        Fingerprint { values }
    }
}

/// Orders of the scheduled words evaluated on a tuple. Tuples with distinct
/// fingerprints cannot be conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub values: Vec<u64>,
}

impl Fingerprint {
    /// Hash-table address: fixed multiply-xor mixing of the entries.
    pub fn address(&self) -> u64 {
        let mut h: u64 = 0x51_7cc1b7_2722_0a95;
        for &v in &self.values {
            h ^= v.wrapping_add(0x9e3779b97f4a7c15);
            h = h.wrapping_mul(0xff51afd7ed558ccd);
            h ^= h >> 33;
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn conjugated_tuple_has_identical_fingerprint() {
        let t = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(2,3)", 3),
            perm("(1,2,3)", 3),
        ])
        .unwrap();
        let schedule = WordSchedule::standard(3);
        let fp = schedule.fingerprint(&t);
        for c in ["(1,2)", "(1,3)", "(1,2,3)"] {
            let conj = t.conjugate_by(&perm(c, 3));
            assert_eq!(schedule.fingerprint(&conj), fp);
        }
    }

    #[test]
    fn single_letters_expose_entry_orders() {
        let t = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(2,3)", 3),
            perm("(1,2,3)", 3),
        ])
        .unwrap();
        let schedule = WordSchedule::standard(3);
        let fp = schedule.fingerprint(&t);
        assert_eq!(&fp.values[..4], &[2, 2, 3, 2]);
    }

    #[test]
    fn different_class_signatures_differ() {
        let schedule = WordSchedule::standard(3);
        let a = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(2,3)", 3),
            perm("(1,2,3)", 3),
        ])
        .unwrap();
        let b = Tuple::with_product_one(vec![
            perm("(1,2,3)", 3),
            perm("(1,2,3)", 3),
            perm("(1,2,3)", 3),
        ])
        .unwrap();
        assert_ne!(schedule.fingerprint(&a), schedule.fingerprint(&b));
    }

    #[test]
    fn schedule_is_frozen() {
        let a = WordSchedule::standard(4);
        let b = WordSchedule::standard(4);
        let t = Tuple::with_product_one(vec![
            perm("(1,2)", 3),
            perm("(1,2)", 3),
            perm("(1,3)", 3),
            perm("(1,3)", 3),
        ])
        .unwrap();
        assert_eq!(a.fingerprint(&t), b.fingerprint(&t));
        assert_eq!(a.version, "v1");
    }
}

//! Reduced-curve genus checks for 4-tuples against known values.

mod common;

use braid_orbits::braid::ClassSignature;
use braid_orbits::config::Config;
use braid_orbits::hurwitz::{genus_zero_signatures, reduced_genus, GenusVariant};
use braid_orbits::orbit::{all_braid_orbits, CountMode, OrbitContext};
use braid_orbits::perm::{ClassId, PermGroup};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig_of(group: &PermGroup, labels: &[&str], cfg: &Config) -> ClassSignature {
    let data = group.class_data(cfg).unwrap();
    let ids: Vec<ClassId> = labels
        .iter()
        .map(|l| data.by_label(l).expect("label exists").id)
        .collect();
    ClassSignature::new(ids, labels.iter().map(|s| s.to_string()).collect()).unwrap()
}

/// Runs one signature and returns (orbit length, inner genus, straight genus)
/// for every generating orbit.
fn genus_rows(group: &PermGroup, labels: &[&str], cfg: &Config) -> Vec<(usize, u64, Option<u64>)> {
    let sig = sig_of(group, labels, cfg);
    let ctx = OrbitContext::for_signature(group, sig, cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let result = all_braid_orbits(&ctx, CountMode::Exact, &mut rng).unwrap();
    let mut rows = Vec::new();
    for orbit in result.generating_orbits() {
        let report = reduced_genus(
            group,
            &ctx.store_classes,
            orbit,
            GenusVariant::Inner,
            cfg,
        )
        .unwrap();
        rows.push((orbit.len(), report.inner.genus, report.straight_genus()));
    }
    rows.sort();
    rows
}

#[test]
fn s3_quadruple_genus_zero_both_ways() {
    let g = s3();
    let cfg = Config::default();
    let rows = genus_rows(&g, &["2A", "2A", "2A", "2A"], &cfg);
    assert_eq!(rows, vec![(4, 0, Some(0))]);
}

#[test]
fn l3_2_length_four_rows_match_known_genera() {
    let g = psl(3, 2, "l3_2_d7");
    let cfg = Config::default();
    // (classes, orbit length, inner genus, straight genus)
    let expected: Vec<(&[&str], usize, u64, u64)> = vec![
        (&["2A", "2A", "2A", "7A"], 7, 0, 0),
        (&["2A", "2A", "2A", "7B"], 7, 0, 0),
        (&["2A", "2A", "3A", "3A"], 30, 0, 2),
        (&["2A", "2A", "3A", "4A"], 24, 0, 1),
        (&["2A", "2A", "4A", "4A"], 24, 0, 1),
    ];
    for (labels, length, genus, straight) in expected {
        let rows = genus_rows(&g, labels, &cfg);
        assert_eq!(
            rows,
            vec![(length, genus, Some(straight))],
            "signature {labels:?}"
        );
    }
}

#[test]
fn genus_zero_signature_search_l3_2() {
    let g = psl(3, 2, "l3_2_d7");
    let cfg = Config::default();
    let sigs = genus_zero_signatures(&g, 6, &cfg).unwrap();
    let labels: Vec<String> = sigs.iter().map(|s| s.labels.join(",")).collect();
    // all fifteen table rows are present
    for expected in [
        "2A,2A,2A,2A,2A,2A",
        "2A,2A,2A,2A,3A",
        "2A,2A,2A,2A,4A",
        "2A,2A,2A,7A",
        "2A,2A,2A,7B",
        "2A,2A,3A,3A",
        "2A,2A,3A,4A",
        "2A,2A,4A,4A",
        "2A,3A,7A",
        "2A,3A,7B",
        "2A,4A,7A",
        "2A,4A,7B",
        "3A,3A,4A",
        "3A,4A,4A",
        "4A,4A,4A",
    ] {
        assert!(labels.contains(&expected.to_string()), "missing {expected}");
    }
    // no signature contains the identity class
    assert!(sigs.iter().all(|s| s.labels.iter().all(|l| l != "1A")));
    // index sums all equal 2(n-1) = 12
    let data = g.class_data(&cfg).unwrap();
    for sig in &sigs {
        let total: usize = sig
            .class_ids
            .iter()
            .map(|&id| data.classes[id].representative.index())
            .sum();
        assert_eq!(total, 12);
    }
}

//! The shipped group files under `fixtures/` must match the from-scratch
//! constructions. `regenerate_fixtures` rewrites them (run explicitly with
//! `--ignored` after changing a construction).

mod common;

use std::fmt::Write as _;
use std::path::PathBuf;

use braid_orbits::perm::PermGroup;
use common::*;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn group_file_contents(group: &PermGroup) -> String {
    let mut out = String::new();
    writeln!(out, "degree {}", group.degree()).unwrap();
    for g in group.generators() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

/// (file stem, construction, expected order)
fn light_fixtures() -> Vec<(&'static str, PermGroup, u64)> {
    vec![
        ("s3", s3(), 6),
        ("s4", sym(4, "s4"), 24),
        ("a4", alt(4, "a4"), 12),
        ("a5", alt(5, "a5"), 60),
        ("s5", sym(5, "s5"), 120),
        ("d5", dihedral(5, "d5"), 10),
        ("a7", alt(7, "a7"), 2_520),
        ("l3_2_d7", psl(3, 2, "l3_2_d7"), 168),
        ("l2_11_d11", l2_11_deg11(), 660),
        ("m11_d12", m11_deg12(), 7_920),
        ("m12_d12", m12_deg12(), 95_040),
        ("l3_3_d13", psl(3, 3, "l3_3_d13"), 5_616),
        ("l3_4_d21", psl(3, 4, "l3_4_d21"), 20_160),
    ]
}

fn heavy_fixtures() -> Vec<(&'static str, PermGroup, u64)> {
    vec![
        ("l5_2_d31", psl(5, 2, "l5_2_d31"), 9_999_360),
        ("s6_2_d28", sp6_2_on_28(), 1_451_520),
        ("m24_d24", m24(), 244_823_040),
        ("m23_d23", m23(), 10_200_960),
    ]
}

#[test]
fn shipped_fixtures_match_constructions() {
    for (stem, group, order) in light_fixtures() {
        assert_eq!(group.order_u64(), order, "{stem}");
        let path = fixture_dir().join(format!("{stem}.grp"));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing fixture {}", path.display()));
        assert_eq!(text, group_file_contents(&group), "{stem} fixture drifted");
    }
}

#[test]
#[ignore = "heavy fixture verification; run with --ignored"]
fn shipped_heavy_fixtures_match_constructions() {
    for (stem, group, order) in heavy_fixtures() {
        assert_eq!(group.order_u64(), order, "{stem}");
        let path = fixture_dir().join(format!("{stem}.grp"));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing fixture {}", path.display()));
        assert_eq!(text, group_file_contents(&group), "{stem} fixture drifted");
    }
}

#[test]
#[ignore = "rewrites the fixture files"]
fn regenerate_fixtures() {
    std::fs::create_dir_all(fixture_dir()).unwrap();
    for (stem, group, order) in light_fixtures().into_iter().chain(heavy_fixtures()) {
        assert_eq!(group.order_u64(), order, "{stem}");
        let path = fixture_dir().join(format!("{stem}.grp"));
        std::fs::write(&path, group_file_contents(&group)).unwrap();
        println!("wrote {}", path.display());
    }
}

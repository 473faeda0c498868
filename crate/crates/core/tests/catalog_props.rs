mod support;

use std::collections::HashMap;

use semiwb::catalog::{self, a0_identity_oracle, manifest, presentation_of_c, verify_presentation};
use semiwb::semigroup::{is_isomorphic, subsemigroup_generated};
use semiwb::words::satisfies;
use semiwb::{FiniteSemigroup, Identity};
use support::{all_words, value_vector};

// sum of (a*n + b + 1) * table[a][b] mod 1_000_003, computed outside Rust
// straight from the transcribed tables
const CHECKSUMS: [(&str, usize, usize); 12] = [
    ("B", 11, 53858),
    ("C", 11, 9671),
    ("A0", 4, 118),
    ("N2", 2, 0),
    ("U1", 2, 4),
    ("L2", 2, 7),
    ("R2", 2, 6),
    ("Z2", 2, 5),
    ("Z3", 3, 45),
    ("Z4", 4, 204),
    ("MONO_2_2", 3, 65),
    ("NIL3", 3, 10),
];

fn checksum(s: &FiniteSemigroup) -> usize {
    let n = s.order();
    s.elements().flat_map(|a| s.elements().map(move |b| (a, b))).map(|(a, b)| (a * n + b + 1) * s.mul(a, b)).sum::<usize>()
        % 1_000_003
}

#[test]
fn fixtures_match_checksums() {
    let names: Vec<String> = manifest().into_iter().map(|e| e.name).collect();
    assert_eq!(names.len(), CHECKSUMS.len());
    for (name, order, sum) in CHECKSUMS {
        assert!(names.iter().any(|n| n == name));
        let s = catalog::fixture(name).unwrap();
        assert_eq!(s.order(), order, "{name}");
        assert_eq!(checksum(&s), sum, "{name}");
    }
}

#[test]
fn b_and_c_satisfy_their_laws() {
    let id = |s: &str| s.parse::<Identity>().unwrap();
    assert!(catalog::table_b().is_associative());
    assert!(catalog::table_c().is_associative());
    assert!(satisfies(&catalog::table_b(), &id("xyx=xyy")).unwrap());
    assert!(satisfies(&catalog::table_c(), &id("xyx=yxy")).unwrap());
    assert!(!satisfies(&catalog::table_c(), &id("xyx=xyy")).unwrap());
}

#[test]
fn a0_is_generated_by_two_idempotents_of_c() {
    let sub = subsemigroup_generated(&catalog::table_c(), &[1, 3]).unwrap();
    assert!(is_isomorphic(&sub.semigroup, &catalog::a0()).unwrap());
    let a0 = catalog::a0();
    let (e, f) = (1, 2);
    assert!(a0.is_idempotent(e) && a0.is_idempotent(f));
    assert_ne!(a0.mul(e, f), 0);
    assert_eq!(a0.mul(f, e), 0);
}

#[test]
fn lee_criterion_matches_brute_force() {
    let a0 = catalog::a0();
    let words = all_words(3, 6);
    let mut by_values: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let vectors: Vec<Vec<usize>> = words.iter().map(|w| value_vector(&a0, w, 3)).collect();
    for (i, v) in vectors.iter().enumerate() {
        by_values.entry(v.clone()).or_default().push(i);
    }
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            let truth = vectors[i] == vectors[j];
            assert_eq!(a0_identity_oracle(u, v), truth, "{u} = {v}");
        }
    }
    assert!(by_values.len() > 1);
}

#[test]
fn c_matches_its_presentation() {
    let report = verify_presentation(&catalog::table_c(), &[1, 2, 3], &presentation_of_c()).unwrap();
    assert!(report.passes());
    assert_eq!(report.values, (0..11).collect::<Vec<_>>());
}

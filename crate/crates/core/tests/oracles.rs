//! Checks on the test oracles themselves.

mod support;

use support::*;

#[test]
fn class_counts_match_known_sequence() {
    // graphs without isolated vertices by edge count: 1, 2, 5, 11, 26
    let counts: Vec<usize> =
        (1..=5).map(|m| small_graph_classes(5).iter().filter(|(_, e)| e.len() == m).count()).collect();
    assert_eq!(counts, [1, 2, 5, 11, 26]);
    // connected graphs by edge count: 1, 1, 3, 5, 12
    let conn: Vec<usize> = (1..=5).map(|m| connected_classes(m).len()).collect();
    assert_eq!(conn, [1, 1, 3, 5, 12]);
}

#[test]
fn brute_force_small_values() {
    assert_eq!(brute_force_tes(2, &[(0, 1)]), 1);
    assert_eq!(brute_force_tes(3, &[(0, 1), (1, 2)]), 2);
    assert_eq!(brute_force_tes(3, &[(0, 1), (0, 2), (1, 2)]), 2);
    assert_eq!(brute_force_tes(4, &[(0, 1), (0, 2), (0, 3)]), 2);
}

#[test]
fn formula_values() {
    let k5: Edges = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    assert_eq!(formula(5, &k5), 5);
    assert_eq!(formula(4, &[(0, 1), (0, 2), (0, 3)]), 2);
    assert_eq!(formula(7, &k5), 5);
}

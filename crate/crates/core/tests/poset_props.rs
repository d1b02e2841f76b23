mod common;

use pathhom::digraph::{make_line, make_polygon, parse_digraph};
use pathhom::poset::{components, enumerate_path_poset, is_multipath, Multipath, PosetConfig};
use proptest::prelude::*;

#[test]
fn polygon_posets_are_truncated_cubes() {
    for n in 2..=6 {
        let p = enumerate_path_poset(&make_polygon(n, true).unwrap(), PosetConfig::default()).unwrap();
        assert_eq!(p.len(), (1 << n) - 1);
        assert_eq!(p.poset().height(), n - 1);
        assert_eq!(p.rank_histogram().len(), n);
    }
}

#[test]
fn line_poset_is_full_cube() {
    let p = enumerate_path_poset(&make_line(3).unwrap(), PosetConfig::default()).unwrap();
    assert_eq!(p.len(), 8);
    assert_eq!(p.rank_histogram(), vec![1, 3, 3, 1]);
}

#[test]
fn loops_and_two_cycles() {
    let g = parse_digraph("v 2\ne 0 0 0\ne 1 0 1\ne 2 1 0\ne 3 0 1\n").unwrap();
    assert!(!is_multipath(&g, &[0]).unwrap());
    assert!(!is_multipath(&g, &[1, 2]).unwrap());
    assert!(!is_multipath(&g, &[1, 3]).unwrap());
    let p = enumerate_path_poset(&g, PosetConfig::default()).unwrap();
    assert_eq!(p.len(), 4);
}

#[test]
fn edge_cap_is_a_resource_error() {
    let g = make_line(21).unwrap();
    let e = enumerate_path_poset(&g, PosetConfig::default()).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(enumerate_path_poset(&make_line(8).unwrap(), PosetConfig { max_edges: 21 }).is_ok());
}

#[test]
fn components_follow_least_vertex_order() {
    let g = make_polygon(5, true).unwrap();
    let l = components(&g, &Multipath::new(vec![1, 2])).unwrap();
    assert_eq!(l.components, vec![vec![0], vec![1, 2, 3], vec![4]]);
    assert_eq!(l.base_component, Some(0));
    assert!(components(&g, &Multipath::new(vec![0, 1, 2, 3, 4])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multipath_matches_brute_force(seed in any::<u64>()) {
        let g = common::random_digraph(&mut common::rng(seed), 5, 7, None);
        for s in 0u32..(1 << g.edge_count()) {
            let edges: Vec<usize> = (0..g.edge_count()).filter(|e| s & (1 << e) != 0).collect();
            prop_assert_eq!(is_multipath(&g, &edges).unwrap(), common::brute_force_multipath(&g, &edges));
        }
    }

    #[test]
    fn lower_intervals_are_boolean(seed in any::<u64>()) {
        let g = common::random_digraph(&mut common::rng(seed), 6, 8, None);
        let p = enumerate_path_poset(&g, PosetConfig::default()).unwrap();
        prop_assert_eq!(p.element(0).rank(), 0);
        for x in 0..p.len() {
            let below = (0..p.len()).filter(|&y| p.leq(y, x)).count();
            prop_assert_eq!(below, 1usize << p.rank(x));
            for &y in p.upper_covers(x) {
                prop_assert_eq!(p.rank(y), p.rank(x) + 1);
                prop_assert!(p.added_edge(x, y).is_some());
            }
            if x > 0 {
                prop_assert!(p.rank(x - 1) <= p.rank(x));
            }
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let g = common::random_digraph(&mut common::rng(seed), 6, 8, None);
        let back = parse_digraph(&g.to_string()).unwrap();
        prop_assert_eq!(back, g);
    }
}

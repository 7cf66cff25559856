use std::path::PathBuf;

use cospectral_core::exactmath::int;
use cospectral_core::graph::{canonical_form, parse_graph6, Graph};
use cospectral_core::search::{
    find_pairs, find_union_non_closure, induced_check, probe_distance_pair, render_text,
    union_probe, Corpus, SearchOptions, SearchReport,
};
use cospectral_core::spectral::distance_char_poly;
use proptest::prelude::*;

fn corpus(n: usize) -> Corpus {
    let mut c = Corpus::default();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("fixtures/graphs{n}.g6"));
    c.add_file(&path, 10).unwrap().unwrap();
    c
}

fn canon(g: &Graph) -> Graph {
    canonical_form(g).unwrap().0
}

#[test]
fn fixture_sizes() {
    let counts: Vec<usize> = (1..=7).map(|n| corpus(n).len()).collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
}

#[test]
fn saltire_pair_on_five_vertices() {
    let report = find_pairs(&corpus(5), &int(0), &SearchOptions::default()).unwrap();
    assert_eq!(report.pairs.len(), 1);
    let pair = &report.pairs[0];
    let found = [
        canon(&parse_graph6(&pair.g1).unwrap()),
        canon(&parse_graph6(&pair.g2).unwrap()),
    ];
    assert!(found.contains(&canon(&Graph::star(4))));
    assert!(found.contains(&canon(&Graph::cycle(4).disjoint_union(&Graph::empty(1)))));
    assert_eq!(pair.classes[0].notation, "∅:∅");
    assert!(pair.classes[0].complement_present);
}

#[test]
fn adjacency_pairs_pass_induced_check() {
    for n in 5..=7 {
        let report = find_pairs(&corpus(n), &int(0), &SearchOptions::default()).unwrap();
        for pair in &report.pairs {
            let (h1, h2) = (
                parse_graph6(&pair.g1).unwrap(),
                parse_graph6(&pair.g2).unwrap(),
            );
            for class in &pair.classes {
                let (b1, b2) = class.sets();
                assert!(
                    induced_check(&h1, &b1, &h2, &b2).unwrap(),
                    "{} {}",
                    pair.g1,
                    class.notation
                );
            }
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let c = corpus(6);
    for q in [int(0), int(1)] {
        let one = find_pairs(&c, &q, &SearchOptions::default()).unwrap();
        let three = find_pairs(
            &c,
            &q,
            &SearchOptions {
                workers: 3,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(one.to_json(), three.to_json());
        assert_eq!(render_text(&one), render_text(&three));
    }
}

#[test]
fn json_schema() {
    let report = find_pairs(&corpus(4), &int(1), &SearchOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let pair = &v["pairs"][0];
    assert_eq!(pair["q"], "1");
    assert!(pair["g1"].is_string() && pair["g2"].is_string());
    assert_eq!(pair["complement_verified"], true);
    let class = &pair["classes"][0];
    assert_eq!(class["b1"], serde_json::json!([]));
    assert_eq!(class["notation"], "∅:∅");
    assert_eq!(class["complement"]["notation"], "0123:abcd");
}

#[test]
fn union_non_closure_on_six_vertices() {
    let found = find_union_non_closure(&corpus(6), &int(0), 1)
        .unwrap()
        .expect("an instance");
    let v = &found.verdict;
    assert!(v.a_match && v.b_match && !v.union_match);
    let (h1, h2) = (
        parse_graph6(&found.g1).unwrap(),
        parse_graph6(&found.g2).unwrap(),
    );
    let (a1, a2) = found.a.sets();
    let (b1, b2) = found.b.sets();
    assert_eq!(
        &union_probe(&h1, &a1, &b1, &h2, &a2, &b2, &int(0)).unwrap(),
        v
    );
}

#[test]
fn distance_cospectral_fixtures_keep_complements() {
    let mut groups: Vec<(Vec<String>, Vec<Graph>)> = Vec::new();
    for g in corpus(7).graphs().filter(|g| g.is_connected()) {
        let key = distance_char_poly(g).unwrap().to_strings();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(g.clone()),
            None => groups.push((key, vec![g.clone()])),
        }
    }
    let groups: Vec<&Vec<Graph>> = groups
        .iter()
        .map(|(_, m)| m)
        .filter(|m| m.len() > 1)
        .collect();
    assert_eq!(groups.len(), 11);
    for members in groups {
        let (passes, candidates) = probe_distance_pair(&members[0], &members[1]).unwrap();
        assert!(passes.len() >= 2);
        assert!(candidates.is_empty());
    }
}

fn class_shape(report: &SearchReport) -> Vec<Vec<(usize, [usize; 2])>> {
    report
        .pairs
        .iter()
        .map(|p| {
            let mut shape: Vec<(usize, [usize; 2])> = p
                .classes
                .iter()
                .map(|c| (c.b1.len(), c.orbit_sizes))
                .collect();
            shape.sort_unstable();
            shape
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_preserves_results(perms in proptest::collection::vec(Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(), 156)) {
        let original = corpus(6);
        let relabeled = Corpus::from_graphs(
            "relabeled",
            original.graphs().zip(&perms).map(|(g, p)| g.relabel(p).unwrap()),
        );
        let q = int(0);
        let a = find_pairs(&original, &q, &SearchOptions::default()).unwrap();
        let b = find_pairs(&relabeled, &q, &SearchOptions::default()).unwrap();
        prop_assert_eq!(a.pairs.len(), b.pairs.len());
        prop_assert_eq!(class_shape(&a), class_shape(&b));
        for (x, y) in a.pairs.iter().zip(&b.pairs) {
            prop_assert_eq!(canon(&parse_graph6(&x.g1).unwrap()), canon(&parse_graph6(&y.g1).unwrap()));
            prop_assert!(y.complement_verified);
        }
    }
}

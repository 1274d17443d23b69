mod common;

use std::collections::BTreeSet;

use homcount::canon::{canonical_key, enumerate_graphs, labeled_graphs};
use homcount::Graph;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{brute_isomorphic, dedupe, random_graph, shuffle};

#[test]
fn enumeration_matches_labeled_dedupe() {
    // Per-vertex-count class counts from the independent dedupe oracle.
    let oracle: Vec<usize> = (0..=3).map(|n| dedupe(labeled_graphs(n)).len()).collect();
    assert_eq!(oracle, vec![1, 2, 6, 20]);
    let classes = enumerate_graphs(3);
    for (n, &expected) in oracle.iter().enumerate() {
        assert_eq!(
            classes.iter().filter(|(_, g)| g.vertex_count() == n).count(),
            expected,
            "n = {n}"
        );
    }
    assert_eq!(enumerate_graphs(1).len(), 3);
    assert_eq!(enumerate_graphs(2).len(), 9);
    assert_eq!(classes.len(), 29);
}

#[test]
fn enumeration_is_sorted_and_representatives_match_keys() {
    let classes = enumerate_graphs(4);
    assert_eq!(classes.len(), 1 + 2 + 6 + 20 + 90);
    assert!(classes.windows(2).all(|w| w[0].0 < w[1].0));
    assert!(classes.windows(2).all(|w| w[0].0.size() <= w[1].0.size()));
    for (k, g) in &classes {
        assert_eq!(&canonical_key(g), k);
        assert_eq!(k.size(), g.size());
    }
}

#[test]
fn key_equality_is_isomorphism_up_to_three_vertices() {
    for n in 0..=3 {
        let all: Vec<Graph> = labeled_graphs(n).collect();
        let keys: Vec<_> = all.iter().map(canonical_key).collect();
        for i in 0..all.len() {
            for j in i..all.len() {
                assert_eq!(
                    keys[i] == keys[j],
                    brute_isomorphic(&all[i], &all[j]),
                    "{}\n{}",
                    all[i],
                    all[j]
                );
            }
        }
    }
}

#[test]
fn key_equality_is_isomorphism_on_four_vertices() {
    let reps: Vec<Graph> = enumerate_graphs(4)
        .into_iter()
        .filter(|(_, g)| g.vertex_count() == 4)
        .map(|(_, g)| g)
        .collect();
    let rep_keys: Vec<_> = reps.iter().map(canonical_key).collect();
    for g in labeled_graphs(4) {
        let key = canonical_key(&g);
        for (r, rk) in reps.iter().zip(&rep_keys) {
            if g.size() == r.size() {
                assert_eq!(key == *rk, brute_isomorphic(&g, r), "{g}\n{r}");
            } else {
                assert_ne!(key, *rk);
            }
        }
    }
}

#[test]
fn five_vertex_representatives_are_pairwise_non_isomorphic() {
    let reps: Vec<Graph> = enumerate_graphs(5)
        .into_iter()
        .filter(|(_, g)| g.vertex_count() == 5)
        .map(|(_, g)| g)
        .collect();
    assert_eq!(reps.len(), 544);
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            assert!(!brute_isomorphic(&reps[i], &reps[j]));
        }
    }
}

#[test]
fn key_survives_random_relabelling_on_larger_graphs() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 5..=8 {
        for _ in 0..20 {
            let g = random_graph(&mut rng, n);
            assert_eq!(canonical_key(&g), canonical_key(&shuffle(&mut rng, &g)));
        }
    }
}

#[test]
fn biclique_minus_edge_is_path() {
    let k22 = Graph::biclique(2, 2);
    for &(u, v) in k22.edges() {
        let g = k22.delete_nonloop_edge(u, v).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&Graph::path(4)));
    }
    let k3 = Graph::complete(3);
    for &(u, v) in k3.edges() {
        let g = k3.delete_nonloop_edge(u, v).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&Graph::path(3)));
    }
}

#[test]
fn quotient_by_definition() {
    // Direct construction of K3 / {{0,1},{2}}: the merged class keeps the
    // internal edge as a loop and stays adjacent to vertex 2.
    let q = Graph::complete(3).quotient(&[vec![0, 1], vec![2]]).unwrap();
    let expected = Graph::new(2, [0], [(0, 1)]).unwrap();
    assert_eq!(q, expected);
    assert!(brute_isomorphic(&q, &Graph::new(2, [1], [(0, 1)]).unwrap()));
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), pairs),
        )
            .prop_map(move |(loops, edges)| {
                let mut g = Graph::empty(n);
                for (v, _) in loops.iter().enumerate().filter(|(_, &l)| l) {
                    g.add_loop(v).unwrap();
                }
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if edges[i] {
                            g.add_edge(u, v).unwrap();
                        }
                        i += 1;
                    }
                }
                g
            })
    })
}

proptest! {
    #[test]
    fn singleton_quotient_is_identity(g in graph_strategy(4)) {
        let singletons: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
        prop_assert_eq!(g.quotient(&singletons).unwrap(), g);
    }

    #[test]
    fn full_induced_subgraph_is_identity(g in graph_strategy(5)) {
        let all: BTreeSet<usize> = (0..g.vertex_count()).collect();
        prop_assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn union_commutes_and_associates(a in graph_strategy(3), b in graph_strategy(3), c in graph_strategy(2)) {
        prop_assert_eq!(canonical_key(&a.disjoint_union(&b)), canonical_key(&b.disjoint_union(&a)));
        prop_assert_eq!(
            canonical_key(&a.disjoint_union(&b).disjoint_union(&c)),
            canonical_key(&a.disjoint_union(&b.disjoint_union(&c)))
        );
    }

    #[test]
    fn operations_never_grow_size(g in graph_strategy(5), mask in any::<u64>(), labels in prop::collection::vec(0usize..5, 5)) {
        let n = g.vertex_count();
        let mask = mask & ((1u64 << n) - 1);
        let sub = g.induced_by_mask(mask);
        prop_assert!(sub.size() <= g.size());
        prop_assert_eq!(sub.size() == g.size(), mask.count_ones() as usize == n);

        for &(u, v) in g.edges() {
            prop_assert!(g.delete_nonloop_edge(u, v).unwrap().size() < g.size());
        }

        // Relabel arbitrary labels into a proper partition.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::BTreeMap::new();
        for (v, &label) in labels.iter().enumerate().take(n) {
            let c = *seen.entry(label).or_insert_with(|| { classes.push(Vec::new()); classes.len() - 1 });
            classes[c].push(v);
        }
        let q = g.quotient(&classes).unwrap();
        prop_assert!(q.size() <= g.size());
        if q.size() == g.size() {
            prop_assert_eq!(classes.len(), n);
        }
    }

    #[test]
    fn text_format_roundtrips(g in graph_strategy(6)) {
        prop_assert_eq!(g.to_text().parse::<Graph>().unwrap(), g);
    }
}

mod common;

use common::*;
use knowtex_core::graph::{detect_cycles, reduce_edges, transitive_reduce};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn exhaustive_small_dags_match_brute_force() {
    let mut checked = 0;
    for n in 1..=4 {
        for edges in all_dags(n) {
            let keep = reduce_edges(n, &edges);
            let got: std::collections::BTreeSet<_> = edges
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            assert_eq!(
                got,
                brute_force_reduction(n, &edges),
                "n={n} edges={edges:?}"
            );
            checked += 1;
        }
    }
    // 1 + 3 + 25 + 543 labeled DAGs
    assert_eq!(checked, 572);
}

#[test]
fn dag_counts() {
    assert_eq!(all_dags(3).len(), 25);
    assert_eq!(all_dags(4).len(), 543);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_properties(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, edges) = random_digraph(&mut rng, 30);
        let g = to_depgraph(n, &edges);
        let r = transitive_reduce(&g);
        let kept: Vec<_> = from_depgraph(&r).into_iter().collect();

        prop_assert_eq!(closure(n, &kept), closure(n, &edges));
        prop_assert_eq!(from_depgraph(&r), cyclic_reduction_oracle(n, &edges));
        prop_assert_eq!(transitive_reduce(&r), r.clone());
        for e in r.edges() {
            prop_assert_eq!(g.edge_kind(&e.from, &e.to), Some(e.kind));
        }
    }

    #[test]
    fn random_dags_are_minimal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, edges) = random_digraph(&mut rng, 20);
        let dag: Vec<_> = edges.into_iter().filter(|(u, v)| u < v).collect();
        let r = transitive_reduce(&to_depgraph(n, &dag));
        prop_assert_eq!(from_depgraph(&r), brute_force_reduction(n, &dag));
    }

    #[test]
    fn cycles_match_mutual_reachability(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, edges) = random_digraph(&mut rng, 25);
        let g = to_depgraph(n, &edges);
        let (cycles, diags) = detect_cycles(&g);
        let expected: Vec<Vec<String>> = scc_oracle(n, &edges)
            .into_iter()
            .map(|c| c.into_iter().map(node_id).collect())
            .collect();
        prop_assert_eq!(diags.len(), expected.len());
        prop_assert_eq!(cycles, expected);
    }
}

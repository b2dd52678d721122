use acyclic_census::oracle::Oracle;
use acyclic_census::{Census, Execution, MultiDigraph};
use proptest::prelude::*;

/// A random matrix of order `n` with entries in `0..=k` off the diagonal.
fn digraph() -> impl Strategy<Value = MultiDigraph> {
    (1usize..=7, 1u32..=3).prop_flat_map(|(n, k)| {
        proptest::collection::vec(0..=k, n * n).prop_map(move |entries| {
            let rows: Vec<Vec<u32>> = entries
                .chunks(n)
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| if i == j { 0 } else { v })
                        .collect()
                })
                .collect();
            MultiDigraph::from_rows(&rows, k).unwrap()
        })
    })
}

/// Keeps only arcs `i -> j` with `i < j` under a random relabelling.
fn acyclic_digraph() -> impl Strategy<Value = MultiDigraph> {
    digraph()
        .prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(g, perm)| {
            let n = g.order();
            let mut h = MultiDigraph::empty(n, g.multiplicity());
            for i in 0..n {
                for j in i + 1..n {
                    h.set(perm[i], perm[j], g.get(i, j)).unwrap();
                }
            }
            h
        })
}

proptest! {
    #[test]
    fn acyclicity_tests_agree(g in digraph()) {
        prop_assert_eq!(g.is_acyclic(), g.is_acyclic_dfs());
    }

    #[test]
    fn oriented_digraphs_are_acyclic_with_a_source(g in acyclic_digraph()) {
        prop_assert!(g.is_acyclic());
        prop_assert!(g.is_acyclic_dfs());
        prop_assert!(!g.sources().is_empty());
    }

    #[test]
    fn a_back_arc_closes_a_cycle(n in 2usize..=8, from in 0usize..8, to in 0usize..8) {
        let (lo, hi) = (from.min(to) % n, from.max(to) % n);
        prop_assume!(lo < hi);
        let mut g = MultiDigraph::transitive_tournament(n);
        prop_assert!(g.is_acyclic());
        g.set(hi, lo, 1).unwrap();
        prop_assert!(!g.is_acyclic());
        prop_assert!(!g.is_acyclic_dfs());
    }

    #[test]
    fn evaluation_paths_agree(n in 0usize..=14, k in 1u64..=1000) {
        let census = Census::new();
        prop_assert_eq!(census.eval_at_k(n, k).unwrap(), census.eval_at_k_via_polynomial(n, k).unwrap());
    }

    #[test]
    fn multi_enumerator_reduces(n in 0usize..=7, k in 1u64..=4) {
        let census = Census::new();
        let m = census.multi_arc_enumerator(n, k).unwrap();
        prop_assert_eq!(m.eval_u64(1), census.eval_at_k(n, k).unwrap());
        prop_assert_eq!(m.degree() as u64, k * (n * n.saturating_sub(1) / 2) as u64);
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    let seq = Oracle::default().with_exec(Execution::Sequential);
    let par = Oracle::default().with_exec(Execution::Parallel);
    for (n, k) in [(3, 2), (4, 1), (3, 3)] {
        assert_eq!(
            seq.brute_count(n, k).unwrap(),
            par.brute_count(n, k).unwrap()
        );
    }
    assert_eq!(
        seq.brute_count_bicolored(3).unwrap(),
        par.brute_count_bicolored(3).unwrap()
    );
    assert_eq!(
        seq.brute_count_weighted(4, 7).unwrap(),
        par.brute_count_weighted(4, 7).unwrap()
    );
}

#[test]
fn split_depth_does_not_change_counts() {
    let base = Oracle::default().brute_count(4, 2).unwrap();
    for digits in [0, 1, 2, 5, 12] {
        let oracle = Oracle {
            split_digits: Some(digits),
            ..Oracle::default()
        };
        assert_eq!(oracle.brute_count(4, 2).unwrap(), base, "split {digits}");
    }
}

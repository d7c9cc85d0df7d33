use proptest::prelude::*;
use reconfig::apfree::{affine_transform, behrend_set, greedy_3ap_free, is_3ap_free, max_3ap_free, odd_3ap_free, APSet};
use reconfig::io::{decode_graph6, encode_graph6, parse_edge_list, to_edge_list_string};
use reconfig::mis::independence_number;
use reconfig::search::{canonical_code, is_isomorphic};
use reconfig::verify::{decide_k2_fast, decide_k2_naive, k2_witness};
use reconfig::{Engine, Graph, IndependentSet, ReconfigRule};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut it = bits.iter();
    for u in 0..n {
        for v in u + 1..n {
            if *it.next().unwrap() {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Sparse graphs keep the complement dense, which is the interesting regime
/// for pairs.
fn arb_sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.7), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|m| {
            let s: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            g.is_independent(&s).unwrap()
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reconfiguration_adjacency_is_symmetric(g in arb_graph(1, 9), k in 1usize..=3, ts in any::<bool>()) {
        let rule = if ts { ReconfigRule::TokenSliding } else { ReconfigRule::TokenJumping };
        let e = Engine::new(&g, k, rule).unwrap();
        for key in e.independent_sets().unwrap() {
            let s = e.set_of(key);
            for t in e.neighbors(&s).unwrap() {
                prop_assert!(e.neighbors(&t).unwrap().contains(&s));
                prop_assert_eq!(s.overlap(&t), k - 1);
            }
        }
    }

    #[test]
    fn sliding_moves_are_jumping_moves(g in arb_graph(1, 9), k in 1usize..=3) {
        let tj = Engine::new(&g, k, ReconfigRule::TokenJumping).unwrap();
        let ts = Engine::new(&g, k, ReconfigRule::TokenSliding).unwrap();
        for key in tj.independent_sets().unwrap() {
            let s = tj.set_of(key);
            let jumps = tj.neighbors(&s).unwrap();
            for t in ts.neighbors(&s).unwrap() {
                prop_assert!(jumps.contains(&t));
            }
        }
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(0, 12)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert!(c.complement() == g);
    }

    #[test]
    fn independent_sets_are_complement_cliques(g in arb_graph(1, 9), mask in any::<u16>()) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(g.is_independent(&s).unwrap(), g.complement().is_clique(&s).unwrap());
    }

    #[test]
    fn independence_number_matches_brute_force(g in arb_graph(0, 12)) {
        prop_assert_eq!(independence_number(&g).unwrap(), brute_alpha(&g));
    }

    #[test]
    fn text_formats_round_trip(g in arb_graph(0, 20)) {
        prop_assert!(decode_graph6(&encode_graph6(&g)).unwrap() == g);
        prop_assert!(parse_edge_list(&to_edge_list_string(&g)).unwrap() == g);
    }

    #[test]
    fn canonical_code_ignores_labelling(g in arb_graph(1, 7), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let h = permuted(&g, &perm);
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn affine_images_stay_progression_free(n in 1u64..30, a in 1i64..9, b in 0i64..50) {
        let s = max_3ap_free(n).unwrap();
        let t = affine_transform(&s, a, b).unwrap();
        prop_assert!(is_3ap_free(t.elements()));
        prop_assert_eq!(t.len(), s.len());
    }

    #[test]
    fn k2_deciders_agree(g in arb_sparse_graph(12), picks in proptest::collection::vec(any::<prop::sample::Index>(), 4)) {
        let pairs: Vec<(usize, usize)> = g.non_edges().collect();
        prop_assume!(!pairs.is_empty());
        let pa = pairs[picks[0].index(pairs.len())];
        let pb = pairs[picks[1].index(pairs.len())];
        let a = IndependentSet::new(&g, vec![pa.0, pa.1]).unwrap();
        let b = IndependentSet::new(&g, vec![pb.0, pb.1]).unwrap();
        let fast = decide_k2_fast(&g, &a, &b).unwrap();
        let naive = decide_k2_naive(&g, &a, &b).unwrap();
        let engine = k2_witness(&g, &a, &b, 1 << 20).unwrap();
        prop_assert_eq!(fast, naive);
        prop_assert_eq!(fast, engine.is_some());
    }
}

#[test]
fn exact_ap_free_matches_brute_force() {
    for n in 1..=14u64 {
        let brute = (0u32..1 << n)
            .filter(|&m| {
                let s: Vec<u64> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect();
                is_3ap_free(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(max_3ap_free(n).unwrap().len(), brute, "n = {n}");
    }
}

#[test]
fn large_constructions_are_progression_free() {
    for n in [100u64, 1000, 5000] {
        let (b, _) = behrend_set(n);
        let g = greedy_3ap_free(n);
        assert!(is_3ap_free(b.elements()));
        assert!(is_3ap_free(g.elements()));
        assert!(b.max().unwrap_or(0) <= n && g.max().unwrap_or(0) <= n);
    }
}

#[test]
fn odd_sets_have_the_right_residue() {
    for modulus in [4u64, 8] {
        let s: APSet = odd_3ap_free(200, modulus).unwrap();
        assert!(!s.is_empty());
        assert!(s.elements().iter().all(|&x| x % modulus == 1 && x <= 200));
        assert!(is_3ap_free(s.elements()));
    }
}

#[test]
fn ap_set_rejects_progressions() {
    assert!(APSet::new(vec![1, 2, 3], 3).is_err());
    assert!(APSet::new(vec![1, 2, 4], 4).is_ok());
}

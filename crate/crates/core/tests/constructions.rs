use reconfig::constructions::{
    binomial, build_general, build_k3_extremal, check_claim_inter, check_h_properties, circulant_ap_graph,
    circulant_component_ends, complement_path, is_prime, iterate_toll, largest_prime_at_most, predicted_triples,
    toll_booth_extend, triple_extend,
};
use reconfig::engine::DEFAULT_NODE_CAP;
use reconfig::mis::independence_number;
use reconfig::verify::{check_circulant_structure, extract_63, is_config_path, verify_upper_bound_mapping, Parity};
use reconfig::{Engine, ReconfigRule};

const CAP: usize = DEFAULT_NODE_CAP;

#[test]
fn complement_paths_are_tight_for_pairs() {
    for n in 3..=12 {
        let (g, r) = complement_path(n).unwrap();
        assert_eq!(r.measure_distance(&g, CAP).unwrap(), Some(n - 2));
        assert!(r.claim.holds_for(n - 2));
        let v = is_config_path(&g, 2, CAP).unwrap();
        assert!(v.is_path, "n = {n}: {:?}", v.reason);
    }
}

#[test]
fn circulant_components_are_the_predicted_paths() {
    for (p, s) in [(17u64, vec![1u64]), (29, vec![1]), (41, vec![1, 5])] {
        let st = check_circulant_structure(p, &s, CAP).unwrap();
        assert!(st.pass(), "p = {p}: {st:?}");
        assert_eq!(st.components, s.len());
        assert!(st.component_sizes.iter().all(|&c| c as u64 == p - 3));
        for &x in &s {
            assert_eq!(predicted_triples(p, x).len() as u64, p - 3);
        }
        let (g, r) = circulant_ap_graph(p, &s).unwrap();
        assert_eq!(independence_number(&g).unwrap(), 3);
        let (a, b) = circulant_component_ends(p, s[0]);
        let e = Engine::new(&g, 3, ReconfigRule::TokenJumping).unwrap();
        assert_eq!(e.distance(&a, &b).unwrap(), Some(p as usize - 4));
        assert!(r.claim.holds_for(p as usize - 4));
    }
}

#[test]
fn circulant_rejects_bad_parameters() {
    assert!(circulant_ap_graph(18, &[1]).is_err());
    assert!(circulant_ap_graph(17, &[]).is_err());
    assert!(circulant_ap_graph(17, &[3]).is_err());
    assert!(circulant_ap_graph(41, &[1, 9]).is_err());
    assert!(circulant_ap_graph(89, &[1, 5, 9]).is_err());
}

#[test]
fn glued_k3_instance_meets_its_claim() {
    let (g, r) = build_k3_extremal(47, CAP).unwrap();
    assert!(g.n() <= 47);
    let d = r.measure_distance(&g, CAP).unwrap().unwrap();
    assert!(r.claim.holds_for(d), "claim {} measured {d}", r.claim.value);
    let rep = check_claim_inter(&g, 3, &r.junctions, CAP).unwrap();
    assert!(rep.ok(), "{:?}", rep.violations);
    // the glued graph has a single long component
    let v = is_config_path(&g, 3, CAP).unwrap();
    assert_eq!(v.components, 1);
}

#[test]
fn toll_booths_stretch_the_distance() {
    let (base, br) = complement_path(4).unwrap();
    let d0 = br.measure_distance(&base, CAP).unwrap().unwrap();
    for booths in 1..=2 {
        let (g, r) = toll_booth_extend(&base, 2, &br.start, &br.target, booths, CAP).unwrap();
        assert_eq!(r.k, 4);
        assert_eq!(independence_number(&g).unwrap(), 4);
        let d = r.measure_distance(&g, CAP).unwrap().unwrap();
        assert!(d >= 2 * booths * (d0 + 3), "booths {booths}: {d}");
        assert!(r.claim.holds_for(d));
    }
    let (g, r) = iterate_toll(4, 2, 1).unwrap();
    assert_eq!(r.k, 6);
    assert!(r.claim.holds_for(r.measure_distance(&g, CAP).unwrap().unwrap()));
}

#[test]
fn triple_extension_satisfies_its_structure() {
    let (base, br) = complement_path(4).unwrap();
    let (g, r) = triple_extend(&base, 2, &br.start, &br.target, 73, None, CAP).unwrap();
    assert_eq!(r.k, 5);
    assert!(r.notes.is_empty(), "{:?}", r.notes);
    assert_eq!(r.params["S"], serde_json::json!([9]));
    // H sits inside G' unlabelled; relabel vertex j*9 as j and check it alone
    let hv: Vec<usize> = r.roles["H"].clone();
    let (circ, _) = circulant_ap_graph(73, &[9]).unwrap();
    assert!(g.induced(&hv).edges().eq(circ.edges()));
    let inv = (1..73u64).find(|x| x * 9 % 73 == 1).unwrap();
    let mut h = circ.clone();
    h.set_labels((1..73u64).map(|v| (v * inv % 73) as i64).collect()).unwrap();
    let props = check_h_properties(&h, CAP).unwrap();
    assert!(props.ok(), "{props:?}");
    for &v in &r.roles["H0mod8"] {
        assert!((0..4).filter(|u| !br.start.contains(*u)).all(|u| g.has_edge(u, v)));
    }
    let d = r.measure_distance(&g, CAP).unwrap().unwrap();
    assert!(d >= 32 && r.claim.holds_for(d));
    assert!(triple_extend(&base, 2, &br.start, &br.target, 61, None, CAP).is_err());
}

#[test]
fn general_builder_reaches_each_residue() {
    for (k, budget) in [(4usize, 80usize), (5, 80)] {
        let (g, r) = build_general(k, budget, CAP).unwrap();
        assert_eq!(r.k, k);
        assert!(g.n() <= budget);
        let d = r.measure_distance(&g, CAP).unwrap().unwrap();
        assert!(r.claim.holds_for(d), "k = {k}: claim {} measured {d}", r.claim.value);
    }
}

#[test]
fn shortest_paths_obey_the_verifiers() {
    let (g, r) = circulant_ap_graph(29, &[1]).unwrap();
    let e = Engine::new(&g, 3, ReconfigRule::TokenJumping).unwrap();
    let seq = e.shortest_sequence(&r.start, &r.target).unwrap().unwrap();
    let v = verify_upper_bound_mapping(&g, &seq, CAP).unwrap();
    assert!(v.pass());
    assert!(v.steps <= binomial(g.n(), 2));
    for parity in [Parity::Even, Parity::Odd] {
        let hg = extract_63(&g, &seq, parity, CAP).unwrap();
        assert!(hg.is_63_free());
    }
}

#[test]
fn prime_helpers() {
    let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
    assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    assert_eq!(largest_prime_at_most(48), Some(47));
    assert_eq!(largest_prime_at_most(1), None);
    assert_eq!(binomial(10, 3), 120);
}

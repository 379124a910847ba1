mod common;

use hyperlocal::reduction::{hypergraph_st_cut, local_st_cut};
use hyperlocal::{CardinalitySplitting, Hypergraph, LocalHypergraph, NodeSet, SplittingSpec};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = SplittingSpec> {
    prop_oneof![
        (1u32..=3).prop_map(|d| SplittingSpec::delta_linear(d as f64)),
        (0.5f64..3.0).prop_map(|w| SplittingSpec::AllOrNothing { weight: w }),
        (1.0f64..4.0, 0.5f64..2.0).prop_map(|(delta, scale)| SplittingSpec::DeltaLinear { delta, scale }),
        (0.5f64..2.0).prop_map(|w| SplittingSpec::Clique { weight: w }),
    ]
}

fn hypergraph_strategy(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n, spec_strategy()).prop_flat_map(|(n, spec)| {
        prop::collection::vec(prop::collection::vec(0..n, 2..=5), 1..15)
            .prop_map(move |edges| Hypergraph::with_spec(n, edges, spec).unwrap())
    })
}

fn with_mask(max_n: usize) -> impl Strategy<Value = (Hypergraph, NodeSet)> {
    hypergraph_strategy(max_n).prop_flat_map(|h| {
        let n = h.num_nodes();
        (Just(h), 0u64..(1 << n)).prop_map(|(h, m)| (h, NodeSet::from_mask(m)))
    })
}

proptest! {
    #[test]
    fn cut_is_symmetric_exhaustively(h in hypergraph_strategy(10)) {
        let n = h.num_nodes();
        for mask in 0u64..(1 << n) {
            let s = NodeSet::from_mask(mask);
            let c = h.cut(&s);
            let d = h.cut(&s.complement(n));
            prop_assert!((c - d).abs() <= 1e-12 * c.abs().max(1.0));
        }
    }

    #[test]
    fn volume_is_additive((h, s) in with_mask(14)) {
        let total = h.total_volume();
        let sum = h.volume(&s) + h.volume(&s.complement(h.num_nodes()));
        prop_assert!((sum - total).abs() <= 1e-12 * total.max(1.0));
    }

    #[test]
    fn ncut_is_sandwiched_by_conductance((h, s) in with_mask(12)) {
        let cond = h.conductance(&s);
        let ncut = h.ncut(&s);
        if cond.is_finite() && ncut.is_finite() {
            prop_assert!(cond <= ncut * (1.0 + 1e-12));
            prop_assert!(ncut <= 2.0 * cond * (1.0 + 1e-12));
        }
    }

    #[test]
    fn localized_conductance_bounds_conductance(
        (h, s) in with_mask(12),
        r_mask in 1u64..4096,
        extra in 0.0f64..2.0,
    ) {
        let n = h.num_nodes();
        let r = NodeSet::from_mask(r_mask & ((1 << n) - 1));
        prop_assume!(!r.is_empty());
        let vol_r = h.volume(&r);
        let vol_rc = h.complement_volume(&r);
        prop_assume!(vol_r > 0.0 && vol_r <= vol_rc);
        let eps = h.min_locality(&r) + extra;
        let omega = h.omega(&r, eps, &s);
        let vol_s = h.volume(&s);
        let small = vol_s.min(h.total_volume() - vol_s);
        prop_assert!(omega <= small + 1e-9);
        if omega > 0.0 {
            prop_assert!(h.conductance(&s) <= h.hlc(&r, eps, &s) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn delta_linear_tables_are_concave_nondecreasing(k in 2usize..=12, delta in 1.0f64..7.0) {
        let sf = CardinalitySplitting::delta_linear(k, delta, 1.0).unwrap();
        let t = sf.table();
        for i in 1..t.len() {
            prop_assert!(t[i] >= t[i - 1]);
        }
        for i in 1..t.len().saturating_sub(1) {
            prop_assert!(t[i] - t[i - 1] >= t[i + 1] - t[i] - 1e-12);
        }
        prop_assert!(sf.is_submodular());
    }

    #[test]
    fn local_objective_never_exceeds_global(
        (h, s) in with_mask(10),
        r_mask in 1u64..1024,
        alpha in 0.01f64..2.0,
        eps in 0.1f64..2.0,
        grow_mask in 0u64..1024,
    ) {
        let n = h.num_nodes();
        let r = NodeSet::from_mask(r_mask & ((1 << n) - 1));
        prop_assume!(!r.is_empty());
        prop_assume!(h.check_set(&r).is_ok());
        let mut l = LocalHypergraph::new(&h, &r);
        let grown: NodeSet = NodeSet::from_mask(grow_mask & ((1 << n) - 1)).difference(&r);
        for round in [NodeSet::new(), grown] {
            l.grow(&h, &round);
            // R and its neighborhood are always present, and edges enter whole
            prop_assert!(r.iter().all(|v| l.contains_node(v)));
            prop_assert!(h.neighborhood(&r).iter().all(|v| l.contains_node(v)));
            prop_assert!(l.edges().iter().all(|&e| h.edge(e).iter().all(|&v| l.contains_node(v))));
            prop_assert!(l.explored().iter().all(|&v| !r.contains(v)));
            let s_local: NodeSet = s.iter().filter(|&v| l.contains_node(v)).collect();
            let local = local_st_cut(&h, l.nodes(), l.edges(), &r, eps, alpha, &s_local);
            let global = hypergraph_st_cut(&h, &r, eps, alpha, &s_local);
            prop_assert!(local <= global + 1e-9);
        }
    }

    #[test]
    fn graph_quantities_match_direct_implementation(
        n in 3usize..9,
        pairs in prop::collection::vec((0usize..9, 0usize..9), 1..20),
        mask in 0u64..512,
    ) {
        let pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(u, v)| (u % n, v % n))
            .filter(|(u, v)| u != v)
            .collect();
        prop_assume!(!pairs.is_empty());
        let edges = pairs.iter().map(|&(u, v)| vec![u, v]).collect();
        let h = Hypergraph::with_spec(n, edges, SplittingSpec::AllOrNothing { weight: 1.0 }).unwrap();
        let s = NodeSet::from_mask(mask & ((1 << n) - 1));

        // adjacency lists with multiplicity
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        let inside = |v: usize| s.contains(v);
        let cut = (0..n)
            .filter(|&u| inside(u))
            .map(|u| adj[u].iter().filter(|&&v| !inside(v)).count())
            .sum::<usize>() as f64;
        let vol = (0..n).filter(|&u| inside(u)).map(|u| adj[u].len()).sum::<usize>() as f64;
        let total = (2 * pairs.len()) as f64;
        prop_assert_eq!(h.cut(&s), cut);
        prop_assert_eq!(h.volume(&s), vol);
        let small = vol.min(total - vol);
        if small > 0.0 {
            prop_assert!((h.conductance(&s) - cut / small).abs() < 1e-12);
            let ncut = cut / vol + cut / (total - vol);
            prop_assert!((h.ncut(&s) - ncut).abs() < 1e-12);
        }
    }
}

mod common;

use hyperlocal::oracle::brute_min_st_cut;
use hyperlocal::reduction::{build_full_instance, gadget_expand, hypergraph_st_cut, SOURCE};
use hyperlocal::{solve_global, solve_strongly_local, CardinalitySplitting, FlowNetwork, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cheapest cut of a side assignment once every auxiliary pair is placed
/// optimally. Gadgets do not share arcs, so placing them one at a time is
/// exact.
fn best_aux_placement(net: &FlowNetwork, side: &mut [bool], pairs: &[(usize, usize)]) -> f64 {
    for &(a, b) in pairs {
        let mut best = (f64::INFINITY, false, false);
        for place in 0..4 {
            side[a] = place & 1 == 1;
            side[b] = place & 2 == 2;
            let c = net.cut_capacity(side);
            if c < best.0 {
                best = (c, side[a], side[b]);
            }
        }
        side[a] = best.1;
        side[b] = best.2;
    }
    net.cut_capacity(side)
}

#[test]
fn network_cut_equals_hypergraph_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let inst = common::random_instance(&mut rng);
        let h = &inst.h;
        let alpha = rng.gen_range(0.01..1.5);
        let built = build_full_instance(h, &inst.r, inst.eps, alpha, &NodeSet::new()).unwrap();
        let pairs: Vec<(usize, usize)> = (0..built.edges().len()).map(|i| built.aux_pair(i)).collect();
        let n = h.num_nodes();
        for _ in 0..50 {
            let s = NodeSet::from_mask(rng.gen_range(0..1u64 << n));
            let mut side = vec![false; built.net.num_nodes()];
            side[SOURCE] = true;
            for v in &s {
                side[built.network_id(v).unwrap()] = true;
            }
            let net_cut = best_aux_placement(&built.net, &mut side, &pairs);
            let direct = hypergraph_st_cut(h, &inst.r, inst.eps, alpha, &s);
            assert!((net_cut - direct).abs() <= 1e-9 * direct.max(1.0), "{net_cut} vs {direct}");
        }
    }
}

#[test]
fn gadget_cost_equals_splitting_penalty() {
    for k in 2..=8usize {
        let mut deltas: Vec<f64> = (1..=k / 2).map(|d| d as f64).collect();
        deltas.push(1.5);
        for delta in deltas {
            let sf = CardinalitySplitting::delta_linear(k, delta, 1.0).unwrap();
            let mut net = FlowNetwork::new(k + 2, 0, 1);
            let members: Vec<usize> = (2..k + 2).collect();
            let pair = gadget_expand(&mut net, 0, &members, &sf).unwrap();
            for mask in 0u32..(1 << k) {
                let mut side = vec![false; net.num_nodes()];
                for i in 0..k {
                    side[i + 2] = mask >> i & 1 == 1;
                }
                let cost = best_aux_placement(&net, &mut side, &[pair]);
                let a = mask.count_ones() as f64;
                let expected = delta.min(a).min(k as f64 - a);
                assert_eq!(cost, expected, "k={k} delta={delta} mask={mask:b}");
                assert_eq!(cost, sf.eval(mask.count_ones() as usize));
            }
        }
    }
}

#[test]
fn max_flow_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let inst = common::random_instance(&mut rng);
        let alpha = rng.gen_range(0.01..1.5);
        let (oracle, _) = brute_min_st_cut(&inst.h, &inst.r, inst.eps, alpha).unwrap();
        let mut built = build_full_instance(&inst.h, &inst.r, inst.eps, alpha, &NodeSet::new()).unwrap();
        let (value, set) = built.solve().unwrap();
        assert!((value - oracle).abs() <= 1e-9 * oracle.max(1.0));
        let achieved = hypergraph_st_cut(&inst.h, &inst.r, inst.eps, alpha, &set);
        assert!((achieved - oracle).abs() <= 1e-9 * oracle.max(1.0));

        let (local_set, stats) = solve_strongly_local(&inst.h, &inst.r, inst.eps, alpha, &NodeSet::new()).unwrap();
        assert!((stats.cut_value - oracle).abs() <= 1e-9 * oracle.max(1.0));
        let achieved = hypergraph_st_cut(&inst.h, &inst.r, inst.eps, alpha, &local_set);
        assert!((achieved - oracle).abs() <= 1e-9 * oracle.max(1.0));
        let (_, global) = solve_global(&inst.h, &inst.r, inst.eps, alpha, &NodeSet::new()).unwrap();
        assert!((global.cut_value - stats.cut_value).abs() <= 1e-9 * oracle.max(1.0));
    }
}

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use num_traits::{One, Zero};
use socrank_core::analysis::consistency;
use socrank_core::flow_rank::{build_flow_graph, edmonds_karp, max_flow};
use socrank_core::hsn::{build_share_matrix, hits, hsn_rank, BipartiteShareMatrix};
use socrank_core::prsn::{prsn_scores, rank_urls, scaled_pagerank, scaled_pagerank_observed, PageRankParams};
use socrank_core::{NodeId, ShareIndex, UrlId};

const CONVERGE: PageRankParams = PageRankParams {
    sigma: 0.85,
    iterations: 10_000,
    epsilon: 1e-13,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pagerank_matches_dense_solve(seed: u64, n in 1usize..=50, p in 0.1f64..0.5) {
        let g = random_graph(&mut rng(seed), n, p);
        let mut worst = 0.0f64;
        let sv = scaled_pagerank_observed(&g, CONVERGE, |_, r| {
            worst = worst.max((r.iter().sum::<f64>() - 1.0).abs());
        })
        .unwrap();
        prop_assert!(sv.converged);
        prop_assert!(worst < 1e-12, "mass drift {worst}");
        prop_assert!(l1(&sv.values, &dense_pagerank(&g, 0.85)) < 1e-10);
    }

    #[test]
    fn converged_vector_is_a_fixed_point(seed: u64, n in 1usize..=40, p in 0.05f64..0.5) {
        let g = random_graph(&mut rng(seed), n, p);
        let params = PageRankParams { iterations: 1000, ..PageRankParams::default() };
        let sv = scaled_pagerank(&g, params).unwrap();
        prop_assume!(sv.converged);
        let r = nalgebra::DVector::from_vec(sv.values.clone());
        let image = dense_transition(&g).transpose() * &r * 0.85
            + nalgebra::DVector::from_element(n, 0.15 / n as f64);
        prop_assert!((image - r).abs().sum() < 10.0 * params.epsilon);
    }

    #[test]
    fn hits_matches_principal_eigenvector(seed: u64) {
        let inst = random_incidence(&mut rng(seed), 64);
        let expected = principal_authority(&inst.dense);
        prop_assume!(expected.is_some());
        let state = hits(&inst.matrix, 100_000).unwrap();
        prop_assert!(l1(&state.authority_scores, &expected.unwrap()) < 1e-8);
    }

    #[test]
    fn hits_is_permutation_equivariant(seed: u64) {
        let mut r = rng(seed);
        let inst = random_incidence(&mut r, 24);
        let (h, a) = (inst.matrix.hubs().len(), inst.matrix.authorities().len());
        let hub_perm: Vec<usize> = rand::seq::index::sample(&mut r, h, h).into_vec();
        let auth_perm: Vec<usize> = rand::seq::index::sample(&mut r, a, a).into_vec();
        let permuted = BipartiteShareMatrix::from_incidence(
            inst.matrix.hubs().to_vec(),
            inst.matrix.authorities().to_vec(),
            inst.pairs.iter().map(|&(i, j)| (hub_perm[i], auth_perm[j])),
        )
        .unwrap();
        let base = hits(&inst.matrix, 200).unwrap();
        let moved = hits(&permuted, 200).unwrap();
        for j in 0..a {
            prop_assert!((base.authority_scores[j] - moved.authority_scores[auth_perm[j]]).abs() < 1e-12);
        }
    }

    #[test]
    fn edmonds_karp_equals_min_cut(seed: u64) {
        let net = random_network(&mut rng(seed), 8, 12);
        let flow = edmonds_karp(&net);
        prop_assert_eq!(flow.verify(&net), Ok(()));
        prop_assert_eq!(flow.total, exhaustive_min_cut(&net));
    }

    #[test]
    fn personalized_flow_is_feasible(seed: u64) {
        let inst = random_flow_instance(&mut rng(seed), 200);
        let fg = build_flow_graph(&inst.graph, &inst.index, inst.person, &inst.url_set, inst.depth_cap).unwrap();
        let flow = max_flow(&fg);
        let net = fg.network();
        prop_assert_eq!(flow.verify(net), Ok(()));
        for &arc in fg.url_sink_arcs() {
            prop_assert!(flow.flow[arc] >= Zero::zero() && flow.flow[arc] <= One::one());
        }
        let out_of_source = net
            .arcs
            .iter()
            .filter(|a| a.from == net.source)
            .fold(num_rational::BigRational::zero(), |acc, a| acc + &a.capacity);
        prop_assert!(flow.total <= out_of_source);
        prop_assert!(net.arcs.iter().all(|a| a.to != net.source && a.from != net.sink));
    }

    #[test]
    fn extra_spreader_never_lowers_max_flow(seed: u64) {
        let mut r = rng(seed);
        let inst = random_flow_instance(&mut r, 60);
        let before = max_flow(
            &build_flow_graph(&inst.graph, &inst.index, inst.person, &inst.url_set, inst.depth_cap).unwrap(),
        );
        let n = inst.graph.node_count();
        let mut shares: Vec<(NodeId, String)> = inst
            .index
            .url_ids()
            .flat_map(|u| inst.index.spreaders(u).iter().map(move |&v| (v, u)))
            .map(|(v, u)| (v, inst.index.url(u).to_owned()))
            .collect();
        let target = inst.url_set[r.random_range(0..inst.url_set.len())];
        shares.push((NodeId(r.random_range(0..n) as u32), inst.index.url(target).to_owned()));
        let grown = ShareIndex::from_shares(n, shares, 1).unwrap();
        let after = max_flow(
            &build_flow_graph(&inst.graph, &grown, inst.person, &inst.url_set, inst.depth_cap).unwrap(),
        );
        prop_assert!(after.total >= before.total);
    }

    #[test]
    fn new_spreader_never_worsens_prsn_position(seed: u64) {
        let mut r = rng(seed);
        let inst = random_flow_instance(&mut r, 50);
        let sv = scaled_pagerank(&inst.graph, PageRankParams::default()).unwrap();
        let n = inst.graph.node_count();
        let target = inst.url_set[r.random_range(0..inst.url_set.len())];
        let outsider = (0..n as u32).map(NodeId).find(|v| !inst.index.spreaders(target).contains(v));
        prop_assume!(outsider.is_some());
        let before = rank_urls(&prsn_scores(&sv, &inst.index, &inst.url_set).unwrap()).unwrap();
        let mut shares: Vec<(NodeId, String)> = inst
            .index
            .url_ids()
            .flat_map(|u| inst.index.spreaders(u).iter().map(move |&v| (v, u)))
            .map(|(v, u)| (v, inst.index.url(u).to_owned()))
            .collect();
        shares.push((outsider.unwrap(), inst.index.url(target).to_owned()));
        let grown = ShareIndex::from_shares(n, shares, 1).unwrap();
        let after = rank_urls(&prsn_scores(&sv, &grown, &inst.url_set).unwrap()).unwrap();
        prop_assert!(after.position(target) <= before.position(target));
    }

    #[test]
    fn prsn_positions_ignore_score_scale(seed: u64, c in 0.001f64..1000.0) {
        let inst = random_flow_instance(&mut rng(seed), 50);
        let sv = scaled_pagerank(&inst.graph, PageRankParams::default()).unwrap();
        let mut scaled = sv.clone();
        scaled.values.iter_mut().for_each(|v| *v *= c);
        let a = rank_urls(&prsn_scores(&sv, &inst.index, &inst.url_set).unwrap()).unwrap();
        let b = rank_urls(&prsn_scores(&scaled, &inst.index, &inst.url_set).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hsn_ignores_follow_edges(seed: u64) {
        let mut r = rng(seed);
        let inst = random_flow_instance(&mut r, 80);
        let before = hits(&build_share_matrix(&inst.index, &inst.url_set).unwrap(), 50).unwrap();
        let n = inst.graph.node_count();
        let mut edges: Vec<(u32, u32)> = inst.graph.edges().map(|(a, b)| (a.0, b.0)).collect();
        edges.extend((0..200).map(|_| (r.random_range(0..n) as u32, r.random_range(0..n) as u32)));
        let denser = socrank_core::GraphSnapshot::from_edges(handles(n), edges).unwrap().0;
        prop_assert!(denser.edge_count() >= inst.graph.edge_count());
        let after = hits(&build_share_matrix(&inst.index, &inst.url_set).unwrap(), 50).unwrap();
        prop_assert_eq!(hsn_rank(&before), hsn_rank(&after));
        prop_assert_eq!(before, after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn consistency_is_a_pseudometric(seed: u64) {
        let mut r = rng(seed);
        let [a, b, c] = [(); 3].map(|_| random_permutation(&mut r, 30));
        let ab = consistency(&a, &b).unwrap().sum_diff;
        let bc = consistency(&b, &c).unwrap().sum_diff;
        let ac = consistency(&a, &c).unwrap().sum_diff;
        prop_assert_eq!(ab, consistency(&b, &a).unwrap().sum_diff);
        prop_assert_eq!(consistency(&a, &a).unwrap().sum_diff, 0);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(ac <= ab + bc);
        prop_assert!(ab <= 30 * 29);
    }

    #[test]
    fn url_ids_outside_index_are_rejected(extra in 0u32..5) {
        let idx = ShareIndex::from_shares(2, [(NodeId(0), "http://a")], 1).unwrap();
        prop_assert!(build_share_matrix(&idx, &[UrlId(1 + extra)]).is_err());
    }
}

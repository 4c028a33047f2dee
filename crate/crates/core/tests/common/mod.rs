//! Random instance generators and brute-force oracles shared by the property
//! tests and the acceptance harness.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use socrank_core::flow_rank::{DepthCap, FlowNetwork};
use socrank_core::hsn::BipartiteShareMatrix;
use socrank_core::{GraphSnapshot, NodeId, RankedList, ShareIndex, UrlId};

pub fn handles(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Erdős–Rényi digraph: each ordered pair is an edge with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> GraphSnapshot {
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if a != b && rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    GraphSnapshot::from_edges(handles(n), edges).unwrap().0
}

/// Digraph with roughly `avg_out` random follows per node.
pub fn sparse_graph(rng: &mut ChaCha8Rng, n: usize, avg_out: usize) -> GraphSnapshot {
    let edges: Vec<(u32, u32)> = (0..n * avg_out)
        .map(|_| (rng.random_range(0..n) as u32, rng.random_range(0..n) as u32))
        .collect();
    GraphSnapshot::from_edges(handles(n), edges).unwrap().0
}

/// Dense `F~` with dangling rows replaced by `1/n`.
pub fn dense_transition(graph: &GraphSnapshot) -> DMatrix<f64> {
    let n = graph.node_count();
    DMatrix::from_fn(n, n, |i, j| {
        let v = NodeId(i as u32);
        let deg = graph.out_degree(v);
        if deg == 0 {
            1.0 / n as f64
        } else if graph.has_edge(v, NodeId(j as u32)) {
            1.0 / deg as f64
        } else {
            0.0
        }
    })
}

/// Solves `(I - sigma F~^T) R = (1 - sigma)/n` directly.
pub fn dense_pagerank(graph: &GraphSnapshot, sigma: f64) -> Vec<f64> {
    let n = graph.node_count();
    let a = DMatrix::identity(n, n) - dense_transition(graph).transpose() * sigma;
    let b = DVector::from_element(n, (1.0 - sigma) / n as f64);
    a.lu().solve(&b).expect("I - sigma F^T is nonsingular").iter().copied().collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub struct HitsInstance {
    pub matrix: BipartiteShareMatrix,
    pub pairs: Vec<(usize, usize)>,
    pub dense: DMatrix<f64>,
}

/// Random hub×authority incidence with every row and column non-empty.
pub fn random_incidence(rng: &mut ChaCha8Rng, max_side: usize) -> HitsInstance {
    let hubs = rng.random_range(1..=max_side);
    let auths = rng.random_range(1..=max_side);
    let p = rng.random_range(0.05..0.5);
    let mut dense = DMatrix::zeros(hubs, auths);
    for h in 0..hubs {
        for a in 0..auths {
            if rng.random::<f64>() < p {
                dense[(h, a)] = 1.0;
            }
        }
    }
    for h in 0..hubs {
        if dense.row(h).sum() == 0.0 {
            dense[(h, rng.random_range(0..auths))] = 1.0;
        }
    }
    for a in 0..auths {
        if dense.column(a).sum() == 0.0 {
            dense[(rng.random_range(0..hubs), a)] = 1.0;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..hubs)
        .flat_map(|h| (0..auths).map(move |a| (h, a)))
        .filter(|&(h, a)| dense[(h, a)] == 1.0)
        .collect();
    let matrix = BipartiteShareMatrix::from_incidence(
        (0..hubs as u32).map(NodeId).collect(),
        (0..auths as u32).map(UrlId).collect(),
        pairs.iter().copied(),
    )
    .unwrap();
    HitsInstance { matrix, pairs, dense }
}

/// Sum-normalized principal eigenvector of `M^T M`, or `None` when the top
/// eigenvalue is not well separated. Power iteration closes the gap at rate
/// `lambda2 / lambda1`, so both an absolute and a relative gap are required.
pub fn principal_authority(dense: &DMatrix<f64>) -> Option<Vec<f64>> {
    let mtm = dense.transpose() * dense;
    let eig = SymmetricEigen::new(mtm);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let l1 = eig.eigenvalues[order[0]];
    let l2 = order.get(1).map_or(0.0, |&i| eig.eigenvalues[i]);
    if l1 - l2 <= 1e-6 || l2 / l1 > 0.99 {
        return None;
    }
    let v: Vec<f64> = eig.eigenvectors.column(order[0]).iter().map(|x| x.abs()).collect();
    let total: f64 = v.iter().sum();
    Some(v.into_iter().map(|x| x / total).collect())
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Network on 2..=`max_nodes` nodes, source 0 and sink n-1, with random
/// rational capacities whose denominators are at most `max_den`.
pub fn random_network(rng: &mut ChaCha8Rng, max_nodes: usize, max_den: i64) -> FlowNetwork {
    let n = rng.random_range(2..=max_nodes);
    let density = rng.random_range(0.2..0.7);
    let mut net = FlowNetwork::new(n, 0, n - 1);
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random::<f64>() < density {
                let den = rng.random_range(1..=max_den);
                net.add_arc_ratio(a, b, rng.random_range(0..=2 * den), den);
            }
        }
    }
    net
}

/// Minimum over all source-side sets of the capacity leaving the set.
pub fn exhaustive_min_cut(net: &FlowNetwork) -> BigRational {
    let inner: Vec<usize> = (0..net.node_count).filter(|&v| v != net.source && v != net.sink).collect();
    let mut best: Option<BigRational> = None;
    for mask in 0u32..(1 << inner.len()) {
        let mut side = vec![false; net.node_count];
        side[net.source] = true;
        for (bit, &v) in inner.iter().enumerate() {
            side[v] = mask & (1 << bit) != 0;
        }
        let cut = net
            .arcs
            .iter()
            .filter(|a| side[a.from] && !side[a.to])
            .fold(BigRational::zero(), |acc, a| acc + &a.capacity);
        if best.as_ref().is_none_or(|b| cut < *b) {
            best = Some(cut);
        }
    }
    best.expect("at least one cut")
}

pub struct FlowInstance {
    pub graph: GraphSnapshot,
    pub index: ShareIndex,
    pub person: NodeId,
    pub url_set: Vec<UrlId>,
    pub depth_cap: DepthCap,
}

/// A sparse social graph with up to `max_nodes` users, a handful of URLs
/// with random spreaders, a random person and URL subset.
pub fn random_flow_instance(rng: &mut ChaCha8Rng, max_nodes: usize) -> FlowInstance {
    let n = rng.random_range(2..=max_nodes);
    let avg_out = rng.random_range(1..=4);
    let graph = sparse_graph(rng, n, avg_out);
    let urls = rng.random_range(1..=12);
    let mut shares = Vec::new();
    for u in 0..urls {
        for _ in 0..rng.random_range(1..=6) {
            shares.push((NodeId(rng.random_range(0..n) as u32), format!("http://u{u}.example")));
        }
    }
    let index = ShareIndex::from_shares(n, shares, 1).unwrap();
    let mut url_set: Vec<UrlId> = index.url_ids().collect();
    url_set.shuffle(rng);
    url_set.truncate(rng.random_range(1..=url_set.len()));
    let depth_cap = match rng.random_range(0..5) {
        0 => DepthCap::Unlimited,
        h => DepthCap::Hops(h),
    };
    FlowInstance {
        person: NodeId(rng.random_range(0..n) as u32),
        graph,
        index,
        url_set,
        depth_cap,
    }
}

/// A uniformly random permutation of positions 1..=w over UrlIds 0..w.
pub fn random_permutation(rng: &mut ChaCha8Rng, w: usize) -> RankedList {
    let mut positions: Vec<u32> = (1..=w as u32).collect();
    positions.shuffle(rng);
    RankedList::from_positions(positions.into_iter().enumerate().map(|(i, p)| (UrlId(i as u32), p)).collect())
        .unwrap()
}

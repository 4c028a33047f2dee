use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact non-negative capacity.
pub type Capacity = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// A directed network with one source and one sink. Parallel arcs are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        FlowNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: Capacity) -> usize {
        assert!(from < self.node_count && to < self.node_count);
        assert!(!capacity.is_negative(), "negative capacity");
        self.arcs.push(FlowArc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn add_arc_ratio(&mut self, from: usize, to: usize, num: i64, den: i64) -> usize {
        self.add_arc(from, to, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

/// Flow per arc, indexed like [`FlowNetwork::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub flow: Vec<Capacity>,
    pub total: Capacity,
}

impl FlowAssignment {
    /// Checks capacity bounds on every arc and conservation at every node
    /// other than source and sink, exactly. Returns a description of the
    /// first violation.
    pub fn verify(&self, net: &FlowNetwork) -> Result<(), String> {
        if self.flow.len() != net.arcs.len() {
            return Err("flow vector length differs from arc count".into());
        }
        let mut balance = vec![Capacity::zero(); net.node_count];
        for (i, (arc, f)) in net.arcs.iter().zip(&self.flow).enumerate() {
            if f.is_negative() || f > &arc.capacity {
                return Err(format!("arc {i} ({} -> {}) carries {f} of {}", arc.from, arc.to, arc.capacity));
            }
            balance[arc.from] -= f;
            balance[arc.to] += f;
        }
        for (v, b) in balance.iter().enumerate() {
            if v != net.source && v != net.sink && !b.is_zero() {
                return Err(format!("node {v} is out of balance by {b}"));
            }
        }
        if balance[net.sink] != self.total || -&balance[net.source] != self.total {
            return Err("total differs from net flow into the sink".into());
        }
        Ok(())
    }
}

/// Edmonds-Karp: repeatedly augment along a shortest residual path found by
/// breadth-first search.
///
/// Residual arcs out of a node are scanned in ascending head-node order
/// (forward before backward on equal heads, then arc index), which fixes the
/// returned assignment. Nodes that cannot reach the sink along positive
/// capacity arcs never carry flow and are left out of the search.
pub fn edmonds_karp(net: &FlowNetwork) -> FlowAssignment {
    let n = net.node_count;
    let m = net.arcs.len();
    let mut flow = vec![Capacity::zero(); m];
    let live = reaches_sink(net);

    // Residual edge e: arc e/2, forward when e is even.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, arc) in net.arcs.iter().enumerate() {
        if arc.capacity.is_zero() || !live[arc.from] || !live[arc.to] {
            continue;
        }
        adj[arc.from].push(2 * i);
        adj[arc.to].push(2 * i + 1);
    }
    let head = |e: usize| {
        let arc = &net.arcs[e / 2];
        if e.is_multiple_of(2) {
            arc.to
        } else {
            arc.from
        }
    };
    for list in adj.iter_mut() {
        list.sort_by_key(|&e| (head(e), e % 2, e / 2));
    }

    let mut total = Capacity::zero();
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    loop {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        queue.clear();
        queue.push_back(net.source);
        let mut found = false;
        'bfs: while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                let w = head(e);
                if w == net.source || parent[w] != usize::MAX {
                    continue;
                }
                let has_room = if e.is_multiple_of(2) {
                    flow[e / 2] < net.arcs[e / 2].capacity
                } else {
                    flow[e / 2].is_positive()
                };
                if !has_room {
                    continue;
                }
                parent[w] = e;
                if w == net.sink {
                    found = true;
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if !found {
            break;
        }

        let mut bottleneck: Option<Capacity> = None;
        let mut v = net.sink;
        while v != net.source {
            let e = parent[v];
            let room = if e.is_multiple_of(2) {
                &net.arcs[e / 2].capacity - &flow[e / 2]
            } else {
                flow[e / 2].clone()
            };
            bottleneck = Some(match bottleneck {
                Some(b) if b <= room => b,
                _ => room,
            });
            v = tail(net, e);
        }
        let bottleneck = bottleneck.expect("path has at least one arc");
        let mut v = net.sink;
        while v != net.source {
            let e = parent[v];
            if e.is_multiple_of(2) {
                flow[e / 2] += &bottleneck;
            } else {
                flow[e / 2] -= &bottleneck;
            }
            v = tail(net, e);
        }
        total += bottleneck;
    }
    FlowAssignment { flow, total }
}

fn tail(net: &FlowNetwork, e: usize) -> usize {
    let arc = &net.arcs[e / 2];
    if e.is_multiple_of(2) {
        arc.from
    } else {
        arc.to
    }
}

fn reaches_sink(net: &FlowNetwork) -> Vec<bool> {
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); net.node_count];
    for arc in &net.arcs {
        if arc.capacity.is_positive() {
            rev[arc.to].push(arc.from);
        }
    }
    let mut live = vec![false; net.node_count];
    live[net.sink] = true;
    let mut stack = vec![net.sink];
    while let Some(v) = stack.pop() {
        for &u in &rev[v] {
            if !live[u] {
                live[u] = true;
                stack.push(u);
            }
        }
    }
    live
}

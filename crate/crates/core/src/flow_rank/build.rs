use std::collections::{HashMap, VecDeque};
use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::network::FlowNetwork;
use crate::error::{Error, Result};
use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};

pub const DEFAULT_DEPTH_CAP: DepthCap = DepthCap::Hops(3);

/// How far from the person the social layer extends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthCap {
    Hops(usize),
    Unlimited,
}

impl DepthCap {
    fn allows_expansion_at(self, depth: usize) -> bool {
        match self {
            DepthCap::Hops(h) => depth < h,
            DepthCap::Unlimited => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowNode {
    Person(NodeId),
    Social { node: NodeId, depth: usize },
    Url(UrlId),
    Sink,
}

/// The personalized network for one person. Node 0 is the person, social
/// nodes follow in breadth-first discovery order, then one node per URL in
/// the order of the URL set, then the sink.
#[derive(Debug, Clone)]
pub struct FlowGraph {
    network: FlowNetwork,
    nodes: Vec<FlowNode>,
    url_nodes: Vec<(UrlId, usize)>,
    url_sink_arcs: Vec<usize>,
    social_arcs: usize,
    depth_cap: DepthCap,
}

impl FlowGraph {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn nodes(&self) -> &[FlowNode] {
        &self.nodes
    }

    pub fn person(&self) -> NodeId {
        match self.nodes[0] {
            FlowNode::Person(p) => p,
            _ => unreachable!("node 0 is the person"),
        }
    }

    pub fn depth_cap(&self) -> DepthCap {
        self.depth_cap
    }

    /// Flow-network index of every URL node, in URL-set order.
    pub fn url_nodes(&self) -> &[(UrlId, usize)] {
        &self.url_nodes
    }

    /// Arc index of the URL → sink arc for each entry of [`Self::url_nodes`].
    pub fn url_sink_arcs(&self) -> &[usize] {
        &self.url_sink_arcs
    }

    /// Number of social (user → user) arcs; they come first in the arc list.
    pub fn social_arc_count(&self) -> usize {
        self.social_arcs
    }

    /// Users in the social layer, person included.
    pub fn social_node_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, FlowNode::Person(_) | FlowNode::Social { .. }))
            .count()
    }

    fn label<'a>(&self, v: usize, graph: &'a GraphSnapshot, index: &'a ShareIndex) -> &'a str {
        match self.nodes[v] {
            FlowNode::Person(n) | FlowNode::Social { node: n, .. } => graph.handle(n),
            FlowNode::Url(u) => index.url(u),
            FlowNode::Sink => "__sink__",
        }
    }

    /// Writes one `src<TAB>dst<TAB>num/den` line per arc.
    pub fn write_arc_list(&self, graph: &GraphSnapshot, index: &ShareIndex, out: &mut impl Write) -> io::Result<()> {
        for arc in &self.network.arcs {
            writeln!(
                out,
                "{}\t{}\t{}/{}",
                self.label(arc.from, graph, index),
                self.label(arc.to, graph, index),
                arc.capacity.numer(),
                arc.capacity.denom()
            )?;
        }
        Ok(())
    }
}

/// Builds the flow network personalized to `person`.
///
/// The social layer is grown breadth-first along follow edges: each node
/// closer than `depth_cap` hops contributes an arc to every user it follows,
/// adding that user if new. Arcs into the person are not copied. Once the
/// layer is complete each social arc out of `v` gets capacity
/// `1 / (social arcs out of v)`. URL and sink arcs have capacity 1; a URL
/// without spreaders in the layer still gets its node and sink arc.
pub fn build_flow_graph(
    graph: &GraphSnapshot,
    index: &ShareIndex,
    person: NodeId,
    url_set: &[UrlId],
    depth_cap: DepthCap,
) -> Result<FlowGraph> {
    if !graph.contains(person) {
        return Err(Error::UnknownNode(person.0));
    }
    if depth_cap == DepthCap::Hops(0) {
        return Err(Error::InvalidParams("depth cap must be at least 1".into()));
    }
    index.check_urls(url_set)?;
    {
        let mut sorted = url_set.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams("url set contains duplicates".into()));
        }
    }

    let mut local: HashMap<NodeId, usize> = HashMap::new();
    let mut nodes = vec![FlowNode::Person(person)];
    local.insert(person, 0);
    let mut social: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([(person, 0usize)]);
    while let Some((v, depth)) = queue.pop_front() {
        if !depth_cap.allows_expansion_at(depth) {
            continue;
        }
        let from = local[&v];
        for &w in graph.followees(v) {
            if w == person {
                continue;
            }
            let to = *local.entry(w).or_insert_with(|| {
                nodes.push(FlowNode::Social { node: w, depth: depth + 1 });
                queue.push_back((w, depth + 1));
                nodes.len() - 1
            });
            social.push((from, to));
        }
    }

    let mut out_deg = vec![0i64; nodes.len()];
    for &(a, _) in &social {
        out_deg[a] += 1;
    }

    let first_url = nodes.len();
    let sink = first_url + url_set.len();
    let mut network = FlowNetwork::new(sink + 1, 0, sink);
    for &(a, b) in &social {
        network.add_arc(a, b, BigRational::new(BigInt::one(), BigInt::from(out_deg[a])));
    }
    let mut url_nodes = Vec::with_capacity(url_set.len());
    for (i, &u) in url_set.iter().enumerate() {
        let node = first_url + i;
        nodes.push(FlowNode::Url(u));
        url_nodes.push((u, node));
        for s in index.spreaders(u) {
            if let Some(&from) = local.get(s) {
                network.add_arc(from, node, BigRational::one());
            }
        }
    }
    let mut url_sink_arcs = Vec::with_capacity(url_set.len());
    for &(_, node) in &url_nodes {
        url_sink_arcs.push(network.add_arc(node, sink, BigRational::one()));
    }
    nodes.push(FlowNode::Sink);

    Ok(FlowGraph {
        network,
        nodes,
        url_nodes,
        url_sink_arcs,
        social_arcs: social.len(),
        depth_cap,
    })
}

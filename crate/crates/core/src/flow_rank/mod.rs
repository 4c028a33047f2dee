//! Personalized URL ranking by maximum flow.
//!
//! For a person `p`, the follow graph within a hop limit of `p` is copied
//! into a flow network where each social arc out of `v` carries capacity
//! `1 / outdeg(v)` (degree counted inside the copy). Every selected URL is a
//! node fed by capacity-1 arcs from its spreaders and draining into a super
//! sink through a capacity-1 arc. URLs are ranked by the flow reaching the
//! sink through them in one deterministic maximum flow.

mod build;
mod network;
mod rank;

pub use build::{build_flow_graph, DepthCap, FlowGraph, FlowNode, DEFAULT_DEPTH_CAP};
pub use network::{edmonds_karp, Capacity, FlowArc, FlowAssignment, FlowNetwork};
pub use rank::{personalized_rank, rank_for_users, PersonalizedRanking};

/// Maximum flow from the person to the super sink of `fg`.
pub fn max_flow(fg: &FlowGraph) -> FlowAssignment {
    edmonds_karp(fg.network())
}

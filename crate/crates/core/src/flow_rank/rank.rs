use rayon::prelude::*;

use super::build::{build_flow_graph, DepthCap, FlowGraph};
use super::network::{Capacity, FlowAssignment};
use crate::error::{Error, Result};
use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};
use crate::ranking::{cmp_positions, HasUrl, RankedList};

#[derive(Debug, Clone, PartialEq)]
pub struct PersonalizedRanking {
    pub person: NodeId,
    pub positions: RankedList,
    /// Flow through each URL's sink arc, in URL-set order.
    pub url_flows: Vec<(UrlId, Capacity)>,
    pub total_flow: Capacity,
}

struct Keyed {
    url: UrlId,
    flow: Capacity,
    baseline: Option<u32>,
}

impl HasUrl for Keyed {
    fn url(&self) -> UrlId {
        self.url
    }
}

/// Orders URLs by descending delivered flow, then by their position in
/// `tie_breaker`. URLs equal on both share a position.
pub fn personalized_rank(
    fg: &FlowGraph,
    flow: &FlowAssignment,
    tie_breaker: &RankedList,
) -> Result<PersonalizedRanking> {
    let mut keyed = Vec::with_capacity(fg.url_nodes().len());
    for (&(url, _), &arc) in fg.url_nodes().iter().zip(fg.url_sink_arcs()) {
        let baseline = tie_breaker.position(url).ok_or(Error::MissingTieBreak(url.0))?;
        keyed.push(Keyed {
            url,
            flow: flow.flow[arc].clone(),
            baseline: Some(baseline),
        });
    }
    let url_flows = keyed.iter().map(|k| (k.url, k.flow.clone())).collect();
    keyed.sort_by(|a, b| {
        b.flow
            .cmp(&a.flow)
            .then_with(|| cmp_positions(a.baseline, b.baseline))
            .then(a.url.cmp(&b.url))
    });
    let positions = RankedList::from_sorted_by(keyed, |a, b| a.flow == b.flow && a.baseline == b.baseline);
    Ok(PersonalizedRanking {
        person: fg.person(),
        positions,
        url_flows,
        total_flow: flow.total.clone(),
    })
}

/// Runs build → max flow → rank for each person independently. Output order
/// follows `persons`.
pub fn rank_for_users(
    graph: &GraphSnapshot,
    index: &ShareIndex,
    persons: &[NodeId],
    url_set: &[UrlId],
    depth_cap: DepthCap,
    tie_breaker: &RankedList,
) -> Result<Vec<PersonalizedRanking>> {
    if persons.is_empty() {
        return Err(Error::InvalidParams("no persons to rank for".into()));
    }
    persons
        .par_iter()
        .map(|&p| {
            let fg = build_flow_graph(graph, index, p, url_set, depth_cap)?;
            let flow = super::max_flow(&fg);
            personalized_rank(&fg, &flow, tie_breaker)
        })
        .collect()
}

//! Scaled PageRank over the follow graph and the per-URL PRSN score.
//!
//! A user passes its score along follow edges, split evenly over the users
//! it follows. Users who follow nobody spread their score uniformly over all
//! users, so the score vector keeps unit mass. The link operator is scaled by
//! `sigma` and every node receives the uniform `(1 - sigma) / n` share.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};
use crate::ranking::RankedList;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub sigma: f64,
    pub iterations: usize,
    /// Stop once the L1 change between iterations drops below this.
    pub epsilon: f64,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            sigma: 0.85,
            iterations: 100,
            epsilon: 1e-10,
        }
    }
}

impl PageRankParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::InvalidParams(format!("sigma must lie in (0, 1), got {}", self.sigma)));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParams("pagerank iterations must be at least 1".into()));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub iterations_run: usize,
    pub converged: bool,
}

impl ScoreVector {
    pub fn score(&self, node: NodeId) -> f64 {
        self.values[node.index()]
    }
}

/// The row-stochastic link operator of a graph, streamed from the adjacency
/// lists. Row `i` puts `1 / outdeg(i)` on each followee; rows of users who
/// follow nobody are uniform.
#[derive(Debug, Clone, Copy)]
pub struct TransitionOperator<'g> {
    graph: &'g GraphSnapshot,
}

pub fn transition_weights(graph: &GraphSnapshot) -> TransitionOperator<'_> {
    TransitionOperator { graph }
}

impl TransitionOperator<'_> {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn weight(&self, from: NodeId, to: NodeId) -> f64 {
        let deg = self.graph.out_degree(from);
        if deg == 0 {
            1.0 / self.graph.node_count() as f64
        } else if self.graph.has_edge(from, to) {
            1.0 / deg as f64
        } else {
            0.0
        }
    }

    /// Writes `F^T x` into `out`.
    pub fn apply_transposed(&self, x: &[f64], out: &mut [f64]) {
        let g = self.graph;
        let n = g.node_count();
        let contrib: Vec<f64> = (0..n)
            .map(|i| {
                let deg = g.out_degree(NodeId(i as u32));
                if deg == 0 {
                    0.0
                } else {
                    x[i] / deg as f64
                }
            })
            .collect();
        let dangling: f64 = (0..n)
            .filter(|&i| g.out_degree(NodeId(i as u32)) == 0)
            .map(|i| x[i])
            .sum();
        let spread = dangling / n as f64;
        out.par_iter_mut().enumerate().for_each(|(j, slot)| {
            let incoming: f64 = g.followers(NodeId(j as u32)).iter().map(|v| contrib[v.index()]).sum();
            *slot = incoming + spread;
        });
    }
}

/// Power iteration `R <- sigma * F^T R + (1 - sigma) / n` from the uniform
/// vector.
pub fn scaled_pagerank(graph: &GraphSnapshot, params: PageRankParams) -> Result<ScoreVector> {
    scaled_pagerank_observed(graph, params, |_, _| {})
}

/// As [`scaled_pagerank`], calling `observe(iteration, scores)` after every
/// iteration.
pub fn scaled_pagerank_observed(
    graph: &GraphSnapshot,
    params: PageRankParams,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<ScoreVector> {
    params.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let op = transition_weights(graph);
    let teleport = (1.0 - params.sigma) / n as f64;
    let mut current = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut iterations_run = 0;
    let mut converged = false;

    for it in 1..=params.iterations {
        op.apply_transposed(&current, &mut next);
        for v in next.iter_mut() {
            *v = params.sigma * *v + teleport;
        }
        let change: f64 = current.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut current, &mut next);
        iterations_run = it;
        observe(it, &current);
        if change < params.epsilon {
            converged = true;
            break;
        }
    }
    Ok(ScoreVector {
        values: current,
        iterations_run,
        converged,
    })
}

/// PRSN scores over an evaluated URL set, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct UrlScoreTable {
    pub scores: Vec<(UrlId, f64)>,
}

impl UrlScoreTable {
    pub fn score(&self, url: UrlId) -> Option<f64> {
        self.scores.iter().find(|(u, _)| *u == url).map(|&(_, s)| s)
    }
}

/// Scores each URL by the summed PageRank of its spreaders, normalized over
/// `url_set`.
pub fn prsn_scores(ranks: &ScoreVector, index: &ShareIndex, url_set: &[UrlId]) -> Result<UrlScoreTable> {
    index.check_urls(url_set)?;
    let mass: Vec<(UrlId, f64)> = url_set
        .iter()
        .map(|&u| {
            let s: f64 = index
                .spreaders(u)
                .iter()
                .map(|v| ranks.values.get(v.index()).copied().unwrap_or(0.0))
                .sum();
            (u, s)
        })
        .collect();
    let total: f64 = mass.iter().map(|(_, s)| s).sum();
    if total <= 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(UrlScoreTable {
        scores: mass.into_iter().map(|(u, s)| (u, s / total)).collect(),
    })
}

pub fn rank_urls(table: &UrlScoreTable) -> Result<RankedList> {
    if table.scores.is_empty() {
        return Err(Error::EmptyUrlSet);
    }
    Ok(RankedList::from_scores(&table.scores))
}

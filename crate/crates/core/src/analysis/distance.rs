use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;

use super::stream_rng;
use crate::error::{Error, Result};
use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};

/// Which edges a shortest path may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    #[default]
    Undirected,
    /// Along follow edges, follower → followee.
    Follow,
    /// Against follow edges, followee → follower.
    Reverse,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(Direction::Undirected),
            "follow" => Ok(Direction::Follow),
            "reverse" => Ok(Direction::Reverse),
            other => Err(Error::InvalidParams(format!(
                "distance direction must be undirected, follow or reverse, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Undirected => "undirected",
            Direction::Follow => "follow",
            Direction::Reverse => "reverse",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSample {
    pub url: UrlId,
    /// Mean hop count over reachable (source, spreader) pairs; `None` when no
    /// pair is reachable.
    pub avg_distance: Option<f64>,
    pub sampled_sources: usize,
    pub sampled_spreaders: usize,
    pub unreachable_pairs: usize,
}

/// Breadth-first distances from a fixed set of source users, reused across
/// URLs.
#[derive(Debug, Clone)]
pub struct DistanceSampler {
    sources: Vec<NodeId>,
    dist: Vec<Vec<u32>>,
}

const UNREACHED: u32 = u32::MAX;

impl DistanceSampler {
    /// Draws `n_sources` distinct users uniformly (all users if fewer).
    pub fn new(graph: &GraphSnapshot, n_sources: usize, seed: u64, direction: Direction) -> Result<Self> {
        if n_sources == 0 {
            return Err(Error::InvalidParams("need at least one distance source".into()));
        }
        if graph.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut rng = stream_rng(seed, 2);
        let k = n_sources.min(graph.node_count());
        let sources = sample(&mut rng, graph.node_count(), k)
            .into_iter()
            .map(|i| NodeId(i as u32))
            .collect();
        Self::with_sources(graph, sources, direction)
    }

    pub fn with_sources(graph: &GraphSnapshot, sources: Vec<NodeId>, direction: Direction) -> Result<Self> {
        if let Some(bad) = sources.iter().find(|v| !graph.contains(**v)) {
            return Err(Error::UnknownNode(bad.0));
        }
        let dist = sources.iter().map(|&s| bfs(graph, s, direction)).collect();
        Ok(DistanceSampler { sources, dist })
    }

    pub fn sources(&self) -> &[NodeId] {
        &self.sources
    }

    /// Average distance from the sources to a seeded random subset of at most
    /// `n_spreaders` spreaders of `url`.
    pub fn sample(&self, index: &ShareIndex, url: UrlId, n_spreaders: usize, seed: u64) -> Result<DistanceSample> {
        if n_spreaders == 0 {
            return Err(Error::InvalidParams("need at least one spreader per url".into()));
        }
        let all = index.spreaders(url);
        let k = n_spreaders.min(all.len());
        let mut rng = stream_rng(seed, 3 + u64::from(url.0));
        let picked: Vec<NodeId> = if k == all.len() {
            all.to_vec()
        } else {
            sample(&mut rng, all.len(), k).into_iter().map(|i| all[i]).collect()
        };
        Ok(self.measure(url, &picked))
    }

    /// Average distance from the sources to exactly `targets`.
    pub fn measure(&self, url: UrlId, targets: &[NodeId]) -> DistanceSample {
        let mut total = 0u64;
        let mut reached = 0u64;
        let mut unreachable = 0;
        for dist in &self.dist {
            for t in targets {
                match dist[t.index()] {
                    UNREACHED => unreachable += 1,
                    d => {
                        total += u64::from(d);
                        reached += 1;
                    }
                }
            }
        }
        DistanceSample {
            url,
            avg_distance: (reached > 0).then(|| total as f64 / reached as f64),
            sampled_sources: self.sources.len(),
            sampled_spreaders: targets.len(),
            unreachable_pairs: unreachable,
        }
    }
}

fn bfs(graph: &GraphSnapshot, source: NodeId, direction: Direction) -> Vec<u32> {
    let mut dist = vec![UNREACHED; graph.node_count()];
    dist[source.index()] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.index()] + 1;
        let (a, b): (&[NodeId], &[NodeId]) = match direction {
            Direction::Follow => (graph.followees(v), &[]),
            Direction::Reverse => (graph.followers(v), &[]),
            Direction::Undirected => (graph.followees(v), graph.followers(v)),
        };
        for &w in a.iter().chain(b) {
            if dist[w.index()] == UNREACHED {
                dist[w.index()] = d;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// One-shot form of [`DistanceSampler`]: samples sources, then spreaders.
pub fn avg_distance_to_spreaders(
    graph: &GraphSnapshot,
    index: &ShareIndex,
    url: UrlId,
    n_sources: usize,
    n_spreader_sample: usize,
    seed: u64,
    direction: Direction,
) -> Result<DistanceSample> {
    DistanceSampler::new(graph, n_sources, seed, direction)?.sample(index, url, n_spreader_sample, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> (GraphSnapshot, ShareIndex) {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("a", "b"), ("b", "c")]);
        let idx = ShareIndex::from_shares(3, [(NodeId(2), "http://u")], 1).unwrap();
        (g, idx)
    }

    #[test]
    fn path_graph_distance_two() {
        let (g, idx) = path();
        for dir in [Direction::Undirected, Direction::Follow] {
            let s = DistanceSampler::with_sources(&g, vec![NodeId(0)], dir).unwrap();
            let d = s.sample(&idx, UrlId(0), 10, 0).unwrap();
            assert_eq!(d.avg_distance, Some(2.0));
            assert_eq!(d.unreachable_pairs, 0);
        }
        let s = DistanceSampler::with_sources(&g, vec![NodeId(0)], Direction::Reverse).unwrap();
        let d = s.sample(&idx, UrlId(0), 10, 0).unwrap();
        assert_eq!(d.avg_distance, None);
        assert_eq!(d.unreachable_pairs, 1);
    }

    #[test]
    fn spreader_source_contributes_zero() {
        let (g, idx) = path();
        let s = DistanceSampler::with_sources(&g, vec![NodeId(2), NodeId(0)], Direction::Undirected).unwrap();
        let d = s.sample(&idx, UrlId(0), 1, 0).unwrap();
        assert_eq!(d.avg_distance, Some(1.0));
        assert_eq!(d.sampled_sources, 2);
    }

    #[test]
    fn seeded_and_clipped() {
        let (g, idx) = path();
        let a = avg_distance_to_spreaders(&g, &idx, UrlId(0), 10, 5, 7, Direction::Undirected).unwrap();
        let b = avg_distance_to_spreaders(&g, &idx, UrlId(0), 10, 5, 7, Direction::Undirected).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sampled_sources, 3);
        assert_eq!(a.sampled_spreaders, 1);
        assert!(avg_distance_to_spreaders(&g, &idx, UrlId(0), 0, 5, 7, Direction::Undirected).is_err());
    }

    #[test]
    fn direction_parsing() {
        assert_eq!("follow".parse::<Direction>().unwrap(), Direction::Follow);
        assert!("sideways".parse::<Direction>().is_err());
        assert_eq!(Direction::default().to_string(), "undirected");
    }
}

use rand::seq::index::sample;

use super::stream_rng;
use crate::error::{Error, Result};
use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrlSetSelection {
    /// Most-shared URLs, by descending spreader count then ascending id.
    pub popular: Vec<UrlId>,
    /// Uniform sample without replacement, in sampled order.
    pub random: Vec<UrlId>,
    pub seed: u64,
    /// URLs present in both lists.
    pub overlap: usize,
}

impl UrlSetSelection {
    /// The first `n` URLs of each list, used for the ranking experiments.
    pub fn heads(&self, n: usize) -> Result<(Vec<UrlId>, Vec<UrlId>)> {
        let available = self.popular.len().min(self.random.len());
        if n > available {
            return Err(Error::SelectionTooLarge { requested: n, available });
        }
        Ok((self.popular[..n].to_vec(), self.random[..n].to_vec()))
    }
}

pub fn select_url_sets(index: &ShareIndex, n_popular: usize, n_random: usize, seed: u64) -> Result<UrlSetSelection> {
    let available = index.url_count();
    for requested in [n_popular, n_random] {
        if requested > available {
            return Err(Error::SelectionTooLarge { requested, available });
        }
    }
    let mut by_count: Vec<UrlId> = index.url_ids().collect();
    by_count.sort_by(|&a, &b| {
        index
            .spreaders(b)
            .len()
            .cmp(&index.spreaders(a).len())
            .then(a.cmp(&b))
    });
    by_count.truncate(n_popular);

    let mut rng = stream_rng(seed, 1);
    let random: Vec<UrlId> = sample(&mut rng, available, n_random)
        .into_iter()
        .map(|i| UrlId(i as u32))
        .collect();

    let mut sorted_popular = by_count.clone();
    sorted_popular.sort_unstable();
    let overlap = random.iter().filter(|u| sorted_popular.binary_search(u).is_ok()).count();
    Ok(UrlSetSelection {
        popular: by_count,
        random,
        seed,
        overlap,
    })
}

/// Draws `k` distinct users who follow at least one other user, in sampled
/// order. `stream` keeps independent draws (one per URL set) apart.
pub fn select_persons(graph: &GraphSnapshot, k: usize, seed: u64, stream: u64) -> Result<Vec<NodeId>> {
    let candidates: Vec<NodeId> = graph.nodes().filter(|&v| graph.out_degree(v) > 0).collect();
    if k == 0 {
        return Err(Error::InvalidParams("need at least one person".into()));
    }
    if k > candidates.len() {
        return Err(Error::SelectionTooLarge {
            requested: k,
            available: candidates.len(),
        });
    }
    let mut rng = stream_rng(seed, stream);
    Ok(sample(&mut rng, candidates.len(), k)
        .into_iter()
        .map(|i| candidates[i])
        .collect())
}

//! HITS on the user→URL share incidence (HSN).
//!
//! Users who shared a selected URL are hubs, the selected URLs are
//! authorities. Follow edges play no part.

use crate::error::{Error, Result};
use crate::graph_store::{NodeId, ShareIndex, UrlId};
use crate::ranking::RankedList;

pub const DEFAULT_HITS_ITERATIONS: usize = 50;
const CHANGE_TOLERANCE: f64 = 1e-12;

/// Hub×authority incidence with both adjacency directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteShareMatrix {
    hubs: Vec<NodeId>,
    authorities: Vec<UrlId>,
    hub_adj: Vec<Vec<usize>>,
    auth_adj: Vec<Vec<usize>>,
}

impl BipartiteShareMatrix {
    /// Builds the matrix from `(hub index, authority index)` pairs. Every hub
    /// and authority must be incident to at least one pair.
    pub fn from_incidence(
        hubs: Vec<NodeId>,
        authorities: Vec<UrlId>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut hub_adj = vec![Vec::new(); hubs.len()];
        let mut auth_adj = vec![Vec::new(); authorities.len()];
        for (h, a) in pairs {
            if h >= hubs.len() || a >= authorities.len() {
                return Err(Error::InvalidParams(format!("incidence ({h}, {a}) out of range")));
            }
            hub_adj[h].push(a);
            auth_adj[a].push(h);
        }
        for list in hub_adj.iter_mut().chain(auth_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        if hubs.is_empty() || authorities.is_empty() {
            return Err(Error::NoSpreaders);
        }
        if hub_adj.iter().chain(auth_adj.iter()).any(Vec::is_empty) {
            return Err(Error::InvalidParams("every hub and authority needs an incidence".into()));
        }
        Ok(BipartiteShareMatrix {
            hubs,
            authorities,
            hub_adj,
            auth_adj,
        })
    }

    pub fn hubs(&self) -> &[NodeId] {
        &self.hubs
    }

    pub fn authorities(&self) -> &[UrlId] {
        &self.authorities
    }

    pub fn edge_count(&self) -> usize {
        self.hub_adj.iter().map(Vec::len).sum()
    }

    /// Authority indices shared by hub `h`.
    pub fn hub_row(&self, h: usize) -> &[usize] {
        &self.hub_adj[h]
    }
}

/// Hubs are the union of spreaders of `url_set`, ascending; authorities keep
/// the order of `url_set`.
pub fn build_share_matrix(index: &ShareIndex, url_set: &[UrlId]) -> Result<BipartiteShareMatrix> {
    index.check_urls(url_set)?;
    let mut hubs: Vec<NodeId> = url_set
        .iter()
        .flat_map(|&u| index.spreaders(u).iter().copied())
        .collect();
    hubs.sort_unstable();
    hubs.dedup();
    if hubs.is_empty() {
        return Err(Error::NoSpreaders);
    }
    let pairs: Vec<(usize, usize)> = url_set
        .iter()
        .enumerate()
        .flat_map(|(a, &u)| {
            let hubs = &hubs;
            index
                .spreaders(u)
                .iter()
                .map(move |v| (hubs.binary_search(v).expect("hub present"), a))
        })
        .collect();
    BipartiteShareMatrix::from_incidence(hubs, url_set.to_vec(), pairs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsState {
    pub hub_scores: Vec<f64>,
    /// Normalized to sum to one.
    pub authority_scores: Vec<f64>,
    pub iterations_run: usize,
    authorities: Vec<UrlId>,
}

impl HitsState {
    pub fn authority_score(&self, url: UrlId) -> Option<f64> {
        self.authorities
            .iter()
            .position(|&u| u == url)
            .map(|i| self.authority_scores[i])
    }

    pub fn authorities(&self) -> &[UrlId] {
        &self.authorities
    }
}

/// Runs `k` rounds of `a <- M^T h; h <- M a` starting from hub out-degrees.
///
/// Both vectors are rescaled to unit L2 norm each round, and the loop exits
/// early once neither moves by more than 1e-12 in L1. Authority scores are
/// finally divided by their sum.
pub fn hits(matrix: &BipartiteShareMatrix, k: usize) -> Result<HitsState> {
    if k == 0 {
        return Err(Error::InvalidParams("hits iterations must be at least 1".into()));
    }
    let n_hubs = matrix.hubs.len();
    let n_auth = matrix.authorities.len();
    if n_hubs == 0 || n_auth == 0 {
        return Err(Error::NoSpreaders);
    }

    let mut hub: Vec<f64> = matrix.hub_adj.iter().map(|r| r.len() as f64).collect();
    let mut auth = vec![0.0; n_auth];
    let mut iterations_run = 0;

    for it in 1..=k {
        let new_auth: Vec<f64> = matrix
            .auth_adj
            .iter()
            .map(|hs| hs.iter().map(|&h| hub[h]).sum())
            .collect();
        let new_auth = l2_normalized(new_auth);
        let new_hub: Vec<f64> = matrix
            .hub_adj
            .iter()
            .map(|aa| aa.iter().map(|&a| new_auth[a]).sum())
            .collect();
        let new_hub = l2_normalized(new_hub);

        let auth_change = l1_distance(&auth, &new_auth);
        let hub_change = if it == 1 { f64::INFINITY } else { l1_distance(&hub, &new_hub) };
        auth = new_auth;
        hub = new_hub;
        iterations_run = it;
        if auth_change < CHANGE_TOLERANCE && hub_change < CHANGE_TOLERANCE {
            break;
        }
    }

    let total: f64 = auth.iter().sum();
    let authority_scores = auth.iter().map(|a| a / total).collect();
    Ok(HitsState {
        hub_scores: hub,
        authority_scores,
        iterations_run,
        authorities: matrix.authorities.clone(),
    })
}

pub fn hsn_rank(state: &HitsState) -> RankedList {
    let scores: Vec<(UrlId, f64)> = state
        .authorities
        .iter()
        .copied()
        .zip(state.authority_scores.iter().copied())
        .collect();
    RankedList::from_scores(&scores)
}

fn l2_normalized(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

use crate::graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffectedSetStats {
    pub url: UrlId,
    pub affected_size: usize,
    pub spreader_count: usize,
}

/// Followers of any spreader of `url` who did not share it themselves,
/// ascending.
pub fn affected_nodes(graph: &GraphSnapshot, index: &ShareIndex, url: UrlId) -> Vec<NodeId> {
    let spreaders = index.spreaders(url);
    let mut out: Vec<NodeId> = spreaders
        .iter()
        .flat_map(|&s| graph.followers(s).iter().copied())
        .filter(|v| spreaders.binary_search(v).is_err())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn affected_set(graph: &GraphSnapshot, index: &ShareIndex, url: UrlId) -> AffectedSetStats {
    AffectedSetStats {
        url,
        affected_size: affected_nodes(graph, index, url).len(),
        spreader_count: index.spreaders(url).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("a", "s"), ("b", "s"), ("c", "s"), ("d", "s"), ("e", "s")]);
        let s = g.node_by_handle("s").unwrap();
        let idx = ShareIndex::from_shares(g.node_count(), [(s, "http://u")], 1).unwrap();
        assert_eq!(affected_set(&g, &idx, UrlId(0)).affected_size, 5);
    }

    #[test]
    fn common_followers_once() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[
            ("f1", "s1"), ("f2", "s1"), ("f3", "s1"),
            ("f1", "s2"), ("f2", "s2"), ("f3", "s2"), ("f4", "s2"),
        ]);
        let id = |h| g.node_by_handle(h).unwrap();
        let idx = ShareIndex::from_shares(g.node_count(), [(id("s1"), "http://u"), (id("s2"), "http://u")], 1).unwrap();
        let st = affected_set(&g, &idx, UrlId(0));
        assert_eq!(st.affected_size, 4);
        assert_eq!(st.spreader_count, 2);
    }

    #[test]
    fn spreader_following_spreader_excluded() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("s1", "s2"), ("f", "s2"), ("g", "s1")]);
        let id = |h| g.node_by_handle(h).unwrap();
        let idx = ShareIndex::from_shares(g.node_count(), [(id("s1"), "http://u"), (id("s2"), "http://u")], 1).unwrap();
        let nodes = affected_nodes(&g, &idx, UrlId(0));
        assert_eq!(nodes.len(), 2);
        assert!(!nodes.contains(&id("s1")));
    }
}

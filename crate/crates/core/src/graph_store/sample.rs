use std::collections::VecDeque;

use super::graph::{GraphSnapshot, NodeId};
use crate::error::{Error, Result};

/// Induced subgraph on the first `max_nodes` users reached by a
/// breadth-first walk along follow edges from `seed`.
///
/// Neighbours are visited in ascending id order. Sampled nodes are
/// renumbered in discovery order and keep their handles.
pub fn bfs_sample(graph: &GraphSnapshot, seed: NodeId, max_nodes: usize) -> Result<GraphSnapshot> {
    if !graph.contains(seed) {
        return Err(Error::UnknownNode(seed.0));
    }
    if max_nodes == 0 {
        return Err(Error::InvalidParams("max_nodes must be at least 1".into()));
    }
    let mut new_id = vec![u32::MAX; graph.node_count()];
    let mut order = vec![seed];
    new_id[seed.index()] = 0;
    let mut queue = VecDeque::from([seed]);
    'walk: while let Some(v) = queue.pop_front() {
        for &w in graph.followees(v) {
            if new_id[w.index()] == u32::MAX {
                if order.len() == max_nodes {
                    break 'walk;
                }
                new_id[w.index()] = order.len() as u32;
                order.push(w);
                queue.push_back(w);
            }
        }
    }

    let handles = order.iter().map(|&v| graph.handle(v).to_owned()).collect();
    let edges = order.iter().flat_map(|&v| {
        let from = new_id[v.index()];
        let new_id = &new_id;
        graph
            .followees(v)
            .iter()
            .filter(move |w| new_id[w.index()] != u32::MAX)
            .map(move |w| (from, new_id[w.index()]))
    });
    GraphSnapshot::from_edges(handles, edges.collect::<Vec<_>>()).map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_takes_lowest_leaves() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")]);
        let s = bfs_sample(&g, NodeId(0), 3).unwrap();
        assert_eq!(s.handles(), &["c", "l1", "l2"]);
        assert_eq!(s.edge_count(), 2);
    }

    #[test]
    fn saturates_at_reachable_set() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("a", "b"), ("b", "c"), ("c", "a"), ("d", "a")]);
        let s = bfs_sample(&g, NodeId(0), 100).unwrap();
        assert_eq!(s.node_count(), 3);
        assert_eq!(s.edge_count(), 3);
        assert!(s.node_by_handle("d").is_none());
    }

    #[test]
    fn bad_inputs() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[("a", "b")]);
        assert!(bfs_sample(&g, NodeId(5), 1).is_err());
        assert!(bfs_sample(&g, NodeId(0), 0).is_err());
    }

    #[test]
    fn deterministic() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[
            ("a", "c"), ("a", "b"), ("b", "d"), ("c", "d"), ("d", "e"), ("c", "e"),
        ]);
        let s1 = bfs_sample(&g, NodeId(0), 4).unwrap();
        let s2 = bfs_sample(&g, NodeId(0), 4).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.handles(), &["a", "c", "b", "d"]);
    }
}

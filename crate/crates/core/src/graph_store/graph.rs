use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Dense index of a user in a [`GraphSnapshot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Counts of edges discarded while building a snapshot.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeLoadReport {
    pub lines: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Immutable follow graph in compressed sparse row form, both directions.
///
/// Adjacency lists are sorted ascending, free of duplicates and self-loops,
/// and the in-lists are exactly the transpose of the out-lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSnapshot {
    symbols: Vec<String>,
    lookup: HashMap<String, NodeId>,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
}

impl GraphSnapshot {
    /// Builds a snapshot from node handles and `(follower, followee)` index
    /// pairs. Duplicates and self-loops are dropped and counted.
    pub fn from_edges(
        symbols: Vec<String>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<(Self, EdgeLoadReport)> {
        let n = symbols.len();
        let mut report = EdgeLoadReport::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            report.lines += 1;
            if a as usize >= n {
                return Err(Error::UnknownNode(a));
            }
            if b as usize >= n {
                return Err(Error::UnknownNode(b));
            }
            if a == b {
                report.self_loops += 1;
                continue;
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        report.duplicate_edges = before - pairs.len();

        let mut lookup = HashMap::with_capacity(n);
        for (i, s) in symbols.iter().enumerate() {
            if lookup.insert(s.clone(), NodeId(i as u32)).is_some() {
                return Err(Error::InvalidParams(format!("duplicate handle {s:?}")));
            }
        }

        let (out_offsets, out_targets) = csr(n, pairs.iter().copied());
        let mut reversed: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        reversed.sort_unstable();
        let (in_offsets, in_sources) = csr(n, reversed.into_iter());

        Ok((
            GraphSnapshot {
                symbols,
                lookup,
                out_offsets,
                out_targets,
                in_offsets,
                in_sources,
            },
            report,
        ))
    }

    /// Convenience constructor keyed by handle; nodes are numbered in order
    /// of first appearance.
    pub fn from_handle_edges<S: AsRef<str>>(edges: &[(S, S)]) -> (Self, EdgeLoadReport) {
        let mut builder = SymbolTable::default();
        let pairs: Vec<(u32, u32)> = edges
            .iter()
            .map(|(a, b)| (builder.intern(a.as_ref()), builder.intern(b.as_ref())))
            .collect();
        Self::from_edges(builder.symbols, pairs).expect("interned ids are in range")
    }

    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.symbols.len() as u32).map(NodeId)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.index() < self.symbols.len()
    }

    /// Users that `node` follows, ascending.
    #[inline]
    pub fn followees(&self, node: NodeId) -> &[NodeId] {
        let i = node.index();
        &self.out_targets[self.out_offsets[i]..self.out_offsets[i + 1]]
    }

    /// Users following `node`, ascending.
    #[inline]
    pub fn followers(&self, node: NodeId) -> &[NodeId] {
        let i = node.index();
        &self.in_sources[self.in_offsets[i]..self.in_offsets[i + 1]]
    }

    #[inline]
    pub fn out_degree(&self, node: NodeId) -> usize {
        let i = node.index();
        self.out_offsets[i + 1] - self.out_offsets[i]
    }

    #[inline]
    pub fn in_degree(&self, node: NodeId) -> usize {
        let i = node.index();
        self.in_offsets[i + 1] - self.in_offsets[i]
    }

    pub fn has_edge(&self, from: NodeId, to: NodeId) -> bool {
        self.followees(from).binary_search(&to).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |a| self.followees(a).iter().map(move |&b| (a, b)))
    }

    pub fn handle(&self, node: NodeId) -> &str {
        &self.symbols[node.index()]
    }

    pub fn node_by_handle(&self, handle: &str) -> Option<NodeId> {
        self.lookup.get(handle).copied()
    }

    pub fn handles(&self) -> &[String] {
        &self.symbols
    }
}

fn csr(n: usize, sorted_pairs: impl Iterator<Item = (u32, u32)>) -> (Vec<usize>, Vec<NodeId>) {
    let mut offsets = vec![0usize; n + 1];
    let mut targets = Vec::new();
    for (a, b) in sorted_pairs {
        offsets[a as usize + 1] += 1;
        targets.push(NodeId(b));
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    (offsets, targets)
}

#[derive(Default)]
pub(crate) struct SymbolTable {
    pub(crate) symbols: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl SymbolTable {
    pub(crate) fn intern(&mut self, handle: &str) -> u32 {
        if let Some(&id) = self.lookup.get(handle) {
            return id;
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(handle.to_owned());
        self.lookup.insert(handle.to_owned(), id);
        id
    }
}

/// Iterates over the content lines of a TSV file, skipping blanks and `#`
/// comments. Yields 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Reads a `follower<TAB>followee` edge list.
///
/// Node ids follow the order of first appearance, with handles from the
/// optional manifest (one handle per line) numbered first.
pub fn load_edges(path: &Path, manifest: Option<&Path>) -> Result<(GraphSnapshot, EdgeLoadReport)> {
    let mut table = SymbolTable::default();
    if let Some(manifest) = manifest {
        let text = read_text(manifest)?;
        for (line_no, line) in data_lines(&text) {
            if line.contains('\t') {
                return Err(Error::parse(manifest, line_no, "node manifest lines hold one handle"));
            }
            table.intern(line);
        }
    }

    let text = read_text(path)?;
    let mut pairs = Vec::new();
    for (line_no, line) in data_lines(&text) {
        let mut fields = line.split('\t');
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(path, line_no, "expected follower<TAB>followee"));
        };
        if a.is_empty() || b.is_empty() {
            return Err(Error::parse(path, line_no, "empty handle"));
        }
        pairs.push((table.intern(a), table.intern(b)));
    }
    GraphSnapshot::from_edges(table.symbols, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn two_cycle() {
        let f = write_tmp("a\tb\nb\ta\n");
        let (g, _) = load_edges(f.path(), None).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 2);
        for v in g.nodes() {
            assert_eq!(g.in_degree(v), 1);
            assert_eq!(g.out_degree(v), 1);
        }
    }

    #[test]
    fn duplicates_and_self_loops_dropped() {
        let f = write_tmp("# comment\na\tb\na\tb\na\ta\n");
        let (g, report) = load_edges(f.path(), None).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(report.self_loops, 1);
    }

    #[test]
    fn empty_file_is_empty_graph() {
        let f = write_tmp("");
        let (g, _) = load_edges(f.path(), None).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let f = write_tmp("a\tb\n\nb c\n");
        match load_edges(f.path(), None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let f = write_tmp("a\tb\tc\n");
        assert!(matches!(load_edges(f.path(), None), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn manifest_adds_isolated_nodes() {
        let m = write_tmp("z\na\n");
        let f = write_tmp("a\tb\n");
        let (g, _) = load_edges(f.path(), Some(m.path())).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.node_by_handle("z"), Some(NodeId(0)));
        assert_eq!(g.out_degree(NodeId(0)), 0);
        assert!(g.has_edge(NodeId(1), NodeId(2)));
    }

    #[test]
    fn transpose_consistency() {
        let (g, _) = GraphSnapshot::from_handle_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("c", "b"),
            ("b", "a"),
            ("d", "a"),
        ]);
        for a in g.nodes() {
            for b in g.nodes() {
                assert_eq!(g.followees(a).contains(&b), g.followers(b).contains(&a));
            }
        }
        let outs: usize = g.nodes().map(|v| g.out_degree(v)).sum();
        let ins: usize = g.nodes().map(|v| g.in_degree(v)).sum();
        assert_eq!(outs, g.edge_count());
        assert_eq!(ins, g.edge_count());
    }
}

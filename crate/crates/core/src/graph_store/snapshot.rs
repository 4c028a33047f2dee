//! Binary cache for an ingested graph and share index.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "SOCRANK1"
//! u64 nodes   { u32 len, utf8 handle }*
//! u64 edges   { u32 follower, u32 followee }*   sorted
//! u64 urls    { u32 len, utf8 url, u32 k, u32 spreader * k }*
//! ```

use std::fs;
use std::path::Path;

use super::graph::{GraphSnapshot, NodeId};
use super::shares::ShareIndex;
use crate::error::{Error, Result};

pub const SNAPSHOT_MAGIC: &[u8; 8] = b"SOCRANK1";

pub fn encode_snapshot(graph: &GraphSnapshot, index: &ShareIndex) -> Vec<u8> {
    let mut buf = Vec::with_capacity(16 + graph.edge_count() * 8);
    buf.extend_from_slice(SNAPSHOT_MAGIC);
    put_u64(&mut buf, graph.node_count() as u64);
    for handle in graph.handles() {
        put_str(&mut buf, handle);
    }
    put_u64(&mut buf, graph.edge_count() as u64);
    for (a, b) in graph.edges() {
        put_u32(&mut buf, a.0);
        put_u32(&mut buf, b.0);
    }
    put_u64(&mut buf, index.url_count() as u64);
    for u in index.url_ids() {
        put_str(&mut buf, index.url(u));
        let spreaders = index.spreaders(u);
        put_u32(&mut buf, spreaders.len() as u32);
        for v in spreaders {
            put_u32(&mut buf, v.0);
        }
    }
    buf
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<(GraphSnapshot, ShareIndex)> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.take(8)?;
    if magic != SNAPSHOT_MAGIC {
        return Err(Error::Snapshot(format!(
            "unsupported header {:?}, expected {:?}",
            String::from_utf8_lossy(magic),
            std::str::from_utf8(SNAPSHOT_MAGIC).unwrap()
        )));
    }
    let n = r.len()?;
    let mut handles = Vec::with_capacity(n);
    for _ in 0..n {
        handles.push(r.string()?);
    }
    let m = r.len()?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        edges.push((r.u32()?, r.u32()?));
    }
    let (graph, report) = GraphSnapshot::from_edges(handles, edges)?;
    if report.duplicate_edges + report.self_loops > 0 {
        return Err(Error::Snapshot("edge section is not canonical".into()));
    }
    let urls_len = r.len()?;
    let mut urls = Vec::with_capacity(urls_len);
    let mut spreaders = Vec::with_capacity(urls_len);
    for _ in 0..urls_len {
        urls.push(r.string()?);
        let k = r.u32()? as usize;
        let mut users = Vec::with_capacity(k);
        for _ in 0..k {
            let v = r.u32()?;
            if v as usize >= n {
                return Err(Error::Snapshot(format!("spreader {v} out of range")));
            }
            users.push(NodeId(v));
        }
        if users.is_empty() || users.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Snapshot("spreader list not sorted and non-empty".into()));
        }
        spreaders.push(users);
    }
    if urls.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Snapshot("url table not sorted".into()));
    }
    if r.pos != bytes.len() {
        return Err(Error::Snapshot("trailing bytes".into()));
    }
    Ok((graph, ShareIndex::from_parts(n, urls, spreaders)))
}

pub fn write_snapshot(path: &Path, graph: &GraphSnapshot, index: &ShareIndex) -> Result<()> {
    fs::write(path, encode_snapshot(graph, index)).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<(GraphSnapshot, ShareIndex)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_snapshot(&bytes)
}

fn put_u32(buf: &mut Vec<u8>, v: u32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(buf: &mut Vec<u8>, v: u64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    put_u32(buf, s.len() as u32);
    buf.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(k)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Snapshot("truncated".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn len(&mut self) -> Result<usize> {
        let v = u64::from_le_bytes(self.take(8)?.try_into().unwrap());
        usize::try_from(v).map_err(|_| Error::Snapshot("length overflow".into()))
    }

    fn string(&mut self) -> Result<String> {
        let k = self.u32()? as usize;
        String::from_utf8(self.take(k)?.to_vec()).map_err(|_| Error::Snapshot("invalid utf-8".into()))
    }
}

//! Follow graph and URL share storage.
//!
//! Edges are stored in a single orientation: `(a, b)` means "a follows b".
//! Followees are out-neighbours, followers are in-neighbours.

mod graph;
mod sample;
mod shares;
mod snapshot;
mod url;

pub use graph::{load_edges, EdgeLoadReport, GraphSnapshot, NodeId};
pub use sample::bfs_sample;
pub use shares::{load_shares, ShareIndex, ShareLoadReport, ShareRecord, UrlId};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, SNAPSHOT_MAGIC};
pub use url::{canonicalize_url, load_redirects, RedirectMap, MAX_REDIRECT_HOPS};

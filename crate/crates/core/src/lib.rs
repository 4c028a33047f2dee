//! Ranking URLs shared on a social network.
//!
//! The crate turns a follow graph plus a log of URL shares into three kinds
//! of URL rankings:
//!
//! * [`prsn`]: scaled PageRank over the follow graph, with each URL scored by
//!   the normalized PageRank mass of the users who shared it.
//! * [`hsn`]: HITS over the user→URL share incidence, URLs being authorities.
//! * [`flow_rank`]: a per-user ranking obtained from the maximum flow between
//!   that user and a super sink fed by the URLs, computed exactly over
//!   rational capacities.
//!
//! [`analysis`] holds the measurement side: URL set selection, affected sets,
//! distance sampling, rank-position consistency and a small linear separator.
//! [`synth`] generates deterministic stand-in corpora.

pub mod analysis;
pub mod error;
pub mod flow_rank;
pub mod graph_store;
pub mod hsn;
pub mod prsn;
pub mod ranking;
pub mod synth;

pub use error::{Error, Result};
pub use graph_store::{GraphSnapshot, NodeId, ShareIndex, UrlId};
pub use ranking::RankedList;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use super::graph::{data_lines, read_text, GraphSnapshot, NodeId};
use super::url::{canonicalize_url, RedirectMap};
use crate::error::{Error, Result};

/// Dense index into the URL table of a [`ShareIndex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UrlId(pub u32);

impl UrlId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for UrlId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One accepted line of a share log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareRecord {
    pub user: NodeId,
    pub timestamp: i64,
    pub url: String,
}

/// What happened while reading a share log.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShareLoadReport {
    pub lines: usize,
    pub unknown_users: usize,
    pub rejected_urls: usize,
    pub duplicate_shares: usize,
    /// Distinct canonical URLs before the spreader-count filter.
    pub urls_seen: usize,
    /// URLs dropped for having fewer than `min_spreaders` spreaders.
    pub urls_below_threshold: usize,
    /// Accepted share lines per user.
    pub messages_per_user: Vec<u64>,
    /// Distinct canonical URLs per user, before the spreader-count filter.
    pub urls_per_user: Vec<u64>,
}

/// The URL universe and who shared what.
///
/// URL ids are assigned in lexicographic order of the canonical strings.
/// `spreaders(u)` and `shares_of(v)` are kept mutually consistent and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareIndex {
    urls: Vec<String>,
    lookup: HashMap<String, UrlId>,
    spreaders: Vec<Vec<NodeId>>,
    shares_by_user: Vec<Vec<UrlId>>,
}

impl ShareIndex {
    /// Builds an index over `node_count` users from `(user, canonical url)`
    /// pairs. Repeated pairs collapse; URLs with fewer than `min_spreaders`
    /// distinct spreaders are left out.
    pub fn from_shares<S: AsRef<str>>(
        node_count: usize,
        shares: impl IntoIterator<Item = (NodeId, S)>,
        min_spreaders: usize,
    ) -> Result<Self> {
        if min_spreaders == 0 {
            return Err(Error::InvalidParams("min_spreaders must be at least 1".into()));
        }
        let mut by_url: BTreeMap<String, BTreeSet<NodeId>> = BTreeMap::new();
        for (user, url) in shares {
            if user.index() >= node_count {
                return Err(Error::UnknownNode(user.0));
            }
            by_url.entry(url.as_ref().to_owned()).or_default().insert(user);
        }
        Ok(Self::from_sets(node_count, by_url, min_spreaders))
    }

    fn from_sets(
        node_count: usize,
        by_url: BTreeMap<String, BTreeSet<NodeId>>,
        min_spreaders: usize,
    ) -> Self {
        let mut urls = Vec::new();
        let mut spreaders = Vec::new();
        for (url, users) in by_url {
            if users.len() >= min_spreaders {
                urls.push(url);
                spreaders.push(users.into_iter().collect::<Vec<_>>());
            }
        }
        Self::from_parts(node_count, urls, spreaders)
    }

    /// Assembles an index from a URL table and per-URL sorted spreader lists.
    pub(crate) fn from_parts(node_count: usize, urls: Vec<String>, spreaders: Vec<Vec<NodeId>>) -> Self {
        let mut shares_by_user = vec![Vec::new(); node_count];
        for (u, users) in spreaders.iter().enumerate() {
            for v in users {
                shares_by_user[v.index()].push(UrlId(u as u32));
            }
        }
        let lookup = urls
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), UrlId(i as u32)))
            .collect();
        ShareIndex {
            urls,
            lookup,
            spreaders,
            shares_by_user,
        }
    }

    pub fn url_count(&self) -> usize {
        self.urls.len()
    }

    pub fn node_count(&self) -> usize {
        self.shares_by_user.len()
    }

    pub fn url_ids(&self) -> impl Iterator<Item = UrlId> + '_ {
        (0..self.urls.len() as u32).map(UrlId)
    }

    pub fn url(&self, id: UrlId) -> &str {
        &self.urls[id.index()]
    }

    pub fn url_id(&self, canonical: &str) -> Option<UrlId> {
        self.lookup.get(canonical).copied()
    }

    pub fn contains(&self, id: UrlId) -> bool {
        id.index() < self.urls.len()
    }

    /// S(u): the users who shared `url`, ascending.
    pub fn spreaders(&self, url: UrlId) -> &[NodeId] {
        &self.spreaders[url.index()]
    }

    /// URLs shared by `user`, ascending.
    pub fn shares_of(&self, user: NodeId) -> &[UrlId] {
        &self.shares_by_user[user.index()]
    }

    pub(crate) fn check_urls(&self, url_set: &[UrlId]) -> Result<()> {
        if url_set.is_empty() {
            return Err(Error::EmptyUrlSet);
        }
        match url_set.iter().find(|u| !self.contains(**u)) {
            Some(u) => Err(Error::UnknownUrl(u.0)),
            None => Ok(()),
        }
    }
}

fn parse_share_line<'a>(path: &Path, line_no: usize, line: &'a str) -> Result<(&'a str, i64, &'a str)> {
    let mut fields = line.split('\t');
    let (Some(user), Some(ts), Some(url), None) = (fields.next(), fields.next(), fields.next(), fields.next())
    else {
        return Err(Error::parse(path, line_no, "expected user<TAB>epoch_seconds<TAB>url"));
    };
    let ts = ts
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(path, line_no, format!("bad timestamp {ts:?}")))?;
    Ok((user, ts, url))
}

/// Reads a `user<TAB>epoch_seconds<TAB>url` share log against `graph`.
///
/// Shares by handles missing from the graph and URLs that fail to
/// canonicalize are skipped and counted in the report.
pub fn load_shares(
    path: &Path,
    graph: &GraphSnapshot,
    redirects: Option<&RedirectMap>,
    min_spreaders: usize,
) -> Result<(ShareIndex, ShareLoadReport)> {
    if min_spreaders == 0 {
        return Err(Error::InvalidParams("min_spreaders must be at least 1".into()));
    }
    let text = read_text(path)?;
    let n = graph.node_count();
    let mut report = ShareLoadReport {
        messages_per_user: vec![0; n],
        urls_per_user: vec![0; n],
        ..Default::default()
    };
    let mut canonical_cache: HashMap<&str, Option<String>> = HashMap::new();
    let mut by_url: BTreeMap<String, BTreeSet<NodeId>> = BTreeMap::new();

    for (line_no, line) in data_lines(&text) {
        report.lines += 1;
        let (handle, timestamp, raw) = parse_share_line(path, line_no, line)?;
        let Some(user) = graph.node_by_handle(handle) else {
            report.unknown_users += 1;
            continue;
        };
        let canonical = canonical_cache
            .entry(raw)
            .or_insert_with(|| canonicalize_url(raw, redirects).ok());
        let Some(url) = canonical.clone() else {
            report.rejected_urls += 1;
            continue;
        };
        let record = ShareRecord { user, timestamp, url };
        report.messages_per_user[user.index()] += 1;
        let users = by_url.entry(record.url).or_default();
        if users.insert(record.user) {
            report.urls_per_user[user.index()] += 1;
        } else {
            report.duplicate_shares += 1;
        }
    }

    report.urls_seen = by_url.len();
    let index = ShareIndex::from_sets(n, by_url, min_spreaders);
    report.urls_below_threshold = report.urls_seen - index.url_count();
    Ok((index, report))
}

//! 1-based rank positions with competition-style ties (1, 2, 2, 4).

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph_store::UrlId;

/// Rank positions for a set of URLs, stored in display order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedList {
    entries: Vec<(UrlId, u32)>,
    lookup: HashMap<UrlId, u32>,
}

impl RankedList {
    /// Ranks by descending score. Exactly equal scores share the smaller
    /// position; display order within a tie is ascending `UrlId`.
    pub fn from_scores(scores: &[(UrlId, f64)]) -> Self {
        let mut order: Vec<(UrlId, f64)> = scores.to_vec();
        order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        Self::from_sorted_by(order, |a, b| a.1 == b.1)
    }

    /// Assigns competition positions to `sorted`, which must already be in
    /// display order; `tied` says whether neighbours share a position.
    pub fn from_sorted_by<T>(sorted: Vec<T>, tied: impl Fn(&T, &T) -> bool) -> Self
    where
        T: HasUrl,
    {
        let mut entries: Vec<(UrlId, u32)> = Vec::with_capacity(sorted.len());
        for (i, item) in sorted.iter().enumerate() {
            let pos = if i > 0 && tied(&sorted[i - 1], item) {
                entries[i - 1].1
            } else {
                i as u32 + 1
            };
            entries.push((item.url(), pos));
        }
        Self::new_unchecked(entries)
    }

    /// Wraps externally supplied positions, e.g. a replayed results table.
    pub fn from_positions(entries: Vec<(UrlId, u32)>) -> Result<Self> {
        if entries.iter().any(|&(_, p)| p == 0) {
            return Err(Error::InvalidParams("rank positions are 1-based".into()));
        }
        let list = Self::new_unchecked(entries);
        if list.lookup.len() != list.entries.len() {
            return Err(Error::InvalidParams("url listed twice in a ranking".into()));
        }
        Ok(list)
    }

    fn new_unchecked(entries: Vec<(UrlId, u32)>) -> Self {
        let lookup = entries.iter().copied().collect();
        RankedList { entries, lookup }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, url: UrlId) -> Option<u32> {
        self.lookup.get(&url).copied()
    }

    /// `(url, position)` pairs in display order.
    pub fn entries(&self) -> &[(UrlId, u32)] {
        &self.entries
    }

    pub fn covers_same_urls(&self, other: &RankedList) -> bool {
        self.len() == other.len() && self.entries.iter().all(|(u, _)| other.lookup.contains_key(u))
    }
}

pub trait HasUrl {
    fn url(&self) -> UrlId;
}

impl HasUrl for (UrlId, f64) {
    fn url(&self) -> UrlId {
        self.0
    }
}

/// Orders two optional positions with missing ones last.
pub(crate) fn cmp_positions(a: Option<u32>, b: Option<u32>) -> Ordering {
    a.unwrap_or(u32::MAX).cmp(&b.unwrap_or(u32::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions(list: &RankedList, ids: &[u32]) -> Vec<u32> {
        ids.iter().map(|&i| list.position(UrlId(i)).unwrap()).collect()
    }

    #[test]
    fn distinct_scores() {
        let l = RankedList::from_scores(&[(UrlId(0), 0.5), (UrlId(1), 0.3), (UrlId(2), 0.2)]);
        assert_eq!(positions(&l, &[0, 1, 2]), [1, 2, 3]);
    }

    #[test]
    fn ties_share_smaller_position() {
        let l = RankedList::from_scores(&[(UrlId(2), 0.2), (UrlId(1), 0.4), (UrlId(0), 0.4)]);
        assert_eq!(positions(&l, &[0, 1, 2]), [1, 1, 3]);
        assert_eq!(l.entries()[0].0, UrlId(0));
        assert_eq!(l.entries()[1].0, UrlId(1));
    }

    #[test]
    fn strictly_decreasing_is_permutation() {
        let scores: Vec<(UrlId, f64)> = (0..30).map(|i| (UrlId(29 - i), 1.0 / (i as f64 + 1.0))).collect();
        let l = RankedList::from_scores(&scores);
        for i in 0..30u32 {
            assert_eq!(l.position(UrlId(29 - i)), Some(i + 1));
        }
    }

    #[test]
    fn positions_validation() {
        assert!(RankedList::from_positions(vec![(UrlId(0), 0)]).is_err());
        assert!(RankedList::from_positions(vec![(UrlId(0), 1), (UrlId(0), 2)]).is_err());
    }
}

use crate::error::{Error, Result};
use crate::ranking::RankedList;

/// Sum and mean of absolute rank-position differences over `w` URLs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyStats {
    pub w: usize,
    pub sum_diff: u64,
}

impl ConsistencyStats {
    pub fn avg_diff(&self) -> f64 {
        if self.w == 0 {
            0.0
        } else {
            self.sum_diff as f64 / self.w as f64
        }
    }

    /// `sum_diff / w` rounded half-up to one decimal, computed in integers.
    pub fn avg_diff_display(&self) -> String {
        if self.w == 0 {
            return "0.0".into();
        }
        let w = self.w as u64;
        let tenths = (20 * self.sum_diff + w) / (2 * w);
        format!("{}.{}", tenths / 10, tenths % 10)
    }
}

pub fn consistency(a: &RankedList, b: &RankedList) -> Result<ConsistencyStats> {
    if !a.covers_same_urls(b) {
        return Err(Error::MismatchedUrlSets);
    }
    let sum_diff = a
        .entries()
        .iter()
        .map(|&(u, pa)| u64::from(pa.abs_diff(b.position(u).expect("same url set"))))
        .sum();
    Ok(ConsistencyStats { w: a.len(), sum_diff })
}

/// Consistency of every pair of rankings. `cells[i][j]` is `None` on the
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseMatrix {
    pub cells: Vec<Vec<Option<ConsistencyStats>>>,
}

impl PairwiseMatrix {
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<ConsistencyStats> {
        self.cells[i][j]
    }
}

pub fn pairwise_consistency(rankings: &[&RankedList]) -> Result<PairwiseMatrix> {
    if rankings.len() < 2 {
        return Err(Error::InvalidParams("pairwise consistency needs at least two rankings".into()));
    }
    let k = rankings.len();
    let mut cells = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let s = consistency(rankings[i], rankings[j])?;
            cells[i][j] = Some(s);
            cells[j][i] = Some(s);
        }
    }
    Ok(PairwiseMatrix { cells })
}

//! Measurements over URL sets and rankings.

mod affected;
mod consistency;
mod distance;
mod selection;
mod separator;

pub use affected::{affected_nodes, affected_set, AffectedSetStats};
pub use consistency::{consistency, pairwise_consistency, ConsistencyStats, PairwiseMatrix};
pub use distance::{avg_distance_to_spreaders, DistanceSample, DistanceSampler, Direction};
pub use selection::{select_persons, select_url_sets, UrlSetSelection};
pub use separator::{fit_linear_separator, Label, LabeledPoint, SeparatorFit, DEFAULT_EPOCHS};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a `(seed, stream)` pair.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

use socrank_core::synth::generate;

use super::ensure_dir;
use crate::config::ExperimentConfig;
use crate::error::Result;

pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    ensure_dir(&cfg.out)?;
    let corpus = generate(&cfg.synth)?;
    corpus.write_to(&cfg.out)?;
    println!(
        "wrote {} users, {} follow lines, {} share lines, {} redirects to {}",
        corpus.handles.len(),
        corpus.edges.len(),
        corpus.shares.len(),
        corpus.redirects.len(),
        cfg.out.display()
    );
    Ok(())
}

use std::fs;
use std::path::Path;

use super::rank::SETS;
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::tables::{align, RankingTable};

/// Renders whatever result files exist in the output directory as aligned
/// text tables, printed and saved to `report.txt`.
pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    let mut sections = Vec::new();
    if let Some(t) = csv_table(&cfg.out.join("summary.csv"))? {
        sections.push(format!("Data summary\n{t}"));
    }
    let dir = cfg.rankings_dir();
    for name in SETS {
        let path = dir.join(format!("rankings_{name}.csv"));
        if path.exists() {
            let t = RankingTable::read(&path)?;
            sections.push(t.render(&format!("Ranking results of {} {name} URLs", t.len())));
        }
    }
    if let Some(t) = csv_table(&cfg.out.join("consistency.csv"))? {
        sections.push(format!("Ranking consistency\n{t}"));
    }
    if let Some(t) = csv_table(&cfg.out.join("pairwise.csv"))? {
        sections.push(format!(
            "Average ranking differences (random above the diagonal, popular below)\n{t}"
        ));
    }
    if let Some(t) = csv_table(&cfg.out.join("separator.csv"))? {
        sections.push(format!("Popular/random separator\n{t}"));
    }
    if sections.is_empty() {
        return Err(CliError::data(&cfg.out, "no result files to summarize"));
    }
    let report = sections.join("\n");
    let path = cfg.out.join("report.txt");
    fs::write(&path, &report).map_err(|e| CliError::io(&path, e))?;
    print!("{report}");
    Ok(())
}

fn csv_table(path: &Path) -> Result<Option<String>> {
    if !path.exists() {
        return Ok(None);
    }
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::csv(path, e))?;
    let rows: Vec<Vec<String>> = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_owned).collect()))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::csv(path, e))?;
    Ok(Some(align(&rows)))
}

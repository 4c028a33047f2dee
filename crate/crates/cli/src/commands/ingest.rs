use socrank_core::graph_store::{load_edges, load_redirects, load_shares, write_snapshot};
use socrank_core::{GraphSnapshot, NodeId, ShareIndex};

use super::{ensure_dir, fixed};
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::tables::write_csv;

pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    ensure_dir(&cfg.out)?;
    let edges_path = cfg.edges_path();
    let (graph, edge_report) = load_edges(&edges_path, cfg.nodes.as_deref())?;
    let redirects = cfg.redirects_path().map(|p| load_redirects(&p)).transpose()?;
    let (index, share_report) = load_shares(&cfg.shares_path(), &graph, redirects.as_ref(), cfg.min_spreaders)?;

    if graph.nodes().map(|v| graph.in_degree(v)).sum::<usize>() != graph.edge_count() {
        return Err(CliError::Invariant("indegree sum differs from edge count".into()));
    }
    for u in index.url_ids() {
        if index.spreaders(u).iter().any(|&v| !index.shares_of(v).contains(&u)) {
            return Err(CliError::Invariant(format!("share index is not bidirectional at {}", index.url(u))));
        }
    }

    let snapshot = cfg.snapshot_path();
    write_snapshot(&snapshot, &graph, &index)?;

    let rows = summary_rows(&graph, &index, &share_report.messages_per_user, &share_report.urls_per_user);
    write_csv(&cfg.out.join("summary.csv"), &["row", "mean", "std", "sum"], rows)?;

    let counts = [
        ("edge_lines", edge_report.lines),
        ("duplicate_edges", edge_report.duplicate_edges),
        ("self_loops", edge_report.self_loops),
        ("share_lines", share_report.lines),
        ("unknown_users", share_report.unknown_users),
        ("rejected_urls", share_report.rejected_urls),
        ("duplicate_shares", share_report.duplicate_shares),
        ("urls_seen", share_report.urls_seen),
        ("urls_below_threshold", share_report.urls_below_threshold),
        ("urls_kept", index.url_count()),
    ];
    write_csv(
        &cfg.out.join("ingest_report.csv"),
        &["count", "value"],
        counts.iter().map(|(k, v)| [k.to_string(), v.to_string()]),
    )?;
    for (what, n) in [
        ("duplicate edges", edge_report.duplicate_edges),
        ("self-loops", edge_report.self_loops),
        ("shares by unknown users", share_report.unknown_users),
        ("unparseable urls", share_report.rejected_urls),
    ] {
        if n > 0 {
            eprintln!("warning: dropped {n} {what}");
        }
    }
    println!(
        "ingested {} users, {} edges, {} urls into {}",
        graph.node_count(),
        graph.edge_count(),
        index.url_count(),
        snapshot.display()
    );
    Ok(())
}

fn stats(values: &[u64]) -> [String; 3] {
    let sum: u64 = values.iter().sum();
    if values.is_empty() {
        return ["0.00".into(), "0.00".into(), "0".into()];
    }
    let n = values.len() as f64;
    let mean = sum as f64 / n;
    let var = values.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n;
    [fixed(mean, 2), fixed(var.sqrt(), 2), sum.to_string()]
}

/// Per-user mean, population standard deviation and total, one row per
/// quantity.
fn summary_rows(graph: &GraphSnapshot, index: &ShareIndex, messages: &[u64], all_urls: &[u64]) -> Vec<[String; 4]> {
    let per_user = |f: &dyn Fn(NodeId) -> usize| graph.nodes().map(|v| f(v) as u64).collect::<Vec<_>>();
    let row = |name: &str, [m, s, t]: [String; 3]| [name.to_owned(), m, s, t];
    vec![
        ["Users".into(), "-".into(), "-".into(), graph.node_count().to_string()],
        row("Inlinks", stats(&per_user(&|v| graph.in_degree(v)))),
        row("Outlinks", stats(&per_user(&|v| graph.out_degree(v)))),
        row("Messages", stats(messages)),
        row("All URLs", stats(all_urls)),
        row("*URLs", stats(&per_user(&|v| index.shares_of(v).len()))),
    ]
}

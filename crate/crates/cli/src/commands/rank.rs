use std::fs::{self, File};
use std::io::BufWriter;

use socrank_core::analysis::{select_persons, select_url_sets, UrlSetSelection};
use socrank_core::flow_rank::{build_flow_graph, rank_for_users};
use socrank_core::graph_store::read_snapshot;
use socrank_core::hsn::{build_share_matrix, hits, hsn_rank};
use socrank_core::prsn::{prsn_scores, rank_urls, scaled_pagerank, ScoreVector};
use socrank_core::{GraphSnapshot, NodeId, RankedList, ShareIndex, UrlId};

use super::ensure_dir;
use crate::config::{ExperimentConfig, PersonSpec, TieBreaker};
use crate::error::{CliError, Result};
use crate::tables::{write_csv, write_persons, PersonRow, RankingTable};

pub const SETS: [&str; 2] = ["popular", "random"];

/// RNG stream used to draw persons for each URL set.
const PERSON_STREAMS: [u64; 2] = [5, 6];

pub fn selection(cfg: &ExperimentConfig, index: &ShareIndex) -> Result<UrlSetSelection> {
    let available = index.url_count();
    Ok(select_url_sets(
        index,
        cfg.n_popular.resolve(available),
        cfg.n_random.resolve(available),
        cfg.seed,
    )?)
}

pub fn load(cfg: &ExperimentConfig) -> Result<(GraphSnapshot, ShareIndex)> {
    let path = cfg.snapshot_path();
    if !path.exists() {
        return Err(CliError::data(&path, "snapshot not found; run `socrank ingest` first"));
    }
    Ok(read_snapshot(&path)?)
}

pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    let (graph, index) = load(cfg)?;
    ensure_dir(&cfg.out)?;
    let sel = selection(cfg, &index)?;
    let (popular, random) = sel.heads(cfg.n_selected)?;
    write_selection(cfg, &index, &sel)?;

    let ranks = scaled_pagerank(&graph, cfg.pagerank)?;
    let mut person_rows = Vec::new();
    for (s, (name, urls)) in SETS.iter().zip([&popular, &random]).enumerate() {
        let persons = pick_persons(cfg, &graph, PERSON_STREAMS[s])?;
        let labels: Vec<String> = (1..=persons.len()).map(|k| format!("p{k}")).collect();
        let table = rank_set(cfg, &graph, &index, &ranks, urls, &persons, &labels)?;
        table.write(&cfg.out.join(format!("rankings_{name}.csv")))?;
        let title = format!("Ranking results of {} {name} URLs", urls.len());
        let txt = cfg.out.join(format!("rankings_{name}.txt"));
        fs::write(&txt, table.render(&title)).map_err(|e| CliError::io(&txt, e))?;

        for (label, &p) in labels.iter().zip(&persons) {
            person_rows.push(PersonRow {
                set: name.to_string(),
                label: label.clone(),
                handle: graph.handle(p).to_owned(),
                outdegree: graph.out_degree(p),
            });
            if cfg.dump_flow {
                dump_flow(cfg, &graph, &index, p, urls, name, label)?;
            }
        }
    }
    write_persons(&cfg.out.join("persons.csv"), &person_rows)?;
    println!(
        "ranked {} popular and {} random urls for {} persons per set",
        popular.len(),
        random.len(),
        person_rows.len() / 2
    );
    Ok(())
}

fn pick_persons(cfg: &ExperimentConfig, graph: &GraphSnapshot, stream: u64) -> Result<Vec<NodeId>> {
    match &cfg.persons {
        PersonSpec::Count(k) => Ok(select_persons(graph, *k, cfg.seed, stream)?),
        PersonSpec::Handles(hs) => hs
            .iter()
            .map(|h| {
                graph
                    .node_by_handle(h)
                    .ok_or_else(|| CliError::Usage(format!("person {h:?} is not in the graph")))
            })
            .collect(),
    }
}

fn check_mass(what: &str, scores: impl Iterator<Item = f64>) -> Result<()> {
    let total: f64 = scores.sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(CliError::Invariant(format!("{what} scores sum to {total}")));
    }
    Ok(())
}

fn rank_set(
    cfg: &ExperimentConfig,
    graph: &GraphSnapshot,
    index: &ShareIndex,
    ranks: &ScoreVector,
    urls: &[UrlId],
    persons: &[NodeId],
    labels: &[String],
) -> Result<RankingTable> {
    check_mass("pagerank", ranks.values.iter().copied())?;
    let prsn_table = prsn_scores(ranks, index, urls)?;
    check_mass("prsn", prsn_table.scores.iter().map(|s| s.1))?;
    let prsn = rank_urls(&prsn_table)?;
    let state = hits(&build_share_matrix(index, urls)?, cfg.hits_iterations)?;
    check_mass("hsn", state.authority_scores.iter().copied())?;
    let hsn = hsn_rank(&state);
    let tie = match cfg.tie_breaker {
        TieBreaker::Prsn => &prsn,
        TieBreaker::Hsn => &hsn,
    };
    let mf = rank_for_users(graph, index, persons, urls, cfg.depth_cap, tie)?;

    let pos = |list: &RankedList, u: UrlId| {
        list.position(u)
            .ok_or_else(|| CliError::Invariant(format!("ranking misses {}", index.url(u))))
    };
    let order: Vec<UrlId> = prsn.entries().iter().map(|e| e.0).collect();
    Ok(RankingTable {
        urls: order.iter().map(|&u| index.url(u).to_owned()).collect(),
        prsn: order.iter().map(|&u| pos(&prsn, u)).collect::<Result<_>>()?,
        hsn: order.iter().map(|&u| pos(&hsn, u)).collect::<Result<_>>()?,
        persons: labels.to_vec(),
        mf: mf
            .iter()
            .map(|r| order.iter().map(|&u| pos(&r.positions, u)).collect::<Result<_>>())
            .collect::<Result<_>>()?,
    })
}

fn write_selection(cfg: &ExperimentConfig, index: &ShareIndex, sel: &UrlSetSelection) -> Result<()> {
    let rows = SETS.iter().zip([&sel.popular, &sel.random]).flat_map(|(name, list)| {
        list.iter().enumerate().map(move |(i, &u)| {
            [
                name.to_string(),
                (i + 1).to_string(),
                index.url(u).to_owned(),
                index.spreaders(u).len().to_string(),
                (i < cfg.n_selected).to_string(),
            ]
        })
    });
    write_csv(
        &cfg.out.join("selection.csv"),
        &["set", "order", "url", "spreaders", "selected"],
        rows,
    )?;
    let meta = [
        ("seed", sel.seed.to_string()),
        ("n_popular", sel.popular.len().to_string()),
        ("n_random", sel.random.len().to_string()),
        ("n_selected", cfg.n_selected.to_string()),
        ("overlap", sel.overlap.to_string()),
    ];
    write_csv(
        &cfg.out.join("selection_meta.csv"),
        &["key", "value"],
        meta.iter().map(|(k, v)| [k.to_string(), v.clone()]),
    )
}

fn dump_flow(
    cfg: &ExperimentConfig,
    graph: &GraphSnapshot,
    index: &ShareIndex,
    person: NodeId,
    urls: &[UrlId],
    set: &str,
    label: &str,
) -> Result<()> {
    let fg = build_flow_graph(graph, index, person, urls, cfg.depth_cap)?;
    let path = cfg.out.join(format!("flow_{set}_{label}.tsv"));
    let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
    fg.write_arc_list(graph, index, &mut BufWriter::new(file))
        .map_err(|e| CliError::io(&path, e))
}

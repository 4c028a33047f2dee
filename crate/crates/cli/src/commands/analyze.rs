use rayon::prelude::*;

use socrank_core::analysis::{
    affected_set, consistency, fit_linear_separator, pairwise_consistency, AffectedSetStats, ConsistencyStats,
    DistanceSample, DistanceSampler, Label, LabeledPoint,
};
use socrank_core::{GraphSnapshot, ShareIndex, UrlId};

use super::rank::{load, selection, SETS};
use super::{ensure_dir, fixed};
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::tables::{read_persons, write_csv, write_tsv, PersonRow, RankingTable};

pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    ensure_dir(&cfg.out)?;
    let dir = cfg.rankings_dir();
    let tables: Vec<RankingTable> = SETS
        .iter()
        .map(|s| RankingTable::read(&dir.join(format!("rankings_{s}.csv"))))
        .collect::<Result<_>>()?;
    let persons = read_persons(&dir.join("persons.csv"))?;

    write_consistency(cfg, &tables)?;
    write_pairwise(cfg, &tables, &persons)?;
    for (name, t) in SETS.iter().zip(&tables) {
        write_position_plots(cfg, name, t)?;
    }

    let snapshot = cfg.snapshot_path();
    if cfg.positions_only || !snapshot.exists() {
        println!("positions-only analysis written to {}", cfg.out.display());
        return Ok(());
    }
    let (graph, index) = load(cfg)?;
    diffusion(cfg, &graph, &index)?;
    println!("analysis written to {}", cfg.out.display());
    Ok(())
}

fn stats_row(set: &str, a: &str, b: &str, s: ConsistencyStats) -> [String; 6] {
    [
        set.to_owned(),
        a.to_owned(),
        b.to_owned(),
        s.w.to_string(),
        s.sum_diff.to_string(),
        s.avg_diff_display(),
    ]
}

fn write_consistency(cfg: &ExperimentConfig, tables: &[RankingTable]) -> Result<()> {
    let mut rows = Vec::new();
    for (name, t) in SETS.iter().zip(tables) {
        let (prsn, hsn) = (t.prsn_list(), t.hsn_list());
        rows.push(stats_row(name, "prsn", "hsn", consistency(&prsn, &hsn)?));
        for (k, label) in t.persons.iter().enumerate() {
            let mf = t.mf_list(k);
            let col = format!("mf_{label}");
            rows.push(stats_row(name, "prsn", &col, consistency(&prsn, &mf)?));
            rows.push(stats_row(name, "hsn", &col, consistency(&hsn, &mf)?));
        }
        for i in 0..t.persons.len() {
            for j in i + 1..t.persons.len() {
                let s = consistency(&t.mf_list(i), &t.mf_list(j))?;
                rows.push(stats_row(name, &format!("mf_{}", t.persons[i]), &format!("mf_{}", t.persons[j]), s));
            }
        }
    }
    write_csv(
        &cfg.out.join("consistency.csv"),
        &["set", "algo_a", "algo_b", "w", "sum_diff", "avg_diff"],
        rows,
    )
}

fn outdegrees(persons: &[PersonRow], set: &str, labels: &[String]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            persons
                .iter()
                .find(|p| p.set == set && &p.label == l)
                .map(|p| p.outdegree)
                .ok_or_else(|| CliError::Usage(format!("persons.csv has no {set} entry for {l}")))
        })
        .collect()
}

/// Square matrix of average MF differences: random set above the diagonal,
/// popular set below, outdegrees in the last column (random) and last row
/// (popular).
fn write_pairwise(cfg: &ExperimentConfig, tables: &[RankingTable], persons: &[PersonRow]) -> Result<()> {
    let [popular, random] = tables else {
        unreachable!("two url sets")
    };
    if popular.persons != random.persons {
        return Err(CliError::Usage("popular and random rankings list different persons".into()));
    }
    let labels = &popular.persons;
    let k = labels.len();
    let matrix = |t: &RankingTable| {
        let lists: Vec<_> = (0..k).map(|i| t.mf_list(i)).collect();
        pairwise_consistency(&lists.iter().collect::<Vec<_>>())
    };
    let (pop, rnd) = (matrix(popular)?, matrix(random)?);
    let out_pop = outdegrees(persons, "popular", labels)?;
    let out_rnd = outdegrees(persons, "random", labels)?;

    let mut header = vec!["person".to_owned()];
    header.extend(labels.iter().cloned());
    header.push("outdegree_random".into());
    let mut rows = Vec::new();
    for i in 0..k {
        let mut row = vec![labels[i].clone()];
        for j in 0..k {
            row.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => "-".to_owned(),
                std::cmp::Ordering::Less => rnd.get(i, j).expect("off-diagonal").avg_diff_display(),
                std::cmp::Ordering::Greater => pop.get(i, j).expect("off-diagonal").avg_diff_display(),
            });
        }
        row.push(out_rnd[i].to_string());
        rows.push(row);
    }
    let mut last = vec!["outdegree_popular".to_owned()];
    last.extend(out_pop.iter().map(usize::to_string));
    last.push(String::new());
    rows.push(last);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&cfg.out.join("pairwise.csv"), &header, rows)
}

fn write_position_plots(cfg: &ExperimentConfig, name: &str, t: &RankingTable) -> Result<()> {
    let scatter: Vec<Vec<String>> = (0..t.len())
        .map(|i| {
            vec![
                t.urls[i].clone(),
                t.prsn[i].to_string(),
                t.hsn[i].to_string(),
                u8::from(t.prsn[i] == t.hsn[i]).to_string(),
            ]
        })
        .collect();
    write_tsv(
        &cfg.out.join(format!("plot_prsn_hsn_{name}.tsv")),
        &["url", "prsn_pos", "hsn_pos", "on_diagonal"],
        &scatter,
    )?;
    let mf: Vec<Vec<String>> = (0..t.persons.len())
        .flat_map(|k| {
            (0..t.len()).map(move |i| {
                vec![
                    t.urls[i].clone(),
                    t.prsn[i].to_string(),
                    t.persons[k].clone(),
                    t.mf[k][i].to_string(),
                ]
            })
        })
        .collect();
    write_tsv(
        &cfg.out.join(format!("plot_mf_{name}.tsv")),
        &["url", "prsn_pos", "person", "mf_pos"],
        &mf,
    )
}

struct UrlMeasure {
    set: &'static str,
    url: UrlId,
    affected: AffectedSetStats,
    distance: DistanceSample,
}

/// Affected sets, spreader distances and the popular-vs-random separator
/// over the full URL selections.
fn diffusion(cfg: &ExperimentConfig, graph: &GraphSnapshot, index: &ShareIndex) -> Result<()> {
    let sel = selection(cfg, index)?;
    let sampler = DistanceSampler::new(graph, cfg.distance_sources, cfg.seed, cfg.distance_direction)?;
    let jobs: Vec<(&'static str, UrlId)> = SETS
        .iter()
        .zip([&sel.popular, &sel.random])
        .flat_map(|(s, list)| list.iter().map(move |&u| (*s, u)))
        .collect();
    let measures: Vec<UrlMeasure> = jobs
        .par_iter()
        .map(|&(set, url)| {
            Ok(UrlMeasure {
                set,
                url,
                affected: affected_set(graph, index, url),
                distance: sampler.sample(index, url, cfg.distance_spreaders, cfg.seed)?,
            })
        })
        .collect::<Result<_>>()?;

    for m in &measures {
        if m.affected.affected_size > index.spreaders(m.url).iter().map(|&s| graph.in_degree(s)).sum() {
            return Err(CliError::Invariant(format!("affected set of {} exceeds follower bound", index.url(m.url))));
        }
    }

    write_csv(
        &cfg.out.join("affected.csv"),
        &["set", "url", "spreaders", "affected_size"],
        measures.iter().map(|m| {
            [
                m.set.to_owned(),
                index.url(m.url).to_owned(),
                m.affected.spreader_count.to_string(),
                m.affected.affected_size.to_string(),
            ]
        }),
    )?;
    write_csv(
        &cfg.out.join("distances.csv"),
        &["set", "url", "avg_distance", "sampled_sources", "sampled_spreaders", "unreachable_pairs"],
        measures.iter().map(|m| {
            let d = &m.distance;
            [
                m.set.to_owned(),
                index.url(m.url).to_owned(),
                d.avg_distance.map_or_else(|| "undefined".to_owned(), |x| fixed(x, 6)),
                d.sampled_sources.to_string(),
                d.sampled_spreaders.to_string(),
                d.unreachable_pairs.to_string(),
            ]
        }),
    )?;

    let points: Vec<LabeledPoint> = measures
        .iter()
        .enumerate()
        .filter_map(|(id, m)| {
            Some(LabeledPoint {
                id,
                affected_size: m.affected.affected_size as f64,
                avg_distance: m.distance.avg_distance?,
                label: if m.set == "popular" { Label::Popular } else { Label::Random },
            })
        })
        .collect();
    let fit = match fit_linear_separator(&points, cfg.separator_epochs, cfg.seed) {
        Ok(fit) => Some(fit),
        Err(socrank_core::Error::SingleClass) => {
            eprintln!("warning: separator skipped, only one class has a defined distance");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let missed = fit.as_ref().map(|f| f.misclassified.clone()).unwrap_or_default();
    if let Some(f) = &fit {
        write_csv(
            &cfg.out.join("separator.csv"),
            &["w_log_affected", "w_avg_distance", "bias", "points", "misclassified"],
            [[
                f.weights[0].to_string(),
                f.weights[1].to_string(),
                f.weights[2].to_string(),
                points.len().to_string(),
                f.misclassified.len().to_string(),
            ]],
        )?;
    }
    let plot: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            let m = &measures[p.id];
            vec![
                index.url(m.url).to_owned(),
                m.affected.affected_size.to_string(),
                fixed((p.affected_size + 1.0).log10(), 6),
                fixed(p.avg_distance, 6),
                p.label.as_str().to_owned(),
                u8::from(missed.binary_search(&p.id).is_ok()).to_string(),
            ]
        })
        .collect();
    write_tsv(
        &cfg.out.join("plot_affected_distance.tsv"),
        &["url", "affected_size", "log10_affected_plus_1", "avg_distance", "label", "misclassified"],
        &plot,
    )
}

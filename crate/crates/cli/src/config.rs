//! Flat `key = value` experiment configuration.
//!
//! Values come from built-in defaults, then the config file, then `--set`
//! overrides and dedicated flags, later sources winning. Every key is checked
//! and every range validated before a command touches any data.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use socrank_core::analysis::{Direction, DEFAULT_EPOCHS};
use socrank_core::flow_rank::{DepthCap, DEFAULT_DEPTH_CAP};
use socrank_core::hsn::DEFAULT_HITS_ITERATIONS;
use socrank_core::prsn::PageRankParams;
use socrank_core::synth::SynthSpec;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreaker {
    Prsn,
    Hsn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PersonSpec {
    /// Sample this many users per URL set.
    Count(usize),
    /// Use these handles for both URL sets.
    Handles(Vec<String>),
}

/// Requested size of a URL selection; `Auto` takes up to 2,000.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetSize {
    Auto,
    Exactly(usize),
}

pub const AUTO_SET_SIZE: usize = 2000;

impl SetSize {
    pub fn resolve(self, available: usize) -> usize {
        match self {
            SetSize::Auto => AUTO_SET_SIZE.min(available),
            SetSize::Exactly(n) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub out: PathBuf,
    pub edges: Option<PathBuf>,
    pub shares: Option<PathBuf>,
    pub redirects: Option<PathBuf>,
    pub nodes: Option<PathBuf>,
    pub snapshot: Option<PathBuf>,
    pub rankings_dir: Option<PathBuf>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub pagerank: PageRankParams,
    pub hits_iterations: usize,
    pub depth_cap: DepthCap,
    pub n_popular: SetSize,
    pub n_random: SetSize,
    pub n_selected: usize,
    pub persons: PersonSpec,
    pub tie_breaker: TieBreaker,
    pub min_spreaders: usize,
    pub distance_direction: Direction,
    pub distance_sources: usize,
    pub distance_spreaders: usize,
    pub separator_epochs: usize,
    pub positions_only: bool,
    pub dump_flow: bool,
    pub synth: SynthSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            out: PathBuf::from("out"),
            edges: None,
            shares: None,
            redirects: None,
            nodes: None,
            snapshot: None,
            rankings_dir: None,
            seed: 1,
            threads: None,
            pagerank: PageRankParams::default(),
            hits_iterations: DEFAULT_HITS_ITERATIONS,
            depth_cap: DEFAULT_DEPTH_CAP,
            n_popular: SetSize::Auto,
            n_random: SetSize::Auto,
            n_selected: 30,
            persons: PersonSpec::Count(4),
            tie_breaker: TieBreaker::Prsn,
            min_spreaders: 2,
            distance_direction: Direction::Undirected,
            distance_sources: 10,
            distance_spreaders: 10,
            separator_epochs: DEFAULT_EPOCHS,
            positions_only: false,
            dump_flow: false,
            synth: SynthSpec::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!("invalid value {value:?} for {key}, expected true or false"))),
    }
}

fn parse_set_size(key: &str, value: &str) -> Result<SetSize> {
    if value == "auto" {
        Ok(SetSize::Auto)
    } else {
        parse(key, value).map(SetSize::Exactly)
    }
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let path = || Some(PathBuf::from(value));
        match key {
            "out" => self.out = PathBuf::from(value),
            "edges" => self.edges = path(),
            "shares" => self.shares = path(),
            "redirects" => self.redirects = path(),
            "nodes" => self.nodes = path(),
            "snapshot" => self.snapshot = path(),
            "rankings_dir" => self.rankings_dir = path(),
            "seed" => {
                self.seed = parse(key, value)?;
                self.synth.seed = self.seed;
            }
            "threads" => self.threads = Some(parse(key, value)?),
            "sigma" => self.pagerank.sigma = parse(key, value)?,
            "pagerank_iterations" => self.pagerank.iterations = parse(key, value)?,
            "pagerank_epsilon" => self.pagerank.epsilon = parse(key, value)?,
            "hits_iterations" => self.hits_iterations = parse(key, value)?,
            "depth_cap" => {
                self.depth_cap = match value {
                    "unlimited" => DepthCap::Unlimited,
                    hops => DepthCap::Hops(parse(key, hops)?),
                }
            }
            "n_popular" => self.n_popular = parse_set_size(key, value)?,
            "n_random" => self.n_random = parse_set_size(key, value)?,
            "n_selected" => self.n_selected = parse(key, value)?,
            "persons" => {
                self.persons = match value.parse() {
                    Ok(n) => PersonSpec::Count(n),
                    Err(_) => PersonSpec::Handles(
                        value.split(',').map(|h| h.trim().to_owned()).filter(|h| !h.is_empty()).collect(),
                    ),
                }
            }
            "tie_breaker" => {
                self.tie_breaker = match value {
                    "prsn" => TieBreaker::Prsn,
                    "hsn" => TieBreaker::Hsn,
                    _ => return Err(CliError::Usage(format!("tie_breaker must be prsn or hsn, got {value:?}"))),
                }
            }
            "min_spreaders" => self.min_spreaders = parse(key, value)?,
            "distance_direction" => self.distance_direction = parse(key, value)?,
            "distance_sources" => self.distance_sources = parse(key, value)?,
            "distance_spreaders" => self.distance_spreaders = parse(key, value)?,
            "separator_epochs" => self.separator_epochs = parse(key, value)?,
            "positions_only" => self.positions_only = parse_bool(key, value)?,
            "dump_flow" => self.dump_flow = parse_bool(key, value)?,
            "synth.nodes" => self.synth.nodes = parse(key, value)?,
            "synth.attachment" => self.synth.attachment = parse(key, value)?,
            "synth.reciprocity" => self.synth.reciprocity = parse(key, value)?,
            "synth.celebrity_fraction" => self.synth.celebrity_fraction = parse(key, value)?,
            "synth.celebrity_follows" => self.synth.celebrity_follows = parse(key, value)?,
            "synth.urls" => self.synth.urls = parse(key, value)?,
            "synth.spreader_alpha" => self.synth.spreader_alpha = parse(key, value)?,
            "synth.max_spreaders" => self.synth.max_spreaders = parse(key, value)?,
            "synth.cascade_prob" => self.synth.cascade_prob = parse(key, value)?,
            "synth.alias_fraction" => self.synth.alias_fraction = parse(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a config file: one `key = value` per line, `#` comments.
    pub fn apply_text(&mut self, text: &str, origin: &Path) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("{}:{}: expected key = value", origin.display(), i + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", origin.display(), i + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        self.apply_text(&text, path)
    }

    /// Applies a `key=value` command-line override.
    pub fn apply_override(&mut self, pair: &str) -> Result<()> {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got {pair:?}")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        self.pagerank.validate()?;
        self.synth.validate()?;
        for (key, v) in [
            ("hits_iterations", self.hits_iterations),
            ("n_selected", self.n_selected),
            ("min_spreaders", self.min_spreaders),
            ("distance_sources", self.distance_sources),
            ("distance_spreaders", self.distance_spreaders),
            ("separator_epochs", self.separator_epochs),
        ] {
            if v == 0 {
                return usage(format!("{key} must be at least 1"));
            }
        }
        if self.depth_cap == DepthCap::Hops(0) {
            return usage("depth_cap must be at least 1 or \"unlimited\"".into());
        }
        if self.threads == Some(0) {
            return usage("threads must be at least 1".into());
        }
        for (key, size) in [("n_popular", self.n_popular), ("n_random", self.n_random)] {
            if let SetSize::Exactly(n) = size {
                if n < self.n_selected {
                    return usage(format!("{key} = {n} is smaller than n_selected = {}", self.n_selected));
                }
            }
        }
        match &self.persons {
            PersonSpec::Count(0) => return usage("persons must be at least 1".into()),
            PersonSpec::Handles(h) if h.is_empty() => return usage("persons lists no handles".into()),
            _ => {}
        }
        Ok(())
    }

    pub fn edges_path(&self) -> PathBuf {
        self.edges.clone().unwrap_or_else(|| self.out.join("edges.tsv"))
    }

    pub fn shares_path(&self) -> PathBuf {
        self.shares.clone().unwrap_or_else(|| self.out.join("shares.tsv"))
    }

    /// The configured redirect map, or `out/redirects.tsv` when it exists.
    pub fn redirects_path(&self) -> Option<PathBuf> {
        self.redirects.clone().or_else(|| {
            let p = self.out.join("redirects.tsv");
            p.exists().then_some(p)
        })
    }

    pub fn snapshot_path(&self) -> PathBuf {
        self.snapshot.clone().unwrap_or_else(|| self.out.join("snapshot.bin"))
    }

    pub fn rankings_dir(&self) -> PathBuf {
        self.rankings_dir.clone().unwrap_or_else(|| self.out.clone())
    }
}

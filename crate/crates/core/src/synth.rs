//! Deterministic synthetic corpora: a preferential-attachment follow graph
//! with optional celebrity accounts, plus share cascades over it.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const BASE_TIMESTAMP: i64 = 1_315_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub nodes: usize,
    /// Users each newcomer follows, picked with probability ∝ indegree + 1.
    pub attachment: usize,
    /// Chance that a followed user follows back.
    pub reciprocity: f64,
    /// Share of users (the oldest ones) acting as celebrities.
    pub celebrity_fraction: f64,
    /// Celebrities every other user follows.
    pub celebrity_follows: usize,
    pub urls: usize,
    /// Tail exponent of the per-URL spreader count.
    pub spreader_alpha: f64,
    pub max_spreaders: usize,
    /// Chance that the next spreader is a follower of an earlier one.
    pub cascade_prob: f64,
    /// Share of URLs that also circulate through a shortener alias.
    pub alias_fraction: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            nodes: 2000,
            attachment: 3,
            reciprocity: 0.1,
            celebrity_fraction: 0.01,
            celebrity_follows: 2,
            urls: 500,
            spreader_alpha: 1.2,
            max_spreaders: 200,
            cascade_prob: 0.7,
            alias_fraction: 0.1,
            seed: 1,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InfeasibleSynth(m));
        for (name, p) in [
            ("reciprocity", self.reciprocity),
            ("celebrity_fraction", self.celebrity_fraction),
            ("cascade_prob", self.cascade_prob),
            ("alias_fraction", self.alias_fraction),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if !(self.spreader_alpha > 0.0) {
            return bad(format!("spreader_alpha must be positive, got {}", self.spreader_alpha));
        }
        if self.urls > 0 && self.nodes == 0 {
            return bad("urls need at least one node".into());
        }
        if self.max_spreaders == 0 {
            return bad("max_spreaders must be at least 1".into());
        }
        if self.max_spreaders > self.nodes && self.urls > 0 {
            return bad(format!(
                "max_spreaders {} exceeds node count {}",
                self.max_spreaders, self.nodes
            ));
        }
        if self.celebrity_follows > self.celebrity_count() {
            return bad(format!(
                "celebrity_follows {} exceeds celebrity count {}",
                self.celebrity_follows,
                self.celebrity_count()
            ));
        }
        Ok(())
    }

    pub fn celebrity_count(&self) -> usize {
        (self.celebrity_fraction * self.nodes as f64).ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthCorpus {
    pub handles: Vec<String>,
    /// `(follower, followee)`, possibly with duplicates.
    pub edges: Vec<(u32, u32)>,
    /// `(user, timestamp, raw url)`.
    pub shares: Vec<(u32, i64, String)>,
    pub redirects: Vec<(String, String)>,
}

pub fn generate(spec: &SynthSpec) -> Result<SynthCorpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.nodes;
    let handles: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    let edges = follow_graph(spec, &mut rng);

    let mut followers: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(a, b) in &edges {
        followers[b as usize].push(a);
    }

    let mut shares = Vec::new();
    let mut redirects = Vec::new();
    let mut clock = BASE_TIMESTAMP;
    for j in 0..spec.urls {
        let canonical = format!("http://site{}.example.com/story/{j}", j % 97);
        let alias = (rng.random::<f64>() < spec.alias_fraction).then(|| {
            let a = format!("http://sho.rt/{j:x}");
            redirects.push((a.clone(), canonical.clone()));
            a
        });
        let k = spreader_count(spec, &mut rng);
        for user in cascade(k, n, spec.cascade_prob, &followers, &mut rng) {
            clock += rng.random_range(1..120);
            let raw = match (rng.random_range(0..4u8), &alias) {
                (0, _) => canonical.clone(),
                (1, _) => format!("HTTP://Site{}.Example.com/story/{j}#ref", j % 97),
                (2, _) => format!("http://site{}.example.com:80/story/{j}", j % 97),
                (_, Some(a)) => a.clone(),
                (_, None) => canonical.clone(),
            };
            if rng.random::<f64>() < 0.03 {
                shares.push((user, clock + 3600, raw.clone()));
            }
            shares.push((user, clock, raw));
        }
    }
    Ok(SynthCorpus {
        handles,
        edges,
        shares,
        redirects,
    })
}

fn follow_graph(spec: &SynthSpec, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let n = spec.nodes;
    let celebs = spec.celebrity_count().min(n);
    let mut edges = Vec::new();
    // each node once, plus once per in-edge: uniform draws are ∝ indegree + 1
    let mut pool: Vec<u32> = Vec::new();
    let mut chosen = HashSet::new();
    for i in 0..n as u32 {
        chosen.clear();
        let want = spec.attachment.min(i as usize);
        while chosen.len() < want {
            let t = pool[rng.random_range(0..pool.len())];
            if t != i {
                chosen.insert(t);
            }
        }
        if (i as usize) >= celebs {
            for c in sample(rng, celebs, spec.celebrity_follows) {
                chosen.insert(c as u32);
            }
        }
        let mut targets: Vec<u32> = chosen.iter().copied().collect();
        targets.sort_unstable();
        for t in targets {
            edges.push((i, t));
            pool.push(t);
            if rng.random::<f64>() < spec.reciprocity {
                edges.push((t, i));
                pool.push(i);
            }
        }
        pool.push(i);
    }
    edges
}

fn spreader_count(spec: &SynthSpec, rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.random();
    let tail = (1.0 - u).powf(-1.0 / spec.spreader_alpha) - 1.0;
    let k = 1.0 + (2.0 * tail).floor();
    if k.is_finite() {
        (k as usize).clamp(1, spec.max_spreaders)
    } else {
        spec.max_spreaders
    }
}

fn cascade(k: usize, n: usize, cascade_prob: f64, followers: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut order: Vec<u32> = Vec::with_capacity(k);
    let mut seen = HashSet::with_capacity(k);
    let mut attempts = 0;
    while order.len() < k && attempts < 50 * k {
        attempts += 1;
        let candidate = if !order.is_empty() && rng.random::<f64>() < cascade_prob {
            let s = order[rng.random_range(0..order.len())] as usize;
            if followers[s].is_empty() {
                continue;
            }
            followers[s][rng.random_range(0..followers[s].len())]
        } else {
            rng.random_range(0..n) as u32
        };
        if seen.insert(candidate) {
            order.push(candidate);
        }
    }
    order
}

impl SynthCorpus {
    /// Writes `edges.tsv`, `shares.tsv` and `redirects.tsv` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let open = |name: &str| {
            let path = dir.join(name);
            File::create(&path)
                .map(BufWriter::new)
                .map_err(|e| Error::io(path, e))
        };
        let io = |name: &str| {
            let path = dir.join(name);
            move |e| Error::io(path, e)
        };

        let mut w = open("edges.tsv")?;
        for &(a, b) in &self.edges {
            writeln!(w, "{}\t{}", self.handles[a as usize], self.handles[b as usize]).map_err(io("edges.tsv"))?;
        }
        w.flush().map_err(io("edges.tsv"))?;

        let mut w = open("shares.tsv")?;
        for (u, ts, url) in &self.shares {
            writeln!(w, "{}\t{ts}\t{url}", self.handles[*u as usize]).map_err(io("shares.tsv"))?;
        }
        w.flush().map_err(io("shares.tsv"))?;

        let mut w = open("redirects.tsv")?;
        for (a, b) in &self.redirects {
            writeln!(w, "{a}\t{b}").map_err(io("redirects.tsv"))?;
        }
        w.flush().map_err(io("redirects.tsv"))?;
        Ok(())
    }
}

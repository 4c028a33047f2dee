use rand::seq::SliceRandom;

use super::stream_rng;
use crate::error::{Error, Result};

pub const DEFAULT_EPOCHS: usize = 1000;
const LEARNING_RATE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Popular,
    Random,
}

impl Label {
    fn sign(self) -> f64 {
        match self {
            Label::Popular => 1.0,
            Label::Random => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Popular => "popular",
            Label::Random => "random",
        }
    }
}

/// A URL placed by affected-set size and average spreader distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPoint {
    pub id: usize,
    pub affected_size: f64,
    pub avg_distance: f64,
    pub label: Label,
}

impl LabeledPoint {
    fn features(&self) -> [f64; 3] {
        [(self.affected_size + 1.0).log10(), self.avg_distance, 1.0]
    }
}

/// Line `w[0]·log10(x + 1) + w[1]·y + w[2] = 0`; positive side is popular.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorFit {
    pub weights: [f64; 3],
    pub misclassified: Vec<usize>,
}

impl SeparatorFit {
    /// Points on the wrong side of (or on) the line.
    pub fn evaluate(weights: &[f64; 3], points: &[LabeledPoint]) -> Vec<usize> {
        points
            .iter()
            .filter(|p| margin(weights, p) <= 0.0)
            .map(|p| p.id)
            .collect()
    }
}

fn margin(w: &[f64; 3], p: &LabeledPoint) -> f64 {
    let x = p.features();
    p.label.sign() * (w[0] * x[0] + w[1] * x[1] + w[2] * x[2])
}

/// Pocket perceptron: standard perceptron updates over a seeded shuffle per
/// epoch, keeping the weights with the fewest misclassified points seen
/// after any epoch.
pub fn fit_linear_separator(points: &[LabeledPoint], epochs: usize, seed: u64) -> Result<SeparatorFit> {
    let has = |l| points.iter().any(|p| p.label == l);
    if !has(Label::Popular) || !has(Label::Random) {
        return Err(Error::SingleClass);
    }
    if epochs == 0 {
        return Err(Error::InvalidParams("epochs must be at least 1".into()));
    }
    let mut rng = stream_rng(seed, 4);
    let mut w = [0.0f64; 3];
    let mut best = (SeparatorFit::evaluate(&w, points), w);
    let mut order: Vec<usize> = (0..points.len()).collect();
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let p = &points[i];
            if margin(&w, p) <= 0.0 {
                let x = p.features();
                let y = p.label.sign();
                for k in 0..3 {
                    w[k] += LEARNING_RATE * y * x[k];
                }
            }
        }
        let missed = SeparatorFit::evaluate(&w, points);
        if missed.len() < best.0.len() {
            best = (missed, w);
        }
        if best.0.is_empty() {
            break;
        }
    }
    Ok(SeparatorFit {
        weights: best.1,
        misclassified: best.0,
    })
}

//! Accuracy, relevant-premise F1, content-effect bias and a combined score.
//!
//! All values are percentages in `[0, 100]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::dataset::PlausibilityGroup;

/// Gold and predicted labels for one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub group: PlausibilityGroup,
    pub gold_validity: bool,
    pub predicted_validity: bool,
    pub gold_relevant: BTreeSet<usize>,
    pub predicted_relevant: BTreeSet<usize>,
}

impl Outcome {
    pub fn correct(&self) -> bool {
        self.gold_validity == self.predicted_validity
    }
}

/// Set F1 between predicted and gold indices. Two empty sets agree fully.
pub fn set_f1(gold: &BTreeSet<usize>, predicted: &BTreeSet<usize>) -> f64 {
    if gold.is_empty() && predicted.is_empty() {
        return 100.0;
    }
    let tp = gold.intersection(predicted).count() as f64;
    100.0 * 2.0 * tp / (gold.len() + predicted.len()) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum F1Averaging {
    /// Mean of per-record set F1.
    #[default]
    PerRecord,
    /// Mean over premise-index classes of each class's binary F1.
    PerIndex,
}

impl std::str::FromStr for F1Averaging {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-record" => Ok(F1Averaging::PerRecord),
            "per-index" => Ok(F1Averaging::PerIndex),
            _ => Err(format!("unknown F1 averaging `{s}` (expected per-record or per-index)")),
        }
    }
}

pub fn premise_f1(outcomes: &[Outcome], averaging: F1Averaging) -> f64 {
    if outcomes.is_empty() {
        return 0.0;
    }
    match averaging {
        F1Averaging::PerRecord => {
            outcomes
                .iter()
                .map(|o| set_f1(&o.gold_relevant, &o.predicted_relevant))
                .sum::<f64>()
                / outcomes.len() as f64
        }
        F1Averaging::PerIndex => {
            let classes: BTreeSet<usize> = outcomes
                .iter()
                .flat_map(|o| o.gold_relevant.iter().chain(&o.predicted_relevant).copied())
                .collect();
            if classes.is_empty() {
                return 100.0;
            }
            let per_class = classes.iter().map(|k| {
                let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
                for o in outcomes {
                    match (o.gold_relevant.contains(k), o.predicted_relevant.contains(k)) {
                        (true, true) => tp += 1,
                        (false, true) => fp += 1,
                        (true, false) => fn_ += 1,
                        (false, false) => {}
                    }
                }
                100.0 * 2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
            });
            per_class.sum::<f64>() / classes.len() as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupCount {
    pub correct: usize,
    pub total: usize,
}

impl GroupCount {
    pub fn accuracy(&self) -> f64 {
        100.0 * self.correct as f64 / self.total as f64
    }
}

/// Turns per-group counts into a bias figure. `None` means the needed
/// groups are missing.
pub trait BiasScorer: Send + Sync {
    fn name(&self) -> &'static str;
    fn bias(&self, groups: &BTreeMap<PlausibilityGroup, GroupCount>) -> Option<f64>;
}

/// `|acc(consistent) - acc(inconsistent)|`; neutral items do not count.
#[derive(Debug, Default, Clone, Copy)]
pub struct AccuracyGap;

impl BiasScorer for AccuracyGap {
    fn name(&self) -> &'static str {
        "accuracy-gap"
    }

    fn bias(&self, groups: &BTreeMap<PlausibilityGroup, GroupCount>) -> Option<f64> {
        let c = groups.get(&PlausibilityGroup::Consistent)?;
        let i = groups.get(&PlausibilityGroup::Inconsistent)?;
        Some((c.accuracy() - i.accuracy()).abs())
    }
}

pub trait CombinedScorer: Send + Sync {
    fn name(&self) -> &'static str;
    fn combined(&self, accuracy: f64, bias: f64) -> f64;
}

/// Placeholder, not the official leaderboard formula: `acc * (100 - bias) / 100`.
#[derive(Debug, Default, Clone, Copy)]
pub struct DiscountedAccuracy;

impl CombinedScorer for DiscountedAccuracy {
    fn name(&self) -> &'static str {
        "discounted-accuracy (unofficial placeholder)"
    }

    fn combined(&self, accuracy: f64, bias: f64) -> f64 {
        accuracy * (100.0 - bias) / 100.0
    }
}

pub struct MetricsConfig {
    pub f1_averaging: F1Averaging,
    pub bias: Box<dyn BiasScorer>,
    pub combined: Box<dyn CombinedScorer>,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            f1_averaging: F1Averaging::default(),
            bias: Box::new(AccuracyGap),
            combined: Box::new(DiscountedAccuracy),
        }
    }
}

impl std::fmt::Debug for MetricsConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricsConfig")
            .field("f1_averaging", &self.f1_averaging)
            .field("bias", &self.bias.name())
            .field("combined", &self.combined.name())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetrics {
    pub n: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub premise_f1: f64,
    pub f1_averaging: F1Averaging,
    pub bias: f64,
    pub bias_scorer: &'static str,
    pub combined: f64,
    pub combined_scorer: &'static str,
    pub per_group: BTreeMap<PlausibilityGroup, GroupCount>,
    pub per_group_accuracy: BTreeMap<PlausibilityGroup, f64>,
    pub warnings: Vec<String>,
}

pub fn compute_metrics(outcomes: &[Outcome], cfg: &MetricsConfig) -> RunMetrics {
    let n = outcomes.len();
    let correct = outcomes.iter().filter(|o| o.correct()).count();
    let accuracy = if n == 0 { 0.0 } else { 100.0 * correct as f64 / n as f64 };
    let mut per_group: BTreeMap<PlausibilityGroup, GroupCount> = BTreeMap::new();
    for o in outcomes {
        let g = per_group.entry(o.group).or_insert(GroupCount { correct: 0, total: 0 });
        g.total += 1;
        g.correct += usize::from(o.correct());
    }
    let per_group_accuracy = per_group.iter().map(|(&g, c)| (g, c.accuracy())).collect();
    let mut warnings = Vec::new();
    let bias = cfg.bias.bias(&per_group).unwrap_or_else(|| {
        warnings.push("bias needs both consistent and inconsistent records; reported as 0".to_string());
        0.0
    });
    RunMetrics {
        n,
        correct,
        accuracy,
        premise_f1: premise_f1(outcomes, cfg.f1_averaging),
        f1_averaging: cfg.f1_averaging,
        bias,
        bias_scorer: cfg.bias.name(),
        combined: cfg.combined.combined(accuracy, bias),
        combined_scorer: cfg.combined.name(),
        per_group,
        per_group_accuracy,
        warnings,
    }
}

//! Evaluation harness: datasets, pipelines, metrics and reports.

pub mod dataset;
pub mod metrics;
pub mod pipeline;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use dataset::{load_dataset, parse_dataset, DatasetError, DatasetRecord, PlausibilityGroup};
pub use metrics::{compute_metrics, set_f1, F1Averaging, MetricsConfig, Outcome, RunMetrics};
pub use pipeline::{pipeline_by_id, FixturePipeline, Pipeline, PipelineError, Prediction, RulesPipeline};

use crate::types::ValidityVerdict;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no records to evaluate")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordReport {
    pub id: String,
    pub group: PlausibilityGroup,
    pub gold_validity: bool,
    pub predicted_validity: bool,
    pub gold_relevant: BTreeSet<usize>,
    pub predicted_relevant: BTreeSet<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ValidityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub premise_f1: f64,
    pub validity_mismatch: bool,
    pub relevance_mismatch: bool,
}

impl RecordReport {
    fn outcome(&self) -> Outcome {
        Outcome {
            group: self.group,
            gold_validity: self.gold_validity,
            predicted_validity: self.predicted_validity,
            gold_relevant: self.gold_relevant.clone(),
            predicted_relevant: self.predicted_relevant.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub pipeline: String,
    pub metrics: RunMetrics,
    /// Sorted by id.
    pub records: Vec<RecordReport>,
}

fn report_for(record: &DatasetRecord, prediction: Result<Prediction, String>) -> RecordReport {
    let (verdict, relevant, note, error) = match prediction {
        Ok(p) => (Some(p.verdict), p.relevant.indices().clone(), p.note, None),
        Err(e) => (None, BTreeSet::new(), None, Some(e)),
    };
    let predicted_validity = verdict.as_ref().is_some_and(ValidityVerdict::is_valid);
    RecordReport {
        id: record.id.clone(),
        group: record.plausibility_group,
        gold_validity: record.gold_validity,
        predicted_validity,
        premise_f1: set_f1(&record.gold_relevant, &relevant),
        validity_mismatch: predicted_validity != record.gold_validity,
        relevance_mismatch: relevant != record.gold_relevant,
        gold_relevant: record.gold_relevant.clone(),
        predicted_relevant: relevant,
        verdict,
        error,
        note,
    }
}

/// Predicts every record (in parallel) and scores the run.
pub fn evaluate(records: &[DatasetRecord], pipeline: &dyn Pipeline, cfg: &MetricsConfig) -> Result<EvalReport, EvalError> {
    if records.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut reports: Vec<RecordReport> = records.par_iter().map(|r| report_for(r, pipeline.predict(r))).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let outcomes: Vec<Outcome> = reports.iter().map(RecordReport::outcome).collect();
    Ok(EvalReport {
        schema_version: REPORT_SCHEMA_VERSION,
        pipeline: pipeline.id().to_string(),
        metrics: compute_metrics(&outcomes, cfg),
        records: reports,
    })
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Metrics only, as JSON.
    pub fn summary_json(&self) -> String {
        let summary = serde_json::json!({
            "schema_version": self.schema_version,
            "pipeline": self.pipeline,
            "metrics": self.metrics,
        });
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    }

    pub fn render_table(&self) -> String {
        let m = &self.metrics;
        let mut out = String::new();
        let _ = writeln!(out, "pipeline: {}   records: {}", self.pipeline, m.n);
        let _ = writeln!(out, "{:<26} {:>8}", "metric", "value");
        let _ = writeln!(out, "{:-<35}", "");
        let _ = writeln!(out, "{:<26} {:>8.2}", "accuracy", m.accuracy);
        let f1_label = match m.f1_averaging {
            F1Averaging::PerRecord => "premise F1 (per record)",
            F1Averaging::PerIndex => "premise F1 (per index)",
        };
        let _ = writeln!(out, "{:<26} {:>8.2}", f1_label, m.premise_f1);
        let _ = writeln!(out, "{:<26} {:>8.2}", "bias", m.bias);
        let _ = writeln!(out, "{:<26} {:>8.2}", "combined (unofficial)", m.combined);
        for (group, count) in &m.per_group {
            let label = format!("accuracy [{group}]");
            let _ = writeln!(
                out,
                "{label:<26} {:>8.2}   ({}/{})",
                count.accuracy(),
                count.correct,
                count.total
            );
        }
        for w in &m.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let mismatches: Vec<&str> = self
            .records
            .iter()
            .filter(|r| r.validity_mismatch || r.relevance_mismatch)
            .map(|r| r.id.as_str())
            .collect();
        if !mismatches.is_empty() {
            let shown = mismatches.iter().take(20).copied().collect::<Vec<_>>().join(", ");
            let more = if mismatches.len() > 20 {
                format!(" (+{} more)", mismatches.len() - 20)
            } else {
                String::new()
            };
            let _ = writeln!(out, "mismatches: {shown}{more}");
        }
        out
    }
}

//! Prediction pipelines: raw record in, verdict and relevance set out.

use std::path::Path;

use crate::normalize::fixture::FixtureNormalizer;
use crate::normalize::{normalize_en, split_sentences, Mode, NormalizeError, Normalizer, TermMapping};
use crate::parser::{ParseFailure, ParseFailureKind};
use crate::relevance::select_relevant;
use crate::types::{Proposition, RelevanceSet, Syllogism, ValidityVerdict};
use crate::validity::{judge, ValidityConfig};

use super::dataset::DatasetRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub verdict: ValidityVerdict,
    pub relevant: RelevanceSet,
    /// Anything the pipeline had to give up on along the way.
    pub note: Option<String>,
}

impl Prediction {
    fn new(verdict: ValidityVerdict, relevant: RelevanceSet) -> Self {
        Prediction {
            verdict,
            relevant,
            note: None,
        }
    }
}

pub trait Pipeline: Send + Sync {
    fn id(&self) -> &'static str;
    /// `Err` means no verdict could be produced; it scores as "invalid, no
    /// premises".
    fn predict(&self, record: &DatasetRecord) -> Result<Prediction, String>;
}

fn unparsed(sentence: &str, why: impl std::fmt::Display) -> Prediction {
    let failure = ParseFailure {
        kind: ParseFailureKind::NotAeio,
        offending_text: sentence.to_string(),
    };
    Prediction {
        verdict: ValidityVerdict::malformed(failure),
        relevant: RelevanceSet::empty(),
        note: Some(why.to_string()),
    }
}

/// Paraphrase table per sentence, then relevant-premise selection.
#[derive(Debug, Clone, Default)]
pub struct RulesPipeline {
    pub config: ValidityConfig,
}

impl Pipeline for RulesPipeline {
    fn id(&self) -> &'static str {
        "rules"
    }

    fn predict(&self, record: &DatasetRecord) -> Result<Prediction, String> {
        let mut props = Vec::with_capacity(record.sentences.len());
        for s in &record.sentences {
            match normalize_en(s) {
                Ok(p) => props.push(p),
                Err(e) => return Ok(unparsed(s, e)),
            }
        }
        let conclusion = props.pop().ok_or("record has no sentences")?;
        let (verdict, relevant) = select_relevant(&props, &conclusion, &self.config);
        Ok(Prediction::new(verdict, relevant))
    }
}

/// Replays recorded normalizer output, then parses it deterministically.
/// English records use the English prompt; others use `pivot_mode`.
pub struct FixturePipeline {
    normalizer: FixtureNormalizer,
    pub pivot_mode: Mode,
    pub config: ValidityConfig,
}

impl FixturePipeline {
    pub fn new(normalizer: FixtureNormalizer) -> Self {
        FixturePipeline {
            normalizer,
            pivot_mode: Mode::EpnValidity,
            config: ValidityConfig::default(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, NormalizeError> {
        Ok(Self::new(FixtureNormalizer::load(path)?))
    }

    pub fn mode_for(&self, record: &DatasetRecord) -> Mode {
        if record.language.eq_ignore_ascii_case("en") {
            Mode::EnglishNorm
        } else {
            self.pivot_mode
        }
    }
}

/// The argument as one text, as sent to the normalizer.
pub fn argument_text(record: &DatasetRecord) -> String {
    record
        .sentences
        .iter()
        .map(|s| {
            let s = s.trim();
            if s.ends_with(['.', '!', '?']) {
                s.to_string()
            } else {
                format!("{s}.")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

// Replaces single-letter symbols with the terms they stand for.
fn unmap(p: &Proposition, mapping: Option<&TermMapping>) -> Proposition {
    let Some(m) = mapping else { return p.clone() };
    p.map_terms(|t| {
        let mut chars = t.as_str().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => m.term_for(c.to_ascii_uppercase()).cloned().unwrap_or_else(|| t.clone()),
            _ => t.clone(),
        }
    })
}

// Finds distinct source premises that normalize to the selected ones.
fn locate(selected: &[Proposition], record: &DatasetRecord) -> Option<RelevanceSet> {
    let sources: Vec<Option<Proposition>> = record.premises().iter().map(|s| normalize_en(s).ok()).collect();
    let mut found: Vec<usize> = Vec::new();
    for p in selected {
        let i = (0..sources.len()).find(|i| !found.contains(i) && sources[*i].as_ref() == Some(p))?;
        found.push(i);
    }
    Some(found.into_iter().collect())
}

impl Pipeline for FixturePipeline {
    fn id(&self) -> &'static str {
        "fixtures"
    }

    fn predict(&self, record: &DatasetRecord) -> Result<Prediction, String> {
        let result = self
            .normalizer
            .normalize(&argument_text(record), self.mode_for(record))
            .map_err(|e| e.to_string())?;
        let mut props = Vec::new();
        for s in split_sentences(&result.parsed) {
            match normalize_en(s) {
                Ok(p) => props.push(unmap(&p, result.mapped.as_ref())),
                Err(e) => return Ok(unparsed(s, e)),
            }
        }
        if props.len() == record.sentences.len() {
            let conclusion = props.pop().expect("nonempty");
            let (verdict, relevant) = select_relevant(&props, &conclusion, &self.config);
            return Ok(Prediction::new(verdict, relevant));
        }
        if props.len() != 3 {
            return Err(format!(
                "normalizer returned {} sentences for {}",
                props.len(),
                record.sentences.len()
            ));
        }
        // The normalizer picked two premises out of several.
        let conclusion = props.pop().expect("three sentences");
        let syllogism = Syllogism::new(props.clone(), conclusion).expect("two premises");
        let verdict = judge(&syllogism, &self.config);
        if !verdict.is_valid() {
            return Ok(Prediction::new(verdict, RelevanceSet::empty()));
        }
        Ok(match locate(&props, record) {
            Some(relevant) => Prediction::new(verdict, relevant),
            None => Prediction {
                verdict,
                relevant: RelevanceSet::empty(),
                note: Some("selected premises do not match any source sentence".into()),
            },
        })
    }
}

pub const PIPELINE_IDS: [&str; 2] = ["rules", "fixtures"];

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("unknown pipeline `{0}` (expected one of: rules, fixtures)")]
    Unknown(String),
    #[error("the fixtures pipeline needs a fixture file")]
    MissingFixtures,
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

pub fn pipeline_by_id(id: &str, fixtures: Option<&Path>) -> Result<Box<dyn Pipeline>, PipelineError> {
    match id {
        "rules" => Ok(Box::new(RulesPipeline::default())),
        "fixtures" => {
            let path = fixtures.ok_or(PipelineError::MissingFixtures)?;
            Ok(Box::new(FixturePipeline::load(path)?))
        }
        other => Err(PipelineError::Unknown(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::dataset::PlausibilityGroup;
    use crate::normalize::fixture::{FixtureRecord, FixtureStore};
    use crate::types::Basis;

    fn record(id: &str, language: &str, sentences: &[&str]) -> DatasetRecord {
        DatasetRecord {
            id: id.into(),
            language: language.into(),
            sentences: sentences.iter().map(|s| s.to_string()).collect(),
            gold_validity: false,
            gold_relevant: Default::default(),
            plausibility_group: PlausibilityGroup::Neutral,
        }
    }

    #[test]
    fn rules_pipeline_table_4_case() {
        let r = record(
            "t4",
            "en",
            &["No bikes are cars.", "All bikes are vehicles.", "Some vehicles are bikes."],
        );
        let p = RulesPipeline::default().predict(&r).unwrap();
        assert!(!p.verdict.is_valid());
        assert!(p.relevant.is_empty());
    }

    #[test]
    fn rules_pipeline_reports_unnormalizable_sentence() {
        let r = record(
            "x",
            "en",
            &[
                "A number of vehicles are bikes.",
                "All bikes are cars.",
                "Some vehicles are cars.",
            ],
        );
        let p = RulesPipeline::default().predict(&r).unwrap();
        assert!(matches!(p.verdict.basis(), Basis::Malformed(_)));
        assert!(p.note.unwrap().contains("a number of"));
    }

    fn store(entries: &[(Mode, &str, &str)]) -> FixtureNormalizer {
        let s = FixtureStore::new();
        for (mode, raw, body) in entries {
            s.insert(FixtureRecord::new(*mode, raw, body));
        }
        FixtureNormalizer::new(s)
    }

    #[test]
    fn fixture_pipeline_pivot_record() {
        let r = record(
            "sw",
            "sw",
            &["Hakuna samaki ni nyoka.", "Kila nyoka ni nyoka.", "Nyoka fulani si samaki."],
        );
        let body = r#"{"detected_language":"sw","reasoning":"","english":"No samaki are nyoka[g]. All nyoka[s] are nyoka[g]. Some nyoka[s] are not samaki."}"#;
        let pipe = FixturePipeline::new(store(&[(Mode::EpnValidity, &argument_text(&r), body)]));
        let p = pipe.predict(&r).unwrap();
        assert_eq!(p.verdict.summary(), "valid (EAO-2)");
        assert_eq!(p.relevant.to_vec(), vec![0, 1]);
    }

    #[test]
    fn fixture_pipeline_maps_selection_back() {
        let r = record(
            "sel",
            "en",
            &[
                "Some rocks are stones.",
                "All m are p.",
                "No fish are birds.",
                "Every s is an m.",
                "All s are p.",
            ],
        );
        let body = r#"{"reasoning":"","mapped":"A:m,B:p,C:s","parsed":"All A are B. All C are A. All C are B."}"#;
        let pipe = FixturePipeline::new(store(&[(Mode::EnglishNorm, &argument_text(&r), body)]));
        let p = pipe.predict(&r).unwrap();
        assert_eq!(p.verdict.summary(), "valid (AAA-1)");
        assert_eq!(p.relevant.to_vec(), vec![1, 3]);
    }

    #[test]
    fn fixture_pipeline_miss_is_an_error() {
        let r = record("m", "en", &["All a are b.", "All b are c.", "All a are c."]);
        let err = FixturePipeline::new(store(&[])).predict(&r).unwrap_err();
        assert!(err.contains("no recorded response"), "{err}");
    }

    #[test]
    fn lookup_by_id() {
        assert!(pipeline_by_id("rules", None).is_ok());
        assert!(matches!(
            pipeline_by_id("fixtures", None),
            Err(PipelineError::MissingFixtures)
        ));
        assert!(matches!(pipeline_by_id("llm", None), Err(PipelineError::Unknown(_))));
    }
}

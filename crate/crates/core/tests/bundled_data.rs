use std::path::{Path, PathBuf};

use syllogism_core::eval::load_dataset;
use syllogism_core::normalize::fixture::{fixture_key, FixtureNormalizer};
use syllogism_core::normalize::{normalize_argument, Mode};
use syllogism_core::synthetic::{relevance_corpus, synthetic_corpus, DEFAULT_SEED};
use syllogism_core::{judge_text, ValidityConfig};

fn crate_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

#[test]
fn corpora_match_regeneration() {
    assert_eq!(
        load_dataset(&crate_path("data/synthetic_corpus.jsonl")).unwrap(),
        synthetic_corpus(DEFAULT_SEED)
    );
    assert_eq!(
        load_dataset(&crate_path("data/relevance_corpus.jsonl")).unwrap(),
        relevance_corpus(200, 50, DEFAULT_SEED)
    );
}

#[test]
fn fixture_store_loads_with_valid_keys() {
    let n = FixtureNormalizer::load(&crate_path("fixtures/normalizer.jsonl")).unwrap();
    let records = n.store().records();
    assert_eq!(records.len(), 2);
    for r in records {
        assert_eq!(r.key, fixture_key(r.mode, &r.raw));
    }
}

#[test]
fn golden_english_normalization() {
    let n = FixtureNormalizer::load(&crate_path("fixtures/normalizer.jsonl")).unwrap();
    let raw = "Some housecats enjoy chasing mice. Any animal that enjoys chasing mice is a feline. All cats are animals.";
    let out = normalize_argument(raw, Mode::EnglishNorm, &n).unwrap();
    assert_eq!(out.mapped.unwrap().to_string(), "A:animal,B:feline,C:cats");
    assert_eq!(out.parsed, "All B are A. All C are A. All C are B.");
    assert!(out.well_formed);
    assert!(out.distribution.unwrap().balanced);
    assert_eq!(
        judge_text(&out.parsed, &ValidityConfig::default()).summary(),
        "invalid (AAA-2)"
    );
}

#[test]
fn swahili_pivot_normalization() {
    let n = FixtureNormalizer::load(&crate_path("fixtures/normalizer.jsonl")).unwrap();
    let raw = "Hakuna samaki ni nyoka. Kila nyoka ni nyoka. Nyoka fulani si samaki.";
    let out = normalize_argument(raw, Mode::EpnValidity, &n).unwrap();
    assert_eq!(out.detected_language.as_deref(), Some("sw"));
    assert!(out.well_formed);
    assert_eq!(judge_text(&out.parsed, &ValidityConfig::default()).summary(), "valid (EAO-2)");
    // same text, other mode: not recorded
    assert!(normalize_argument(raw, Mode::EpnRelevance, &n).is_err());
}

//! Replay store for recorded remote responses.
//!
//! One JSON record per line: `{key, mode, raw, response}`, where `response`
//! is the completion body exactly as received. Keys hash the mode, the
//! prompt template id and the raw text, so a template change invalidates
//! old recordings instead of silently reusing them.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::remote::RemoteNormalizer;
use super::{parse_response, Mode, NormalizationResult, NormalizeError, Normalizer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureRecord {
    pub key: String,
    pub mode: Mode,
    pub raw: String,
    pub response: String,
}

impl FixtureRecord {
    pub fn new(mode: Mode, raw: &str, response: &str) -> Self {
        FixtureRecord {
            key: fixture_key(mode, raw),
            mode,
            raw: raw.to_string(),
            response: response.to_string(),
        }
    }
}

pub fn fixture_key(mode: Mode, raw: &str) -> String {
    let mut h = Sha256::new();
    for part in [mode.name(), mode.template().id, raw] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Default)]
pub struct FixtureStore {
    records: RwLock<BTreeMap<String, FixtureRecord>>,
}

impl FixtureStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> Result<Self, NormalizeError> {
        let text = std::fs::read_to_string(path).map_err(|e| NormalizeError::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            NormalizeError::Fixture(m) => NormalizeError::Fixture(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, NormalizeError> {
        let store = FixtureStore::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: FixtureRecord =
                serde_json::from_str(line).map_err(|e| NormalizeError::Fixture(format!("line {}: {e}", n + 1)))?;
            let expected = fixture_key(rec.mode, &rec.raw);
            if rec.key != expected {
                return Err(NormalizeError::Fixture(format!(
                    "line {}: key {} does not match its mode and text (expected {expected})",
                    n + 1,
                    rec.key
                )));
            }
            store.insert(rec);
        }
        Ok(store)
    }

    pub fn insert(&self, rec: FixtureRecord) {
        self.records.write().expect("fixture lock").insert(rec.key.clone(), rec);
    }

    pub fn get(&self, mode: Mode, raw: &str) -> Option<FixtureRecord> {
        self.records
            .read()
            .expect("fixture lock")
            .get(&fixture_key(mode, raw))
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.records.read().expect("fixture lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn records(&self) -> Vec<FixtureRecord> {
        self.records.read().expect("fixture lock").values().cloned().collect()
    }

    /// Writes all records sorted by key.
    pub fn save(&self, path: &Path) -> Result<(), NormalizeError> {
        let io = |e: std::io::Error| NormalizeError::Fixture(format!("{}: {e}", path.display()));
        let mut out = std::fs::File::create(path).map_err(io)?;
        for rec in self.records() {
            let line = serde_json::to_string(&rec).expect("record serializes");
            writeln!(out, "{line}").map_err(io)?;
        }
        Ok(())
    }
}

/// Answers from the store only; a miss is an error, never a fallback.
pub struct FixtureNormalizer {
    store: FixtureStore,
}

impl FixtureNormalizer {
    pub fn new(store: FixtureStore) -> Self {
        FixtureNormalizer { store }
    }

    pub fn load(path: &Path) -> Result<Self, NormalizeError> {
        Ok(Self::new(FixtureStore::load(path)?))
    }

    pub fn store(&self) -> &FixtureStore {
        &self.store
    }
}

impl Normalizer for FixtureNormalizer {
    fn name(&self) -> &'static str {
        "fixture"
    }

    fn normalize(&self, raw: &str, mode: Mode) -> Result<NormalizationResult, NormalizeError> {
        let rec = self.store.get(mode, raw).ok_or_else(|| NormalizeError::FixtureMiss {
            key: fixture_key(mode, raw),
            mode,
        })?;
        parse_response(mode, &rec.response)
    }
}

/// Calls the remote engine and keeps every successful body for replay.
pub struct RecordingNormalizer {
    remote: RemoteNormalizer,
    store: FixtureStore,
}

impl RecordingNormalizer {
    pub fn new(remote: RemoteNormalizer, store: FixtureStore) -> Self {
        RecordingNormalizer { remote, store }
    }

    pub fn into_store(self) -> FixtureStore {
        self.store
    }
}

impl Normalizer for RecordingNormalizer {
    fn name(&self) -> &'static str {
        "recording"
    }

    fn normalize(&self, raw: &str, mode: Mode) -> Result<NormalizationResult, NormalizeError> {
        let body = self.remote.complete(raw, mode)?;
        let result = parse_response(mode, &body)?;
        self.store.insert(FixtureRecord::new(mode, raw, &body));
        Ok(result)
    }
}

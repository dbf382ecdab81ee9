//! Line-delimited labeled arguments.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlausibilityGroup {
    Consistent,
    Inconsistent,
    Neutral,
}

impl PlausibilityGroup {
    pub const ALL: [PlausibilityGroup; 3] = [Self::Consistent, Self::Inconsistent, Self::Neutral];

    pub fn name(self) -> &'static str {
        match self {
            Self::Consistent => "consistent",
            Self::Inconsistent => "inconsistent",
            Self::Neutral => "neutral",
        }
    }
}

impl fmt::Display for PlausibilityGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One labeled argument. The last sentence is the conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetRecord {
    pub id: String,
    pub language: String,
    pub sentences: Vec<String>,
    pub gold_validity: bool,
    #[serde(default)]
    pub gold_relevant: BTreeSet<usize>,
    pub plausibility_group: PlausibilityGroup,
}

impl DatasetRecord {
    pub fn premises(&self) -> &[String] {
        &self.sentences[..self.sentences.len().saturating_sub(1)]
    }

    pub fn conclusion(&self) -> &str {
        self.sentences.last().map_or("", String::as_str)
    }

    pub fn check(&self) -> Result<(), String> {
        if self.id.trim().is_empty() {
            return Err("empty id".into());
        }
        if self.sentences.len() < 2 {
            return Err(format!("needs at least 2 sentences, has {}", self.sentences.len()));
        }
        let premises = self.sentences.len() - 1;
        if let Some(&bad) = self.gold_relevant.iter().find(|&&i| i >= premises) {
            return Err(format!("gold_relevant index {bad} is out of range for {premises} premises"));
        }
        if !self.gold_validity && !self.gold_relevant.is_empty() {
            return Err("invalid arguments must have an empty gold_relevant set".into());
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate id `{id}` (first seen on line {first})")]
    DuplicateId { line: usize, id: String, first: usize },
    #[error("line {line}: record `{id}`: {message}")]
    Constraint { line: usize, id: String, message: String },
}

pub fn load_dataset(path: &Path) -> Result<Vec<DatasetRecord>, DatasetError> {
    let text = std::fs::read_to_string(path).map_err(|error| DatasetError::Io {
        path: path.display().to_string(),
        error,
    })?;
    parse_dataset(&text)
}

/// Records in file order; blank lines are skipped.
pub fn parse_dataset(text: &str) -> Result<Vec<DatasetRecord>, DatasetError> {
    let mut records = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: DatasetRecord = serde_json::from_str(raw).map_err(|e| DatasetError::Malformed {
            line,
            message: e.to_string(),
        })?;
        if let Some(&first) = seen.get(&rec.id) {
            return Err(DatasetError::DuplicateId { line, id: rec.id, first });
        }
        rec.check().map_err(|message| DatasetError::Constraint {
            line,
            id: rec.id.clone(),
            message,
        })?;
        seen.insert(rec.id.clone(), line);
        records.push(rec);
    }
    Ok(records)
}

pub fn write_dataset(records: &[DatasetRecord], out: &mut impl Write) -> std::io::Result<()> {
    for rec in records {
        serde_json::to_writer(&mut *out, rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

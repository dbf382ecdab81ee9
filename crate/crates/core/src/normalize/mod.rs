//! Raw argument text to canonical form.
//!
//! Three engines share the [`Normalizer`] trait: a deterministic English
//! paraphrase table ([`RulesNormalizer`]), a remote completion endpoint
//! ([`remote::RemoteNormalizer`]) and a replay store of recorded remote
//! responses ([`fixture::FixtureNormalizer`]).

pub mod fixture;
pub mod prompts;
pub mod remote;
pub mod rules;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::parser::parse_canonical;
use crate::types::{Proposition, PropositionForm, Term};

pub use prompts::PromptTemplate;
pub use rules::{normalize_en, NotNormalizable, ParaphraseRule, RuleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    EnglishNorm,
    EpnValidity,
    EpnRelevance,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::EnglishNorm, Mode::EpnValidity, Mode::EpnRelevance];

    pub fn name(self) -> &'static str {
        match self {
            Mode::EnglishNorm => "english-norm",
            Mode::EpnValidity => "epn-validity",
            Mode::EpnRelevance => "epn-relevance",
        }
    }

    pub fn is_epn(self) -> bool {
        self != Mode::EnglishNorm
    }

    pub fn template(self) -> PromptTemplate {
        PromptTemplate::for_mode(self)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected english-norm, epn-validity or epn-relevance)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Rules,
    Remote,
    Fixture,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rules" => Ok(Engine::Rules),
            "remote" => Ok(Engine::Remote),
            "fixture" => Ok(Engine::Fixture),
            _ => Err(format!("unknown engine `{s}` (expected rules, remote or fixture)")),
        }
    }
}

pub const SYMBOLS: [char; 3] = ['A', 'B', 'C'];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("term mapping needs exactly 3 terms, found {0}")]
    Count(usize),
    #[error("bad mapping entry `{0}`")]
    Entry(String),
    #[error("mapping symbols must be A, B, C in order")]
    Symbols,
    #[error("duplicate term `{0}` in mapping")]
    Duplicate(String),
}

/// The A/B/C abstraction of an argument's three terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMapping {
    terms: [Term; 3],
}

impl TermMapping {
    pub fn new(terms: Vec<Term>) -> Result<Self, MappingError> {
        let count = terms.len();
        let terms: [Term; 3] = terms.try_into().map_err(|_| MappingError::Count(count))?;
        for i in 0..3 {
            for j in i + 1..3 {
                if terms[i] == terms[j] {
                    return Err(MappingError::Duplicate(terms[i].to_string()));
                }
            }
        }
        Ok(TermMapping { terms })
    }

    /// Symbols follow the order in which terms first appear.
    pub fn from_first_appearance(props: &[Proposition]) -> Result<Self, MappingError> {
        let mut seen: Vec<Term> = Vec::new();
        for p in props {
            for t in [&p.subject, &p.predicate] {
                if !seen.contains(t) {
                    seen.push(t.clone());
                }
            }
        }
        TermMapping::new(seen)
    }

    /// Reads the wire form `A:x,B:y,C:z`.
    pub fn parse(text: &str) -> Result<Self, MappingError> {
        let entries: Vec<&str> = text.split(',').map(str::trim).filter(|e| !e.is_empty()).collect();
        if entries.len() != 3 {
            return Err(MappingError::Count(entries.len()));
        }
        let mut terms = Vec::with_capacity(3);
        for (entry, symbol) in entries.iter().zip(SYMBOLS) {
            let (sym, term) = entry.split_once(':').ok_or_else(|| MappingError::Entry(entry.to_string()))?;
            if sym.trim() != symbol.to_string() {
                return Err(MappingError::Symbols);
            }
            terms.push(Term::new(term).map_err(|_| MappingError::Entry(entry.to_string()))?);
        }
        TermMapping::new(terms)
    }

    pub fn symbol_for(&self, term: &Term) -> Option<char> {
        self.terms.iter().position(|t| t == term).map(|i| SYMBOLS[i])
    }

    pub fn term_for(&self, symbol: char) -> Option<&Term> {
        SYMBOLS.iter().position(|&s| s == symbol).map(|i| &self.terms[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (char, &Term)> {
        SYMBOLS.into_iter().zip(self.terms.iter())
    }
}

impl fmt::Display for TermMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().map(|(s, t)| format!("{s}:{t}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for TermMapping {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// How often each term occurs across the sentences of an argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub counts: BTreeMap<String, usize>,
    /// Every term occurs in exactly two of three sentences.
    pub balanced: bool,
}

pub fn term_distribution(props: &[Proposition]) -> DistributionReport {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for p in props {
        let mut terms = vec![p.subject.as_str()];
        if p.predicate != p.subject {
            terms.push(p.predicate.as_str());
        }
        for t in terms {
            *counts.entry(t.to_string()).or_default() += 1;
        }
    }
    let balanced = props.len() == 3 && counts.len() == 3 && counts.values().all(|&c| c == 2);
    DistributionReport { counts, balanced }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationResult {
    pub reasoning: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapped: Option<TermMapping>,
    /// Canonical argument text; the `english` key for pivot modes.
    pub parsed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detected_language: Option<String>,
    pub well_formed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionReport>,
}

impl NormalizationResult {
    /// Fills in `well_formed` and the term distribution from `parsed`.
    pub fn checked(reasoning: String, mapped: Option<TermMapping>, parsed: String, detected_language: Option<String>) -> Self {
        let syllogism = parse_canonical(&parsed).ok();
        let distribution = syllogism.as_ref().map(|s| {
            let props: Vec<Proposition> = s.premises().iter().chain([s.conclusion()]).cloned().collect();
            term_distribution(&props)
        });
        NormalizationResult {
            reasoning,
            mapped,
            parsed,
            detected_language,
            well_formed: syllogism.is_some(),
            distribution,
        }
    }
}

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error("empty input")]
    Empty,
    #[error("sentence {index} (`{sentence}`): {reason}")]
    Sentence {
        index: usize,
        sentence: String,
        reason: NotNormalizable,
    },
    #[error("the {engine} engine does not support mode {mode}")]
    Unsupported { engine: &'static str, mode: Mode },
    #[error("transport: {0}")]
    Transport(String),
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("no recorded response for key {key} (mode {mode})")]
    FixtureMiss { key: String, mode: Mode },
    #[error("fixture store: {0}")]
    Fixture(String),
    #[error("config: {0}")]
    Config(String),
}

pub trait Normalizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn normalize(&self, raw: &str, mode: Mode) -> Result<NormalizationResult, NormalizeError>;
}

pub fn normalize_argument(raw: &str, mode: Mode, engine: &dyn Normalizer) -> Result<NormalizationResult, NormalizeError> {
    if raw.trim().is_empty() {
        return Err(NormalizeError::Empty);
    }
    engine.normalize(raw, mode)
}

/// Normalizes many arguments with at most `max_in_flight` running at once.
/// Results are keyed by the caller's id.
pub fn normalize_batch(
    items: &[(String, String)],
    mode: Mode,
    engine: &dyn Normalizer,
    max_in_flight: usize,
) -> BTreeMap<String, Result<NormalizationResult, NormalizeError>> {
    let next = AtomicUsize::new(0);
    let results = Mutex::new(BTreeMap::new());
    let workers = max_in_flight.max(1).min(items.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((id, raw)) = items.get(i) else { break };
                let out = normalize_argument(raw, mode, engine);
                results.lock().expect("results lock").insert(id.clone(), out);
            });
        }
    });
    results.into_inner().expect("results lock")
}

/// Splits on sentence punctuation and line breaks.
pub fn split_sentences(raw: &str) -> Vec<&str> {
    raw.split(['.', '!', '?', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn render_symbolic(p: &Proposition, name: impl Fn(&Term) -> String) -> String {
    let (s, o) = (name(&p.subject), name(&p.predicate));
    match p.form {
        PropositionForm::A => format!("All {s} are {o}."),
        PropositionForm::E => format!("No {s} are {o}."),
        PropositionForm::I => format!("Some {s} are {o}."),
        PropositionForm::O => format!("Some {s} are not {o}."),
    }
}

/// The deterministic English engine. Pivot modes need a model and are
/// rejected.
#[derive(Debug, Default, Clone, Copy)]
pub struct RulesNormalizer;

impl RulesNormalizer {
    pub fn propositions(raw: &str) -> Result<Vec<Proposition>, NormalizeError> {
        let sentences = split_sentences(raw);
        if sentences.is_empty() {
            return Err(NormalizeError::Empty);
        }
        sentences
            .iter()
            .enumerate()
            .map(|(index, s)| {
                normalize_en(s).map_err(|reason| NormalizeError::Sentence {
                    index,
                    sentence: s.to_string(),
                    reason,
                })
            })
            .collect()
    }
}

impl Normalizer for RulesNormalizer {
    fn name(&self) -> &'static str {
        "rules"
    }

    fn normalize(&self, raw: &str, mode: Mode) -> Result<NormalizationResult, NormalizeError> {
        if mode != Mode::EnglishNorm {
            return Err(NormalizeError::Unsupported { engine: "rules", mode });
        }
        let props = Self::propositions(raw)?;
        let rules = RuleSet::english();
        let fired: Vec<&str> = split_sentences(raw)
            .iter()
            .filter_map(|s| rules.normalize(s).ok().map(|n| n.rule))
            .collect();
        let mapping = TermMapping::from_first_appearance(&props).ok();
        let sentences: Vec<String> = match &mapping {
            Some(m) => props
                .iter()
                .map(|p| render_symbolic(p, |t| m.symbol_for(t).expect("mapped term").to_string()))
                .collect(),
            None => props.iter().map(|p| render_symbolic(p, |t| t.to_string())).collect(),
        };
        let reasoning = format!("rules: {}", fired.join(", "));
        Ok(NormalizationResult::checked(reasoning, mapping, sentences.join(" "), None))
    }
}

fn strip_fences(body: &str) -> &str {
    let t = body.trim();
    let Some(rest) = t.strip_prefix("```") else { return t };
    // drop the info string, e.g. ```json
    let rest = rest.split_once('\n').map_or("", |(_, r)| r);
    rest.trim_end().strip_suffix("```").unwrap_or(rest).trim()
}

/// Candidate objects from a response body, most direct first.
fn json_objects(body: &str) -> Vec<Value> {
    let mut found = Vec::new();
    for text in [body.trim(), strip_fences(body)] {
        match serde_json::from_str::<Value>(text) {
            Ok(v @ Value::Object(_)) => found.push(v),
            // envelope types that carry the completion as a string
            Ok(Value::String(inner)) => found.extend(json_objects(&inner)),
            _ => {}
        }
    }
    let bytes = body.as_bytes();
    let mut start = 0;
    while let Some(offset) = body[start..].find('{') {
        let open = start + offset;
        if let Some(close) = balanced_end(bytes, open) {
            if let Ok(v @ Value::Object(_)) = serde_json::from_str::<Value>(&body[open..=close]) {
                found.push(v);
            }
        }
        start = open + 1;
    }
    found
}

// Index of the brace closing the one at `open`, skipping string contents.
fn balanced_end(bytes: &[u8], open: usize) -> Option<usize> {
    let (mut depth, mut in_str, mut escaped) = (0usize, false, false);
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        if in_str {
            match b {
                _ if escaped => escaped = false,
                b'\\' => escaped = true,
                b'"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match b {
            b'"' => in_str = true,
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn keys_for(mode: Mode) -> &'static [&'static str] {
    if mode.is_epn() {
        &["detected_language", "reasoning", "english"]
    } else {
        &["reasoning", "mapped", "parsed"]
    }
}

// Searches nested values too, so completion envelopes work unchanged.
fn find_with_keys(v: &Value, keys: &[&str]) -> Option<serde_json::Map<String, Value>> {
    match v {
        Value::Object(map) => {
            if keys.iter().all(|k| map.get(*k).is_some_and(Value::is_string)) {
                return Some(map.clone());
            }
            map.values().find_map(|inner| find_with_keys(inner, keys))
        }
        Value::Array(items) => items.iter().find_map(|inner| find_with_keys(inner, keys)),
        Value::String(s) if s.contains('{') => json_objects(s).iter().find_map(|inner| find_with_keys(inner, keys)),
        _ => None,
    }
}

/// Extracts the mode's structured object from a completion body.
pub fn parse_response(mode: Mode, body: &str) -> Result<NormalizationResult, NormalizeError> {
    let keys = keys_for(mode);
    let obj = json_objects(body)
        .iter()
        .find_map(|v| find_with_keys(v, keys))
        .ok_or_else(|| NormalizeError::MalformedResponse(format!("no object with keys {}", keys.join(", "))))?;
    let text = |k: &str| obj[k].as_str().expect("checked string").to_string();
    if mode.is_epn() {
        Ok(NormalizationResult::checked(
            text("reasoning"),
            None,
            text("english"),
            Some(text("detected_language")),
        ))
    } else {
        let mapped =
            TermMapping::parse(&text("mapped")).map_err(|e| NormalizeError::MalformedResponse(format!("mapped: {e}")))?;
        Ok(NormalizationResult::checked(
            text("reasoning"),
            Some(mapped),
            text("parsed"),
            None,
        ))
    }
}

//! Mood/figure lookup tables, trivial-validity rules and the `judge`
//! pipeline that combines them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::parser::parse_canonical;
use crate::structure::{analyze, StructureFailure};
use crate::types::{Figure, Mood, Proposition, PropositionForm, Syllogism, TrivialKind, ValidityVerdict};

const STANDARD_ROWS: [[&str; 6]; 4] = [
    ["AAA", "EAE", "AII", "EIO", "AAI", "EAO"],
    ["EAE", "AEE", "EIO", "AOO", "EAO", "AEO"],
    ["AAI", "IAI", "AII", "EAO", "OAO", "EIO"],
    ["AAI", "AEE", "IAI", "EAO", "EIO", "AEO"],
];

// Derived by exhaustive finite-model enumeration without existential import
// and frozen here; `oracle::enumerate_forms(false)` must reproduce it.
const NO_IMPORT_ROWS: [&[&str]; 4] = [
    &["AAA", "EAE", "AII", "EIO"],
    &["EAE", "AEE", "EIO", "AOO"],
    &["IAI", "AII", "OAO", "EIO"],
    &["AEE", "IAI", "EIO"],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: expected `<figure>: <mood>, <mood>, ...`")]
    Layout { line: usize },
    #[error("line {line}: {message}")]
    Value { line: usize, message: String },
}

/// Valid moods per figure, keeping their listing order for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityTable {
    rows: [Vec<Mood>; 4],
}

impl ValidityTable {
    fn from_rows(rows: [&[&str]; 4]) -> Self {
        ValidityTable {
            rows: rows.map(|row| row.iter().map(|m| m.parse().expect("static mood")).collect()),
        }
    }

    /// The 24 forms valid under existential import.
    pub fn standard() -> Self {
        Self::from_rows(STANDARD_ROWS.each_ref().map(|r| r.as_slice()))
    }

    /// The 15 forms valid without existential import.
    pub fn no_import() -> Self {
        Self::from_rows(NO_IMPORT_ROWS)
    }

    pub fn for_import(existential_import: bool) -> Self {
        if existential_import {
            Self::standard()
        } else {
            Self::no_import()
        }
    }

    /// Builds a table from arbitrary `(mood, figure)` pairs, ordered by
    /// `reference` where possible and lexicographically otherwise.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Mood, Figure)>, reference: &ValidityTable) -> Self {
        let mut rows: [Vec<Mood>; 4] = Default::default();
        for (mood, figure) in pairs {
            let row = &mut rows[figure.value() as usize - 1];
            if !row.contains(&mood) {
                row.push(mood);
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            let order = &reference.rows[i];
            row.sort_by_key(|m| (order.iter().position(|r| r == m).unwrap_or(usize::MAX), *m));
        }
        ValidityTable { rows }
    }

    pub fn contains(&self, mood: Mood, figure: Figure) -> bool {
        self.rows[figure.value() as usize - 1].contains(&mood)
    }

    pub fn row(&self, figure: Figure) -> &[Mood] {
        &self.rows[figure.value() as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> BTreeSet<(Mood, Figure)> {
        Figure::ALL
            .iter()
            .flat_map(|&f| self.row(f).iter().map(move |&m| (m, f)))
            .collect()
    }

    /// One line per figure: `1: AAA, EAE, AII, EIO, AAI, EAO`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for figure in Figure::ALL {
            let moods: Vec<String> = self.row(figure).iter().map(Mood::to_string).collect();
            writeln!(out, "{figure}: {}", moods.join(", ")).unwrap();
        }
        out
    }

    /// Parses the layout produced by [`ValidityTable::render`]. Blank lines
    /// and `#` comments are ignored; figures may be omitted (empty rows).
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut rows: [Vec<Mood>; 4] = Default::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (fig, moods) = content.split_once(':').ok_or(TableError::Layout { line })?;
            let figure = fig
                .trim()
                .parse::<u8>()
                .map_err(|e| TableError::Value {
                    line,
                    message: e.to_string(),
                })
                .and_then(|v| {
                    Figure::new(v).map_err(|e| TableError::Value {
                        line,
                        message: e.to_string(),
                    })
                })?;
            for m in moods.split(',').map(str::trim).filter(|m| !m.is_empty()) {
                let mood: Mood = m.parse().map_err(|e: crate::types::MoodError| TableError::Value {
                    line,
                    message: e.to_string(),
                })?;
                let row = &mut rows[figure.value() as usize - 1];
                if !row.contains(&mood) {
                    row.push(mood);
                }
            }
        }
        Ok(ValidityTable { rows })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{0} requires existential import")]
    NeedsImport(TrivialKind),
}

/// Switches for the validity pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityConfig {
    existential_import: bool,
    enabled_trivial_rules: BTreeSet<TrivialKind>,
    trivial_before_structure: bool,
}

impl Default for ValidityConfig {
    fn default() -> Self {
        ValidityConfig {
            existential_import: true,
            enabled_trivial_rules: TrivialKind::ALL.into_iter().collect(),
            trivial_before_structure: true,
        }
    }
}

impl ValidityConfig {
    pub fn new(
        existential_import: bool,
        enabled_trivial_rules: impl IntoIterator<Item = TrivialKind>,
        trivial_before_structure: bool,
    ) -> Result<Self, ConfigError> {
        let enabled_trivial_rules: BTreeSet<_> = enabled_trivial_rules.into_iter().collect();
        if !existential_import {
            if let Some(k) = enabled_trivial_rules.iter().find(|k| k.requires_import()) {
                return Err(ConfigError::NeedsImport(*k));
            }
        }
        Ok(ValidityConfig {
            existential_import,
            enabled_trivial_rules,
            trivial_before_structure,
        })
    }

    /// Default rules without existential import (subalternation dropped).
    pub fn without_import() -> Self {
        ValidityConfig {
            existential_import: false,
            enabled_trivial_rules: TrivialKind::ALL.into_iter().filter(|k| !k.requires_import()).collect(),
            trivial_before_structure: true,
        }
    }

    /// No trivial rules: pure mood/figure classification.
    pub fn structural_only(existential_import: bool) -> Self {
        ValidityConfig {
            existential_import,
            enabled_trivial_rules: BTreeSet::new(),
            trivial_before_structure: true,
        }
    }

    pub fn existential_import(&self) -> bool {
        self.existential_import
    }

    pub fn enabled_trivial_rules(&self) -> &BTreeSet<TrivialKind> {
        &self.enabled_trivial_rules
    }

    pub fn trivial_before_structure(&self) -> bool {
        self.trivial_before_structure
    }

    pub fn is_enabled(&self, kind: TrivialKind) -> bool {
        self.enabled_trivial_rules.contains(&kind)
    }
}

/// Membership test in the table that matches `cfg`'s import setting.
pub fn lookup_valid(mood: Mood, figure: Figure, cfg: &ValidityConfig) -> bool {
    let table = if cfg.existential_import { &*STANDARD } else { &*NO_IMPORT };
    table.contains(mood, figure)
}

static STANDARD: std::sync::LazyLock<ValidityTable> = std::sync::LazyLock::new(ValidityTable::standard);
static NO_IMPORT: std::sync::LazyLock<ValidityTable> = std::sync::LazyLock::new(ValidityTable::no_import);

/// A trivial-validity hit and the premise indices it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialHit {
    pub kind: TrivialKind,
    pub premises: Vec<usize>,
}

fn single_premise_rule(kind: TrivialKind, premise: &Proposition, conclusion: &Proposition) -> bool {
    use PropositionForm::*;
    let same_terms = premise.subject == conclusion.subject && premise.predicate == conclusion.predicate;
    let converse = premise.subject == conclusion.predicate && premise.predicate == conclusion.subject;
    match kind {
        TrivialKind::PetitioPrincipii => premise == conclusion,
        TrivialKind::ConversionE => premise.form == E && conclusion.form == E && converse,
        TrivialKind::ConversionI => premise.form == I && conclusion.form == I && converse,
        TrivialKind::SubalternationAI => premise.form == A && conclusion.form == I && same_terms,
        TrivialKind::SubalternationEO => premise.form == E && conclusion.form == O && same_terms,
        TrivialKind::Explosion => false,
    }
}

/// True when `a` and `b` cannot both hold: A/O over the same terms, or E/I
/// over the same terms in either order (E and I are symmetric).
pub fn contradictory(a: &Proposition, b: &Proposition) -> bool {
    use PropositionForm::*;
    let same = a.subject == b.subject && a.predicate == b.predicate;
    let swapped = a.subject == b.predicate && a.predicate == b.subject;
    match (a.form, b.form) {
        (A, O) | (O, A) => same,
        (E, I) | (I, E) => same || swapped,
        _ => false,
    }
}

/// Finds the first enabled trivial rule that applies, with its witnesses.
///
/// Rules are checked in a fixed order: petitio principii, E conversion,
/// I conversion, A/I subalternation, E/O subalternation, explosion. Within a
/// rule the lowest premise index (or index pair) wins.
pub fn detect_trivial_hit(premises: &[Proposition], conclusion: &Proposition, cfg: &ValidityConfig) -> Option<TrivialHit> {
    for kind in TrivialKind::ALL {
        if !cfg.is_enabled(kind) || (kind.requires_import() && !cfg.existential_import) {
            continue;
        }
        if kind == TrivialKind::Explosion {
            for i in 0..premises.len() {
                for j in i + 1..premises.len() {
                    if contradictory(&premises[i], &premises[j]) {
                        return Some(TrivialHit {
                            kind,
                            premises: vec![i, j],
                        });
                    }
                }
            }
        } else if let Some(i) = premises.iter().position(|p| single_premise_rule(kind, p, conclusion)) {
            return Some(TrivialHit { kind, premises: vec![i] });
        }
    }
    None
}

pub fn detect_trivial(s: &Syllogism, cfg: &ValidityConfig) -> Option<TrivialKind> {
    detect_trivial_hit(s.premises(), s.conclusion(), cfg).map(|h| h.kind)
}

/// Structural verdict only: analysis plus table lookup.
pub fn judge_structure(s: &Syllogism, cfg: &ValidityConfig) -> Result<ValidityVerdict, StructureFailure> {
    let structured = analyze(s)?;
    let (mood, figure) = (structured.mood(), structured.figure());
    Ok(ValidityVerdict::mood_figure(mood, figure, lookup_valid(mood, figure, cfg)))
}

/// Full validity pipeline for a parsed two-premise argument.
///
/// With `trivial_before_structure` the trivial rules are consulted first;
/// otherwise they are only consulted when structural analysis fails.
/// Every failure is encoded as a malformed (invalid) verdict.
pub fn judge(s: &Syllogism, cfg: &ValidityConfig) -> ValidityVerdict {
    if cfg.trivial_before_structure {
        if let Some(kind) = detect_trivial(s, cfg) {
            return ValidityVerdict::trivial(kind);
        }
    }
    match judge_structure(s, cfg) {
        Ok(v) => v,
        Err(failure) => {
            if !cfg.trivial_before_structure {
                if let Some(kind) = detect_trivial(s, cfg) {
                    return ValidityVerdict::trivial(kind);
                }
            }
            ValidityVerdict::malformed(failure)
        }
    }
}

/// [`judge`] on a canonical argument string.
pub fn judge_text(text: &str, cfg: &ValidityConfig) -> ValidityVerdict {
    match parse_canonical(text) {
        Ok(s) => judge(&s, cfg),
        Err(e) => ValidityVerdict::malformed(e),
    }
}

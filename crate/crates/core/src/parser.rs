//! Canonical sentence parsing: `all X are Y`, `no X are Y`, `some X are Y`,
//! `some X are not Y`, and full `P1. P2. Conclusion.` strings.

use std::fmt;

use thiserror::Error;

use crate::types::{Proposition, PropositionForm, Syllogism, Term};

const CONNECTORS: [&str; 4] = ["therefore", "thus", "hence", "so"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseFailureKind {
    NotAeio,
    WrongSentenceCount { found: usize },
    EmptyTerm,
}

/// A parse failure together with the exact input fragment that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseFailure {
    pub kind: ParseFailureKind,
    pub offending_text: String,
}

impl ParseFailure {
    fn new(kind: ParseFailureKind, offending_text: &str) -> Self {
        ParseFailure {
            kind,
            offending_text: offending_text.to_string(),
        }
    }
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ParseFailureKind::NotAeio => {
                write!(f, "NotAEIO: {:?} matches none of the four forms", self.offending_text)
            }
            ParseFailureKind::WrongSentenceCount { found } => write!(
                f,
                "WrongSentenceCount({found}): need at least one premise and a conclusion in {:?}",
                self.offending_text
            ),
            ParseFailureKind::EmptyTerm => {
                write!(f, "EmptyTerm: {:?} has an empty subject or predicate", self.offending_text)
            }
        }
    }
}

/// Surface clean-up applied to a sentence before pattern matching.
///
/// Lowercases, trims and collapses whitespace, rewrites the standalone token
/// `is` to `are`, drops one leading connector (`therefore`, `thus`, `hence`,
/// `so`, optionally followed by a comma) and a trailing period.
pub fn normalize_surface(text: &str) -> String {
    let lowered = text.to_lowercase();
    let mut sentence = lowered
        .split_whitespace()
        .map(|tok| if tok == "is" { "are" } else { tok })
        .collect::<Vec<_>>()
        .join(" ");

    for connector in CONNECTORS {
        if let Some(rest) = sentence.strip_prefix(connector) {
            let stripped = if let Some(after_comma) = rest.strip_prefix(',') {
                Some(after_comma)
            } else if rest.starts_with(' ') {
                Some(rest)
            } else {
                None
            };
            if let Some(rest) = stripped {
                sentence = rest.trim_start().to_string();
                break;
            }
        }
    }

    while let Some(rest) = sentence.strip_suffix('.') {
        sentence = rest.trim_end().to_string();
    }
    sentence
}

/// Splits `rest` (which starts right after the quantifier) at the last
/// occurrence of `separator`, returning trimmed subject and predicate text.
fn split_last<'a>(rest: &'a str, separator: &str) -> Option<(&'a str, &'a str)> {
    let needle = separator.trim();
    let tokens: Vec<&str> = rest.split(' ').collect();
    let sep_tokens: Vec<&str> = needle.split(' ').collect();
    let n = sep_tokens.len();
    if tokens.len() < n {
        return None;
    }
    let pos = (0..=tokens.len() - n).rev().find(|&i| tokens[i..i + n] == sep_tokens[..])?;
    let byte_start: usize = tokens[..pos].iter().map(|t| t.len() + 1).sum();
    let byte_end: usize = byte_start + needle.len();
    let subject = rest[..byte_start.min(rest.len())].trim();
    let predicate = rest[byte_end.min(rest.len())..].trim();
    Some((subject, predicate))
}

/// Matches an already-normalized sentence against the four forms.
///
/// Patterns are tried in the order A, E, O, I so that `some X are not Y` is
/// never read as an I sentence with predicate `not Y`. The subject/predicate
/// split happens at the last separator occurrence.
pub fn match_aeio(sentence: &str) -> Result<Proposition, ParseFailure> {
    let patterns: [(&str, &str, PropositionForm); 4] = [
        ("all", "are", PropositionForm::A),
        ("no", "are", PropositionForm::E),
        ("some", "are not", PropositionForm::O),
        ("some", "are", PropositionForm::I),
    ];
    for (quantifier, separator, form) in patterns {
        let Some(rest) = sentence.strip_prefix(quantifier) else {
            continue;
        };
        if !(rest.is_empty() || rest.starts_with(' ')) {
            continue;
        }
        let Some((subject, predicate)) = split_last(rest.trim_start(), separator) else {
            continue;
        };
        let subject = Term::new(subject).map_err(|_| ParseFailure::new(ParseFailureKind::EmptyTerm, sentence))?;
        let predicate = Term::new(predicate).map_err(|_| ParseFailure::new(ParseFailureKind::EmptyTerm, sentence))?;
        return Ok(Proposition::new(form, subject, predicate));
    }
    Err(ParseFailure::new(ParseFailureKind::NotAeio, sentence))
}

/// Normalizes then matches one raw sentence.
pub fn parse_sentence(text: &str) -> Result<Proposition, ParseFailure> {
    match_aeio(&normalize_surface(text)).map_err(|mut e| {
        e.offending_text = text.to_string();
        e
    })
}

/// Parses `P1. P2. ... Conclusion.` into a syllogism. The last non-empty
/// segment is the conclusion.
pub fn parse_canonical(text: &str) -> Result<Syllogism, ParseFailure> {
    let segments: Vec<&str> = text.split('.').map(str::trim).filter(|s| !s.is_empty()).collect();
    if segments.len() < 2 {
        return Err(ParseFailure::new(
            ParseFailureKind::WrongSentenceCount { found: segments.len() },
            text,
        ));
    }
    let mut props = segments
        .iter()
        .map(|seg| parse_sentence(seg))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = props.pop().expect("at least two segments");
    Ok(Syllogism::new(props, conclusion).expect("at least one premise"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("term {0:?} contains the sentence delimiter '.'")]
    Delimiter(String),
    #[error("term {0:?} would not parse back unchanged")]
    Ambiguous(String),
}

/// Renders one proposition in its canonical pattern, without a period.
pub fn render_proposition(p: &Proposition) -> String {
    let (s, o) = (p.subject.as_str(), p.predicate.as_str());
    match p.form {
        PropositionForm::A => format!("all {s} are {o}"),
        PropositionForm::E => format!("no {s} are {o}"),
        PropositionForm::I => format!("some {s} are {o}"),
        PropositionForm::O => format!("some {s} are not {o}"),
    }
}

fn check_emittable(p: &Proposition) -> Result<(), EmitError> {
    for term in [&p.subject, &p.predicate] {
        let text = term.as_str();
        if text.contains('.') {
            return Err(EmitError::Delimiter(text.to_string()));
        }
        if text.split(' ').any(|tok| tok == "are" || tok == "is") {
            return Err(EmitError::Ambiguous(text.to_string()));
        }
    }
    if p.form == PropositionForm::I && p.predicate.as_str().split(' ').next() == Some("not") {
        return Err(EmitError::Ambiguous(p.predicate.to_string()));
    }
    Ok(())
}

/// Inverse of [`parse_canonical`]: sentences joined by `". "` with a
/// trailing period.
///
/// Besides the `.` delimiter, terms containing the copula tokens `are`/`is`
/// and I predicates starting with `not` are rejected, since they would read
/// back as different propositions.
pub fn emit_canonical(s: &Syllogism) -> Result<String, EmitError> {
    let all = s.premises().iter().chain(std::iter::once(s.conclusion()));
    let mut out = Vec::with_capacity(s.premises().len() + 1);
    for p in all {
        check_emittable(p)?;
        out.push(render_proposition(p));
    }
    Ok(format!("{}.", out.join(". ")))
}

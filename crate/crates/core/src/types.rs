//! Shared domain vocabulary: propositions, syllogisms, moods, figures and
//! verdicts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::parser::ParseFailure;
use crate::structure::StructureFailure;

/// One of the four categorical sentence forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropositionForm {
    /// All S are P.
    A,
    /// No S are P.
    E,
    /// Some S are P.
    I,
    /// Some S are not P.
    O,
}

impl PropositionForm {
    pub const ALL: [PropositionForm; 4] = [Self::A, Self::E, Self::I, Self::O];

    pub fn is_universal(self) -> bool {
        matches!(self, Self::A | Self::E)
    }

    pub fn is_particular(self) -> bool {
        !self.is_universal()
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Self::E | Self::O)
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::E => 'E',
            Self::I => 'I',
            Self::O => 'O',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Self::A),
            'E' => Some(Self::E),
            'I' => Some(Self::I),
            'O' => Some(Self::O),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PropositionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term is empty after normalization")]
    Empty,
}

/// A category term, stored in normalized form.
///
/// Normalization lowercases, trims and collapses internal whitespace. Two
/// terms are equal iff their normalized strings are byte-equal; there is no
/// stemming, so `piante` and `pianta` are different terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(String);

impl Term {
    pub fn new(text: &str) -> Result<Self, TermError> {
        let normalized = text.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ");
        if normalized.is_empty() {
            return Err(TermError::Empty);
        }
        Ok(Term(normalized))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Term::new(&raw).map_err(serde::de::Error::custom)
    }
}

/// A categorical statement `(form, subject, predicate)`.
///
/// Identity statements such as "all x are x" are representable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Proposition {
    pub form: PropositionForm,
    pub subject: Term,
    pub predicate: Term,
}

impl Proposition {
    pub fn new(form: PropositionForm, subject: Term, predicate: Term) -> Self {
        Proposition {
            form,
            subject,
            predicate,
        }
    }

    /// Convenience constructor for literals; panics on empty terms.
    pub fn of(form: PropositionForm, subject: &str, predicate: &str) -> Self {
        Proposition::new(
            form,
            Term::new(subject).expect("non-empty subject"),
            Term::new(predicate).expect("non-empty predicate"),
        )
    }

    pub fn mentions(&self, term: &Term) -> bool {
        &self.subject == term || &self.predicate == term
    }

    /// Applies `f` to both terms.
    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Proposition {
        Proposition::new(self.form, f(&self.subject), f(&self.predicate))
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.form, self.subject, self.predicate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyllogismError {
    #[error("a syllogism needs at least one premise")]
    NoPremises,
}

/// Ordered premises followed by one conclusion. Premise indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllogism {
    premises: Vec<Proposition>,
    conclusion: Proposition,
}

impl Syllogism {
    pub fn new(premises: Vec<Proposition>, conclusion: Proposition) -> Result<Self, SyllogismError> {
        if premises.is_empty() {
            return Err(SyllogismError::NoPremises);
        }
        Ok(Syllogism { premises, conclusion })
    }

    pub fn premises(&self) -> &[Proposition] {
        &self.premises
    }

    pub fn conclusion(&self) -> &Proposition {
        &self.conclusion
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Syllogism {
        Syllogism {
            premises: self.premises.iter().map(|p| p.map_terms(&mut f)).collect(),
            conclusion: self.conclusion.map_terms(&mut f),
        }
    }

    /// Distinct terms in order of first appearance (premises, then conclusion).
    pub fn terms(&self) -> Vec<Term> {
        let mut seen = Vec::new();
        for p in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            for t in [&p.subject, &p.predicate] {
                if !seen.contains(t) {
                    seen.push(t.clone());
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoodError {
    #[error("mood must be exactly three letters from A/E/I/O, got {0:?}")]
    Invalid(String),
}

/// The forms of the major premise, minor premise and conclusion, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mood {
    pub major: PropositionForm,
    pub minor: PropositionForm,
    pub conclusion: PropositionForm,
}

impl Mood {
    pub fn new(major: PropositionForm, minor: PropositionForm, conclusion: PropositionForm) -> Self {
        Mood {
            major,
            minor,
            conclusion,
        }
    }

    /// All 64 moods, in AAA, AAE, ... OOO order.
    pub fn all() -> impl Iterator<Item = Mood> {
        PropositionForm::ALL.into_iter().flat_map(|a| {
            PropositionForm::ALL
                .into_iter()
                .flat_map(move |b| PropositionForm::ALL.into_iter().map(move |c| Mood::new(a, b, c)))
        })
    }

    /// Dense index in `0..64`.
    pub fn index(self) -> usize {
        self.major.index() * 16 + self.minor.index() * 4 + self.conclusion.index()
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.major, self.minor, self.conclusion)
    }
}

impl FromStr for Mood {
    type Err = MoodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<PropositionForm> = s
            .trim()
            .chars()
            .map(PropositionForm::from_letter)
            .collect::<Option<_>>()
            .ok_or_else(|| MoodError::Invalid(s.to_string()))?;
        match letters.as_slice() {
            [a, b, c] => Ok(Mood::new(*a, *b, *c)),
            _ => Err(MoodError::Invalid(s.to_string())),
        }
    }
}

impl Serialize for Mood {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FigureError {
    #[error("figure must be 1, 2, 3 or 4, got {0}")]
    OutOfRange(u8),
}

/// The middle term's configuration across the two premises, 1 to 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Figure(u8);

impl Figure {
    pub const ALL: [Figure; 4] = [Figure(1), Figure(2), Figure(3), Figure(4)];

    pub fn new(value: u8) -> Result<Self, FigureError> {
        if (1..=4).contains(&value) {
            Ok(Figure(value))
        } else {
            Err(FigureError::OutOfRange(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Figure from whether the middle term is the subject of the major
    /// premise and of the minor premise.
    pub fn from_middle_positions(middle_subject_of_major: bool, middle_subject_of_minor: bool) -> Self {
        match (middle_subject_of_major, middle_subject_of_minor) {
            (true, false) => Figure(1),
            (false, false) => Figure(2),
            (true, true) => Figure(3),
            (false, true) => Figure(4),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuredError {
    #[error("structured syllogisms need exactly two premises, got {0}")]
    PremiseCount(usize),
    #[error("minor, major and middle terms must be pairwise distinct")]
    DuplicateRoles,
    #[error("major and minor premise indices must be 0 and 1 in some order")]
    BadIndices,
    #[error("premise roles do not match the term roles")]
    RoleMismatch,
}

/// A two-premise syllogism with its term roles, mood and figure resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSyllogism {
    source: Syllogism,
    minor_term: Term,
    major_term: Term,
    middle_term: Term,
    major_index: usize,
    minor_index: usize,
    mood: Mood,
    figure: Figure,
}

impl StructuredSyllogism {
    /// Checks role invariants and derives mood and figure from them.
    pub fn new(
        source: Syllogism,
        minor_term: Term,
        major_term: Term,
        middle_term: Term,
        major_index: usize,
        minor_index: usize,
    ) -> Result<Self, StructuredError> {
        let premises = source.premises();
        if premises.len() != 2 {
            return Err(StructuredError::PremiseCount(premises.len()));
        }
        if minor_term == major_term || minor_term == middle_term || major_term == middle_term {
            return Err(StructuredError::DuplicateRoles);
        }
        if major_index > 1 || minor_index > 1 || major_index == minor_index {
            return Err(StructuredError::BadIndices);
        }
        let major = &premises[major_index];
        let minor = &premises[minor_index];
        let conclusion = source.conclusion();
        if !major.mentions(&major_term)
            || !minor.mentions(&minor_term)
            || !major.mentions(&middle_term)
            || !minor.mentions(&middle_term)
            || conclusion.mentions(&middle_term)
        {
            return Err(StructuredError::RoleMismatch);
        }
        let figure = Figure::from_middle_positions(major.subject == middle_term, minor.subject == middle_term);
        let mood = Mood::new(major.form, minor.form, conclusion.form);
        Ok(StructuredSyllogism {
            source,
            minor_term,
            major_term,
            middle_term,
            major_index,
            minor_index,
            mood,
            figure,
        })
    }

    pub fn source(&self) -> &Syllogism {
        &self.source
    }
    /// S: the conclusion's subject.
    pub fn minor_term(&self) -> &Term {
        &self.minor_term
    }
    /// P: the conclusion's predicate.
    pub fn major_term(&self) -> &Term {
        &self.major_term
    }
    /// M: shared by both premises, absent from the conclusion.
    pub fn middle_term(&self) -> &Term {
        &self.middle_term
    }
    pub fn major_index(&self) -> usize {
        self.major_index
    }
    pub fn minor_index(&self) -> usize {
        self.minor_index
    }
    pub fn mood(&self) -> Mood {
        self.mood
    }
    pub fn figure(&self) -> Figure {
        self.figure
    }
}

/// Validity that does not come from the mood/figure interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialKind {
    /// A premise restates the conclusion.
    PetitioPrincipii,
    ConversionE,
    ConversionI,
    /// A entails I over the same terms (needs existential import).
    SubalternationAI,
    /// E entails O over the same terms (needs existential import).
    SubalternationEO,
    /// Contradictory premises entail anything.
    Explosion,
}

impl TrivialKind {
    pub const ALL: [TrivialKind; 6] = [
        Self::PetitioPrincipii,
        Self::ConversionE,
        Self::ConversionI,
        Self::SubalternationAI,
        Self::SubalternationEO,
        Self::Explosion,
    ];

    pub fn requires_import(self) -> bool {
        matches!(self, Self::SubalternationAI | Self::SubalternationEO)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PetitioPrincipii => "petitio-principii",
            Self::ConversionE => "conversion-e",
            Self::ConversionI => "conversion-i",
            Self::SubalternationAI => "subalternation-ai",
            Self::SubalternationEO => "subalternation-eo",
            Self::Explosion => "explosion",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::PetitioPrincipii => "petitio principii",
            Self::ConversionE => "E conversion",
            Self::ConversionI => "I conversion",
            Self::SubalternationAI => "A-to-I subalternation",
            Self::SubalternationEO => "E-to-O subalternation",
            Self::Explosion => "explosion",
        }
    }
}

impl fmt::Display for TrivialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrivialKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        TrivialKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| format!("unknown trivial rule {s:?}"))
    }
}

/// Why an input could not be analyzed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedReason {
    #[error("parse failure: {0}")]
    Parse(#[from] ParseFailure),
    #[error("structure failure: {0}")]
    Structure(#[from] StructureFailure),
}

/// What a verdict rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    MoodFigure { mood: Mood, figure: Figure },
    Trivial(TrivialKind),
    Malformed(MalformedReason),
}

impl Basis {
    pub fn kind(&self) -> &'static str {
        match self {
            Basis::MoodFigure { .. } => "mood-figure",
            Basis::Trivial(_) => "trivial",
            Basis::Malformed(_) => "malformed",
        }
    }
}

/// Valid/invalid plus its basis. Malformed input is always invalid and
/// trivial validity is always valid; the constructors enforce this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityVerdict {
    valid: bool,
    basis: Basis,
}

impl ValidityVerdict {
    pub fn mood_figure(mood: Mood, figure: Figure, valid: bool) -> Self {
        ValidityVerdict {
            valid,
            basis: Basis::MoodFigure { mood, figure },
        }
    }

    pub fn trivial(kind: TrivialKind) -> Self {
        ValidityVerdict {
            valid: true,
            basis: Basis::Trivial(kind),
        }
    }

    pub fn malformed(reason: impl Into<MalformedReason>) -> Self {
        ValidityVerdict {
            valid: false,
            basis: Basis::Malformed(reason.into()),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Short human label, e.g. `valid (AAA-1)` or
    /// `valid (trivial: petitio principii)`.
    pub fn summary(&self) -> String {
        let head = if self.valid { "valid" } else { "invalid" };
        match &self.basis {
            Basis::MoodFigure { mood, figure } => format!("{head} ({mood}-{figure})"),
            Basis::Trivial(kind) => format!("{head} (trivial: {})", kind.description()),
            Basis::Malformed(reason) => format!("{head} (malformed: {reason})"),
        }
    }
}

// Flat JSON shape shared by the CLI and evaluation reports.
impl Serialize for ValidityVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("valid", &self.valid)?;
        map.serialize_entry("basis", self.basis.kind())?;
        match &self.basis {
            Basis::MoodFigure { mood, figure } => {
                map.serialize_entry("mood", mood)?;
                map.serialize_entry("figure", &figure.value())?;
            }
            Basis::Trivial(kind) => map.serialize_entry("trivial", kind.name())?,
            Basis::Malformed(reason) => map.serialize_entry("reason", &reason.to_string())?,
        }
        map.serialize_entry("summary", &self.summary())?;
        map.end()
    }
}

impl fmt::Display for ValidityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// 0-based indices of the premises needed for the conclusion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelevanceSet(BTreeSet<usize>);

impl RelevanceSet {
    pub fn empty() -> Self {
        RelevanceSet(BTreeSet::new())
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for RelevanceSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RelevanceSet(iter.into_iter().collect())
    }
}

impl fmt::Display for RelevanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

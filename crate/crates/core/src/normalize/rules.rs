//! Rule-based English paraphrase normalizer.
//!
//! Sentences are cleaned (case, punctuation, discourse connectors, truth
//! wrappers such as "it is true that"), matched against an ordered table of
//! paraphrase patterns, rewritten into canonical form and finally parsed with
//! [`match_aeio`]. There is deliberately no singular/plural unification.

use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use crate::parser::{match_aeio, normalize_surface, render_proposition};
use crate::types::{Proposition, PropositionForm, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotNormalizable {
    #[error("unsupported quantifier {quantifier:?} in {sentence:?}")]
    UnsupportedQuantifier { sentence: String, quantifier: String },
    #[error("no paraphrase rule matches {sentence:?}")]
    NoRule { sentence: String },
    #[error("rule {rule} produced an empty term in {sentence:?}")]
    EmptyTerm { sentence: String, rule: &'static str },
}

/// One surface template mapped to a categorical form. Rules are applied in
/// ascending `priority`; the first match wins.
#[derive(Debug, Clone)]
pub struct ParaphraseRule {
    pub name: &'static str,
    pub priority: u16,
    pub pattern: Regex,
    pub target_form: PropositionForm,
    pub note: &'static str,
}

impl ParaphraseRule {
    pub fn new(name: &'static str, priority: u16, pattern: &str, target_form: PropositionForm, note: &'static str) -> Self {
        ParaphraseRule {
            name,
            priority,
            pattern: Regex::new(pattern).expect("valid paraphrase pattern"),
            target_form,
            note,
        }
    }
}

/// An ordered paraphrase table.
#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<ParaphraseRule>,
}

/// A successful normalization and the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub proposition: Proposition,
    pub rule: &'static str,
}

const CONNECTORS: &[&str] = &[
    "therefore",
    "thus",
    "hence",
    "so",
    "consequently",
    "it follows that",
    "this has led to the conclusion that",
    "this leads to the conclusion that",
    "we can conclude that",
];

const WRAPPERS: &[&str] = &[
    "it is true that",
    "it is also true that",
    "it is a fact that",
    "it is the case that",
    "it is certain that",
    "it is known that",
    "in fact",
];

// Quantifiers outside the supported families. Partitives like "a number of"
// are left unnormalized on purpose.
const UNSUPPORTED: &[&str] = &[
    "a number of",
    "most",
    "many",
    "few",
    "a lot of",
    "lots of",
    "almost all",
    "nearly all",
];

const TERM_PREFIXES: &[&str] = &[
    "a ",
    "an ",
    "the ",
    "single ",
    "also ",
    "type of ",
    "kind of ",
    "types of ",
    "kinds of ",
];

impl RuleSet {
    /// Builds a rule set; order comes from `priority`, not insertion order.
    pub fn new(mut rules: Vec<ParaphraseRule>) -> Self {
        rules.sort_by_key(|r| (r.priority, r.name));
        RuleSet { rules }
    }

    pub fn rules(&self) -> &[ParaphraseRule] {
        &self.rules
    }

    /// The built-in English paraphrase table.
    pub fn english() -> &'static RuleSet {
        static ENGLISH: LazyLock<RuleSet> = LazyLock::new(|| RuleSet::new(english_rules()));
        &ENGLISH
    }

    pub fn normalize(&self, raw_sentence: &str) -> Result<Normalized, NotNormalizable> {
        let sentence = clean(raw_sentence);
        for q in UNSUPPORTED {
            if sentence == *q || sentence.starts_with(&format!("{q} ")) {
                return Err(NotNormalizable::UnsupportedQuantifier {
                    sentence: raw_sentence.to_string(),
                    quantifier: q.to_string(),
                });
            }
        }
        for rule in &self.rules {
            let Some(caps) = rule.pattern.captures(&sentence) else {
                continue;
            };
            let subject = clean_term(&caps["x"]);
            let predicate = clean_term(&caps["y"]);
            let (Ok(subject), Ok(predicate)) = (Term::new(&subject), Term::new(&predicate)) else {
                return Err(NotNormalizable::EmptyTerm {
                    sentence: raw_sentence.to_string(),
                    rule: rule.name,
                });
            };
            let rewritten = render_proposition(&Proposition::new(rule.target_form, subject, predicate));
            return match match_aeio(&normalize_surface(&rewritten)) {
                Ok(proposition) => Ok(Normalized {
                    proposition,
                    rule: rule.name,
                }),
                Err(_) => Err(NotNormalizable::EmptyTerm {
                    sentence: raw_sentence.to_string(),
                    rule: rule.name,
                }),
            };
        }
        Err(NotNormalizable::NoRule {
            sentence: raw_sentence.to_string(),
        })
    }
}

/// Normalizes one English sentence with the built-in table.
pub fn normalize_en(raw_sentence: &str) -> Result<Proposition, NotNormalizable> {
    RuleSet::english().normalize(raw_sentence).map(|n| n.proposition)
}

fn strip_leading_phrase<'a>(text: &'a str, phrase: &str) -> Option<&'a str> {
    let rest = text.strip_prefix(phrase)?;
    if let Some(r) = rest.strip_prefix(',') {
        Some(r.trim_start())
    } else if rest.starts_with(' ') {
        Some(rest.trim_start())
    } else {
        None
    }
}

fn clean(raw: &str) -> String {
    let lowered = raw.to_lowercase().replace(['“', '”', '"'], "");
    let mut s = lowered.split_whitespace().collect::<Vec<_>>().join(" ");
    while let Some(rest) = s.strip_suffix(['.', '!', '?', ';', ',']) {
        s = rest.trim_end().to_string();
    }
    loop {
        let stripped = CONNECTORS.iter().chain(WRAPPERS).find_map(|p| strip_leading_phrase(&s, p));
        match stripped {
            Some(rest) => s = rest.to_string(),
            None => break,
        }
    }
    // inline hedges: "a few ants are, in fact, insects"
    for filler in [", in fact,", " in fact", " actually"] {
        s = s.replace(filler, "");
    }
    s = s.replace(',', "");
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn clean_term(raw: &str) -> String {
    let mut t = raw.trim().to_string();
    while let Some(rest) = TERM_PREFIXES.iter().find_map(|p| t.strip_prefix(p)) {
        t = rest.trim_start().to_string();
    }
    t
}

fn english_rules() -> Vec<ParaphraseRule> {
    use PropositionForm::*;
    const REL: &str = "(?:that|which|who)";
    const COP: &str = "(?:are|is)";
    vec![
        // double negatives first, so they are never read as E
        ParaphraseRule::new(
            "no-x-are-not-y",
            10,
            &format!("^no (?P<x>.+) {COP} not (?P<y>.+)$"),
            A,
            "double negative",
        ),
        ParaphraseRule::new(
            "there-are-no-x-that-are-not-y",
            11,
            &format!("^there (?:are|is|exist|exists) no (?P<x>.+) {REL} {COP} not (?P<y>.+)$"),
            A,
            "double negative",
        ),
        // particular negatives before particular affirmatives
        ParaphraseRule::new(
            "not-all-x-are-y",
            20,
            &format!("^not (?:all|every) (?P<x>.+) {COP} (?P<y>.+)$"),
            O,
            "negated universal",
        ),
        ParaphraseRule::new(
            "at-least-one-x-is-not-y",
            21,
            &format!("^at least one (?P<x>.+) {COP} not (?P<y>.+)$"),
            O,
            "",
        ),
        ParaphraseRule::new(
            "some-x-are-not-y",
            22,
            &format!("^(?:some|a few|certain|a portion of) (?P<x>.+) {COP} not (?P<y>.+)$"),
            O,
            "",
        ),
        ParaphraseRule::new(
            "there-exist-x-that-are-not-y",
            23,
            &format!("^there (?:exist|exists|are some|are a few|are|is) (?P<x>.+) {REL} {COP} not (?P<y>.+)$"),
            O,
            "",
        ),
        // universal negatives
        ParaphraseRule::new(
            "not-a-single-x-is-y",
            30,
            &format!("^not (?:a single|one|a|any) (?P<x>.+) {COP} (?P<y>.+)$"),
            E,
            "",
        ),
        ParaphraseRule::new(
            "there-are-no-x-that-are-y",
            31,
            &format!("^there (?:are|is|exist|exists) no (?P<x>.+) {REL} {COP} (?P<y>.+)$"),
            E,
            "",
        ),
        ParaphraseRule::new(
            "no-x-are-y",
            32,
            &format!("^(?:no|none of the) (?P<x>.+) {COP} (?P<y>.+)$"),
            E,
            "",
        ),
        ParaphraseRule::new(
            "x-cannot-be-y",
            33,
            "^(?P<x>.+) (?:cannot|can not|can't) be (?P<y>.+)$",
            E,
            "modal negative",
        ),
        ParaphraseRule::new("x-is-never-y", 34, &format!("^(?P<x>.+) {COP} never (?P<y>.+)$"), E, ""),
        // particular affirmatives
        ParaphraseRule::new(
            "something-that-is-x-is-y",
            40,
            &format!("^something {REL} {COP} (?P<x>.+) {COP} (?P<y>.+)$"),
            I,
            "",
        ),
        ParaphraseRule::new(
            "there-exist-x-that-are-y",
            41,
            &format!("^there (?:exist|exists|are some|are a few|is at least one|are) (?P<x>.+) {REL} {COP} (?P<y>.+)$"),
            I,
            "",
        ),
        ParaphraseRule::new("a-few-x-are-y", 42, &format!("^a few (?P<x>.+) {COP} (?P<y>.+)$"), I, ""),
        ParaphraseRule::new(
            "a-portion-of-x-are-y",
            43,
            &format!("^a portion of (?P<x>.+) {COP} (?P<y>.+)$"),
            I,
            "",
        ),
        ParaphraseRule::new(
            "at-least-one-x-is-y",
            44,
            &format!("^at least one (?P<x>.+) {COP} (?P<y>.+)$"),
            I,
            "",
        ),
        ParaphraseRule::new(
            "some-x-are-y",
            45,
            &format!("^(?:some|certain) (?P<x>.+) {COP} (?P<y>.+)$"),
            I,
            "",
        ),
        // universal affirmatives
        ParaphraseRule::new(
            "anything-that-is-x-is-y",
            50,
            &format!("^(?:anything|everything|whatever|each thing) {REL} {COP} (?P<x>.+) {COP} (?P<y>.+)$"),
            A,
            "",
        ),
        ParaphraseRule::new(
            "x-is-subset-of-y",
            52,
            &format!("^(?P<x>.+) {COP} (?:a )?(?:subset|part) of (?P<y>.+)$"),
            A,
            "set inclusion",
        ),
        ParaphraseRule::new(
            "entire-set-of-x-is-contained-in-y",
            51,
            &format!("^the entire set of (?P<x>.+) {COP} contained (?:within|in) the set of (?P<y>.+)$"),
            A,
            "set inclusion",
        ),
        ParaphraseRule::new(
            "every-x-is-y",
            53,
            &format!("^(?:every|each|any) (?P<x>.+) {COP} (?P<y>.+)$"),
            A,
            "",
        ),
        ParaphraseRule::new("all-x-are-y", 54, &format!("^all (?P<x>.+) {COP} (?P<y>.+)$"), A, ""),
        // bare plural negation: "circles are not triangles"
        ParaphraseRule::new(
            "x-are-not-y",
            60,
            &format!("^(?P<x>.+) {COP} not (?P<y>.+)$"),
            E,
            "bare plural",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use PropositionForm::*;

    fn norm(s: &str) -> Proposition {
        normalize_en(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn documented_examples() {
        assert_eq!(norm("Every single puppy is a kitten"), Proposition::of(A, "puppy", "kitten"));
        assert_eq!(
            norm("There are no carrots that are not edible"),
            Proposition::of(A, "carrots", "edible")
        );
        assert_eq!(norm("Not all X are Y"), Proposition::of(O, "x", "y"));
        assert!(matches!(
            normalize_en("A number of vehicles are bikes"),
            Err(NotNormalizable::UnsupportedQuantifier { .. })
        ));
    }

    #[test]
    fn wrappers_and_connectors() {
        assert_eq!(
            norm("It is also true that every bike is a type of vehicle."),
            Proposition::of(A, "bike", "vehicle")
        );
        assert_eq!(
            norm("This has led to the conclusion that a portion of vehicles are bikes."),
            Proposition::of(I, "vehicles", "bikes")
        );
        assert_eq!(norm("Therefore, some s are p."), Proposition::of(I, "s", "p"));
        assert_eq!(
            norm("A few ants are, in fact, insects."),
            Proposition::of(I, "ants", "insects")
        );
        assert_eq!(norm("Some hounds are actually birds."), Proposition::of(I, "hounds", "birds"));
    }

    #[test]
    fn mixed_paraphrase_sentences() {
        assert_eq!(
            norm("There are no circles that are also three-sided figures."),
            Proposition::of(E, "circles", "three-sided figures")
        );
        assert_eq!(
            norm("All figures that are triangles are three-sided figures."),
            Proposition::of(A, "figures that are triangles", "three-sided figures")
        );
        assert_eq!(norm("Circles are not triangles."), Proposition::of(E, "circles", "triangles"));
        assert_eq!(norm("Spiders are never ants."), Proposition::of(E, "spiders", "ants"));
        assert_eq!(
            norm("Anything that is a poodle is also a canine."),
            Proposition::of(A, "poodle", "canine")
        );
        assert_eq!(
            norm("A portion of dogs are not canines."),
            Proposition::of(O, "dogs", "canines")
        );
        assert_eq!(
            norm("The entire set of poodles is contained within the set of dogs."),
            Proposition::of(A, "poodles", "dogs")
        );
        assert_eq!(
            norm("There exist insects that are not spiders."),
            Proposition::of(O, "insects", "spiders")
        );
    }

    #[test]
    fn verb_predicates_are_not_normalized() {
        assert!(matches!(
            normalize_en("Every single bee pollinates flowers."),
            Err(NotNormalizable::NoRule { .. })
        ));
        assert!(normalize_en("Hello").is_err());
        assert!(normalize_en("").is_err());
    }

    #[test]
    fn no_plural_unification() {
        assert_eq!(norm("Every bike is a vehicle"), Proposition::of(A, "bike", "vehicle"));
        assert_eq!(norm("All bikes are vehicles"), Proposition::of(A, "bikes", "vehicles"));
    }

    #[test]
    fn rule_names_are_unique() {
        let rules = RuleSet::english().rules();
        let mut names: Vec<_> = rules.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), rules.len());
    }
}

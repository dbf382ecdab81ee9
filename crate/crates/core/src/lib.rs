//! Deterministic categorical-syllogism reasoning.
//!
//! The pipeline parses canonical sentences (`all X are Y`, `no X are Y`,
//! `some X are Y`, `some X are not Y`) into [`Proposition`]s, resolves term
//! roles, mood and figure, and classifies validity with a mood/figure table
//! plus trivial-validity rules. A finite-model [`oracle`] re-derives the
//! table independently. Around that core sit a paraphrase normalizer with a
//! remote-model port, relevant-premise selection and an evaluation harness.

pub mod eval;
pub mod normalize;
pub mod oracle;
pub mod parser;
pub mod relevance;
pub mod structure;
pub mod synthetic;
pub mod types;
pub mod validity;

pub use parser::{emit_canonical, match_aeio, normalize_surface, parse_canonical, ParseFailure, ParseFailureKind};
pub use relevance::select_relevant;
pub use structure::{analyze, StructureFailure};
pub use types::{
    Basis, Figure, MalformedReason, Mood, Proposition, PropositionForm, RelevanceSet, StructuredSyllogism, Syllogism, Term,
    TrivialKind, ValidityVerdict,
};
pub use validity::{detect_trivial, judge, judge_text, lookup_valid, ValidityConfig, ValidityTable};

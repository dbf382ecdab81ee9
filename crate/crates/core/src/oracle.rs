//! Finite-model semantics for categorical propositions and a bounded
//! entailment checker.
//!
//! A model interprets every term as a subset of a finite universe. Since the
//! four forms only ask whether certain Venn regions are empty, a model is
//! characterised up to equivalence by the set of element *types* it
//! realises, where a type records which terms an element belongs to. A
//! universe of at most `n` elements realises exactly the type sets of size at
//! most `n`, so [`Oracle::entails`] enumerates those sets instead of raw
//! extension assignments. The test suite checks this against the literal
//! assignment enumeration.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::types::{Figure, Mood, Proposition, PropositionForm, Syllogism, Term};

/// Smallest universe bound for which the oracle is known to be decisive on
/// three-term forms.
pub const MIN_UNIVERSE: usize = 3;
pub const DEFAULT_MAX_UNIVERSE: usize = 4;
/// Type sets are stored in a 256-bit mask, so at most 8 distinct terms.
pub const MAX_TERMS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no extension for term {0:?}")]
    MissingExtension(String),
    #[error("extension of {term:?} mentions element {element} outside a universe of {size}")]
    OutsideUniverse { term: String, element: usize, size: usize },
    #[error("max_universe must be at least {MIN_UNIVERSE}, got {0}")]
    UniverseTooSmall(usize),
    #[error("at most {MAX_TERMS} distinct terms are supported, got {0}")]
    TooManyTerms(usize),
}

/// A finite interpretation: universe `{0..universe_size}` and one subset per term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    universe_size: usize,
    extensions: BTreeMap<Term, BTreeSet<usize>>,
}

impl Model {
    pub fn new(universe_size: usize, extensions: BTreeMap<Term, BTreeSet<usize>>) -> Result<Self, OracleError> {
        for (term, ext) in &extensions {
            if let Some(&element) = ext.iter().find(|&&e| e >= universe_size) {
                return Err(OracleError::OutsideUniverse {
                    term: term.to_string(),
                    element,
                    size: universe_size,
                });
            }
        }
        Ok(Model {
            universe_size,
            extensions,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn extension(&self, term: &Term) -> Result<&BTreeSet<usize>, OracleError> {
        self.extensions
            .get(term)
            .ok_or_else(|| OracleError::MissingExtension(term.to_string()))
    }
}

/// Set-theoretic truth: A is S ⊆ P, E is S ∩ P = ∅, I is S ∩ P ≠ ∅ and
/// O is S ∖ P ≠ ∅.
pub fn eval_proposition(p: &Proposition, m: &Model) -> Result<bool, OracleError> {
    let s = m.extension(&p.subject)?;
    let o = m.extension(&p.predicate)?;
    Ok(match p.form {
        PropositionForm::A => s.is_subset(o),
        PropositionForm::E => s.is_disjoint(o),
        PropositionForm::I => !s.is_disjoint(o),
        PropositionForm::O => !s.is_subset(o),
    })
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct TypeSet([u64; 4]);

impl TypeSet {
    fn with(mut self, t: usize) -> Self {
        self.0[t / 64] |= 1 << (t % 64);
        self
    }

    fn intersects(&self, other: &TypeSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }
}

/// A proposition compiled to the set of element types that witness (for
/// particular forms) or violate (for universal forms) it.
struct Compiled {
    universal: bool,
    mask: TypeSet,
}

impl Compiled {
    fn holds(&self, present: &TypeSet) -> bool {
        present.intersects(&self.mask) != self.universal
    }
}

/// Bounded entailment checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    existential_import: bool,
    max_universe: usize,
}

impl Oracle {
    pub fn new(existential_import: bool, max_universe: usize) -> Result<Self, OracleError> {
        if max_universe < MIN_UNIVERSE {
            return Err(OracleError::UniverseTooSmall(max_universe));
        }
        Ok(Oracle {
            existential_import,
            max_universe,
        })
    }

    pub fn with_import(existential_import: bool) -> Self {
        Oracle {
            existential_import,
            max_universe: DEFAULT_MAX_UNIVERSE,
        }
    }

    pub fn existential_import(&self) -> bool {
        self.existential_import
    }

    pub fn max_universe(&self) -> usize {
        self.max_universe
    }

    /// True iff every model up to the universe bound that makes all premises
    /// true also makes the conclusion true. Universes start at size 1 under
    /// existential import (and every term is then nonempty), at size 0
    /// otherwise.
    pub fn entails(&self, premises: &[Proposition], conclusion: &Proposition) -> Result<bool, OracleError> {
        Ok(self.counterexample(premises, conclusion)?.is_none())
    }

    /// A model refuting the entailment, if one exists within the bound.
    pub fn counterexample(&self, premises: &[Proposition], conclusion: &Proposition) -> Result<Option<Model>, OracleError> {
        let mut terms: Vec<&Term> = Vec::new();
        for p in premises.iter().chain(std::iter::once(conclusion)) {
            for t in [&p.subject, &p.predicate] {
                if !terms.contains(&t) {
                    terms.push(t);
                }
            }
        }
        let k = terms.len();
        if k > MAX_TERMS {
            return Err(OracleError::TooManyTerms(k));
        }
        let n_types = 1usize << k;
        let bit = |t: &Term| 1usize << terms.iter().position(|x| *x == t).expect("collected");

        let compile = |p: &Proposition| {
            let (s, o) = (bit(&p.subject), bit(&p.predicate));
            let selects = |ty: usize| match p.form {
                PropositionForm::A | PropositionForm::O => ty & s != 0 && ty & o == 0,
                PropositionForm::E | PropositionForm::I => ty & s != 0 && ty & o != 0,
            };
            let mask = (0..n_types).filter(|&ty| selects(ty)).fold(TypeSet::default(), TypeSet::with);
            Compiled {
                universal: p.form.is_universal(),
                mask,
            }
        };
        let compiled_premises: Vec<Compiled> = premises.iter().map(compile).collect();
        let compiled_conclusion = compile(conclusion);
        let term_masks: Vec<TypeSet> = (0..k)
            .map(|i| {
                (0..n_types)
                    .filter(|ty| ty & (1 << i) != 0)
                    .fold(TypeSet::default(), TypeSet::with)
            })
            .collect();

        let refutes = |present: &TypeSet| {
            if self.existential_import && !term_masks.iter().all(|m| present.intersects(m)) {
                return false;
            }
            compiled_premises.iter().all(|c| c.holds(present)) && !compiled_conclusion.holds(present)
        };

        let mut chosen: Vec<usize> = Vec::with_capacity(self.max_universe);
        let found = search(
            TypeSet::default(),
            0,
            n_types,
            self.max_universe,
            !self.existential_import,
            &mut chosen,
            &refutes,
        );
        Ok(found.then(|| {
            let mut extensions: BTreeMap<Term, BTreeSet<usize>> = terms.iter().map(|t| ((*t).clone(), BTreeSet::new())).collect();
            for (element, ty) in chosen.iter().enumerate() {
                for (i, t) in terms.iter().enumerate() {
                    if ty & (1 << i) != 0 {
                        extensions.get_mut(*t).expect("term").insert(element);
                    }
                }
            }
            Model::new(chosen.len(), extensions).expect("elements within universe")
        }))
    }
}

/// Depth-first enumeration of type sets in increasing type order. Leaves the
/// refuting set in `chosen` when it returns true.
fn search(
    present: TypeSet,
    next: usize,
    n_types: usize,
    remaining: usize,
    check_here: bool,
    chosen: &mut Vec<usize>,
    refutes: &impl Fn(&TypeSet) -> bool,
) -> bool {
    if check_here && refutes(&present) {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    for ty in next..n_types {
        chosen.push(ty);
        if search(present.with(ty), ty + 1, n_types, remaining - 1, true, chosen, refutes) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Entailment with the default universe bound.
pub fn entails(premises: &[Proposition], conclusion: &Proposition, existential_import: bool) -> bool {
    Oracle::with_import(existential_import)
        .entails(premises, conclusion)
        .expect("syllogisms stay within the term limit")
}

/// The standard-order syllogism `[major, minor] ⊢ conclusion` over the
/// abstract terms `s`, `m`, `p` for a mood and figure.
pub fn instantiate(mood: Mood, figure: Figure) -> Syllogism {
    let (major, minor) = match figure.value() {
        1 => (("m", "p"), ("s", "m")),
        2 => (("p", "m"), ("s", "m")),
        3 => (("m", "p"), ("m", "s")),
        _ => (("p", "m"), ("m", "s")),
    };
    Syllogism::new(
        vec![
            Proposition::of(mood.major, major.0, major.1),
            Proposition::of(mood.minor, minor.0, minor.1),
        ],
        Proposition::of(mood.conclusion, "s", "p"),
    )
    .expect("two premises")
}

/// Entailment verdict for every one of the 256 (mood, figure) forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTable {
    verdicts: BTreeMap<(Mood, Figure), bool>,
}

impl FormTable {
    pub fn get(&self, mood: Mood, figure: Figure) -> bool {
        self.verdicts[&(mood, figure)]
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }

    pub fn valid_forms(&self) -> BTreeSet<(Mood, Figure)> {
        self.verdicts.iter().filter(|(_, v)| **v).map(|(k, _)| *k).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Mood, Figure), bool)> + '_ {
        self.verdicts.iter().map(|(k, v)| (*k, *v))
    }
}

/// Decides all 256 forms with `oracle`. Cells are evaluated in parallel;
/// the result does not depend on evaluation order.
pub fn enumerate_forms_with(oracle: &Oracle) -> FormTable {
    let cells: Vec<(Mood, Figure)> = Mood::all()
        .flat_map(|m| Figure::ALL.into_iter().map(move |f| (m, f)))
        .collect();
    let verdicts = cells
        .into_par_iter()
        .map(|(mood, figure)| {
            let s = instantiate(mood, figure);
            let v = oracle.entails(s.premises(), s.conclusion()).expect("three terms");
            ((mood, figure), v)
        })
        .collect();
    FormTable { verdicts }
}

pub fn enumerate_forms(existential_import: bool) -> FormTable {
    enumerate_forms_with(&Oracle::with_import(existential_import))
}

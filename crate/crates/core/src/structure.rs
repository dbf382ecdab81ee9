//! Term-role analysis of two-premise syllogisms: minor/major/middle terms,
//! major/minor premise assignment, figure and mood.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::types::{StructuredSyllogism, Syllogism, Term};

/// Which structural guard rejected the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureFailure {
    #[error("expected exactly two premises, got {found}")]
    PremiseCount { found: usize },
    #[error("expected exactly three distinct terms, got {found}")]
    TermCountNot3 { found: usize },
    #[error("no unique middle term shared by both premises")]
    NoUniqueMiddle,
    #[error("no premise contains the conclusion's predicate")]
    MajorNotFound,
    #[error("the remaining premise does not contain the conclusion's subject")]
    MinorNotFound,
}

/// Resolves term roles for a two-premise syllogism.
///
/// S and P are the conclusion's subject and predicate. The three-term guard,
/// the unique-middle guard and the major-premise search mirror the classic
/// lookup procedure; when P occurs in both premises the first premise is
/// taken as major. An extra guard rejects inputs whose minor premise does not
/// mention S, since such inputs would otherwise be read as a well-formed mood.
pub fn analyze(s: &Syllogism) -> Result<StructuredSyllogism, StructureFailure> {
    let premises = s.premises();
    if premises.len() != 2 {
        return Err(StructureFailure::PremiseCount { found: premises.len() });
    }
    let conclusion = s.conclusion();
    let minor_term = &conclusion.subject;
    let major_term = &conclusion.predicate;
    let u1: BTreeSet<&Term> = [&premises[0].subject, &premises[0].predicate].into();
    let u2: BTreeSet<&Term> = [&premises[1].subject, &premises[1].predicate].into();

    let all: BTreeSet<&Term> = u1.iter().chain(u2.iter()).copied().chain([minor_term, major_term]).collect();
    if all.len() != 3 {
        return Err(StructureFailure::TermCountNot3 { found: all.len() });
    }

    let middle: Vec<&Term> = u1
        .intersection(&u2)
        .copied()
        .filter(|t| *t != minor_term && *t != major_term)
        .collect();
    let [middle] = middle.as_slice() else {
        return Err(StructureFailure::NoUniqueMiddle);
    };

    let (major_index, minor_index) = if u1.contains(major_term) {
        (0, 1)
    } else if u2.contains(major_term) {
        (1, 0)
    } else {
        return Err(StructureFailure::MajorNotFound);
    };
    if !premises[minor_index].mentions(minor_term) {
        return Err(StructureFailure::MinorNotFound);
    }

    Ok(StructuredSyllogism::new(
        s.clone(),
        minor_term.clone(),
        major_term.clone(),
        (*middle).clone(),
        major_index,
        minor_index,
    )
    .expect("guards establish the role invariants"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Proposition, PropositionForm::*};
    use proptest::prelude::*;

    fn syl(premises: &[Proposition], conclusion: Proposition) -> Syllogism {
        Syllogism::new(premises.to_vec(), conclusion).unwrap()
    }

    #[test]
    fn worked_example_is_figure_two() {
        let s = syl(
            &[Proposition::of(A, "b", "a"), Proposition::of(A, "c", "a")],
            Proposition::of(A, "c", "b"),
        );
        let r = analyze(&s).unwrap();
        assert_eq!(r.minor_term().as_str(), "c");
        assert_eq!(r.major_term().as_str(), "b");
        assert_eq!(r.middle_term().as_str(), "a");
        assert_eq!((r.major_index(), r.minor_index()), (0, 1));
        assert_eq!(r.figure().value(), 2);
        assert_eq!(r.mood().to_string(), "AAA");
    }

    #[test]
    fn barbara_is_figure_one() {
        let s = syl(
            &[Proposition::of(A, "m", "p"), Proposition::of(A, "s", "m")],
            Proposition::of(A, "s", "p"),
        );
        let r = analyze(&s).unwrap();
        assert_eq!(r.figure().value(), 1);
        assert_eq!(r.mood().to_string(), "AAA");
    }

    #[test]
    fn guard_failures() {
        let s = syl(
            &[Proposition::of(A, "x", "y"), Proposition::of(A, "x", "y")],
            Proposition::of(A, "x", "y"),
        );
        assert_eq!(analyze(&s), Err(StructureFailure::TermCountNot3 { found: 2 }));

        let s = syl(
            &[Proposition::of(A, "m", "p"), Proposition::of(E, "s", "q")],
            Proposition::of(A, "s", "p"),
        );
        // four terms: the term-count guard fires before the middle-term guard
        assert_eq!(analyze(&s), Err(StructureFailure::TermCountNot3 { found: 4 }));

        let s = syl(
            &[Proposition::of(A, "m", "p"), Proposition::of(E, "s", "p")],
            Proposition::of(A, "s", "p"),
        );
        assert_eq!(analyze(&s), Err(StructureFailure::NoUniqueMiddle));

        let s = syl(
            &[Proposition::of(A, "m", "m"), Proposition::of(A, "p", "m")],
            Proposition::of(I, "s", "p"),
        );
        assert_eq!(analyze(&s), Err(StructureFailure::MinorNotFound));

        let s = syl(&[Proposition::of(A, "m", "p")], Proposition::of(A, "s", "p"));
        assert_eq!(analyze(&s), Err(StructureFailure::PremiseCount { found: 1 }));
    }

    #[test]
    fn premises_without_shared_term_have_no_middle() {
        // three terms overall, but the premises only share a conclusion term
        let s = syl(
            &[Proposition::of(E, "bikes", "cars"), Proposition::of(A, "bikes", "vehicles")],
            Proposition::of(I, "vehicles", "bikes"),
        );
        assert_eq!(analyze(&s), Err(StructureFailure::NoUniqueMiddle));
    }

    fn abstract_syllogism() -> impl Strategy<Value = Syllogism> {
        let form = prop::sample::select(crate::types::PropositionForm::ALL.to_vec());
        (form.clone(), form.clone(), form, 1u8..=4).prop_map(|(f1, f2, f3, fig)| {
            let (major, minor) = match fig {
                1 => (("m", "p"), ("s", "m")),
                2 => (("p", "m"), ("s", "m")),
                3 => (("m", "p"), ("m", "s")),
                _ => (("p", "m"), ("m", "s")),
            };
            syl(
                &[Proposition::of(f1, major.0, major.1), Proposition::of(f2, minor.0, minor.1)],
                Proposition::of(f3, "s", "p"),
            )
        })
    }

    proptest! {
        #[test]
        fn renaming_commutes_with_analysis(s in abstract_syllogism(), names in prop::collection::hash_set("[a-z]{2,8}", 3)) {
            let names: Vec<String> = names.into_iter().collect();
            let rename = |t: &Term| {
                let idx = ["s", "m", "p"].iter().position(|n| *n == t.as_str()).unwrap();
                Term::new(&names[idx]).unwrap()
            };
            let before = analyze(&s).unwrap();
            let after = analyze(&s.map_terms(rename)).unwrap();
            prop_assert_eq!(after.mood(), before.mood());
            prop_assert_eq!(after.figure(), before.figure());
            prop_assert_eq!(after.major_index(), before.major_index());
            prop_assert_eq!(after.middle_term(), &rename(before.middle_term()));
            prop_assert_eq!(after.minor_term(), &rename(before.minor_term()));
        }

        #[test]
        fn swapping_premises_swaps_indices_only(s in abstract_syllogism()) {
            let swapped = syl(&[s.premises()[1].clone(), s.premises()[0].clone()], s.conclusion().clone());
            let a = analyze(&s).unwrap();
            let b = analyze(&swapped).unwrap();
            prop_assert_eq!(a.mood(), b.mood());
            prop_assert_eq!(a.figure(), b.figure());
            prop_assert_eq!(a.middle_term(), b.middle_term());
            prop_assert_eq!(a.major_index(), b.minor_index());
        }
    }
}

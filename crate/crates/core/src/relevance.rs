//! Relevant-premise selection among distractors.

use crate::structure::StructureFailure;
use crate::types::{Proposition, RelevanceSet, Syllogism, ValidityVerdict};
use crate::validity::{detect_trivial_hit, judge_structure, ValidityConfig};

/// Finds the premises that license `conclusion`.
///
/// Pairs `(i, j)` with `i < j` are tried in lexicographic order and the first
/// one forming a valid mood/figure syllogism with the conclusion wins; its
/// relevance set is the two indices. Failing that, enabled trivial rules are
/// tried: single-premise rules give a singleton set, explosion gives the
/// contradictory pair. Otherwise the verdict is invalid with an empty set.
pub fn select_relevant(
    sentences: &[Proposition],
    conclusion: &Proposition,
    cfg: &ValidityConfig,
) -> (ValidityVerdict, RelevanceSet) {
    // Reported when nothing validates: the first pair's own verdict.
    let mut first_verdict: Option<ValidityVerdict> = None;
    for i in 0..sentences.len() {
        for j in i + 1..sentences.len() {
            let pair =
                Syllogism::new(vec![sentences[i].clone(), sentences[j].clone()], conclusion.clone()).expect("two premises");
            match judge_structure(&pair, cfg) {
                Ok(verdict) if verdict.is_valid() => {
                    return (verdict, [i, j].into_iter().collect());
                }
                Ok(verdict) => {
                    first_verdict.get_or_insert(verdict);
                }
                Err(failure) => {
                    first_verdict.get_or_insert(ValidityVerdict::malformed(failure));
                }
            }
        }
    }

    if let Some(hit) = detect_trivial_hit(sentences, conclusion, cfg) {
        return (ValidityVerdict::trivial(hit.kind), hit.premises.into_iter().collect());
    }

    let verdict =
        first_verdict.unwrap_or_else(|| ValidityVerdict::malformed(StructureFailure::PremiseCount { found: sentences.len() }));
    (verdict, RelevanceSet::empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::entails;
    use crate::types::{PropositionForm::*, TrivialKind};

    fn table8() -> Vec<Proposition> {
        vec![
            Proposition::of(E, "circles", "three-sided figures"),
            Proposition::of(I, "isosceles triangles", "three-sided figures"),
            Proposition::of(A, "scalene triangles", "three-sided figures"),
            Proposition::of(A, "equilateral triangles", "three-sided figures"),
            Proposition::of(A, "triangles", "three-sided figures"),
            Proposition::of(E, "circles", "triangles"),
        ]
    }

    #[test]
    fn table8_pair_is_found() {
        let conclusion = Proposition::of(E, "triangles", "circles");
        let sentences = table8();
        // Sentence 5 converts to the conclusion on its own, so pairs that
        // contain it entail as well; among the others only {0, 4} does.
        let mut entailing = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                if entails(&[sentences[i].clone(), sentences[j].clone()], &conclusion, true) {
                    entailing.push((i, j));
                }
            }
        }
        assert_eq!(entailing, vec![(0, 4)]);
        let structural: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let pair = Syllogism::new(vec![sentences[i].clone(), sentences[j].clone()], conclusion.clone()).unwrap();
                judge_structure(&pair, &ValidityConfig::default()).is_ok_and(|v| v.is_valid())
            })
            .collect();
        assert_eq!(structural, vec![(0, 4)]);
        let (verdict, set) = select_relevant(&sentences, &conclusion, &ValidityConfig::default());
        assert!(verdict.is_valid());
        assert_eq!(verdict.summary(), "valid (EAE-2)");
        assert_eq!(set.to_vec(), vec![0, 4]);
    }

    #[test]
    fn barbara_among_distractors() {
        let sentences = vec![
            Proposition::of(I, "rocks", "stones"),
            Proposition::of(A, "m", "p"),
            Proposition::of(E, "fish", "birds"),
            Proposition::of(A, "s", "m"),
            Proposition::of(O, "trees", "plants"),
        ];
        let (verdict, set) = select_relevant(&sentences, &Proposition::of(A, "s", "p"), &ValidityConfig::default());
        assert_eq!(verdict.summary(), "valid (AAA-1)");
        assert_eq!(set.to_vec(), vec![1, 3]);
    }

    #[test]
    fn nothing_entails_gives_empty_set() {
        let sentences = vec![
            Proposition::of(A, "p", "m"),
            Proposition::of(A, "s", "m"),
            Proposition::of(I, "x", "y"),
        ];
        let (verdict, set) = select_relevant(&sentences, &Proposition::of(A, "s", "p"), &ValidityConfig::default());
        assert!(!verdict.is_valid());
        assert!(set.is_empty());
    }

    #[test]
    fn restatement_gives_singleton() {
        let sentences = vec![
            Proposition::of(I, "x", "y"),
            Proposition::of(E, "a", "b"),
            Proposition::of(A, "c", "d"),
        ];
        let (verdict, set) = select_relevant(&sentences, &Proposition::of(A, "c", "d"), &ValidityConfig::default());
        assert_eq!(verdict, ValidityVerdict::trivial(TrivialKind::PetitioPrincipii));
        assert_eq!(set.to_vec(), vec![2]);
    }

    #[test]
    fn explosion_gives_the_contradictory_pair() {
        let sentences = vec![
            Proposition::of(I, "x", "y"),
            Proposition::of(A, "a", "b"),
            Proposition::of(O, "a", "b"),
        ];
        let (verdict, set) = select_relevant(&sentences, &Proposition::of(E, "p", "q"), &ValidityConfig::default());
        assert_eq!(verdict, ValidityVerdict::trivial(TrivialKind::Explosion));
        assert_eq!(set.to_vec(), vec![1, 2]);
    }

    #[test]
    fn smallest_pair_wins_ties() {
        let sentences = vec![
            Proposition::of(A, "m", "p"),
            Proposition::of(A, "s", "m"),
            Proposition::of(A, "m", "p"),
            Proposition::of(A, "s", "m"),
        ];
        let (_, set) = select_relevant(&sentences, &Proposition::of(A, "s", "p"), &ValidityConfig::default());
        assert_eq!(set.to_vec(), vec![0, 1]);
    }

    #[test]
    fn single_premise_without_trivial_hit() {
        let (verdict, set) = select_relevant(
            &[Proposition::of(A, "a", "b")],
            &Proposition::of(O, "a", "b"),
            &ValidityConfig::default(),
        );
        assert!(!verdict.is_valid());
        assert!(set.is_empty());
    }
}

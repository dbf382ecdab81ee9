//! Shared test data.
#![allow(dead_code)]

use syllogism_core::{Proposition, PropositionForm};

/// (family, sentence, expected form, subject, predicate). Families follow the
/// paraphrase guide shipped with the normalization prompt.
pub const PARAPHRASES: &[(&str, &str, char, &str, &str)] = &[
    ("all-x-are-y", "All dogs are animals.", 'A', "dogs", "animals"),
    ("all-x-are-y", "all squares are rectangles", 'A', "squares", "rectangles"),
    ("every-x-is-y", "Every single puppy is a kitten.", 'A', "puppy", "kitten"),
    ("every-x-is-y", "Every bike is a vehicle.", 'A', "bike", "vehicle"),
    ("every-x-is-y", "Each oak is a tree.", 'A', "oak", "tree"),
    ("x-is-subset-of-y", "Dogs are a subset of animals.", 'A', "dogs", "animals"),
    (
        "x-is-subset-of-y",
        "The set of roses is a subset of the set of flowers.",
        'A',
        "set of roses",
        "set of flowers",
    ),
    ("x-is-subset-of-y", "Sedans are part of cars.", 'A', "sedans", "cars"),
    (
        "anything-that-is-x-is-y",
        "Anything that is a dog is an animal.",
        'A',
        "dog",
        "animal",
    ),
    (
        "anything-that-is-x-is-y",
        "Everything that is a diamond is a gem.",
        'A',
        "diamond",
        "gem",
    ),
    ("no-x-are-y", "No bikes are cars.", 'E', "bikes", "cars"),
    ("no-x-are-y", "No fish are birds", 'E', "fish", "birds"),
    ("not-a-single-x-is-y", "Not a single cat is a dog.", 'E', "cat", "dog"),
    ("not-a-single-x-is-y", "Not a single rose is a tulip.", 'E', "rose", "tulip"),
    ("x-cannot-be-y", "Cats cannot be dogs.", 'E', "cats", "dogs"),
    ("x-cannot-be-y", "A shark cannot be a mammal.", 'E', "shark", "mammal"),
    ("x-is-never-y", "A whale is never a fish.", 'E', "whale", "fish"),
    ("x-is-never-y", "Penguins are never sparrows.", 'E', "penguins", "sparrows"),
    ("some-x-are-y", "Some birds are penguins.", 'I', "birds", "penguins"),
    ("some-x-are-y", "some mammals are pets", 'I', "mammals", "pets"),
    ("a-few-x-are-y", "A few insects are bees.", 'I', "insects", "bees"),
    ("a-few-x-are-y", "A few ants are, in fact, insects.", 'I', "ants", "insects"),
    (
        "there-exist-x-that-are-y",
        "There exist birds that are penguins.",
        'I',
        "birds",
        "penguins",
    ),
    (
        "there-exist-x-that-are-y",
        "There are some trees that are oaks.",
        'I',
        "trees",
        "oaks",
    ),
    (
        "something-that-is-x-is-y",
        "Something that is a rose is a flower.",
        'I',
        "rose",
        "flower",
    ),
    (
        "something-that-is-x-is-y",
        "Something which is a gem is a ruby.",
        'I',
        "gem",
        "ruby",
    ),
    (
        "a-portion-of-x-are-y",
        "A portion of dogs are canines.",
        'I',
        "dogs",
        "canines",
    ),
    (
        "a-portion-of-x-are-y",
        "A portion of vehicles are bicycles.",
        'I',
        "vehicles",
        "bicycles",
    ),
    ("some-x-are-not-y", "Some birds are not penguins.", 'O', "birds", "penguins"),
    (
        "some-x-are-not-y",
        "A portion of dogs are not canines.",
        'O',
        "dogs",
        "canines",
    ),
    ("not-all-x-are-y", "Not all X are Y", 'O', "x", "y"),
    ("not-all-x-are-y", "Not all flowers are roses.", 'O', "flowers", "roses"),
    ("not-all-x-are-y", "Not every mammal is a dog.", 'O', "mammal", "dog"),
    (
        "at-least-one-x-is-not-y",
        "At least one bird is not a penguin.",
        'O',
        "bird",
        "penguin",
    ),
    (
        "at-least-one-x-is-not-y",
        "At least one tree is not an oak.",
        'O',
        "tree",
        "oak",
    ),
    (
        "no-x-are-not-y",
        "No squares are not rectangles.",
        'A',
        "squares",
        "rectangles",
    ),
    ("no-x-are-not-y", "No poodles are not dogs.", 'A', "poodles", "dogs"),
    (
        "there-are-no-x-that-are-not-y",
        "There are no carrots that are not edible",
        'A',
        "carrots",
        "edible",
    ),
    (
        "there-are-no-x-that-are-not-y",
        "There are no sedans that are not cars.",
        'A',
        "sedans",
        "cars",
    ),
];

/// The guide's families; each needs at least two passing fixtures.
pub const FAMILIES: &[&str] = &[
    "all-x-are-y",
    "every-x-is-y",
    "x-is-subset-of-y",
    "anything-that-is-x-is-y",
    "no-x-are-y",
    "not-a-single-x-is-y",
    "x-cannot-be-y",
    "x-is-never-y",
    "some-x-are-y",
    "a-few-x-are-y",
    "there-exist-x-that-are-y",
    "something-that-is-x-is-y",
    "some-x-are-not-y",
    "not-all-x-are-y",
    "at-least-one-x-is-not-y",
    "no-x-are-not-y",
    "there-are-no-x-that-are-not-y",
];

/// Partitive and proportional quantifiers the table must not accept.
pub const REJECTED: &[&str] = &[
    "A number of vehicles are bikes.",
    "A number of dogs are not cats.",
    "Most birds are animals.",
    "Many fish are sharks.",
];

pub fn expected(form: char, subject: &str, predicate: &str) -> Proposition {
    Proposition::of(PropositionForm::from_letter(form).expect("form letter"), subject, predicate)
}

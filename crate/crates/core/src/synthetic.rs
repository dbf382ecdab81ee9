//! Seeded generators for test corpora.
//!
//! * [`synthetic_corpus`]: every mood/figure form, lexicalized once with a
//!   conclusion whose real-world truth agrees with the form's validity and
//!   once with one that disagrees.
//! * [`relevance_instances`]: a syllogism hidden among distractors, with the
//!   oracle confirming that no other premise set entails the conclusion.
//! * [`trivial_candidates`]: inputs built to trip the trivial-validity rules.
//!
//! Gold labels come from the finite-model oracle, never from the validity
//! table, so the generated data can be used to test the table.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::eval::dataset::{DatasetRecord, PlausibilityGroup};
use crate::oracle::{eval_proposition, instantiate, Model, Oracle};
use crate::types::{Figure, Mood, Proposition, PropositionForm, RelevanceSet, Term};
use crate::validity::{detect_trivial_hit, ValidityConfig};

pub const DEFAULT_SEED: u64 = 2026;

/// A small tree of everyday categories. Siblings are disjoint and a child
/// is contained in its parent, which is enough to decide whether a
/// categorical sentence sounds true.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    names: Vec<&'static str>,
    parents: Vec<Option<usize>>,
}

const WORLD: &[(&str, Option<&str>)] = &[
    ("animals", None),
    ("mammals", Some("animals")),
    ("dogs", Some("mammals")),
    ("poodles", Some("dogs")),
    ("beagles", Some("dogs")),
    ("cats", Some("mammals")),
    ("whales", Some("mammals")),
    ("birds", Some("animals")),
    ("sparrows", Some("birds")),
    ("penguins", Some("birds")),
    ("fish", Some("animals")),
    ("salmon", Some("fish")),
    ("sharks", Some("fish")),
    ("insects", Some("animals")),
    ("ants", Some("insects")),
    ("bees", Some("insects")),
    ("plants", None),
    ("trees", Some("plants")),
    ("oaks", Some("trees")),
    ("pines", Some("trees")),
    ("flowers", Some("plants")),
    ("roses", Some("flowers")),
    ("tulips", Some("flowers")),
    ("vehicles", None),
    ("cars", Some("vehicles")),
    ("sedans", Some("cars")),
    ("bicycles", Some("vehicles")),
    ("minerals", None),
    ("gems", Some("minerals")),
    ("diamonds", Some("gems")),
    ("rubies", Some("gems")),
];

impl Taxonomy {
    pub fn world() -> Self {
        let names: Vec<&'static str> = WORLD.iter().map(|(n, _)| *n).collect();
        let parents = WORLD
            .iter()
            .map(|(_, p)| p.map(|p| names.iter().position(|n| *n == p).expect("parent listed first")))
            .collect();
        Taxonomy { names, parents }
    }

    pub fn categories(&self) -> Vec<Term> {
        self.names.iter().map(|n| Term::new(n).expect("nonempty")).collect()
    }

    fn is_leaf(&self, i: usize) -> bool {
        !self.parents.contains(&Some(i))
    }

    fn below(&self, mut i: usize, ancestor: usize) -> bool {
        loop {
            if i == ancestor {
                return true;
            }
            match self.parents[i] {
                Some(p) => i = p,
                None => return false,
            }
        }
    }

    /// The intended world: one element per leaf category.
    pub fn model(&self) -> Model {
        let leaves: Vec<usize> = (0..self.names.len()).filter(|&i| self.is_leaf(i)).collect();
        let extensions = (0..self.names.len())
            .map(|c| {
                let members = leaves
                    .iter()
                    .enumerate()
                    .filter(|(_, &leaf)| self.below(leaf, c))
                    .map(|(e, _)| e)
                    .collect();
                (Term::new(self.names[c]).expect("nonempty"), members)
            })
            .collect();
        Model::new(leaves.len(), extensions).expect("consistent taxonomy")
    }
}

/// Whether `p` holds in the taxonomy's world.
pub fn believable(model: &Model, p: &Proposition) -> bool {
    eval_proposition(p, model).expect("taxonomy term")
}

fn templates(form: PropositionForm) -> &'static [&'static str] {
    match form {
        PropositionForm::A => &[
            "All {x} are {y}",
            "No {x} are not {y}",
            "There are no {x} that are not {y}",
            "{x} are a subset of {y}",
            "The entire set of {x} is contained in the set of {y}",
        ],
        PropositionForm::E => &[
            "No {x} are {y}",
            "There are no {x} that are {y}",
            "{x} cannot be {y}",
            "{x} are never {y}",
            "None of the {x} are {y}",
        ],
        PropositionForm::I => &[
            "Some {x} are {y}",
            "A few {x} are {y}",
            "There exist {x} that are {y}",
            "A portion of {x} are {y}",
            "Certain {x} are {y}",
        ],
        PropositionForm::O => &[
            "Some {x} are not {y}",
            "Not all {x} are {y}",
            "A few {x} are not {y}",
            "Certain {x} are not {y}",
            "There exist {x} that are not {y}",
        ],
    }
}

const CONCLUSION_LEADS: &[&str] = &["", "Therefore, ", "Thus, ", "Hence, ", "It follows that ", "So "];

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// One English paraphrase of `p`, chosen by `rng`.
pub fn render_sentence(p: &Proposition, rng: &mut impl Rng) -> String {
    let template = templates(p.form).choose(rng).expect("templates");
    let body = template
        .replace("{x}", p.subject.as_str())
        .replace("{y}", p.predicate.as_str());
    format!("{}.", capitalize(&body))
}

pub fn render_conclusion(p: &Proposition, rng: &mut impl Rng) -> String {
    let lead = CONCLUSION_LEADS.choose(rng).expect("leads");
    let sentence = render_sentence(p, rng);
    if lead.is_empty() {
        sentence
    } else {
        let mut chars = sentence.chars();
        let first = chars.next().map(|c| c.to_lowercase().collect::<String>()).unwrap_or_default();
        format!("{lead}{first}{}", chars.as_str())
    }
}

/// Sentences for `premises` followed by `conclusion`.
pub fn render_argument(premises: &[Proposition], conclusion: &Proposition, rng: &mut impl Rng) -> Vec<String> {
    let mut out: Vec<String> = premises.iter().map(|p| render_sentence(p, rng)).collect();
    out.push(render_conclusion(conclusion, rng));
    out
}

const SYLLABLES: &[&str] = &[
    "ba", "del", "fo", "gri", "ka", "lum", "mo", "nek", "pa", "quo", "ri", "sol", "tav", "ul", "vex", "wim", "zo",
];

/// A made-up plural noun, e.g. `grisolkas`.
pub fn pseudo_word(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(2..=3);
    let mut w: String = (0..n).map(|_| *SYLLABLES.choose(rng).expect("syllables")).collect();
    w.push('s');
    w
}

/// `n` distinct made-up terms.
pub fn fresh_terms(n: usize, rng: &mut impl Rng) -> Vec<Term> {
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert(pseudo_word(rng));
    }
    let mut out: Vec<Term> = seen.into_iter().map(|w| Term::new(&w).expect("nonempty")).collect();
    out.shuffle(rng);
    out
}

fn validity_oracle() -> Oracle {
    Oracle::with_import(true)
}

/// Two records per mood/figure form: one whose conclusion's believability
/// matches the form's validity and one where it does not.
pub fn synthetic_corpus(seed: u64) -> Vec<DatasetRecord> {
    let mut rng = StdRng::seed_from_u64(seed);
    let taxonomy = Taxonomy::world();
    let world = taxonomy.model();
    let cats = taxonomy.categories();
    let oracle = validity_oracle();
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for s in 0..cats.len() {
        for m in 0..cats.len() {
            for p in 0..cats.len() {
                if s != m && m != p && s != p {
                    triples.push([s, m, p]);
                }
            }
        }
    }
    triples.shuffle(&mut rng);

    let mut records = Vec::with_capacity(512);
    let mut cursor = 0usize;
    for figure in Figure::ALL {
        for mood in Mood::all() {
            let form = instantiate(mood, figure);
            let valid = oracle.entails(form.premises(), form.conclusion()).expect("three terms");
            let placeholders = [Term::new("s").unwrap(), Term::new("m").unwrap(), Term::new("p").unwrap()];
            for group in [PlausibilityGroup::Consistent, PlausibilityGroup::Inconsistent] {
                let want_believable = valid == (group == PlausibilityGroup::Consistent);
                // walk the shuffled triples from where the last search stopped
                let (offset, picked) = (0..triples.len())
                    .map(|k| (k, triples[(cursor + k) % triples.len()]))
                    .find(|(_, t)| {
                        let c = form.conclusion().map_terms(|x| lex(x, &placeholders, &cats, *t));
                        believable(&world, &c) == want_believable
                    })
                    .expect("taxonomy has both true and false sentences of every form");
                cursor = (cursor + offset + 1) % triples.len();
                let lexical = form.map_terms(|x| lex(x, &placeholders, &cats, picked));
                let mut premises = lexical.premises().to_vec();
                if rng.gen_bool(0.5) {
                    premises.swap(0, 1);
                }
                records.push(DatasetRecord {
                    id: format!("syn-{}-{}-{}", mood, figure, &group.name()[..1]),
                    language: "en".into(),
                    sentences: render_argument(&premises, lexical.conclusion(), &mut rng),
                    gold_validity: valid,
                    gold_relevant: if valid { [0, 1].into() } else { BTreeSet::new() },
                    plausibility_group: group,
                });
            }
        }
    }
    records
}

fn lex(x: &Term, placeholders: &[Term; 3], cats: &[Term], triple: [usize; 3]) -> Term {
    let i = placeholders.iter().position(|p| p == x).expect("s, m or p");
    cats[triple[i]].clone()
}

/// A syllogism hidden among distractor sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelevanceInstance {
    pub sentences: Vec<Proposition>,
    pub conclusion: Proposition,
    /// Indices of the hidden pair; empty for invalid instances.
    pub gold: RelevanceSet,
    pub mood: Mood,
    pub figure: Figure,
}

impl RelevanceInstance {
    pub fn to_record(&self, id: &str, rng: &mut impl Rng) -> DatasetRecord {
        DatasetRecord {
            id: id.to_string(),
            language: "en".into(),
            sentences: render_argument(&self.sentences, &self.conclusion, rng),
            gold_validity: !self.gold.is_empty(),
            gold_relevant: self.gold.indices().clone(),
            plausibility_group: PlausibilityGroup::Neutral,
        }
    }
}

/// No subset of at most two sentences entails the conclusion, except
/// `allowed` (which must).
fn uniquely_entailed(
    sentences: &[Proposition],
    conclusion: &Proposition,
    allowed: Option<(usize, usize)>,
    oracle: &Oracle,
) -> bool {
    let entails = |ps: &[Proposition]| oracle.entails(ps, conclusion).unwrap_or(true);
    if sentences.iter().any(|s| entails(std::slice::from_ref(s))) {
        return false;
    }
    for i in 0..sentences.len() {
        for j in i + 1..sentences.len() {
            let e = entails(&[sentences[i].clone(), sentences[j].clone()]);
            if e != (allowed == Some((i, j))) {
                return false;
            }
        }
    }
    true
}

fn random_proposition(pool: &[Term], rng: &mut impl Rng) -> Proposition {
    let form = *PropositionForm::ALL.choose(rng).expect("forms");
    let pair: Vec<&Term> = pool.choose_multiple(rng, 2).collect();
    Proposition::new(form, pair[0].clone(), pair[1].clone())
}

/// `count` instances with 2 to 7 sentences. Valid instances hide a valid
/// form; invalid ones hide an invalid form. Distractors reuse the core terms
/// together with a few fresh ones, and every instance is rejected unless
/// the oracle confirms the hidden pair is the only premise set (of size one
/// or two) entailing the conclusion.
pub fn relevance_instances(count: usize, seed: u64, valid: bool) -> Vec<RelevanceInstance> {
    let mut rng = StdRng::seed_from_u64(seed);
    let oracle = validity_oracle();
    let forms: Vec<(Mood, Figure)> = Figure::ALL
        .iter()
        .flat_map(|&f| Mood::all().map(move |m| (m, f)))
        .filter(|(m, f)| {
            let s = instantiate(*m, *f);
            oracle.entails(s.premises(), s.conclusion()).expect("three terms") == valid
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (mood, figure) = forms[out.len() % forms.len()];
        let words = fresh_terms(5, &mut rng);
        let core = instantiate(mood, figure).map_terms(|t| match t.as_str() {
            "s" => words[0].clone(),
            "m" => words[1].clone(),
            _ => words[2].clone(),
        });
        let n_distractors = rng.gen_range(0..=5);
        let mut sentences: Vec<Proposition> = Vec::new();
        let mut attempts = 0;
        while sentences.len() < n_distractors && attempts < 50 {
            attempts += 1;
            let d = random_proposition(&words, &mut rng);
            if d.subject == d.predicate || sentences.contains(&d) || core.premises().contains(&d) {
                continue;
            }
            let mut trial = sentences.clone();
            trial.push(d.clone());
            if uniquely_entailed(&trial, core.conclusion(), None, &oracle) {
                sentences.push(d);
            }
        }
        // place the hidden pair at random positions
        let mut slots: Vec<usize> = (0..=sentences.len() + 1).collect();
        slots.shuffle(&mut rng);
        let (mut a, mut b) = (slots[0], slots[1]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (first, second) = if rng.gen_bool(0.5) {
            (core.premises()[0].clone(), core.premises()[1].clone())
        } else {
            (core.premises()[1].clone(), core.premises()[0].clone())
        };
        sentences.insert(a, first);
        sentences.insert(b, second);
        let allowed = valid.then_some((a, b));
        if !uniquely_entailed(&sentences, core.conclusion(), allowed, &oracle) {
            continue;
        }
        out.push(RelevanceInstance {
            gold: if valid {
                [a, b].into_iter().collect()
            } else {
                RelevanceSet::empty()
            },
            sentences,
            conclusion: core.conclusion().clone(),
            mood,
            figure,
        });
    }
    out
}

/// Rendered relevance instances, valid ones first.
pub fn relevance_corpus(valid: usize, invalid: usize, seed: u64) -> Vec<DatasetRecord> {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::with_capacity(valid + invalid);
    for (i, inst) in relevance_instances(valid, seed, true).iter().enumerate() {
        out.push(inst.to_record(&format!("rel-v-{i:04}"), &mut rng));
    }
    for (i, inst) in relevance_instances(invalid, seed.wrapping_add(1), false).iter().enumerate() {
        out.push(inst.to_record(&format!("rel-i-{i:04}"), &mut rng));
    }
    out
}

/// Premises and conclusion built around one trivial pattern, plus noise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialCandidate {
    pub premises: Vec<Proposition>,
    pub conclusion: Proposition,
}

/// Candidates over at most four terms, cycling through restatement,
/// conversion, subalternation and contradiction patterns. Some will not
/// fire under a given configuration; see [`trivial_cases`].
pub fn trivial_candidates(count: usize, seed: u64) -> Vec<TrivialCandidate> {
    use PropositionForm::*;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let pool = fresh_terms(4, &mut rng);
        let base = random_proposition(&pool, &mut rng);
        let (x, y) = (base.subject.clone(), base.predicate.clone());
        let mut premises = Vec::new();
        let conclusion = match n % 6 {
            0 => {
                premises.push(base.clone());
                base
            }
            1 => {
                premises.push(Proposition::new(E, x.clone(), y.clone()));
                Proposition::new(E, y, x)
            }
            2 => {
                premises.push(Proposition::new(I, x.clone(), y.clone()));
                Proposition::new(I, y, x)
            }
            3 => {
                premises.push(Proposition::new(A, x.clone(), y.clone()));
                Proposition::new(I, x, y)
            }
            4 => {
                premises.push(Proposition::new(E, x.clone(), y.clone()));
                Proposition::new(O, x, y)
            }
            _ => {
                let (f, g) = *[(A, O), (O, A), (E, I), (I, E)].choose(&mut rng).expect("pairs");
                let swapped = matches!(f, E | I) && rng.gen_bool(0.5);
                premises.push(Proposition::new(f, x.clone(), y.clone()));
                premises.push(if swapped {
                    Proposition::new(g, y, x)
                } else {
                    Proposition::new(g, x, y)
                });
                random_proposition(&pool, &mut rng)
            }
        };
        for _ in 0..rng.gen_range(0..=1) {
            let noise = random_proposition(&pool, &mut rng);
            let at = rng.gen_range(0..=premises.len());
            premises.insert(at, noise);
        }
        out.push(TrivialCandidate { premises, conclusion });
    }
    out
}

/// Candidates on which `cfg` reports trivial validity.
pub fn trivial_cases(count: usize, seed: u64, cfg: &ValidityConfig) -> Vec<TrivialCandidate> {
    let mut out = Vec::with_capacity(count);
    let mut round = 0;
    while out.len() < count {
        let batch = trivial_candidates(count, seed.wrapping_add(round));
        out.extend(
            batch
                .into_iter()
                .filter(|c| detect_trivial_hit(&c.premises, &c.conclusion, cfg).is_some())
                .take(count - out.len()),
        );
        round += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_en;

    #[test]
    fn taxonomy_world() {
        let world = Taxonomy::world().model();
        use PropositionForm::*;
        assert!(believable(&world, &Proposition::of(A, "poodles", "animals")));
        assert!(!believable(&world, &Proposition::of(A, "animals", "poodles")));
        assert!(believable(&world, &Proposition::of(E, "cats", "dogs")));
        assert!(believable(&world, &Proposition::of(I, "mammals", "dogs")));
        assert!(believable(&world, &Proposition::of(O, "mammals", "dogs")));
        assert!(!believable(&world, &Proposition::of(I, "gems", "trees")));
    }

    #[test]
    fn every_template_normalizes_back() {
        let mut rng = StdRng::seed_from_u64(1);
        for form in PropositionForm::ALL {
            for template in templates(form) {
                let p = Proposition::of(form, "siamese cats", "pets");
                let text = capitalize(&template.replace("{x}", "siamese cats").replace("{y}", "pets"));
                assert_eq!(normalize_en(&text).unwrap(), p, "{text}");
            }
            let p = Proposition::of(form, "zobas", "rikas");
            for _ in 0..20 {
                assert_eq!(normalize_en(&render_conclusion(&p, &mut rng)).unwrap(), p);
            }
        }
    }

    #[test]
    fn corpus_shape() {
        let corpus = synthetic_corpus(DEFAULT_SEED);
        assert_eq!(corpus.len(), 512);
        let valid = corpus.iter().filter(|r| r.gold_validity).count();
        assert_eq!(valid, 48);
        let ids: BTreeSet<&str> = corpus.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), 512);
        for r in &corpus {
            r.check().unwrap();
        }
        assert_eq!(corpus, synthetic_corpus(DEFAULT_SEED));
    }

    #[test]
    fn corpus_groups_follow_the_world() {
        let world = Taxonomy::world().model();
        for r in synthetic_corpus(7) {
            let c = normalize_en(r.conclusion()).unwrap();
            let agrees = believable(&world, &c) == r.gold_validity;
            assert_eq!(agrees, r.plausibility_group == PlausibilityGroup::Consistent, "{}", r.id);
        }
    }

    #[test]
    fn relevance_instances_are_unique() {
        let oracle = validity_oracle();
        for inst in relevance_instances(12, 3, true) {
            let g = inst.gold.to_vec();
            assert_eq!(g.len(), 2);
            assert!(uniquely_entailed(
                &inst.sentences,
                &inst.conclusion,
                Some((g[0], g[1])),
                &oracle
            ));
        }
        for inst in relevance_instances(6, 3, false) {
            assert!(inst.gold.is_empty());
            assert!(uniquely_entailed(&inst.sentences, &inst.conclusion, None, &oracle));
        }
    }

    #[test]
    fn trivial_cases_fire() {
        let cfg = ValidityConfig::default();
        let cases = trivial_cases(60, 9, &cfg);
        assert_eq!(cases.len(), 60);
        let kinds: BTreeSet<_> = cases
            .iter()
            .map(|c| detect_trivial_hit(&c.premises, &c.conclusion, &cfg).unwrap().kind)
            .collect();
        assert_eq!(kinds.len(), 6, "{kinds:?}");
    }
}

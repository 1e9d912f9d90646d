//! Cross-module property tests: randomized invariants plus desk-scale
//! exhaustive oracle comparisons.

use std::collections::BTreeSet;

use num_traits::One;
use proptest::prelude::*;

use vlcode::closure::er_completion;
use vlcode::codes::{bernoulli_measure, is_code, is_code_regular, BernoulliDist};
use vlcode::edit::{
    apply, closure_brute, lambda_membership, levenshtein, sigma_star, EditKind, EditRelation,
};
use vlcode::indep::{error_detection_margin, is_independent};
use vlcode::langs::{FiniteLang, RegularLang};
use vlcode::words::{all_words_of_length, all_words_up_to, Alphabet, Word};

fn word_strategy(nsyms: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..nsyms, 0..=max_len)
}

fn to_word(syms: &[u8], alphabet: &Alphabet) -> Word {
    let text: String = syms
        .iter()
        .map(|&s| alphabet.symbols()[s as usize])
        .collect();
    Word::parse(&text, alphabet).unwrap()
}

proptest! {
    #[test]
    fn levenshtein_is_a_metric(
        x in word_strategy(2, 7),
        y in word_strategy(2, 7),
        z in word_strategy(2, 7),
    ) {
        let ab = Alphabet::ab();
        let (x, y, z) = (to_word(&x, &ab), to_word(&y, &ab), to_word(&z, &ab));
        let dxy = levenshtein(&x, &y);
        prop_assert_eq!(dxy, levenshtein(&y, &x));
        prop_assert_eq!(dxy == 0, x == y);
        prop_assert!(dxy <= levenshtein(&x, &z) + levenshtein(&z, &y));
    }

    #[test]
    fn delete_insert_duality(x in word_strategy(2, 7), k in 1usize..=3) {
        let ab = Alphabet::ab();
        let x = to_word(&x, &ab);
        let del = EditRelation::new(EditKind::Delete, k).unwrap();
        let ins = EditRelation::new(EditKind::Insert, k).unwrap();
        for y in apply(del, &x, &ab) {
            prop_assert!(apply(ins, &y, &ab).contains(&x));
        }
    }

    #[test]
    fn lambda_matches_distance(
        x in word_strategy(2, 6),
        y in word_strategy(2, 6),
        p in 1usize..=3,
    ) {
        let ab = Alphabet::ab();
        let (x, y) = (to_word(&x, &ab), to_word(&y, &ab));
        let d = levenshtein(&x, &y);
        let expected = if p == 1 { d == 1 } else { d <= p };
        prop_assert_eq!(lambda_membership(&x, &y, p).unwrap(), expected);
    }

    #[test]
    fn measure_is_additive(
        xs in prop::collection::btree_set(word_strategy(2, 5), 0..6),
        ys in prop::collection::btree_set(word_strategy(2, 5), 0..6),
    ) {
        let ab = Alphabet::ab();
        let xs: BTreeSet<Word> = xs.iter().map(|s| to_word(s, &ab)).collect();
        let ys: BTreeSet<Word> = ys.iter().map(|s| to_word(s, &ab)).collect();
        let only_ys: BTreeSet<Word> = ys.difference(&xs).cloned().collect();
        let uniform = BernoulliDist::uniform(&ab);
        let union: BTreeSet<Word> = xs.union(&ys).cloned().collect();
        let lhs = bernoulli_measure(&FiniteLang::new(ab.clone(), union), &uniform);
        let rhs = bernoulli_measure(&FiniteLang::new(ab.clone(), xs), &uniform)
            + bernoulli_measure(&FiniteLang::new(ab.clone(), only_ys), &uniform);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn finite_and_regular_code_checks_agree(
        xs in prop::collection::btree_set(word_strategy(2, 4), 1..5),
    ) {
        let ab = Alphabet::ab();
        let words: BTreeSet<Word> = xs
            .iter()
            .map(|s| to_word(s, &ab))
            .filter(|w| !w.is_empty())
            .collect();
        prop_assume!(!words.is_empty());
        let lang = FiniteLang::new(ab.clone(), words);
        let finite = is_code(&lang).unwrap().is_code;
        let regular = is_code_regular(&RegularLang::from_finite(&lang)).unwrap();
        prop_assert_eq!(finite, regular);
    }

    #[test]
    fn margin_lower_bounds_detectable_budget(
        xs in prop::collection::btree_set(word_strategy(2, 5), 2..5),
    ) {
        let ab = Alphabet::ab();
        let words: BTreeSet<Word> = xs.iter().map(|s| to_word(s, &ab)).collect();
        prop_assume!(words.len() >= 2);
        let lang = FiniteLang::new(ab.clone(), words);
        let margin = error_detection_margin(&lang).unwrap();
        for k in 1..=3usize {
            let rel = EditRelation::new(EditKind::LevenshteinStrict, k).unwrap();
            prop_assert_eq!(margin >= k, is_independent(&lang, rel).independent);
        }
    }
}

#[test]
fn sigma_orbits_match_brute_closure_desk_scale() {
    for alphabet in [Alphabet::ab(), Alphabet::abc()] {
        let max_n = if alphabet.size() == 2 { 6 } else { 4 };
        for n in 1..=max_n {
            for k in 1..=3usize {
                let rel = EditRelation::new(EditKind::Substitute, k).unwrap();
                for w in all_words_of_length(&alphabet, n) {
                    let descriptor = sigma_star(&w, k, &alphabet).unwrap();
                    let symbolic = descriptor.expand(&alphabet).unwrap();
                    let brute = closure_brute(
                        rel,
                        &FiniteLang::new(alphabet.clone(), [w.clone()]),
                        n,
                    )
                    .unwrap();
                    assert!(!brute.truncated);
                    assert_eq!(
                        symbolic.render(),
                        brute.words.render(),
                        "w = {}, k = {k}",
                        w.render(&alphabet)
                    );
                    assert_eq!(
                        descriptor.cardinality(&alphabet),
                        (symbolic.len() as u32).into()
                    );
                }
            }
        }
    }
}

#[test]
fn er_completion_contract_over_small_codes() {
    // every 2-element code drawn from A^{<=3}: complete ones are rejected,
    // the rest complete successfully with verified output
    let ab = Alphabet::ab();
    let pool: Vec<Word> = all_words_up_to(&ab, 3)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let mut completed = 0;
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let lang = FiniteLang::new(ab.clone(), [pool[i].clone(), pool[j].clone()]);
            if !is_code(&lang).unwrap().is_code {
                continue;
            }
            let regular = RegularLang::from_finite(&lang);
            match er_completion(&regular) {
                Ok(done) => {
                    assert!(regular.difference(&done.language).unwrap().is_empty());
                    assert!(is_code_regular(&done.language).unwrap());
                    assert!(done.language.is_complete());
                    completed += 1;
                }
                Err(vlcode::Error::AlreadyComplete) => {
                    let uniform = BernoulliDist::uniform(&ab);
                    assert!(bernoulli_measure(&lang, &uniform).is_one());
                }
                Err(e) => panic!("unexpected error on {}: {e}", lang.render()),
            }
        }
    }
    assert!(completed > 0);
}

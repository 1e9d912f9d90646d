//! Structure theory for closed codes: completion of non-complete regular
//! codes, enumeration and embedding of δ_k-closed codes, and classification
//! plus completion for the substitution-closed families.

use std::collections::{BTreeSet, HashSet};

use num_traits::One;

use crate::codes::{bernoulli_measure, is_code, is_code_regular, BernoulliDist};
use crate::edit::{closure_brute, EditKind, EditRelation, Parity};
use crate::error::{Error, Result};
use crate::indep::{closedness_violation, is_closed};
use crate::langs::{FiniteLang, RegularLang};
use crate::words::{all_words_of_length, is_overlapping_free, make_overlapping_free, Alphabet, Word};

/// The three-part condition under which σ_k-closed codes other than the full
/// cube can exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionD {
    pub k_even: bool,
    pub binary_alphabet: bool,
    /// X ⊄ A^{≤k}
    pub exceeds_k: bool,
}

impl ConditionD {
    pub fn evaluate(lang: &FiniteLang, k: usize) -> Self {
        ConditionD {
            k_even: k % 2 == 0,
            binary_alphabet: lang.alphabet().is_binary(),
            exceeds_k: lang.max_word_len() > k,
        }
    }

    pub fn holds(&self) -> bool {
        self.k_even && self.binary_alphabet && self.exceeds_k
    }
}

/// Structural shape of a closed code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedCodeClassification {
    /// X ⊆ A^{≤k}: closedness is vacuous, no structure forced
    ShortWords,
    /// X = Aⁿ
    UniformFull(usize),
    /// X is one of the two parity halves of Aⁿ (binary alphabets only)
    ParityHalf(usize, Parity),
    NotClosedCode(String),
}

/// Output of [`er_completion`]: the completed code together with the pieces
/// it was assembled from, so Y = X ∪ y(Uy)* can be rendered symbolically.
#[derive(Debug, Clone)]
pub struct ErCompletion {
    pub language: RegularLang,
    /// shortest word outside F(X*)
    pub witness: Word,
    /// the overlapping-free glue word, also outside F(X*)
    pub y: Word,
    /// U = A* \ (X* ∪ A*yA*)
    pub u: RegularLang,
}

/// Completes a non-complete regular code X into the complete code
/// Y = X ∪ y(Uy)* with U = A* \ (X* ∪ A*yA*), for an overlapping-free word
/// y outside F(X*). Both postconditions (Y is a code, Y is complete) are
/// verified on the constructed automaton before returning.
pub fn er_completion(lang: &RegularLang) -> Result<ErCompletion> {
    if !is_code_regular(lang)? {
        return Err(Error::NotACode("input of the completion".into()));
    }
    let witness = match lang.shortest_external_witness() {
        Ok(w) => w,
        Err(Error::LanguageComplete) => return Err(Error::AlreadyComplete),
        Err(e) => return Err(e),
    };
    let alphabet = lang.alphabet().clone();
    let base = witness.repeat(2);
    let glue = make_overlapping_free(&base, &alphabet)?;
    let y = base.concat(&glue);
    if !is_overlapping_free(&y)? {
        return Err(Error::VerificationFailed("y is not overlapping-free".into()));
    }
    let xstar = lang.star();
    if xstar.factor_language().contains(&y) {
        return Err(Error::VerificationFailed("y lies in F(X*)".into()));
    }
    let full = RegularLang::full(alphabet.clone());
    let y_lang = RegularLang::from_finite(&FiniteLang::new(alphabet.clone(), [y.clone()]));
    let around_y = full.concat(&y_lang)?.concat(&full)?;
    let u = full.difference(&xstar.union(&around_y)?)?;
    let tail = y_lang.concat(&u.concat(&y_lang)?.star())?;
    let language = lang.union(&tail)?.minimize();
    if !lang.difference(&language)?.is_empty() {
        return Err(Error::VerificationFailed("X is not contained in Y".into()));
    }
    if !is_code_regular(&language)? {
        return Err(Error::VerificationFailed("completed language is not a code".into()));
    }
    if !language.is_complete() {
        return Err(Error::VerificationFailed("completed language is not complete".into()));
    }
    Ok(ErCompletion {
        language,
        witness,
        y,
        u,
    })
}

/// Lengths a word of a δ_k-closed code may have: [1, k²−k−1] \ {k}.
/// Empty for k = 1, matching the fact that no code is δ₁-closed.
pub fn delta_closed_length_bound(k: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    if k < 2 {
        return out;
    }
    let top = k * k - k - 1;
    for n in 1..=top {
        if n != k {
            out.insert(n);
        }
    }
    out
}

/// Resource bounds for the closed-code searches. Exceeding a bound is a hard
/// error, never a silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct SearchGuards {
    /// cap on the number of admissible candidate words
    pub max_words: usize,
    /// cap on visited search nodes
    pub max_nodes: usize,
}

impl Default for SearchGuards {
    fn default() -> Self {
        SearchGuards {
            max_words: 60,
            max_nodes: 1 << 20,
        }
    }
}

fn word_set(lang: &FiniteLang) -> BTreeSet<Word> {
    lang.words().cloned().collect()
}

/// Generators paired with their closures, restricted to those whose own
/// closure is already a code with admissible word lengths.
fn delta_generators(
    alphabet: &Alphabet,
    k: usize,
    guards: SearchGuards,
) -> Result<Vec<(Word, FiniteLang)>> {
    let lengths = delta_closed_length_bound(k);
    let Some(&max_len) = lengths.iter().max() else {
        return Ok(Vec::new());
    };
    let count: usize = lengths
        .iter()
        .map(|&n| alphabet.size().pow(n as u32))
        .sum();
    if count > guards.max_words {
        return Err(Error::GuardExceeded {
            what: "admissible words",
            bound: guards.max_words,
            actual: count,
        });
    }
    let rel = EditRelation::new(EditKind::Delete, k)?;
    let mut gens = Vec::new();
    for &n in &lengths {
        for g in all_words_of_length(alphabet, n) {
            let closure =
                closure_brute(rel, &FiniteLang::new(alphabet.clone(), [g.clone()]), max_len)?;
            debug_assert!(!closure.truncated);
            let admissible = closure.words.words().all(|w| lengths.contains(&w.len()));
            if admissible && is_code(&closure.words)?.is_code {
                gens.push((g, closure.words));
            }
        }
    }
    Ok(gens)
}

struct UnionSearch<'a> {
    gens: &'a [(Word, FiniteLang)],
    guards: SearchGuards,
    nodes: usize,
    seen: HashSet<BTreeSet<Word>>,
    out: Vec<FiniteLang>,
}

impl UnionSearch<'_> {
    fn run(&mut self, current: &FiniteLang, start: usize) -> Result<()> {
        for j in start..self.gens.len() {
            self.nodes += 1;
            if self.nodes > self.guards.max_nodes {
                return Err(Error::GuardExceeded {
                    what: "search nodes",
                    bound: self.guards.max_nodes,
                    actual: self.nodes,
                });
            }
            let (g, closure) = &self.gens[j];
            if current.contains(g) {
                continue;
            }
            let mut candidate = current.clone();
            for w in closure.words() {
                candidate.insert(w.clone());
            }
            if !is_code(&candidate)?.is_code {
                continue;
            }
            if self.seen.insert(word_set(&candidate)) {
                self.out.push(candidate.clone());
            }
            self.run(&candidate, j + 1)?;
        }
        Ok(())
    }
}

/// Every nonempty δ_k-closed code over A, in deterministic order (depth-first
/// over generator unions, generators in length-then-lex order). Each emitted
/// set is re-validated: a code, δ_k-closed, all lengths admissible.
pub fn enumerate_delta_closed_codes(
    alphabet: &Alphabet,
    k: usize,
    guards: SearchGuards,
) -> Result<Vec<FiniteLang>> {
    if k < 1 {
        return Err(Error::BadBudget);
    }
    let gens = delta_generators(alphabet, k, guards)?;
    let mut search = UnionSearch {
        gens: &gens,
        guards,
        nodes: 0,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    search.run(&FiniteLang::empty(alphabet.clone()), 0)?;
    let rel = EditRelation::new(EditKind::Delete, k)?;
    let lengths = delta_closed_length_bound(k);
    for x in &search.out {
        let valid = is_code(x)?.is_code
            && is_closed(x, rel)
            && x.words().all(|w| lengths.contains(&w.len()));
        if !valid {
            return Err(Error::VerificationFailed(format!(
                "emitted set {} fails re-validation",
                x.render()
            )));
        }
    }
    Ok(search.out)
}

fn delta_preconditions(lang: &FiniteLang, k: usize) -> Result<()> {
    let report = is_code(lang)?;
    if !report.is_code {
        return Err(Error::NotACode(format!(
            "ambiguous word {:?}",
            report.ambiguous_word()
        )));
    }
    let rel = EditRelation::new(EditKind::Delete, k)?;
    if !is_closed(lang, rel) {
        return Err(Error::Precondition(format!("input is not {rel}-closed")));
    }
    let lengths = delta_closed_length_bound(k);
    if !lang.words().all(|w| lengths.contains(&w.len())) {
        return Err(Error::Precondition(
            "input word lengths leave the admissible range".into(),
        ));
    }
    Ok(())
}

/// All complete δ_k-closed codes containing X: the union search restarted
/// from X, filtered by uniform measure 1. Possibly empty.
pub fn embed_delta_closed(
    lang: &FiniteLang,
    k: usize,
    guards: SearchGuards,
) -> Result<Vec<FiniteLang>> {
    delta_preconditions(lang, k)?;
    let gens = delta_generators(lang.alphabet(), k, guards)?;
    let mut search = UnionSearch {
        gens: &gens,
        guards,
        nodes: 0,
        seen: HashSet::new(),
        out: vec![lang.clone()],
    };
    search.seen.insert(word_set(lang));
    search.run(lang, 0)?;
    let uniform = BernoulliDist::uniform(lang.alphabet());
    Ok(search
        .out
        .into_iter()
        .filter(|x| bernoulli_measure(x, &uniform).is_one())
        .collect())
}

/// Concrete evidence that a code cannot be closed under the given relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    /// the codeword the argument starts from
    pub base: Word,
    /// a word forced into the closure but impossible inside the code
    pub witness: Word,
    pub description: String,
}

/// For the insertion kinds and Δ_k, produces the word that witnesses the
/// impossibility of a closed code: x^{k+1} ∈ ι_k*(x) collides with the
/// unique-factorization property, and ε ∈ δ₁*(x) ⊆ Δ_k*(x) can belong to no
/// code.
pub fn assert_no_closed_code(lang: &FiniteLang, rel: EditRelation) -> Result<ClosureViolation> {
    if !matches!(
        rel.kind,
        EditKind::Insert | EditKind::InsertUpto | EditKind::DeleteUpto
    ) {
        return Err(Error::UnsupportedRelation(
            rel.to_string(),
            "closed codes are only impossible for iota, Iota and Delta kinds".into(),
        ));
    }
    let report = is_code(lang)?;
    if !report.is_code {
        return Err(Error::NotACode(format!(
            "ambiguous word {:?}",
            report.ambiguous_word()
        )));
    }
    let Some(base) = lang.words().next().cloned() else {
        return Err(Error::Precondition("input language is empty".into()));
    };
    let alphabet = lang.alphabet();
    let k = rel.budget;
    match rel.kind {
        EditKind::Insert | EditKind::InsertUpto => {
            let witness = base.repeat(k + 1);
            let name = if rel.kind == EditKind::Insert {
                "iota"
            } else {
                "Iota"
            };
            let description = format!(
                "{} = {}^{} lies in {}_{}*({}), so a closed code would contain a word with two factorizations",
                witness.render(alphabet),
                base.render(alphabet),
                k + 1,
                name,
                k,
                base.render(alphabet),
            );
            Ok(ClosureViolation {
                base,
                witness,
                description,
            })
        }
        EditKind::DeleteUpto => {
            let description = format!(
                "the empty word lies in delta_1*({}) and delta_1 ⊆ Delta_{}, but no code contains the empty word",
                base.render(alphabet),
                k,
            );
            Ok(ClosureViolation {
                base,
                witness: Word::empty(),
                description,
            })
        }
        _ => unreachable!(),
    }
}

fn uniform_cube(alphabet: &Alphabet, n: usize) -> FiniteLang {
    FiniteLang::new(alphabet.clone(), all_words_of_length(alphabet, n))
}

fn parity_shape(lang: &FiniteLang, n: usize) -> Option<Parity> {
    if !lang.alphabet().is_binary() {
        return None;
    }
    if lang.len() != 1 << (n - 1) {
        return None;
    }
    let mut parities = lang.words().map(|w| Parity::of(w.count(1)));
    let first = parities.next()?;
    parities.all(|p| p == first).then_some(first)
}

/// Structural shape of a σ_k-closed code: short words, a parity half of Aⁿ,
/// or Aⁿ itself. Non-codes and non-closed inputs are reported in the result.
pub fn classify_sigma_closed(lang: &FiniteLang, k: usize) -> Result<ClosedCodeClassification> {
    if k < 1 {
        return Err(Error::BadBudget);
    }
    let report = is_code(lang)?;
    if !report.is_code {
        return Ok(ClosedCodeClassification::NotClosedCode(format!(
            "not a code: {} is ambiguous",
            report
                .ambiguous_word()
                .map(|w| w.render(lang.alphabet()))
                .unwrap_or_default()
        )));
    }
    let rel = EditRelation::new(EditKind::Substitute, k)?;
    if let Some((x, y)) = closedness_violation(lang, rel) {
        return Ok(ClosedCodeClassification::NotClosedCode(format!(
            "sigma_{}({}) contains {} which is missing",
            k,
            x.render(lang.alphabet()),
            y.render(lang.alphabet()),
        )));
    }
    if lang.max_word_len() <= k {
        return Ok(ClosedCodeClassification::ShortWords);
    }
    let n = lang.max_word_len();
    if lang.words().any(|w| w.len() != n) {
        return Ok(ClosedCodeClassification::NotClosedCode(
            "mixed word lengths beyond the budget".into(),
        ));
    }
    if word_set(lang) == word_set(&uniform_cube(lang.alphabet(), n)) {
        return Ok(ClosedCodeClassification::UniformFull(n));
    }
    if let Some(parity) = parity_shape(lang, n) {
        // only reachable under the three-part condition
        debug_assert!(ConditionD::evaluate(lang, k).holds());
        return Ok(ClosedCodeClassification::ParityHalf(n, parity));
    }
    Err(Error::VerificationFailed(
        "sigma-closed code with unrecognized shape".into(),
    ))
}

/// All complete σ_k-closed codes containing a non-complete σ_k-closed code
/// X. Within A^{≤k} the search runs over orbit-generated unions; beyond the
/// budget the full cube Aⁿ is the only candidate shape.
pub fn sigma_closed_completion(
    lang: &FiniteLang,
    k: usize,
    guards: SearchGuards,
) -> Result<Vec<FiniteLang>> {
    if k < 1 {
        return Err(Error::BadBudget);
    }
    let report = is_code(lang)?;
    if !report.is_code {
        return Err(Error::NotACode(format!(
            "ambiguous word {:?}",
            report.ambiguous_word()
        )));
    }
    let rel = EditRelation::new(EditKind::Substitute, k)?;
    if let Some((x, _)) = closedness_violation(lang, rel) {
        return Err(Error::Precondition(format!(
            "input is not sigma_{}-closed at {}",
            k,
            x.render(lang.alphabet()),
        )));
    }
    let alphabet = lang.alphabet().clone();
    let uniform = BernoulliDist::uniform(&alphabet);
    if bernoulli_measure(lang, &uniform).is_one() {
        return Err(Error::AlreadyComplete);
    }
    if lang.max_word_len() <= k && !lang.is_empty() {
        let count: usize = (1..=k).map(|n| alphabet.size().pow(n as u32)).sum();
        if count > guards.max_words {
            return Err(Error::GuardExceeded {
                what: "admissible words",
                bound: guards.max_words,
                actual: count,
            });
        }
        let mut gens = Vec::new();
        for n in 1..=k {
            for g in all_words_of_length(&alphabet, n) {
                let closure =
                    closure_brute(rel, &FiniteLang::new(alphabet.clone(), [g.clone()]), k)?;
                debug_assert!(!closure.truncated);
                if is_code(&closure.words)?.is_code {
                    gens.push((g, closure.words));
                }
            }
        }
        let mut search = UnionSearch {
            gens: &gens,
            guards,
            nodes: 0,
            seen: HashSet::new(),
            out: Vec::new(),
        };
        search.seen.insert(word_set(lang));
        search.run(lang, 0)?;
        return Ok(search
            .out
            .into_iter()
            .filter(|x| bernoulli_measure(x, &uniform).is_one())
            .collect());
    }
    let n = lang.max_word_len();
    if lang.is_empty() || lang.words().any(|w| w.len() != n) {
        return Ok(Vec::new());
    }
    let cube_size = alphabet
        .size()
        .checked_pow(n as u32)
        .filter(|&c| c <= 4096)
        .ok_or(Error::GuardExceeded {
            what: "cube expansion",
            bound: 4096,
            actual: usize::MAX,
        })?;
    let _ = cube_size;
    let cube = uniform_cube(&alphabet, n);
    debug_assert!(is_closed(&cube, rel));
    debug_assert!(bernoulli_measure(&cube, &uniform).is_one());
    Ok(vec![cube])
}

/// Classification for Σ_k- and Λ_k-closedness of a code: the only closed
/// shape is the full cube Aⁿ, and for Λ_k not even that one survives (its
/// insertion images leave any finite set).
pub fn classify_composite_closed(
    lang: &FiniteLang,
    rel: EditRelation,
) -> Result<ClosedCodeClassification> {
    if !matches!(rel.kind, EditKind::SubstituteUpto | EditKind::Levenshtein) {
        return Err(Error::UnsupportedRelation(
            rel.to_string(),
            "composite classification covers Sigma and Lambda kinds".into(),
        ));
    }
    let report = is_code(lang)?;
    if !report.is_code {
        return Ok(ClosedCodeClassification::NotClosedCode(format!(
            "not a code: {} is ambiguous",
            report
                .ambiguous_word()
                .map(|w| w.render(lang.alphabet()))
                .unwrap_or_default()
        )));
    }
    if lang.is_empty() {
        return Ok(ClosedCodeClassification::NotClosedCode(
            "empty language".into(),
        ));
    }
    if let Some((x, y)) = closedness_violation(lang, rel) {
        return Ok(ClosedCodeClassification::NotClosedCode(format!(
            "{}({}) contains {} which is missing",
            rel,
            x.render(lang.alphabet()),
            y.render(lang.alphabet()),
        )));
    }
    // a closed code here must be the full cube of its common length
    let n = lang.max_word_len();
    if word_set(lang) == word_set(&uniform_cube(lang.alphabet(), n)) {
        Ok(ClosedCodeClassification::UniformFull(n))
    } else {
        Err(Error::VerificationFailed(
            "composite-closed code that is not a full cube".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::apply;
    use crate::words::all_words_up_to;

    fn fl(ab: &Alphabet, words: &[&str]) -> FiniteLang {
        FiniteLang::parse(ab.clone(), words).unwrap()
    }

    fn rel(kind: EditKind, k: usize) -> EditRelation {
        EditRelation::new(kind, k).unwrap()
    }

    fn x42(ab: &Alphabet) -> FiniteLang {
        fl(ab, &["aa", "ab", "bb", "aaaab", "abbbb"])
    }

    #[test]
    fn length_bound_examples() {
        assert!(delta_closed_length_bound(1).is_empty());
        assert_eq!(delta_closed_length_bound(2), BTreeSet::from([1]));
        assert_eq!(delta_closed_length_bound(3), BTreeSet::from([1, 2, 4, 5]));
    }

    #[test]
    fn er_completion_examples() {
        let ab = Alphabet::ab();
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        let done = er_completion(&z).unwrap();
        assert!(is_code_regular(&done.language).unwrap());
        assert!(done.language.is_complete());
        assert!(z.difference(&done.language).unwrap().is_empty());

        let aa = RegularLang::from_finite(&fl(&ab, &["aa"]));
        let done = er_completion(&aa).unwrap();
        assert_eq!(done.witness, Word::parse("b", &ab).unwrap());
        assert!(done.language.is_complete());
        assert!(is_code_regular(&done.language).unwrap());
        assert!(done.language.contains(&Word::parse("aa", &ab).unwrap()));

        let a2 = RegularLang::from_finite(&fl(&ab, &["aa", "ab", "ba", "bb"]));
        assert_eq!(er_completion(&a2).unwrap_err(), Error::AlreadyComplete);
        let bad = RegularLang::from_finite(&fl(&ab, &["a", "ab", "b"]));
        assert!(matches!(er_completion(&bad), Err(Error::NotACode(_))));
    }

    #[test]
    fn enumerate_k1_and_k2() {
        let ab = Alphabet::ab();
        assert!(enumerate_delta_closed_codes(&ab, 1, SearchGuards::default())
            .unwrap()
            .is_empty());
        let found = enumerate_delta_closed_codes(&ab, 2, SearchGuards::default()).unwrap();
        let sets: BTreeSet<BTreeSet<Word>> = found.iter().map(word_set).collect();
        let expected: BTreeSet<BTreeSet<Word>> = [
            fl(&ab, &["a"]),
            fl(&ab, &["b"]),
            fl(&ab, &["a", "b"]),
        ]
        .iter()
        .map(word_set)
        .collect();
        assert_eq!(sets, expected);
    }

    #[test]
    fn enumerate_k3_contains_the_known_closed_code() {
        let ab = Alphabet::ab();
        let found = enumerate_delta_closed_codes(&ab, 3, SearchGuards::default()).unwrap();
        let target = word_set(&x42(&ab));
        assert!(found.iter().any(|x| word_set(x) == target));
        let rel3 = rel(EditKind::Delete, 3);
        for x in &found {
            assert!(is_code(x).unwrap().is_code);
            assert!(is_closed(x, rel3));
        }
    }

    #[test]
    fn enumerate_k3_matches_independent_oracle() {
        // independent path: a delta_3-closed code is a short part S ⊆ A^{≤2}
        // plus length-5 words whose delta_3 image lies inside S (length-4
        // words force their letters into the set, which kills the code
        // property, and the oracle confirms none are emitted)
        let ab = Alphabet::ab();
        let rel3 = rel(EditKind::Delete, 3);
        let shorts: Vec<Word> = all_words_up_to(&ab, 2)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let longs = all_words_of_length(&ab, 5);
        let mut oracle: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
        for mask in 0u32..(1 << shorts.len()) {
            let core: BTreeSet<Word> = shorts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect();
            let core_lang = FiniteLang::new(ab.clone(), core.clone());
            if !is_code(&core_lang).unwrap().is_code {
                continue;
            }
            let eligible: Vec<&Word> = longs
                .iter()
                .filter(|g| {
                    if !apply(rel3, g, &ab).iter().all(|img| core.contains(img)) {
                        return false;
                    }
                    let mut with_g = core.clone();
                    with_g.insert((*g).clone());
                    is_code(&FiniteLang::new(ab.clone(), with_g)).unwrap().is_code
                })
                .collect();
            assert!(eligible.len() <= 16, "oracle eligible set unexpectedly large");
            for lmask in 0u32..(1 << eligible.len()) {
                let mut cand = core.clone();
                for (i, g) in eligible.iter().enumerate() {
                    if lmask >> i & 1 == 1 {
                        cand.insert((*g).clone());
                    }
                }
                if cand.is_empty() {
                    continue;
                }
                let cand_lang = FiniteLang::new(ab.clone(), cand.clone());
                if is_code(&cand_lang).unwrap().is_code {
                    oracle.insert(cand);
                }
            }
        }
        let found: BTreeSet<BTreeSet<Word>> =
            enumerate_delta_closed_codes(&ab, 3, SearchGuards::default())
                .unwrap()
                .iter()
                .map(word_set)
                .collect();
        assert_eq!(found, oracle);
        assert!(found.iter().all(|s| s.iter().all(|w| w.len() != 4)));
    }

    #[test]
    fn guard_refuses_large_searches() {
        let ab = Alphabet::ab();
        let err = enumerate_delta_closed_codes(&ab, 4, SearchGuards::default()).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn embed_examples() {
        let ab = Alphabet::ab();
        let guards = SearchGuards::default();
        assert!(embed_delta_closed(&x42(&ab), 3, guards).unwrap().is_empty());
        let found = embed_delta_closed(&fl(&ab, &["a"]), 2, guards).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(word_set(&found[0]), word_set(&fl(&ab, &["a", "b"])));
        let found = embed_delta_closed(&fl(&ab, &["a", "b"]), 2, guards).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(word_set(&found[0]), word_set(&fl(&ab, &["a", "b"])));
        // non-closed input rejected
        assert!(embed_delta_closed(&fl(&ab, &["aaaab"]), 3, guards).is_err());
    }

    #[test]
    fn no_closed_code_witnesses() {
        let ab = Alphabet::ab();
        let x = fl(&ab, &["ab"]);
        let v = assert_no_closed_code(&x, rel(EditKind::Insert, 1)).unwrap();
        assert_eq!(v.witness, Word::parse("abab", &ab).unwrap());
        // closure_brute confirms the witness within its cap
        let closure = closure_brute(rel(EditKind::Insert, 1), &x, 4).unwrap();
        assert!(closure.words.contains(&v.witness));

        let v = assert_no_closed_code(&fl(&ab, &["a"]), rel(EditKind::DeleteUpto, 1)).unwrap();
        assert!(v.witness.is_empty());

        let x = fl(&ab, &["baa"]);
        let v = assert_no_closed_code(&x, rel(EditKind::InsertUpto, 2)).unwrap();
        assert_eq!(v.witness, Word::parse("baa", &ab).unwrap().repeat(3));
        let closure = closure_brute(rel(EditKind::Insert, 2), &x, 9).unwrap();
        assert!(closure.words.contains(&v.witness));

        assert!(assert_no_closed_code(&x, rel(EditKind::Delete, 1)).is_err());
    }

    #[test]
    fn sigma_classification_examples() {
        let bin = Alphabet::binary();
        let even4: Vec<String> = all_words_of_length(&bin, 4)
            .into_iter()
            .filter(|w| w.count(1) % 2 == 0)
            .map(|w| w.render(&bin))
            .collect();
        let refs: Vec<&str> = even4.iter().map(|s| s.as_str()).collect();
        let half = fl(&bin, &refs);
        assert_eq!(half.len(), 8);
        assert_eq!(
            classify_sigma_closed(&half, 2).unwrap(),
            ClosedCodeClassification::ParityHalf(4, Parity::Even)
        );

        let abc = Alphabet::abc();
        let cube3 = uniform_cube(&abc, 3);
        assert_eq!(
            classify_sigma_closed(&cube3, 2).unwrap(),
            ClosedCodeClassification::UniformFull(3)
        );

        assert_eq!(
            classify_sigma_closed(&fl(&bin, &["00", "11"]), 2).unwrap(),
            ClosedCodeClassification::ShortWords
        );

        // non-closed and non-code inputs are carried in the result
        assert!(matches!(
            classify_sigma_closed(&fl(&bin, &["000"]), 2).unwrap(),
            ClosedCodeClassification::NotClosedCode(_)
        ));
        assert!(matches!(
            classify_sigma_closed(&fl(&bin, &["0", "00"]), 2).unwrap(),
            ClosedCodeClassification::NotClosedCode(_)
        ));
    }

    #[test]
    fn parity_half_is_never_complete() {
        let bin = Alphabet::binary();
        for n in 3..=5 {
            for keep_even in [true, false] {
                let words: Vec<Word> = all_words_of_length(&bin, n)
                    .into_iter()
                    .filter(|w| (w.count(1) % 2 == 0) == keep_even)
                    .collect();
                let half = FiniteLang::new(bin.clone(), words);
                let uniform = BernoulliDist::uniform(&bin);
                assert!(!bernoulli_measure(&half, &uniform).is_one());
            }
        }
    }

    #[test]
    fn sigma_completion_examples() {
        let bin = Alphabet::binary();
        let guards = SearchGuards::default();
        let found = sigma_closed_completion(&fl(&bin, &["00", "11"]), 2, guards).unwrap();
        let cube2 = uniform_cube(&bin, 2);
        assert_eq!(found.len(), 1);
        assert_eq!(word_set(&found[0]), word_set(&cube2));

        let even4: Vec<String> = all_words_of_length(&bin, 4)
            .into_iter()
            .filter(|w| w.count(1) % 2 == 0)
            .map(|w| w.render(&bin))
            .collect();
        let refs: Vec<&str> = even4.iter().map(|s| s.as_str()).collect();
        let found = sigma_closed_completion(&fl(&bin, &refs), 2, guards).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(word_set(&found[0]), word_set(&uniform_cube(&bin, 4)));

        assert_eq!(
            sigma_closed_completion(&cube2, 2, guards).unwrap_err(),
            Error::AlreadyComplete
        );
        assert!(sigma_closed_completion(&fl(&bin, &["000"]), 2, guards).is_err());
    }

    #[test]
    fn composite_classification_examples() {
        let ab = Alphabet::ab();
        let sigma2 = rel(EditKind::SubstituteUpto, 2);
        assert_eq!(
            classify_composite_closed(&uniform_cube(&ab, 3), sigma2).unwrap(),
            ClosedCodeClassification::UniformFull(3)
        );
        let even4: Vec<String> = all_words_of_length(&ab, 4)
            .into_iter()
            .filter(|w| w.count(1) % 2 == 0)
            .map(|w| w.render(&ab))
            .collect();
        let refs: Vec<&str> = even4.iter().map(|s| s.as_str()).collect();
        assert!(matches!(
            classify_composite_closed(&fl(&ab, &refs), sigma2).unwrap(),
            ClosedCodeClassification::NotClosedCode(_)
        ));
        assert!(matches!(
            classify_composite_closed(&fl(&ab, &["a"]), rel(EditKind::SubstituteUpto, 1)).unwrap(),
            ClosedCodeClassification::NotClosedCode(_)
        ));
        // insertion images always leave a finite set
        assert!(matches!(
            classify_composite_closed(&uniform_cube(&ab, 2), rel(EditKind::Levenshtein, 1))
                .unwrap(),
            ClosedCodeClassification::NotClosedCode(_)
        ));
        assert!(classify_composite_closed(&fl(&ab, &["a"]), rel(EditKind::Delete, 1)).is_err());
    }
}

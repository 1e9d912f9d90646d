//! τ-independence and τ-closedness, the single-word extension witness for
//! non-complete independent codes, and maximality decisions for independent
//! regular codes.

use std::collections::{HashSet, VecDeque};

use crate::codes::{is_code, is_code_regular};
use crate::edit::{apply, apply_set, levenshtein, EditKind, EditRelation};
use crate::error::{Error, Result};
use crate::langs::{Dfa, FiniteLang, RegularLang};
use crate::words::{make_overlapping_free, Word};

/// Outcome of an independence test; the violation is a pair (x, y) of
/// codewords with y ∈ τ(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    pub violation: Option<(Word, Word)>,
}

impl IndependenceReport {
    fn ok() -> Self {
        IndependenceReport {
            independent: true,
            violation: None,
        }
    }

    fn violated(x: Word, y: Word) -> Self {
        IndependenceReport {
            independent: false,
            violation: Some((x, y)),
        }
    }
}

/// τ(X) ∩ X = ∅, checked pointwise on a finite set.
///
/// For Λ_k with k ≥ 2 every word satisfies x ∈ σ₁²(x) ⊆ Λ_k(x), so no
/// nonempty set is independent and (x, x) is reported directly.
pub fn is_independent(lang: &FiniteLang, rel: EditRelation) -> IndependenceReport {
    if rel.kind == EditKind::Levenshtein && rel.budget >= 2 {
        if let Some(x) = lang.words().next() {
            return IndependenceReport::violated(x.clone(), x.clone());
        }
        return IndependenceReport::ok();
    }
    let alphabet = lang.alphabet();
    for x in lang.words() {
        for y in apply(rel, x, alphabet) {
            if lang.contains(&y) {
                return IndependenceReport::violated(x.clone(), y);
            }
        }
    }
    IndependenceReport::ok()
}

/// τ(X) ⊆ X, checked pointwise. By closure iteration this is equivalent to
/// τ*-closedness.
pub fn is_closed(lang: &FiniteLang, rel: EditRelation) -> bool {
    apply_set(rel, lang).is_subset(lang)
}

/// A pair (x, y) with x ∈ X, y ∈ τ(x) and y ∉ X, if closedness fails.
pub fn closedness_violation(lang: &FiniteLang, rel: EditRelation) -> Option<(Word, Word)> {
    let alphabet = lang.alphabet();
    for x in lang.words() {
        for y in apply(rel, x, alphabet) {
            if !lang.contains(&y) {
                return Some((x.clone(), y));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum PairOp {
    Delete,
    Insert,
    Substitute,
}

/// Is there a pair x, y ∈ L with y obtained from x by `ops` applications of
/// the single operation `op`, for some ops in [lo, hi]? Reachability over
/// pairs of automaton states with an operation counter.
fn exists_pair_single_op(d: &Dfa, op: PairOp, lo: usize, hi: usize) -> bool {
    let mut seen: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut queue: VecDeque<(usize, usize, usize)> = VecDeque::new();
    let start = (d.initial, d.initial, 0usize);
    seen.insert(start);
    queue.push_back(start);
    while let Some((p, q, used)) = queue.pop_front() {
        if d.accepting[p] && d.accepting[q] && used >= lo && used <= hi {
            return true;
        }
        let mut push = |state: (usize, usize, usize), queue: &mut VecDeque<_>| {
            if seen.insert(state) {
                queue.push_back(state);
            }
        };
        for s in 0..d.nsyms {
            // matched letter on both tapes
            push((d.trans[p][s], d.trans[q][s], used), &mut queue);
            if used < hi {
                match op {
                    PairOp::Delete => push((d.trans[p][s], q, used + 1), &mut queue),
                    PairOp::Insert => push((p, d.trans[q][s], used + 1), &mut queue),
                    PairOp::Substitute => {
                        for t in 0..d.nsyms {
                            if t != s {
                                push((d.trans[p][s], d.trans[q][t], used + 1), &mut queue);
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Pending {
    None,
    /// the next letter consumed on the x tape must differ from this one
    XNot(u8),
    /// likewise for the y tape
    YNot(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum LevState {
    /// both tapes still read the common prefix
    Prefix(usize, usize),
    /// past the first difference; counts edit operations used
    Aligned(usize, usize, usize, Pending),
}

/// Is there a pair x ≠ y ∈ L with levenshtein(x, y) ≤ k?
///
/// Words are aligned on their longest common prefix; the divergence step
/// pins the first position where they differ (or a length difference), so
/// identity pairs are never counted even though edit scripts of nonzero
/// length can map a word to itself.
fn exists_distinct_pair_within(d: &Dfa, k: usize) -> bool {
    let mut seen: HashSet<LevState> = HashSet::new();
    let mut queue: VecDeque<LevState> = VecDeque::new();
    let start = LevState::Prefix(d.initial, d.initial);
    seen.insert(start);
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        if let LevState::Aligned(p, q, _, _) = state {
            if d.accepting[p] && d.accepting[q] {
                return true;
            }
        }
        let mut push = |state: LevState, queue: &mut VecDeque<_>| {
            if seen.insert(state) {
                queue.push_back(state);
            }
        };
        match state {
            LevState::Prefix(p, q) => {
                for a in 0..d.nsyms {
                    push(LevState::Prefix(d.trans[p][a], d.trans[q][a]), &mut queue);
                    // divergence by substitution
                    for b in 0..d.nsyms {
                        if a != b {
                            push(
                                LevState::Aligned(d.trans[p][a], d.trans[q][b], 1, Pending::None),
                                &mut queue,
                            );
                        }
                    }
                    // divergence by deletion: y must not start its suffix with a
                    push(
                        LevState::Aligned(d.trans[p][a], q, 1, Pending::YNot(a as u8)),
                        &mut queue,
                    );
                    // divergence by insertion: x must not start its suffix with a
                    push(
                        LevState::Aligned(p, d.trans[q][a], 1, Pending::XNot(a as u8)),
                        &mut queue,
                    );
                }
            }
            LevState::Aligned(p, q, used, pending) => {
                for a in 0..d.nsyms {
                    // match consumes both tapes, discharging any pending guard
                    let allowed = match pending {
                        Pending::None => true,
                        Pending::XNot(c) | Pending::YNot(c) => a as u8 != c,
                    };
                    if allowed {
                        push(
                            LevState::Aligned(d.trans[p][a], d.trans[q][a], used, Pending::None),
                            &mut queue,
                        );
                    }
                    if used < k {
                        // substitution consumes both tapes
                        for b in 0..d.nsyms {
                            if a == b {
                                continue;
                            }
                            let allowed = match pending {
                                Pending::None => true,
                                Pending::XNot(c) => a as u8 != c,
                                Pending::YNot(c) => b as u8 != c,
                            };
                            if allowed {
                                push(
                                    LevState::Aligned(
                                        d.trans[p][a],
                                        d.trans[q][b],
                                        used + 1,
                                        Pending::None,
                                    ),
                                    &mut queue,
                                );
                            }
                        }
                        // deletion consumes the x tape only
                        let (allowed, next_pending) = match pending {
                            Pending::None => (true, Pending::None),
                            Pending::XNot(c) => (a as u8 != c, Pending::None),
                            Pending::YNot(c) => (true, Pending::YNot(c)),
                        };
                        if allowed {
                            push(
                                LevState::Aligned(d.trans[p][a], q, used + 1, next_pending),
                                &mut queue,
                            );
                        }
                        // insertion consumes the y tape only
                        let (allowed, next_pending) = match pending {
                            Pending::None => (true, Pending::None),
                            Pending::YNot(c) => (a as u8 != c, Pending::None),
                            Pending::XNot(c) => (true, Pending::XNot(c)),
                        };
                        if allowed {
                            push(
                                LevState::Aligned(p, d.trans[q][a], used + 1, next_pending),
                                &mut queue,
                            );
                        }
                    }
                }
            }
        }
    }
    false
}

/// Decides τ(X) ∩ X = ∅ for a regular X by reachability on a pairing
/// automaton; all eight relation kinds are supported.
pub fn is_independent_regular(lang: &RegularLang, rel: EditRelation) -> Result<bool> {
    let min = lang.minimize();
    let d = min.dfa();
    let k = rel.budget;
    let found = match rel.kind {
        EditKind::Delete => exists_pair_single_op(d, PairOp::Delete, k, k),
        EditKind::Insert => exists_pair_single_op(d, PairOp::Insert, k, k),
        EditKind::Substitute => exists_pair_single_op(d, PairOp::Substitute, k, k),
        EditKind::DeleteUpto => exists_pair_single_op(d, PairOp::Delete, 1, k),
        EditKind::InsertUpto => exists_pair_single_op(d, PairOp::Insert, 1, k),
        EditKind::SubstituteUpto => exists_pair_single_op(d, PairOp::Substitute, 1, k),
        EditKind::Levenshtein => {
            if k >= 2 {
                // x ∈ Λ_k(x): only the empty language is independent
                !lang.is_empty()
            } else {
                exists_distinct_pair_within(d, 1)
            }
        }
        EditKind::LevenshteinStrict => exists_distinct_pair_within(d, k),
    };
    Ok(!found)
}

fn component_budget(rel: EditRelation) -> usize {
    rel.budget
}

fn check_extension_kinds(rel: EditRelation) -> Result<()> {
    if rel.kind == EditKind::Levenshtein {
        return Err(Error::UnsupportedRelation(
            rel.to_string(),
            "no Λ_k-independent set exists for k ≥ 2; use lambda-strict".into(),
        ));
    }
    Ok(())
}

/// For a non-complete rel-independent code X, builds the word y = w^{k+1}·u
/// (w the shortest word outside F(X*), u the canonical overlapping-free
/// completion) whose addition keeps X a rel-independent code. All guaranteed
/// properties are re-verified before returning.
pub fn independent_extension_witness(lang: &FiniteLang, rel: EditRelation) -> Result<Word> {
    check_extension_kinds(rel)?;
    let report = is_code(lang)?;
    if !report.is_code {
        return Err(Error::NotACode(format!(
            "ambiguous word {:?}",
            report.ambiguous_word()
        )));
    }
    if !is_independent(lang, rel).independent {
        return Err(Error::Precondition(format!(
            "input is not {rel}-independent"
        )));
    }
    let regular = RegularLang::from_finite(lang);
    let witness = match regular.shortest_external_witness() {
        Ok(w) => w,
        Err(Error::LanguageComplete) => return Err(Error::AlreadyComplete),
        Err(e) => return Err(e),
    };
    let k = component_budget(rel);
    let base = witness.repeat(k + 1);
    let u = make_overlapping_free(&base, lang.alphabet())?;
    let y = base.concat(&u);

    // verification of the construction's guarantees
    let mut extended = lang.clone();
    extended.insert(y.clone());
    let ext_report = is_code(&extended)?;
    if !ext_report.is_code {
        return Err(Error::VerificationFailed(format!(
            "X ∪ {{{}}} is not a code",
            y.render(lang.alphabet())
        )));
    }
    if !is_independent(&extended, rel).independent {
        return Err(Error::VerificationFailed(format!(
            "X ∪ {{{}}} is not {rel}-independent",
            y.render(lang.alphabet())
        )));
    }
    Ok(y)
}

/// A rel-independent regular code is maximal among rel-independent codes
/// iff it is complete: completeness blocks any extension, and a non-complete
/// one extends by [`independent_extension_witness`].
pub fn is_maximal_independent(lang: &RegularLang, rel: EditRelation) -> Result<bool> {
    check_extension_kinds(rel)?;
    if !is_code_regular(lang)? {
        return Err(Error::NotACode("input must be a code".into()));
    }
    if !is_independent_regular(lang, rel)? {
        return Err(Error::Precondition(format!(
            "input is not {rel}-independent"
        )));
    }
    Ok(lang.is_complete())
}

/// The largest k for which X is Λ̲_k-independent: the minimal pairwise
/// Levenshtein distance among distinct codewords, minus one.
pub fn error_detection_margin(lang: &FiniteLang) -> Result<usize> {
    if lang.len() < 2 {
        return Err(Error::Precondition(
            "error detection margin needs at least two words".into(),
        ));
    }
    let words: Vec<&Word> = lang.words().collect();
    let mut min = usize::MAX;
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            min = min.min(levenshtein(x, y));
        }
    }
    Ok(min - 1)
}

//! Edit relations as executable set-valued maps, Levenshtein distance, and
//! the substitution orbit engine with its structural characterization plus a
//! brute-force closure oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::langs::FiniteLang;
use crate::words::{complement_word, Alphabet, Word};

/// The eight relation kinds: exactly-k deletion/insertion/substitution, their
/// at-most-k unions, and the k-fold union of single edits (with and without
/// the identity pairs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditKind {
    Delete,
    Insert,
    Substitute,
    DeleteUpto,
    InsertUpto,
    SubstituteUpto,
    Levenshtein,
    LevenshteinStrict,
}

impl EditKind {
    pub fn is_length_preserving(self) -> bool {
        matches!(self, EditKind::Substitute | EditKind::SubstituteUpto)
    }

    pub fn is_length_increasing(self) -> bool {
        matches!(
            self,
            EditKind::Insert | EditKind::InsertUpto | EditKind::Levenshtein
                | EditKind::LevenshteinStrict
        )
    }
}

impl fmt::Display for EditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EditKind::Delete => "delta",
            EditKind::Insert => "iota",
            EditKind::Substitute => "sigma",
            EditKind::DeleteUpto => "delta-upto",
            EditKind::InsertUpto => "iota-upto",
            EditKind::SubstituteUpto => "sigma-upto",
            EditKind::Levenshtein => "lambda",
            EditKind::LevenshteinStrict => "lambda-strict",
        };
        write!(f, "{name}")
    }
}

/// A relation descriptor: kind plus budget k ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EditRelation {
    pub kind: EditKind,
    pub budget: usize,
}

impl EditRelation {
    pub fn new(kind: EditKind, budget: usize) -> Result<Self> {
        if budget < 1 {
            return Err(Error::BadBudget);
        }
        Ok(EditRelation { kind, budget })
    }
}

impl fmt::Display for EditRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.budget)
    }
}

/// All k-element subsets of 0..n, each ascending, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still move up
        let mut i = k;
        while i > 0 && current[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// δ_k(w): subsequences of w of length |w| − k; empty when |w| < k.
fn delete_exact(w: &Word, k: usize) -> BTreeSet<Word> {
    let n = w.len();
    let mut out = BTreeSet::new();
    if n < k {
        return out;
    }
    for deleted in combinations(n, k) {
        let mut syms = Vec::with_capacity(n - k);
        let mut cursor = deleted.iter().peekable();
        for (i, &s) in w.symbols().iter().enumerate() {
            if cursor.peek() == Some(&&i) {
                cursor.next();
            } else {
                syms.push(s);
            }
        }
        out.insert(Word::from_indices(syms));
    }
    out
}

fn insert_one(w: &Word, alphabet: &Alphabet) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for pos in 0..=w.len() {
        for s in alphabet.indices() {
            let mut syms = w.symbols().to_vec();
            syms.insert(pos, s);
            out.insert(Word::from_indices(syms));
        }
    }
    out
}

/// ι_k(w): supersequences of w of length |w| + k.
fn insert_exact(w: &Word, k: usize, alphabet: &Alphabet) -> BTreeSet<Word> {
    let mut current = BTreeSet::from([w.clone()]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for v in &current {
            next.extend(insert_one(v, alphabet));
        }
        current = next;
    }
    current
}

/// σ_k(w): words of length |w| differing from w in exactly k positions.
fn substitute_exact(w: &Word, k: usize, alphabet: &Alphabet) -> BTreeSet<Word> {
    let n = w.len();
    let mut out = BTreeSet::new();
    if n < k {
        return out;
    }
    let others: Vec<Vec<u8>> = alphabet
        .indices()
        .map(|s| alphabet.indices().filter(|&t| t != s).collect())
        .collect();
    for positions in combinations(n, k) {
        // one letter choice per substituted position
        let mut choice = vec![0usize; k];
        loop {
            let mut syms = w.symbols().to_vec();
            for (j, &pos) in positions.iter().enumerate() {
                syms[pos] = others[w.symbols()[pos] as usize][choice[j]];
            }
            out.insert(Word::from_indices(syms));
            let mut j = k;
            let base = alphabet.size() - 1;
            while j > 0 && choice[j - 1] == base - 1 {
                choice[j - 1] = 0;
                j -= 1;
            }
            if j == 0 {
                break;
            }
            choice[j - 1] += 1;
        }
    }
    // each distinct (positions, letters) choice yields a distinct word
    debug_assert_eq!(
        out.len(),
        combinations(n, k).len() * (alphabet.size() - 1).pow(k as u32)
    );
    out
}

fn single_edits(w: &Word, alphabet: &Alphabet) -> BTreeSet<Word> {
    let mut out = delete_exact(w, 1);
    out.extend(insert_exact(w, 1, alphabet));
    out.extend(substitute_exact(w, 1, alphabet));
    out
}

/// Λ_k(w) = ⋃_{1≤j≤k} (δ₁ ∪ ι₁ ∪ σ₁)^j (w).
fn lambda_exact(w: &Word, k: usize, alphabet: &Alphabet) -> BTreeSet<Word> {
    let mut out: BTreeSet<Word> = BTreeSet::new();
    let mut level = BTreeSet::from([w.clone()]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for v in &level {
            next.extend(single_edits(v, alphabet));
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// The exact image set of a single word under the relation.
pub fn apply(rel: EditRelation, w: &Word, alphabet: &Alphabet) -> BTreeSet<Word> {
    let k = rel.budget;
    match rel.kind {
        EditKind::Delete => delete_exact(w, k),
        EditKind::Insert => insert_exact(w, k, alphabet),
        EditKind::Substitute => substitute_exact(w, k, alphabet),
        EditKind::DeleteUpto => (1..=k).flat_map(|j| delete_exact(w, j)).collect(),
        EditKind::InsertUpto => (1..=k).flat_map(|j| insert_exact(w, j, alphabet)).collect(),
        EditKind::SubstituteUpto => (1..=k)
            .flat_map(|j| substitute_exact(w, j, alphabet))
            .collect(),
        EditKind::Levenshtein => lambda_exact(w, k, alphabet),
        EditKind::LevenshteinStrict => {
            let mut out = lambda_exact(w, k, alphabet);
            out.remove(w);
            out
        }
    }
}

/// τ(X): union of pointwise images.
pub fn apply_set(rel: EditRelation, lang: &FiniteLang) -> FiniteLang {
    let alphabet = lang.alphabet().clone();
    let words = lang
        .words()
        .flat_map(|w| apply(rel, w, &alphabet))
        .collect::<BTreeSet<Word>>();
    FiniteLang::new(alphabet, words)
}

/// Standard unit-cost edit distance.
pub fn levenshtein(x: &Word, y: &Word) -> usize {
    let (x, y) = (x.symbols(), y.symbols());
    let mut row: Vec<usize> = (0..=y.len()).collect();
    for (i, &a) in x.iter().enumerate() {
        let mut prev = row[0];
        row[0] = i + 1;
        for (j, &b) in y.iter().enumerate() {
            let cost = if a == b { prev } else { prev + 1 };
            prev = row[j + 1];
            row[j + 1] = cost.min(row[j] + 1).min(prev + 1);
        }
    }
    row[y.len()]
}

/// y ∈ Λ_p(x)? For p = 1 this is distance exactly 1; for p ≥ 2 the identity
/// is reachable through two opposite substitutions, so the test relaxes to
/// distance at most p.
pub fn lambda_membership(x: &Word, y: &Word, p: usize) -> Result<bool> {
    if p < 1 {
        return Err(Error::BadBudget);
    }
    let d = levenshtein(x, y);
    Ok(if p == 1 { d == 1 } else { d <= p })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Symbolic description of a σ_k*-orbit.
///
/// `FullCube(n)` is Aⁿ; `ParityClass(n, p)` is the set of length-n binary
/// words whose number of 1-letters has parity p; `SelfPair(w)` is {w, w̄}.
/// `Explicit` only appears in the degenerate regime |w| < k where σ_k(w) = ∅.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitDescriptor {
    FullCube(usize),
    ParityClass(usize, Parity),
    SelfPair(Word),
    Explicit(BTreeSet<Word>),
}

impl OrbitDescriptor {
    pub fn cardinality(&self, alphabet: &Alphabet) -> BigUint {
        match self {
            OrbitDescriptor::FullCube(n) => BigUint::from(alphabet.size()).pow(*n as u32),
            OrbitDescriptor::ParityClass(n, _) => {
                if *n == 0 {
                    BigUint::one()
                } else {
                    BigUint::from(2u8).pow(*n as u32 - 1)
                }
            }
            OrbitDescriptor::SelfPair(_) => BigUint::from(2u8),
            OrbitDescriptor::Explicit(set) => BigUint::from(set.len()),
        }
    }

    /// Expand to the explicit finite set.
    pub fn expand(&self, alphabet: &Alphabet) -> Result<FiniteLang> {
        let words: BTreeSet<Word> = match self {
            OrbitDescriptor::FullCube(n) => {
                crate::words::all_words_of_length(alphabet, *n).into_iter().collect()
            }
            OrbitDescriptor::ParityClass(n, parity) => {
                if !alphabet.is_binary() {
                    return Err(Error::NonBinaryAlphabet);
                }
                crate::words::all_words_of_length(alphabet, *n)
                    .into_iter()
                    .filter(|w| Parity::of(w.count(1)) == *parity)
                    .collect()
            }
            OrbitDescriptor::SelfPair(w) => {
                BTreeSet::from([w.clone(), complement_word(w, alphabet)?])
            }
            OrbitDescriptor::Explicit(set) => set.clone(),
        };
        Ok(FiniteLang::new(alphabet.clone(), words))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            OrbitDescriptor::FullCube(n) => format!("FullCube({n})"),
            OrbitDescriptor::ParityClass(n, p) => format!("ParityClass({n}, {p})"),
            OrbitDescriptor::SelfPair(w) => format!("SelfPair({})", w.render(alphabet)),
            OrbitDescriptor::Explicit(set) => {
                let items: Vec<String> = set.iter().map(|w| w.render(alphabet)).collect();
                format!("Explicit({{{}}})", items.join(", "))
            }
        }
    }
}

/// The orbit σ_k*(w), in symbolic form.
///
/// For |A| ≥ 3 and |w| ≥ k the orbit is the full cube; on a binary alphabet
/// it is {w, w̄} at |w| = k, the full cube for odd k, and the parity class of
/// |w|₁ for even k. Below |w| < k the relation is empty and the orbit is {w}.
pub fn sigma_star(w: &Word, k: usize, alphabet: &Alphabet) -> Result<OrbitDescriptor> {
    if k < 1 {
        return Err(Error::BadBudget);
    }
    let n = w.len();
    if n < k {
        return Ok(OrbitDescriptor::Explicit(BTreeSet::from([w.clone()])));
    }
    if alphabet.size() >= 3 {
        return Ok(OrbitDescriptor::FullCube(n));
    }
    if n == k {
        return Ok(OrbitDescriptor::SelfPair(w.clone()));
    }
    if k % 2 == 1 {
        Ok(OrbitDescriptor::FullCube(n))
    } else {
        Ok(OrbitDescriptor::ParityClass(n, Parity::of(w.count(1))))
    }
}

/// A brute-force closure, possibly cut off at the length cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub words: FiniteLang,
    /// True when some image exceeded the cap and was dropped; only possible
    /// for length-increasing kinds.
    pub truncated: bool,
}

/// τ*(X) restricted to words of length ≤ `length_cap`, computed as a BFS
/// fixed point. Exact for length-preserving kinds; truncation is tagged,
/// never silent.
pub fn closure_brute(
    rel: EditRelation,
    lang: &FiniteLang,
    length_cap: usize,
) -> Result<ClosureResult> {
    if lang.max_word_len() > length_cap {
        return Err(Error::Precondition(format!(
            "length cap {} below the longest input word ({})",
            length_cap,
            lang.max_word_len()
        )));
    }
    let alphabet = lang.alphabet().clone();
    let mut seen: BTreeSet<Word> = lang.words().cloned().collect();
    let mut frontier: Vec<Word> = seen.iter().cloned().collect();
    let mut truncated = false;
    while let Some(w) = frontier.pop() {
        for image in apply(rel, &w, &alphabet) {
            if image.len() > length_cap {
                truncated = true;
                continue;
            }
            if seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    Ok(ClosureResult {
        words: FiniteLang::new(alphabet, seen),
        truncated,
    })
}

//! Core word combinatorics: factors, subwords, borders, overlapping-freeness,
//! and the binary complement/xor used by the substitution orbit engine.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite, ordered set of at least two distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall);
        }
        for (i, &s) in symbols.iter().enumerate() {
            if symbols[..i].contains(&s) {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The binary alphabet {0, 1}.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    /// The alphabet {a, b}.
    pub fn ab() -> Self {
        Alphabet {
            symbols: vec!['a', 'b'],
        }
    }

    /// The alphabet {a, b, c}.
    pub fn abc() -> Self {
        Alphabet {
            symbols: vec!['a', 'b', 'c'],
        }
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_binary(&self) -> bool {
        self.symbols.len() == 2
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    pub fn index_of(&self, symbol: char) -> Result<u8> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .map(|i| i as u8)
            .ok_or(Error::UnknownSymbol(symbol))
    }

    /// Symbol indices, `0..size`.
    pub fn indices(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.symbols.len() as u8).into_iter()
    }
}

/// A finite sequence of alphabet symbols, stored as indices into an
/// [`Alphabet`]. The empty word is permitted and distinguished.
///
/// Words order length-first, then lexicographically by symbol index; this is
/// the canonical ordering used everywhere a deterministic choice is needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syms: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word { syms: Vec::new() }
    }

    pub fn from_indices(syms: Vec<u8>) -> Self {
        Word { syms }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut syms = Vec::with_capacity(text.len());
        for ch in text.chars() {
            syms.push(alphabet.index_of(ch)?);
        }
        Ok(Word { syms })
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.syms
    }

    /// Number of occurrences of the symbol with the given index.
    pub fn count(&self, index: u8) -> usize {
        self.syms.iter().filter(|&&s| s == index).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        Word { syms }
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut syms = Vec::with_capacity(self.syms.len() * times);
        for _ in 0..times {
            syms.extend_from_slice(&self.syms);
        }
        Word { syms }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.syms.iter().map(|&s| alphabet.symbol(s)).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syms
            .len()
            .cmp(&other.syms.len())
            .then_with(|| self.syms.cmp(&other.syms))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syms.is_empty() {
            return write!(f, "ε");
        }
        for &s in &self.syms {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// All subsequences of `w`, including the empty word and `w` itself.
pub fn subwords(w: &Word) -> BTreeSet<Word> {
    let mut out: BTreeSet<Word> = BTreeSet::new();
    out.insert(Word::empty());
    for &s in w.symbols() {
        let mut extended: Vec<Word> = Vec::with_capacity(out.len());
        for sub in &out {
            let mut syms = sub.syms.clone();
            syms.push(s);
            extended.push(Word { syms });
        }
        out.extend(extended);
    }
    out
}

/// True iff `w = u·x·v` for some words u, v.
pub fn is_factor(x: &Word, w: &Word) -> bool {
    let (x, w) = (x.symbols(), w.symbols());
    if x.is_empty() {
        return true;
    }
    if x.len() > w.len() {
        return false;
    }
    w.windows(x.len()).any(|win| win == x)
}

/// Length of the longest proper border of `w` (failure function).
pub fn longest_border(w: &Word) -> usize {
    let s = w.symbols();
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail[n - 1]
}

/// True iff the nonempty word `w` has no border of length in `[1, |w|-1]`
/// (w is unbordered, hence cannot overlap itself).
pub fn is_overlapping_free(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(longest_border(w) == 0)
}

/// Finds the first `u` in length-then-lexicographic order such that `v·u` is
/// overlapping-free, and returns `u`. The search is capped at `|v| + 2` and
/// widens by 2 if exhausted; classical bounds guarantee a short extension
/// always exists.
pub fn make_overlapping_free(v: &Word, alphabet: &Alphabet) -> Result<Word> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut cap = v.len() + 2;
    loop {
        for len in 0..=cap {
            let mut candidate = vec![0u8; len];
            loop {
                let u = Word::from_indices(candidate.clone());
                let extended = v.concat(&u);
                if is_overlapping_free(&extended)? {
                    return Ok(u);
                }
                // next candidate of the same length, lexicographically
                let mut pos = len;
                let top = (alphabet.size() - 1) as u8;
                while pos > 0 && candidate[pos - 1] == top {
                    candidate[pos - 1] = 0;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                candidate[pos - 1] += 1;
            }
        }
        cap += 2;
    }
}

/// Letterwise complement on the binary alphabet.
pub fn complement_word(w: &Word, alphabet: &Alphabet) -> Result<Word> {
    if !alphabet.is_binary() {
        return Err(Error::NonBinaryAlphabet);
    }
    Ok(Word::from_indices(
        w.symbols().iter().map(|&s| 1 - s).collect(),
    ))
}

/// Letterwise addition mod 2 on the binary alphabet.
pub fn xor_words(w: &Word, other: &Word, alphabet: &Alphabet) -> Result<Word> {
    if !alphabet.is_binary() {
        return Err(Error::NonBinaryAlphabet);
    }
    if w.len() != other.len() {
        return Err(Error::LengthMismatch(w.len(), other.len()));
    }
    Ok(Word::from_indices(
        w.symbols()
            .iter()
            .zip(other.symbols())
            .map(|(&a, &b)| a ^ b)
            .collect(),
    ))
}

/// All words over `alphabet` of exactly the given length, in canonical order.
pub fn all_words_of_length(alphabet: &Alphabet, length: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..length {
        let mut next = Vec::with_capacity(out.len() * alphabet.size());
        for w in &out {
            for s in alphabet.indices() {
                let mut syms = w.syms.clone();
                syms.push(s);
                next.push(Word { syms });
            }
        }
        out = next;
    }
    out
}

/// All words of length in `[0, max_length]`, in canonical order.
pub fn all_words_up_to(alphabet: &Alphabet, max_length: usize) -> Vec<Word> {
    (0..=max_length)
        .flat_map(|n| all_words_of_length(alphabet, n))
        .collect()
}

//! Finite and regular language values, plus the automaton algebra needed for
//! completeness testing: Boolean operations, concatenation, star, the factor
//! language F(L), emptiness, and shortest-witness extraction.
//!
//! Regular languages are carried as deterministic automata with a total
//! transition function. Equality of languages is decided by symmetric
//! difference emptiness; minimization is available for display and keeps
//! intermediate constructions small.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

/// An explicit finite set of words over a shared alphabet, kept in canonical
/// (length-then-lex) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLang {
    alphabet: Alphabet,
    words: BTreeSet<Word>,
}

impl FiniteLang {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Self {
        FiniteLang {
            alphabet,
            words: words.into_iter().collect(),
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteLang {
            alphabet,
            words: BTreeSet::new(),
        }
    }

    pub fn parse(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|t| Word::parse(t, &alphabet))
            .collect::<Result<BTreeSet<Word>>>()?;
        Ok(FiniteLang {
            alphabet,
            words: parsed,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn word_set(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn contains_empty_word(&self) -> bool {
        self.words.iter().next().map_or(false, |w| w.is_empty())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn insert(&mut self, w: Word) -> bool {
        self.words.insert(w)
    }

    pub fn union_with(&self, other: &FiniteLang) -> Result<FiniteLang> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(FiniteLang {
            alphabet: self.alphabet.clone(),
            words: self.words.union(&other.words).cloned().collect(),
        })
    }

    pub fn is_subset(&self, other: &FiniteLang) -> bool {
        self.words.is_subset(&other.words)
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self.words.iter().map(|w| w.render(&self.alphabet)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// Deterministic finite automaton with a total transition function.
#[derive(Debug, Clone)]
pub(crate) struct Dfa {
    pub(crate) nsyms: usize,
    pub(crate) initial: usize,
    pub(crate) accepting: Vec<bool>,
    /// `trans[state][symbol]`
    pub(crate) trans: Vec<Vec<usize>>,
}

impl Dfa {
    fn single_state(nsyms: usize, accepting: bool) -> Dfa {
        Dfa {
            nsyms,
            initial: 0,
            accepting: vec![accepting],
            trans: vec![vec![0; nsyms]],
        }
    }

    pub(crate) fn run(&self, w: &Word) -> usize {
        let mut q = self.initial;
        for &s in w.symbols() {
            q = self.trans[q][s as usize];
        }
        q
    }

    pub(crate) fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run(w)]
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.trans.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for &t in &self.trans[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.trans.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for &t in row {
                rev[t].push(q);
            }
        }
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for q in 0..n {
            if self.accepting[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    fn is_empty_lang(&self) -> bool {
        let reach = self.reachable();
        !(0..self.trans.len()).any(|q| reach[q] && self.accepting[q])
    }

    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Dfa {
        debug_assert_eq!(self.nsyms, other.nsyms);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let start = (self.initial, other.initial);
        index.insert(start, 0);
        order.push(start);
        let mut next = 0usize;
        while next < order.len() {
            let (p, q) = order[next];
            let mut row = Vec::with_capacity(self.nsyms);
            for s in 0..self.nsyms {
                let target = (self.trans[p][s], other.trans[q][s]);
                let id = *index.entry(target).or_insert_with(|| {
                    order.push(target);
                    order.len() - 1
                });
                row.push(id);
            }
            trans.push(row);
            next += 1;
        }
        let accepting = order
            .iter()
            .map(|&(p, q)| accept(self.accepting[p], other.accepting[q]))
            .collect();
        Dfa {
            nsyms: self.nsyms,
            initial: 0,
            accepting,
            trans,
        }
    }

    /// Moore partition refinement, then a BFS renumbering so state ids are
    /// stable for display.
    fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.trans.len()).filter(|&q| reach[q]).collect();
        // block id per (reachable) state
        let mut block: HashMap<usize, usize> = states
            .iter()
            .map(|&q| (q, usize::from(self.accepting[q])))
            .collect();
        loop {
            let mut sig_to_block: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next_block: HashMap<usize, usize> = HashMap::new();
            for &q in &states {
                let sig = (
                    block[&q],
                    self.trans[q].iter().map(|t| block[t]).collect::<Vec<_>>(),
                );
                let id = sig_to_block.len();
                let id = *sig_to_block.entry(sig).or_insert(id);
                next_block.insert(q, id);
            }
            // refinement only splits blocks, so the partition is stable
            // exactly when the block count stops growing
            let old_count = block.values().collect::<BTreeSet<_>>().len();
            let stable = sig_to_block.len() == old_count;
            block = next_block;
            if stable {
                break;
            }
        }
        let nblocks = block.values().copied().max().unwrap_or(0) + 1;
        let mut rep: Vec<usize> = vec![usize::MAX; nblocks];
        for &q in &states {
            let b = block[&q];
            if rep[b] == usize::MAX || q < rep[b] {
                rep[b] = q;
            }
        }
        let mut trans = vec![vec![0usize; self.nsyms]; nblocks];
        let mut accepting = vec![false; nblocks];
        for b in 0..nblocks {
            let q = rep[b];
            accepting[b] = self.accepting[q];
            for s in 0..self.nsyms {
                trans[b][s] = block[&self.trans[q][s]];
            }
        }
        let merged = Dfa {
            nsyms: self.nsyms,
            initial: block[&self.initial],
            accepting,
            trans,
        };
        merged.bfs_renumber()
    }

    fn bfs_renumber(&self) -> Dfa {
        let n = self.trans.len();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut newid = vec![usize::MAX; n];
        let mut queue = VecDeque::from([self.initial]);
        newid[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &self.trans[q] {
                if newid[t] == usize::MAX {
                    newid[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let trans = order
            .iter()
            .map(|&q| self.trans[q].iter().map(|&t| newid[t]).collect())
            .collect();
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        Dfa {
            nsyms: self.nsyms,
            initial: 0,
            accepting,
            trans,
        }
    }
}

/// Nondeterministic automaton used internally for concatenation, star,
/// quotients, and the factor-language construction.
pub(crate) struct Nfa {
    pub(crate) nsyms: usize,
    pub(crate) initial: BTreeSet<usize>,
    pub(crate) accepting: Vec<bool>,
    pub(crate) trans: Vec<Vec<Vec<usize>>>,
    pub(crate) eps: Vec<Vec<usize>>,
}

impl Nfa {

    fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    pub(crate) fn determinize(&self) -> Dfa {
        let start = self.eps_closure(&self.initial);
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut order: Vec<BTreeSet<usize>> = vec![start.clone()];
        index.insert(start, 0);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut next = 0usize;
        while next < order.len() {
            let current = order[next].clone();
            let mut row = Vec::with_capacity(self.nsyms);
            for s in 0..self.nsyms {
                let mut target: BTreeSet<usize> = BTreeSet::new();
                for &q in &current {
                    target.extend(self.trans[q][s].iter().copied());
                }
                let target = self.eps_closure(&target);
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        index.insert(target.clone(), order.len());
                        order.push(target);
                        order.len() - 1
                    }
                };
                row.push(id);
            }
            trans.push(row);
            next += 1;
        }
        let accepting = order
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa {
            nsyms: self.nsyms,
            initial: 0,
            accepting,
            trans,
        }
    }
}

/// A regular language over a fixed alphabet, represented by a deterministic
/// automaton value. Operations are pure; two values denote equal languages
/// iff [`RegularLang::equivalent`] holds.
#[derive(Debug, Clone)]
pub struct RegularLang {
    alphabet: Alphabet,
    dfa: Dfa,
}

impl RegularLang {
    pub(crate) fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.size();
        RegularLang {
            alphabet,
            dfa: Dfa::single_state(n, false),
        }
    }

    /// The full language A*.
    pub fn full(alphabet: Alphabet) -> Self {
        let n = alphabet.size();
        RegularLang {
            alphabet,
            dfa: Dfa::single_state(n, true),
        }
    }

    /// Automaton accepting exactly the given finite set (trie plus sink).
    pub fn from_finite(lang: &FiniteLang) -> Self {
        let alphabet = lang.alphabet().clone();
        let nsyms = alphabet.size();
        // state 0 = root; transitions default to a sink added at the end
        let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; nsyms]];
        let mut accepting: Vec<bool> = vec![false];
        for w in lang.words() {
            let mut q = 0usize;
            for &s in w.symbols() {
                q = match trans[q][s as usize] {
                    Some(t) => t,
                    None => {
                        trans.push(vec![None; nsyms]);
                        accepting.push(false);
                        let t = trans.len() - 1;
                        trans[q][s as usize] = Some(t);
                        t
                    }
                };
            }
            accepting[q] = true;
        }
        let sink = trans.len();
        trans.push(vec![Some(sink); nsyms]);
        accepting.push(false);
        let trans = trans
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        RegularLang {
            alphabet,
            dfa: Dfa {
                nsyms,
                initial: 0,
                accepting,
                trans,
            },
        }
    }

    fn check_alphabet(&self, other: &RegularLang) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &RegularLang) -> Result<RegularLang> {
        self.check_alphabet(other)?;
        Ok(RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: self.dfa.product(&other.dfa, |a, b| a || b).minimize(),
        })
    }

    pub fn intersection(&self, other: &RegularLang) -> Result<RegularLang> {
        self.check_alphabet(other)?;
        Ok(RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: self.dfa.product(&other.dfa, |a, b| a && b).minimize(),
        })
    }

    pub fn difference(&self, other: &RegularLang) -> Result<RegularLang> {
        self.check_alphabet(other)?;
        Ok(RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: self.dfa.product(&other.dfa, |a, b| a && !b).minimize(),
        })
    }

    pub fn complement(&self) -> RegularLang {
        let mut dfa = self.dfa.clone();
        for a in dfa.accepting.iter_mut() {
            *a = !*a;
        }
        RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: dfa.minimize(),
        }
    }

    pub fn concat(&self, other: &RegularLang) -> Result<RegularLang> {
        self.check_alphabet(other)?;
        let (a, b) = (&self.dfa, &other.dfa);
        let offset = a.trans.len();
        let nsyms = a.nsyms;
        let mut trans: Vec<Vec<Vec<usize>>> = Vec::with_capacity(offset + b.trans.len());
        let mut eps: Vec<Vec<usize>> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();
        for q in 0..a.trans.len() {
            trans.push(a.trans[q].iter().map(|&t| vec![t]).collect());
            eps.push(if a.accepting[q] {
                vec![offset + b.initial]
            } else {
                Vec::new()
            });
            accepting.push(false);
        }
        for q in 0..b.trans.len() {
            trans.push(b.trans[q].iter().map(|&t| vec![offset + t]).collect());
            eps.push(Vec::new());
            accepting.push(b.accepting[q]);
        }
        let nfa = Nfa {
            nsyms,
            initial: BTreeSet::from([a.initial]),
            accepting,
            trans,
            eps,
        };
        Ok(RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: nfa.determinize().minimize(),
        })
    }

    /// Kleene star; always contains the empty word.
    pub fn star(&self) -> RegularLang {
        let d = &self.dfa;
        let fresh = d.trans.len(); // new accepting initial state
        let mut trans: Vec<Vec<Vec<usize>>> = d
            .trans
            .iter()
            .map(|row| row.iter().map(|&t| vec![t]).collect())
            .collect();
        trans.push(vec![Vec::new(); d.nsyms]);
        let mut eps: Vec<Vec<usize>> = (0..d.trans.len())
            .map(|q| {
                if d.accepting[q] {
                    vec![d.initial]
                } else {
                    Vec::new()
                }
            })
            .collect();
        eps.push(vec![d.initial]);
        let mut accepting = d.accepting.clone();
        accepting.push(true);
        let nfa = Nfa {
            nsyms: d.nsyms,
            initial: BTreeSet::from([fresh]),
            accepting,
            trans,
            eps,
        };
        RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: nfa.determinize().minimize(),
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.dfa.accepts(w)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty_lang()
    }

    pub fn equivalent(&self, other: &RegularLang) -> Result<bool> {
        self.check_alphabet(other)?;
        let sym_diff = self.dfa.product(&other.dfa, |a, b| a != b);
        Ok(sym_diff.is_empty_lang())
    }

    pub fn minimize(&self) -> RegularLang {
        RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: self.dfa.minimize(),
        }
    }

    #[cfg(test)]
    pub(crate) fn state_count(&self) -> usize {
        self.dfa.trans.len()
    }

    /// The factor language F(L) = { x : u x v ∈ L for some u, v }.
    ///
    /// On the trimmed automaton, x is a factor iff it labels a path from a
    /// reachable state to a co-reachable one; every state on such a path is
    /// itself both reachable and co-reachable, so it suffices to read paths
    /// inside the useful part with all useful states initial and accepting.
    pub fn factor_language(&self) -> RegularLang {
        let d = &self.dfa;
        let reach = d.reachable();
        let coreach = d.coreachable();
        let useful: Vec<usize> = (0..d.trans.len())
            .filter(|&q| reach[q] && coreach[q])
            .collect();
        if useful.is_empty() {
            return RegularLang::empty(self.alphabet.clone());
        }
        let id: HashMap<usize, usize> = useful.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let trans: Vec<Vec<Vec<usize>>> = useful
            .iter()
            .map(|&q| {
                d.trans[q]
                    .iter()
                    .map(|t| id.get(t).copied().into_iter().collect())
                    .collect()
            })
            .collect();
        let n = useful.len();
        let nfa = Nfa {
            nsyms: d.nsyms,
            initial: (0..n).collect(),
            accepting: vec![true; n],
            trans,
            eps: vec![Vec::new(); n],
        };
        RegularLang {
            alphabet: self.alphabet.clone(),
            dfa: nfa.determinize().minimize(),
        }
    }

    /// True iff every word over A is a factor of some concatenation of words
    /// of the language: F(L*) = A*.
    pub fn is_complete(&self) -> bool {
        self.star().factor_language().complement().is_empty()
    }

    /// Length-then-lex smallest word of the language, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let d = &self.dfa;
        let mut seen = vec![false; d.trans.len()];
        let mut queue: VecDeque<(usize, Word)> = VecDeque::new();
        seen[d.initial] = true;
        queue.push_back((d.initial, Word::empty()));
        while let Some((q, w)) = queue.pop_front() {
            if d.accepting[q] {
                return Some(w);
            }
            for s in 0..d.nsyms {
                let t = d.trans[q][s];
                if !seen[t] {
                    seen[t] = true;
                    let mut syms = w.symbols().to_vec();
                    syms.push(s as u8);
                    queue.push_back((t, Word::from_indices(syms)));
                }
            }
        }
        None
    }

    /// Length-then-lex smallest word outside F(L*); errors when L is complete.
    pub fn shortest_external_witness(&self) -> Result<Word> {
        self.star()
            .factor_language()
            .complement()
            .shortest_word()
            .ok_or(Error::LanguageComplete)
    }

    /// All words of the language with length at most `max_len`, canonical order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        crate::words::all_words_up_to(&self.alphabet, max_len)
            .into_iter()
            .filter(|w| self.contains(w))
            .collect()
    }

    /// GraphViz rendering; state ids follow BFS discovery order of the
    /// minimized automaton.
    pub fn to_dot(&self, name: &str) -> String {
        let d = self.dfa.minimize();
        let mut out = String::new();
        out.push_str(&format!("digraph {name} {{\n"));
        out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        out.push_str(&format!("  start -> q{};\n", d.initial));
        for q in 0..d.trans.len() {
            if d.accepting[q] {
                out.push_str(&format!("  q{q} [shape=doublecircle];\n"));
            }
        }
        for q in 0..d.trans.len() {
            // group parallel edges by target
            let mut by_target: BTreeMap<usize, Vec<char>> = BTreeMap::new();
            for s in 0..d.nsyms {
                by_target
                    .entry(d.trans[q][s])
                    .or_default()
                    .push(self.alphabet.symbol(s as u8));
            }
            for (t, labels) in by_target {
                let label: String = labels
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!("  q{q} -> q{t} [label=\"{label}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// A regular expression for the language, by state elimination on the
    /// trimmed minimal automaton. Alternation `|`, grouping `(…)`, star `*`,
    /// `ε` for the empty word; the empty language renders as `∅`.
    pub fn to_regex(&self) -> String {
        let d = self.dfa.minimize();
        let reach = d.reachable();
        let coreach = d.coreachable();
        let useful: Vec<usize> = (0..d.trans.len())
            .filter(|&q| reach[q] && coreach[q])
            .collect();
        if useful.is_empty() {
            return "∅".to_string();
        }
        let pos: BTreeMap<usize, usize> =
            useful.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let n = useful.len();
        // GNFA over the useful states plus fresh start (n) and accept (n+1)
        let mut edge: Vec<Vec<Option<String>>> = vec![vec![None; n + 2]; n + 2];
        for (i, &q) in useful.iter().enumerate() {
            for s in 0..d.nsyms {
                if let Some(&j) = pos.get(&d.trans[q][s]) {
                    let sym = self.alphabet.symbol(s as u8).to_string();
                    regex_alt(&mut edge[i][j], sym);
                }
            }
            if d.accepting[q] {
                edge[i][n + 1] = Some("ε".to_string());
            }
        }
        edge[n][pos[&d.initial]] = Some("ε".to_string());
        for q in 0..n {
            let star = edge[q][q].take().map(|r| regex_star(&r));
            let sources: Vec<usize> = (0..n + 2)
                .filter(|&i| i != q && edge[i][q].is_some())
                .collect();
            let targets: Vec<usize> = (0..n + 2)
                .filter(|&j| j != q && edge[q][j].is_some())
                .collect();
            for &i in &sources {
                for &j in &targets {
                    let mut r = edge[i][q].clone().unwrap();
                    if let Some(ref s) = star {
                        r = regex_concat(&r, s);
                    }
                    r = regex_concat(&r, edge[q][j].as_ref().unwrap());
                    regex_alt(&mut edge[i][j], r);
                }
            }
            for i in 0..n + 2 {
                edge[i][q] = None;
                edge[q][i] = None;
            }
        }
        edge[n][n + 1].take().unwrap_or_else(|| "∅".to_string())
    }
}

fn regex_has_top_alt(r: &str) -> bool {
    let mut depth = 0usize;
    for c in r.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

fn regex_wrap(r: &str) -> String {
    if regex_has_top_alt(r) {
        format!("({r})")
    } else {
        r.to_string()
    }
}

fn regex_concat(a: &str, b: &str) -> String {
    if a == "ε" {
        return b.to_string();
    }
    if b == "ε" {
        return a.to_string();
    }
    format!("{}{}", regex_wrap(a), regex_wrap(b))
}

fn regex_star(r: &str) -> String {
    if r == "ε" {
        return "ε".to_string();
    }
    if r.chars().count() == 1 {
        return format!("{r}*");
    }
    format!("({r})*")
}

fn regex_alt(slot: &mut Option<String>, r: String) {
    match slot {
        None => *slot = Some(r),
        Some(prev) => {
            if !prev.split('|').any(|p| p == r) {
                *slot = Some(format!("{prev}|{r}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::all_words_up_to;

    fn fl(ab: &Alphabet, words: &[&str]) -> FiniteLang {
        FiniteLang::parse(ab.clone(), words).unwrap()
    }

    fn w(text: &str, ab: &Alphabet) -> Word {
        Word::parse(text, ab).unwrap()
    }

    #[test]
    fn from_finite_examples() {
        let ab = Alphabet::ab();
        let empty = RegularLang::from_finite(&FiniteLang::empty(ab.clone()));
        assert!(empty.is_empty());
        let letters = RegularLang::from_finite(&fl(&ab, &["a", "b"]));
        assert!(letters.contains(&w("a", &ab)));
        assert!(letters.contains(&w("b", &ab)));
        assert!(!letters.contains(&w("ab", &ab)));
        // Z = {ab², ba²} accepts exactly 2 words, both of length 3
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        let accepted = z.words_up_to(5);
        assert_eq!(accepted.len(), 2);
        assert!(accepted.iter().all(|v| v.len() == 3));
    }

    #[test]
    fn boolean_algebra() {
        let ab = Alphabet::ab();
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        assert!(z.complement().complement().equivalent(&z).unwrap());
        let letters = RegularLang::from_finite(&fl(&ab, &["a", "b"]));
        assert!(letters
            .star()
            .equivalent(&RegularLang::full(ab.clone()))
            .unwrap());
        assert!(!z.star().contains(&w("aba", &ab)));
    }

    #[test]
    fn factor_language_examples() {
        let ab = Alphabet::ab();
        let full = RegularLang::full(ab.clone());
        assert!(full.factor_language().equivalent(&full).unwrap());

        let single = RegularLang::from_finite(&fl(&ab, &["abb"]));
        let expected = fl(&ab, &["", "a", "b", "ab", "bb", "abb"]);
        let factors = single.factor_language();
        assert!(factors
            .equivalent(&RegularLang::from_finite(&expected))
            .unwrap());

        // brute-force cross-check of F(Z*) on Z* words up to length 9; short
        // factors are all realized within short concatenations, so agreement
        // is two-sided up to length 4
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        let fzstar = z.star().factor_language();
        let mut factors_seen: BTreeSet<Word> = BTreeSet::new();
        let zstar = z.star();
        for v in zstar.words_up_to(9) {
            for i in 0..=v.len() {
                for j in i..=v.len() {
                    factors_seen.insert(Word::from_indices(v.symbols()[i..j].to_vec()));
                }
            }
        }
        for x in all_words_up_to(&ab, 4) {
            assert_eq!(fzstar.contains(&x), factors_seen.contains(&x), "factor {x}");
        }
        // aaa does occur inside Z*: baa·abb = baaabb
        assert!(fzstar.contains(&w("aaa", &ab)));
        // but aaaa never does
        assert!(!fzstar.contains(&w("aaaa", &ab)));
    }

    #[test]
    fn factor_language_is_extensive_idempotent() {
        let ab = Alphabet::ab();
        for lang in [
            RegularLang::from_finite(&fl(&ab, &["abb", "baa"])),
            RegularLang::from_finite(&fl(&ab, &["a", "ab"])).star(),
            RegularLang::empty(ab.clone()),
        ] {
            let f = lang.factor_language();
            assert!(lang.difference(&f).unwrap().is_empty()); // L ⊆ F(L)
            assert!(f.factor_language().equivalent(&f).unwrap()); // F(F(L)) = F(L)
        }
    }

    #[test]
    fn completeness_examples() {
        let ab = Alphabet::ab();
        let a2 = fl(&ab, &["aa", "ab", "ba", "bb"]);
        assert!(RegularLang::from_finite(&a2).is_complete());
        let z = fl(&ab, &["abb", "baa"]);
        assert!(!RegularLang::from_finite(&z).is_complete());
        // Aⁿ ∪ Aᵖ with n=2, p=3 is complete
        let mut words: Vec<&str> = vec!["aa", "ab", "ba", "bb"];
        let cube3: Vec<String> = all_words_up_to(&ab, 3)
            .into_iter()
            .filter(|v| v.len() == 3)
            .map(|v| v.render(&ab))
            .collect();
        words.extend(cube3.iter().map(|s| s.as_str()));
        assert!(RegularLang::from_finite(&fl(&ab, &words)).is_complete());
    }

    #[test]
    fn shortest_external_witness_examples() {
        let ab = Alphabet::ab();
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        let witness = z.shortest_external_witness().unwrap();
        assert!(!z.star().factor_language().contains(&witness));
        // all strictly smaller words are factors of Z*
        let fz = z.star().factor_language();
        for v in all_words_up_to(&ab, witness.len()) {
            if v < witness {
                assert!(fz.contains(&v), "smaller non-factor {v}");
            }
        }

        let a2 = RegularLang::from_finite(&fl(&ab, &["aa", "ab", "ba", "bb"]));
        assert_eq!(a2.shortest_external_witness(), Err(Error::LanguageComplete));

        // F((a²)*) = a*, so the witness is b
        let aa = RegularLang::from_finite(&fl(&ab, &["aa"]));
        assert_eq!(aa.shortest_external_witness().unwrap(), w("b", &ab));
    }

    #[test]
    fn minimization_idempotent() {
        let ab = Alphabet::ab();
        let lang = RegularLang::from_finite(&fl(&ab, &["abb", "baa"])).star();
        let once = lang.minimize();
        let twice = once.minimize();
        assert_eq!(once.state_count(), twice.state_count());
        assert!(once.equivalent(&twice).unwrap());
    }

    #[test]
    fn dot_export_mentions_states_and_labels() {
        let ab = Alphabet::ab();
        let lang = RegularLang::from_finite(&fl(&ab, &["ab"]));
        let dot = lang.to_dot("x");
        assert!(dot.starts_with("digraph x {"));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"a\"") || dot.contains("label=\"a,b\""));
    }

    /// Thompson-style matcher used to validate to_regex output: parses the
    /// emitted syntax (alternation, grouping, star, ε) into an ε-NFA.
    mod rx {
        pub struct Nfa {
            // (state, Some(symbol) | None for ε) -> states
            pub edges: Vec<Vec<(Option<char>, usize)>>,
            pub start: usize,
            pub accept: usize,
        }

        struct Parser<'a> {
            chars: Vec<char>,
            at: usize,
            nfa: &'a mut Nfa,
        }

        impl Nfa {
            fn state(&mut self) -> usize {
                self.edges.push(Vec::new());
                self.edges.len() - 1
            }
        }

        impl Parser<'_> {
            fn peek(&self) -> Option<char> {
                self.chars.get(self.at).copied()
            }

            fn alt(&mut self) -> (usize, usize) {
                let (mut s, mut t) = self.cat();
                while self.peek() == Some('|') {
                    self.at += 1;
                    let (s2, t2) = self.cat();
                    let ns = self.nfa.state();
                    let nt = self.nfa.state();
                    self.nfa.edges[ns].push((None, s));
                    self.nfa.edges[ns].push((None, s2));
                    self.nfa.edges[t].push((None, nt));
                    self.nfa.edges[t2].push((None, nt));
                    s = ns;
                    t = nt;
                }
                (s, t)
            }

            fn cat(&mut self) -> (usize, usize) {
                let s = self.nfa.state();
                let mut t = s;
                while let Some(c) = self.peek() {
                    if c == '|' || c == ')' {
                        break;
                    }
                    let (s2, t2) = self.rep();
                    self.nfa.edges[t].push((None, s2));
                    t = t2;
                }
                (s, t)
            }

            fn rep(&mut self) -> (usize, usize) {
                let (mut s, mut t) = self.atom();
                while self.peek() == Some('*') {
                    self.at += 1;
                    let ns = self.nfa.state();
                    self.nfa.edges[ns].push((None, s));
                    self.nfa.edges[t].push((None, ns));
                    s = ns;
                    t = ns;
                }
                (s, t)
            }

            fn atom(&mut self) -> (usize, usize) {
                let c = self.peek().expect("unexpected end of pattern");
                self.at += 1;
                if c == '(' {
                    let inner = self.alt();
                    assert_eq!(self.peek(), Some(')'), "unbalanced parens");
                    self.at += 1;
                    return inner;
                }
                let s = self.nfa.state();
                let t = self.nfa.state();
                let label = if c == 'ε' { None } else { Some(c) };
                self.nfa.edges[s].push((label, t));
                (s, t)
            }
        }

        pub fn compile(pattern: &str) -> Nfa {
            let mut nfa = Nfa {
                edges: Vec::new(),
                start: 0,
                accept: 0,
            };
            let mut p = Parser {
                chars: pattern.chars().collect(),
                at: 0,
                nfa: &mut nfa,
            };
            let (s, t) = p.alt();
            assert_eq!(p.at, p.chars.len(), "trailing input in pattern");
            nfa.start = s;
            nfa.accept = t;
            nfa
        }

        pub fn matches(nfa: &Nfa, text: &[char]) -> bool {
            let mut current = eps_close(nfa, vec![nfa.start]);
            for &c in text {
                let mut next = Vec::new();
                for &q in &current {
                    for &(label, t) in &nfa.edges[q] {
                        if label == Some(c) {
                            next.push(t);
                        }
                    }
                }
                current = eps_close(nfa, next);
                if current.is_empty() {
                    return false;
                }
            }
            current.contains(&nfa.accept)
        }

        fn eps_close(nfa: &Nfa, mut stack: Vec<usize>) -> Vec<usize> {
            let mut seen: std::collections::BTreeSet<usize> = stack.iter().copied().collect();
            while let Some(q) = stack.pop() {
                for &(label, t) in &nfa.edges[q] {
                    if label.is_none() && seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
            seen.into_iter().collect()
        }
    }

    #[test]
    fn regex_round_trips_membership() {
        let ab = Alphabet::ab();
        let z = RegularLang::from_finite(&fl(&ab, &["abb", "baa"]));
        let a = RegularLang::from_finite(&fl(&ab, &["a"]));
        let b = RegularLang::from_finite(&fl(&ab, &["b"]));
        let samples = vec![
            RegularLang::empty(ab.clone()),
            RegularLang::full(ab.clone()),
            z.clone(),
            z.star(),
            a.star().concat(&b).unwrap(),
            z.star().factor_language(),
            RegularLang::from_finite(&fl(&ab, &["aa", "ab", "ba", "bb"])).complement(),
        ];
        for lang in samples {
            let pattern = lang.to_regex();
            if pattern == "∅" {
                assert!(lang.is_empty());
                continue;
            }
            let nfa = rx::compile(&pattern);
            for word in all_words_up_to(&ab, 6) {
                let text: Vec<char> = word.render(&ab).chars().collect();
                assert_eq!(
                    lang.contains(&word),
                    rx::matches(&nfa, &text),
                    "pattern {pattern} vs word {}",
                    word.render(&ab)
                );
            }
        }
    }

    #[test]
    fn regex_simple_shapes() {
        let ab = Alphabet::ab();
        let single = RegularLang::from_finite(&fl(&ab, &["ab"]));
        assert_eq!(single.to_regex(), "ab");
        let letters = RegularLang::from_finite(&fl(&ab, &["a", "b"]));
        assert_eq!(letters.to_regex(), "a|b");
        assert_eq!(RegularLang::empty(ab.clone()).to_regex(), "∅");
    }
}

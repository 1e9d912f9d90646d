//! The code property (unique decipherability) via Sardinas–Patterson, exact
//! Bernoulli measures, and maximality through Schützenberger's equivalence of
//! maximality and completeness for regular codes.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::langs::{FiniteLang, RegularLang};
use crate::words::{Alphabet, Word};

/// A positive Bernoulli distribution on the alphabet; exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliDist {
    weights: Vec<BigRational>,
}

impl BernoulliDist {
    pub fn new(alphabet: &Alphabet, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != alphabet.size() {
            return Err(Error::Precondition(format!(
                "expected {} weights, got {}",
                alphabet.size(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w <= BigRational::zero()) {
            return Err(Error::Precondition(
                "all Bernoulli weights must be positive".into(),
            ));
        }
        let sum: BigRational = weights.iter().cloned().sum();
        if !sum.is_one() {
            return Err(Error::Precondition(format!(
                "Bernoulli weights must sum to 1, got {sum}"
            )));
        }
        Ok(BernoulliDist { weights })
    }

    pub fn uniform(alphabet: &Alphabet) -> Self {
        let n = BigInt::from(alphabet.size());
        let w = BigRational::new(BigInt::one(), n);
        BernoulliDist {
            weights: vec![w; alphabet.size()],
        }
    }

    pub fn weight(&self, symbol: u8) -> &BigRational {
        &self.weights[symbol as usize]
    }

    /// Product measure of a single word.
    pub fn word_measure(&self, w: &Word) -> BigRational {
        w.symbols()
            .iter()
            .map(|&s| self.weights[s as usize].clone())
            .product()
    }
}

/// π(X) = Σ_{x∈X} Π_i π(x_i), exact.
pub fn bernoulli_measure(lang: &FiniteLang, dist: &BernoulliDist) -> BigRational {
    lang.words().map(|w| dist.word_measure(w)).sum()
}

/// Outcome of the unique-decipherability test. The counterexample, when
/// present, is a pair of distinct factorizations of the same word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub is_code: bool,
    pub counterexample: Option<(Vec<Word>, Vec<Word>)>,
}

impl CodeReport {
    pub fn ambiguous_word(&self) -> Option<Word> {
        self.counterexample.as_ref().map(|(left, _)| {
            left.iter()
                .fold(Word::empty(), |acc, piece| acc.concat(piece))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Sardinas–Patterson on an explicit finite set, with extraction of a
/// minimal-length ambiguous word on failure.
///
/// The search walks dangling suffixes: a node `(s, ahead)` means two distinct
/// codeword sequences exist whose concatenations differ exactly by the suffix
/// `s` on the `ahead` side. Settling nodes in order of the ahead-side length
/// (Dijkstra, ties broken on the canonical word order) makes the first
/// completed ambiguity a shortest one.
pub fn is_code(lang: &FiniteLang) -> Result<CodeReport> {
    if lang.contains_empty_word() {
        return Err(Error::EpsilonInCode);
    }
    let words: Vec<Word> = lang.words().cloned().collect();

    type Node = (Word, Side);
    // parent: node -> (previous node or None for roots, appended word, side appended to)
    let mut parent: HashMap<Node, (Option<Node>, Word, Side)> = HashMap::new();
    let mut dist: HashMap<Node, usize> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(usize, Word, Side)>> = BinaryHeap::new();

    let strip_prefix = |long: &Word, short: &Word| -> Option<Word> {
        long.symbols()
            .strip_prefix(short.symbols())
            .map(|rest| Word::from_indices(rest.to_vec()))
    };

    // roots: y = x·s with x ≠ y, both codewords; left side holds [y]
    for x in &words {
        for y in &words {
            if x == y || y.len() <= x.len() {
                continue;
            }
            if let Some(s) = strip_prefix(y, x) {
                let node: Node = (s, Side::Left);
                let cost = y.len();
                if dist.get(&node).map_or(true, |&d| cost < d) {
                    dist.insert(node.clone(), cost);
                    parent.insert(node.clone(), (None, y.clone(), Side::Left));
                    heap.push(Reverse((cost, node.0, node.1)));
                }
            }
        }
    }

    let mut settled: HashSet<Node> = HashSet::new();
    while let Some(Reverse((cost, s, ahead))) = heap.pop() {
        let node: Node = (s.clone(), ahead);
        if !settled.insert(node.clone()) {
            continue;
        }
        // append z to the behind side
        let behind = ahead.flip();
        for z in &words {
            if *z == s {
                // ambiguity completed: reconstruct both factorizations
                let mut seqs: HashMap<Side, Vec<Word>> = HashMap::new();
                seqs.insert(Side::Left, Vec::new());
                seqs.insert(Side::Right, Vec::new());
                let mut chain: Vec<(Word, Side)> = vec![(z.clone(), behind)];
                let mut cursor = Some(node.clone());
                while let Some(cur) = cursor {
                    let (prev, appended, side) = parent[&cur].clone();
                    chain.push((appended, side));
                    if prev.is_none() {
                        // the root also placed the shorter word on the other side
                        let (root_suffix, root_ahead) = (&cur.0, cur.1);
                        let y = &chain.last().unwrap().0;
                        let x = Word::from_indices(
                            y.symbols()[..y.len() - root_suffix.len()].to_vec(),
                        );
                        chain.push((x, root_ahead.flip()));
                    }
                    cursor = prev;
                }
                chain.reverse();
                for (piece, side) in chain {
                    seqs.get_mut(&side).unwrap().push(piece);
                }
                let left = seqs.remove(&Side::Left).unwrap();
                let right = seqs.remove(&Side::Right).unwrap();
                debug_assert_eq!(
                    left.iter().fold(Word::empty(), |a, p| a.concat(p)),
                    right.iter().fold(Word::empty(), |a, p| a.concat(p)),
                );
                return Ok(CodeReport {
                    is_code: false,
                    counterexample: Some((left, right)),
                });
            }
            let (next, next_cost): (Option<Node>, usize) = if let Some(t) = strip_prefix(&s, z) {
                // z is a proper prefix of s: same side stays ahead
                (Some((t, ahead)), cost)
            } else if let Some(t) = strip_prefix(z, &s) {
                // z extends past s: the behind side takes the lead
                (Some((t, behind)), cost + (z.len() - s.len()))
            } else {
                (None, 0)
            };
            if let Some(next) = next {
                if dist.get(&next).map_or(true, |&d| next_cost < d) && !settled.contains(&next) {
                    dist.insert(next.clone(), next_cost);
                    parent.insert(next.clone(), (Some(node.clone()), z.clone(), behind));
                    heap.push(Reverse((next_cost, next.0, next.1)));
                }
            }
        }
    }

    Ok(CodeReport {
        is_code: true,
        counterexample: None,
    })
}

/// Sardinas–Patterson lifted to regular languages.
///
/// Every residual set Uₙ is a union of right-languages of a subset of states
/// of the (minimized) automaton of X, so the iteration runs over state
/// subsets and terminates by memoization.
pub fn is_code_regular(lang: &RegularLang) -> Result<bool> {
    if lang.contains(&Word::empty()) {
        return Err(Error::EpsilonInCode);
    }
    if lang.is_empty() {
        return Ok(true);
    }
    let min = lang.minimize();
    let d = min.dfa();
    let n = d.trans.len();
    let accepting: BTreeSet<usize> = (0..n).filter(|&q| d.accepting[q]).collect();

    // pairs (p, q) reachable from the seed set; `collect` picks the tracked
    // component whenever the guard on the other one fires
    let step_pairs = |seeds: &[(usize, usize)]| -> Vec<(usize, usize)> {
        seeds
            .iter()
            .flat_map(|&(p, q)| (0..d.nsyms).map(move |s| (d.trans[p][s], d.trans[q][s])))
            .collect()
    };
    let closure = |start: Vec<(usize, usize)>| -> HashSet<(usize, usize)> {
        let mut seen: HashSet<(usize, usize)> = start.iter().copied().collect();
        let mut queue: VecDeque<(usize, usize)> = start.into_iter().collect();
        while let Some(pair) = queue.pop_front() {
            for next in step_pairs(&[pair]) {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    };

    // U₁ = X⁻¹X \ {ε}: all reachable accepting states, with ε excluded
    let u1: BTreeSet<usize> = {
        let reach = closure(vec![(d.initial, d.initial)]);
        reach
            .iter()
            .map(|&(p, _)| p)
            .filter(|&p| d.accepting[p])
            .collect()
    };

    let mut seen_sets: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut current = u1;
    let mut exclude_eps = true; // only the first residual set carries the exclusion
    loop {
        if current.is_empty() {
            return Ok(true);
        }
        // T₁ = states reached from U-states by reading a codeword
        let seeds1: Vec<(usize, usize)> = current.iter().map(|&q| (d.initial, q)).collect();
        let t1: BTreeSet<usize> = closure(seeds1)
            .into_iter()
            .filter(|&(p, _)| d.accepting[p])
            .map(|(_, q)| q)
            .collect();
        // T₂ = states of the X-automaton reached by reading a word of U
        let seeds2: Vec<(usize, usize)> = current.iter().map(|&q| (q, d.initial)).collect();
        let start2 = if exclude_eps {
            // words of U₁ are nonempty: start from the one-step successors
            step_pairs(&seeds2)
        } else {
            seeds2
        };
        let t2: BTreeSet<usize> = closure(start2)
            .into_iter()
            .filter(|&(q, _)| d.accepting[q])
            .map(|(_, p)| p)
            .collect();

        let next: BTreeSet<usize> = t1.union(&t2).copied().collect();
        if next.iter().any(|q| accepting.contains(q)) {
            return Ok(false); // ε ∈ U_{n+1}
        }
        if !seen_sets.insert(next.clone()) {
            return Ok(true);
        }
        current = next;
        exclude_eps = false;
    }
}

/// Schützenberger: a regular code is a maximal code iff it is complete.
pub fn is_maximal_code(lang: &RegularLang) -> Result<bool> {
    if !is_code_regular(lang)? {
        return Err(Error::NotACode(
            "maximality is only defined for codes".into(),
        ));
    }
    Ok(lang.is_complete())
}

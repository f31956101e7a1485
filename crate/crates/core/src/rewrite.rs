//! Finite string-rewriting systems.
//!
//! A [`RewriteSystem`] holds oriented rules `lhs -> rhs` over a finite
//! alphabet. Normalization runs a single left-to-right pass with a buffer
//! holding the irreducible prefix read so far; for length-reducing systems
//! this terminates, and for monadic ones it is linear in the input length.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: impl Into<Word>, rhs: impl Into<Word>) -> Result<Rule> {
        let lhs = lhs.into();
        if lhs.is_empty() {
            return Err(Error::EmptyLhs);
        }
        Ok(Rule {
            lhs,
            rhs: rhs.into(),
        })
    }

    fn shortens(&self) -> bool {
        self.lhs.len() > self.rhs.len()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Classification flags of a rule set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SystemClass {
    /// Every rule has the form `(x, 1)` with `x` non-empty.
    pub special: bool,
    /// Every rule `(x, y)` has `|y| <= 1` and `|x| > |y|`.
    pub monadic: bool,
    /// Every rule `(x, y)` has `|x| > |y|`.
    pub length_reducing: bool,
}

/// An overlap of two left-hand sides together with its two one-step
/// descendants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
    /// Indices of the rules producing `left` and `right`.
    pub rules: (usize, usize),
}

/// Outcome of a bounded search in the Thue congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Congruence {
    Equal,
    Distinct,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Vec<Letter>,
    rules: Vec<Rule>,
    /// First rule index for every distinct left-hand side.
    lookup: HashMap<Vec<Letter>, usize>,
    /// Distinct left-hand-side lengths, longest first.
    lhs_lengths: Vec<usize>,
    complete: OnceLock<bool>,
}

impl RewriteSystem {
    /// Builds a system over an explicit alphabet. Every rule letter must be
    /// in the alphabet.
    pub fn new(alphabet: impl IntoIterator<Item = Letter>, rules: Vec<Rule>) -> Result<Self> {
        let mut alphabet: Vec<Letter> = alphabet.into_iter().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        for rule in &rules {
            if rule.lhs.is_empty() {
                return Err(Error::EmptyLhs);
            }
            for l in rule.lhs.iter().chain(rule.rhs.iter()) {
                if alphabet.binary_search(l).is_err() {
                    return Err(Error::LetterNotInAlphabet(*l));
                }
            }
        }
        let mut lookup = HashMap::new();
        for (i, rule) in rules.iter().enumerate() {
            lookup.entry(rule.lhs.to_vec()).or_insert(i);
        }
        let mut lhs_lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lhs_lengths.sort_unstable_by(|a, b| b.cmp(a));
        lhs_lengths.dedup();
        Ok(RewriteSystem {
            alphabet,
            rules,
            lookup,
            lhs_lengths,
            complete: OnceLock::new(),
        })
    }

    /// Builds a system whose alphabet is the set of letters used by its rules.
    pub fn from_rules(rules: Vec<Rule>) -> Result<Self> {
        let alphabet: Vec<Letter> = rules
            .iter()
            .flat_map(|r| r.lhs.iter().chain(r.rhs.iter()).copied())
            .collect();
        RewriteSystem::new(alphabet, rules)
    }

    /// The monoid-with-zero presentation of the polycyclic monoid `P_n`:
    /// `q_i p_i -> 1`, `q_i p_j -> 0` for `i != j`, and the zero rules.
    pub fn polycyclic(rank: u32) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall(rank));
        }
        let mut rules = Vec::new();
        for i in 1..=rank {
            for j in 1..=rank {
                let rhs = if i == j { vec![] } else { vec![Letter::Zero] };
                rules.push(Rule::new(vec![Letter::Inv(i), Letter::Gen(j)], rhs)?);
            }
        }
        let sigma: Vec<Letter> = (1..=rank)
            .map(Letter::Gen)
            .chain((1..=rank).map(Letter::Inv))
            .collect();
        rules.extend(zero_rules(&sigma));
        RewriteSystem::new(sigma.into_iter().chain([Letter::Zero]), rules)
    }

    /// Parses the rule-file format: one `LHS -> RHS` per line, `#` starts a
    /// comment, `e` is the empty word, and an optional `alphabet: <word>`
    /// line declares letters that occur in no rule.
    pub fn parse_rules(text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        let mut extra = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::RuleSyntax {
                line: n + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("alphabet:") {
                let word = Word::parse_symbols(rest, None).map_err(|e| syntax(e.to_string()))?;
                extra.extend(word.iter().copied());
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| syntax("expected `LHS -> RHS`".into()))?;
            let lhs = Word::parse_symbols(lhs, None).map_err(|e| syntax(e.to_string()))?;
            let rhs = Word::parse_symbols(rhs, None).map_err(|e| syntax(e.to_string()))?;
            rules.push(Rule::new(lhs, rhs).map_err(|e| syntax(e.to_string()))?);
        }
        let alphabet: Vec<Letter> = rules
            .iter()
            .flat_map(|r| r.lhs.iter().chain(r.rhs.iter()).copied())
            .chain(extra)
            .collect();
        RewriteSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.alphabet.binary_search(&l).is_ok()
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| !self.contains_letter(**l)) {
            Some(l) => Err(Error::LetterNotInAlphabet(*l)),
            None => Ok(()),
        }
    }

    pub fn classify(&self) -> SystemClass {
        SystemClass {
            special: self.rules.iter().all(|r| r.rhs.is_empty()),
            monadic: self.rules.iter().all(|r| r.rhs.len() <= 1 && r.shortens()),
            length_reducing: self.rules.iter().all(Rule::shortens),
        }
    }

    /// Rewrites the leftmost redex, preferring the longest left-hand side
    /// at that position. `None` when `w` is irreducible.
    pub fn reduce_step(&self, w: &Word) -> Option<Word> {
        for start in 0..w.len() {
            for &len in &self.lhs_lengths {
                if start + len > w.len() {
                    continue;
                }
                if let Some(&ri) = self.lookup.get(&w[start..start + len]) {
                    let mut out = Vec::with_capacity(w.len());
                    out.extend_from_slice(&w[..start]);
                    out.extend_from_slice(&self.rules[ri].rhs);
                    out.extend_from_slice(&w[start + len..]);
                    return Some(Word::from_letters(out));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        (0..w.len()).all(|start| {
            self.lhs_lengths.iter().all(|&len| {
                start + len > w.len() || !self.lookup.contains_key(&w[start..start + len])
            })
        })
    }

    /// An irreducible descendant of `w`. Requires a length-reducing system.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        if !self.classify().length_reducing {
            return Err(Error::NotLengthReducing);
        }
        self.check_word(w)?;
        Ok(Word::from_letters(self.normalize_unchecked(w)))
    }

    /// Single-pass normalization without alphabet or termination checks.
    pub(crate) fn normalize_unchecked(&self, w: &[Letter]) -> Vec<Letter> {
        let mut buffer: Vec<Letter> = Vec::with_capacity(w.len());
        let mut pending: Vec<Letter> = Vec::new();
        let mut input = w.iter();
        loop {
            let next = match pending.pop() {
                Some(l) => l,
                None => match input.next() {
                    Some(&l) => l,
                    None => break,
                },
            };
            buffer.push(next);
            // The buffer was irreducible before the push, so any redex ends
            // at its last letter; the longest such suffix is the leftmost.
            for &len in &self.lhs_lengths {
                if len > buffer.len() {
                    continue;
                }
                let start = buffer.len() - len;
                if let Some(&ri) = self.lookup.get(&buffer[start..]) {
                    buffer.truncate(start);
                    pending.extend(self.rules[ri].rhs.iter().rev());
                    break;
                }
            }
        }
        buffer
    }

    /// All overlaps between left-hand sides: a proper suffix of one equal to
    /// a proper prefix of another, or one left-hand side inside another.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            let l1 = &r1.lhs;
            for (j, r2) in self.rules.iter().enumerate() {
                let l2 = &r2.lhs;
                // Suffix of l1 == prefix of l2, both proper.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let overlap: Word = l1.iter().chain(&l2[k..]).copied().collect();
                    let left: Word = r1.rhs.iter().chain(&l2[k..]).copied().collect();
                    let right: Word = l1[..l1.len() - k]
                        .iter()
                        .chain(r2.rhs.iter())
                        .copied()
                        .collect();
                    out.push(CriticalPair {
                        overlap,
                        left,
                        right,
                        rules: (i, j),
                    });
                }
                // l2 occurs inside l1. Identical left-hand sides count once.
                if i == j || l2.len() > l1.len() || (l2.len() == l1.len() && j < i) {
                    continue;
                }
                for p in 0..=l1.len() - l2.len() {
                    if l1[p..p + l2.len()] != l2[..] {
                        continue;
                    }
                    let right: Word = l1[..p]
                        .iter()
                        .chain(r2.rhs.iter())
                        .chain(&l1[p + l2.len()..])
                        .copied()
                        .collect();
                    out.push(CriticalPair {
                        overlap: l1.clone(),
                        left: r1.rhs.clone(),
                        right,
                        rules: (i, j),
                    });
                }
            }
        }
        out
    }

    /// True iff every critical pair joins. For a length-reducing system this
    /// is equivalent to confluence.
    pub fn is_locally_confluent(&self) -> Result<bool> {
        if !self.classify().length_reducing {
            return Err(Error::NotLengthReducing);
        }
        Ok(self
            .critical_pairs()
            .iter()
            .all(|cp| self.normalize_unchecked(&cp.left) == self.normalize_unchecked(&cp.right)))
    }

    /// Length-reducing and locally confluent, hence complete.
    pub fn is_complete(&self) -> bool {
        *self
            .complete
            .get_or_init(|| self.is_locally_confluent().unwrap_or(false))
    }

    /// Adds the zero letter with rules `x0 -> 0`, `0x -> 0`, `00 -> 0`.
    pub fn adjoin_zero(&self) -> Result<RewriteSystem> {
        if self.contains_letter(Letter::Zero) {
            return Err(Error::AlreadyHasZero);
        }
        let mut rules = self.rules.clone();
        rules.extend(zero_rules(&self.alphabet));
        RewriteSystem::new(self.alphabet.iter().copied().chain([Letter::Zero]), rules)
    }

    /// Breadth-first search for a chain of at most `depth` rule applications
    /// (in either direction) from `u` to `v`.
    pub fn chain_search(&self, u: &Word, v: &Word, depth: usize) -> bool {
        if u == v {
            return true;
        }
        let mut seen: HashSet<Vec<Letter>> = HashSet::from([u.to_vec()]);
        let mut queue: VecDeque<(Vec<Letter>, usize)> = VecDeque::from([(u.to_vec(), 0)]);
        while let Some((w, d)) = queue.pop_front() {
            if d == depth {
                continue;
            }
            for next in self.neighbours(&w) {
                if next[..] == v[..] {
                    return true;
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        false
    }

    fn neighbours(&self, w: &[Letter]) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut replace = |from: &[Letter], to: &[Letter]| {
            if from.len() > w.len() {
                return;
            }
            for p in 0..=w.len() - from.len() {
                if w[p..p + from.len()] == *from {
                    let mut next = Vec::with_capacity(w.len() + to.len());
                    next.extend_from_slice(&w[..p]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&w[p + from.len()..]);
                    out.push(next);
                }
            }
        };
        for rule in &self.rules {
            replace(&rule.lhs, &rule.rhs);
            replace(&rule.rhs, &rule.lhs);
        }
        out
    }

    /// Bounded test of Thue congruence. `Distinct` is only reported with a
    /// completeness certificate.
    pub fn bounded_equal(&self, u: &Word, v: &Word, depth: usize) -> Congruence {
        if self.chain_search(u, v, depth) {
            return Congruence::Equal;
        }
        if self.is_complete() && self.check_word(u).is_ok() && self.check_word(v).is_ok() {
            return if self.normalize_unchecked(u) == self.normalize_unchecked(v) {
                Congruence::Equal
            } else {
                Congruence::Distinct
            };
        }
        Congruence::Unknown
    }

    /// All irreducible words of length at most `max_len`, grouped by length
    /// and lexicographically ordered within each group.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut layers: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for w in &layers[len - 1] {
                for &l in &self.alphabet {
                    let mut letters = w.to_vec();
                    letters.push(l);
                    if !self.has_redex_suffix(&letters) {
                        next.push(Word::from_letters(letters));
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    fn has_redex_suffix(&self, w: &[Letter]) -> bool {
        self.lhs_lengths
            .iter()
            .any(|&len| len <= w.len() && self.lookup.contains_key(&w[w.len() - len..]))
    }
}

/// `x0 -> 0` and `0x -> 0` for every `x` in `sigma`, then `00 -> 0`.
fn zero_rules(sigma: &[Letter]) -> Vec<Rule> {
    let z = Letter::Zero;
    let rule = |lhs: Vec<Letter>| Rule {
        lhs: Word::from_letters(lhs),
        rhs: Word::from_letters(vec![z]),
    };
    let mut rules: Vec<Rule> = sigma.iter().map(|&x| rule(vec![x, z])).collect();
    rules.extend(sigma.iter().map(|&x| rule(vec![z, x])));
    rules.push(rule(vec![z, z]));
    rules
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

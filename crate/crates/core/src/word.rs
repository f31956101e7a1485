//! Letters, words and the whitespace-separated token syntax.
//!
//! Polycyclic words use `p<i>` for a generator, `q<i>` for its inverse and
//! `0` for the zero symbol; `e` alone is the empty word. Rule files and the
//! example monoids may also use bare ASCII letters (`bac`), where every
//! character is one letter.

use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A single alphabet symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// The generator `p_i`.
    Gen(u32),
    /// The inverse generator `p_i^{-1}`.
    Inv(u32),
    /// The zero symbol.
    Zero,
    /// A bare letter of a named alphabet (`a`, `b`, ...).
    Named(char),
}

impl Letter {
    /// Inverse of a polycyclic letter; `None` for zero and named letters.
    pub fn inverse(self) -> Option<Letter> {
        match self {
            Letter::Gen(i) => Some(Letter::Inv(i)),
            Letter::Inv(i) => Some(Letter::Gen(i)),
            Letter::Zero | Letter::Named(_) => None,
        }
    }

    pub fn index(self) -> Option<u32> {
        match self {
            Letter::Gen(i) | Letter::Inv(i) => Some(i),
            _ => None,
        }
    }

    fn is_generator_kind(self) -> bool {
        matches!(self, Letter::Gen(_) | Letter::Inv(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(i) => write!(f, "p{i}"),
            Letter::Inv(i) => write!(f, "q{i}"),
            Letter::Zero => f.write_str("0"),
            Letter::Named(c) => write!(f, "{c}"),
        }
    }
}

/// A finite sequence of letters. The empty sequence is the word `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Parses the strict polycyclic token syntax:
    /// `word := "e" | token (SP token)*`, `token := ("p"|"q") digits | "0"`.
    pub fn parse(text: &str, rank: u32) -> Result<Word> {
        parse_tokens(text, |tok, out| {
            out.push(parse_generator_token(tok, Some(rank))?);
            Ok(())
        })
    }

    /// Parses the relaxed syntax used by rule files: in addition to the
    /// polycyclic tokens, a token made of ASCII letters (and `0`) contributes
    /// one letter per character. `rank`, when given, bounds generator indices.
    pub fn parse_symbols(text: &str, rank: Option<u32>) -> Result<Word> {
        parse_tokens(text, |tok, out| {
            if looks_like_generator(tok) || tok == "0" {
                out.push(parse_generator_token(tok, rank)?);
                return Ok(());
            }
            if !tok.chars().all(|c| c.is_ascii_alphabetic() || c == '0') {
                return Err(Error::UnknownToken(tok.to_string()));
            }
            out.extend(tok.chars().map(|c| {
                if c == '0' {
                    Letter::Zero
                } else {
                    Letter::Named(c)
                }
            }));
            Ok(())
        })
    }

    /// Reversal with every letter inverted: `(xw)^{-1} = w^{-1} x^{-1}`.
    pub fn inverse(&self) -> Result<Word> {
        self.letters
            .iter()
            .rev()
            .map(|&l| {
                l.inverse().ok_or(match l {
                    Letter::Zero => Error::ContainsZero,
                    other => Error::NotPolycyclic(other),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    /// `|w|_x`.
    pub fn count(&self, x: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == x).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Largest generator index used, or 0.
    pub fn max_index(&self) -> u32 {
        self.letters
            .iter()
            .filter_map(|l| l.index())
            .max()
            .unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word { letters }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Formats a letter slice in canonical token syntax.
pub fn format_letters(letters: &[Letter]) -> String {
    struct Show<'a>(&'a [Letter]);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_letters(f, self.0)
        }
    }
    Show(letters).to_string()
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("e");
    }
    // Named alphabets print compactly (`bac`); generator tokens need spaces.
    let spaced = letters.iter().any(|l| l.is_generator_kind())
        || !letters.iter().any(|l| matches!(l, Letter::Named(_)));
    for (i, l) in letters.iter().enumerate() {
        if spaced && i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

fn parse_tokens(
    text: &str,
    mut push: impl FnMut(&str, &mut Vec<Letter>) -> Result<()>,
) -> Result<Word> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    match tokens.as_slice() {
        [] => return Err(Error::EmptyInput),
        ["e"] => return Ok(Word::empty()),
        _ => {}
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for tok in tokens {
        if tok == "e" {
            return Err(Error::MisplacedEmpty);
        }
        push(tok, &mut letters)?;
    }
    Ok(Word { letters })
}

fn looks_like_generator(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some('p' | 'q')) && tok.len() > 1 && chars.all(|c| c.is_ascii_digit())
}

fn parse_generator_token(tok: &str, rank: Option<u32>) -> Result<Letter> {
    if tok == "0" {
        return Ok(Letter::Zero);
    }
    if !looks_like_generator(tok) {
        return Err(Error::UnknownToken(tok.to_string()));
    }
    let index: u32 = tok[1..]
        .parse()
        .map_err(|_| Error::UnknownToken(tok.to_string()))?;
    let limit = rank.unwrap_or(u32::MAX);
    if index == 0 || index > limit {
        return Err(Error::IndexOutOfRank {
            index,
            rank: rank.unwrap_or(0),
        });
    }
    Ok(if tok.starts_with('p') {
        Letter::Gen(index)
    } else {
        Letter::Inv(index)
    })
}

/// A word over the positive generators `p_1, ..., p_n`, stored as indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveWord(Vec<u32>);

impl PositiveWord {
    pub fn empty() -> Self {
        PositiveWord(Vec::new())
    }

    pub fn new(indices: Vec<u32>) -> Self {
        debug_assert!(indices.iter().all(|&i| i >= 1));
        PositiveWord(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &PositiveWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `Some(z)` with `other = self · z`.
    pub fn left_quotient_of(&self, other: &PositiveWord) -> Option<PositiveWord> {
        other
            .0
            .strip_prefix(self.0.as_slice())
            .map(|z| PositiveWord(z.to_vec()))
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        PositiveWord(v)
    }

    pub fn prefix(&self, len: usize) -> PositiveWord {
        PositiveWord(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> PositiveWord {
        PositiveWord(self.0[start..].to_vec())
    }

    pub fn common_prefix_len(&self, other: &PositiveWord) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// The word as letters `p_i`.
    pub fn to_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().map(|&i| Letter::Gen(i))
    }

    /// The letters of `self^{-1}`.
    pub fn to_inverse_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().rev().map(|&i| Letter::Inv(i))
    }

    /// All positive words over `rank` generators with length at most
    /// `max_len`, ordered by length, then lexicographically.
    pub fn all_up_to(rank: u32, max_len: usize) -> Vec<PositiveWord> {
        let mut out = vec![PositiveWord::empty()];
        let mut layer_start = 0;
        for _ in 0..max_len {
            let layer_end = out.len();
            for w in layer_start..layer_end {
                for i in 1..=rank {
                    let mut next = out[w].0.clone();
                    next.push(i);
                    out.push(PositiveWord(next));
                }
            }
            layer_start = layer_end;
        }
        out
    }
}

impl From<Vec<u32>> for PositiveWord {
    fn from(indices: Vec<u32>) -> Self {
        PositiveWord::new(indices)
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "p{i}")?;
        }
        Ok(())
    }
}

impl Serialize for PositiveWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// True iff one of `u`, `v` is a prefix of the other.
pub fn is_prefix_comparable(u: &PositiveWord, v: &PositiveWord) -> bool {
    u.is_prefix_of(v) || v.is_prefix_of(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("p1 p2").inverse().unwrap(), w("q2 q1"));
        assert_eq!(w("q1 p2").inverse().unwrap(), w("q2 p1"));
        assert_eq!(w("e").inverse().unwrap(), Word::empty());
        assert_eq!(w("p1 0").inverse(), Err(Error::ContainsZero));
    }

    #[test]
    fn counts_occurrences() {
        let aabba = Word::parse_symbols("aabba", None).unwrap();
        assert_eq!(aabba.len(), 5);
        assert_eq!(aabba.count(Letter::Named('a')), 3);
        assert_eq!(aabba.count(Letter::Named('c')), 0);
        assert_eq!(Word::empty().count(Letter::Gen(1)), 0);
    }

    #[test]
    fn prefix_comparability() {
        let p = |v: Vec<u32>| PositiveWord::new(v);
        assert!(is_prefix_comparable(&p(vec![1]), &p(vec![1, 2])));
        assert!(!is_prefix_comparable(&p(vec![1, 2]), &p(vec![1, 3])));
        assert!(is_prefix_comparable(&p(vec![]), &p(vec![2, 2, 1])));
    }

    #[test]
    fn parses_tokens() {
        assert_eq!(
            Word::parse("p1 q2", 2).unwrap().to_vec(),
            vec![Letter::Gen(1), Letter::Inv(2)]
        );
        assert_eq!(Word::parse("0", 2).unwrap().to_vec(), vec![Letter::Zero]);
        assert_eq!(
            Word::parse("p3", 2),
            Err(Error::IndexOutOfRank { index: 3, rank: 2 })
        );
        assert_eq!(
            Word::parse("p0", 2),
            Err(Error::IndexOutOfRank { index: 0, rank: 2 })
        );
        assert!(matches!(Word::parse("x1", 2), Err(Error::UnknownToken(_))));
        assert!(matches!(Word::parse("p", 2), Err(Error::UnknownToken(_))));
        assert_eq!(Word::parse("  ", 2), Err(Error::EmptyInput));
        assert_eq!(Word::parse("p1 e", 2), Err(Error::MisplacedEmpty));
        // Zero may appear anywhere; reduction gives it meaning.
        assert_eq!(Word::parse("p1 0 q1", 2).unwrap().len(), 3);
    }

    #[test]
    fn parses_named_letters() {
        let word = Word::parse_symbols("ba c", None).unwrap();
        assert_eq!(
            word.to_vec(),
            vec![Letter::Named('b'), Letter::Named('a'), Letter::Named('c')]
        );
        assert_eq!(word.to_string(), "bac");
        let zeroed = Word::parse_symbols("a0", None).unwrap();
        assert_eq!(zeroed.to_vec(), vec![Letter::Named('a'), Letter::Zero]);
        assert!(Word::parse("bac", 2).is_err());
        assert!(matches!(
            Word::parse_symbols("a-b", None),
            Err(Error::UnknownToken(_))
        ));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(w("p1   q2 0").to_string(), "p1 q2 0");
        assert_eq!(Word::empty().to_string(), "e");
        assert_eq!(PositiveWord::new(vec![1, 3]).to_string(), "p1 p3");
    }

    #[test]
    fn positive_words_enumerate_by_length() {
        let all = PositiveWord::all_up_to(2, 3);
        assert_eq!(all.len(), 1 + 2 + 4 + 8);
        assert!(all
            .windows(2)
            .all(|p| (p[0].len(), &p[0]) < (p[1].len(), &p[1])));
    }

    fn letter(rank: u32) -> impl Strategy<Value = Letter> {
        prop_oneof![
            (1..=rank).prop_map(Letter::Gen),
            (1..=rank).prop_map(Letter::Inv),
            Just(Letter::Zero),
        ]
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(letters in proptest::collection::vec(letter(4), 0..12)) {
            let word = Word::from_letters(letters);
            prop_assert_eq!(Word::parse(&word.to_string(), 4).unwrap(), word);
        }

        #[test]
        fn inverse_is_an_involution(indices in proptest::collection::vec((1u32..=3, any::<bool>()), 0..12)) {
            let word: Word = indices
                .into_iter()
                .map(|(i, pos)| if pos { Letter::Gen(i) } else { Letter::Inv(i) })
                .collect();
            let inv = word.inverse().unwrap();
            prop_assert_eq!(inv.len(), word.len());
            prop_assert_eq!(inv.inverse().unwrap(), word);
        }

        #[test]
        fn letter_counts_sum_to_length(letters in proptest::collection::vec(letter(2), 0..16)) {
            let word = Word::from_letters(letters);
            let alphabet = [Letter::Gen(1), Letter::Gen(2), Letter::Inv(1), Letter::Inv(2), Letter::Zero];
            let total: usize = alphabet.iter().map(|&x| word.count(x)).sum();
            prop_assert_eq!(total, word.len());
        }
    }
}

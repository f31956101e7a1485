use thiserror::Error;

use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("generator index {index} is outside rank {rank}")]
    IndexOutOfRank { index: u32, rank: u32 },

    #[error("empty input (use `e` for the empty word)")]
    EmptyInput,

    #[error("`e` denotes the empty word and cannot be combined with other tokens")]
    MisplacedEmpty,

    #[error("letter `{0}` is not in the alphabet")]
    LetterNotInAlphabet(Letter),

    #[error("word contains the zero letter")]
    ContainsZero,

    #[error("a rule must have a non-empty left-hand side")]
    EmptyLhs,

    #[error("rule file line {line}: {message}")]
    RuleSyntax { line: usize, message: String },

    #[error("the rewriting system is not length-reducing; normalization is refused")]
    NotLengthReducing,

    #[error("the rewriting system is not complete")]
    NotComplete,

    #[error("the alphabet already contains the zero letter")]
    AlreadyHasZero,

    #[error("alphabet collision on letter `{0}`")]
    AlphabetCollision(Letter),

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(u32),

    #[error("`{0}` is not a word over the polycyclic alphabet")]
    NotPolycyclic(Letter),

    #[error("factors are not prefix-comparable")]
    NotPrefixComparable,

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Normal forms and conjugacy deciders for the polycyclic monoids `P_n`,
//! built on a small string-rewriting engine, with brute-force oracles and a
//! handful of example monoids used to separate the conjugacy relations.

pub mod bench;
pub mod conjugacy;
pub mod error;
pub mod polycyclic;
pub mod rewrite;
pub mod word;
pub mod zoo;

pub use error::{Error, Result};
pub use polycyclic::{PnElement, Polycyclic};
pub use rewrite::RewriteSystem;
pub use word::{Letter, PositiveWord, Word};

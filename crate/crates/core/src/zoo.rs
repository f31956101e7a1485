//! Small example monoids used to separate the conjugacy relations.
//!
//! Presets: `example22`, `example22-zero`, `onerel-<k>` and `tin1-trivial`.

use serde::Serialize;

use crate::conjugacy::oracle::{oracle_conj_c, oracle_conj_o, oracle_conj_p, OracleOutcome};
use crate::conjugacy::Relation;
use crate::error::{Error, Result};
use crate::rewrite::{Congruence, RewriteSystem, Rule};
use crate::word::{Letter, Word};

/// Chain-search depth for word problems in systems that are not complete.
pub const FALLBACK_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooKind {
    /// `{ab -> b, cb -> b}`, optionally with a zero adjoined.
    Example22 { with_zero: bool },
    /// `a^{k+1} -> a^k`.
    OneRelator { k: usize },
    /// The base rules plus the `a`, `b` rules, over base letters `sigma`.
    Tin1 { sigma: Vec<Letter> },
}

#[derive(Debug, Clone)]
pub struct ZooMonoid {
    pub name: String,
    pub description: String,
    pub kind: ZooKind,
    pub system: RewriteSystem,
}

/// A specialized decision. `witness` is `(u, v)` with `a = uv`, `b = vu` for
/// `p`, and `(g, h)` with `ag = gb`, `bh = ha` for `c` and `o`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZooVerdict {
    pub related: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Word, Word)>,
}

fn named(text: &str) -> Word {
    text.chars().map(Letter::Named).collect()
}

fn rule(lhs: &str, rhs: &str) -> Rule {
    Rule::new(named(lhs), named(rhs)).expect("non-empty left-hand side")
}

pub fn make_example22() -> ZooMonoid {
    let system = RewriteSystem::new(
        "abc".chars().map(Letter::Named),
        vec![rule("ab", "b"), rule("cb", "b")],
    )
    .expect("letters are in the alphabet");
    ZooMonoid {
        name: "example22".into(),
        description: "<a, b, c | ab = b, cb = b>; normal forms b^k v with v over {a, c}".into(),
        kind: ZooKind::Example22 { with_zero: false },
        system,
    }
}

pub fn make_example22_zero() -> ZooMonoid {
    let base = make_example22();
    ZooMonoid {
        name: "example22-zero".into(),
        description: "example22 with a zero adjoined".into(),
        kind: ZooKind::Example22 { with_zero: true },
        system: base.system.adjoin_zero().expect("example22 has no zero"),
    }
}

pub fn make_one_relator_power(k: usize) -> Result<ZooMonoid> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 1, got {k}"
        )));
    }
    let system = RewriteSystem::new(
        [Letter::Named('a')],
        vec![rule(&"a".repeat(k + 1), &"a".repeat(k))],
    )
    .expect("letters are in the alphabet");
    Ok(ZooMonoid {
        name: format!("onerel-{k}"),
        description: format!("<a | a^{} = a^{k}>; elements 1, a, ..., a^{k}", k + 1),
        kind: ZooKind::OneRelator { k },
        system,
    })
}

/// Extends a base presentation over `Σ` by letters `a`, `b` with
/// `xa = ax` (x in Σ), `bx = b` (x in Σ ∪ {a}), `xb = b` (x in Σ) and
/// `aa = a`.
pub fn make_tin1(base: &RewriteSystem) -> Result<ZooMonoid> {
    let (a, b) = (Letter::Named('a'), Letter::Named('b'));
    for l in [a, b] {
        if base.contains_letter(l) {
            return Err(Error::AlphabetCollision(l));
        }
    }
    let sigma: Vec<Letter> = base.alphabet().to_vec();
    let mut rules = base.rules().to_vec();
    let pair = |l: Letter, r: Letter| Word::from_letters(vec![l, r]);
    for &x in &sigma {
        rules.push(Rule::new(pair(x, a), pair(a, x))?);
    }
    for &x in sigma.iter().chain([&a]) {
        rules.push(Rule::new(pair(b, x), Word::from_letters(vec![b]))?);
    }
    for &x in &sigma {
        rules.push(Rule::new(pair(x, b), Word::from_letters(vec![b]))?);
    }
    rules.push(Rule::new(pair(a, a), Word::from_letters(vec![a]))?);
    let system = RewriteSystem::new(sigma.iter().copied().chain([a, b]), rules)?;
    let trivial = sigma.is_empty();
    Ok(ZooMonoid {
        name: if trivial {
            "tin1-trivial".into()
        } else {
            "tin1".into()
        },
        description: "base group extended by an idempotent a and a left/right absorbing b".into(),
        kind: ZooKind::Tin1 { sigma },
        system,
    })
}

pub fn make_tin1_trivial() -> ZooMonoid {
    let empty = RewriteSystem::new(std::iter::empty(), Vec::new()).expect("empty system");
    make_tin1(&empty).expect("trivial base has no collisions")
}

/// Resolves a preset name.
pub fn preset(name: &str) -> Result<ZooMonoid> {
    match name {
        "example22" => Ok(make_example22()),
        "example22-zero" => Ok(make_example22_zero()),
        "tin1-trivial" => Ok(make_tin1_trivial()),
        _ => match name.strip_prefix("onerel-").map(str::parse::<usize>) {
            Some(Ok(k)) => make_one_relator_power(k),
            _ => Err(Error::UnknownPreset(name.to_string())),
        },
    }
}

impl ZooMonoid {
    pub fn parse(&self, text: &str) -> Result<Word> {
        let w = Word::parse_symbols(text, None)?;
        self.system.check_word(&w)?;
        Ok(w)
    }

    pub fn is_complete(&self) -> bool {
        self.system.is_complete()
    }

    /// Normal form; only available when the system is complete.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        if !self.system.classify().length_reducing {
            return Err(Error::NotLengthReducing);
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        self.system.normalize(w)
    }

    /// The word problem: normal forms when complete, a bounded chain search
    /// otherwise.
    pub fn equal(&self, u: &Word, v: &Word) -> Congruence {
        match (self.normalize(u), self.normalize(v)) {
            (Ok(nu), Ok(nv)) if nu == nv => Congruence::Equal,
            (Ok(_), Ok(_)) => Congruence::Distinct,
            _ => self.system.bounded_equal(u, v, FALLBACK_DEPTH),
        }
    }

    fn same(&self, u: &Word, v: &Word) -> bool {
        self.equal(u, v) == Congruence::Equal
    }

    /// Relations with a specialized decider.
    pub fn relations(&self) -> &'static [Relation] {
        match self.kind {
            ZooKind::Example22 { .. } => &[],
            ZooKind::OneRelator { .. } => &[Relation::P, Relation::C, Relation::O],
            // Without a zero every g lies in 𝒫(u), so ∼c and ∼o coincide.
            ZooKind::Tin1 { .. } => &[Relation::C, Relation::O],
        }
    }

    pub fn decide(&self, rel: Relation, u: &Word, v: &Word) -> Result<ZooVerdict> {
        self.system.check_word(u)?;
        self.system.check_word(v)?;
        if !self.relations().contains(&rel) {
            return Err(Error::InvalidParameter(format!(
                "relation `{rel}` has no decider for `{}`",
                self.name
            )));
        }
        match &self.kind {
            ZooKind::OneRelator { k } => self.decide_one_relator(*k, rel, u, v),
            ZooKind::Tin1 { .. } => Ok(self.decide_tin1(u, v)),
            ZooKind::Example22 { .. } => unreachable!("no deciders"),
        }
    }

    fn decide_one_relator(
        &self,
        k: usize,
        rel: Relation,
        u: &Word,
        v: &Word,
    ) -> Result<ZooVerdict> {
        let (nu, nv) = (self.normalize(u)?, self.normalize(v)?);
        Ok(match rel {
            Relation::O => ZooVerdict {
                related: true,
                witness: Some((named(&"a".repeat(k)), named(&"a".repeat(k)))),
            },
            _ if nu != nv => ZooVerdict {
                related: false,
                witness: None,
            },
            Relation::C => ZooVerdict {
                related: true,
                witness: Some((Word::empty(), Word::empty())),
            },
            _ => ZooVerdict {
                related: true,
                witness: Some((nu, Word::empty())),
            },
        })
    }

    /// Related iff the two words have the same number of `b`s.
    fn decide_tin1(&self, u: &Word, v: &Word) -> ZooVerdict {
        let b = Letter::Named('b');
        let (pu, pv) = (u.count(b), v.count(b));
        if pu != pv {
            return ZooVerdict {
                related: false,
                witness: None,
            };
        }
        let witness = if pu == 0 {
            (named("ab"), named("ab"))
        } else {
            // Each side is b^p or a b^p; b absorbs on both sides.
            let starts_with_a = |w: &Word| {
                let reduced: Word = w
                    .iter()
                    .copied()
                    .filter(|l| *l == b || *l == Letter::Named('a'))
                    .collect();
                reduced.first() == Some(&Letter::Named('a'))
            };
            match (starts_with_a(u), starts_with_a(v)) {
                (x, y) if x == y => (Word::empty(), Word::empty()),
                (false, true) => (named("b"), named("a")),
                _ => (named("a"), named("b")),
            }
        };
        ZooVerdict {
            related: true,
            witness: Some(witness),
        }
    }

    /// Checks a `c`/`o` witness `(g, h)` with the word problem.
    pub fn verifies_conjugators(&self, u: &Word, v: &Word, g: &Word, h: &Word) -> bool {
        self.same(&u.concat(g), &g.concat(v)) && self.same(&v.concat(h), &h.concat(u))
    }

    /// Checks a `p` witness `(x, y)`: `u = xy` and `v = yx`.
    pub fn verifies_factorization(&self, u: &Word, v: &Word, x: &Word, y: &Word) -> bool {
        self.same(u, &x.concat(y)) && self.same(v, &y.concat(x))
    }
}

/// A sampled pair related under `holds` but not under `fails`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub holds: Relation,
    pub fails: Relation,
    pub a: Word,
    pub b: Word,
    /// The witness for `holds`.
    pub witness: (Word, Word),
    /// `fails` is refuted only up to the report's bounds.
    pub refuted_up_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEvidence {
    pub a: Word,
    pub b: Word,
    pub relation: Relation,
    pub outcome: OracleOutcome<(Word, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub monoid: String,
    pub bound: usize,
    pub probe_bound: usize,
    pub sample_size: usize,
    /// The pair `(bac, ba)` under each relation.
    pub bac_ba: Vec<PairEvidence>,
    /// Sampled elements found c-conjugate to zero.
    pub zero_class_c: Vec<Word>,
    /// Every sampled pair had an o-witness.
    pub o_universal_on_sample: bool,
    /// For each ordered pair of relations, the first sampled pair separating
    /// them.
    pub separations: Vec<Separation>,
    /// Ordered pairs of relations with no separating sampled pair.
    pub not_separated: Vec<(Relation, Relation)>,
}

/// Runs the oracles over the zero-adjoined example22 monoid.
///
/// `bound` limits the length of witnesses, `probe_bound` the multipliers
/// used to test `𝒫` membership, and the sample is every irreducible word of
/// length at most `sample_len`. Negative answers are bounded refutations.
pub fn separation_report(
    bound: usize,
    probe_bound: usize,
    sample_len: usize,
) -> Result<SeparationReport> {
    let m0 = make_example22_zero();
    let sys = &m0.system;
    let outcomes = |a: &Word, b: &Word| -> Result<[OracleOutcome<(Word, Word)>; 3]> {
        Ok([
            oracle_conj_p(sys, a, b, bound)?,
            oracle_conj_c(sys, a, b, bound, probe_bound)?,
            oracle_conj_o(sys, a, b, bound)?,
        ])
    };
    let relations = [Relation::P, Relation::C, Relation::O];

    let (bac, ba) = (named("bac"), named("ba"));
    let bac_ba = relations
        .iter()
        .zip(outcomes(&bac, &ba)?)
        .map(|(&relation, outcome)| PairEvidence {
            a: bac.clone(),
            b: ba.clone(),
            relation,
            outcome,
        })
        .collect();

    let sample: Vec<Word> = sys
        .irreducible_words(sample_len)
        .into_iter()
        .flatten()
        .collect();
    let zero = Word::from_letters(vec![Letter::Zero]);
    let mut zero_class_c = Vec::new();
    let mut o_universal_on_sample = true;
    let mut found: Vec<Option<Separation>> = vec![None; 9];
    for a in &sample {
        for b in &sample {
            let out = outcomes(a, b)?;
            if a == &zero && out[1].is_yes() {
                zero_class_c.push(b.clone());
            }
            o_universal_on_sample &= out[2].is_yes();
            for (i, holds) in out.iter().enumerate() {
                for (j, fails) in out.iter().enumerate() {
                    let slot = &mut found[3 * i + j];
                    if let (None, Some(w), false) = (&slot, holds.witness(), fails.is_yes()) {
                        *slot = Some(Separation {
                            holds: relations[i],
                            fails: relations[j],
                            a: a.clone(),
                            b: b.clone(),
                            witness: w.clone(),
                            refuted_up_to: bound,
                        });
                    }
                }
            }
        }
    }
    let mut separations = Vec::new();
    let mut not_separated = Vec::new();
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            match found[3 * i + j].take() {
                Some(s) => separations.push(s),
                None => not_separated.push((relations[i], relations[j])),
            }
        }
    }

    Ok(SeparationReport {
        monoid: m0.name.clone(),
        bound,
        probe_bound,
        sample_size: sample.len(),
        bac_ba,
        zero_class_c,
        o_universal_on_sample,
        separations,
        not_separated,
    })
}

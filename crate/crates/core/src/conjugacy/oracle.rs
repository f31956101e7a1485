//! Brute-force witness searches.
//!
//! None of these use the characterizations behind the deciders. Products are
//! computed by the rewriting system and every candidate is verified that
//! way. All searches are bounded, so a negative answer only says that no
//! witness exists up to the bound. Candidates are ordered by total length,
//! then by the length of the first component, then lexicographically, and
//! the first one found is returned.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycyclic::{PnElement, Polycyclic};
use crate::rewrite::RewriteSystem;
use crate::word::{Letter, PositiveWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum OracleOutcome<W> {
    Yes { witness: W },
    NoAtBound { bound: usize },
}

impl<W> OracleOutcome<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleOutcome::Yes { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            OracleOutcome::Yes { witness } => Some(witness),
            OracleOutcome::NoAtBound { .. } => None,
        }
    }
}

fn require_complete(sys: &RewriteSystem) -> Result<()> {
    if !sys.classify().length_reducing {
        return Err(Error::NotLengthReducing);
    }
    if !sys.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(())
}

fn joined(sys: &RewriteSystem, u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut w = Vec::with_capacity(u.len() + v.len());
    w.extend_from_slice(u);
    w.extend_from_slice(v);
    sys.normalize_unchecked(&w)
}

/// Searches for irreducible `u`, `v` of length at most `bound` with
/// `uv = a` and `vu = b` in the monoid presented by the complete system.
pub fn oracle_conj_p(
    sys: &RewriteSystem,
    a: &Word,
    b: &Word,
    bound: usize,
) -> Result<OracleOutcome<(Word, Word)>> {
    require_complete(sys)?;
    let na = sys.normalize(a)?;
    let nb = sys.normalize(b)?;
    let layers = sys.irreducible_words(bound);
    for total in 0..=2 * bound {
        for lu in total.saturating_sub(bound)..=total.min(bound) {
            for u in &layers[lu] {
                for v in &layers[total - lu] {
                    if joined(sys, u, v)[..] == na[..] && joined(sys, v, u)[..] == nb[..] {
                        return Ok(OracleOutcome::Yes {
                            witness: (u.clone(), v.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(OracleOutcome::NoAtBound { bound })
}

/// Searches for irreducible `g`, `h` of length at most `bound` with
/// `ag = gb` and `bh = ha`.
pub fn oracle_conj_o(
    sys: &RewriteSystem,
    a: &Word,
    b: &Word,
    bound: usize,
) -> Result<OracleOutcome<(Word, Word)>> {
    require_complete(sys)?;
    let na = sys.normalize(a)?;
    let nb = sys.normalize(b)?;
    let layers = sys.irreducible_words(bound);
    let first = |l: &Word, r: &Word| {
        layers
            .iter()
            .flatten()
            .find(|g| joined(sys, l, g) == joined(sys, g, r))
            .cloned()
    };
    Ok(match (first(&na, &nb), first(&nb, &na)) {
        (Some(g), Some(h)) => OracleOutcome::Yes { witness: (g, h) },
        _ => OracleOutcome::NoAtBound { bound },
    })
}

/// Bounded test of `g ∈ 𝒫(a)`: no irreducible `m` of length at most
/// `probe_bound` has `mag = 0` but `ma != 0`.
pub fn pp_member_bounded(
    sys: &RewriteSystem,
    g: &Word,
    a: &Word,
    probe_bound: usize,
) -> Result<bool> {
    require_complete(sys)?;
    let na = sys.normalize(a)?;
    let ng = sys.normalize(g)?;
    let layers = sys.irreducible_words(probe_bound);
    Ok(pp_member_in(sys, &layers, &ng, &na))
}

fn pp_member_in(sys: &RewriteSystem, probes: &[Vec<Word>], g: &[Letter], a: &[Letter]) -> bool {
    let zero = [Letter::Zero];
    if a == zero {
        return g == zero;
    }
    probes.iter().flatten().all(|m| {
        let ma = joined(sys, m, a);
        ma == zero || joined(sys, &ma, g) != zero
    })
}

/// Searches for irreducible `g`, `h` of length at most `bound` with
/// `ag = gb`, `bh = ha`, `g ∈ 𝒫(a)` and `h ∈ 𝒫(b)`, where membership is
/// tested against every `m` of length at most `probe_bound`.
pub fn oracle_conj_c(
    sys: &RewriteSystem,
    a: &Word,
    b: &Word,
    bound: usize,
    probe_bound: usize,
) -> Result<OracleOutcome<(Word, Word)>> {
    require_complete(sys)?;
    let na = sys.normalize(a)?;
    let nb = sys.normalize(b)?;
    let layers = sys.irreducible_words(bound);
    let probes = sys.irreducible_words(probe_bound);
    let first = |l: &Word, r: &Word| {
        layers
            .iter()
            .flatten()
            .find(|g| joined(sys, l, g) == joined(sys, g, r) && pp_member_in(sys, &probes, g, l))
            .cloned()
    };
    Ok(match (first(&na, &nb), first(&nb, &na)) {
        (Some(g), Some(h)) => OracleOutcome::Yes { witness: (g, h) },
        _ => OracleOutcome::NoAtBound { bound },
    })
}

type PairKey = (usize, usize, Vec<Letter>, Vec<Letter>);

/// All factorizations `a = uv` in `P_n` with `|u|, |v| <= bound`, indexed by
/// the product `vu`.
///
/// The candidates `v` for a given `u` are found by left division in the
/// normal form; each candidate is then checked by rewriting `uv`, and `vu`
/// is computed by rewriting.
pub struct PFactorIndex {
    bound: usize,
    /// For each `vu`, the least witness for each value of `max(|u|, |v|)`.
    targets: HashMap<PnElement, BTreeMap<usize, (PairKey, PnElement, PnElement)>>,
}

impl PFactorIndex {
    pub fn build(pn: &Polycyclic, a: &PnElement, bound: usize) -> Result<Self> {
        pn.check(a)?;
        let PnElement::NonZero { y, x } = a else {
            return Err(Error::InvalidParameter(
                "factor index needs a nonzero element".into(),
            ));
        };
        let sys = pn.system();
        let target = a.to_word();
        let words = PositiveWord::all_up_to(pn.rank(), bound);
        let mut index = PFactorIndex {
            bound,
            targets: HashMap::new(),
        };
        let mut record = |u: &PnElement, v: PnElement| {
            if v.word_len() > bound {
                return;
            }
            let (uw, vw) = (u.to_word(), v.to_word());
            if joined(sys, &uw, &vw)[..] != target[..] {
                return;
            }
            let vu = PnElement::from_irreducible(&joined(sys, &vw, &uw))
                .expect("normal forms of P_n are y x^-1 or 0");
            let m = uw.len().max(vw.len());
            let key = (
                uw.len() + vw.len(),
                uw.len(),
                uw.into_letters(),
                vw.into_letters(),
            );
            let slot = index.targets.entry(vu).or_default();
            if slot.get(&m).is_none_or(|(k, _, _)| key < *k) {
                slot.insert(m, (key, u.clone(), v));
            }
        };
        for cut in 0..=y.len().min(bound) {
            let y1 = y.prefix(cut);
            let z = y.suffix_from(cut);
            for x1 in words.iter().take_while(|w| w.len() + cut <= bound) {
                let u = PnElement::new(y1.clone(), x1.clone());
                // v = x1 z x^{-1}: then uv = y1 z x^{-1}.
                record(&u, PnElement::new(x1.concat(&z), x.clone()));
                if cut == y.len() {
                    // x1 = v_y t and x = v_x t, t a nonempty common suffix.
                    let common = x1
                        .indices()
                        .iter()
                        .rev()
                        .zip(x.indices().iter().rev())
                        .take_while(|(p, q)| p == q)
                        .count();
                    for k in 1..=common {
                        record(
                            &u,
                            PnElement::new(x1.prefix(x1.len() - k), x.prefix(x.len() - k)),
                        );
                    }
                }
            }
        }
        Ok(index)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The least `(u, v)` with `vu = b` and `|u|, |v| <= bound`.
    pub fn lookup(&self, b: &PnElement, bound: usize) -> Option<(PnElement, PnElement)> {
        let bound = bound.min(self.bound);
        self.targets
            .get(b)?
            .range(..=bound)
            .map(|(_, entry)| entry)
            .min_by(|p, q| p.0.cmp(&q.0))
            .map(|(_, u, v)| (u.clone(), v.clone()))
    }
}

/// Searches for `u`, `v` in `P_n` with `|u|, |v| <= bound` (irreducible word
/// lengths), `uv = a` and `vu = b`.
pub fn oracle_conj_p_pn(
    pn: &Polycyclic,
    a: &PnElement,
    b: &PnElement,
    bound: usize,
) -> Result<OracleOutcome<(PnElement, PnElement)>> {
    pn.check(a)?;
    pn.check(b)?;
    let found = match (a, b) {
        (PnElement::Zero, PnElement::Zero) => {
            (bound >= 1).then(|| (PnElement::identity(), PnElement::Zero))
        }
        // 0 = uv and b = vu exactly when b = u'v' and 0 = v'u' for u' = v, v' = u.
        (PnElement::Zero, _) => PFactorIndex::build(pn, b, bound)?
            .lookup(&PnElement::Zero, bound)
            .map(|(u, v)| (v, u)),
        _ => PFactorIndex::build(pn, a, bound)?.lookup(b, bound),
    };
    Ok(match found {
        Some(witness) => OracleOutcome::Yes { witness },
        None => OracleOutcome::NoAtBound { bound },
    })
}

type ConjugatorKey = (usize, Vec<Letter>);

/// All `g = r s^{-1}` in `𝒫(a)` with `|r|, |s| <= bound`, indexed by every
/// `b` with `ag = gb`.
///
/// `ag` is computed by rewriting, the candidates `b` are found by left
/// division of `ag` by `g`, and each is checked by rewriting `gb`.
pub struct ConjugatorIndex {
    bound: usize,
    targets: HashMap<PnElement, BTreeMap<usize, (ConjugatorKey, PnElement)>>,
    /// Conjugators with `ag = 0`; these match any `b` with `gb = 0`.
    annihilating: Vec<(usize, ConjugatorKey, PnElement)>,
}

impl ConjugatorIndex {
    pub fn build(pn: &Polycyclic, a: &PnElement, bound: usize) -> Result<Self> {
        pn.check(a)?;
        let PnElement::NonZero { x, .. } = a else {
            return Err(Error::InvalidParameter(
                "conjugator index needs a nonzero element".into(),
            ));
        };
        let sys = pn.system();
        let aw = a.to_word();
        let words = PositiveWord::all_up_to(pn.rank(), bound);
        let mut index = ConjugatorIndex {
            bound,
            targets: HashMap::new(),
            annihilating: Vec::new(),
        };
        for cut in 0..=x.len().min(bound) {
            let r = x.prefix(cut);
            for s in &words {
                let g = PnElement::new(r.clone(), s.clone());
                let gw = g.to_word();
                let m = r.len().max(s.len());
                let key = (gw.len(), gw.to_vec());
                let c = PnElement::from_irreducible(&joined(sys, &aw, &gw))
                    .expect("normal forms of P_n are y x^-1 or 0");
                let PnElement::NonZero { y: cy, x: cx } = &c else {
                    index.annihilating.push((m, key, g));
                    continue;
                };
                let mut candidates = Vec::new();
                if let Some(z) = r.left_quotient_of(cy) {
                    candidates.push(PnElement::new(s.concat(&z), cx.clone()));
                }
                if &r == cy {
                    let common = s
                        .indices()
                        .iter()
                        .rev()
                        .zip(cx.indices().iter().rev())
                        .take_while(|(p, q)| p == q)
                        .count();
                    for k in 1..=common {
                        candidates.push(PnElement::new(
                            s.prefix(s.len() - k),
                            cx.prefix(cx.len() - k),
                        ));
                    }
                }
                for b in candidates {
                    if joined(sys, &gw, &b.to_word())[..] != c.to_word()[..] {
                        continue;
                    }
                    let slot = index.targets.entry(b).or_default();
                    if slot.get(&m).is_none_or(|(k, _)| key < *k) {
                        slot.insert(m, (key.clone(), g.clone()));
                    }
                }
            }
        }
        Ok(index)
    }

    /// The least `g` in `𝒫(a)` with components at most `bound` and `ag = gb`.
    pub fn lookup(&self, pn: &Polycyclic, b: &PnElement, bound: usize) -> Option<PnElement> {
        let bound = bound.min(self.bound);
        let direct = self
            .targets
            .get(b)
            .and_then(|slot| {
                slot.range(..=bound)
                    .map(|(_, e)| e)
                    .min_by(|p, q| p.0.cmp(&q.0))
            })
            .map(|(k, g)| (k.clone(), g.clone()));
        let bw = b.to_word();
        let via_zero = self
            .annihilating
            .iter()
            .filter(|(m, _, g)| {
                *m <= bound && joined(pn.system(), &g.to_word(), &bw)[..] == [Letter::Zero]
            })
            .map(|(_, k, g)| (k.clone(), g.clone()))
            .min_by(|p, q| p.0.cmp(&q.0));
        [direct, via_zero]
            .into_iter()
            .flatten()
            .min_by(|p, q| p.0.cmp(&q.0))
            .map(|(_, g)| g)
    }
}

/// Least `h` in `𝒫(b)`, `b` nonzero, with components at most `bound` and
/// `bh = 0`.
fn annihilator_in_pp(pn: &Polycyclic, b: &PnElement, bound: usize) -> Option<PnElement> {
    let PnElement::NonZero { x, .. } = b else {
        return None;
    };
    let bw = b.to_word();
    let words = PositiveWord::all_up_to(pn.rank(), bound);
    let mut best: Option<ConjugatorKey> = None;
    let mut found = None;
    for cut in 0..=x.len().min(bound) {
        for s in &words {
            let h = PnElement::new(x.prefix(cut), s.clone());
            let hw = h.to_word();
            if joined(pn.system(), &bw, &hw)[..] == [Letter::Zero] {
                let key = (hw.len(), hw.to_vec());
                if best.as_ref().is_none_or(|k| key < *k) {
                    best = Some(key);
                    found = Some(h);
                }
            }
        }
    }
    found
}

/// Searches for `g` in `𝒫(a)` and `h` in `𝒫(b)` with components of length
/// at most `bound` such that `ag = gb` and `bh = ha`.
pub fn oracle_conj_c_pn(
    pn: &Polycyclic,
    a: &PnElement,
    b: &PnElement,
    bound: usize,
) -> Result<OracleOutcome<(PnElement, PnElement)>> {
    pn.check(a)?;
    pn.check(b)?;
    let found = match (a, b) {
        (PnElement::Zero, PnElement::Zero) => Some((PnElement::Zero, PnElement::Zero)),
        // 𝒫(0) = {0}, so the other side must annihilate.
        (PnElement::Zero, _) => annihilator_in_pp(pn, b, bound).map(|h| (PnElement::Zero, h)),
        (_, PnElement::Zero) => annihilator_in_pp(pn, a, bound).map(|g| (g, PnElement::Zero)),
        _ => {
            let g = ConjugatorIndex::build(pn, a, bound)?.lookup(pn, b, bound);
            match g {
                Some(g) => ConjugatorIndex::build(pn, b, bound)?
                    .lookup(pn, a, bound)
                    .map(|h| (g, h)),
                None => None,
            }
        }
    };
    Ok(match found {
        Some(witness) => OracleOutcome::Yes { witness },
        None => OracleOutcome::NoAtBound { bound },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::{Relation, Witness};
    use crate::polycyclic::pp_member;

    fn pw(v: &[u32]) -> PositiveWord {
        PositiveWord::new(v.to_vec())
    }

    fn el(y: &[u32], x: &[u32]) -> PnElement {
        PnElement::new(pw(y), pw(x))
    }

    fn p2() -> Polycyclic {
        Polycyclic::new(2).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, 2).unwrap()
    }

    #[test]
    fn generic_p_examples() {
        let pn = p2();
        let sys = pn.system();
        let out = oracle_conj_p(sys, &w("p1 q1"), &w("p2 q2"), 2).unwrap();
        assert_eq!(out.witness(), Some(&(w("p1 q2"), w("p2 q1"))));
        let out = oracle_conj_p(sys, &w("p1"), &w("p2"), 3).unwrap();
        assert_eq!(out, OracleOutcome::NoAtBound { bound: 3 });
    }

    #[test]
    fn generic_refuses_incomplete_systems() {
        let sys = RewriteSystem::parse_rules("ab -> a\nab -> b\n").unwrap();
        let a = Word::parse_symbols("a", None).unwrap();
        assert_eq!(oracle_conj_p(&sys, &a, &a, 1), Err(Error::NotComplete));
    }

    #[test]
    fn generic_o_search() {
        let pn = p2();
        let out = oracle_conj_o(pn.system(), &w("p1"), &w("p2"), 1).unwrap();
        let (g, h) = out.witness().unwrap();
        assert_eq!((g.to_string(), h.to_string()), ("0".into(), "0".into()));
    }

    #[test]
    fn generic_c_search_on_pn() {
        let pn = p2();
        let sys = pn.system();
        let out = oracle_conj_c(sys, &w("p1 q1"), &w("p2 q2"), 2, 3).unwrap();
        assert_eq!(out.witness(), Some(&(w("p1 q2"), w("p2 q1"))));
        assert!(!oracle_conj_c(sys, &w("0"), &w("p1 q1"), 2, 3)
            .unwrap()
            .is_yes());
        assert!(!pp_member_bounded(sys, &w("p2"), &w("q1"), 2).unwrap());
        assert!(pp_member_bounded(sys, &w("p1"), &w("q1"), 2).unwrap());
    }

    #[test]
    fn pn_p_oracle_matches_generic_search() {
        let pn = p2();
        let universe = pn.elements(1);
        for a in &universe {
            for b in &universe {
                let bound = a.word_len() + b.word_len();
                let fast = oracle_conj_p_pn(&pn, a, b, bound).unwrap();
                let slow = oracle_conj_p(pn.system(), &a.to_word(), &b.to_word(), bound).unwrap();
                assert_eq!(fast.is_yes(), slow.is_yes(), "({a}, {b})");
                if let Some((u, v)) = fast.witness() {
                    let f = Witness::Factorization {
                        u: u.clone(),
                        v: v.clone(),
                    };
                    assert!(f.verifies(a, b, Relation::P));
                    if !a.is_zero() {
                        let (su, sv) = slow.witness().unwrap();
                        assert_eq!((&u.to_word(), &v.to_word()), (su, sv));
                    }
                }
            }
        }
    }

    #[test]
    fn pn_p_oracle_examples() {
        let pn = p2();
        let a = el(&[1, 1, 2], &[1]);
        let b = el(&[2, 2, 1], &[2]);
        assert!(oracle_conj_p_pn(&pn, &a, &b, 8).unwrap().is_yes());
        let out = oracle_conj_p_pn(&pn, &el(&[1], &[2]), &el(&[2], &[1]), 8).unwrap();
        assert!(!out.is_yes());
        let zero = PnElement::Zero;
        let out = oracle_conj_p_pn(&pn, &zero, &el(&[1], &[2]), 3).unwrap();
        let (u, v) = out.witness().unwrap();
        assert!(u * v == zero && v * u == el(&[1], &[2]));
        assert!(oracle_conj_p_pn(&pn, &zero, &zero, 1).unwrap().is_yes());
        assert!(!oracle_conj_p_pn(&pn, &zero, &zero, 0).unwrap().is_yes());
    }

    /// Enumerates every `g`, `h` with components at most `bound` and filters
    /// by `𝒫` membership.
    fn brute_c(pn: &Polycyclic, a: &PnElement, b: &PnElement, bound: usize) -> bool {
        let all = pn.elements(bound);
        let side =
            |l: &PnElement, r: &PnElement| all.iter().any(|g| pp_member(g, l) && l * g == g * r);
        side(a, b) && side(b, a)
    }

    #[test]
    fn pn_c_oracle_matches_brute_force() {
        let pn = p2();
        let universe = pn.elements(1);
        for a in &universe {
            for b in &universe {
                let fast = oracle_conj_c_pn(&pn, a, b, 2).unwrap();
                assert_eq!(fast.is_yes(), brute_c(&pn, a, b, 2), "({a}, {b})");
                if let Some((g, h)) = fast.witness() {
                    let c = Witness::Conjugators {
                        g: g.clone(),
                        h: h.clone(),
                    };
                    assert!(c.verifies(a, b, Relation::C));
                }
            }
        }
    }

    #[test]
    fn pn_c_oracle_examples() {
        let pn = p2();
        let out = oracle_conj_c_pn(&pn, &el(&[1], &[1]), &el(&[2], &[2]), 1).unwrap();
        assert_eq!(out.witness(), Some(&(el(&[1], &[2]), el(&[2], &[1]))));
        let zero = PnElement::Zero;
        let out = oracle_conj_c_pn(&pn, &zero, &zero, 0).unwrap();
        assert_eq!(out.witness(), Some(&(zero.clone(), zero.clone())));
        let out = oracle_conj_c_pn(&pn, &el(&[1, 2], &[]), &el(&[2, 1], &[]), 4).unwrap();
        assert_eq!(out, OracleOutcome::NoAtBound { bound: 4 });
        assert!(!oracle_conj_c_pn(&pn, &zero, &el(&[1], &[1]), 4)
            .unwrap()
            .is_yes());
    }
}

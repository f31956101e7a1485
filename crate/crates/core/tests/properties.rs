use polyconj::conjugacy::oracle::{oracle_conj_c_pn, oracle_conj_p_pn};
use polyconj::conjugacy::{free_conj_p, Relation};
use polyconj::polycyclic::pp_member;
use polyconj::{Letter, PnElement, Polycyclic, PositiveWord, Word};
use proptest::prelude::*;

const RANK: u32 = 3;

fn positive(max_len: usize) -> impl Strategy<Value = PositiveWord> {
    prop::collection::vec(1..=RANK, 0..=max_len).prop_map(PositiveWord::new)
}

fn element(max_len: usize) -> impl Strategy<Value = PnElement> {
    prop_oneof![
        1 => Just(PnElement::Zero),
        12 => (positive(max_len), positive(max_len)).prop_map(|(y, x)| PnElement::new(y, x)),
    ]
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        8 => (1..=RANK).prop_map(Letter::Gen),
        8 => (1..=RANK).prop_map(Letter::Inv),
        1 => Just(Letter::Zero),
    ]
}

/// `r t r^{-1}` and `s t' s^{-1}` with `t'` a rotation of `t`, as a positive
/// or a negative core.
fn rotated_pair() -> impl Strategy<Value = (PnElement, PnElement)> {
    (
        positive(3),
        positive(3),
        positive(6),
        any::<prop::sample::Index>(),
        any::<bool>(),
    )
        .prop_map(|(r, s, t, k, negative)| {
            let k = if t.is_empty() { 0 } else { k.index(t.len()) };
            let rotated = t.suffix_from(k).concat(&t.prefix(k));
            let wrap = |outer: &PositiveWord, core: &PositiveWord| {
                if negative {
                    PnElement::new(outer.clone(), outer.concat(core))
                } else {
                    PnElement::new(outer.concat(core), outer.clone())
                }
            };
            (wrap(&r, &t), wrap(&s, &rotated))
        })
}

fn pn() -> Polycyclic {
    Polycyclic::new(RANK).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_a_homomorphism(u in prop::collection::vec(letter(), 0..24),
                                   v in prop::collection::vec(letter(), 0..24)) {
        let pn = pn();
        let (u, v) = (Word::from_letters(u), Word::from_letters(v));
        let whole = pn.reduce(&u.concat(&v)).unwrap();
        let parts = pn.multiply(&pn.reduce(&u).unwrap(), &pn.reduce(&v).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn cyclic_decomposition_recomposes(a in element(6)) {
        let pn = pn();
        let d = a.cyclic_reduce();
        prop_assert_eq!(pn.reduce(&d.recompose()).unwrap(), a.clone());
        // The core's first letter is not the inverse of its last one.
        if let PnElement::NonZero { y, x } = &d.core {
            if !y.is_empty() && !x.is_empty() {
                prop_assert_ne!(y.indices()[0], x.indices()[0]);
            }
        }
        prop_assert_eq!(pn.rho_by_rewriting(&a).unwrap(), a.rho());
    }

    #[test]
    fn deciders_are_reflexive_and_symmetric(a in element(5), b in element(5)) {
        let pn = pn();
        for rel in [Relation::P, Relation::PStar, Relation::C, Relation::O] {
            prop_assert!(pn.decide(rel, &a, &a).unwrap().related);
            prop_assert_eq!(
                pn.decide(rel, &a, &b).unwrap().related,
                pn.decide(rel, &b, &a).unwrap().related
            );
        }
    }

    #[test]
    fn witnesses_verify((a, b) in rotated_pair()) {
        let pn = pn();
        let p = pn.conj_p(&a, &b).unwrap();
        prop_assert!(p.related);
        prop_assert!(p.witness.unwrap().verifies(&a, &b, Relation::P));
        let c = pn.conj_c(&a, &b).unwrap();
        if let Some(w) = &c.witness {
            prop_assert!(w.verifies(&a, &b, Relation::C));
        }
        // A negative core is c-conjugate to its rotations; a positive one
        // only to itself.
        prop_assert_eq!(c.related, a.core() == b.core() || a.core().is_negative());
    }

    #[test]
    fn c_implies_p_and_p_star_contains_p(a in element(4), b in element(4)) {
        let pn = pn();
        let p = pn.conj_p(&a, &b).unwrap().related;
        let c = pn.conj_c(&a, &b).unwrap();
        let star = pn.conj_p_star(&a, &b).unwrap();
        prop_assert!(!c.related || p);
        prop_assert!(!p || star.related);
        if let Some(w) = &star.witness {
            prop_assert!(w.verifies(&a, &b, Relation::P));
        }
    }

    #[test]
    fn deciders_match_oracles_on_random_pairs(a in element(2), b in element(2)) {
        let pn = pn();
        let bound = a.word_len() + b.word_len();
        prop_assert_eq!(
            pn.conj_p(&a, &b).unwrap().related,
            oracle_conj_p_pn(&pn, &a, &b, bound).unwrap().is_yes()
        );
        prop_assert_eq!(
            pn.conj_c(&a, &b).unwrap().related,
            oracle_conj_c_pn(&pn, &a, &b, bound).unwrap().is_yes()
        );
    }

    #[test]
    fn c_witness_lies_in_conjugator_sets((a, b) in rotated_pair()) {
        let pn = pn();
        if let Some(polyconj::conjugacy::Witness::Conjugators { g, h }) =
            pn.conj_c(&a, &b).unwrap().witness
        {
            prop_assert!(pp_member(&g, &a) && pp_member(&h, &b));
        }
    }

    #[test]
    fn free_rotation_matches_rotations(u in prop::collection::vec(0u8..2, 0..10),
                                       k in any::<prop::sample::Index>()) {
        let k = if u.is_empty() { 0 } else { k.index(u.len()) };
        let v: Vec<u8> = u[k..].iter().chain(&u[..k]).copied().collect();
        prop_assert!(free_conj_p(&u, &v));
    }
}

//! Conjugacy deciders for `P_n`.
//!
//! `conj_p` and `conj_c` work on cyclically reduced cores and a rotation
//! test, so both run in time linear in the input length. `conj_o` is
//! universal because `P_n` has a zero. The brute-force searches used to
//! validate them live in [`oracle`].

pub mod oracle;
mod rotation;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycyclic::{pp_member, PnElement, Polycyclic};

pub use rotation::{find, free_conj_p, rotation_offset};

/// The conjugacy relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    P,
    PStar,
    C,
    O,
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Relation::P),
            "pstar" | "p*" => Ok(Relation::PStar),
            "c" => Ok(Relation::C),
            "o" => Ok(Relation::O),
            other => Err(Error::InvalidParameter(format!(
                "unknown relation `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::P => "p",
            Relation::PStar => "pstar",
            Relation::C => "c",
            Relation::O => "o",
        })
    }
}

/// Data certifying that two elements are related.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `a = uv` and `b = vu`.
    Factorization { u: PnElement, v: PnElement },
    /// `ag = gb` and `bh = ha`.
    Conjugators { g: PnElement, h: PnElement },
    /// `a` and `b` both related to `via`.
    Chain {
        via: PnElement,
        first: Box<Witness>,
        second: Box<Witness>,
    },
}

impl Witness {
    /// Checks the witness by direct multiplication. Conjugators are also
    /// checked for membership in `𝒫(a)`, `𝒫(b)` when `rel` is `C`.
    pub fn verifies(&self, a: &PnElement, b: &PnElement, rel: Relation) -> bool {
        match self {
            Witness::Factorization { u, v } => &(u * v) == a && &(v * u) == b,
            Witness::Conjugators { g, h } => {
                let commutes = a * g == g * b && b * h == h * a;
                match rel {
                    Relation::C => commutes && pp_member(g, a) && pp_member(h, b),
                    _ => commutes,
                }
            }
            Witness::Chain { via, first, second } => {
                first.verifies(a, via, rel) && second.verifies(via, b, rel)
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Factorization { u, v } => write!(f, "u = {u}, v = {v}"),
            Witness::Conjugators { g, h } => write!(f, "g = {g}, h = {h}"),
            Witness::Chain { via, first, second } => {
                write!(f, "via {via}: [{first}] then [{second}]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjVerdict {
    pub related: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ConjVerdict {
    pub fn no() -> Self {
        ConjVerdict {
            related: false,
            witness: None,
        }
    }

    pub fn yes(witness: Witness) -> Self {
        ConjVerdict {
            related: true,
            witness: Some(witness),
        }
    }
}

fn factor(u: PnElement, v: PnElement) -> ConjVerdict {
    ConjVerdict::yes(Witness::Factorization { u, v })
}

impl Polycyclic {
    /// Decides `a ∼p b`.
    pub fn conj_p(&self, a: &PnElement, b: &PnElement) -> Result<ConjVerdict> {
        self.check(a)?;
        self.check(b)?;
        Ok(conj_p_unchecked(a, b))
    }

    /// Decides `a ∼p* b`: either `a ∼p b`, or both are p-conjugate to zero.
    pub fn conj_p_star(&self, a: &PnElement, b: &PnElement) -> Result<ConjVerdict> {
        let direct = self.conj_p(a, b)?;
        if direct.related {
            return Ok(direct);
        }
        if a.rho().is_zero() && b.rho().is_zero() {
            let z = PnElement::Zero;
            let first = conj_p_unchecked(a, &z).witness;
            let second = conj_p_unchecked(&z, b).witness;
            if let (Some(first), Some(second)) = (first, second) {
                return Ok(ConjVerdict::yes(Witness::Chain {
                    via: z,
                    first: Box::new(first),
                    second: Box::new(second),
                }));
            }
        }
        Ok(ConjVerdict::no())
    }

    /// Decides `a ∼c b`.
    pub fn conj_c(&self, a: &PnElement, b: &PnElement) -> Result<ConjVerdict> {
        self.check(a)?;
        self.check(b)?;
        Ok(conj_c_unchecked(a, b))
    }

    /// `a ∼o b` always holds, with `g = h = 0`.
    pub fn conj_o(&self, a: &PnElement, b: &PnElement) -> Result<ConjVerdict> {
        self.check(a)?;
        self.check(b)?;
        Ok(ConjVerdict::yes(Witness::Conjugators {
            g: PnElement::Zero,
            h: PnElement::Zero,
        }))
    }

    pub fn decide(&self, rel: Relation, a: &PnElement, b: &PnElement) -> Result<ConjVerdict> {
        match rel {
            Relation::P => self.conj_p(a, b),
            Relation::PStar => self.conj_p_star(a, b),
            Relation::C => self.conj_c(a, b),
            Relation::O => self.conj_o(a, b),
        }
    }

    /// Partitions `sample` by the transitive closure of `conj_p` restricted
    /// to the sample. Classes are listed by first occurrence.
    pub fn pstar_closure(&self, sample: &[PnElement]) -> Result<Vec<Vec<PnElement>>> {
        for a in sample {
            self.check(a)?;
        }
        let mut parent: Vec<usize> = (0..sample.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..sample.len() {
            for j in i + 1..sample.len() {
                if conj_p_unchecked(&sample[i], &sample[j]).related {
                    let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<PnElement>> = Vec::new();
        let mut slot = vec![usize::MAX; sample.len()];
        for (i, a) in sample.iter().enumerate() {
            let r = root(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[r]].push(a.clone());
        }
        Ok(classes)
    }
}

fn conj_p_unchecked(a: &PnElement, b: &PnElement) -> ConjVerdict {
    let (rho_a, rho_b) = (a.rho(), b.rho());
    match (a, b) {
        (PnElement::Zero, PnElement::Zero) => {
            return factor(PnElement::identity(), PnElement::Zero)
        }
        // a = 0 = x^{-1} y and b = y x^{-1}.
        (PnElement::Zero, PnElement::NonZero { y, x }) => {
            return if rho_b.is_zero() {
                factor(
                    PnElement::negative(x.clone()),
                    PnElement::positive(y.clone()),
                )
            } else {
                ConjVerdict::no()
            };
        }
        (PnElement::NonZero { y, x }, PnElement::Zero) => {
            return if rho_a.is_zero() {
                factor(
                    PnElement::positive(y.clone()),
                    PnElement::negative(x.clone()),
                )
            } else {
                ConjVerdict::no()
            };
        }
        _ => {}
    }

    let da = a.cyclic_reduce();
    let db = b.cyclic_reduce();
    let (r, s) = (&da.r, &db.r);
    let (PnElement::NonZero { y: ya, x: xa }, PnElement::NonZero { y: yb, x: xb }) =
        (&da.core, &db.core)
    else {
        unreachable!("cores of nonzero elements are nonzero");
    };

    if rho_a.is_zero() && rho_b.is_zero() {
        if da.core != db.core {
            return ConjVerdict::no();
        }
        // u = r ã s^{-1}, v = s r^{-1}.
        return factor(
            PnElement::new(r.concat(ya), s.concat(xa)),
            PnElement::new(s.clone(), r.clone()),
        );
    }

    // Positive cores: ã = u'v', b̃ = v'u'; u = r u' s^{-1}, v = s v' r^{-1}.
    if xa.is_empty() && xb.is_empty() {
        return match rotation_offset(ya.indices(), yb.indices()) {
            Some(k) => factor(
                PnElement::new(r.concat(&ya.prefix(k)), s.clone()),
                PnElement::new(s.concat(&ya.suffix_from(k)), r.clone()),
            ),
            None => ConjVerdict::no(),
        };
    }

    // Negative cores ã = X^{-1}, b̃ = Z^{-1} with X = X1 X2 and Z = X2 X1:
    // u = r X2^{-1} s^{-1}, v = s X1^{-1} r^{-1}.
    if ya.is_empty() && yb.is_empty() {
        return match rotation_offset(xa.indices(), xb.indices()) {
            Some(k) => factor(
                PnElement::new(r.clone(), s.concat(&xa.suffix_from(k))),
                PnElement::new(s.clone(), r.concat(&xa.prefix(k))),
            ),
            None => ConjVerdict::no(),
        };
    }

    ConjVerdict::no()
}

fn conj_c_unchecked(a: &PnElement, b: &PnElement) -> ConjVerdict {
    match (a, b) {
        (PnElement::Zero, PnElement::Zero) => {
            return ConjVerdict::yes(Witness::Conjugators {
                g: PnElement::Zero,
                h: PnElement::Zero,
            })
        }
        (PnElement::Zero, _) | (_, PnElement::Zero) => return ConjVerdict::no(),
        _ => {}
    }
    let da = a.cyclic_reduce();
    let db = b.cyclic_reduce();
    let (r, s) = (&da.r, &db.r);
    let conjugators = |g: PnElement, h: PnElement| ConjVerdict::yes(Witness::Conjugators { g, h });

    if da.core == db.core {
        return conjugators(
            PnElement::new(r.clone(), s.clone()),
            PnElement::new(s.clone(), r.clone()),
        );
    }
    if let (PnElement::NonZero { y: ya, x: t }, PnElement::NonZero { y: yb, x: z }) =
        (&da.core, &db.core)
    {
        if ya.is_empty() && yb.is_empty() {
            // t = w w', z = w' w, so t w = w z and w' t = z w'.
            if let Some(k) = rotation_offset(t.indices(), z.indices()) {
                let w = t.prefix(k);
                let w_prime = t.suffix_from(k);
                return conjugators(
                    PnElement::new(r.clone(), s.concat(&w_prime)),
                    PnElement::new(s.clone(), r.concat(&w)),
                );
            }
        }
    }
    ConjVerdict::no()
}

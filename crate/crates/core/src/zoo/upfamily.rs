//! Monads of upward-closed families: inclusion hyperspaces `G` and the
//! superextension `λ` (maximal linked systems).
//!
//! Both store an element by the antichain of its minimal members. They share
//! the structure maps:
//!
//! * `η(x) = ↑{x}`
//! * `Tf(F) = ↑{f(A) : A ∈ F}`
//! * `μ(M) = {A ⊆ X : A⁺ ∈ M}` where `A⁺ = {F : A ∈ F}`.
//!
//! For `M` with minimal members `m` the last formula unfolds to the union over
//! `m` of the intersections `⋂_{F ∈ m} F`, which is how it is computed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use super::family::{self, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::monad::{Monad, MonadKind, Payload, TElement};
use crate::report::Guards;

/// Maximality is decided by computing the blocker, whose cost grows quickly
/// with the number of minimal members.
const MAX_MAXIMALITY_MEMBERS: usize = 64;
/// Random maximal linked systems are grown greedily over all subsets of at
/// most this many points.
const MAX_GREEDY_BASE: usize = 6;
const BRUTE_FORCE_LIMIT: usize = 4;

pub struct UpFamily {
    maximal_linked: bool,
}

pub static INCLUSION: UpFamily = UpFamily {
    maximal_linked: false,
};
pub static SUPEREXTENSION: UpFamily = UpFamily {
    maximal_linked: true,
};

/// The family over `base` generated by the given member index lists.
pub fn family(kind: MonadKind, base: &Arc<FinSet>, members: &[&[usize]]) -> Result<TElement> {
    if !matches!(kind, MonadKind::Lambda | MonadKind::Incl) {
        return Err(Error::Shape(format!("{kind} elements are not families")));
    }
    if let Some(&i) = members
        .iter()
        .flat_map(|m| m.iter())
        .find(|&&i| i >= MASK_BITS)
    {
        return Err(Error::InvalidElement(format!(
            "index {i} does not fit a subset mask"
        )));
    }
    let masks = members.iter().map(|m| family::from_indices(m)).collect();
    TElement::new(kind, base, Payload::Family(masks))
}

pub fn members_of(a: &TElement) -> &[Mask] {
    match a.payload() {
        Payload::Family(f) => f,
        other => panic!("family element expected, got {other:?}"),
    }
}

/// Every maximal linked system on `base` (at most four atoms).
pub fn lambda_enumerate(base: &Arc<FinSet>) -> Result<Vec<TElement>> {
    SUPEREXTENSION.enumerate(base)
}

/// Every inclusion hyperspace on `base` (at most four atoms).
pub fn incl_enumerate(base: &Arc<FinSet>) -> Result<Vec<TElement>> {
    INCLUSION.enumerate(base)
}

/// Grows a maximal linked system by admitting subsets, in random order,
/// whenever they meet every subset admitted so far.
fn greedy_maximal_linked(n: usize, rng: &mut dyn RngCore) -> Vec<Mask> {
    let mut order: Vec<Mask> = (1..=family::full(n)).collect();
    order.shuffle(rng);
    let mut admitted: Vec<Mask> = Vec::new();
    for s in order {
        if admitted.iter().all(|&m| m & s != 0) {
            admitted.push(s);
        }
    }
    family::minimalize(admitted)
}

impl UpFamily {
    fn kind_tag(&self) -> MonadKind {
        if self.maximal_linked {
            MonadKind::Lambda
        } else {
            MonadKind::Incl
        }
    }
}

impl Monad for UpFamily {
    fn kind(&self) -> MonadKind {
        self.kind_tag()
    }

    fn unit(&self, base: &Arc<FinSet>, x: usize) -> TElement {
        TElement::trusted(
            self.kind_tag(),
            base,
            Payload::Family(vec![family::singleton(x)]),
        )
    }

    fn fmap_indexed(
        &self,
        a: &TElement,
        f: &dyn Fn(usize) -> usize,
        codomain: &Arc<FinSet>,
    ) -> TElement {
        let images = members_of(a).iter().map(|&m| family::image(m, f)).collect();
        TElement::trusted(
            self.kind_tag(),
            codomain,
            Payload::Family(family::minimalize(images)),
        )
    }

    fn flatten(&self, outer: &Payload, inner: &[TElement], base: &Arc<FinSet>) -> Result<TElement> {
        let Payload::Family(outer) = outer else {
            return Err(Error::Shape(format!(
                "{} cannot flatten {outer:?}",
                self.kind_tag()
            )));
        };
        let mut gens: Vec<Mask> = Vec::new();
        for &m in outer {
            let mut idx = family::indices(m);
            let first = idx.next().expect("members are non-empty");
            let mut meet = members_of(&inner[first]).to_vec();
            for i in idx {
                meet = family::meet(&meet, members_of(&inner[i]));
            }
            gens.extend(meet);
        }
        // the monad laws guarantee a valid result; validating maximality
        // here would dominate the cost of every multiplication
        Ok(TElement::trusted(
            self.kind_tag(),
            base,
            Payload::Family(family::minimalize(gens)),
        ))
    }

    fn canonicalize(&self, payload: Payload) -> Result<Payload> {
        match payload {
            Payload::Family(f) => Ok(Payload::Family(family::minimalize(f))),
            other => Err(Error::InvalidElement(format!("{other:?} is not a family"))),
        }
    }

    fn validate(&self, base_len: usize, payload: &Payload) -> Result<()> {
        let Payload::Family(f) = payload else {
            return Err(Error::InvalidElement(format!(
                "{payload:?} is not a family"
            )));
        };
        if base_len > MASK_BITS {
            return Err(Error::Resource(format!(
                "families on a {base_len}-element carrier do not fit masks"
            )));
        }
        if f.is_empty() {
            return Err(Error::InvalidElement("empty family".into()));
        }
        if f.contains(&0) {
            return Err(Error::InvalidElement(
                "family contains the empty set".into(),
            ));
        }
        if f.iter().any(|m| m & !family::full(base_len) != 0) {
            return Err(Error::InvalidElement(format!(
                "member outside a carrier of {base_len}"
            )));
        }
        if *f != family::minimalize(f.clone()) {
            return Err(Error::InvalidElement(
                "members are not a canonical antichain".into(),
            ));
        }
        if self.maximal_linked {
            if !family::is_linked(f) {
                return Err(Error::InvalidElement("family is not linked".into()));
            }
            if f.len() > MAX_MAXIMALITY_MEMBERS {
                return Err(Error::Resource(format!(
                    "maximality of a {}-member family is not checked",
                    f.len()
                )));
            }
            if !family::is_maximal_linked(f) {
                return Err(Error::InvalidElement("linked family is not maximal".into()));
            }
        }
        Ok(())
    }

    fn touched(&self, payload: &Payload) -> Vec<usize> {
        match payload {
            Payload::Family(f) => family::indices(f.iter().fold(0, |a, m| a | m)).collect(),
            _ => Vec::new(),
        }
    }

    fn enumerate(&self, base: &Arc<FinSet>) -> Result<Vec<TElement>> {
        let n = base.len();
        if n > BRUTE_FORCE_LIMIT {
            return Err(Error::Resource(format!(
                "{} enumeration is brute force and limited to {BRUTE_FORCE_LIMIT} atoms",
                self.kind_tag()
            )));
        }
        Ok(family::all_antichains(n)
            .into_iter()
            .filter(|f| !self.maximal_linked || family::is_maximal_linked(f))
            .map(|f| TElement::trusted(self.kind_tag(), base, Payload::Family(f)))
            .collect())
    }

    fn carrier_size(&self, n: usize) -> Option<u128> {
        const LAMBDA: [u128; 7] = [0, 1, 2, 4, 12, 81, 2646];
        const INCL: [u128; 7] = [0, 1, 4, 18, 166, 7579, 7_828_352];
        let table = if self.maximal_linked { &LAMBDA } else { &INCL };
        table.get(n).copied()
    }

    fn check_enumerable(&self, n: usize, guards: &Guards) -> Result<()> {
        let limit = guards.max_lattice_base.min(BRUTE_FORCE_LIMIT);
        if n > limit {
            return Err(Error::Resource(format!(
                "{} carrier over {n} atoms exceeds the limit of {limit}",
                self.kind_tag()
            )));
        }
        guards.check_count(self.carrier_size(n).unwrap_or(u128::MAX), "family carrier")
    }

    fn random(&self, base: &Arc<FinSet>, rng: &mut dyn RngCore) -> TElement {
        let n = base.len();
        let members = if self.maximal_linked {
            if n <= MAX_GREEDY_BASE {
                greedy_maximal_linked(n, rng)
            } else {
                // grow on a random small sub-carrier and push forward along
                // the inclusion, which preserves maximal linkedness
                let mut points: Vec<usize> = (0..n).collect();
                points.shuffle(rng);
                points.truncate(MAX_GREEDY_BASE);
                let local = greedy_maximal_linked(MAX_GREEDY_BASE, rng);
                family::minimalize(
                    local
                        .into_iter()
                        .map(|m| family::image(m, &|i| points[i]))
                        .collect(),
                )
            }
        } else {
            let k = rng.gen_range(1..=3);
            let gens = (0..k).map(|_| rng.gen_range(1..=family::full(n))).collect();
            family::minimalize(gens)
        };
        TElement::trusted(self.kind_tag(), base, Payload::Family(members))
    }
}

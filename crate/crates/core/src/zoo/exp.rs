//! The hyperspace monad `exp`: non-empty subsets, `η(x) = {x}`, `Tf` = image,
//! `μ` = union.

use std::sync::Arc;

use rand::{Rng, RngCore};

use super::family::{self, Mask, MASK_BITS};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::monad::{Monad, MonadKind, Payload, TElement};
use crate::report::Guards;

pub struct Hyperspace;

/// The subset of `base` on the given indices.
pub fn subset(base: &Arc<FinSet>, indices: &[usize]) -> Result<TElement> {
    if let Some(&i) = indices.iter().find(|&&i| i >= MASK_BITS) {
        return Err(Error::InvalidElement(format!(
            "index {i} does not fit a subset mask"
        )));
    }
    TElement::new(
        MonadKind::Exp,
        base,
        Payload::Subset(family::from_indices(indices)),
    )
}

pub fn mask_of(a: &TElement) -> Mask {
    match a.payload() {
        Payload::Subset(m) => *m,
        other => panic!("exp element expected, got {other:?}"),
    }
}

impl Monad for Hyperspace {
    fn kind(&self) -> MonadKind {
        MonadKind::Exp
    }

    fn unit(&self, base: &Arc<FinSet>, x: usize) -> TElement {
        TElement::trusted(MonadKind::Exp, base, Payload::Subset(family::singleton(x)))
    }

    fn fmap_indexed(
        &self,
        a: &TElement,
        f: &dyn Fn(usize) -> usize,
        codomain: &Arc<FinSet>,
    ) -> TElement {
        let img = family::image(mask_of(a), f);
        TElement::trusted(MonadKind::Exp, codomain, Payload::Subset(img))
    }

    fn flatten(&self, outer: &Payload, inner: &[TElement], base: &Arc<FinSet>) -> Result<TElement> {
        let Payload::Subset(m) = outer else {
            return Err(Error::Shape(format!("exp cannot flatten {outer:?}")));
        };
        let union = family::indices(*m).fold(0, |acc, i| acc | mask_of(&inner[i]));
        TElement::new(MonadKind::Exp, base, Payload::Subset(union))
            .map_err(|e| Error::Internal(format!("exp union produced an invalid element: {e}")))
    }

    fn canonicalize(&self, payload: Payload) -> Result<Payload> {
        Ok(payload)
    }

    fn validate(&self, base_len: usize, payload: &Payload) -> Result<()> {
        let Payload::Subset(m) = payload else {
            return Err(Error::InvalidElement(format!(
                "{payload:?} is not a subset"
            )));
        };
        if base_len > MASK_BITS {
            return Err(Error::Resource(format!(
                "subsets of a {base_len}-element carrier do not fit a mask"
            )));
        }
        if *m == 0 {
            return Err(Error::InvalidElement("empty subset".into()));
        }
        if m & !family::full(base_len) != 0 {
            return Err(Error::InvalidElement(format!(
                "subset mask {m:#b} exceeds a carrier of {base_len}"
            )));
        }
        Ok(())
    }

    fn touched(&self, payload: &Payload) -> Vec<usize> {
        match payload {
            Payload::Subset(m) => family::indices(*m).collect(),
            _ => Vec::new(),
        }
    }

    fn enumerate(&self, base: &Arc<FinSet>) -> Result<Vec<TElement>> {
        let n = base.len();
        if n >= MASK_BITS {
            return Err(Error::Resource(format!("cannot list subsets of {n} atoms")));
        }
        let mut masks: Vec<Mask> = (1..=family::full(n)).collect();
        masks.sort_by(|a, b| family::subset_cmp(*a, *b));
        Ok(masks
            .into_iter()
            .map(|m| TElement::trusted(MonadKind::Exp, base, Payload::Subset(m)))
            .collect())
    }

    fn carrier_size(&self, n: usize) -> Option<u128> {
        (n < 128).then(|| (1u128 << n) - 1)
    }

    fn check_enumerable(&self, n: usize, guards: &Guards) -> Result<()> {
        if n > guards.max_exp_base.min(MASK_BITS - 1) {
            return Err(Error::Resource(format!(
                "exp carrier over {n} atoms exceeds the limit of {}",
                guards.max_exp_base
            )));
        }
        guards.check_count(self.carrier_size(n).unwrap_or(u128::MAX), "exp carrier")
    }

    fn random(&self, base: &Arc<FinSet>, rng: &mut dyn RngCore) -> TElement {
        let m = rng.gen_range(1..=family::full(base.len()));
        TElement::trusted(MonadKind::Exp, base, Payload::Subset(m))
    }
}

//! The identity monad. On a finite discrete carrier every ultrafilter is
//! principal, so this is also βX.

use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::monad::{Monad, MonadKind, Payload, TElement};
use crate::report::Guards;

pub struct Identity;

fn point(payload: &Payload) -> usize {
    match payload {
        Payload::Point(i) => *i,
        other => panic!("identity monad given {other:?}"),
    }
}

impl Monad for Identity {
    fn kind(&self) -> MonadKind {
        MonadKind::Id
    }

    fn unit(&self, base: &Arc<FinSet>, x: usize) -> TElement {
        TElement::trusted(MonadKind::Id, base, Payload::Point(x))
    }

    fn fmap_indexed(
        &self,
        a: &TElement,
        f: &dyn Fn(usize) -> usize,
        codomain: &Arc<FinSet>,
    ) -> TElement {
        self.unit(codomain, f(point(a.payload())))
    }

    fn flatten(
        &self,
        outer: &Payload,
        inner: &[TElement],
        _base: &Arc<FinSet>,
    ) -> Result<TElement> {
        Ok(inner[point(outer)].clone())
    }

    fn canonicalize(&self, payload: Payload) -> Result<Payload> {
        Ok(payload)
    }

    fn validate(&self, base_len: usize, payload: &Payload) -> Result<()> {
        match payload {
            Payload::Point(i) if *i < base_len => Ok(()),
            Payload::Point(i) => Err(Error::InvalidElement(format!(
                "point {i} outside a carrier of {base_len}"
            ))),
            other => Err(Error::InvalidElement(format!("{other:?} is not a point"))),
        }
    }

    fn touched(&self, payload: &Payload) -> Vec<usize> {
        vec![point(payload)]
    }

    fn enumerate(&self, base: &Arc<FinSet>) -> Result<Vec<TElement>> {
        Ok((0..base.len()).map(|i| self.unit(base, i)).collect())
    }

    fn carrier_size(&self, n: usize) -> Option<u128> {
        Some(n as u128)
    }

    fn check_enumerable(&self, n: usize, guards: &Guards) -> Result<()> {
        guards.check_count(n as u128, "identity carrier")
    }

    fn random(&self, base: &Arc<FinSet>, rng: &mut dyn RngCore) -> TElement {
        self.unit(base, rng.gen_range(0..base.len()))
    }
}

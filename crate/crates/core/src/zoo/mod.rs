//! The concrete monads: identity (β on finite discrete carriers), `exp`,
//! superextension `λ`, inclusion hyperspaces `G` and probability measures.

pub mod exp;
pub mod family;
pub mod identity;
pub mod prob;
pub mod render;
pub mod upfamily;

use crate::error::Result;
use crate::finset::FinMap;
use crate::monad::{fmap, Monad, MonadKind, TElement};
use crate::report::Guards;

pub use render::parse;

static IDENTITY: identity::Identity = identity::Identity;
static HYPERSPACE: exp::Hyperspace = exp::Hyperspace;
static PROBABILITY: prob::Probability = prob::Probability;

pub(crate) fn instance(kind: MonadKind) -> &'static dyn Monad {
    match kind {
        MonadKind::Id => &IDENTITY,
        MonadKind::Exp => &HYPERSPACE,
        MonadKind::Lambda => &upfamily::SUPEREXTENSION,
        MonadKind::Incl => &upfamily::INCLUSION,
        MonadKind::Prob => &PROBABILITY,
    }
}

/// The least `A ⊆ X` such that `a` is the pushforward of an element of `TA`
/// along the inclusion `A ↪ X`, as sorted indices.
///
/// Points and distributions read it off the payload; the other monads search
/// subsets of `X` by increasing size and enumerate `TA` for each.
pub fn support(a: &TElement, guards: &Guards) -> Result<Vec<usize>> {
    match a.kind() {
        MonadKind::Id | MonadKind::Prob => Ok(a.touched()),
        kind => {
            let base = a.base();
            let n = base.len();
            let monad = kind.monad();
            let mut candidates: Vec<u64> = (1..=family::full(n)).collect();
            candidates.sort_by(|x, y| family::subset_cmp(*x, *y));
            for mask in candidates {
                let points: Vec<usize> = family::indices(mask).collect();
                let sub = base.restrict(&points);
                monad.check_enumerable(sub.len(), guards)?;
                let inclusion = FinMap::from_fn(&sub, base, |i| points[i])?;
                for d in monad.enumerate(&sub)? {
                    if &fmap(&inclusion, &d)? == a {
                        return Ok(points);
                    }
                }
            }
            Err(crate::error::Error::Internal(format!(
                "{a:?} is not the pushforward of anything on its own carrier"
            )))
        }
    }
}

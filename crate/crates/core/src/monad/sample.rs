//! Random instances for sampled law checks.
//!
//! An element of `TⁿX` is drawn over a small random carrier of `Tⁿ⁻¹X`
//! elements rather than over the whole (usually unlistable) `Tⁿ⁻¹X`. By
//! naturality this is the same element pushed forward along the inclusion
//! of that carrier, so `μ` and `T` see exactly what they would see on the
//! full carrier.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, RngCore};

use super::{MonadKind, TElement};
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};

/// Upper bound on the size of the random intermediate carriers.
const MAX_SUB_CARRIER: usize = 3;

/// A random finite subset of `T^depth X` as a carrier (`depth = 0` is `X`).
pub fn sample_carrier(
    kind: MonadKind,
    x: &Arc<FinSet>,
    depth: usize,
    rng: &mut dyn RngCore,
) -> Result<Arc<FinSet>> {
    if depth == 0 {
        return Ok(x.clone());
    }
    let inner = sample_carrier(kind, x, depth - 1, rng)?;
    if inner.is_empty() {
        return Err(Error::Shape("cannot sample over an empty carrier".into()));
    }
    let want = rng.gen_range(1..=MAX_SUB_CARRIER);
    let mut seen = HashSet::new();
    let mut elems = Vec::with_capacity(want);
    for _ in 0..want * 8 {
        let e = kind.monad().random(&inner, rng);
        if seen.insert(e.clone()) {
            elems.push(e);
            if elems.len() == want {
                break;
            }
        }
    }
    elems.sort();
    FinSet::of_elements(elems)
}

/// A random element of `T^depth X`, `depth ≥ 1`.
pub fn sample_element(
    kind: MonadKind,
    x: &Arc<FinSet>,
    depth: usize,
    rng: &mut dyn RngCore,
) -> Result<TElement> {
    if depth == 0 {
        return Err(Error::Shape("elements live at depth one or more".into()));
    }
    let carrier = sample_carrier(kind, x, depth - 1, rng)?;
    if carrier.is_empty() {
        return Err(Error::Shape("cannot sample over an empty carrier".into()));
    }
    Ok(kind.monad().random(&carrier, rng))
}

/// A uniformly random total map.
pub fn random_map(domain: &Arc<FinSet>, codomain: &Arc<FinSet>, rng: &mut dyn RngCore) -> FinMap {
    let table = (0..domain.len())
        .map(|_| rng.gen_range(0..codomain.len()))
        .collect();
    FinMap::new(domain.clone(), codomain.clone(), table).expect("indices in range")
}

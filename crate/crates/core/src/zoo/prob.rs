//! Finitely supported probability distributions with exact rational weights.
//! `η` is the Dirac measure, `Tf` the pushforward and `μ` the barycenter.
//! The carrier is infinite, so nothing here enumerates it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::monad::{Monad, MonadKind, Payload, TElement};
use crate::report::Guards;

pub struct Probability;

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A distribution from `(index, numerator, denominator)` triples.
pub fn dist(base: &Arc<FinSet>, weights: &[(usize, i64, i64)]) -> Result<TElement> {
    for &(_, _, d) in weights {
        if d == 0 {
            return Err(Error::InvalidElement("zero denominator".into()));
        }
    }
    let entries = weights.iter().map(|&(i, n, d)| (i, ratio(n, d))).collect();
    TElement::new(MonadKind::Prob, base, Payload::Dist(entries))
}

/// The uniform distribution on the given indices.
pub fn uniform(base: &Arc<FinSet>, indices: &[usize]) -> Result<TElement> {
    let n = indices.len() as i64;
    let w: Vec<_> = indices.iter().map(|&i| (i, 1, n.max(1))).collect();
    dist(base, &w)
}

pub fn entries_of(a: &TElement) -> &[(usize, BigRational)] {
    match a.payload() {
        Payload::Dist(d) => d,
        other => panic!("distribution expected, got {other:?}"),
    }
}

/// Weight of index `i` (zero off the support).
pub fn weight(a: &TElement, i: usize) -> BigRational {
    entries_of(a)
        .iter()
        .find(|(j, _)| *j == i)
        .map(|(_, w)| w.clone())
        .unwrap_or_else(BigRational::zero)
}

fn collect(acc: BTreeMap<usize, BigRational>) -> Payload {
    Payload::Dist(acc.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

impl Monad for Probability {
    fn kind(&self) -> MonadKind {
        MonadKind::Prob
    }

    fn unit(&self, base: &Arc<FinSet>, x: usize) -> TElement {
        TElement::trusted(
            MonadKind::Prob,
            base,
            Payload::Dist(vec![(x, BigRational::one())]),
        )
    }

    fn fmap_indexed(
        &self,
        a: &TElement,
        f: &dyn Fn(usize) -> usize,
        codomain: &Arc<FinSet>,
    ) -> TElement {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, w) in entries_of(a) {
            *acc.entry(f(*i)).or_insert_with(BigRational::zero) += w;
        }
        TElement::trusted(MonadKind::Prob, codomain, collect(acc))
    }

    fn flatten(&self, outer: &Payload, inner: &[TElement], base: &Arc<FinSet>) -> Result<TElement> {
        let Payload::Dist(outer) = outer else {
            return Err(Error::Shape(format!("prob cannot flatten {outer:?}")));
        };
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, w) in outer {
            for (j, v) in entries_of(&inner[*i]) {
                *acc.entry(*j).or_insert_with(BigRational::zero) += w * v;
            }
        }
        TElement::new(MonadKind::Prob, base, collect(acc))
            .map_err(|e| Error::Internal(format!("barycenter lost mass: {e}")))
    }

    fn canonicalize(&self, payload: Payload) -> Result<Payload> {
        match payload {
            Payload::Dist(mut d) => {
                d.sort_by_key(|(i, _)| *i);
                if d.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::InvalidElement("repeated support point".into()));
                }
                Ok(Payload::Dist(d))
            }
            other => Err(Error::InvalidElement(format!(
                "{other:?} is not a distribution"
            ))),
        }
    }

    fn validate(&self, base_len: usize, payload: &Payload) -> Result<()> {
        let Payload::Dist(d) = payload else {
            return Err(Error::InvalidElement(format!(
                "{payload:?} is not a distribution"
            )));
        };
        if d.is_empty() {
            return Err(Error::InvalidElement("empty distribution".into()));
        }
        if d.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidElement(
                "support not strictly increasing".into(),
            ));
        }
        if let Some((i, _)) = d.iter().find(|(i, _)| *i >= base_len) {
            return Err(Error::InvalidElement(format!(
                "support point {i} outside a carrier of {base_len}"
            )));
        }
        if d.iter().any(|(_, w)| *w <= BigRational::zero()) {
            return Err(Error::InvalidElement("non-positive weight".into()));
        }
        let total: BigRational = d.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidElement(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(())
    }

    fn touched(&self, payload: &Payload) -> Vec<usize> {
        match payload {
            Payload::Dist(d) => d.iter().map(|(i, _)| *i).collect(),
            _ => Vec::new(),
        }
    }

    fn enumerate(&self, _base: &Arc<FinSet>) -> Result<Vec<TElement>> {
        Err(Error::Capability(
            "probability measures form an infinite carrier".into(),
        ))
    }

    fn carrier_size(&self, _n: usize) -> Option<u128> {
        None
    }

    fn check_enumerable(&self, _n: usize, _guards: &Guards) -> Result<()> {
        self.enumerate(&FinSet::range(0)).map(|_| ())
    }

    fn random(&self, base: &Arc<FinSet>, rng: &mut dyn RngCore) -> TElement {
        let n = base.len();
        let k = rng.gen_range(1..=n.min(3));
        let mut points = index::sample(rng, n, k).into_vec();
        points.sort_unstable();
        let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
        let total: i64 = raw.iter().sum();
        let d = points
            .into_iter()
            .zip(raw)
            .map(|(i, w)| (i, ratio(w, total)))
            .collect();
        TElement::trusted(MonadKind::Prob, base, Payload::Dist(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinMap;
    use crate::monad::{fmap, mult, unit};

    #[test]
    fn unit_is_dirac() {
        let x = FinSet::new(["a", "b"]).unwrap();
        assert_eq!(unit(MonadKind::Prob, &x, 1).render(), "{b:1}");
    }

    #[test]
    fn constant_pushforward_is_dirac() {
        let x = FinSet::range(3);
        let c = FinMap::constant(&x, &x, 1).unwrap();
        let d = dist(&x, &[(0, 1, 6), (1, 1, 3), (2, 1, 2)]).unwrap();
        assert_eq!(fmap(&c, &d).unwrap(), unit(MonadKind::Prob, &x, 1));
    }

    #[test]
    fn barycenter_of_dirac_and_uniform() {
        // ½·δ_{δ_0} + ½·δ_{uniform(0,1)} flattens to (¾, ¼).
        let x = FinSet::range(2);
        let inner = FinSet::of_elements(vec![
            unit(MonadKind::Prob, &x, 0),
            uniform(&x, &[0, 1]).unwrap(),
        ])
        .unwrap();
        let m = uniform(&inner, &[0, 1]).unwrap();
        let flat = mult(&m).unwrap();
        assert_eq!(weight(&flat, 0), ratio(3, 4));
        assert_eq!(weight(&flat, 1), ratio(1, 4));
        assert_eq!(flat.render(), "{0:3/4, 1:1/4}");
    }

    #[test]
    fn weights_must_sum_to_one() {
        let x = FinSet::range(2);
        assert!(dist(&x, &[(0, 1, 2)]).is_err());
        assert!(dist(&x, &[(0, 1, 2), (0, 1, 2)]).is_err());
        assert!(dist(&x, &[(0, 3, 2), (1, -1, 2)]).is_err());
        assert!(dist(&x, &[(1, 2, 4), (0, 1, 2)]).is_ok());
    }
}

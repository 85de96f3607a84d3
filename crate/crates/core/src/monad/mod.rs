//! Monads over finite carriers: elements, the [`Monad`] trait, Kleisli bind
//! and materialised carriers `TX`.
//!
//! A [`TElement`] is a canonical element of `TX` for some base carrier `X`.
//! Carriers whose atoms are themselves elements (`TX`, `T²X`, or finite
//! subsets of them) are ordinary [`FinSet`]s with [`Origin::Elements`], which
//! is what lets `T` be applied again and `μ` decode its argument.

pub(crate) mod laws;
mod sample;

pub use laws::{
    check_algebra_morphism, check_free_determination, check_functor_laws, check_monad_laws,
    check_mult_naturality, check_unit_naturality, TAlgebra,
};
pub use sample::{random_map, sample_carrier, sample_element};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet, Origin};
use crate::report::Guards;
use crate::zoo::family::{family_cmp, subset_cmp, Mask};
use crate::zoo::{self, render};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonadKind {
    /// Identity monad; βX on a finite discrete carrier.
    Id,
    /// Non-empty subsets.
    Exp,
    /// Maximal linked systems.
    Lambda,
    /// Inclusion hyperspaces.
    Incl,
    /// Finitely supported probability distributions with rational weights.
    Prob,
}

impl MonadKind {
    pub const ALL: [MonadKind; 5] = [
        MonadKind::Id,
        MonadKind::Exp,
        MonadKind::Lambda,
        MonadKind::Incl,
        MonadKind::Prob,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonadKind::Id => "id",
            MonadKind::Exp => "exp",
            MonadKind::Lambda => "lambda",
            MonadKind::Incl => "incl",
            MonadKind::Prob => "prob",
        }
    }

    pub fn monad(self) -> &'static dyn Monad {
        zoo::instance(self)
    }

    /// Whether `TX` can be listed for finite `X`.
    pub fn is_enumerable(self) -> bool {
        self != MonadKind::Prob
    }
}

impl fmt::Display for MonadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonadKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse("monad", format!("unknown monad {s:?}")))
    }
}

/// Kind-specific canonical payload of a [`TElement`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    Point(usize),
    Subset(Mask),
    /// Minimal members of an upward-closed family, canonically sorted.
    Family(Vec<Mask>),
    /// Sorted `(index, weight)` pairs with positive weights summing to one.
    Dist(Vec<(usize, BigRational)>),
}

impl Payload {
    fn rank(&self) -> u8 {
        match self {
            Payload::Point(_) => 0,
            Payload::Subset(_) => 1,
            Payload::Family(_) => 2,
            Payload::Dist(_) => 3,
        }
    }
}

impl Ord for Payload {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Payload::Point(a), Payload::Point(b)) => a.cmp(b),
            (Payload::Subset(a), Payload::Subset(b)) => subset_cmp(*a, *b),
            (Payload::Family(a), Payload::Family(b)) => family_cmp(a, b),
            (Payload::Dist(a), Payload::Dist(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Payload {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `TX`. Equality is structural: same monad, same base carrier,
/// same canonical payload.
#[derive(Clone)]
pub struct TElement {
    kind: MonadKind,
    base: Arc<FinSet>,
    payload: Payload,
}

impl TElement {
    /// Canonicalises and validates `payload` for `kind` over `base`.
    pub fn new(kind: MonadKind, base: &Arc<FinSet>, payload: Payload) -> Result<Self> {
        let monad = kind.monad();
        let payload = monad.canonicalize(payload)?;
        monad.validate(base.len(), &payload)?;
        Ok(TElement {
            kind,
            base: base.clone(),
            payload,
        })
    }

    /// Skips validation; callers guarantee a canonical, valid payload.
    pub(crate) fn trusted(kind: MonadKind, base: &Arc<FinSet>, payload: Payload) -> Self {
        debug_assert!(!matches!(
            kind.monad().validate(base.len(), &payload),
            Err(e) if !matches!(e, Error::Resource(_))
        ));
        TElement {
            kind,
            base: base.clone(),
            payload,
        }
    }

    pub fn kind(&self) -> MonadKind {
        self.kind
    }

    pub fn base(&self) -> &Arc<FinSet> {
        &self.base
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn monad(&self) -> &'static dyn Monad {
        self.kind.monad()
    }

    /// Canonical text form; see [`crate::zoo::render`].
    pub fn render(&self) -> String {
        render::render(self)
    }

    /// Base indices mentioned by the payload.
    pub fn touched(&self) -> Vec<usize> {
        self.monad().touched(&self.payload)
    }

    /// The element of `T(TX)` carrying this element as an atom, i.e. a
    /// carrier `{self}`.
    pub fn singleton_carrier(&self) -> Arc<FinSet> {
        FinSet::of_elements(vec![self.clone()]).expect("a single element forms a carrier")
    }
}

impl PartialEq for TElement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.payload == other.payload
            && FinSet::same(&self.base, &other.base)
    }
}

impl Eq for TElement {}

impl Hash for TElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.payload.hash(state);
    }
}

impl Ord for TElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.payload.cmp(&other.payload))
            .then_with(|| self.base.atoms().cmp(other.base.atoms()))
    }
}

impl PartialOrd for TElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.render())
    }
}

impl fmt::Display for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The structure `(T, η, μ)` of one monad, acting on payloads.
pub trait Monad: Sync {
    fn kind(&self) -> MonadKind;

    /// `η_X(x)`.
    fn unit(&self, base: &Arc<FinSet>, x: usize) -> TElement;

    /// `Tf(a)` for the index map `f` into `codomain`.
    fn fmap_indexed(
        &self,
        a: &TElement,
        f: &dyn Fn(usize) -> usize,
        codomain: &Arc<FinSet>,
    ) -> TElement;

    /// `μ_X` applied to an outer payload whose atoms decode to `inner`, all of
    /// which live over `base`.
    fn flatten(&self, outer: &Payload, inner: &[TElement], base: &Arc<FinSet>) -> Result<TElement>;

    fn canonicalize(&self, payload: Payload) -> Result<Payload>;

    fn validate(&self, base_len: usize, payload: &Payload) -> Result<()>;

    fn touched(&self, payload: &Payload) -> Vec<usize>;

    /// Every element of `TX` in canonical order. No guard is applied here;
    /// use [`materialize_carrier`].
    fn enumerate(&self, base: &Arc<FinSet>) -> Result<Vec<TElement>>;

    /// `|TX|` for `|X| = n`, when known and finite.
    fn carrier_size(&self, n: usize) -> Option<u128>;

    /// Whether [`Monad::enumerate`] may be called on an `n`-element base.
    fn check_enumerable(&self, n: usize, guards: &Guards) -> Result<()>;

    /// A random valid element over `base` (which must be non-empty).
    fn random(&self, base: &Arc<FinSet>, rng: &mut dyn RngCore) -> TElement;
}

/// `η_X(x)`.
pub fn unit(kind: MonadKind, base: &Arc<FinSet>, x: usize) -> TElement {
    kind.monad().unit(base, x)
}

/// `Tf(a)` for a map between base carriers.
pub fn fmap(f: &FinMap, a: &TElement) -> Result<TElement> {
    if !FinSet::same(f.domain(), a.base()) {
        return Err(Error::Shape(format!(
            "map domain {:?} is not the base {:?} of {a:?}",
            f.domain(),
            a.base()
        )));
    }
    Ok(a.monad().fmap_indexed(a, &|i| f.apply(i), f.codomain()))
}

/// `Tk(a)` for an element-level map `k : X → TY`, landing in `T(TY)`.
///
/// With `target` (a materialised `TY` or any carrier containing every
/// `k(x)`) the result lives over it; otherwise it lives over the carrier of
/// the images of the touched points, which is all that `μ` needs.
pub fn fmap_elem(
    a: &TElement,
    k: &dyn Fn(usize) -> Result<TElement>,
    target: Option<&Arc<FinSet>>,
) -> Result<TElement> {
    let touched = a.touched();
    let mut images: Vec<(usize, TElement)> = Vec::with_capacity(touched.len());
    for i in touched {
        images.push((i, k(i)?));
    }
    let (kind, base) = {
        let first = &images
            .first()
            .ok_or_else(|| Error::InvalidElement("element touches no point".into()))?
            .1;
        (first.kind(), first.base().clone())
    };
    if let Some((_, bad)) = images
        .iter()
        .find(|(_, e)| e.kind() != kind || !FinSet::same(e.base(), &base))
    {
        return Err(Error::Shape(format!(
            "Kleisli map has heterogeneous codomains: {bad:?} is not over {base:?}"
        )));
    }
    if kind != a.kind() {
        return Err(Error::Shape(format!(
            "Kleisli map returns {kind} elements for a {} argument",
            a.kind()
        )));
    }
    let codomain = match target {
        Some(t) => t.clone(),
        None => {
            let mut distinct: Vec<TElement> = images.iter().map(|(_, e)| e.clone()).collect();
            distinct.sort();
            distinct.dedup();
            FinSet::of_elements(distinct)?
        }
    };
    let mut slot = vec![usize::MAX; a.base().len()];
    for (i, e) in &images {
        slot[*i] = codomain
            .index_of(&e.render())
            .ok_or_else(|| Error::Shape(format!("{e:?} is not an atom of the target carrier")))?;
    }
    Ok(a.monad().fmap_indexed(a, &|i| slot[i], &codomain))
}

/// `T h` for an element-level `h : TX → TZ` applied to `m ∈ T(TX)`.
pub fn fmap_lift(
    m: &TElement,
    h: &dyn Fn(&TElement) -> Result<TElement>,
    target: Option<&Arc<FinSet>>,
) -> Result<TElement> {
    let elems = decode(m.base())?;
    fmap_elem(m, &|i| h(&elems[i]), target)
}

fn decode(carrier: &Arc<FinSet>) -> Result<&[TElement]> {
    carrier.elements().ok_or_else(|| {
        Error::Shape(format!(
            "carrier {carrier:?} is not a carrier of monad elements"
        ))
    })
}

/// `μ_X(m)` for `m ∈ T(TX)`.
pub fn mult(m: &TElement) -> Result<TElement> {
    let inner = decode(m.base())?;
    let first = inner
        .first()
        .ok_or_else(|| Error::InvalidElement("empty carrier".into()))?;
    if first.kind() != m.kind() {
        return Err(Error::Shape(format!(
            "cannot flatten {} over {} elements",
            m.kind(),
            first.kind()
        )));
    }
    let base = first.base().clone();
    m.monad().flatten(m.payload(), inner, &base)
}

/// `bind(a, k) = μ(Tk(a))`.
pub fn kleisli_bind(a: &TElement, k: &dyn Fn(usize) -> Result<TElement>) -> Result<TElement> {
    mult(&fmap_elem(a, k, None)?)
}

/// `TX` as a carrier of rendered elements in canonical order.
pub fn materialize_carrier(
    kind: MonadKind,
    x: &Arc<FinSet>,
    guards: &Guards,
) -> Result<Arc<FinSet>> {
    let monad = kind.monad();
    monad.check_enumerable(x.len(), guards)?;
    FinSet::of_elements(monad.enumerate(x)?)
}

/// Whether a carrier is made of monad elements of `kind`.
pub fn is_carrier_of(carrier: &FinSet, kind: MonadKind) -> bool {
    matches!(carrier.origin(), Origin::Elements(e) if e.first().is_some_and(|f| f.kind() == kind))
}

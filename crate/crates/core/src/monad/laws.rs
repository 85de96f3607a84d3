//! Executable versions of the monad diagrams, the functor and naturality
//! laws, the free-algebra morphism square and the determination of a
//! free-algebra morphism by its restriction along `η`.

use std::cell::OnceCell;
use std::sync::Arc;

use super::{
    fmap, fmap_elem, fmap_lift, kleisli_bind, materialize_carrier, mult, random_map,
    sample_element, unit, MonadKind, TElement,
};
use crate::error::{Error, Result};
use crate::finset::{compose, FinMap, FinSet};

use crate::report::{compare, quantify, CheckOptions, Counterexample, Guards, LawReport};
use crate::zoo::family::MASK_BITS;

/// `T^depth X` listed exhaustively, guarded at every level.
pub(crate) fn tower(
    kind: MonadKind,
    x: &Arc<FinSet>,
    depth: usize,
    guards: &Guards,
) -> Result<Arc<FinSet>> {
    let mut carrier = x.clone();
    for _ in 0..depth {
        carrier = materialize_carrier(kind, &carrier, guards)?;
    }
    Ok(carrier)
}

pub(crate) fn elements_of(carrier: &Arc<FinSet>) -> Vec<TElement> {
    carrier
        .elements()
        .map(<[TElement]>::to_vec)
        .unwrap_or_default()
}

/// Set-valued payloads are bit masks, so wider carriers are replaced by the
/// carrier of the images alone.
fn usable(carrier: Option<&Arc<FinSet>>) -> Option<Arc<FinSet>> {
    carrier.filter(|c| c.len() <= MASK_BITS).cloned()
}

fn unit_left(
    kind: MonadKind,
    a: &TElement,
    carrier: Option<&Arc<FinSet>>,
) -> Result<Option<Counterexample>> {
    let c = usable(carrier).unwrap_or_else(|| a.singleton_carrier());
    let idx = c
        .index_of(&a.render())
        .ok_or_else(|| Error::Internal(format!("{a:?} missing from its carrier")))?;
    let lhs = mult(&unit(kind, &c, idx))?;
    Ok(compare(&[a], &lhs, a))
}

fn unit_right(
    kind: MonadKind,
    a: &TElement,
    carrier: Option<&Arc<FinSet>>,
) -> Result<Option<Counterexample>> {
    let base = a.base().clone();
    let lifted = fmap_elem(a, &|i| Ok(unit(kind, &base, i)), usable(carrier).as_ref())?;
    let lhs = mult(&lifted)?;
    Ok(compare(&[a], &lhs, a))
}

/// The two unit diagrams and the associativity diagram.
///
/// Unit laws are checked at `X` (instances in `TX`) and at `TX` (instances in
/// `T²X`); associativity at `X` with instances in `T³X`. Spaces that exceed
/// the guards are sampled and the report says so.
pub fn check_monad_laws(
    kind: MonadKind,
    x: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let guards = &opts.guards;
    let mut parts = Vec::new();
    for depth in [1usize, 2] {
        let at = if depth == 1 { "X" } else { "TX" };
        let listed = || -> Result<Vec<(TElement, Option<Arc<FinSet>>)>> {
            let c = tower(kind, x, depth, guards)?;
            Ok(elements_of(&c)
                .into_iter()
                .map(|a| (a, Some(c.clone())))
                .collect())
        };
        parts.push(quantify(
            &format!("unit-left@{at}: mu . eta_T = id"),
            opts,
            listed,
            |rng| Ok((sample_element(kind, x, depth, rng)?, None)),
            |(a, c)| unit_left(kind, a, c.as_ref()),
        )?);
        parts.push(quantify(
            &format!("unit-right@{at}: mu . T eta = id"),
            opts,
            listed,
            |rng| Ok((sample_element(kind, x, depth, rng)?, None)),
            |(a, c)| unit_right(kind, a, c.as_ref()),
        )?);
    }
    let tx = OnceCell::new();
    parts.push(quantify(
        "associativity@X: mu . mu_T = mu . T mu",
        opts,
        || {
            let t1 = tower(kind, x, 1, guards)?;
            let t3 = tower(kind, &t1, 2, guards)?;
            let _ = tx.set(t1);
            Ok(elements_of(&t3))
        },
        |rng| sample_element(kind, x, 3, rng),
        |m| {
            let lhs = mult(&mult(m)?)?;
            let rhs = mult(&fmap_lift(m, &mult, tx.get())?)?;
            Ok(compare(&[m], &lhs, &rhs))
        },
    )?);
    Ok(LawReport::conjunction(
        format!("monad laws ({kind})"),
        parts,
    ))
}

/// The morphism square `μ_Z ∘ Th = h ∘ μ_X` for an element-level
/// `h : TX → TZ`, quantified over `T²X`.
pub fn check_algebra_morphism(
    kind: MonadKind,
    h: &dyn Fn(&TElement) -> Result<TElement>,
    x: &Arc<FinSet>,
    z: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    quantify(
        "free-algebra morphism: mu . T h = h . mu",
        opts,
        || Ok(elements_of(&tower(kind, x, 2, &opts.guards)?)),
        |rng| sample_element(kind, x, 2, rng),
        |m| algebra_square(h, m, z),
    )
}

pub(crate) fn algebra_square(
    h: &dyn Fn(&TElement) -> Result<TElement>,
    m: &TElement,
    z: &Arc<FinSet>,
) -> Result<Option<Counterexample>> {
    let lhs = mult(&fmap_lift(m, h, None)?)?;
    let rhs = h(&mult(m)?)?;
    if !FinSet::same(rhs.base(), z) {
        return Err(Error::Shape(format!(
            "h lands over {:?}, expected {z:?}",
            rhs.base()
        )));
    }
    Ok(compare(&[m], &lhs, &rhs))
}

/// `h = μ ∘ T(h ∘ η)` for a free-algebra morphism `h : TX → TZ`. When `h`
/// fails the morphism square the law is reported as not applicable.
pub fn check_free_determination(
    kind: MonadKind,
    h: &dyn Fn(&TElement) -> Result<TElement>,
    x: &Arc<FinSet>,
    z: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let law = "determination: h = mu . T(h . eta)";
    let square = check_algebra_morphism(kind, h, x, z, opts)?;
    if !square.passed() {
        let witness = square
            .counterexample
            .map(|c| c.inputs.join(", "))
            .unwrap_or_default();
        return Ok(LawReport::precondition_failed(
            law,
            format!("h is not a free-algebra morphism (square fails at {witness})"),
        ));
    }
    quantify(
        law,
        opts,
        || Ok(elements_of(&tower(kind, x, 1, &opts.guards)?)),
        |rng| sample_element(kind, x, 1, rng),
        |a| {
            let rebuilt = kleisli_bind(a, &|i| h(&unit(kind, x, i)))?;
            let direct = h(a)?;
            Ok(compare(&[a], &direct, &rebuilt))
        },
    )
}

/// `T id = id` and `T(g∘f) = Tg ∘ Tf` over all maps `f : X → Y`, `g : Y → Z`.
pub fn check_functor_laws(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    z: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let guards = &opts.guards;
    let identity = quantify(
        "functor identity: T id = id",
        opts,
        || Ok(elements_of(&tower(kind, x, 1, guards)?)),
        |rng| sample_element(kind, x, 1, rng),
        |a| Ok(compare(&[a], &fmap(&FinMap::identity(x), a)?, a)),
    )?;
    let composition = quantify(
        "functor composition: T(g.f) = Tg . Tf",
        opts,
        || {
            let elems = elements_of(&tower(kind, x, 1, guards)?);
            let fs: Vec<FinMap> = FinMap::all_maps(x, y).collect();
            let gs: Vec<FinMap> = FinMap::all_maps(y, z).collect();
            guards.check_count(
                (elems.len() * fs.len() * gs.len()) as u128,
                "functor composition",
            )?;
            let mut out = Vec::new();
            for a in &elems {
                for f in &fs {
                    for g in &gs {
                        out.push((a.clone(), f.clone(), g.clone()));
                    }
                }
            }
            Ok(out)
        },
        |rng| {
            Ok((
                sample_element(kind, x, 1, rng)?,
                random_map(x, y, rng),
                random_map(y, z, rng),
            ))
        },
        |(a, f, g)| {
            let lhs = fmap(&compose(g, f)?, a)?;
            let rhs = fmap(g, &fmap(f, a)?)?;
            Ok(compare(&[a], &lhs, &rhs))
        },
    )?;
    Ok(LawReport::conjunction(
        format!("functor laws ({kind})"),
        vec![identity, composition],
    ))
}

/// `Tf ∘ η_X = η_Y ∘ f` for every `f : X → Y`.
pub fn check_unit_naturality(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    quantify(
        "unit naturality: Tf . eta = eta . f",
        opts,
        || {
            let fs: Vec<FinMap> = FinMap::all_maps(x, y).collect();
            opts.guards
                .check_count((fs.len() * x.len()) as u128, "unit naturality")?;
            Ok(fs
                .into_iter()
                .flat_map(|f| (0..x.len()).map(move |i| (f.clone(), i)))
                .collect())
        },
        |rng| {
            let f = random_map(x, y, rng);
            let i = rand::Rng::gen_range(rng, 0..x.len());
            Ok((f, i))
        },
        |(f, i)| {
            let point = unit(kind, x, *i);
            let lhs = fmap(f, &point)?;
            let rhs = unit(kind, y, f.apply(*i));
            Ok(compare(&[&point], &lhs, &rhs))
        },
    )
}

/// `Tf ∘ μ_X = μ_Y ∘ T²f` over `T²X` and every `f : X → Y`.
pub fn check_mult_naturality(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    quantify(
        "multiplication naturality: Tf . mu = mu . TTf",
        opts,
        || {
            let elems = elements_of(&tower(kind, x, 2, &opts.guards)?);
            let fs: Vec<FinMap> = FinMap::all_maps(x, y).collect();
            opts.guards.check_count(
                (elems.len() * fs.len()) as u128,
                "multiplication naturality",
            )?;
            Ok(elems
                .iter()
                .flat_map(|m| fs.iter().map(move |f| (m.clone(), f.clone())))
                .collect())
        },
        |rng| Ok((sample_element(kind, x, 2, rng)?, random_map(x, y, rng))),
        |(m, f)| {
            let lhs = fmap(f, &mult(m)?)?;
            let rhs = mult(&fmap_lift(m, &|e| fmap(f, e), None)?)?;
            Ok(compare(&[m], &lhs, &rhs))
        },
    )
}

type Structure = dyn Fn(&TElement) -> Result<usize> + Send + Sync;

/// A `T`-algebra `(A, ξ)` on a finite carrier, with `ξ` given on elements of
/// `TA`.
pub struct TAlgebra {
    kind: MonadKind,
    carrier: Arc<FinSet>,
    structure: Box<Structure>,
}

impl TAlgebra {
    pub fn new(
        kind: MonadKind,
        carrier: Arc<FinSet>,
        structure: impl Fn(&TElement) -> Result<usize> + Send + Sync + 'static,
    ) -> Self {
        TAlgebra {
            kind,
            carrier,
            structure: Box::new(structure),
        }
    }

    /// The free algebra `(TX, μ)` on a listable `TX`.
    pub fn free(kind: MonadKind, x: &Arc<FinSet>, guards: &Guards) -> Result<Self> {
        let tx = materialize_carrier(kind, x, guards)?;
        let lookup = tx.clone();
        Ok(TAlgebra::new(kind, tx, move |m| {
            let flat = mult(m)?;
            lookup
                .index_of(&flat.render())
                .ok_or_else(|| Error::Internal(format!("{flat:?} missing from TX")))
        }))
    }

    pub fn carrier(&self) -> &Arc<FinSet> {
        &self.carrier
    }

    pub fn apply(&self, a: &TElement) -> Result<usize> {
        (self.structure)(a)
    }

    /// `ξ ∘ η = id` and `ξ ∘ Tξ = ξ ∘ μ`.
    pub fn check(&self, opts: &CheckOptions) -> Result<LawReport> {
        let kind = self.kind;
        let a = &self.carrier;
        let witness = |inputs: Vec<String>, l: usize, r: usize| Counterexample {
            inputs,
            lhs: a.atom(l).to_string(),
            rhs: a.atom(r).to_string(),
        };
        let unit_law = quantify(
            "algebra unit: xi . eta = id",
            opts,
            || Ok((0..a.len()).collect()),
            |rng| Ok(rand::Rng::gen_range(rng, 0..a.len())),
            |&i| {
                let l = self.apply(&unit(kind, a, i))?;
                Ok((l != i).then(|| witness(vec![a.atom(i).to_string()], l, i)))
            },
        )?;
        let square = quantify(
            "algebra square: xi . T xi = xi . mu",
            opts,
            || Ok(elements_of(&tower(kind, a, 2, &opts.guards)?)),
            |rng| sample_element(kind, a, 2, rng),
            |m| {
                let inner = m
                    .base()
                    .elements()
                    .ok_or_else(|| Error::Shape("expected a carrier of elements".into()))?;
                let images: Vec<usize> =
                    inner.iter().map(|e| self.apply(e)).collect::<Result<_>>()?;
                let pushed = kind.monad().fmap_indexed(m, &|i| images[i], a);
                let l = self.apply(&pushed)?;
                let r = self.apply(&mult(m)?)?;
                Ok((l != r).then(|| witness(vec![m.render()], l, r)))
            },
        )?;
        Ok(LawReport::conjunction(
            format!("{kind}-algebra laws"),
            vec![unit_law, square],
        ))
    }
}

//! The tensor product `⊗ : TX × TY → T(X×Y)`.
//!
//! `a ⊗ b = bind(a, x ↦ T i_x(b))` with `i_x : y ↦ (x, y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finset::{product, product_map, reassociate, FinMap, FinSet};
use crate::monad::laws::{elements_of, tower};
use crate::monad::{
    fmap, kleisli_bind, random_map, sample_element, unit, MonadKind, Payload, TElement,
};
use crate::report::{compare, quantify, CheckOptions, LawReport};
use crate::zoo::{exp, family, prob};

/// `a ⊗ b` over a fresh product carrier.
pub fn tensor(a: &TElement, b: &TElement) -> Result<TElement> {
    tensor_into(a, b, &product(a.base(), b.base()))
}

/// `a ⊗ b` over a given product carrier `X×Y`.
pub fn tensor_into(a: &TElement, b: &TElement, xy: &Arc<FinSet>) -> Result<TElement> {
    if a.kind() != b.kind() {
        return Err(Error::Shape(format!(
            "cannot tensor a {} element with a {} element",
            a.kind(),
            b.kind()
        )));
    }
    let (x, y) = xy
        .factors()
        .ok_or_else(|| Error::Shape(format!("{xy:?} is not a product carrier")))?;
    if !FinSet::same(x, a.base()) || !FinSet::same(y, b.base()) {
        return Err(Error::Shape(format!(
            "{xy:?} is not the product of the carriers of {a:?} and {b:?}"
        )));
    }
    kleisli_bind(a, &|i| fmap(&crate::finset::slice_at(xy, i), b))
}

/// Cartesian product of two subsets.
pub fn oracle_tensor_exp(a: &TElement, b: &TElement) -> Result<TElement> {
    let xy = product(a.base(), b.base());
    let mut pairs = Vec::new();
    for i in family::indices(exp::mask_of(a)) {
        for j in family::indices(exp::mask_of(b)) {
            pairs.push(xy.pair(i, j));
        }
    }
    exp::subset(&xy, &pairs)
}

/// Product measure.
pub fn oracle_tensor_prob(a: &TElement, b: &TElement) -> Result<TElement> {
    let xy = product(a.base(), b.base());
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (i, v) in prob::entries_of(a) {
        for (j, w) in prob::entries_of(b) {
            *acc.entry(xy.pair(*i, *j)).or_insert_with(BigRational::zero) += v * w;
        }
    }
    TElement::new(
        MonadKind::Prob,
        &xy,
        Payload::Dist(acc.into_iter().collect()),
    )
}

/// `η(x) ⊗ η(y) = η((x,y))` over all of `X×Y`.
pub fn check_tensor_unit(kind: MonadKind, x: &Arc<FinSet>, y: &Arc<FinSet>) -> Result<LawReport> {
    let xy = product(x, y);
    quantify(
        "tensor unit: eta(x) (x) eta(y) = eta((x,y))",
        &CheckOptions::exhaustive(),
        || Ok((0..xy.len()).map(|k| xy.unpair(k)).collect()),
        |_| unreachable!("unit law is always exhaustive"),
        |&(i, j)| {
            let (a, b) = (unit(kind, x, i), unit(kind, y, j));
            let lhs = tensor_into(&a, &b, &xy)?;
            Ok(compare(&[&a, &b], &lhs, &unit(kind, &xy, xy.pair(i, j))))
        },
    )
}

/// Pairs from `TX × TY`, listed or sampled.
fn pairs(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<Vec<(TElement, TElement)>> {
    let tx = elements_of(&tower(kind, x, 1, &opts.guards)?);
    let ty = elements_of(&tower(kind, y, 1, &opts.guards)?);
    opts.guards
        .check_count((tx.len() * ty.len()) as u128, "pairs")?;
    Ok(tx
        .iter()
        .flat_map(|a| ty.iter().map(move |b| (a.clone(), b.clone())))
        .collect())
}

/// `T(h_X × h_Y)(a ⊗ b) = Th_X(a) ⊗ Th_Y(b)`.
pub fn check_tensor_naturality(
    kind: MonadKind,
    h_x: &FinMap,
    h_y: &FinMap,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let (x, y) = (h_x.domain(), h_y.domain());
    let hxy = product_map(h_x, h_y);
    let source = hxy.domain().clone();
    let target = hxy.codomain().clone();
    quantify(
        "tensor naturality: T(hX x hY)(a (x) b) = ThX(a) (x) ThY(b)",
        opts,
        || pairs(kind, x, y, opts),
        |rng| {
            Ok((
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, y, 1, rng)?,
            ))
        },
        |(a, b)| {
            let lhs = fmap(&hxy, &tensor_into(a, b, &source)?)?;
            let rhs = tensor_into(&fmap(h_x, a)?, &fmap(h_y, b)?, &target)?;
            Ok(compare(&[a, b], &lhs, &rhs))
        },
    )
}

/// Naturality over every pair of maps `h_X : X → X'`, `h_Y : Y → Y'` and
/// every pair `(a, b)`; sampled runs draw random maps as well.
pub fn check_tensor_naturality_sweep(
    kind: MonadKind,
    (x, x2): (&Arc<FinSet>, &Arc<FinSet>),
    (y, y2): (&Arc<FinSet>, &Arc<FinSet>),
    opts: &CheckOptions,
) -> Result<LawReport> {
    let (source, target) = (product(x, y), product(x2, y2));
    quantify(
        "tensor naturality over all maps",
        opts,
        || {
            let hx: Vec<FinMap> = FinMap::all_maps(x, x2).collect();
            let hy: Vec<FinMap> = FinMap::all_maps(y, y2).collect();
            let ab = pairs(kind, x, y, opts)?;
            opts.guards.check_count(
                (hx.len() * hy.len() * ab.len()) as u128,
                "tensor naturality sweep",
            )?;
            let mut out = Vec::new();
            for f in &hx {
                for g in &hy {
                    for (a, b) in &ab {
                        out.push((f.clone(), g.clone(), a.clone(), b.clone()));
                    }
                }
            }
            Ok(out)
        },
        |rng| {
            Ok((
                random_map(x, x2, rng),
                random_map(y, y2, rng),
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, y, 1, rng)?,
            ))
        },
        |(f, g, a, b)| {
            let fg = product_map(f, g);
            let lhs = fmap(&fg, &tensor_into(a, b, &source)?)?;
            let rhs = tensor_into(&fmap(f, a)?, &fmap(g, b)?, &target)?;
            Ok(compare(&[a, b], &lhs, &rhs))
        },
    )
}

/// `(a ⊗ b) ⊗ c = a ⊗ (b ⊗ c)` along `(x,(y,z)) ↦ ((x,y),z)`.
pub fn check_tensor_associativity(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    z: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let (xy, yz) = (product(x, y), product(y, z));
    let (xy_z, x_yz) = (product(&xy, z), product(x, &yz));
    let flatten = reassociate(&x_yz, &xy_z)?;
    quantify(
        "tensor associativity: (a (x) b) (x) c = a (x) (b (x) c)",
        opts,
        || {
            let ts: Vec<Vec<TElement>> = [x, y, z]
                .iter()
                .map(|c| tower(kind, c, 1, &opts.guards).map(|t| elements_of(&t)))
                .collect::<Result<_>>()?;
            opts.guards.check_count(
                (ts[0].len() * ts[1].len() * ts[2].len()) as u128,
                "tensor triples",
            )?;
            let mut out = Vec::new();
            for a in &ts[0] {
                for b in &ts[1] {
                    for c in &ts[2] {
                        out.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            Ok(out)
        },
        |rng| {
            Ok((
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, y, 1, rng)?,
                sample_element(kind, z, 1, rng)?,
            ))
        },
        |(a, b, c)| {
            let lhs = tensor_into(&tensor_into(a, b, &xy)?, c, &xy_z)?;
            let rhs = fmap(&flatten, &tensor_into(a, &tensor_into(b, c, &yz)?, &x_yz)?)?;
            Ok(compare(&[a, b, c], &lhs, &rhs))
        },
    )
}

/// Agreement of `⊗` with the Cartesian product (exp) or the product measure
/// (prob).
pub fn check_tensor_oracle(
    kind: MonadKind,
    x: &Arc<FinSet>,
    y: &Arc<FinSet>,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let oracle: fn(&TElement, &TElement) -> Result<TElement> = match kind {
        MonadKind::Exp => oracle_tensor_exp,
        MonadKind::Prob => oracle_tensor_prob,
        other => {
            return Err(Error::Capability(format!("no tensor oracle for {other}")));
        }
    };
    quantify(
        &format!("tensor oracle ({kind})"),
        opts,
        || pairs(kind, x, y, opts),
        |rng| {
            Ok((
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, y, 1, rng)?,
            ))
        },
        |(a, b)| Ok(compare(&[a, b], &tensor(a, b)?, &oracle(a, b)?)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::upfamily;

    #[test]
    fn units_tensor_to_units() {
        for kind in MonadKind::ALL {
            let r = check_tensor_unit(kind, &FinSet::range(3), &FinSet::range(2)).unwrap();
            assert!(r.passed(), "{kind}");
            assert_eq!(r.instances, 6);
        }
    }

    #[test]
    fn exp_tensor_is_cartesian_product() {
        let x = FinSet::range(2);
        let a = exp::subset(&x, &[0, 1]).unwrap();
        let b = exp::subset(&x, &[1]).unwrap();
        assert_eq!(tensor(&a, &b).unwrap().render(), "{(0,1),(1,1)}");
        let big = FinSet::new(["a", "b"]).unwrap();
        let small = FinSet::new(["c", "d"]).unwrap();
        let t = oracle_tensor_exp(
            &exp::subset(&big, &[0, 1]).unwrap(),
            &exp::subset(&small, &[0, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(t.render(), "{(a,c),(a,d),(b,c),(b,d)}");
    }

    #[test]
    fn prob_tensor_is_product_measure() {
        let x = FinSet::range(2);
        let u = prob::uniform(&x, &[0, 1]).unwrap();
        let d = unit(MonadKind::Prob, &x, 1);
        assert_eq!(tensor(&u, &d).unwrap().render(), "{(0,1):1/2, (1,1):1/2}");
        let uu = tensor(&u, &u).unwrap();
        assert_eq!(uu, oracle_tensor_prob(&u, &u).unwrap());
        assert_eq!(uu, prob::uniform(uu.base(), &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn oracles_agree_exhaustively() {
        let opts = CheckOptions::exhaustive();
        for n in 1..=3 {
            for m in 1..=3 {
                let r = check_tensor_oracle(
                    MonadKind::Exp,
                    &FinSet::range(n),
                    &FinSet::range(m),
                    &opts,
                )
                .unwrap();
                assert!(r.passed());
                assert_eq!(r.instances, ((1 << n) - 1) * ((1 << m) - 1));
            }
        }
        let r = check_tensor_oracle(
            MonadKind::Prob,
            &FinSet::range(3),
            &FinSet::range(2),
            &CheckOptions::sampled(7, 200),
        )
        .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn lambda_tensor_of_triangle_with_point() {
        let x = FinSet::range(3);
        let y = FinSet::range(1);
        let tri = upfamily::family(MonadKind::Lambda, &x, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        let t = tensor(&tri, &unit(MonadKind::Lambda, &y, 0)).unwrap();
        assert_eq!(t.render(), "[{(0,0),(1,0)},{(0,0),(2,0)},{(1,0),(2,0)}]");
    }

    #[test]
    fn naturality_and_associativity() {
        let opts = CheckOptions::exhaustive();
        let two = FinSet::range(2);
        let swap = FinMap::new(two.clone(), two.clone(), vec![1, 0]).unwrap();
        for kind in [
            MonadKind::Id,
            MonadKind::Exp,
            MonadKind::Lambda,
            MonadKind::Incl,
        ] {
            assert!(check_tensor_naturality(kind, &swap, &swap, &opts)
                .unwrap()
                .passed());
            let r = check_tensor_associativity(kind, &two, &two, &two, &opts).unwrap();
            assert!(r.passed(), "{kind}");
        }
        let r = check_tensor_associativity(MonadKind::Exp, &two, &two, &two, &opts).unwrap();
        assert_eq!(r.instances, 27);
        let r = check_tensor_naturality_sweep(MonadKind::Exp, (&two, &two), (&two, &two), &opts)
            .unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 4 * 4 * 9);
        let r = check_tensor_associativity(MonadKind::Lambda, &two, &two, &two, &opts).unwrap();
        assert_eq!(r.instances, 8);
    }

    #[test]
    fn mismatched_product_is_rejected() {
        let x = FinSet::range(2);
        let a = unit(MonadKind::Exp, &x, 0);
        let wrong = product(&x, &FinSet::range(3));
        assert!(tensor_into(&a, &a, &wrong).is_err());
        let p = unit(MonadKind::Prob, &x, 0);
        assert!(tensor(&a, &p).is_err());
    }
}

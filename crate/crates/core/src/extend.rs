//! Extensions `Φ : TX × TY → TZ` of a binary operation `φ : X × Y → Z`.
//!
//! Two constructions are provided and always agree:
//!
//! * direct: `Φ(a, b) = bind(a, x ↦ Tφ_x(b))`
//! * via the tensor product: `Φ(a, b) = Tφ(a ⊗ b)`
//!
//! The checks here cover the unit axiom, the shift axioms, associativity,
//! naturality in homomorphisms, and agreement with the classical setwise
//! product, convolution and up-family product.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::finset::{BinOpTable, FinMap, FinSet};
use crate::monad::laws::{algebra_square, elements_of, tower};
use crate::monad::{
    fmap, kleisli_bind, materialize_carrier, random_map, sample_element, unit, MonadKind, Payload,
    TElement,
};
use crate::report::{compare, quantify, CheckOptions, Counterexample, Guards, LawReport};
use crate::tensor::tensor_into;
use crate::zoo::{self, exp, family, prob, upfamily};

fn require_over(a: &TElement, carrier: &Arc<FinSet>, side: &str) -> Result<()> {
    if FinSet::same(a.base(), carrier) {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "{side} argument {a:?} is not over {carrier:?}"
        )))
    }
}

/// `b ↦ Tφ_x(b)`.
pub fn left_shift_ext(op: &BinOpTable, x: usize) -> impl Fn(&TElement) -> Result<TElement> + '_ {
    let shift = op.left_shift(x);
    move |b| fmap(&shift, b)
}

/// `Φ(a, b) = μ(T(x ↦ Tφ_x(b))(a))`.
pub fn extend_direct(op: &BinOpTable, a: &TElement, b: &TElement) -> Result<TElement> {
    require_over(a, op.left(), "left")?;
    require_over(b, op.right(), "right")?;
    kleisli_bind(a, &|x| fmap(&op.left_shift(x), b))
}

/// `Φ(a, b) = Tφ(a ⊗ b)`.
pub fn extend_via_tensor(op: &BinOpTable, a: &TElement, b: &TElement) -> Result<TElement> {
    require_over(a, op.left(), "left")?;
    require_over(b, op.right(), "right")?;
    let phi = op.as_map();
    fmap(&phi, &tensor_into(a, b, phi.domain())?)
}

/// The classical setwise product `{φ(x, y) : x ∈ A, y ∈ B}`.
pub fn oracle_setwise(op: &BinOpTable, a: &TElement, b: &TElement) -> Result<TElement> {
    let mut out = Vec::new();
    for x in family::indices(exp::mask_of(a)) {
        for y in family::indices(exp::mask_of(b)) {
            out.push(op.get(x, y));
        }
    }
    exp::subset(op.out(), &out)
}

/// Convolution: the weight of `z` is the sum of `a(x)·b(y)` over `φ(x,y) = z`.
pub fn oracle_convolution(op: &BinOpTable, a: &TElement, b: &TElement) -> Result<TElement> {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (x, v) in prob::entries_of(a) {
        for (y, w) in prob::entries_of(b) {
            *acc.entry(op.get(*x, *y)).or_insert_with(BigRational::zero) += v * w;
        }
    }
    TElement::new(
        MonadKind::Prob,
        op.out(),
        Payload::Dist(acc.into_iter().collect()),
    )
}

/// The up-family product: minimal members are among the sets
/// `⋃_{x ∈ A} φ(x, B_x)` for a minimal `A` of `a` and any choice of minimal
/// members `B_x` of `b`.
pub fn oracle_upfamily(op: &BinOpTable, a: &TElement, b: &TElement) -> Result<TElement> {
    let bs = upfamily::members_of(b);
    let mut out = Vec::new();
    for &m in upfamily::members_of(a) {
        let xs: Vec<usize> = family::indices(m).collect();
        let mut choice = vec![0usize; xs.len()];
        loop {
            let mut set = 0;
            for (x, &c) in xs.iter().zip(&choice) {
                set |= family::image(bs[c], &|y| op.get(*x, y));
            }
            out.push(set);
            // odometer over choice functions
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < bs.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    TElement::new(a.kind(), op.out(), Payload::Family(out))
}

/// The independent oracle for `kind`, where there is one.
pub fn oracle_for(kind: MonadKind) -> fn(&BinOpTable, &TElement, &TElement) -> Result<TElement> {
    match kind {
        MonadKind::Id => |op, a, b| {
            let (Payload::Point(x), Payload::Point(y)) = (a.payload(), b.payload()) else {
                return Err(Error::Shape("points expected".into()));
            };
            Ok(unit(MonadKind::Id, op.out(), op.get(*x, *y)))
        },
        MonadKind::Exp => oracle_setwise,
        MonadKind::Lambda | MonadKind::Incl => oracle_upfamily,
        MonadKind::Prob => oracle_convolution,
    }
}

/// `Φ` tabulated over materialised carriers.
#[derive(Clone, Debug)]
pub struct ExtendedOp {
    kind: MonadKind,
    source: BinOpTable,
    table: BinOpTable,
}

impl ExtendedOp {
    pub fn kind(&self) -> MonadKind {
        self.kind
    }

    pub fn source(&self) -> &BinOpTable {
        &self.source
    }

    /// The Cayley table of `Φ` on `TX`.
    pub fn table(&self) -> &BinOpTable {
        &self.table
    }

    pub fn carrier(&self) -> &Arc<FinSet> {
        self.table.left()
    }

    pub fn elements(&self) -> &[TElement] {
        self.carrier().elements().expect("carrier of elements")
    }

    pub fn index_of(&self, a: &TElement) -> Result<usize> {
        self.carrier()
            .index_of(&a.render())
            .ok_or_else(|| Error::Shape(format!("{a:?} is not in the extended carrier")))
    }

    pub fn apply(&self, a: &TElement, b: &TElement) -> Result<TElement> {
        let cell = self.table.get(self.index_of(a)?, self.index_of(b)?);
        Ok(self.elements()[cell].clone())
    }
}

/// Tabulates `Φ` on `TX` for an operation on `X`, computing every cell by
/// both constructions. Non-associative operations are refused unless
/// `allow_nonassociative`.
pub fn extended_cayley_table(
    kind: MonadKind,
    op: &BinOpTable,
    allow_nonassociative: bool,
    guards: &Guards,
) -> Result<ExtendedOp> {
    if let Some((x, y, z)) = op.associativity_witness()? {
        if !allow_nonassociative {
            let l = op.left();
            return Err(Error::Precondition(format!(
                "operation is not associative at ({},{},{})",
                l.atom(x),
                l.atom(y),
                l.atom(z)
            )));
        }
    }
    let tx = materialize_carrier(kind, op.left(), guards)?;
    guards.check_count((tx.len() * tx.len()) as u128, "extended table")?;
    let elems = elements_of(&tx);
    let mut cells = Vec::with_capacity(elems.len() * elems.len());
    for a in &elems {
        for b in &elems {
            let direct = extend_direct(op, a, b)?;
            let via = extend_via_tensor(op, a, b)?;
            if direct != via {
                return Err(Error::Internal(format!(
                    "constructions disagree at ({a}, {b}): direct {direct}, via tensor {via}"
                )));
            }
            cells.push(
                tx.index_of(&direct.render()).ok_or_else(|| {
                    Error::Internal(format!("{direct:?} is not an element of TX"))
                })?,
            );
        }
    }
    Ok(ExtendedOp {
        kind,
        source: op.clone(),
        table: BinOpTable::cayley(&tx, cells)?,
    })
}

/// All `e` with `Φ(e, e) = e`, in carrier order.
pub fn idempotents(ext: &ExtendedOp) -> Vec<TElement> {
    let elems = ext.elements();
    (0..elems.len())
        .filter(|&i| ext.table.get(i, i) == i)
        .map(|i| elems[i].clone())
        .collect()
}

/// Pairs from `TX × TY`.
fn pair_space(
    kind: MonadKind,
    op: &BinOpTable,
    opts: &CheckOptions,
) -> Result<Vec<(TElement, TElement)>> {
    let tx = elements_of(&tower(kind, op.left(), 1, &opts.guards)?);
    let ty = elements_of(&tower(kind, op.right(), 1, &opts.guards)?);
    opts.guards
        .check_count((tx.len() * ty.len()) as u128, "pairs")?;
    Ok(tx
        .iter()
        .flat_map(|a| ty.iter().map(move |b| (a.clone(), b.clone())))
        .collect())
}

fn sample_pair(
    kind: MonadKind,
    op: &BinOpTable,
    rng: &mut dyn RngCore,
) -> Result<(TElement, TElement)> {
    Ok((
        sample_element(kind, op.left(), 1, rng)?,
        sample_element(kind, op.right(), 1, rng)?,
    ))
}

/// Direct and tensor constructions agree on every (or every sampled) pair.
pub fn check_uniqueness(
    kind: MonadKind,
    op: &BinOpTable,
    opts: &CheckOptions,
) -> Result<LawReport> {
    quantify(
        "uniqueness: direct = via tensor",
        opts,
        || pair_space(kind, op, opts),
        |rng| sample_pair(kind, op, rng),
        |(a, b)| {
            Ok(compare(
                &[a, b],
                &extend_direct(op, a, b)?,
                &extend_via_tensor(op, a, b)?,
            ))
        },
    )
}

/// The extension agrees with the independent oracle for `kind`.
pub fn check_oracle(kind: MonadKind, op: &BinOpTable, opts: &CheckOptions) -> Result<LawReport> {
    let oracle = oracle_for(kind);
    quantify(
        &format!("oracle agreement ({kind})"),
        opts,
        || pair_space(kind, op, opts),
        |rng| sample_pair(kind, op, rng),
        |(a, b)| {
            Ok(compare(
                &[a, b],
                &extend_direct(op, a, b)?,
                &oracle(op, a, b)?,
            ))
        },
    )
}

/// `Φ(η x, b) = Tφ_x(b)` for every `x` and every (or sampled) `b`.
pub fn check_left_shift_claim(
    kind: MonadKind,
    op: &BinOpTable,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let x = op.left();
    quantify(
        "left shift: Phi(eta x, b) = T phi_x (b)",
        opts,
        || {
            let ty = elements_of(&tower(kind, op.right(), 1, &opts.guards)?);
            Ok((0..x.len())
                .flat_map(|i| ty.iter().map(move |b| (i, b.clone())))
                .collect())
        },
        |rng| {
            Ok((
                rng.gen_range(0..x.len()),
                sample_element(kind, op.right(), 1, rng)?,
            ))
        },
        |(i, b)| {
            let ex = unit(kind, x, *i);
            let lhs = extend_direct(op, &ex, b)?;
            let rhs = left_shift_ext(op, *i)(b)?;
            Ok(compare(&[&ex, b], &lhs, &rhs))
        },
    )
}

/// The three axioms of an extension: compatibility with units, right shifts
/// `Φ^b` and left shifts `Φ_{η(x)}` being free-algebra morphisms.
pub fn check_extension_axioms(
    kind: MonadKind,
    op: &BinOpTable,
    opts: &CheckOptions,
) -> Result<LawReport> {
    let (x, y, z) = (op.left(), op.right(), op.out());
    let units = quantify(
        "unit compatibility: Phi(eta x, eta y) = eta(phi(x,y))",
        &CheckOptions::exhaustive(),
        || {
            Ok((0..x.len())
                .flat_map(|i| (0..y.len()).map(move |j| (i, j)))
                .collect())
        },
        |_| unreachable!("unit compatibility is always exhaustive"),
        |&(i, j)| {
            let (a, b) = (unit(kind, x, i), unit(kind, y, j));
            let lhs = extend_direct(op, &a, &b)?;
            Ok(compare(&[&a, &b], &lhs, &unit(kind, z, op.get(i, j))))
        },
    )?;
    let right = quantify(
        "right shifts are free-algebra morphisms",
        opts,
        || {
            let ty = elements_of(&tower(kind, y, 1, &opts.guards)?);
            let ttx = elements_of(&tower(kind, x, 2, &opts.guards)?);
            opts.guards
                .check_count((ty.len() * ttx.len()) as u128, "right shifts")?;
            Ok(ty
                .iter()
                .flat_map(|b| ttx.iter().map(move |m| (b.clone(), m.clone())))
                .collect())
        },
        |rng| {
            Ok((
                sample_element(kind, y, 1, rng)?,
                sample_element(kind, x, 2, rng)?,
            ))
        },
        |(b, m)| {
            let shift = |a: &TElement| extend_direct(op, a, b);
            Ok(algebra_square(&shift, m, z)?.map(|ce| with_parameter(ce, b)))
        },
    )?;
    let left = quantify(
        "left shifts at units are free-algebra morphisms",
        opts,
        || {
            let tty = elements_of(&tower(kind, y, 2, &opts.guards)?);
            opts.guards
                .check_count((x.len() * tty.len()) as u128, "left shifts")?;
            Ok((0..x.len())
                .flat_map(|i| tty.iter().map(move |m| (i, m.clone())))
                .collect())
        },
        |rng| Ok((rng.gen_range(0..x.len()), sample_element(kind, y, 2, rng)?)),
        |(i, m)| {
            let ex = unit(kind, x, *i);
            let shift = |b: &TElement| extend_direct(op, &ex, b);
            Ok(algebra_square(&shift, m, z)?.map(|ce| with_parameter(ce, &ex)))
        },
    )?;
    Ok(LawReport::conjunction(
        format!("extension axioms ({kind})"),
        vec![units, right, left],
    ))
}

fn with_parameter(mut ce: Counterexample, p: &TElement) -> Counterexample {
    ce.inputs.insert(0, p.render());
    ce
}

/// `Φ(Φ(a,b),c) = Φ(a,Φ(b,c))` over `TX³`. Exhaustive runs read `Φ` off the
/// extended table.
pub fn check_extension_associativity(
    kind: MonadKind,
    op: &BinOpTable,
    allow_nonassociative: bool,
    opts: &CheckOptions,
) -> Result<LawReport> {
    if !allow_nonassociative {
        if let Some((x, y, z)) = op.associativity_witness()? {
            let l = op.left();
            return Err(Error::Precondition(format!(
                "operation is not associative at ({},{},{})",
                l.atom(x),
                l.atom(y),
                l.atom(z)
            )));
        }
    }
    let table: OnceCell<ExtendedOp> = OnceCell::new();
    let phi = |a: &TElement, b: &TElement| match table.get() {
        Some(t) => t.apply(a, b),
        None => extend_direct(op, a, b),
    };
    quantify(
        "associativity: Phi(Phi(a,b),c) = Phi(a,Phi(b,c))",
        opts,
        || {
            let ext = extended_cayley_table(kind, op, true, &opts.guards)?;
            let n = ext.elements().len();
            opts.guards
                .check_count((n * n * n) as u128, "associativity triples")?;
            let elems = ext.elements().to_vec();
            let _ = table.set(ext);
            let mut out = Vec::with_capacity(n * n * n);
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        out.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            Ok(out)
        },
        |rng| {
            let x = op.left();
            Ok((
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, x, 1, rng)?,
                sample_element(kind, x, 1, rng)?,
            ))
        },
        |(a, b, c)| {
            let lhs = phi(&phi(a, b)?, c)?;
            let rhs = phi(a, &phi(b, c)?)?;
            Ok(compare(&[a, b, c], &lhs, &rhs))
        },
    )
}

/// A morphism of operations `(h_X, h_Y, h_Z) : φ → ψ`.
#[derive(Clone, Debug)]
pub struct OpMorphism {
    pub h_x: FinMap,
    pub h_y: FinMap,
    pub h_z: FinMap,
}

impl OpMorphism {
    /// Checks `ψ(h_X x, h_Y y) = h_Z φ(x, y)` and the carriers involved.
    pub fn validate(&self, phi: &BinOpTable, psi: &BinOpTable) -> Result<()> {
        let fits = FinSet::same(self.h_x.domain(), phi.left())
            && FinSet::same(self.h_y.domain(), phi.right())
            && FinSet::same(self.h_z.domain(), phi.out())
            && FinSet::same(self.h_x.codomain(), psi.left())
            && FinSet::same(self.h_y.codomain(), psi.right())
            && FinSet::same(self.h_z.codomain(), psi.out());
        if !fits {
            return Err(Error::Shape(
                "homomorphism maps do not match the operations".into(),
            ));
        }
        for x in 0..phi.left().len() {
            for y in 0..phi.right().len() {
                let lhs = psi.get(self.h_x.apply(x), self.h_y.apply(y));
                let rhs = self.h_z.apply(phi.get(x, y));
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "premise fails at ({},{}): psi gives {}, h_Z(phi) gives {}",
                        phi.left().atom(x),
                        phi.right().atom(y),
                        psi.out().atom(lhs),
                        psi.out().atom(rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    /// A random morphism into `ψ` together with a random `φ` satisfying the
    /// premise. `h_Z` is surjective so that every fibre can be hit.
    pub fn random_with_source(
        psi: &BinOpTable,
        sizes: (usize, usize, usize),
        rng: &mut dyn RngCore,
    ) -> Result<(BinOpTable, OpMorphism)> {
        let (x, y, z) = (
            FinSet::range(sizes.0),
            FinSet::range(sizes.1),
            FinSet::range(sizes.2),
        );
        if sizes.2 < psi.out().len() {
            return Err(Error::Shape("h_Z cannot be surjective".into()));
        }
        let h_x = random_map(&x, psi.left(), rng);
        let h_y = random_map(&y, psi.right(), rng);
        let mut table: Vec<usize> = (0..psi.out().len()).collect();
        table.extend((psi.out().len()..sizes.2).map(|_| rng.gen_range(0..psi.out().len())));
        // shuffle so the surjection is not always the identity prefix
        for i in (1..table.len()).rev() {
            table.swap(i, rng.gen_range(0..=i));
        }
        let h_z = FinMap::new(z.clone(), psi.out().clone(), table)?;
        let fibres: Vec<Vec<usize>> = (0..psi.out().len())
            .map(|w| (0..z.len()).filter(|&k| h_z.apply(k) == w).collect())
            .collect();
        let mut cells = Vec::with_capacity(x.len() * y.len());
        for i in 0..x.len() {
            for j in 0..y.len() {
                let fibre = &fibres[psi.get(h_x.apply(i), h_y.apply(j))];
                cells.push(fibre[rng.gen_range(0..fibre.len())]);
            }
        }
        let phi = BinOpTable::new(x, y, z, cells)?;
        Ok((phi, OpMorphism { h_x, h_y, h_z }))
    }
}

/// `Ψ(Th_X a, Th_Y b) = Th_Z Φ(a, b)`, after validating the premise.
pub fn check_homomorphism(
    kind: MonadKind,
    phi: &BinOpTable,
    psi: &BinOpTable,
    h: &OpMorphism,
    opts: &CheckOptions,
) -> Result<LawReport> {
    h.validate(phi, psi)?;
    quantify(
        "homomorphism: Psi(ThX a, ThY b) = ThZ Phi(a,b)",
        opts,
        || pair_space(kind, phi, opts),
        |rng| sample_pair(kind, phi, rng),
        |(a, b)| {
            let lhs = extend_direct(psi, &fmap(&h.h_x, a)?, &fmap(&h.h_y, b)?)?;
            let rhs = fmap(&h.h_z, &extend_direct(phi, a, b)?)?;
            Ok(compare(&[a, b], &lhs, &rhs))
        },
    )
}

/// Every `Φ(a, b)` is supported in the subsemigroup generated by the
/// supports of `a` and `b`.
pub fn closure_check(kind: MonadKind, op: &BinOpTable, opts: &CheckOptions) -> Result<LawReport> {
    let guards = &opts.guards;
    quantify(
        "closure: supp Phi(a,b) within <supp a, supp b>",
        opts,
        || pair_space(kind, op, opts),
        |rng| sample_pair(kind, op, rng),
        |(a, b)| {
            let mut seed = zoo::support(a, guards)?;
            seed.extend(zoo::support(b, guards)?);
            let generated = op.generated(&seed)?;
            let value = extend_direct(op, a, b)?;
            let supp = zoo::support(&value, guards)?;
            if supp.iter().all(|s| generated.binary_search(s).is_ok()) {
                return Ok(None);
            }
            let labels: Vec<&str> = generated.iter().map(|&i| op.out().atom(i)).collect();
            Ok(Some(Counterexample {
                inputs: vec![a.render(), b.render()],
                lhs: value.render(),
                rhs: format!("supported in {{{}}}", labels.join(",")),
            }))
        },
    )
}

/// All semigroup endomorphisms of a Cayley table, in lexicographic order.
pub fn endomorphisms(op: &BinOpTable) -> Result<Vec<FinMap>> {
    if !op.is_square() {
        return Err(Error::Shape("endomorphisms need a Cayley table".into()));
    }
    let x = op.left();
    Ok(FinMap::all_maps(x, x)
        .filter(|h| {
            (0..x.len()).all(|i| {
                (0..x.len()).all(|j| op.get(h.apply(i), h.apply(j)) == h.apply(op.get(i, j)))
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::enumerate_binary_ops;
    use crate::report::Status;

    fn z2() -> BinOpTable {
        BinOpTable::cyclic(2)
    }

    #[test]
    fn left_shift_examples() {
        let op = z2();
        let x = op.left().clone();
        let all = exp::subset(&x, &[0, 1]).unwrap();
        let one = exp::subset(&x, &[1]).unwrap();
        assert_eq!(left_shift_ext(&op, 0)(&one).unwrap(), one);
        assert_eq!(left_shift_ext(&op, 1)(&all).unwrap(), all);
        let lz = BinOpTable::left_zero(&FinSet::range(3));
        let d = prob::uniform(lz.right(), &[0, 1, 2]).unwrap();
        assert_eq!(
            left_shift_ext(&lz, 2)(&d).unwrap(),
            unit(MonadKind::Prob, lz.out(), 2)
        );
    }

    #[test]
    fn direct_examples() {
        let op = z2();
        let x = op.left().clone();
        let all = exp::subset(&x, &[0, 1]).unwrap();
        let zero = exp::subset(&x, &[0]).unwrap();
        assert_eq!(extend_direct(&op, &all, &zero).unwrap(), all);
        let u = prob::uniform(&x, &[0, 1]).unwrap();
        let d1 = unit(MonadKind::Prob, &x, 1);
        assert_eq!(extend_direct(&op, &u, &d1).unwrap(), u);
        assert_eq!(extend_via_tensor(&op, &u, &d1).unwrap(), u);
        assert_eq!(oracle_convolution(&op, &u, &u).unwrap(), u);
    }

    #[test]
    fn identity_monad_returns_the_input_table() {
        let op = BinOpTable::cyclic(3);
        let ext = extended_cayley_table(MonadKind::Id, &op, false, &Guards::default()).unwrap();
        assert_eq!(ext.table().cells(), op.cells());
    }

    #[test]
    fn exp_table_over_z2_is_setwise() {
        let op = z2();
        let ext = extended_cayley_table(MonadKind::Exp, &op, false, &Guards::default()).unwrap();
        assert_eq!(ext.elements().len(), 3);
        for a in ext.elements() {
            for b in ext.elements() {
                assert_eq!(ext.apply(a, b).unwrap(), oracle_setwise(&op, a, b).unwrap());
            }
        }
        let idem: Vec<String> = idempotents(&ext).iter().map(|e| e.render()).collect();
        assert_eq!(idem, ["{0}", "{0,1}"]);
    }

    #[test]
    fn lambda_over_left_zero_is_left_zero() {
        let op = BinOpTable::left_zero(&FinSet::range(3));
        let ext = extended_cayley_table(MonadKind::Lambda, &op, false, &Guards::default()).unwrap();
        assert_eq!(ext.elements().len(), 4);
        for (i, a) in ext.elements().iter().enumerate() {
            for b in ext.elements() {
                assert_eq!(ext.table().get(i, ext.index_of(b).unwrap()), i, "{a} {b}");
            }
        }
        let two = BinOpTable::left_zero(&FinSet::range(2));
        let ext =
            extended_cayley_table(MonadKind::Lambda, &two, false, &Guards::default()).unwrap();
        assert_eq!(idempotents(&ext).len(), 2);
    }

    #[test]
    fn lambda_over_z2_is_z2() {
        let ext =
            extended_cayley_table(MonadKind::Lambda, &z2(), false, &Guards::default()).unwrap();
        assert_eq!(ext.table().cells(), &[0, 1, 1, 0]);
    }

    #[test]
    fn identity_idempotents_of_z2() {
        let ext = extended_cayley_table(MonadKind::Id, &z2(), false, &Guards::default()).unwrap();
        let idem: Vec<String> = idempotents(&ext).iter().map(|e| e.render()).collect();
        assert_eq!(idem, ["0"]);
    }

    #[test]
    fn nonassociative_tables_need_permission() {
        let x = FinSet::range(2);
        let op = BinOpTable::cayley(&x, vec![1, 0, 0, 0]).unwrap();
        let g = Guards::default();
        assert!(matches!(
            extended_cayley_table(MonadKind::Exp, &op, false, &g),
            Err(Error::Precondition(_))
        ));
        assert!(extended_cayley_table(MonadKind::Exp, &op, true, &g).is_ok());
        let r =
            check_extension_associativity(MonadKind::Exp, &op, true, &CheckOptions::exhaustive())
                .unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn upfamily_oracle_matches_on_small_ops() {
        let opts = CheckOptions::exhaustive();
        for op in enumerate_binary_ops(2, false).unwrap() {
            for kind in [MonadKind::Lambda, MonadKind::Incl] {
                assert!(check_oracle(kind, &op, &opts).unwrap().passed());
            }
        }
    }

    #[test]
    fn axioms_and_claim_on_z3() {
        let op = BinOpTable::cyclic(3);
        let opts = CheckOptions::exhaustive();
        for kind in [MonadKind::Id, MonadKind::Exp, MonadKind::Lambda] {
            let r = check_extension_axioms(kind, &op, &opts).unwrap();
            assert!(r.passed(), "{kind}: {r:#?}");
            assert!(check_left_shift_claim(kind, &op, &opts).unwrap().passed());
        }
    }

    #[test]
    fn quotient_z4_to_z2() {
        let z4 = BinOpTable::cyclic(4);
        let z2 = z2();
        let m = FinMap::from_fn(z4.left(), z2.left(), |i| i % 2).unwrap();
        let h = OpMorphism {
            h_x: m.clone(),
            h_y: m.clone(),
            h_z: m,
        };
        let r =
            check_homomorphism(MonadKind::Exp, &z4, &z2, &h, &CheckOptions::exhaustive()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 15 * 15);
    }

    #[test]
    fn broken_premise_names_the_pair() {
        let z3 = BinOpTable::cyclic(3);
        let z2 = z2();
        let m = FinMap::from_fn(z3.left(), z2.left(), |i| i % 2).unwrap();
        let h = OpMorphism {
            h_x: m.clone(),
            h_y: m.clone(),
            h_z: m,
        };
        let err = check_homomorphism(MonadKind::Exp, &z3, &z2, &h, &CheckOptions::exhaustive())
            .unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("(1,2)"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_premise_triples_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let psi = BinOpTable::cyclic(2);
        for _ in 0..20 {
            let (phi, h) = OpMorphism::random_with_source(&psi, (3, 2, 3), &mut rng).unwrap();
            h.validate(&phi, &psi).unwrap();
        }
    }

    #[test]
    fn closure_is_computed() {
        let op = BinOpTable::cyclic(3);
        for kind in [MonadKind::Id, MonadKind::Exp, MonadKind::Lambda] {
            assert!(closure_check(kind, &op, &CheckOptions::exhaustive())
                .unwrap()
                .passed());
        }
        assert!(
            closure_check(MonadKind::Prob, &op, &CheckOptions::sampled(1, 100))
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn endomorphisms_of_z2() {
        // identity and the constant at 0
        let e = endomorphisms(&z2()).unwrap();
        let tables: Vec<&[usize]> = e.iter().map(|h| h.table()).collect();
        assert_eq!(tables, [&[0, 0][..], &[0, 1][..]]);
    }
}

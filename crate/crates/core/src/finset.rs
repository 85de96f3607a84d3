//! Finite carriers, total maps between them and binary-operation tables.
//!
//! A [`FinSet`] is an ordered list of distinct atom labels. Element indices
//! are positions in that list and are stable for the lifetime of the set, so
//! everything downstream (maps, tables, monad payloads) works with indices.
//!
//! Products use the pairing `(i, j) ↦ i·|Y| + j` and render their atoms as
//! `"(l,r)"`. Triple products are always built left-nested as
//! `((x,y),z)`; [`reassociate`] is the fixed bijection from the right-nested
//! form `(x,(y,z))` onto it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monad::TElement;

/// Characters that carry structure in rendered atoms and therefore may not
/// appear in user-supplied labels.
pub const RESERVED: &[char] = &['(', ')', ',', '{', '}', '[', ']', ':'];

/// How a carrier came about. Structured carriers keep enough information to
/// decode their atoms without parsing.
#[derive(Clone)]
pub enum Origin {
    Plain,
    Product(Arc<FinSet>, Arc<FinSet>),
    /// Atoms are the renderings of these monad elements, all over one base.
    Elements(Vec<TElement>),
}

#[derive(Clone)]
pub struct FinSet {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
    origin: Origin,
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms.iter()).finish()
    }
}

impl FinSet {
    /// Builds a user carrier. Labels must be distinct, non-empty and free of
    /// [`RESERVED`] characters.
    pub fn new<I, S>(labels: I) -> Result<Arc<FinSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (pos, label) in atoms.iter().enumerate() {
            if label.is_empty() || label.trim() != label {
                return Err(Error::InvalidSet(format!(
                    "label #{pos} {label:?} is empty or padded with whitespace"
                )));
            }
            if let Some(c) = label.chars().find(|c| RESERVED.contains(c)) {
                return Err(Error::InvalidSet(format!(
                    "label {label:?} contains reserved character {c:?}"
                )));
            }
        }
        Self::build(atoms, Origin::Plain)
    }

    /// A carrier on verbatim labels, checking only that they are distinct.
    /// Used for re-reading tables whose atoms are rendered elements.
    pub fn opaque<I, S>(labels: I) -> Result<Arc<FinSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::build(labels.into_iter().map(Into::into).collect(), Origin::Plain)
    }

    /// The canonical generated carrier `{0, 1, …, n-1}`.
    pub fn range(n: usize) -> Arc<FinSet> {
        Self::build((0..n).map(|i| i.to_string()).collect(), Origin::Plain)
            .expect("numeric labels are distinct")
    }

    /// A carrier whose atoms are the given monad elements. All elements must
    /// share kind and base and be pairwise distinct.
    pub fn of_elements(elems: Vec<TElement>) -> Result<Arc<FinSet>> {
        if let Some(first) = elems.first() {
            for e in &elems[1..] {
                if e.kind() != first.kind() || !FinSet::same(e.base(), first.base()) {
                    return Err(Error::Shape(
                        "carrier elements live over different bases or monads".into(),
                    ));
                }
            }
        }
        let atoms = elems.iter().map(TElement::render).collect();
        Self::build(atoms, Origin::Elements(elems))
    }

    fn build(atoms: Vec<String>, origin: Origin) -> Result<Arc<FinSet>> {
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(Error::InvalidSet(format!("duplicate atom {a:?}")));
            }
        }
        Ok(Arc::new(FinSet {
            atoms,
            index,
            origin,
        }))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, i: usize) -> &str {
        &self.atoms[i]
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The sub-carrier on the given indices, keeping their order and labels.
    pub fn restrict(&self, indices: &[usize]) -> Arc<FinSet> {
        let atoms = indices.iter().map(|&i| self.atoms[i].clone()).collect();
        Self::build(atoms, Origin::Plain).expect("sub-carrier of distinct atoms")
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The decoded elements when this carrier is a set of monad elements.
    pub fn elements(&self) -> Option<&[TElement]> {
        match &self.origin {
            Origin::Elements(e) => Some(e),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&Arc<FinSet>, &Arc<FinSet>)> {
        match &self.origin {
            Origin::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Index of the pair `(i, j)` in a product carrier.
    pub fn pair(&self, i: usize, j: usize) -> usize {
        let (_, r) = self.factors().expect("pair() on a non-product carrier");
        i * r.len() + j
    }

    pub fn unpair(&self, k: usize) -> (usize, usize) {
        let (_, r) = self.factors().expect("unpair() on a non-product carrier");
        (k / r.len(), k % r.len())
    }

    /// Identity of carriers: pointer equality, falling back to equal atom
    /// lists.
    pub fn same(a: &Arc<FinSet>, b: &Arc<FinSet>) -> bool {
        Arc::ptr_eq(a, b) || a.atoms == b.atoms
    }
}

/// The Cartesian product `x × y` in row-major order.
pub fn product(x: &Arc<FinSet>, y: &Arc<FinSet>) -> Arc<FinSet> {
    let mut atoms = Vec::with_capacity(x.len() * y.len());
    for l in x.atoms() {
        for r in y.atoms() {
            atoms.push(format!("({l},{r})"));
        }
    }
    FinSet::build(atoms, Origin::Product(x.clone(), y.clone()))
        .expect("pairs of distinct atoms are distinct")
}

/// A total function between two carriers.
#[derive(Clone, Debug)]
pub struct FinMap {
    domain: Arc<FinSet>,
    codomain: Arc<FinSet>,
    table: Vec<usize>,
}

impl PartialEq for FinMap {
    fn eq(&self, other: &Self) -> bool {
        FinSet::same(&self.domain, &other.domain)
            && FinSet::same(&self.codomain, &other.codomain)
            && self.table == other.table
    }
}

impl FinMap {
    pub fn new(domain: Arc<FinSet>, codomain: Arc<FinSet>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::Shape(format!(
                "map table has {} entries for a domain of {}",
                table.len(),
                domain.len()
            )));
        }
        if let Some((i, &j)) = table.iter().enumerate().find(|(_, &j)| j >= codomain.len()) {
            return Err(Error::Shape(format!(
                "map sends {} to index {j}, codomain has {}",
                domain.atom(i),
                codomain.len()
            )));
        }
        Ok(FinMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn from_fn(
        domain: &Arc<FinSet>,
        codomain: &Arc<FinSet>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        Self::new(
            domain.clone(),
            codomain.clone(),
            (0..domain.len()).map(f).collect(),
        )
    }

    pub fn identity(x: &Arc<FinSet>) -> Self {
        FinMap {
            domain: x.clone(),
            codomain: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    pub fn constant(domain: &Arc<FinSet>, codomain: &Arc<FinSet>, value: usize) -> Result<Self> {
        Self::from_fn(domain, codomain, |_| value)
    }

    pub fn domain(&self) -> &Arc<FinSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinSet> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinMap) -> Result<FinMap> {
        compose(self, f)
    }

    /// Every map `domain → codomain`, odometer order with the first domain
    /// element varying slowest.
    pub fn all_maps(
        domain: &Arc<FinSet>,
        codomain: &Arc<FinSet>,
    ) -> impl Iterator<Item = FinMap> + 'static {
        let (d, c) = (domain.clone(), codomain.clone());
        let total = if d.is_empty() {
            1
        } else if c.is_empty() {
            0
        } else {
            c.len().pow(d.len() as u32)
        };
        (0..total).map(move |mut code| {
            let mut table = vec![0; d.len()];
            for slot in table.iter_mut().rev() {
                *slot = code % c.len();
                code /= c.len();
            }
            FinMap {
                domain: d.clone(),
                codomain: c.clone(),
                table,
            }
        })
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if !FinSet::same(&f.codomain, &g.domain) {
        return Err(Error::Composition(format!(
            "codomain {:?} does not match domain {:?}",
            f.codomain, g.domain
        )));
    }
    Ok(FinMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        table: f.table.iter().map(|&j| g.table[j]).collect(),
    })
}

/// `f × g : X×Y → X'×Y'`.
pub fn product_map(f: &FinMap, g: &FinMap) -> FinMap {
    let dom = product(&f.domain, &g.domain);
    let cod = product(&f.codomain, &g.codomain);
    let table = (0..dom.len())
        .map(|k| {
            let (i, j) = dom.unpair(k);
            cod.pair(f.apply(i), g.apply(j))
        })
        .collect();
    FinMap {
        domain: dom,
        codomain: cod,
        table,
    }
}

/// The slice `i_x : Y → X×Y, y ↦ (x, y)` into an existing product carrier.
pub fn slice_at(xy: &Arc<FinSet>, x: usize) -> FinMap {
    let (_, y) = xy.factors().expect("slice_at() needs a product carrier");
    FinMap {
        domain: y.clone(),
        codomain: xy.clone(),
        table: (0..y.len()).map(|j| xy.pair(x, j)).collect(),
    }
}

/// The flattening bijection `x_yz → xy_z` sending `(x,(y,z))` to `((x,y),z)`.
/// Both arguments must be products of the shapes `X×(Y×Z)` and `(X×Y)×Z`.
pub fn reassociate(x_yz: &Arc<FinSet>, xy_z: &Arc<FinSet>) -> Result<FinMap> {
    let shape_err = || Error::Shape("reassociate needs X×(Y×Z) and (X×Y)×Z".into());
    let (x, yz) = x_yz.factors().ok_or_else(shape_err)?;
    let (xy, z) = xy_z.factors().ok_or_else(shape_err)?;
    let (y, z2) = yz.factors().ok_or_else(shape_err)?;
    let (x2, y2) = xy.factors().ok_or_else(shape_err)?;
    if !(FinSet::same(x, x2) && FinSet::same(y, y2) && FinSet::same(z, z2)) {
        return Err(shape_err());
    }
    FinMap::from_fn(x_yz, xy_z, |k| {
        let (i, jk) = x_yz.unpair(k);
        let (j, l) = yz.unpair(jk);
        xy_z.pair(xy.pair(i, j), l)
    })
}

/// A binary operation `φ : X×Y → Z` stored as a row-major table.
#[derive(Clone, Debug)]
pub struct BinOpTable {
    left: Arc<FinSet>,
    right: Arc<FinSet>,
    out: Arc<FinSet>,
    table: Vec<usize>,
}

impl PartialEq for BinOpTable {
    fn eq(&self, other: &Self) -> bool {
        FinSet::same(&self.left, &other.left)
            && FinSet::same(&self.right, &other.right)
            && FinSet::same(&self.out, &other.out)
            && self.table == other.table
    }
}

impl BinOpTable {
    pub fn new(
        left: Arc<FinSet>,
        right: Arc<FinSet>,
        out: Arc<FinSet>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != left.len() * right.len() {
            return Err(Error::Shape(format!(
                "table has {} cells, expected {}×{}",
                table.len(),
                left.len(),
                right.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&z| z >= out.len()) {
            return Err(Error::Shape(format!(
                "cell value {bad} out of range for an output carrier of {}",
                out.len()
            )));
        }
        Ok(BinOpTable {
            left,
            right,
            out,
            table,
        })
    }

    /// A Cayley table on a single carrier.
    pub fn cayley(x: &Arc<FinSet>, table: Vec<usize>) -> Result<Self> {
        Self::new(x.clone(), x.clone(), x.clone(), table)
    }

    pub fn from_fn(
        left: &Arc<FinSet>,
        right: &Arc<FinSet>,
        out: &Arc<FinSet>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(left.len() * right.len());
        for i in 0..left.len() {
            for j in 0..right.len() {
                table.push(f(i, j));
            }
        }
        Self::new(left.clone(), right.clone(), out.clone(), table)
    }

    /// Addition modulo `n` on the generated carrier `{0..n-1}`.
    pub fn cyclic(n: usize) -> Self {
        let x = FinSet::range(n);
        Self::from_fn(&x, &x, &x, |a, b| (a + b) % n).expect("valid cyclic table")
    }

    /// `φ(x, y) = x` on the given carrier.
    pub fn left_zero(x: &Arc<FinSet>) -> Self {
        Self::from_fn(x, x, x, |a, _| a).expect("valid left-zero table")
    }

    pub fn left(&self) -> &Arc<FinSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinSet> {
        &self.right
    }

    pub fn out(&self) -> &Arc<FinSet> {
        &self.out
    }

    pub fn cells(&self) -> &[usize] {
        &self.table
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.right.len() + y]
    }

    pub fn is_square(&self) -> bool {
        FinSet::same(&self.left, &self.right) && FinSet::same(&self.left, &self.out)
    }

    /// `φ_x : Y → Z`.
    pub fn left_shift(&self, x: usize) -> FinMap {
        FinMap {
            domain: self.right.clone(),
            codomain: self.out.clone(),
            table: self.table[x * self.right.len()..(x + 1) * self.right.len()].to_vec(),
        }
    }

    /// `φ^y : X → Z`.
    pub fn right_shift(&self, y: usize) -> FinMap {
        FinMap {
            domain: self.left.clone(),
            codomain: self.out.clone(),
            table: (0..self.left.len()).map(|x| self.get(x, y)).collect(),
        }
    }

    /// `φ` as a map out of the product carrier `X×Y`.
    pub fn as_map(&self) -> FinMap {
        FinMap {
            domain: product(&self.left, &self.right),
            codomain: self.out.clone(),
            table: self.table.clone(),
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(
                "associativity needs left, right and output carriers to coincide".into(),
            ))
        }
    }

    /// The lexicographically first triple violating associativity, if any.
    pub fn associativity_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        self.require_square()?;
        let n = self.left.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_associative(&self) -> Result<bool> {
        Ok(self.associativity_witness()?.is_none())
    }

    /// The subsemigroup generated by `seed` (sorted indices).
    pub fn generated(&self, seed: &[usize]) -> Result<Vec<usize>> {
        self.require_square()?;
        let mut member = vec![false; self.left.len()];
        let mut members: Vec<usize> = Vec::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                members.push(s);
            }
        }
        let mut grew = true;
        while grew {
            grew = false;
            let snapshot = members.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let c = self.get(a, b);
                    if !member[c] {
                        member[c] = true;
                        members.push(c);
                        grew = true;
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }
}

/// Largest carrier accepted by [`enumerate_binary_ops`].
pub const MAX_ENUMERATION_SIZE: usize = 4;

/// All binary operations on the generated carrier `{0..n-1}`, in lexicographic
/// order of their row-major tables. With `associative_only` the tables are
/// produced by a pruned search rather than by filtering all `n^(n²)` tables.
pub fn enumerate_binary_ops(
    n: usize,
    associative_only: bool,
) -> Result<Box<dyn Iterator<Item = BinOpTable>>> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::Resource(format!(
            "refusing to enumerate operations on {n} elements (limit {MAX_ENUMERATION_SIZE})"
        )));
    }
    let x = FinSet::range(n);
    if associative_only {
        let mut found = Vec::new();
        let mut cells = vec![None; n * n];
        search_associative(n, 0, &mut cells, &mut found);
        Ok(Box::new(found.into_iter().map(move |t| {
            BinOpTable::cayley(&x, t).expect("search yields valid tables")
        })))
    } else {
        let cells = n * n;
        let total: u64 = if n == 0 {
            1
        } else {
            (n as u64).pow(cells as u32)
        };
        Ok(Box::new((0..total).map(move |mut code| {
            let mut t = vec![0; cells];
            for slot in t.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            BinOpTable::cayley(&x, t).expect("odometer yields valid tables")
        })))
    }
}

fn search_associative(
    n: usize,
    pos: usize,
    cells: &mut [Option<usize>],
    found: &mut Vec<Vec<usize>>,
) {
    if pos == cells.len() {
        found.push(cells.iter().map(|c| c.expect("complete")).collect());
        return;
    }
    for v in 0..n {
        cells[pos] = Some(v);
        if partial_associative(n, cells) {
            search_associative(n, pos + 1, cells, found);
        }
    }
    cells[pos] = None;
}

fn partial_associative(n: usize, cells: &[Option<usize>]) -> bool {
    let at = |a: usize, b: usize| cells[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = at(a, b) else { continue };
            for c in 0..n {
                let (Some(l), Some(bc)) = (at(ab, c), at(b, c)) else {
                    continue;
                };
                if let Some(r) = at(a, bc) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> FinMap {
        let x = FinSet::range(2);
        FinMap::new(x.clone(), x, vec![1, 0]).unwrap()
    }

    #[test]
    fn product_atoms_are_row_major_pairs() {
        let ab = FinSet::new(["a", "b"]).unwrap();
        let c = FinSet::new(["c"]).unwrap();
        assert_eq!(product(&ab, &c).atoms(), ["(a,c)", "(b,c)"]);
        let a = FinSet::new(["a"]).unwrap();
        assert_eq!(product(&a, &a).atoms(), ["(a,a)"]);
        assert_eq!(product(&FinSet::range(3), &FinSet::range(2)).len(), 6);
    }

    #[test]
    fn pairing_round_trips() {
        let p = product(&FinSet::range(3), &FinSet::range(4));
        for k in 0..p.len() {
            let (i, j) = p.unpair(k);
            assert_eq!(p.pair(i, j), k);
            assert_eq!(p.atom(k), format!("({i},{j})"));
        }
    }

    #[test]
    fn labels_are_validated() {
        assert!(FinSet::new(["a", "a"]).is_err());
        assert!(FinSet::new(["a,b"]).is_err());
        assert!(FinSet::new(["(a"]).is_err());
        assert!(FinSet::new([""]).is_err());
        assert!(FinSet::new(["x", "y"]).is_ok());
    }

    #[test]
    fn composition_identities_and_involution() {
        let s = swap();
        let id = FinMap::identity(s.domain());
        assert_eq!(compose(&s, &id).unwrap(), s);
        assert_eq!(compose(&id, &s).unwrap(), s);
        assert_eq!(compose(&s, &s).unwrap(), id);
    }

    #[test]
    fn composition_rejects_mismatch() {
        let f = FinMap::identity(&FinSet::range(2));
        let g = FinMap::identity(&FinSet::range(3));
        assert!(matches!(compose(&g, &f), Err(Error::Composition(_))));
    }

    #[test]
    fn map_validation() {
        let x = FinSet::range(2);
        assert!(FinMap::new(x.clone(), x.clone(), vec![0]).is_err());
        assert!(FinMap::new(x.clone(), x, vec![0, 2]).is_err());
    }

    #[test]
    fn associativity_of_small_tables() {
        assert!(BinOpTable::cyclic(2).is_associative().unwrap());
        let ab = FinSet::new(["a", "b"]).unwrap();
        assert!(BinOpTable::left_zero(&ab).is_associative().unwrap());
        // φ(a,a)=b, otherwise a: (a·a)·b = b·b = a but a·(a·b) = a·a = b.
        let t = BinOpTable::cayley(&ab, vec![1, 0, 0, 0]).unwrap();
        assert_eq!(t.associativity_witness().unwrap(), Some((0, 0, 1)));
    }

    #[test]
    fn associativity_requires_square_table() {
        let t = BinOpTable::from_fn(
            &FinSet::range(2),
            &FinSet::range(3),
            &FinSet::range(2),
            |a, _| a,
        )
        .unwrap();
        assert!(matches!(t.is_associative(), Err(Error::Shape(_))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_binary_ops(1, false).unwrap().count(), 1);
        assert_eq!(enumerate_binary_ops(2, false).unwrap().count(), 16);
        assert_eq!(enumerate_binary_ops(2, true).unwrap().count(), 8);
        assert!(matches!(
            enumerate_binary_ops(5, true),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn pruned_search_matches_filtering() {
        let filtered: Vec<_> = enumerate_binary_ops(3, false)
            .unwrap()
            .filter(|t| t.is_associative().unwrap())
            .collect();
        let searched: Vec<_> = enumerate_binary_ops(3, true).unwrap().collect();
        assert_eq!(filtered.len(), 113);
        assert_eq!(filtered, searched);
    }

    #[test]
    fn shifts_and_generated_subsemigroup() {
        let z4 = BinOpTable::cyclic(4);
        assert_eq!(z4.left_shift(1).table(), [1, 2, 3, 0]);
        assert_eq!(z4.right_shift(3).table(), [3, 0, 1, 2]);
        assert_eq!(z4.generated(&[2]).unwrap(), vec![0, 2]);
        assert_eq!(z4.generated(&[1]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn reassociation_is_a_bijection() {
        let (x, y, z) = (FinSet::range(2), FinSet::range(3), FinSet::range(2));
        let x_yz = product(&x, &product(&y, &z));
        let xy_z = product(&product(&x, &y), &z);
        let r = reassociate(&x_yz, &xy_z).unwrap();
        let mut seen = r.table().to_vec();
        seen.sort_unstable();
        assert_eq!(seen, (0..12).collect::<Vec<_>>());
        let k = x_yz.index_of("(1,(2,0))").unwrap();
        assert_eq!(xy_z.atom(r.apply(k)), "((1,2),0)");
    }
}

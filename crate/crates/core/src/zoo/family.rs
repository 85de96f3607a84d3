//! Bitmask subsets and upward-closed families stored by their minimal members.

use std::cmp::Ordering;

/// A subset of a carrier with at most 64 atoms.
pub type Mask = u64;

/// Widest carrier whose subsets fit in a [`Mask`].
pub const MASK_BITS: usize = 64;

pub fn full(n: usize) -> Mask {
    if n >= MASK_BITS {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn singleton(i: usize) -> Mask {
    1 << i
}

pub fn from_indices(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | singleton(i))
}

pub fn indices(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Canonical subset order: by size, then lexicographically on sorted index
/// lists.
pub fn subset_cmp(a: Mask, b: Mask) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let diff = a ^ b;
        if diff == 0 {
            Ordering::Equal
        } else if a & (diff & diff.wrapping_neg()) != 0 {
            // a holds the lowest differing index
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

pub fn family_cmp(a: &[Mask], b: &[Mask]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match subset_cmp(*x, *y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub fn image(mask: Mask, f: &dyn Fn(usize) -> usize) -> Mask {
    indices(mask).fold(0, |m, i| m | singleton(f(i)))
}

/// Reduces a list of generators to the canonical antichain of minimal
/// members.
pub fn minimalize(mut members: Vec<Mask>) -> Vec<Mask> {
    members.sort_by(|a, b| subset_cmp(*a, *b));
    members.dedup();
    let mut out: Vec<Mask> = Vec::with_capacity(members.len());
    // sorted by size, so any proper subset of m precedes it
    for m in members {
        if !out.iter().any(|&k| k & !m == 0) {
            out.push(m);
        }
    }
    out
}

/// Whether `set` lies in the upward closure of the antichain.
pub fn contains(antichain: &[Mask], set: Mask) -> bool {
    antichain.iter().any(|&m| m & !set == 0)
}

pub fn is_antichain(members: &[Mask]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members
            .iter()
            .enumerate()
            .all(|(j, &b)| i == j || (a & b != a && a != b))
    })
}

pub fn is_linked(antichain: &[Mask]) -> bool {
    antichain
        .iter()
        .all(|&a| antichain.iter().all(|&b| a & b != 0))
}

/// The minimal sets meeting every member (minimal transversals), by adding
/// one member at a time.
pub fn blocker(antichain: &[Mask]) -> Vec<Mask> {
    let mut partial: Vec<Mask> = vec![0];
    for &m in antichain {
        let mut next = Vec::with_capacity(partial.len());
        for &t in &partial {
            if t & m != 0 {
                next.push(t);
            } else {
                next.extend(indices(m).map(|i| t | singleton(i)));
            }
        }
        partial = minimalize(next);
    }
    partial
}

/// A linked upward family is maximal exactly when it is its own blocker.
pub fn is_maximal_linked(antichain: &[Mask]) -> bool {
    if !is_linked(antichain) {
        return false;
    }
    let mut own = antichain.to_vec();
    own.sort_by(|a, b| subset_cmp(*a, *b));
    blocker(antichain) == own
}

/// Intersection of two upward families.
pub fn meet(a: &[Mask], b: &[Mask]) -> Vec<Mask> {
    let mut gens = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            gens.push(x | y);
        }
    }
    minimalize(gens)
}

/// Union of two upward families.
pub fn join(a: &[Mask], b: &[Mask]) -> Vec<Mask> {
    minimalize(a.iter().chain(b).copied().collect())
}

/// Every non-empty antichain of non-empty subsets of an `n`-set, each in
/// canonical form, sorted canonically. Brute force over families of subsets,
/// so `n` must be at most 4.
pub fn all_antichains(n: usize) -> Vec<Vec<Mask>> {
    assert!(
        n <= 4,
        "antichain enumeration is brute force; n = {n} is too large"
    );
    let subsets: Vec<Mask> = (1..=full(n)).collect();
    let mut out = Vec::new();
    for code in 1u64..(1u64 << subsets.len()) {
        let members: Vec<Mask> = indices(code).map(|i| subsets[i]).collect();
        if is_antichain(&members) {
            out.push(minimalize(members));
        }
    }
    out.sort_by(|a, b| family_cmp(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_order() {
        let mut v = vec![0b110, 0b1, 0b101, 0b10, 0b11];
        v.sort_by(|a, b| subset_cmp(*a, *b));
        assert_eq!(v, vec![0b1, 0b10, 0b11, 0b101, 0b110]);
    }

    #[test]
    fn minimalize_drops_supersets() {
        assert_eq!(minimalize(vec![0b111, 0b011, 0b001, 0b001]), vec![0b001]);
        assert_eq!(minimalize(vec![0b110, 0b011]), vec![0b011, 0b110]);
    }

    #[test]
    fn antichain_counts_match_dedekind_minus_two() {
        // Dedekind numbers 3, 6, 20, 168 minus the empty family and {∅}.
        let counts: Vec<usize> = (1..=4).map(|n| all_antichains(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 18, 166]);
    }

    /// Straight from the definition: every subset meeting all members is in
    /// the family.
    fn maximal_by_scan(f: &[Mask], n: usize) -> bool {
        is_linked(f) && (1..=full(n)).all(|s| !f.iter().all(|&m| m & s != 0) || contains(f, s))
    }

    #[test]
    fn maximal_linked_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| {
                all_antichains(n)
                    .into_iter()
                    .filter(|f| is_maximal_linked(f))
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 12]);
    }

    #[test]
    fn blocker_test_agrees_with_scan() {
        for n in 1..=4 {
            for f in all_antichains(n) {
                assert_eq!(is_maximal_linked(&f), maximal_by_scan(&f, n), "{f:?}");
            }
        }
        // the Fano plane's lines form a maximal linked system on 7 points
        let lines: Vec<Mask> = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ]
        .iter()
        .map(|l| from_indices(l))
        .collect();
        let lines = minimalize(lines);
        assert!(is_maximal_linked(&lines));
        assert!(maximal_by_scan(&lines, 7));
        assert!(!is_maximal_linked(&lines[1..]));
    }

    #[test]
    fn meet_and_join() {
        // ↑{0} ∩ ↑{1} = ↑{0,1}; ↑{0} ∪ ↑{1} has minimal members {0},{1}.
        assert_eq!(meet(&[0b01], &[0b10]), vec![0b11]);
        assert_eq!(join(&[0b01], &[0b10]), vec![0b01, 0b10]);
    }
}

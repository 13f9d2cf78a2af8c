//! Fixed-width bitsets over a carrier of at most 64 points.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Largest carrier any finite structure in this crate may have.
pub const MAX_CARRIER: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask.
///
/// `Ord` is the global subset order used for every deterministic choice in the
/// crate: first by cardinality, then lexicographically by the ascending list of
/// member indexes. Use [`Subset::bits`] when a numeric key is wanted instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_CARRIER);
        Subset(1u64 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn inter(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to a carrier of `n` points.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).minus(self)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Self) -> bool {
        self != other && self.is_subset(other)
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Re-index the members of `self ∩ mask` by their rank inside `mask`.
    pub fn compress(self, mask: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (rank, i) in mask.iter().enumerate() {
            if self.contains(i) {
                out.insert(rank);
            }
        }
        out
    }

    /// Inverse of [`Subset::compress`]: rank `r` maps to the `r`-th member of `mask`.
    pub fn expand(self, mask: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (rank, i) in mask.iter().enumerate() {
            if self.contains(rank) {
                out.insert(i);
            }
        }
        out
    }

    /// Render with the given point labels, e.g. `{a,b}`.
    pub fn display_with<S: AsRef<str>>(self, labels: &[S]) -> String {
        format!("{{{}}}", self.iter().map(|i| labels[i].as_ref()).join(","))
    }

    pub fn labels<S: AsRef<str>>(self, labels: &[S]) -> Vec<String> {
        self.iter().map(|i| labels[i].as_ref().to_string()).collect()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The lowest differing index decides the lexicographic comparison of
        // the sorted member lists: whoever owns it is smaller.
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// Every subset of `{0, .., n-1}`, by cardinality and then lexicographically.
pub fn subsets_by_cardinality(n: usize) -> impl Iterator<Item = Subset> {
    (0..=n).flat_map(move |k| (0..n).combinations(k).map(Subset::from_iter))
}

/// Sort into the global subset order and drop duplicates.
pub fn canonicalize(family: &mut Vec<Subset>) {
    family.sort_unstable();
    family.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumeration_order_is_cardinality_then_lex() {
        let all: Vec<_> = subsets_by_cardinality(3).collect();
        let expect: Vec<Subset> =
            [vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
                .into_iter()
                .map(Subset::from_iter)
                .collect();
        assert_eq!(all, expect);
        let mut sorted = all.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, expect);
    }

    #[test]
    fn compress_expand() {
        let mask = Subset::from_iter([1, 3, 4]);
        let s = Subset::from_iter([0, 3, 4]);
        assert_eq!(s.compress(mask), Subset::from_iter([1, 2]));
        assert_eq!(Subset::from_iter([1, 2]).expand(mask), Subset::from_iter([3, 4]));
    }

    proptest! {
        #[test]
        fn order_matches_sorted_index_lists(a in 0u64..1 << 10, b in 0u64..1 << 10) {
            let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
            let key = |s: Subset| (s.len(), s.iter().collect::<Vec<_>>());
            prop_assert_eq!(x.cmp(&y), key(x).cmp(&key(y)));
        }

        #[test]
        fn compress_roundtrip(a in any::<u64>(), m in any::<u64>()) {
            let (s, mask) = (Subset::from_bits(a), Subset::from_bits(m));
            prop_assert_eq!(s.compress(mask).expand(mask), s.inter(mask));
        }
    }
}

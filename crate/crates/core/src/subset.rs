//! Subsets of a small ground set `[0, n)` stored as 64-bit masks.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest ground set a [`SubsetMask`] can index.
pub const MAX_GROUND: usize = 64;

/// A subset of the ground set `{0, .., n-1}` with `n <= 64`.
///
/// Equality is extensional: two masks are equal iff they contain the same
/// elements. The ground-set size is carried by the owning structure, not by
/// the mask itself.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full set `[0, n)`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set of size {n} exceeds {MAX_GROUND}");
        if n == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |m, i| m.with(i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1u64 << i))
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `[0, n)`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest index plus one, i.e. the smallest `n` with `self ⊆ [0, n)`.
    #[inline]
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> Ones {
        Ones(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Re-index through a dense relabeling: element `i` of `self` goes to
    /// `map[i]`, which must be `Some` for every member.
    pub fn relabel(self, map: &[Option<usize>]) -> Self {
        self.iter()
            .map(|i| map[i].expect("element outside relabeled ground set"))
            .fold(Self::EMPTY, |m, j| m.with(j))
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> Submasks {
        Submasks { full: self.0, next: Some(0) }
    }

    /// All subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = SubsetMask> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

/// Iterator over set bits.
#[derive(Clone)]
pub struct Ones(u64);

impl Iterator for Ones {
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
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Ones {}

/// Iterator over all submasks of a mask, in increasing numeric order.
pub struct Submasks {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !self.full).wrapping_add(1)) & self.full)
        };
        Some(SubsetMask(cur))
    }
}

/// All subsets of `[0, n)` in binary reflected Gray-code order, skipping `∅`.
pub fn gray_code_nonempty(n: usize) -> impl Iterator<Item = SubsetMask> {
    assert!(n < 64);
    (1u64..(1u64 << n)).map(|i| SubsetMask(i ^ (i >> 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = SubsetMask::from_indices([0, 2, 5]);
        let b = SubsetMask::from_indices([2, 3]);
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert!(SubsetMask::from_indices([2]).is_subset(a));
        assert_eq!(a.complement(6).to_vec(), vec![1, 3, 4]);
        assert_eq!(a.bound(), 6);
        assert_eq!(format!("{a}"), "{0,2,5}");
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let m = SubsetMask::from_indices([1, 3, 4]);
        let subs: Vec<_> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(m)));
        assert_eq!(m.subsets_of_size(2).count(), 3);
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn gray_code_visits_each_nonempty_subset_once() {
        let mut seen: Vec<u64> = gray_code_nonempty(5).map(|s| s.0).collect();
        seen.sort_unstable();
        assert_eq!(seen, (1..32).collect::<Vec<_>>());
    }
}

//! Dense color identifiers and fixed-width color sets.
//!
//! Every pot is remapped to `0..p` on ingestion, so a list fits in one `u64`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A dense color index into the pot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u32);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Set of colors drawn from `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const CAPACITY: usize = 64;
    pub const EMPTY: ColorSet = ColorSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        if n == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(c: ColorId) -> Self {
        ColorSet(1u64 << c.0)
    }

    pub fn contains(self, c: ColorId) -> bool {
        c.0 < 64 && self.0 & (1u64 << c.0) != 0
    }

    pub fn insert(&mut self, c: ColorId) {
        self.0 |= 1u64 << c.0;
    }

    pub fn remove(&mut self, c: ColorId) {
        self.0 &= !(1u64 << c.0);
    }

    pub fn with(self, c: ColorId) -> Self {
        ColorSet(self.0 | (1u64 << c.0))
    }

    pub fn without(self, c: ColorId) -> Self {
        ColorSet(self.0 & !(1u64 << c.0))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<ColorId> {
        (self.0 != 0).then(|| ColorId(self.0.trailing_zeros()))
    }

    pub fn max(self) -> Option<ColorId> {
        (self.0 != 0).then(|| ColorId(63 - self.0.leading_zeros()))
    }

    /// Ascending iteration.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<ColorId> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending element sequences.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    o => return o,
                },
            }
        }
    }

    /// All `k`-element subsets, in lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> Vec<ColorSet> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        if k > elems.len() {
            return out;
        }
        let n = elems.len();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| elems[i]).collect());
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

impl FromIterator<ColorId> for ColorSet {
    fn from_iter<I: IntoIterator<Item = ColorId>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl IntoIterator for ColorSet {
    type Item = ColorId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = ColorId;

    fn next(&mut self) -> Option<ColorId> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(ColorId(c))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Shorthand for building a set from raw indices.
pub fn colors(ids: &[u32]) -> ColorSet {
    ids.iter().map(|&c| ColorId(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        let s = colors(&[0, 2, 5, 7]);
        let subs: Vec<Vec<u32>> = s
            .subsets_of_size(2)
            .into_iter()
            .map(|x| x.iter().map(|c| c.0).collect())
            .collect();
        assert_eq!(
            subs,
            vec![vec![0, 2], vec![0, 5], vec![0, 7], vec![2, 5], vec![2, 7], vec![5, 7]]
        );
        assert_eq!(s.subsets_of_size(0), vec![ColorSet::EMPTY]);
        assert_eq!(s.subsets_of_size(4), vec![s]);
        assert!(s.subsets_of_size(5).is_empty());
    }

    #[test]
    fn lex_cmp_matches_vec_order() {
        let a = colors(&[0, 3]);
        let b = colors(&[0, 1, 9]);
        assert_eq!(a.lex_cmp(b), Ordering::Greater);
        assert_eq!(b.lex_cmp(a), Ordering::Less);
        assert_eq!(colors(&[1, 2]).lex_cmp(colors(&[1, 2, 3])), Ordering::Less);
    }

    #[test]
    fn min_max_and_range() {
        assert_eq!(colors(&[4, 9, 63]).max(), Some(ColorId(63)));
        assert_eq!(colors(&[4, 9, 63]).min(), Some(ColorId(4)));
        assert_eq!(ColorSet::range(64).len(), 64);
        assert_eq!(ColorSet::range(3), colors(&[0, 1, 2]));
    }
}

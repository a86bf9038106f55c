//! Bitset of candidate indices.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Largest number of candidates a profile may carry.
pub const MAX_CANDIDATES: usize = 64;

/// A subset of candidates `{0, .., 63}` stored as a bit mask.
///
/// Ordering (`Ord`) is on the raw mask and is only used for map keys; the
/// lexicographic order on sorted member lists is [`CandidateSet::lex_cmp`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CandidateSet(u64);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        CandidateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_CANDIDATES);
        if m >= 64 {
            CandidateSet(u64::MAX)
        } else {
            CandidateSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(c: usize) -> Self {
        debug_assert!(c < MAX_CANDIDATES);
        CandidateSet(1u64 << c)
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_CANDIDATES && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1u64 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1u64 << c);
    }

    pub fn with(self, c: usize) -> Self {
        CandidateSet(self.0 | 1u64 << c)
    }

    pub fn without(self, c: usize) -> Self {
        CandidateSet(self.0 & !(1u64 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: Self) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Size of the intersection, the quantity every rule and axiom is built on.
    pub fn overlap(self, other: Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares sorted member lists lexicographically, so `{0,1,5} < {0,2,3}`.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = CandidateSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for CandidateSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for CandidateSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for CandidateSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = members.iter().find(|&&c| c >= MAX_CANDIDATES) {
            return Err(serde::de::Error::custom(format!(
                "candidate index {bad} out of range"
            )));
        }
        Ok(members.into_iter().collect())
    }
}

/// All size-`size` subsets of `universe`, in lexicographic order of their
/// sorted member lists.
pub fn subsets_of_size(universe: CandidateSet, size: usize) -> Combinations {
    let items = universe.to_vec();
    let idx = if size <= items.len() {
        Some((0..size).collect())
    } else {
        None
    };
    Combinations { items, idx }
}

pub struct Combinations {
    items: Vec<usize>,
    idx: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = CandidateSet;

    fn next(&mut self) -> Option<CandidateSet> {
        let idx = self.idx.as_mut()?;
        let out: CandidateSet = idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let r = idx.len();
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                self.idx = None;
                break;
            }
            i -= 1;
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

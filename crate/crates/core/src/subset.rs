use std::fmt;

use serde::Serialize;

use crate::error::AlgebraError;

/// A subset of `{1, ..., n}`, stored as a strictly increasing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsetIndex {
    n: usize,
    members: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self, AlgebraError> {
        let increasing = members.windows(2).all(|w| w[0] < w[1]);
        let in_range = members.iter().all(|&m| m >= 1 && m <= n);
        if !increasing || !in_range {
            return Err(AlgebraError::BadSubset { members, n });
        }
        Ok(SubsetIndex { n, members })
    }

    pub fn empty(n: usize) -> Self {
        SubsetIndex {
            n,
            members: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        SubsetIndex {
            n,
            members: (1..=n).collect(),
        }
    }

    fn from_mask(n: usize, mask: u64) -> Self {
        SubsetIndex {
            n,
            members: (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect(),
        }
    }

    fn mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, m| acc | 1 << (m - 1))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_mask(self.n.max(other.n), self.mask() | other.mask())
    }

    /// All subsets of `{1..n}`, by increasing cardinality and then
    /// lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        assert!(n < 64);
        let mut out: Vec<Self> = (0..1u64 << n).map(|m| Self::from_mask(n, m)).collect();
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        out
    }

    /// All subsets of `self` (same ambient size), in the same order as [`Self::all`].
    pub fn subsets(&self) -> Vec<Self> {
        let mine = self.mask();
        Self::all(self.n)
            .into_iter()
            .filter(|s| s.mask() & !mine == 0)
            .collect()
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

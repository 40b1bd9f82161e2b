use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::LinalgError;

/// A strictly increasing set of coordinates drawn from `[0, ambient)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSubset {
    ambient: usize,
    members: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient: usize, members: Vec<usize>) -> Result<Self, LinalgError> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LinalgError::Subset(format!("{members:?} is not strictly increasing")));
        }
        if members.last().is_some_and(|&x| x >= ambient) {
            return Err(LinalgError::Subset(format!("{members:?} exceeds ambient size {ambient}")));
        }
        Ok(IndexSubset { ambient, members })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(ambient: usize, mut members: Vec<usize>) -> Result<Self, LinalgError> {
        members.sort_unstable();
        members.dedup();
        IndexSubset::new(ambient, members)
    }

    pub fn full(ambient: usize) -> Self {
        IndexSubset { ambient, members: (0..ambient).collect() }
    }

    pub fn empty(ambient: usize) -> Self {
        IndexSubset { ambient, members: Vec::new() }
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    /// Position of `j` inside the member list.
    pub fn position(&self, j: usize) -> Option<usize> {
        self.members.binary_search(&j).ok()
    }

    pub fn complement(&self) -> IndexSubset {
        let members = (0..self.ambient).filter(|j| !self.contains(*j)).collect();
        IndexSubset { ambient: self.ambient, members }
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.members.iter().all(|&j| other.contains(j))
    }

    pub fn is_disjoint(&self, other: &IndexSubset) -> bool {
        self.members.iter().all(|&j| !other.contains(j))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, j) in self.members.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}/{}", self.ambient)
    }
}

/// All `m`-subsets of `[0, n)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let cur = self.current.take()?;
        let out = IndexSubset { ambient: self.n, members: cur.clone() };
        let m = cur.len();
        // Advance: rightmost position that can still move right.
        let mut next = cur;
        let mut t = m;
        while t > 0 {
            t -= 1;
            if next[t] < self.n - m + t {
                next[t] += 1;
                for s in t + 1..m {
                    next[s] = next[s - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

pub fn enumerate_subsets(n: usize, m: usize) -> Subsets {
    let current = (m <= n).then(|| (0..m).collect());
    Subsets { n, current }
}

/// `C(n, m)` as `u64`; zero when `m > n`.
pub fn binomial(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    (0..m).fold(1u64, |acc, t| acc * (n - t) as u64 / (t + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(it: Subsets) -> Vec<Vec<usize>> {
        it.map(|s| s.members().to_vec()).collect()
    }

    #[test]
    fn three_choose_two_in_order() {
        assert_eq!(members(enumerate_subsets(3, 2)), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn empty_subset_yields_once() {
        assert_eq!(members(enumerate_subsets(4, 0)), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn six_choose_three() {
        let all = members(enumerate_subsets(6, 3));
        assert_eq!(all.len(), 20);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[19], vec![3, 4, 5]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn full_and_oversized() {
        assert_eq!(members(enumerate_subsets(3, 3)), vec![vec![0, 1, 2]]);
        assert_eq!(enumerate_subsets(2, 3).count(), 0);
    }

    #[test]
    fn binomial_matches_enumeration() {
        for n in 0..10 {
            for m in 0..=n {
                assert_eq!(binomial(n, m), enumerate_subsets(n, m).count() as u64);
            }
        }
    }

    #[test]
    fn complement_and_validation() {
        let s = IndexSubset::new(5, vec![1, 3]).unwrap();
        assert_eq!(s.complement().members(), &[0, 2, 4]);
        assert!(IndexSubset::new(3, vec![2, 1]).is_err());
        assert!(IndexSubset::new(3, vec![3]).is_err());
        assert!(IndexSubset::new(3, vec![1, 1]).is_err());
    }
}

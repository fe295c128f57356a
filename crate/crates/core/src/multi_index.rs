//! Multi-indices over `N_0^d` and the truncation boxes that hold them.

use std::cmp::Ordering;
use std::fmt;

/// A d-tuple of nonnegative integers.
///
/// Ordering is graded-lexicographic: first by `|n|`, then entry by entry.
/// Every deterministic reduction in the crate walks indices in this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit index along one axis, scaled by `n`.
    pub fn axis(dim: usize, axis: usize, n: usize) -> Self {
        let mut e = vec![0; dim];
        e[axis] = n;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|n|`, the sum of the entries.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }

    /// True when every entry is within the per-axis truncation.
    pub fn within(&self, trunc: &[usize]) -> bool {
        self.0.len() == trunc.len() && self.0.iter().zip(trunc).all(|(n, t)| n <= t)
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense row-major box `{n : n_l <= trunc_l}`; axis 0 varies slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBox {
    trunc: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl IndexBox {
    pub fn new(trunc: &[usize]) -> Self {
        let d = trunc.len();
        let mut strides = vec![1; d];
        for l in (0..d.saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * (trunc[l + 1] + 1);
        }
        let len = trunc.iter().map(|t| t + 1).product();
        IndexBox {
            trunc: trunc.to_vec(),
            strides,
            len,
        }
    }

    pub fn trunc(&self) -> &[usize] {
        &self.trunc
    }

    pub fn dim(&self) -> usize {
        self.trunc.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn flat(&self, n: &MultiIndex) -> Option<usize> {
        if !n.within(&self.trunc) {
            return None;
        }
        Some(n.0.iter().zip(&self.strides).map(|(a, s)| a * s).sum())
    }

    pub fn unflat(&self, mut flat: usize) -> MultiIndex {
        let mut e = vec![0; self.dim()];
        for (l, s) in self.strides.iter().enumerate() {
            e[l] = flat / s;
            flat %= s;
        }
        MultiIndex(e)
    }

    /// All indices in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.len).map(move |i| self.unflat(i))
    }

    /// Flat positions of all indices, sorted graded-lexicographically.
    pub fn graded_lex(&self) -> Vec<usize> {
        let mut idx: Vec<(MultiIndex, usize)> =
            (0..self.len).map(|i| (self.unflat(i), i)).collect();
        idx.sort_by(|a, b| a.0.cmp(&b.0));
        idx.into_iter().map(|(_, i)| i).collect()
    }
}

use std::fmt;

use crate::error::{Error, Result};

/// A relabeling of `k` points: after applying it, position `i` holds what
/// was at position `source[i]` (0-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    source: Vec<usize>,
}

impl Permutation {
    pub fn new(source: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; source.len()];
        for &s in &source {
            if s >= source.len() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(source));
            }
        }
        Ok(Permutation { source })
    }

    /// Same as [`Permutation::new`] with 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.iter().any(|&l| l == 0) {
            return Err(Error::InvalidPermutation(labels.to_vec()));
        }
        Self::new(labels.iter().map(|l| l - 1).collect())
            .map_err(|_| Error::InvalidPermutation(labels.to_vec()))
    }

    pub fn identity(k: usize) -> Self {
        Permutation { source: (0..k).collect() }
    }

    /// Moves the first point to the end: new `i` holds old `i + 1`.
    pub fn cyclic_shift(k: usize) -> Self {
        Permutation { source: (0..k).map(|i| (i + 1) % k).collect() }
    }

    /// Swaps positions `i` and `j` (0-based).
    pub fn transposition(k: usize, i: usize, j: usize) -> Self {
        let mut source: Vec<usize> = (0..k).collect();
        source.swap(i, j);
        Permutation { source }
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    /// 1-based form of [`Permutation::source`].
    pub fn labels(&self) -> Vec<usize> {
        self.source.iter().map(|s| s + 1).collect()
    }

    /// Applying `self` and then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.len(), next.len(), "permutations of different sizes");
        Permutation { source: next.source.iter().map(|&j| self.source[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut source = vec![0; self.len()];
        for (i, &s) in self.source.iter().enumerate() {
            source[s] = i;
        }
        Permutation { source }
    }

    /// Reorders a slice: `out[i] = items[source[i]]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len(), "permutation size mismatch");
        self.source.iter().map(|&s| items[s].clone()).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.labels())
    }
}

use std::cmp::Ordering;
use std::fmt;

use crate::binomial::binomial_u64;
use crate::chow_ring::{CurveClass, MAX_BASIS};

/// Multiset of basis indices, stored as a count per index.
///
/// Two insertion lists that differ by a permutation have the same `Insertions`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Insertions([u8; MAX_BASIS]);

impl Insertions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut out = Self::new();
        for &i in indices {
            out.push(i);
        }
        out
    }

    pub fn from_counts(counts: [u8; MAX_BASIS]) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[u8; MAX_BASIS] {
        &self.0
    }

    pub fn count(&self, index: usize) -> u8 {
        self.0[index]
    }

    pub fn push(&mut self, index: usize) {
        self.0[index] += 1;
    }

    pub fn with(mut self, index: usize) -> Self {
        self.push(index);
        self
    }

    /// Removes one copy of `index`; `false` if there was none.
    pub fn remove(&mut self, index: usize) -> bool {
        if self.0[index] == 0 {
            return false;
        }
        self.0[index] -= 1;
        true
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sorted list of indices, with repetition.
    pub fn indices(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    /// Distinct indices present.
    pub fn distinct(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    pub fn codim_sum(&self, codims: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(codims)
            .map(|(&c, &d)| c as u32 * d)
            .sum()
    }

    /// `self − other`, assuming `other ⊆ self`.
    pub fn minus(&self, other: &Insertions) -> Insertions {
        let mut out = *self;
        for (x, y) in out.0.iter_mut().zip(other.0) {
            *x -= y;
        }
        out
    }

    /// Every sub-multiset `A ⊆ self` together with the number of ways to choose
    /// it when the elements of `self` are labelled.
    pub fn sub_multisets(&self) -> Vec<(Insertions, u64)> {
        let mut out = vec![(Insertions::new(), 1u64)];
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for (base, mult) in &out {
                for take in 0..=c {
                    let mut s = *base;
                    s.0[i] = take;
                    next.push((s, mult * binomial_u64(c as u64, take as u64)));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for Insertions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

impl Ord for Insertions {
    /// Shorter multisets first, then lexicographic on the sorted index list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Insertions {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical identity of a genus-0 invariant: a curve class and the multiset of
/// non-divisor, non-fundamental insertions that remain after normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantKey {
    pub class: CurveClass,
    pub insertions: Insertions,
}

impl InvariantKey {
    pub fn new(class: CurveClass, insertions: Insertions) -> Self {
        Self { class, insertions }
    }

    pub fn from_indices(class: CurveClass, indices: &[usize]) -> Self {
        Self::new(class, Insertions::from_indices(indices))
    }

    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    pub fn stage(&self) -> StageId {
        StageId {
            class: self.class,
            n: self.len(),
        }
    }
}

impl Ord for InvariantKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.class
            .cmp(&other.class)
            .then_with(|| self.insertions.cmp(&other.insertions))
    }
}

impl PartialOrd for InvariantKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}(", self.class)?;
        for (n, i) in self.insertions.indices().into_iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "T{i}")?;
        }
        write!(f, ")")
    }
}

/// All unknowns with one curve class and one insertion count.
///
/// Stages are ordered by class (`(b, a)` lexicographic) and then by `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StageId {
    pub class: CurveClass,
    pub n: usize,
}

impl fmt::Display for StageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {} n={}", self.class, self.n)
    }
}

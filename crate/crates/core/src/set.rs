//! Canonical finite sets of positive integers.

use std::fmt;

use crate::error::{Error, Result};

/// A finite set of positive integers in canonical form: elements stored
/// strictly increasing, no duplicates. Values are immutable after
/// construction, so they are safe to share across threads; every operation
/// returns a fresh set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    elements: Vec<u32>,
}

impl FinSet {
    /// The empty set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a set from arbitrary elements, sorting and deduplicating.
    /// Signals `OutOfRange` if any element is zero.
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::OutOfRange(
                "set elements must be positive integers".into(),
            ));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self { elements: v })
    }

    /// Decodes a characteristic bitmask: bit `i` set means element `i + 1`
    /// is present.
    pub fn from_bitmask(mut mask: u64) -> Self {
        let mut elements = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            elements.push(mask.trailing_zeros() + 1);
            mask &= mask - 1;
        }
        Self { elements }
    }

    /// The characteristic bitmask, if every element fits in a 64-bit word.
    pub fn bitmask(&self) -> Option<u64> {
        match self.elements.last() {
            Some(&max) if max > 64 => None,
            _ => Some(
                self.elements
                    .iter()
                    .fold(0u64, |m, &e| m | 1u64 << (e - 1)),
            ),
        }
    }

    /// Number of elements.
    pub fn card(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The elements in strictly increasing order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements.iter().copied()
    }

    pub fn contains(&self, element: u32) -> bool {
        self.elements.binary_search(&element).is_ok()
    }

    pub fn min_elem(&self) -> Option<u32> {
        self.elements.first().copied()
    }

    pub fn max_elem(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    /// The second largest element. Only defined for sets with at least two
    /// elements; anything smaller signals `Undefined` rather than returning
    /// a sentinel.
    pub fn max2(&self) -> Result<u32> {
        if self.card() < 2 {
            return Err(Error::Undefined(format!(
                "max2 needs at least two elements, got {self}"
            )));
        }
        Ok(self.elements[self.card() - 2])
    }

    /// The Schreier condition: empty, or `min A >= |A|`.
    pub fn is_schreier(&self) -> bool {
        match self.min_elem() {
            None => true,
            Some(min) => min as usize >= self.card(),
        }
    }

    /// Elementwise shift `{a + r : a in A}`. `r` may be negative; shifting
    /// any element below 1 signals `OutOfRange`.
    pub fn shift(&self, r: i64) -> Result<Self> {
        let Some(min) = self.min_elem() else {
            return Ok(Self::empty());
        };
        if i64::from(min) + r < 1 {
            return Err(Error::OutOfRange(format!(
                "shifting {self} by {r} drops {min} below 1"
            )));
        }
        let max = self.elements[self.card() - 1];
        if i64::from(max) + r > i64::from(u32::MAX) {
            return Err(Error::OutOfRange(format!(
                "shifting {self} by {r} overflows the element range"
            )));
        }
        Ok(Self {
            elements: self
                .elements
                .iter()
                .map(|&a| (i64::from(a) + r) as u32)
                .collect(),
        })
    }

    /// The set minus its largest element; empty stays empty.
    pub fn without_max(&self) -> Self {
        let mut elements = self.elements.clone();
        elements.pop();
        Self { elements }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Set literal for tests and examples: `fset![2, 3]`, `fset![]`.
#[macro_export]
macro_rules! fset {
    () => { $crate::FinSet::empty() };
    ($($e:expr),+ $(,)?) => {
        $crate::FinSet::new([$($e),+]).expect("fset! elements must be positive")
    };
}

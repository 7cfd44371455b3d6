//! The four set families and their membership predicates.
//!
//! All families live over the ground set `[n] = {1, ..., n}`:
//!
//! * `A(n)`: subsets containing `n` that satisfy the Schreier condition
//!   (`min A >= |A|`). The empty set is not a member.
//! * `K(n)`: the empty set, plus subsets with `max A - 1 in A` satisfying
//!   the Schreier condition.
//! * `Kprime(n)`: `K(n)` enlarged by every subset of size at most one.
//! * `Kpq(n, p, q)` for `p >= 1`, `q >= 2`: the empty set, plus subsets
//!   with `max A - max2 A = p` and `min A >= |A| >= q`. Singletons have no
//!   second-largest element, so they are never members.
//!
//! Membership has two implementations that must agree: a sorted-sequence
//! path that works for any `n`, and a bitmask path for `n <= 63` where
//! `min`, `max`, `max2`, and `|A|` are single bit operations. The scan in
//! [`crate::enumeration`] only ever touches the mask path.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::FinSet;

/// A family shape without its ground-set size: the template `(kind, p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Subsets of `[n]` containing `n` that satisfy the Schreier condition.
    BirdA,
    /// Empty, or `max A - 1 in A` plus the Schreier condition.
    K,
    /// `K` enlarged by every subset of size at most one.
    KPrime,
    /// Empty, or `max A - max2 A = p` and `min A >= |A| >= q`.
    KPq { p: u32, q: u32 },
}

impl FamilyKind {
    /// Validated `KPq` template: requires `p >= 1` and `q >= 2`.
    pub fn k_pq(p: u32, q: u32) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
        }
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
        }
        Ok(Self::KPq { p, q })
    }

    /// Instantiates the template at ground-set size `n`.
    pub fn at(self, n: u32) -> Result<FamilyId> {
        FamilyId::new(self, n)
    }

    /// Short stable name, also used by the CLI and cache headers.
    pub fn token(&self) -> &'static str {
        match self {
            Self::BirdA => "A",
            Self::K => "K",
            Self::KPrime => "Kprime",
            Self::KPq { .. } => "Kpq",
        }
    }

    /// `(p, q)` for `KPq`, `None` otherwise.
    pub fn params(&self) -> Option<(u32, u32)> {
        match *self {
            Self::KPq { p, q } => Some((p, q)),
            _ => None,
        }
    }
}

/// A fully specified family: a [`FamilyKind`] plus the ground-set size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyId {
    kind: FamilyKind,
    n: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter(format!("n must be >= 1, got {n}")));
        }
        if let FamilyKind::KPq { p, q } = kind {
            // revalidate in case the variant was assembled by hand
            FamilyKind::k_pq(p, q)?;
        }
        Ok(Self { kind, n })
    }

    pub fn bird_a(n: u32) -> Result<Self> {
        Self::new(FamilyKind::BirdA, n)
    }

    pub fn k(n: u32) -> Result<Self> {
        Self::new(FamilyKind::K, n)
    }

    pub fn k_prime(n: u32) -> Result<Self> {
        Self::new(FamilyKind::KPrime, n)
    }

    pub fn k_pq(n: u32, p: u32, q: u32) -> Result<Self> {
        Self::new(FamilyKind::k_pq(p, q)?, n)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Membership test. Takes the bitmask fast path when the set fits in a
    /// 64-bit word and `n <= 63`, the sorted-sequence path otherwise.
    pub fn contains(&self, set: &FinSet) -> bool {
        if self.n <= 63 {
            match set.bitmask() {
                Some(mask) => self.contains_mask(mask),
                // an element above 64 cannot lie in [n] for n <= 63
                None => false,
            }
        } else {
            self.contains_seq(set)
        }
    }

    fn contains_seq(&self, set: &FinSet) -> bool {
        if set.max_elem().is_some_and(|max| max > self.n) {
            return false;
        }
        match self.kind {
            FamilyKind::BirdA => set.contains(self.n) && set.is_schreier(),
            FamilyKind::K => {
                set.is_empty()
                    || (set.contains(set.max_elem().expect("nonempty") - 1) && set.is_schreier())
            }
            FamilyKind::KPrime => {
                set.card() <= 1
                    || (set.contains(set.max_elem().expect("nonempty") - 1) && set.is_schreier())
            }
            FamilyKind::KPq { p, q } => {
                set.is_empty()
                    || (set.card() >= q as usize
                        && set.is_schreier()
                        && set.max_elem().expect("nonempty")
                            - set.max2().expect("card >= q >= 2")
                            == p)
            }
        }
    }

    /// Mask-path membership; requires `n <= 63`.
    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        debug_assert!(self.n <= 63);
        if mask >> self.n != 0 {
            return false;
        }
        match self.kind {
            FamilyKind::BirdA => mask & (1u64 << (self.n - 1)) != 0 && mask_schreier(mask),
            FamilyKind::K => mask == 0 || mask_k_body(mask),
            FamilyKind::KPrime => mask.count_ones() <= 1 || mask_k_body(mask),
            FamilyKind::KPq { p, q } => {
                mask == 0 || {
                    let card = mask.count_ones();
                    card >= q
                        && mask.trailing_zeros() + 1 >= card
                        && mask_gap(mask) == Some(p)
                }
            }
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::KPq { p, q } => write!(f, "Kpq(n={}, p={p}, q={q})", self.n),
            kind => write!(f, "{}({})", kind.token(), self.n),
        }
    }
}

/// Schreier condition on a mask: empty, or `min >= |A|`.
#[inline]
fn mask_schreier(mask: u64) -> bool {
    mask == 0 || mask.trailing_zeros() + 1 >= mask.count_ones()
}

/// `max A - 1 in A` plus Schreier, for nonempty masks.
#[inline]
fn mask_k_body(mask: u64) -> bool {
    let max = 64 - mask.leading_zeros();
    max >= 2
        && mask & (1u64 << (max - 2)) != 0
        && mask.trailing_zeros() + 1 >= mask.count_ones()
}

/// `max A - max2 A` for masks with at least two bits set.
#[inline]
fn mask_gap(mask: u64) -> Option<u32> {
    let max = 64 - mask.leading_zeros();
    let rest = mask & !(1u64 << (max - 1));
    if rest == 0 {
        return None;
    }
    Some(max - (64 - rest.leading_zeros()))
}

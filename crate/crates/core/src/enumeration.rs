//! Exhaustive generation and counting over subsets of `[n]`.
//!
//! This is the brute-force oracle the recurrences and bijections are checked
//! against, so it stays deliberately dumb: walk every bitmask in `[0, 2^n)`
//! and keep the members. Enumeration yields lazily in a deterministic order;
//! counting never materializes sets and splits large scans into contiguous
//! mask ranges that are counted in parallel and summed, which keeps the
//! result independent of scheduling.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::FamilyId;
use crate::set::FinSet;

/// Deterministic total orders over the subsets of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    /// Ascending integer value of the characteristic bitmask.
    #[default]
    BitmaskAscending,
    /// Ascending cardinality, colexicographic within each cardinality class.
    Colex,
}

/// Powerset scanner with a configurable ground-set cap.
///
/// The cap protects callers from accidentally requesting a `2^60` scan; the
/// default of 30 keeps a full scan in the seconds range.
#[derive(Debug, Clone)]
pub struct Enumerator {
    cap: u32,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl Enumerator {
    /// Default ground-set cap.
    pub const DEFAULT_CAP: u32 = 30;
    /// Hard ceiling imposed by the 64-bit mask representation.
    pub const MAX_CAP: u32 = 63;

    pub fn new() -> Self {
        Self {
            cap: Self::DEFAULT_CAP,
        }
    }

    /// A scanner with a custom cap, at most [`Self::MAX_CAP`].
    pub fn with_cap(cap: u32) -> Result<Self> {
        if cap > Self::MAX_CAP {
            return Err(Error::InvalidParameter(format!(
                "enumeration cap {cap} exceeds the bitmask limit {}",
                Self::MAX_CAP
            )));
        }
        Ok(Self { cap })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check_cap(&self, n: u32) -> Result<()> {
        if n > self.cap {
            Err(Error::LimitExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Lazily yields the members of `family`, each exactly once, in the
    /// requested order.
    pub fn enumerate(&self, family: FamilyId, order: EnumerationOrder) -> Result<FamilyIter> {
        self.check_cap(family.n())?;
        Ok(FamilyIter::new(
            MemberTest::Family(family),
            family.n(),
            order,
        ))
    }

    /// Members of `large` that are not members of `small`. The ids must
    /// share kind and `(p, q)` and satisfy `small.n = large.n - 1`.
    pub fn enumerate_difference(
        &self,
        large: FamilyId,
        small: FamilyId,
        order: EnumerationOrder,
    ) -> Result<FamilyIter> {
        if large.kind() != small.kind() {
            return Err(Error::ParameterMismatch(format!(
                "difference needs matching family kinds, got {large} and {small}"
            )));
        }
        if small.n() + 1 != large.n() {
            return Err(Error::ParameterMismatch(format!(
                "difference needs consecutive ground-set sizes, got {large} and {small}"
            )));
        }
        self.check_cap(large.n())?;
        Ok(FamilyIter::new(
            MemberTest::Difference(large, small),
            large.n(),
            order,
        ))
    }

    /// Exact member count by exhaustive scan. Always equals the length of
    /// [`Self::enumerate`] output.
    pub fn count(&self, family: FamilyId) -> Result<BigInt> {
        self.check_cap(family.n())?;
        let end = 1u64 << family.n();
        // Below this the chunking overhead dominates.
        const PARALLEL_BITS: u32 = 20;
        const CHUNK_BITS: u32 = 16;
        let total: u64 = if family.n() <= PARALLEL_BITS {
            count_range(family, 0, end)
        } else {
            (0..end >> CHUNK_BITS)
                .into_par_iter()
                .map(|c| count_range(family, c << CHUNK_BITS, (c + 1) << CHUNK_BITS))
                .sum()
        };
        Ok(BigInt::from(total))
    }
}

fn count_range(family: FamilyId, lo: u64, hi: u64) -> u64 {
    (lo..hi).filter(|&m| family.contains_mask(m)).count() as u64
}

#[derive(Debug)]
enum MemberTest {
    Family(FamilyId),
    Difference(FamilyId, FamilyId),
}

impl MemberTest {
    #[inline]
    fn test(&self, mask: u64) -> bool {
        match self {
            Self::Family(f) => f.contains_mask(mask),
            Self::Difference(large, small) => {
                large.contains_mask(mask) && !small.contains_mask(mask)
            }
        }
    }
}

/// Lazy iterator over family members in a deterministic order.
#[derive(Debug)]
pub struct FamilyIter {
    test: MemberTest,
    end: u64,
    state: State,
}

#[derive(Debug)]
enum State {
    Ascending { next: u64 },
    Colex { n: u32, k: u32, next: u64 },
}

impl FamilyIter {
    fn new(test: MemberTest, n: u32, order: EnumerationOrder) -> Self {
        let end = 1u64 << n;
        let state = match order {
            EnumerationOrder::BitmaskAscending => State::Ascending { next: 0 },
            EnumerationOrder::Colex => State::Colex { n, k: 0, next: 0 },
        };
        Self { test, end, state }
    }

    /// Next candidate mask in order, regardless of membership.
    fn next_mask(&mut self) -> Option<u64> {
        match &mut self.state {
            State::Ascending { next } => {
                if *next >= self.end {
                    None
                } else {
                    let mask = *next;
                    *next += 1;
                    Some(mask)
                }
            }
            State::Colex { n, k, next } => loop {
                if *k > *n {
                    return None;
                }
                if *next < self.end {
                    let mask = *next;
                    // exhausting the class parks `next` at `end`
                    *next = gosper_next(mask).unwrap_or(self.end);
                    return Some(mask);
                }
                *k += 1;
                if *k > *n {
                    return None;
                }
                *next = (1u64 << *k) - 1;
            },
        }
    }
}

impl Iterator for FamilyIter {
    type Item = FinSet;

    fn next(&mut self) -> Option<FinSet> {
        while let Some(mask) = self.next_mask() {
            if self.test.test(mask) {
                return Some(FinSet::from_bitmask(mask));
            }
        }
        None
    }
}

/// Next larger integer with the same popcount (Gosper's hack), or `None` at
/// the top of the range.
pub(crate) fn gosper_next(v: u64) -> Option<u64> {
    if v == 0 {
        return None;
    }
    let c = v & v.wrapping_neg();
    let r = v.checked_add(c)?;
    Some(r | (((v ^ r) >> 2) / c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fset;

    fn members(family: FamilyId, order: EnumerationOrder) -> Vec<FinSet> {
        Enumerator::new()
            .enumerate(family, order)
            .unwrap()
            .collect()
    }

    #[test]
    fn enumerate_small_families() {
        assert_eq!(
            members(FamilyId::k(3).unwrap(), EnumerationOrder::BitmaskAscending),
            vec![fset![], fset![2, 3]]
        );
        assert_eq!(
            members(
                FamilyId::bird_a(2).unwrap(),
                EnumerationOrder::BitmaskAscending
            ),
            vec![fset![2]]
        );
        assert_eq!(
            members(
                FamilyId::k_pq(5, 1, 3).unwrap(),
                EnumerationOrder::BitmaskAscending
            ),
            vec![fset![], fset![3, 4, 5]]
        );
    }

    #[test]
    fn count_small_families() {
        let e = Enumerator::new();
        assert_eq!(e.count(FamilyId::k(1).unwrap()).unwrap(), BigInt::from(1));
        assert_eq!(e.count(FamilyId::k(2).unwrap()).unwrap(), BigInt::from(1));
        assert_eq!(e.count(FamilyId::k(5).unwrap()).unwrap(), BigInt::from(5));
        assert_eq!(
            members(FamilyId::k(5).unwrap(), EnumerationOrder::BitmaskAscending),
            vec![fset![], fset![2, 3], fset![3, 4], fset![4, 5], fset![3, 4, 5]]
        );
        assert_eq!(
            e.count(FamilyId::k_pq(4, 2, 2).unwrap()).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            members(
                FamilyId::k_pq(4, 2, 2).unwrap(),
                EnumerationOrder::BitmaskAscending
            ),
            vec![fset![], fset![2, 4]]
        );
    }

    #[test]
    fn difference_examples() {
        let e = Enumerator::new();
        let diff = |large: FamilyId, small: FamilyId| -> Vec<FinSet> {
            e.enumerate_difference(large, small, EnumerationOrder::BitmaskAscending)
                .unwrap()
                .collect()
        };
        assert_eq!(
            diff(FamilyId::k(3).unwrap(), FamilyId::k(2).unwrap()),
            vec![fset![2, 3]]
        );
        assert_eq!(
            diff(FamilyId::k(5).unwrap(), FamilyId::k(4).unwrap()),
            vec![fset![4, 5], fset![3, 4, 5]]
        );
        assert_eq!(
            diff(
                FamilyId::k_pq(3, 1, 2).unwrap(),
                FamilyId::k_pq(2, 1, 2).unwrap()
            ),
            vec![fset![2, 3]]
        );
    }

    #[test]
    fn difference_rejects_mismatched_ids() {
        let e = Enumerator::new();
        let err = e
            .enumerate_difference(
                FamilyId::k(3).unwrap(),
                FamilyId::k_prime(2).unwrap(),
                EnumerationOrder::BitmaskAscending,
            )
            .unwrap_err();
        assert!(matches!(err, Error::ParameterMismatch(_)));

        let err = e
            .enumerate_difference(
                FamilyId::k(4).unwrap(),
                FamilyId::k(2).unwrap(),
                EnumerationOrder::BitmaskAscending,
            )
            .unwrap_err();
        assert!(matches!(err, Error::ParameterMismatch(_)));

        let err = e
            .enumerate_difference(
                FamilyId::k_pq(4, 1, 2).unwrap(),
                FamilyId::k_pq(3, 1, 3).unwrap(),
                EnumerationOrder::BitmaskAscending,
            )
            .unwrap_err();
        assert!(matches!(err, Error::ParameterMismatch(_)));
    }

    #[test]
    fn cap_is_enforced() {
        let e = Enumerator::with_cap(5).unwrap();
        let err = e
            .enumerate(FamilyId::k(6).unwrap(), EnumerationOrder::BitmaskAscending)
            .unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { n: 6, cap: 5 }));
        assert!(e.count(FamilyId::k(5).unwrap()).is_ok());
        assert!(matches!(
            Enumerator::with_cap(64),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn difference_members_contain_both_new_elements_and_are_schreier() {
        let e = Enumerator::new();
        for n in 2..=12u32 {
            let diff = e
                .enumerate_difference(
                    FamilyId::k(n + 1).unwrap(),
                    FamilyId::k(n).unwrap(),
                    EnumerationOrder::BitmaskAscending,
                )
                .unwrap();
            for a in diff {
                assert!(a.contains(n) && a.contains(n + 1) && a.is_schreier(), "{a}");
            }
        }
    }

    #[test]
    fn count_matches_enumeration_length() {
        let e = Enumerator::new();
        for n in 1..=15u32 {
            for f in [
                FamilyId::bird_a(n).unwrap(),
                FamilyId::k(n).unwrap(),
                FamilyId::k_prime(n).unwrap(),
                FamilyId::k_pq(n, 1, 3).unwrap(),
                FamilyId::k_pq(n, 2, 2).unwrap(),
            ] {
                let listed = e
                    .enumerate(f, EnumerationOrder::BitmaskAscending)
                    .unwrap()
                    .count();
                assert_eq!(e.count(f).unwrap(), BigInt::from(listed), "family {f}");
            }
        }
    }

    #[test]
    fn kprime_exceeds_k_by_exactly_n() {
        let e = Enumerator::new();
        for n in 1..=15u32 {
            let k = e.count(FamilyId::k(n).unwrap()).unwrap();
            let kp = e.count(FamilyId::k_prime(n).unwrap()).unwrap();
            assert_eq!(kp - k, BigInt::from(n));
        }
    }

    #[test]
    fn members_nest_as_sets() {
        let e = Enumerator::new();
        for n in 1..=12u32 {
            let small: Vec<FinSet> = e
                .enumerate(FamilyId::k(n).unwrap(), EnumerationOrder::BitmaskAscending)
                .unwrap()
                .collect();
            let large: std::collections::BTreeSet<FinSet> = e
                .enumerate(
                    FamilyId::k(n + 1).unwrap(),
                    EnumerationOrder::BitmaskAscending,
                )
                .unwrap()
                .collect();
            for a in small {
                assert!(large.contains(&a));
            }
        }
    }

    #[test]
    fn colex_matches_membership_and_orders_by_size_then_mask() {
        let f = FamilyId::k(6).unwrap();
        let asc = members(f, EnumerationOrder::BitmaskAscending);
        let colex = members(f, EnumerationOrder::Colex);
        let as_set = |v: &[FinSet]| v.iter().cloned().collect::<std::collections::BTreeSet<_>>();
        assert_eq!(as_set(&asc), as_set(&colex));
        let keys: Vec<(usize, u64)> = colex
            .iter()
            .map(|s| (s.card(), s.bitmask().unwrap()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn parallel_count_agrees_with_known_value() {
        // n = 21 exercises the chunked parallel path: |K(21)| = F(21)
        let e = Enumerator::new();
        assert_eq!(
            e.count(FamilyId::k(21).unwrap()).unwrap(),
            BigInt::from(10946)
        );
    }

    #[test]
    fn gosper_walks_fixed_popcount_masks_in_order() {
        let mut m = 0b0111u64;
        let mut seen = vec![m];
        while let Some(next) = gosper_next(m) {
            if next >= 1 << 5 {
                break;
            }
            seen.push(next);
            m = next;
        }
        assert_eq!(
            seen,
            vec![0b00111, 0b01011, 0b01101, 0b01110, 0b10011, 0b10101, 0b10110, 0b11001, 0b11010, 0b11100]
        );
    }
}

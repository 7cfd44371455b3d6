//! Shared fixtures for the criterion benchmarks.

use schreier::{EnumerationOrder, Enumerator, FamilyId, FinSet};

/// Members of `K(n)` in bitmask-ascending order.
pub fn k_members(n: u32) -> Vec<FinSet> {
    Enumerator::new()
        .enumerate(FamilyId::k(n).unwrap(), EnumerationOrder::BitmaskAscending)
        .unwrap()
        .collect()
}

/// Nonempty members of `Kpq(n, p, q)` in bitmask-ascending order.
pub fn kpq_members(n: u32, p: u32, q: u32) -> Vec<FinSet> {
    Enumerator::new()
        .enumerate(
            FamilyId::k_pq(n, p, q).unwrap(),
            EnumerationOrder::BitmaskAscending,
        )
        .unwrap()
        .filter(|a| !a.is_empty())
        .collect()
}

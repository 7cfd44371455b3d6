//! Executable forward and inverse maps behind the counting identities.
//!
//! [`k_forward`]/[`k_inverse`] realize the bijection between `K(n-1)` and
//! `K(n+1) \ K(n)`, which witnesses that the `K` counts obey the Fibonacci
//! recurrence. [`kpq_forward`]/[`kpq_inverse`] realize the bijection between
//! the nonempty members of `Kpq(n-2)` and `S`, the part of
//! `Kpq(n) \ Kpq(n-1)` of size at least `q + 1`. The remaining part `T`
//! (size exactly `q`) is produced directly by [`construct_t`], giving the
//! binomial term of the order-two recurrence.
//!
//! Every map validates its domain and signals `DomainViolation` instead of
//! producing garbage: these maps exist to check proofs, so silent misuse
//! would defeat the purpose. No unchecked variants are provided.

use crate::enumeration::{gosper_next, EnumerationOrder, Enumerator};
use crate::error::{Error, Result};
use crate::family::{FamilyId, FamilyKind};
use crate::sequences::base_range_end;
use crate::set::FinSet;

/// The size-based split of `Kpq(n) \ Kpq(n-1)`: `s_members` holds the sets
/// of size at least `q + 1`, `t_members` the sets of size exactly `q`. The
/// two lists are disjoint and together exhaust the difference; both come out
/// in bitmask-ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub s_members: Vec<FinSet>,
    pub t_members: Vec<FinSet>,
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

/// Maps `A in K(n-1)` to `(A \ {max A} + 1) ∪ {n, n+1}`, with the empty set
/// going to `{n, n+1}`. The image is always a member of `K(n+1) \ K(n)`.
pub fn k_forward(a: &FinSet, n: u32) -> Result<FinSet> {
    if n < 2 {
        return Err(Error::DomainViolation(format!(
            "k_forward needs n >= 2, got {n}"
        )));
    }
    if !FamilyId::k(n - 1)?.contains(a) {
        return Err(Error::DomainViolation(format!(
            "{a} is not a member of K({})",
            n - 1
        )));
    }
    FinSet::new(a.without_max().shift(1)?.iter().chain([n, n + 1]))
}

/// Inverse of [`k_forward`]. Takes `B in K(n+1) \ K(n)` — equivalently a
/// Schreier subset of `[n+1]` containing both `n` and `n+1` — back to
/// `K(n-1)` via `E = (B \ {n, n+1}) - 1` and `F = E ∪ {max E + 1}`;
/// `{n, n+1}` itself goes to the empty set.
pub fn k_inverse(b: &FinSet, n: u32) -> Result<FinSet> {
    if n < 2 {
        return Err(Error::DomainViolation(format!(
            "k_inverse needs n >= 2, got {n}"
        )));
    }
    let in_codomain = b.max_elem() == Some(n + 1) && b.contains(n) && b.is_schreier();
    if !in_codomain {
        return Err(Error::DomainViolation(format!(
            "{b} is not a member of K({}) \\ K({})",
            n + 1,
            n
        )));
    }
    if b.card() == 2 {
        return Ok(FinSet::empty());
    }
    let e = FinSet::new(b.iter().filter(|&x| x != n && x != n + 1))?.shift(-1)?;
    let max_e = e.max_elem().expect("|B| >= 3 leaves a nonempty remainder");
    FinSet::new(e.iter().chain([max_e + 1]))
}

/// Maps a nonempty `A in Kpq(n-2)` to `(A \ {max A} + 1) ∪ {n-p, n}`, a
/// member of `S`. Defined for `n` in the recurrence range `n > p + 2q - 3`.
pub fn kpq_forward(a: &FinSet, n: u32, p: u32, q: u32) -> Result<FinSet> {
    FamilyKind::k_pq(p, q)?;
    if u64::from(n) <= base_range_end(p, q) {
        return Err(Error::DomainViolation(format!(
            "kpq_forward needs n > p + 2q - 3 = {}, got {n}",
            base_range_end(p, q)
        )));
    }
    if a.is_empty() {
        return Err(Error::DomainViolation(
            "kpq_forward is undefined on the empty set".into(),
        ));
    }
    if !FamilyId::k_pq(n - 2, p, q)?.contains(a) {
        return Err(Error::DomainViolation(format!(
            "{a} is not a nonempty member of Kpq(n={}, p={p}, q={q})",
            n - 2
        )));
    }
    FinSet::new(a.without_max().shift(1)?.iter().chain([n - p, n]))
}

/// Inverse of [`kpq_forward`]. Takes `A in S` — size at least `q + 1`,
/// `max A = n`, `max2 A = n - p`, Schreier — back to `Kpq(n-2)` via
/// `B = (A \ {n-p, n}) - 1`, `l = max B`, `C = B ∪ {l + p}`.
pub fn kpq_inverse(a: &FinSet, n: u32, p: u32, q: u32) -> Result<FinSet> {
    FamilyKind::k_pq(p, q)?;
    let gap_ok = match (a.max_elem(), a.max2()) {
        (Some(max), Ok(max2)) => max == n && max - max2 == p,
        _ => false,
    };
    if !(gap_ok && a.card() > q as usize && a.is_schreier()) {
        return Err(Error::DomainViolation(format!(
            "{a} is not in S for (n={n}, p={p}, q={q})"
        )));
    }
    let b = FinSet::new(a.iter().filter(|&x| x != n && x != n - p))?.shift(-1)?;
    let l = b.max_elem().expect("|A| >= q+1 >= 3 leaves a nonempty remainder");
    FinSet::new(b.iter().chain([l + p]))
}

/// Computes the `(S, T)` partition of `Kpq(n) \ Kpq(n-1)` by enumeration
/// and size classification. Needs `n >= 2` and `n` within the enumerator's
/// cap.
pub fn partition_difference(
    enumerator: &Enumerator,
    n: u32,
    p: u32,
    q: u32,
) -> Result<Partition> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "partition needs n >= 2, got {n}"
        )));
    }
    let large = FamilyId::k_pq(n, p, q)?;
    let small = FamilyId::k_pq(n - 1, p, q)?;
    let (s_members, t_members): (Vec<FinSet>, Vec<FinSet>) = enumerator
        .enumerate_difference(large, small, EnumerationOrder::BitmaskAscending)?
        .partition(|a| a.card() > q as usize);
    // every nonempty member has size >= q, so the split is exhaustive
    debug_assert!(t_members.iter().all(|a| a.card() == q as usize));
    Ok(Partition {
        s_members,
        t_members,
        n,
        p,
        q,
    })
}

/// Directly constructs `T`: every `D` together with `{n-p, n}`, where `D`
/// ranges over the `(q-2)`-subsets of `{q, ..., n-p-1}` in colex order. For
/// `n > p + 2q - 3` this is exactly the size-`q` part of
/// `Kpq(n) \ Kpq(n-1)`, with `binomial(n-p-q, q-2)` members.
pub fn construct_t(n: u32, p: u32, q: u32) -> Vec<FinSet> {
    debug_assert!(p >= 1 && q >= 2);
    if n <= p {
        return Vec::new();
    }
    let k = q - 2;
    if k == 0 {
        return vec![FinSet::new([n - p, n]).expect("n > p")];
    }
    let width = i64::from(n) - i64::from(p) - i64::from(q);
    if width < i64::from(k) {
        return Vec::new();
    }
    assert!(width < 64, "D-range too wide for the mask representation");
    let end = 1u64 << width;
    let mut mask = (1u64 << k) - 1;
    let mut out = Vec::new();
    while mask < end {
        // bit i of `mask` encodes element q + i
        let d = FinSet::from_bitmask(mask)
            .shift(i64::from(q) - 1)
            .expect("upward shift cannot fail");
        out.push(FinSet::new(d.iter().chain([n - p, n])).expect("positive elements"));
        mask = match gosper_next(mask) {
            Some(next) => next,
            None => break,
        };
    }
    out
}

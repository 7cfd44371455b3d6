//! Identity-level checks: brute force versus recurrence, bijections executed
//! over their whole domains, and partition exactness, reported with the
//! first (smallest) counterexample when something fails.
//!
//! Reports are deterministic given their parameters: checks walk `n`
//! ascending and sets in bitmask-ascending order, so a FAIL always carries
//! the minimal witness and is reproducible from the recorded parameters
//! alone.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::bijections::{construct_t, k_forward, k_inverse, kpq_forward, kpq_inverse, partition_difference};
use crate::enumeration::{EnumerationOrder, Enumerator};
use crate::error::{Error, Result};
use crate::family::{FamilyId, FamilyKind};
use crate::sequences::{base_range_end, binomial, count_k_pq, count_k_prime, fibonacci};
use crate::set::FinSet;

/// Outcome of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

/// Smallest failing instance, with enough detail to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub parameters: String,
    pub witness: Option<FinSet>,
    pub expected: String,
    pub actual: String,
}

/// Structured result of one check. `status == Fail` always comes with a
/// counterexample; `cases_run` counts the `n` values actually examined
/// (checks stop at the first failure, which is the smallest by
/// construction).
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameter_ranges: String,
    pub cases_run: u64,
    pub status: Status,
    pub first_counterexample: Option<Counterexample>,
}

impl VerificationReport {
    fn pass(check_name: &str, parameter_ranges: String, cases_run: u64) -> Self {
        Self {
            check_name: check_name.into(),
            parameter_ranges,
            cases_run,
            status: Status::Pass,
            first_counterexample: None,
        }
    }

    fn fail(
        check_name: &str,
        parameter_ranges: String,
        cases_run: u64,
        counterexample: Counterexample,
    ) -> Self {
        Self {
            check_name: check_name.into(),
            parameter_ranges,
            cases_run,
            status: Status::Fail,
            first_counterexample: Some(counterexample),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: {}", self.check_name)?;
        writeln!(f, "ranges: {}", self.parameter_ranges)?;
        writeln!(f, "cases: {}", self.cases_run)?;
        writeln!(f, "status: {}", self.status)?;
        if let Some(ce) = &self.first_counterexample {
            writeln!(f, "counterexample:")?;
            writeln!(f, "  parameters: {}", ce.parameters)?;
            if let Some(witness) = &ce.witness {
                writeln!(f, "  witness: {witness}")?;
            }
            writeln!(f, "  expected: {}", ce.expected)?;
            writeln!(f, "  actual: {}", ce.actual)?;
        }
        Ok(())
    }
}

fn require_positive(max_n: u32) -> Result<()> {
    if max_n < 1 {
        return Err(Error::InvalidParameter("max_n must be >= 1".into()));
    }
    Ok(())
}

fn require_within_cap(enumerator: &Enumerator, max_n: u32) -> Result<()> {
    if max_n > enumerator.cap() {
        return Err(Error::LimitExceeded {
            n: max_n,
            cap: enumerator.cap(),
        });
    }
    Ok(())
}

/// Shared worker for count-identity checks over `n = 1..=max_n`.
fn run_count_check(
    check_name: &str,
    parameter_ranges: String,
    max_n: u32,
    mut observed: impl FnMut(u32) -> Result<BigInt>,
    mut expected: impl FnMut(u32) -> BigInt,
) -> Result<VerificationReport> {
    let mut cases = 0;
    for n in 1..=max_n {
        cases += 1;
        let want = expected(n);
        let got = observed(n)?;
        if got != want {
            return Ok(VerificationReport::fail(
                check_name,
                parameter_ranges,
                cases,
                Counterexample {
                    parameters: format!("n = {n}"),
                    witness: None,
                    expected: want.to_string(),
                    actual: got.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(check_name, parameter_ranges, cases))
}

/// Checks that the brute-force count of `K(n)` equals `F(n)` for every
/// `n = 1..=max_n`.
pub fn verify_k_fibonacci(enumerator: &Enumerator, max_n: u32) -> Result<VerificationReport> {
    require_positive(max_n)?;
    require_within_cap(enumerator, max_n)?;
    run_count_check(
        "thm1",
        format!("n = 1..={max_n}"),
        max_n,
        |n| enumerator.count(FamilyId::k(n)?),
        fibonacci,
    )
}

/// Checks that the brute-force count of `Kprime(n)` equals `F(n) + n` for
/// every `n = 1..=max_n`.
pub fn verify_k_prime_count(enumerator: &Enumerator, max_n: u32) -> Result<VerificationReport> {
    require_positive(max_n)?;
    require_within_cap(enumerator, max_n)?;
    run_count_check(
        "corollary",
        format!("n = 1..={max_n}"),
        max_n,
        |n| enumerator.count(FamilyId::k_prime(n)?),
        count_k_prime,
    )
}

/// Checks the `Kpq` recurrence for every `n = 1..=max_n`: brute-force count
/// equals the recurrence value, the base range enumerates exactly the empty
/// set, and in the recurrence range the partition sizes match
/// `|S| = |Kpq(n-2)| - 1` and `|T| = C(n-p-q, q-2)`.
pub fn verify_kpq_recurrence(
    enumerator: &Enumerator,
    p: u32,
    q: u32,
    max_n: u32,
) -> Result<VerificationReport> {
    FamilyKind::k_pq(p, q)?;
    require_positive(max_n)?;
    require_within_cap(enumerator, max_n)?;
    let check_name = "thm2";
    let ranges = format!("p = {p}, q = {q}, n = 1..={max_n}");
    let base_end = base_range_end(p, q);
    let mut cases = 0;
    for n in 1..=max_n {
        cases += 1;
        let fail = |ce| Ok(VerificationReport::fail(check_name, ranges.clone(), cases, ce));

        let brute = enumerator.count(FamilyId::k_pq(n, p, q)?)?;
        let recurrence = count_k_pq(n, p, q);
        if brute != recurrence {
            return fail(Counterexample {
                parameters: format!("n = {n}, p = {p}, q = {q}"),
                witness: None,
                expected: format!("recurrence value {recurrence}"),
                actual: format!("brute-force count {brute}"),
            });
        }

        if u64::from(n) <= base_end {
            let members: Vec<FinSet> = enumerator
                .enumerate(FamilyId::k_pq(n, p, q)?, EnumerationOrder::BitmaskAscending)?
                .collect();
            if members != [FinSet::empty()] {
                let witness = members.iter().find(|m| !m.is_empty()).cloned();
                return fail(Counterexample {
                    parameters: format!("n = {n}, p = {p}, q = {q} (base range)"),
                    witness,
                    expected: "exactly {} as the only member".into(),
                    actual: format!("{} members", members.len()),
                });
            }
        } else {
            let part = partition_difference(enumerator, n, p, q)?;
            let s_expected = count_k_pq(n - 2, p, q) - 1;
            if BigInt::from(part.s_members.len()) != s_expected {
                return fail(Counterexample {
                    parameters: format!("n = {n}, p = {p}, q = {q}"),
                    witness: None,
                    expected: format!("|S| = {s_expected}"),
                    actual: format!("|S| = {}", part.s_members.len()),
                });
            }
            let t_expected = binomial(
                i64::from(n) - i64::from(p) - i64::from(q),
                i64::from(q) - 2,
            );
            if BigInt::from(part.t_members.len()) != t_expected {
                return fail(Counterexample {
                    parameters: format!("n = {n}, p = {p}, q = {q}"),
                    witness: None,
                    expected: format!("|T| = {t_expected}"),
                    actual: format!("|T| = {}", part.t_members.len()),
                });
            }
        }
    }
    Ok(VerificationReport::pass(check_name, ranges, cases))
}

/// Executes the bijections over their full domains for every
/// `n = 2..=max_n`: forward images land in the claimed codomain, round
/// trips are identities in both directions, images are collision-free, and
/// the `(S, T)` partition is exact and disjoint (with `T` matching its
/// direct construction). For `(p, q) = (1, 2)` the `K`-family bijection is
/// exercised as well, which needs `max_n + 1` within the cap.
pub fn verify_bijections(
    enumerator: &Enumerator,
    p: u32,
    q: u32,
    max_n: u32,
) -> Result<VerificationReport> {
    FamilyKind::k_pq(p, q)?;
    if max_n < 2 {
        return Err(Error::InvalidParameter(
            "verify_bijections needs max_n >= 2".into(),
        ));
    }
    require_within_cap(enumerator, max_n)?;
    let with_k = p == 1 && q == 2;
    let check_name = "bijections";
    let ranges = if with_k {
        format!("p = {p}, q = {q}, n = 2..={max_n} (K and Kpq)")
    } else {
        format!("p = {p}, q = {q}, n = 2..={max_n} (Kpq)")
    };
    let mut cases = 0;
    for n in 2..=max_n {
        if with_k {
            cases += 1;
            if let Some(ce) = check_k_bijection_at(enumerator, n)? {
                return Ok(VerificationReport::fail(check_name, ranges, cases, ce));
            }
        }
        cases += 1;
        if let Some(ce) = check_kpq_bijection_at(enumerator, n, p, q)? {
            return Ok(VerificationReport::fail(check_name, ranges, cases, ce));
        }
    }
    Ok(VerificationReport::pass(check_name, ranges, cases))
}

fn check_k_bijection_at(enumerator: &Enumerator, n: u32) -> Result<Option<Counterexample>> {
    let params = format!("n = {n} (K)");
    let domain: Vec<FinSet> = enumerator
        .enumerate(FamilyId::k(n - 1)?, EnumerationOrder::BitmaskAscending)?
        .collect();
    let codomain: Vec<FinSet> = enumerator.enumerate_difference(
        FamilyId::k(n + 1)?,
        FamilyId::k(n)?,
        EnumerationOrder::BitmaskAscending,
    )?
    .collect();
    let codomain_set: BTreeSet<&FinSet> = codomain.iter().collect();
    let mut image = BTreeSet::new();
    for a in &domain {
        let b = match k_forward(a, n) {
            Ok(b) => b,
            Err(e) => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(a.clone()),
                    expected: "a forward image".into(),
                    actual: format!("error: {e}"),
                }))
            }
        };
        if !codomain_set.contains(&b) {
            return Ok(Some(Counterexample {
                parameters: params,
                witness: Some(a.clone()),
                expected: format!("image inside K({}) \\ K({})", n + 1, n),
                actual: format!("image {b}"),
            }));
        }
        match k_inverse(&b, n) {
            Ok(back) if back == *a => {}
            other => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(a.clone()),
                    expected: format!("inverse(forward({a})) = {a}"),
                    actual: format!("{other:?}"),
                }))
            }
        }
        if !image.insert(b.clone()) {
            return Ok(Some(Counterexample {
                parameters: params,
                witness: Some(a.clone()),
                expected: "a collision-free image".into(),
                actual: format!("image {b} repeated"),
            }));
        }
    }
    if image.len() != codomain.len() {
        let missed = codomain
            .iter()
            .find(|b| !image.contains(*b))
            .cloned();
        return Ok(Some(Counterexample {
            parameters: params,
            witness: missed,
            expected: format!("image of size {}", codomain.len()),
            actual: format!("image of size {}", image.len()),
        }));
    }
    for b in &codomain {
        let round = k_inverse(b, n).and_then(|back| k_forward(&back, n));
        match round {
            Ok(again) if again == *b => {}
            other => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(b.clone()),
                    expected: format!("forward(inverse({b})) = {b}"),
                    actual: format!("{other:?}"),
                }))
            }
        }
    }
    Ok(None)
}

fn check_kpq_bijection_at(
    enumerator: &Enumerator,
    n: u32,
    p: u32,
    q: u32,
) -> Result<Option<Counterexample>> {
    let params = format!("n = {n}, p = {p}, q = {q}");
    let part = partition_difference(enumerator, n, p, q)?;
    let diff: Vec<FinSet> = enumerator.enumerate_difference(
        FamilyId::k_pq(n, p, q)?,
        FamilyId::k_pq(n - 1, p, q)?,
        EnumerationOrder::BitmaskAscending,
    )?
    .collect();
    let s_set: BTreeSet<&FinSet> = part.s_members.iter().collect();
    let t_set: BTreeSet<&FinSet> = part.t_members.iter().collect();
    if !s_set.is_disjoint(&t_set) {
        let shared = s_set.intersection(&t_set).next().map(|s| (*s).clone());
        return Ok(Some(Counterexample {
            parameters: params,
            witness: shared,
            expected: "S and T disjoint".into(),
            actual: "an overlapping member".into(),
        }));
    }
    let union: BTreeSet<&FinSet> = s_set.union(&t_set).copied().collect();
    if union != diff.iter().collect() {
        let missed = diff.iter().find(|d| !union.contains(*d)).cloned();
        return Ok(Some(Counterexample {
            parameters: params,
            witness: missed,
            expected: format!("S and T covering all {} difference members", diff.len()),
            actual: format!("{} members covered", union.len()),
        }));
    }

    if u64::from(n) <= base_range_end(p, q) {
        // difference is empty here; the maps only apply above the base range
        return Ok(None);
    }

    let t_direct = construct_t(n, p, q);
    if part.t_members != t_direct {
        return Ok(Some(Counterexample {
            parameters: params,
            witness: t_direct.first().cloned(),
            expected: format!("T enumerated = T constructed ({} members)", t_direct.len()),
            actual: format!("{} enumerated members", part.t_members.len()),
        }));
    }

    let domain: Vec<FinSet> = enumerator
        .enumerate(
            FamilyId::k_pq(n - 2, p, q)?,
            EnumerationOrder::BitmaskAscending,
        )?
        .filter(|a| !a.is_empty())
        .collect();
    let mut image = BTreeSet::new();
    for a in &domain {
        let b = match kpq_forward(a, n, p, q) {
            Ok(b) => b,
            Err(e) => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(a.clone()),
                    expected: "a forward image".into(),
                    actual: format!("error: {e}"),
                }))
            }
        };
        if !s_set.contains(&b) {
            return Ok(Some(Counterexample {
                parameters: params,
                witness: Some(a.clone()),
                expected: "image inside S".into(),
                actual: format!("image {b}"),
            }));
        }
        if b.iter().any(|x| x > n - p && x < n) {
            return Ok(Some(Counterexample {
                parameters: params,
                witness: Some(a.clone()),
                expected: format!("no image element strictly between {} and {n}", n - p),
                actual: format!("image {b}"),
            }));
        }
        match kpq_inverse(&b, n, p, q) {
            Ok(back) if back == *a => {}
            other => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(a.clone()),
                    expected: format!("inverse(forward({a})) = {a}"),
                    actual: format!("{other:?}"),
                }))
            }
        }
        if !image.insert(b.clone()) {
            return Ok(Some(Counterexample {
                parameters: params,
                witness: Some(a.clone()),
                expected: "a collision-free image".into(),
                actual: format!("image {b} repeated"),
            }));
        }
    }
    if image.len() != part.s_members.len() {
        let missed = part
            .s_members
            .iter()
            .find(|b| !image.contains(*b))
            .cloned();
        return Ok(Some(Counterexample {
            parameters: params,
            witness: missed,
            expected: format!("image of size {}", part.s_members.len()),
            actual: format!("image of size {}", image.len()),
        }));
    }
    for b in &part.s_members {
        let round = kpq_inverse(b, n, p, q).and_then(|back| kpq_forward(&back, n, p, q));
        match round {
            Ok(again) if again == *b => {}
            other => {
                return Ok(Some(Counterexample {
                    parameters: params,
                    witness: Some(b.clone()),
                    expected: format!("forward(inverse({b})) = {b}"),
                    actual: format!("{other:?}"),
                }))
            }
        }
    }
    Ok(None)
}

/// Proves the harness can fail: counts `K(n)` with a deliberately broken
/// Schreier predicate (`min A > |A|` instead of `min A >= |A|`) and compares
/// against `F(n)`. The report is always FAIL, with the minimal divergence at
/// `n = 3`.
pub fn self_test() -> VerificationReport {
    fn broken_k_count(n: u32) -> u64 {
        (0..1u64 << n)
            .filter(|&mask| {
                if mask >> n != 0 {
                    return false;
                }
                if mask == 0 {
                    return true;
                }
                let max = 64 - mask.leading_zeros();
                // the strict inequality is the injected bug
                max >= 2
                    && mask & (1u64 << (max - 2)) != 0
                    && mask.trailing_zeros() + 1 > mask.count_ones()
            })
            .count() as u64
    }

    let max_n = 8;
    run_count_check(
        "selftest",
        format!("n = 1..={max_n} with the Schreier condition broken to min A > |A|"),
        max_n,
        |n| Ok(BigInt::from(broken_k_count(n))),
        fibonacci,
    )
    .expect("the broken scan cannot signal errors")
}

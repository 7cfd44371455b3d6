//! Exact big-integer sequences: Fibonacci numbers, binomial coefficients,
//! and recurrence-based family cardinalities.
//!
//! This is the fast counting path the brute-force scans are checked against.
//! No floating point anywhere; recurrences are evaluated iteratively
//! bottom-up, so large `n` needs neither recursion depth nor repeated work.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::family::FamilyKind;

/// `F(n)` with `F(1) = F(2) = 1`; `F(0) = 0` for convenience.
pub fn fibonacci(n: u32) -> BigInt {
    let mut a = BigInt::from(0u32);
    let mut b = BigInt::from(1u32);
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `C(m, k)` by the multiplicative formula with exact stepwise division.
/// Out-of-range arguments (`m < 0`, `k < 0`, `k > m`) give 0; that keeps the
/// recurrence engine total, although the recurrence itself never leaves the
/// valid range.
pub fn binomial(m: i64, k: i64) -> BigInt {
    if m < 0 || k < 0 || k > m {
        return BigInt::from(0u32);
    }
    let k = k.min(m - k);
    let mut value = BigInt::from(1u32);
    for i in 1..=k {
        // value holds C(m-k+i-1, i-1) entering the step; division is exact
        value = value * BigInt::from(m - k + i) / BigInt::from(i);
    }
    value
}

/// `|A(n)| = F(n)`.
pub fn count_bird_a(n: u32) -> BigInt {
    assert!(n >= 1, "count_bird_a needs n >= 1");
    fibonacci(n)
}

/// `|K(n)| = F(n)`.
pub fn count_k(n: u32) -> BigInt {
    assert!(n >= 1, "count_k needs n >= 1");
    fibonacci(n)
}

/// `|Kprime(n)| = F(n) + n`.
pub fn count_k_prime(n: u32) -> BigInt {
    assert!(n >= 1, "count_k_prime needs n >= 1");
    fibonacci(n) + n
}

/// Largest `n` of the constant-1 base range of the `Kpq` recurrence:
/// `p + 2q - 3`. Assumes `p >= 1`, `q >= 2`.
pub fn base_range_end(p: u32, q: u32) -> u64 {
    debug_assert!(p >= 1 && q >= 2);
    u64::from(p) + 2 * u64::from(q) - 3
}

/// `|Kpq(n, p, q)|` by the order-two recurrence: 1 on the base range
/// `1 <= n <= p + 2q - 3`, and
/// `a(n) = a(n-1) + a(n-2) + C(n-p-q, q-2) - 1` above it. Requires
/// `n >= 1`, `p >= 1`, `q >= 2`.
pub fn count_k_pq(n: u32, p: u32, q: u32) -> BigInt {
    assert!(n >= 1, "count_k_pq needs n >= 1");
    assert!(p >= 1, "count_k_pq needs p >= 1");
    assert!(q >= 2, "count_k_pq needs q >= 2");
    kpq_values(p, q, n).pop().expect("n >= 1")
}

/// Recurrence counter for any family kind.
pub fn count_family(kind: FamilyKind, n: u32) -> BigInt {
    match kind {
        FamilyKind::BirdA => count_bird_a(n),
        FamilyKind::K => count_k(n),
        FamilyKind::KPrime => count_k_prime(n),
        FamilyKind::KPq { p, q } => count_k_pq(n, p, q),
    }
}

fn kpq_values(p: u32, q: u32, max_n: u32) -> Vec<BigInt> {
    let base_end = base_range_end(p, q);
    let mut values: Vec<BigInt> = Vec::with_capacity(max_n as usize);
    for n in 1..=u64::from(max_n) {
        let value = if n <= base_end {
            BigInt::from(1u32)
        } else {
            // the first recurrence n is p + 2q - 2, so n - 2 >= p + 2q - 4 >= 1
            // and both predecessors are already present
            let i = (n - 1) as usize;
            &values[i - 1]
                + &values[i - 2]
                + binomial(n as i64 - i64::from(p) - i64::from(q), i64::from(q) - 2)
                - 1
        };
        values.push(value);
    }
    values
}

fn fib_values(max_n: u32) -> Vec<BigInt> {
    let mut values = Vec::with_capacity(max_n as usize);
    let mut a = BigInt::from(1u32); // F(1)
    let mut b = BigInt::from(1u32); // F(2)
    for _ in 0..max_n {
        let next = &a + &b;
        values.push(std::mem::replace(&mut a, std::mem::replace(&mut b, next)));
    }
    values
}

/// A contiguous table of family cardinalities for `n = 1..=max_n`, computed
/// by the recurrence path. Completed tables are immutable and shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    kind: FamilyKind,
    values: Vec<BigInt>, // values[i] = cardinality at n = i + 1
}

impl SequenceTable {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn max_n(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, n: u32) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    /// `(n, value)` pairs in ascending `n`, contiguous from 1.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i as u32 + 1, v))
    }
}

/// Builds the `n = 1..=max_n` cardinality table for `kind` via the
/// recurrences. `max_n` must be at least 1.
pub fn build_table(kind: FamilyKind, max_n: u32) -> SequenceTable {
    assert!(max_n >= 1, "build_table needs max_n >= 1");
    let values = match kind {
        FamilyKind::BirdA | FamilyKind::K => fib_values(max_n),
        FamilyKind::KPrime => fib_values(max_n)
            .into_iter()
            .zip(1u32..)
            .map(|(f, n)| f + n)
            .collect(),
        FamilyKind::KPq { p, q } => {
            assert!(p >= 1 && q >= 2, "build_table needs p >= 1, q >= 2");
            kpq_values(p, q, max_n)
        }
    };
    SequenceTable { kind, values }
}

fn header_line(kind: FamilyKind) -> String {
    match kind.params() {
        Some((p, q)) => format!("#family {} {p} {q}", kind.token()),
        None => format!("#family {} - -", kind.token()),
    }
}

/// Writes `table` as a line-oriented text file: one header line
/// `#family <kind> <p> <q>` (`-` placeholders for families without
/// parameters) followed by `n value` lines in ascending `n`, LF-terminated,
/// base 10. The body is exactly the OEIS b-file shape, so a cache doubles as
/// an export. Writes go to a temporary file in the target directory and are
/// renamed into place, so concurrent readers never see a partial file.
pub fn cache_store(table: &SequenceTable, path: &Path) -> Result<()> {
    let mut text = header_line(table.kind());
    text.push('\n');
    for (n, value) in table.entries() {
        text.push_str(&format!("{n} {value}\n"));
    }
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Loads a table previously written by [`cache_store`] (or a b-file with the
/// header line prepended). The header must match `kind`, entries must be
/// contiguous from `n = 1`, and every value is revalidated against the
/// recurrence; any mismatch signals `CorruptCache`.
pub fn cache_load(kind: FamilyKind, path: &Path) -> Result<SequenceTable> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::CorruptCache("empty file".into()))?;
    if header != header_line(kind) {
        return Err(Error::CorruptCache(format!(
            "header {header:?} does not match expected {:?}",
            header_line(kind)
        )));
    }
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let expected_n = i as u64 + 1;
        let mut parts = line.split(' ');
        let (Some(n_str), Some(v_str), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::CorruptCache(format!("malformed line {line:?}")));
        };
        if n_str.parse::<u64>().ok() != Some(expected_n) {
            return Err(Error::CorruptCache(format!(
                "expected entry for n = {expected_n}, got {line:?}"
            )));
        }
        let value: BigInt = v_str
            .parse()
            .map_err(|_| Error::CorruptCache(format!("unreadable value in {line:?}")))?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::CorruptCache("no entries".into()));
    }
    let table = SequenceTable { kind, values };
    validate_table(&table)?;
    Ok(table)
}

/// Recomputes the recurrence and compares every entry.
fn validate_table(table: &SequenceTable) -> Result<()> {
    let expected = build_table(table.kind(), table.max_n());
    for ((n, got), (_, want)) in table.entries().zip(expected.entries()) {
        if got != want {
            return Err(Error::CorruptCache(format!(
                "value at n = {n} fails the recurrence: expected {want}, got {got}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exponential recursion straight off the definition; only for tiny n.
    fn fib_naive(n: u32) -> u64 {
        match n {
            0 => 0,
            1 | 2 => 1,
            _ => fib_naive(n - 1) + fib_naive(n - 2),
        }
    }

    /// Independent fast-doubling evaluation, a different algebraic route
    /// than the iterative addition used by `fibonacci`.
    fn fib_doubling(n: u32) -> BigInt {
        fn pair(n: u32) -> (BigInt, BigInt) {
            if n == 0 {
                return (BigInt::from(0u32), BigInt::from(1u32));
            }
            let (a, b) = pair(n / 2);
            let c = &a * (&b * 2u32 - &a);
            let d = &a * &a + &b * &b;
            if n.is_multiple_of(2) {
                (c, d)
            } else {
                let e = &c + &d;
                (d, e)
            }
        }
        pair(n).0
    }

    #[test]
    fn fibonacci_base_and_small_values() {
        assert_eq!(fibonacci(1), BigInt::from(1));
        assert_eq!(fibonacci(2), BigInt::from(1));
        assert_eq!(fibonacci(10), BigInt::from(55));
        for n in 0..=25 {
            assert_eq!(fibonacci(n), BigInt::from(fib_naive(n)), "n={n}");
        }
    }

    #[test]
    fn fibonacci_100_exceeds_64_bits_exactly() {
        let expected: BigInt = "354224848179261915075".parse().unwrap();
        assert_eq!(fibonacci(100), expected);
        assert!(expected > BigInt::from(u64::MAX));
    }

    #[test]
    fn fibonacci_agrees_with_fast_doubling() {
        for n in 0..=300 {
            assert_eq!(fibonacci(n), fib_doubling(n), "n={n}");
        }
    }

    #[test]
    fn cassini_identity_holds_through_200() {
        for n in 1..=200u32 {
            let lhs = fibonacci(n + 1) * fibonacci(n - 1) - fibonacci(n) * fibonacci(n);
            let rhs = if n % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn binomial_conventions_and_small_values() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 1), BigInt::from(3));
        assert_eq!(binomial(-1, 0), BigInt::from(0));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_matches_additive_pascal_triangle() {
        let mut row: Vec<BigInt> = vec![BigInt::from(1)];
        for m in 0..=20i64 {
            for (k, value) in row.iter().enumerate() {
                assert_eq!(binomial(m, k as i64), *value, "C({m},{k})");
            }
            let mut next = vec![BigInt::from(1)];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::from(1));
            row = next;
        }
    }

    #[test]
    fn count_k_and_k_prime_values() {
        assert_eq!(count_k(1), BigInt::from(1));
        assert_eq!(count_k(5), BigInt::from(5));
        assert_eq!(count_k(30), BigInt::from(832040));
        assert_eq!(count_k_prime(1), BigInt::from(2));
        assert_eq!(count_k_prime(3), BigInt::from(5));
        assert_eq!(count_k_prime(10), BigInt::from(65));
    }

    #[test]
    fn count_k_pq_examples() {
        assert_eq!(count_k_pq(3, 1, 2), BigInt::from(2));
        assert_eq!(count_k_pq(4, 2, 2), BigInt::from(2));
        assert_eq!(count_k_pq(5, 1, 3), BigInt::from(2));
        // base case: n = 2 <= p + 2q - 3 = 8
        assert_eq!(count_k_pq(2, 3, 4), BigInt::from(1));
    }

    #[test]
    fn kpq_base_range_is_constant_one() {
        for p in 1..=5u32 {
            for q in 2..=5u32 {
                for n in 1..=base_range_end(p, q) as u32 {
                    assert_eq!(count_k_pq(n, p, q), BigInt::from(1), "n={n},p={p},q={q}");
                }
            }
        }
    }

    #[test]
    fn kpq_at_p1_q2_reproduces_the_k_counts() {
        for n in 1..=500u32 {
            assert_eq!(count_k_pq(n, 1, 2), count_k(n), "n={n}");
        }
    }

    #[test]
    fn k_prime_exceeds_k_by_n_through_500() {
        for n in 1..=500u32 {
            assert_eq!(count_k_prime(n) - count_k(n), BigInt::from(n));
        }
    }

    #[test]
    fn q2_counts_are_shifted_fibonacci() {
        // |Kpq(n, p, 2)| = F(n - p + 1) for n >= p: the binomial term is
        // C(n-p-2, 0) = 1 and cancels the -1
        for p in 1..=4u32 {
            for n in p..=18 {
                assert_eq!(count_k_pq(n, p, 2), fibonacci(n - p + 1), "n={n},p={p}");
            }
        }
    }

    #[test]
    fn build_table_examples() {
        let t = build_table(FamilyKind::K, 6);
        let values: Vec<BigInt> = t.entries().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, [1, 1, 2, 3, 5, 8].map(BigInt::from));

        let t = build_table(FamilyKind::KPrime, 3);
        let values: Vec<BigInt> = t.entries().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, [2, 3, 5].map(BigInt::from));

        let t = build_table(FamilyKind::KPq { p: 1, q: 2 }, 5);
        let values: Vec<BigInt> = t.entries().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, [1, 1, 2, 3, 5].map(BigInt::from));

        assert_eq!(t.value(3), Some(&BigInt::from(2)));
        assert_eq!(t.value(0), None);
        assert_eq!(t.value(6), None);
        assert_eq!(t.max_n(), 5);
    }

    #[test]
    fn cache_round_trips_losslessly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k_table.txt");
        let table = build_table(FamilyKind::K, 100);
        cache_store(&table, &path).unwrap();
        let loaded = cache_load(FamilyKind::K, &path).unwrap();
        assert_eq!(loaded, table);

        let pq = build_table(FamilyKind::KPq { p: 2, q: 3 }, 40);
        let pq_path = dir.path().join("kpq_table.txt");
        cache_store(&pq, &pq_path).unwrap();
        assert_eq!(cache_load(FamilyKind::KPq { p: 2, q: 3 }, &pq_path).unwrap(), pq);
    }

    #[test]
    fn cache_load_rejects_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k_table.txt");
        cache_store(&build_table(FamilyKind::K, 20), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let tampered: String = text
            .lines()
            .map(|l| if l == "7 13" { "7 14\n".into() } else { format!("{l}\n") })
            .collect();
        assert_ne!(text, tampered, "the n = 7 line must exist");
        fs::write(&path, tampered).unwrap();
        let err = cache_load(FamilyKind::K, &path).unwrap_err();
        match err {
            Error::CorruptCache(msg) => assert!(msg.contains("n = 7"), "{msg}"),
            other => panic!("expected CorruptCache, got {other:?}"),
        }
    }

    #[test]
    fn cache_load_rejects_wrong_family_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k_table.txt");
        cache_store(&build_table(FamilyKind::K, 10), &path).unwrap();
        assert!(matches!(
            cache_load(FamilyKind::KPrime, &path),
            Err(Error::CorruptCache(_))
        ));
        assert!(matches!(
            cache_load(FamilyKind::K, &dir.path().join("missing.txt")),
            Err(Error::Io(_))
        ));
    }
}

//! Exact enumeration, counting, and verification for Schreier-type families
//! of finite integer sets.
//!
//! A finite set `A` of positive integers is *Schreier* when `A` is empty or
//! `min A >= |A|`. Over the ground set `[n] = {1, ..., n}` this crate models
//! four families:
//!
//! * `A(n)`: subsets containing `n` that satisfy the Schreier condition.
//! * `K(n)`: the empty set, plus Schreier subsets with `max A - 1 in A`.
//! * `Kprime(n)`: `K(n)` enlarged by every subset of size at most one.
//! * `Kpq(n, p, q)`: the empty set, plus subsets with
//!   `max A - max2 A = p` and `min A >= |A| >= q` (`p >= 1`, `q >= 2`).
//!
//! Their cardinalities follow Fibonacci-flavored recurrences: `|K(n)| =
//! F(n)`, `|Kprime(n)| = F(n) + n`, and `|Kpq(n, p, q)|` satisfies an
//! order-two recurrence with a binomial correction term. The crate computes
//! every count two independent ways — an exhaustive bitmask scan
//! ([`enumeration`]) and the exact big-integer recurrences ([`sequences`])
//! — and mechanically verifies the identities by executing the underlying
//! bijections as invertible maps over their whole domains ([`bijections`],
//! [`verification`]).
//!
//! All arithmetic is exact: counts are [`BigInt`], never floating point.

pub mod bijections;
pub mod enumeration;
pub mod error;
pub mod family;
pub mod sequences;
pub mod set;
pub mod verification;

pub use enumeration::{EnumerationOrder, Enumerator};
pub use error::{Error, Result};
pub use family::{FamilyId, FamilyKind};
pub use num_bigint::BigInt;
pub use set::FinSet;

//! `schreier` — exact counting, enumeration, table export, and verification
//! for Schreier-type set families.
//!
//! Exit codes: 0 success (and verification PASS), 1 verification FAIL,
//! 2 usage or limit errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schreier::sequences::{build_table, count_family};
use schreier::verification::{
    self_test, verify_bijections, verify_k_fibonacci, verify_k_prime_count,
    verify_kpq_recurrence,
};
use schreier::{EnumerationOrder, Enumerator, Error, FamilyId, FamilyKind};

/// Environment override for the exhaustive-scan cap (max 63).
const CAP_ENV: &str = "SCHREIER_ENUM_CAP";

#[derive(Parser)]
#[command(
    name = "schreier",
    version,
    about = "Schreier-type set families: exact counting, enumeration, and verification",
    after_help = "\
Families over [n] = {1, ..., n}, where Schreier means min A >= |A|:
  A       subsets containing n that are Schreier
  K       the empty set, plus Schreier subsets with max A - 1 in A
  Kprime  K plus every subset of size <= 1
  Kpq     the empty set, plus Schreier subsets with max A - max2 A = p
          and |A| >= q (requires --p and --q; p >= 1, q >= 2)

The exhaustive scan (--method enum, verify) refuses n above its cap
(default 30). Set SCHREIER_ENUM_CAP to override, up to 63."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact cardinality of a family
    Count {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Ground-set size n
        #[arg(long)]
        n: u32,
        /// Gap between the two largest elements (Kpq only)
        #[arg(long)]
        p: Option<u32>,
        /// Minimum cardinality (Kpq only)
        #[arg(long)]
        q: Option<u32>,
        /// enum = exhaustive scan, recurrence = exact fast path
        #[arg(long, value_enum, default_value_t = MethodArg::Enum)]
        method: MethodArg,
    },
    /// List the members of a family, one set per line
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Ground-set size n
        #[arg(long)]
        n: u32,
        /// Gap between the two largest elements (Kpq only)
        #[arg(long)]
        p: Option<u32>,
        /// Minimum cardinality (Kpq only)
        #[arg(long)]
        q: Option<u32>,
        /// plain, csv, or jsonl
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Print the cardinality table for n = 1..=max-n via the recurrences
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Gap between the two largest elements (Kpq only)
        #[arg(long)]
        p: Option<u32>,
        /// Minimum cardinality (Kpq only)
        #[arg(long)]
        q: Option<u32>,
        #[arg(long = "max-n")]
        max_n: u32,
        /// plain, csv, jsonl, or bfile (OEIS b-file body)
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Run a verification check; exit 0 on PASS, 1 on FAIL
    Verify {
        /// Which check to run
        #[arg(value_enum)]
        check: CheckArg,
        /// Gap parameter (thm2 and bijections)
        #[arg(long)]
        p: Option<u32>,
        /// Minimum-cardinality parameter (thm2 and bijections)
        #[arg(long)]
        q: Option<u32>,
        /// Largest n to check (all checks except selftest)
        #[arg(long = "max-n")]
        max_n: Option<u32>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "A")]
    BirdA,
    #[value(name = "K")]
    K,
    #[value(name = "Kprime")]
    KPrime,
    #[value(name = "Kpq")]
    KPq,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enum,
    Recurrence,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Plain,
    Csv,
    Jsonl,
    Bfile,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Thm1,
    Corollary,
    Thm2,
    Bijections,
    Selftest,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Usage(msg) => msg.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Count {
            family,
            n,
            p,
            q,
            method,
        } => cmd_count(family, n, p, q, method),
        Command::Enumerate {
            family,
            n,
            p,
            q,
            format,
        } => cmd_enumerate(family, n, p, q, format),
        Command::Table {
            family,
            p,
            q,
            max_n,
            format,
        } => cmd_table(family, p, q, max_n, format),
        Command::Verify { check, p, q, max_n } => cmd_verify(check, p, q, max_n),
    }
}

/// Builds the scanner, honoring the cap override from the environment.
fn enumerator() -> Result<Enumerator, CliError> {
    match std::env::var(CAP_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(Enumerator::new()),
        Err(e) => Err(CliError::Usage(format!("{CAP_ENV}: {e}"))),
        Ok(raw) => {
            let cap: u32 = raw.trim().parse().map_err(|_| {
                CliError::Usage(format!("{CAP_ENV} must be an integer, got {raw:?}"))
            })?;
            Ok(Enumerator::with_cap(cap)?)
        }
    }
}

fn family_kind(
    family: FamilyArg,
    p: Option<u32>,
    q: Option<u32>,
) -> Result<FamilyKind, CliError> {
    match family {
        FamilyArg::KPq => {
            let (Some(p), Some(q)) = (p, q) else {
                return Err(CliError::Usage(
                    "--family Kpq requires both --p and --q".into(),
                ));
            };
            Ok(FamilyKind::k_pq(p, q)?)
        }
        other => {
            if p.is_some() || q.is_some() {
                return Err(CliError::Usage(
                    "--p/--q are only valid with --family Kpq".into(),
                ));
            }
            Ok(match other {
                FamilyArg::BirdA => FamilyKind::BirdA,
                FamilyArg::K => FamilyKind::K,
                FamilyArg::KPrime => FamilyKind::KPrime,
                FamilyArg::KPq => unreachable!("handled above"),
            })
        }
    }
}

fn cmd_count(
    family: FamilyArg,
    n: u32,
    p: Option<u32>,
    q: Option<u32>,
    method: MethodArg,
) -> Result<ExitCode, CliError> {
    let kind = family_kind(family, p, q)?;
    let id = kind.at(n)?;
    let value = match method {
        MethodArg::Enum => enumerator()?.count(id)?,
        MethodArg::Recurrence => count_family(kind, n),
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    family: FamilyArg,
    n: u32,
    p: Option<u32>,
    q: Option<u32>,
    format: FormatArg,
) -> Result<ExitCode, CliError> {
    let kind = family_kind(family, p, q)?;
    let id: FamilyId = kind.at(n)?;
    let members = enumerator()?.enumerate(id, EnumerationOrder::BitmaskAscending)?;
    match format {
        FormatArg::Plain => {
            for set in members {
                println!("{set}");
            }
        }
        FormatArg::Csv => {
            println!("set");
            for set in members {
                println!("\"{set}\"");
            }
        }
        FormatArg::Jsonl => {
            for set in members {
                let elements: Vec<String> = set.iter().map(|e| e.to_string()).collect();
                println!("{{\"set\":[{}]}}", elements.join(","));
            }
        }
        FormatArg::Bfile => {
            return Err(CliError::Usage(
                "--format bfile applies only to the table subcommand".into(),
            ));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(
    family: FamilyArg,
    p: Option<u32>,
    q: Option<u32>,
    max_n: u32,
    format: FormatArg,
) -> Result<ExitCode, CliError> {
    let kind = family_kind(family, p, q)?;
    if max_n < 1 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let table = build_table(kind, max_n);
    match format {
        // plain and bfile share the OEIS b-file body: "n value" per line
        FormatArg::Plain | FormatArg::Bfile => {
            for (n, value) in table.entries() {
                println!("{n} {value}");
            }
        }
        FormatArg::Csv => {
            println!("n,value");
            for (n, value) in table.entries() {
                println!("{n},{value}");
            }
        }
        FormatArg::Jsonl => {
            for (n, value) in table.entries() {
                println!("{{\"n\":{n},\"value\":\"{value}\"}}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    check: CheckArg,
    p: Option<u32>,
    q: Option<u32>,
    max_n: Option<u32>,
) -> Result<ExitCode, CliError> {
    let report = match check {
        CheckArg::Selftest => {
            if p.is_some() || q.is_some() || max_n.is_some() {
                return Err(CliError::Usage(
                    "selftest takes no --p/--q/--max-n".into(),
                ));
            }
            self_test()
        }
        CheckArg::Thm1 | CheckArg::Corollary => {
            if p.is_some() || q.is_some() {
                return Err(CliError::Usage(
                    "--p/--q are only valid for thm2 and bijections".into(),
                ));
            }
            let max_n = max_n
                .ok_or_else(|| CliError::Usage("this check requires --max-n".into()))?;
            let e = enumerator()?;
            match check {
                CheckArg::Thm1 => verify_k_fibonacci(&e, max_n)?,
                _ => verify_k_prime_count(&e, max_n)?,
            }
        }
        CheckArg::Thm2 | CheckArg::Bijections => {
            let (Some(p), Some(q)) = (p, q) else {
                return Err(CliError::Usage("this check requires --p and --q".into()));
            };
            let max_n = max_n
                .ok_or_else(|| CliError::Usage("this check requires --max-n".into()))?;
            let e = enumerator()?;
            match check {
                CheckArg::Thm2 => verify_kpq_recurrence(&e, p, q, max_n)?,
                _ => verify_bijections(&e, p, q, max_n)?,
            }
        }
    };
    print!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

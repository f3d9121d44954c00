//! The `semipell` command line.
//!
//! Exit codes: 0 success or passing check, 1 failed check, 2 usage error,
//! 3 enumeration refused by a size guard, 4 input rejected by the domain
//! rules (not semi-m-Pell, not a valid run form, theorem hypothesis unmet).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bijection::{from_oc, roundtrip_check};
use crate::composition::{Composition, Modulus, RunForm};
use crate::congruence::{
    check_mod3, check_mod4_base, check_mod4_general, check_ob_parity, check_oddness,
    check_partial_sum_mod3, check_special_cases,
};
use crate::enumerate::{enumerate_oc, enumerate_sp, oracle_check};
use crate::error::Error;
use crate::recurrence::{
    check_plateau_identity, check_scaling_identity, sp_table, CacheStore, CountCache,
};
use crate::report::CongruenceReport;
use crate::series::{check_series, qm_series};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_DOMAIN: u8 = 4;

/// `enum` refuses to list more objects than this.
pub const ENUM_LIMIT: u64 = 2_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "semipell",
    version,
    about = "Count, list, map and verify semi-m-Pell compositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Sp,
    Oc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    ToOc,
    FromOc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Oddness,
    Mod4,
    Mod4General,
    Mod3,
    PartialSum,
    ObParity,
    Plateau,
    Scaling,
    Roundtrip,
    Oracle,
    Funceq,
    SpecialCases,
}

fn parse_modulus(s: &str) -> Result<Modulus, String> {
    let m: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Modulus::new(m).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print sp(n, m).
    Count {
        n: u64,
        #[arg(value_parser = parse_modulus)]
        m: Modulus,
        /// Persistent cache file, read if present and rewritten afterwards.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Emit one JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Tab-separated table of sp(n, m) for 1 <= n <= N_MAX, M_MIN <= m <= M_MAX.
    Table { n_max: u64, m_min: u64, m_max: u64 },
    /// List SP(n, m) or OC(n, m), one object per line.
    Enum {
        n: u64,
        #[arg(value_parser = parse_modulus)]
        m: Modulus,
        #[arg(long, value_enum, default_value = "sp")]
        side: Side,
    },
    /// Apply the bijection to one object, e.g. `map 14,3,18,27 3`.
    Map {
        input: String,
        #[arg(value_parser = parse_modulus)]
        m: Modulus,
        #[arg(long, value_enum, default_value = "to-oc")]
        direction: Direction,
    },
    /// Coefficients of the generating function, one `n coefficient` line each.
    Series {
        #[arg(value_parser = parse_modulus)]
        m: Modulus,
        order: usize,
    },
    /// Run one verification family and report PASS or FAIL.
    Check {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, value_parser = parse_modulus)]
        m: Option<Modulus>,
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long)]
        jmax: Option<u64>,
        #[arg(long)]
        vmax: Option<u64>,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Serialize)]
struct CountRecord {
    n: u64,
    m: u64,
    sp: String,
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard { .. } => EXIT_GUARD,
        Error::NotSemiPell(_) | Error::InvalidRunForm(_) | Error::Precondition(_) => EXIT_DOMAIN,
        Error::InvalidArgument(_) => EXIT_USAGE,
        Error::CacheFormat { .. } | Error::Io(_) => EXIT_USAGE,
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, Error> {
    match command {
        Command::Count { n, m, cache, json } => {
            let value = match &cache {
                Some(path) => {
                    let mut store = CacheStore::load(path)?;
                    let v = store.cache_mut(m).sp(n);
                    store.save(path)?;
                    v
                }
                None => CountCache::new(m).sp(n),
            };
            if json {
                let record = CountRecord {
                    n,
                    m: m.get(),
                    sp: value.to_string(),
                };
                let line = serde_json::to_string(&record).expect("plain record serializes");
                writeln!(out, "{line}")?;
            } else {
                writeln!(out, "sp({n},{m}) = {value}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Table {
            n_max,
            m_min,
            m_max,
        } => {
            if n_max == 0 || m_min < 2 || m_min > m_max {
                return Err(Error::InvalidArgument(format!(
                    "table needs N_MAX >= 1 and 2 <= M_MIN <= M_MAX, got {n_max} {m_min} {m_max}"
                )));
            }
            let moduli: Vec<Modulus> = (m_min..=m_max)
                .map(Modulus::new)
                .collect::<Result<_, _>>()?;
            let rows = sp_table(n_max, &moduli);
            let header: Vec<String> = (1..=n_max).map(|n| n.to_string()).collect();
            writeln!(out, "n\t{}", header.join("\t"))?;
            for (m, row) in moduli.iter().zip(rows) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "m={m}\t{}", cells.join("\t"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Enum { n, m, side } => {
            let count = CountCache::new(m).sp(n);
            if count > ENUM_LIMIT.into() {
                return Err(Error::ResourceGuard {
                    what: "enum: object count",
                    size: count.to_u64().unwrap_or(u64::MAX),
                    limit: ENUM_LIMIT,
                });
            }
            match side {
                Side::Sp => {
                    for c in enumerate_sp(n, m) {
                        writeln!(out, "{c}")?;
                    }
                }
                Side::Oc => {
                    for r in enumerate_oc(n, m) {
                        writeln!(out, "{r}")?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Map {
            input,
            m,
            direction,
        } => {
            match direction {
                Direction::ToOc => {
                    let c: Composition = input.parse()?;
                    let r = crate::bijection::to_oc(&c, m)?;
                    writeln!(out, "{r}")?;
                }
                Direction::FromOc => {
                    let r: RunForm = input.parse()?;
                    let c = from_oc(&r, m)?;
                    writeln!(out, "{c}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Series { m, order } => {
            let q = qm_series(m, order);
            for (n, c) in q.coeffs().iter().enumerate() {
                writeln!(out, "{n} {c}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            family,
            m,
            nmax,
            jmax,
            vmax,
            order,
        } => {
            let report = run_check(family, m, nmax, jmax, vmax, order)?;
            writeln!(out, "{report}")?;
            Ok(verdict_code(&report))
        }
    }
}

fn verdict_code(report: &CongruenceReport) -> u8 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn run_check(
    family: Family,
    m: Option<Modulus>,
    nmax: Option<u64>,
    jmax: Option<u64>,
    vmax: Option<u64>,
    order: Option<usize>,
) -> Result<CongruenceReport, Error> {
    let two = Modulus::new(2)?;
    let four = Modulus::new(4)?;
    let report = match family {
        Family::Oddness => check_oddness(nmax.unwrap_or(5000), m.unwrap_or(two)),
        Family::Mod4 => check_mod4_base(nmax.unwrap_or(2000)),
        Family::Mod4General => check_mod4_general(m.unwrap_or(two), jmax.unwrap_or(200)),
        Family::Mod3 => domain(check_mod3(m.unwrap_or(four), jmax.unwrap_or(100)))?,
        Family::PartialSum => {
            domain(check_partial_sum_mod3(m.unwrap_or(four), jmax.unwrap_or(100)))?
        }
        Family::ObParity => check_ob_parity(nmax.unwrap_or(1000)),
        Family::Plateau => check_plateau_identity(vmax.unwrap_or(200), m.unwrap_or(two))?,
        Family::Scaling => {
            let m = m.unwrap_or(two);
            let j_max = u32::try_from(jmax.unwrap_or(12))
                .map_err(|_| Error::InvalidArgument("jmax too large".to_string()))?;
            check_scaling_identity(m, j_max, vmax.unwrap_or(m.get()))?
        }
        Family::Roundtrip => {
            let m = m.unwrap_or(two);
            let n_max = nmax.unwrap_or(40);
            guard_enumeration(n_max, m)?;
            let mut total =
                CongruenceReport::new("roundtrip", vec![("m", m.get()), ("nmax", n_max)]);
            for n in 0..=n_max {
                total.absorb(roundtrip_check(n, m));
            }
            total
        }
        Family::Oracle => {
            let m = m.unwrap_or(two);
            let n_max = nmax.unwrap_or(24);
            let mut total =
                CongruenceReport::new("oracle", vec![("m", m.get()), ("nmax", n_max)]);
            for n in 0..=n_max {
                if n > crate::enumerate::ORACLE_SP_MAX_N {
                    return Err(Error::ResourceGuard {
                        what: "oracle_sp: weight",
                        size: n,
                        limit: crate::enumerate::ORACLE_SP_MAX_N,
                    });
                }
                total.absorb(oracle_check(n, m)?);
            }
            total
        }
        Family::Funceq => check_series(m.unwrap_or(two), order.unwrap_or(512)),
        Family::SpecialCases => check_special_cases(jmax.unwrap_or(200)),
    };
    Ok(report)
}

fn guard_enumeration(n_max: u64, m: Modulus) -> Result<(), Error> {
    let mut cache = CountCache::new(m);
    for n in 0..=n_max {
        let count = cache.sp(n);
        if count > ENUM_LIMIT.into() {
            return Err(Error::ResourceGuard {
                what: "roundtrip: object count",
                size: count.to_u64().unwrap_or(u64::MAX),
                limit: ENUM_LIMIT,
            });
        }
    }
    Ok(())
}

/// Hypothesis failures of a theorem are a domain rejection, not a usage error.
fn domain(r: Result<CongruenceReport, Error>) -> Result<CongruenceReport, Error> {
    r.map_err(|e| match e {
        Error::InvalidArgument(msg) => Error::Precondition(msg),
        other => other,
    })
}

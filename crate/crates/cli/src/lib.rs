//! Command-line front end: `primes`, `valuation`, `entropy`, `sweep`,
//! `codec-bench` and `oracle`.
//!
//! Data goes to standard output or `--out`; diagnostics go to standard error.
//! Exit status is 0 on success, 1 on a runtime failure and 2 on a usage error.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primeinfo::asymptotics::{geometric_schedule, run_sweep};
use primeinfo::codec::{average_codelength, EXHAUSTIVE_BUDGET};
use primeinfo::info::{entropy, kl_divergence};
use primeinfo::oracle::{oracle_check, ORACLE_BUDGET};
use primeinfo::report::{render_report, render_table, write_output, Cell, Destination, Format};
use primeinfo::valuation::sample_uniform_valuations;
use primeinfo::{CodecMode, Error, Geometric, LogBase, PrimeTable, ValuationDist, WeightMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "primeinfo",
    version,
    about = "Information-theoretic experiments on the primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the primes up to a limit.
    Primes {
        #[arg(short = 'n', long, value_parser = parse_count)]
        limit: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Exact (and optionally sampled) valuation laws of Z ~ U([1, N]).
    Valuation {
        #[arg(short = 'n', long, value_parser = parse_count)]
        limit: u64,
        #[command(flatten)]
        primes: PrimeSelection,
        /// Also draw this many uniform samples and tally their exponents.
        #[arg(long, value_parser = parse_count)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Exact and geometric valuation entropies with their divergence.
    Entropy {
        #[arg(short = 'n', long, value_parser = parse_count)]
        limit: u64,
        #[command(flatten)]
        primes: PrimeSelection,
        #[arg(long, value_enum, default_value_t = Base::E)]
        base: Base,
        #[command(flatten)]
        out: Output,
    },
    /// Summaries over a geometric schedule of N.
    Sweep {
        #[arg(long, value_parser = parse_count)]
        min: u64,
        #[arg(long, value_parser = parse_count)]
        max: u64,
        #[arg(long, default_value_t = 10)]
        points_per_decade: u32,
        #[arg(long, value_enum, default_value_t = Base::E)]
        base: Base,
        #[arg(long, value_enum, default_value_t = Weight::Ideal)]
        weight_mode: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// Average codelength of the factorization code.
    CodecBench {
        #[arg(short = 'n', long, value_parser = parse_count)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_count)]
        samples: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Brute-force cross-check up to N (at most 10000).
    Oracle {
        #[arg(value_parser = parse_count, conflicts_with = "limit", required_unless_present = "limit")]
        n: Option<u64>,
        #[arg(short = 'n', long, value_parser = parse_count)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args, Debug)]
struct PrimeSelection {
    /// Restrict to these primes (repeatable); all primes up to N otherwise.
    #[arg(long = "prime", value_parser = parse_count)]
    primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Base {
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weight {
    Ideal,
    Empirical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::E => LogBase::E,
            Base::Two => LogBase::Two,
        }
    }
}

impl From<Weight> for WeightMode {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Ideal => WeightMode::Ideal,
            Weight::Empirical => WeightMode::Empirical,
        }
    }
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

impl Output {
    fn destination(&self) -> Destination {
        self.out
            .clone()
            .map_or(Destination::Stdout, Destination::Path)
    }
}

/// Accepts `1000000`, `1e6`, `10^6` and `1_000_000`.
fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.replace('_', "");
    let bad = || format!("{s:?} is not a nonnegative integer");
    if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return b
            .checked_pow(e)
            .ok_or_else(|| format!("{s} overflows 64 bits"));
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return 10u64
            .checked_pow(e)
            .and_then(|p| p.checked_mul(m))
            .ok_or_else(|| format!("{s} overflows 64 bits"));
    }
    t.parse().map_err(|_| bad())
}

enum Failure {
    Usage(String),
    Runtime {
        op: &'static str,
        err: Error,
    },
    /// A verification ran to completion and found a mismatch.
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}"),
            Failure::Runtime { op, err } => write!(f, "{op}: {err}"),
            Failure::Check(msg) => f.write_str(msg),
        }
    }
}

trait Context<T> {
    fn during(self, op: &'static str) -> Result<T, Failure>;
}

impl<T> Context<T> for primeinfo::Result<T> {
    fn during(self, op: &'static str) -> Result<T, Failure> {
        self.map_err(|err| Failure::Runtime { op, err })
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("primeinfo: {f}");
            match f {
                Failure::Usage(_) => EXIT_USAGE,
                Failure::Runtime { .. } | Failure::Check(_) => EXIT_RUNTIME,
            }
        }
    }
}

fn with_threads<T: Send>(
    threads: usize,
    job: impl FnOnce() -> Result<T, Failure> + Send,
) -> Result<T, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("--threads {threads}: {e}")))?;
    pool.install(job)
}

fn sieve(limit: u64) -> Result<PrimeTable, Failure> {
    PrimeTable::sieve(limit).during("sieve")
}

fn emit(text: primeinfo::Result<String>, out: &Output) -> Result<(), Failure> {
    write_output(&text.during("emit_report")?, &out.destination()).during("emit_report")
}

fn selected_primes(sel: &PrimeSelection, n: u64, table: &PrimeTable) -> Result<Vec<u64>, Failure> {
    if sel.primes.is_empty() {
        return Ok(table.iter().take_while(|&p| p <= n).collect());
    }
    for &p in &sel.primes {
        if p > n || !table.is_prime(p).during("sieve")? {
            return Err(Failure::Usage(format!(
                "--prime {p} is not a prime <= --limit {n}"
            )));
        }
    }
    Ok(sel.primes.clone())
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Primes { limit, out } => with_threads(out.threads, || {
            let table = sieve(limit)?;
            let rows: Vec<Vec<Cell>> = table.iter().map(|p| vec![Cell::Int(p)]).collect();
            if rows.is_empty() {
                // Header only: there is no prime below 2.
                return emit(Ok("p\n".to_owned()), &out);
            }
            emit(render_table(&["p"], &rows, out.format.into()), &out)
        }),
        Command::Valuation {
            limit,
            primes,
            samples,
            seed,
            out,
        } => with_threads(out.threads, || {
            if limit == 0 {
                return Err(Failure::Usage("--limit must be at least 1".into()));
            }
            let table = sieve(limit)?;
            let primes = selected_primes(&primes, limit, &table)?;
            if primes.is_empty() {
                return Err(Failure::Usage(format!("no primes up to --limit {limit}")));
            }
            let sampled = match samples {
                Some(0) => return Err(Failure::Usage("--samples must be at least 1".into())),
                Some(s) => Some(
                    sample_uniform_valuations(limit, &primes, s, seed)
                        .during("sample_uniform_valuations")?,
                ),
                None => None,
            };
            let mut rows = Vec::new();
            for (i, &p) in primes.iter().enumerate() {
                let dist = ValuationDist::exact(p, limit).during("exact_valuation_dist")?;
                for k in 0..=dist.kmax() {
                    rows.push(vec![
                        Cell::Int(p),
                        Cell::Int(k as u64),
                        Cell::Int(dist.count(k)),
                        Cell::Real(dist.count(k) as f64 / limit as f64),
                        sampled
                            .as_ref()
                            .map_or(Cell::Null, |s| Cell::Int(s.per_prime[i].count(k))),
                    ]);
                }
            }
            let header = ["p", "k", "count", "probability", "sampled_count"];
            emit(render_table(&header, &rows, out.format.into()), &out)
        }),
        Command::Entropy {
            limit,
            primes,
            base,
            out,
        } => with_threads(out.threads, || {
            if limit == 0 {
                return Err(Failure::Usage("--limit must be at least 1".into()));
            }
            let base = LogBase::from(base);
            let table = sieve(limit)?;
            let primes = selected_primes(&primes, limit, &table)?;
            if primes.is_empty() {
                return Err(Failure::Usage(format!("no primes up to --limit {limit}")));
            }
            let mut rows = Vec::new();
            for p in primes {
                let dist = ValuationDist::exact(p, limit).during("exact_valuation_dist")?;
                let model = Geometric::from_mean(&dist.mean()).during("geometric_from_mean")?;
                let exact = (&dist).into();
                rows.push(vec![
                    Cell::Int(p),
                    Cell::Real(dist.mean_f64()),
                    Cell::Real(1.0 / (p - 1) as f64),
                    Cell::Real((limit / p) as f64 / limit as f64),
                    Cell::Real(1.0 / p as f64),
                    Cell::Real(entropy(&exact, base)),
                    Cell::Real(entropy(&model.clone().into(), base)),
                    Cell::Real(kl_divergence(&exact, &model, base).during("kl_divergence")?),
                ]);
            }
            let header = [
                "p",
                "mean_valuation",
                "limit_mean",
                "divisibility",
                "limit_divisibility",
                "entropy_exact",
                "entropy_geometric",
                "kl_divergence",
            ];
            emit(render_table(&header, &rows, out.format.into()), &out)
        }),
        Command::Sweep {
            min,
            max,
            points_per_decade,
            base,
            weight_mode,
            out,
        } => {
            let schedule = geometric_schedule(min, max, points_per_decade)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            with_threads(out.threads, || {
                let table = sieve(max)?;
                let series = run_sweep(&schedule, &table, base.into(), weight_mode.into())
                    .during("run_sweep")?;
                emit(render_report(&series, out.format.into()), &out)
            })
        }
        Command::CodecBench {
            limit,
            mode,
            seed,
            samples,
            out,
        } => {
            let mode = match mode {
                Mode::Exhaustive => {
                    if samples.is_some() {
                        return Err(Failure::Usage("--samples needs --mode monte-carlo".into()));
                    }
                    if limit > EXHAUSTIVE_BUDGET {
                        return Err(Failure::Usage(format!(
                            "--limit {limit} is over {EXHAUSTIVE_BUDGET} for --mode exhaustive; use --mode monte-carlo"
                        )));
                    }
                    CodecMode::Exhaustive
                }
                Mode::MonteCarlo => CodecMode::MonteCarlo {
                    seed,
                    samples: samples.unwrap_or(DEFAULT_SAMPLES),
                },
            };
            if limit == 0 {
                return Err(Failure::Usage("--limit must be at least 1".into()));
            }
            if samples == Some(0) {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            with_threads(out.threads, || {
                let table = sieve(limit)?;
                let report =
                    average_codelength(limit, &table, mode).during("average_codelength")?;
                emit(render_report(&[report], out.format.into()), &out)
            })
        }
        Command::Oracle { n, limit, threads } => {
            let n = n.or(limit).expect("clap requires one of them");
            if n == 0 || n > ORACLE_BUDGET {
                return Err(Failure::Usage(format!(
                    "oracle N = {n} must lie in [1, {ORACLE_BUDGET}]"
                )));
            }
            with_threads(threads, || {
                let table = sieve(n)?;
                let report = oracle_check(n, &table).during("oracle_check")?;
                println!("{report}");
                if report.passed() {
                    Ok(())
                } else {
                    Err(Failure::Check(
                        "oracle_check: brute-force cross-check failed".into(),
                    ))
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert_eq!(parse_count("10^4"), Ok(10_000));
        assert_eq!(parse_count("2_500"), Ok(2500));
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e30").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

//! `lcmlab`: sweeps, verification runs, single-prime dumps and oracle
//! comparisons for the lcm of polynomial values.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcmlab_core::aggregate::{self, BoundRule, SweepOutcome};
use lcmlab_core::analysis::{self, CheckName, CheckOptions};
use lcmlab_core::sieve::{self, factor};
use lcmlab_core::{modular, oracle, IntPoly, Irreducibility, LedgerOptions};
use serde_json::json;

use config::{ConfigError, ConfigResult, FileConfig, Format};

/// Version of every JSON document this tool writes.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "lcmlab", version, about = "Exact lcm and prime-exponent ledgers of polynomial values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// TOML file with any of: poly, n, bound, seed, workers, out, format, checks
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polynomial, e.g. "x^3 - 2*x + 7" or "7,-2,0,1"
    #[arg(long)]
    poly: Option<String>,
    /// Seed for root splitting and rho (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads or "auto"; LCMLAB_WORKERS overrides
    #[arg(long)]
    workers: Option<String>,
    /// Sieve bound: "DN" (default) or an integer >= D*N
    #[arg(long)]
    bound: Option<String>,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One CSV/JSON/NDJSON record per N
    Sweep {
        #[command(flatten)]
        common: Common,
        /// "10,100,1000" or "geom:start:end:ratio"
        #[arg(long)]
        n: Option<String>,
        /// csv (default), json or ndjson
        #[arg(long)]
        format: Option<String>,
        /// Write 0 in the seconds column so output is reproducible byte for byte
        #[arg(long)]
        no_timing: bool,
    },
    /// Run lemma and identity checks at one N; JSON output
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        /// Comma-separated check names or "all"
        #[arg(long)]
        checks: Option<String>,
        /// Random cases for the divided-difference suite
        #[arg(long, default_value_t = 1000)]
        identity_cases: usize,
        /// Random cases per (d, i, l) for the symmetric-sum ratio suite
        #[arg(long, default_value_t = 1000)]
        amgm_cases: usize,
    },
    /// Dump the per-prime data of one prime
    Local {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: u64,
    },
    /// Compare the sieve pipeline with the brute-force oracle (N <= 10^4)
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
    },
    /// Random trials of the divided-difference identity and the ratio bound
    Identity {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

/// Flags merged over the config file.
struct Resolved {
    file: FileConfig,
    poly_text: Option<String>,
    seed: u64,
    workers: usize,
    bound: BoundRule,
    out: Option<PathBuf>,
}

impl Resolved {
    fn new(c: &Common) -> ConfigResult<Self> {
        let file = match &c.config {
            Some(path) => config::load_file(path)?,
            None => FileConfig::default(),
        };
        let workers_text = std::env::var("LCMLAB_WORKERS")
            .ok()
            .filter(|s| !s.trim().is_empty())
            .or_else(|| c.workers.clone())
            .or_else(|| file.workers.as_ref().map(|w| w.to_string()));
        let workers = match workers_text {
            Some(t) => config::parse_workers(&t)?,
            None => 0,
        };
        let bound = match c.bound.clone().or_else(|| file.bound.as_ref().map(|b| b.to_string())) {
            Some(t) => config::parse_bound(&t)?,
            None => BoundRule::ZoneTimesN,
        };
        Ok(Resolved {
            poly_text: c.poly.clone().or_else(|| file.poly.clone()),
            seed: c.seed.or(file.seed).unwrap_or(0),
            workers,
            bound,
            out: c.out.clone().or_else(|| file.out.clone()),
            file,
        })
    }

    fn poly(&self) -> ConfigResult<IntPoly> {
        match &self.poly_text {
            Some(t) => config::parse_poly(t),
            None => Err(ConfigError("missing --poly".to_string())),
        }
    }

    fn schedule(&self, flag: &Option<String>) -> ConfigResult<Vec<u64>> {
        match (flag, &self.file.n) {
            (Some(t), _) => config::parse_schedule(t),
            (None, Some(s)) => config::schedule_from(s),
            (None, None) => Err(ConfigError("missing --n".to_string())),
        }
    }

    fn single_n(&self, flag: &Option<String>) -> ConfigResult<u64> {
        match self.schedule(flag)?[..] {
            [n] => Ok(n),
            _ => Err(ConfigError("this command takes a single N".to_string())),
        }
    }

    fn ledger_options(&self) -> LedgerOptions {
        LedgerOptions {
            bound: match self.bound {
                BoundRule::ZoneTimesN => None,
                BoundRule::Fixed(b) => Some(b),
            },
            workers: self.workers,
            seed: self.seed,
            ..LedgerOptions::default()
        }
    }

    fn writer(&self) -> ConfigResult<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
                ConfigError(format!("cannot create {}: {e}", path.display()))
            })?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn warn_about(f: &IntPoly) {
    if f.degree() < 2 {
        eprintln!("warning: degree 1: ratio columns are NaN and lemma checks do not apply");
        return;
    }
    match f.profile() {
        Ok(p) => match p.irreducibility {
            Irreducibility::Reducible => {
                eprintln!("warning: reducible: conjecture ratios not meaningful")
            }
            Irreducibility::Assumed => eprintln!(
                "warning: irreducibility assumed, not proved (no certifying prime below 200)"
            ),
            Irreducibility::Proved => {}
        },
        Err(e) => eprintln!("warning: {e}; lemma checks are not meaningful"),
    }
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()
}

fn cmd_sweep(common: &Common, n: &Option<String>, format: &Option<String>, no_timing: bool) -> ConfigResult<ExitCode> {
    let r = Resolved::new(common)?;
    let f = r.poly()?;
    let schedule = r.schedule(n)?;
    let format = match format.clone().or_else(|| r.file.format.clone()) {
        Some(t) => config::parse_format(&t)?,
        None => Format::Csv,
    };
    config::check_bound(&f, r.bound, &schedule)?;
    warn_about(&f);
    let mut out = r.writer()?;
    let header = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "poly": f.to_string(),
        "degree": f.degree(),
        "D": f.zone_constant()?,
        "seed": r.seed,
        "bound": config::bound_label(r.bound),
    });
    match format {
        Format::Csv => {
            writeln!(
                out,
                "# lcmlab sweep poly=\"{f}\" seed={} bound={} logs=natural",
                r.seed,
                config::bound_label(r.bound)
            )?;
            writeln!(out, "{}", aggregate::csv_header())?;
        }
        Format::Ndjson => writeln!(out, "{header}")?,
        Format::Json => {}
    }
    out.flush()?;

    let mut io_error: Option<io::Error> = None;
    let mut records = Vec::new();
    let mut gaps = Vec::new();
    let opts = r.ledger_options();
    let outcomes = aggregate::sweep(&f, &schedule, r.bound, &opts, |o: &SweepOutcome| {
        let line = match &o.result {
            Ok(rec) => {
                let mut rec = rec.clone();
                if no_timing {
                    rec.seconds = 0.0;
                }
                let line = match format {
                    Format::Csv => aggregate::csv_row(&rec),
                    _ => serde_json::to_string(&rec).expect("record serializes"),
                };
                records.push(rec);
                line
            }
            Err(e) => {
                eprintln!("error at N = {}: {e}", o.n);
                gaps.push(json!({"N": o.n, "error": e.to_string()}));
                match format {
                    Format::Csv => format!("# gap N={}: {e}", o.n),
                    _ => json!({"N": o.n, "error": e.to_string()}).to_string(),
                }
            }
        };
        if format != Format::Json && io_error.is_none() {
            if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
                io_error = Some(e);
            }
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if format == Format::Json {
        let mut doc = header;
        doc["records"] = serde_json::to_value(&records)?;
        doc["gaps"] = serde_json::Value::Array(gaps);
        write_json(&mut out, &doc)?;
    }
    let failed = outcomes.iter().filter(|o| o.result.is_err()).count();
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_verify(
    common: &Common,
    n: &Option<String>,
    checks: &Option<String>,
    identity_cases: usize,
    amgm_cases: usize,
) -> ConfigResult<ExitCode> {
    let r = Resolved::new(common)?;
    let checks_text = match (checks, &r.file.checks) {
        (Some(t), _) => t.clone(),
        (None, Some(config::Schedule::Text(t))) => t.clone(),
        (None, Some(_)) => return Err(ConfigError("checks must be a string".to_string())),
        (None, None) => "all".to_string(),
    };
    let names = CheckName::parse_list(&checks_text)?;
    let f = r.poly()?;
    let n = r.single_n(n)?;
    config::check_bound(&f, r.bound, &[n])?;
    warn_about(&f);
    // hit positions for every prime let the checks locate their empirical N₀
    let opts = LedgerOptions {
        hits_above: Some(1),
        ..r.ledger_options()
    };
    let ledger = match sieve::build_ledger(&f, n, &opts) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let check_opts = CheckOptions {
        seed: r.seed,
        identity_cases,
        amgm_cases,
        ..CheckOptions::default()
    };
    let reports = analysis::run_checks(&ledger, &names, &check_opts);
    let all_pass = reports.iter().all(|rep| rep.passed());
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "config": {
            "poly": f.to_string(),
            "N": n,
            "bound": config::bound_label(r.bound),
            "seed": r.seed,
            "checks": names.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
        },
        "reports": reports,
    });
    write_json(&mut r.writer()?, &doc)?;
    for rep in reports.iter().filter(|rep| !rep.passed()) {
        eprintln!("{}: {} violations", rep.check_name, rep.violations.len());
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_local(common: &Common, n: &Option<String>, p: u64) -> ConfigResult<ExitCode> {
    let r = Resolved::new(common)?;
    let f = r.poly()?;
    let n = r.single_n(n)?;
    if n == 0 {
        return Err(ConfigError("N must be at least 1".to_string()));
    }
    if !factor::is_prime_u64(p) {
        return Err(ConfigError(format!("{p} is not prime")));
    }
    let cap = f.max_abs_on_range(n);
    let data = sieve::local_data(&f, p, n, &cap);
    let roots = modular::roots_mod_p_seeded(&f, p, r.seed);
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "local",
        "poly": f.to_string(),
        "N": n,
        "p": p,
        "seed": r.seed,
        "rho": roots.len(),
        "roots_mod_p": roots,
        "data": data,
    });
    write_json(&mut r.writer()?, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(common: &Common, n: &Option<String>) -> ConfigResult<ExitCode> {
    let r = Resolved::new(common)?;
    let f = r.poly()?;
    let n = r.single_n(n)?;
    config::check_bound(&f, r.bound, &[n])?;
    let want = oracle::naive_run(&f, n)?;
    let got = match sieve::build_ledger(&f, n, &r.ledger_options()) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let mut diff = oracle::ledger_diff(&got, &want.ledger);
    if got.lcm() != want.lcm_value {
        diff.push("lcm differs".to_string());
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "oracle-check",
        "poly": f.to_string(),
        "N": n,
        "seed": r.seed,
        "primes": got.entries.len(),
        "identical": diff.is_empty(),
        "differences": diff,
    });
    write_json(&mut r.writer()?, &doc)?;
    for line in &diff {
        eprintln!("{line}");
    }
    Ok(if diff.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_identity(common: &Common, cases: usize, max_degree: usize) -> ConfigResult<ExitCode> {
    let r = Resolved::new(common)?;
    if max_degree == 0 {
        return Err(ConfigError("max-degree must be at least 1".to_string()));
    }
    let reports = vec![
        analysis::identity_suite(r.seed, cases, max_degree),
        analysis::amgm_suite(r.seed, cases, max_degree),
    ];
    let ok = reports.iter().all(|rep| rep.passed());
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "identity",
        "seed": r.seed,
        "cases": cases,
        "max_degree": max_degree,
        "reports": reports,
    });
    write_json(&mut r.writer()?, &doc)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Sweep { common, n, format, no_timing } => cmd_sweep(common, n, format, *no_timing),
        Command::Verify { common, n, checks, identity_cases, amgm_cases } => {
            cmd_verify(common, n, checks, *identity_cases, *amgm_cases)
        }
        Command::Local { common, n, p } => cmd_local(common, n, *p),
        Command::OracleCheck { common, n } => cmd_oracle_check(common, n),
        Command::Identity { common, cases, max_degree } => cmd_identity(common, *cases, *max_degree),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

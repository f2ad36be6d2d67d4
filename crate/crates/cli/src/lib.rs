//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 usage or invalid input, 2 size guard,
//! 3 internal inconsistency (route disagreement, failed certificate).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use terracini_core::certificates::{
    case_bounds, case_check, certify_v23, CaseCheckInput, CertifyConfig,
};
use terracini_core::field::DEFAULT_PRIME;
use terracini_core::interpolation::{interp_dim, InterpConfig};
use terracini_core::terracini::{
    grassmann_defect, scan, secant_dim, Route, ScanConfig, SecantQuery, DEFAULT_SEED,
};
use terracini_core::varieties::DEFAULT_MONOMIAL_GUARD;
use terracini_core::{ArithmeticDomain, Error};

pub mod range;
pub mod report;

pub use range::{parse_range, RangeError};
pub use report::{decode_report, Format, Output, QueryReport, ScanReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainChoice {
    Prime,
    Rational,
    /// Prime field, with a rational re-check of flagged defects.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    Segre,
    Both,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Direct => Route::Direct,
            RouteArg::Segre => Route::Segre,
            RouteArg::Both => Route::Both,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Base seed of every random draw
    #[arg(long, global = true, env = "TERRACINI_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Independent samples per rank test
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = DomainChoice::Auto)]
    pub domain: DomainChoice,
    /// Modulus of the prime field
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    /// Largest number of monomials (ambient dimension plus one) accepted
    #[arg(long, global = true, default_value_t = DEFAULT_MONOMIAL_GUARD)]
    pub size_guard: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub output: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

impl RunConfig {
    pub fn arithmetic(&self) -> Result<ArithmeticDomain, Error> {
        let dom = match self.domain {
            DomainChoice::Rational => ArithmeticDomain::Rational,
            DomainChoice::Prime | DomainChoice::Auto => ArithmeticDomain::PrimeField(self.prime),
        };
        dom.validate()?;
        Ok(dom)
    }

    fn recheck(&self) -> bool {
        self.domain == DomainChoice::Auto
    }

    fn query(&self, n: usize, d: u32, k: usize, h: usize) -> Result<SecantQuery, Error> {
        Ok(SecantQuery::grassmann(n, d, k, h)
            .with_seed(self.seed)
            .with_trials(self.trials as usize)
            .with_domain(self.arithmetic()?)
            .with_rational_recheck(self.recheck())
            .with_guard(self.size_guard))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "terracini",
    version,
    about = "Secant and Grassmann-secant defects of Veronese varieties"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the h-th secant variety of V_{n,d}
    Secant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        h: usize,
    },
    /// Grassmann defect of (k, h) for V_{n,d}
    Grassmann {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
    },
    /// Both-route Grassmann defects over a (d, h) grid
    Scan {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Degrees, e.g. 2..6
        #[arg(long, value_parser = parse_range::<u32>)]
        d: std::ops::RangeInclusive<u32>,
        /// Secant indices, e.g. 1..12
        #[arg(long, value_parser = parse_range::<usize>)]
        h: std::ops::RangeInclusive<usize>,
    },
    /// Plane curves of degree d with assigned general double points
    Interp {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        points: usize,
    },
    /// Pencil of plane cubics with a fixed conic through five points
    Certify {
        /// Number of seeds, starting at --seed
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        seeds: u64,
    },
    /// Base-curve inequalities for a hypothesized defect
    Casecheck {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        delta: u32,
    },
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, Error> {
    let cfg = &cli.config;
    Ok(match &cli.command {
        Command::Secant { n, d, h } => {
            let q = cfg.query(*n, *d, 0, *h)?;
            Output::Query(QueryReport::from_secant(secant_dim(&q)?))
        }
        Command::Grassmann { n, d, k, h, route } => {
            let q = cfg.query(*n, *d, *k, *h)?;
            let route = Route::from(*route);
            Output::Query(QueryReport::from_grassmann(
                grassmann_defect(&q, route)?,
                route,
            ))
        }
        Command::Scan { n, k, d, h } => {
            let mut sc = ScanConfig::new(*k, d.clone(), h.clone());
            sc.n = *n;
            sc.trials = cfg.trials as usize;
            sc.seed = cfg.seed;
            sc.domain = cfg.arithmetic()?;
            sc.rational_recheck = cfg.recheck();
            sc.monomial_guard = cfg.size_guard;
            sc.jobs = cfg.jobs.map(|j| j as usize);
            let cells = scan(&sc)?;
            Output::Scan(ScanReport {
                n: *n,
                k: *k,
                seed: cfg.seed,
                domain: sc.domain,
                trials: sc.trials,
                rows: cells.iter().map(Into::into).collect(),
            })
        }
        Command::Interp { n, d, points } => {
            let ic = InterpConfig {
                n: *n,
                trials: cfg.trials as usize,
                seed: cfg.seed,
                domain: cfg.arithmetic()?,
                monomial_guard: cfg.size_guard,
            };
            Output::Interp(interp_dim(*d, *points, &ic)?)
        }
        Command::Certify { seeds } => {
            let domain = cfg.arithmetic()?;
            let runs = (0..*seeds)
                .map(|i| {
                    certify_v23(&CertifyConfig {
                        seed: cfg.seed.wrapping_add(i),
                        domain,
                        ..CertifyConfig::default()
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let passed = runs.iter().all(|r| r.passed());
            Output::Certify(report::CertifyReport { runs, passed })
        }
        Command::Casecheck { d, m, h, delta } => {
            let input = CaseCheckInput::new(*d, *m, *h, *delta)?;
            let b = case_bounds(*d, *m);
            Output::Case(report::CaseReport {
                input,
                verdict: case_check(&input),
                h_max: b.h_max,
                delta_min: b.delta_min.to_string(),
                delta_max: b.delta_max.to_string(),
            })
        }
    })
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_guard() {
        EXIT_GUARD
    } else if err.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USAGE
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let code = match &output {
        Output::Certify(r) if !r.passed => EXIT_INTERNAL,
        _ => EXIT_OK,
    };
    if let Err(e) = emit(&cli.config, &output, stdout) {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_USAGE;
    }
    code
}

fn emit(cfg: &RunConfig, output: &Output, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let text = output.render(cfg.output)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

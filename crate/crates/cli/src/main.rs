mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use alvero_core::groebner::MonomialOrder;
use config::{Format, RunConfig};

/// Exit codes: 0 success, 1 check failed, 2 invalid arguments, 3 budget exhausted, 4 other errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(alvero_core::Error),
}

impl From<alvero_core::Error> for CliError {
    fn from(e: alvero_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use alvero_core::Error::*;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(InvalidArgument(_) | Parse { .. } | AmbientMismatch { .. }) => 2,
            CliError::Core(BudgetExceeded { .. }) => 3,
            CliError::Core(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e @ alvero_core::Error::BudgetExceeded { .. }) => {
                format!("{e}; raise it with --budget or ALVERO_BUDGET")
            }
            CliError::Core(e) => e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "alvero", version, about = "Resultants, Groebner-basis certificates and root searches around the Casas-Alvero conjecture")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Flat key = value configuration file.
    #[arg(long, global = true, env = "ALVERO_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = ["lex", "grevlex"])]
    order: Option<String>,
    /// Step budget for exact computations.
    #[arg(long, global = true, env = "ALVERO_BUDGET")]
    budget: Option<u64>,
    #[arg(long, global = true, env = "ALVERO_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Disable the Groebner-basis cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Track cofactor certificates for ideal memberships.
    #[arg(long, global = true)]
    certificates: bool,
    #[arg(long, global = true)]
    cluster_tol: Option<f64>,
    #[arg(long, global = true)]
    residual_target: Option<f64>,
    #[arg(long, global = true)]
    gap_threshold: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print R_1, ..., R_(d-1).
    Resultants {
        #[arg(long)]
        degree: usize,
    },
    /// Check that every a_j lies in the radical of (R_1, ..., R_(d-1)).
    Verify {
        #[arg(long)]
        degree: usize,
    },
    /// Check that R_i is outside the radical of the other resultants for i in {d-3, d-2, d-1}.
    Theorem {
        #[arg(long)]
        degree: usize,
    },
    /// Search for an almost counterexample of the given level and verify it.
    Ace {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Interlacing of f and H_1(f) over a seeded corpus of real-rooted polynomials.
    Interlace {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Quotient dimensions along prefixes of the resultant family.
    Regseq {
        #[arg(long)]
        degree: usize,
        /// Comma-separated ordering of 1..d-1; defaults to every ordering when d <= 4.
        #[arg(long, value_delimiter = ',')]
        permutation: Option<Vec<usize>>,
    },
}

fn resolve(g: &GlobalArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        cfg.apply_file(path)?;
    }
    if let Some(o) = &g.order {
        cfg.order = o.parse::<MonomialOrder>().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(b) = g.budget {
        cfg.budget = b;
    }
    if let Some(dir) = &g.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if g.no_cache {
        cfg.cache_dir = None;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if g.jobs.is_some() {
        cfg.jobs = g.jobs;
    }
    if g.format.is_some() {
        cfg.format = g.format;
    }
    if g.certificates {
        cfg.certificates = true;
    }
    if let Some(v) = g.cluster_tol {
        cfg.cluster_tol = v;
    }
    if let Some(v) = g.residual_target {
        cfg.residual_target = v;
    }
    if let Some(v) = g.gap_threshold {
        cfg.gap_threshold = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = resolve(&cli.global)?;
    if let Some(j) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    let out = match cli.command {
        Command::Resultants { degree } => commands::resultants(degree, &cfg)?,
        Command::Verify { degree } => commands::verify(degree, &cfg)?,
        Command::Theorem { degree } => commands::theorem(degree, &cfg)?,
        Command::Ace { degree, level, restarts } => commands::ace(degree, level, restarts, &cfg)?,
        Command::Interlace { count, max_degree, tol } => commands::interlace(count, max_degree, tol, &cfg)?,
        Command::Regseq { degree, permutation } => commands::regseq(degree, permutation, &cfg)?,
    };
    print!("{}", out.text);
    Ok(out.verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("alvero: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polydiam::checks::CheckGroup;
use polydiam::instances::InstanceSpec;
use polydiam::report::{
    analyze, error_exit_code, sweep, sweep_instances, AnalyzeOptions, BoundReport, EXIT_OK, EXIT_USAGE,
};
use polydiam::Error;

#[derive(Parser)]
#[command(name = "polydiam", version, about = "Diameters, sub-determinants and normal-fan checks for integral polyhedra")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance in the text format.
    Gen {
        /// cube:N, simplex:N, cross:N, transport:RxS, random:N,M,ENTRY,SEED
        spec: InstanceSpec,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the full pipeline on one instance.
    Analyze {
        spec: InstanceSpec,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a named subset of checks on one instance.
    Lemmas {
        spec: InstanceSpec,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<CheckGroup>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Analyze a family over a range of n and write one CSV row per instance.
    Sweep {
        /// cube, simplex, cross, transport (2 x n) or random
        family: String,
        /// Inclusive range such as 2..5
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Largest entry for random instances.
        #[arg(long, default_value_t = 2)]
        max_entry: i64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Monte Carlo samples for volumes and for each facet area.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = polydiam::subdet::DEFAULT_MINOR_BUDGET)]
    budget_minors: u128,
    #[arg(long, default_value_t = polydiam::polyhedron::DEFAULT_BASIS_BUDGET)]
    budget_bases: u128,
    /// Exact checks only.
    #[arg(long)]
    skip_mc: bool,
    /// Write the JSON report to this path, or to stdout with `-`.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
    /// BFS sources used by prefix checks.
    #[arg(long, default_value_t = 16)]
    sources: usize,
}

impl RunArgs {
    fn options(&self, groups: Option<Vec<CheckGroup>>) -> AnalyzeOptions {
        AnalyzeOptions {
            volume_samples: self.samples,
            facet_samples: self.samples,
            seed: self.seed,
            minor_budget: self.budget_minors,
            basis_budget: self.budget_bases,
            skip_mc: self.skip_mc,
            groups,
            max_sources: self.sources,
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a = a.parse().map_err(|_| format!("bad lower end '{a}'"))?;
    let b = b.trim_start_matches('=').parse().map_err(|_| format!("bad upper end '{b}'"))?;
    Ok((a, b))
}

fn emit(report: &BoundReport, json: Option<&PathBuf>) -> polydiam::Result<i32> {
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()?),
        Some(p) => {
            fs::write(p, report.to_json()?)?;
            print!("{}", report.render_table());
        }
        None => print!("{}", report.render_table()),
    }
    Ok(report.exit_code())
}

fn execute(cli: Cli) -> polydiam::Result<i32> {
    match cli.command {
        Command::Gen { spec, output } => {
            let text = spec.generate()?;
            match output {
                Some(p) => fs::write(p, text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Analyze { spec, run } => emit(&analyze(&spec, &run.options(None))?, run.json.as_ref()),
        Command::Lemmas { spec, checks, run } => emit(&analyze(&spec, &run.options(Some(checks)))?, run.json.as_ref()),
        Command::Sweep { family, n, trials, max_entry, csv, run } => {
            let specs = sweep_instances(&family, n.0..=n.1, trials, max_entry, run.seed)?;
            let opts = run.options(None);
            match csv {
                Some(p) => sweep(&specs, &opts, fs::File::create(p)?),
                None => sweep(&specs, &opts, std::io::stdout().lock()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}

// clap needs `FromStr` errors that implement `Error + Send + Sync`.
const _: fn() = || {
    fn assert<E: std::error::Error + Send + Sync + 'static>() {}
    assert::<Error>();
};

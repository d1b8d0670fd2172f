use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use smsemoa::harness::config::RawSettings;
use smsemoa::harness::verify::run_self_check;
use smsemoa::harness::{run_experiment, ExperimentOutcome};
use smsemoa::oracle::OracleBudget;
use smsemoa::{Error, ProblemInstance};

#[derive(Parser)]
#[command(name = "smsemoa", version, about = "SMS-EMOA and GSEMO runtime experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded repetitions until the Pareto front is covered.
    Run(Box<RunArgs>),
    /// Check closed forms and hypervolume code against brute-force oracles.
    Verify(VerifyArgs),
    /// Print the Pareto front of a problem.
    Front {
        #[arg(long)]
        problem: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value file; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// e.g. `mojzj:n=12,m=4,k=2`, `momm:n=8,m=4`, `omm:n=20`, `lotz:n=20`.
    #[arg(long)]
    problem: Option<String>,
    /// sms | gsemo
    #[arg(long)]
    algo: Option<String>,
    /// Population size or `auto`.
    #[arg(long)]
    mu: Option<String>,
    /// standard | heavy
    #[arg(long)]
    mutation: Option<String>,
    /// Power-law exponent of heavy-tailed mutation.
    #[arg(long)]
    beta: Option<String>,
    /// standard | stochastic
    #[arg(long)]
    update: Option<String>,
    /// Comma-separated reference point, default all -1.
    #[arg(long, allow_hyphen_values = true)]
    refpoint: Option<String>,
    #[arg(long)]
    reps: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Iteration cap or `auto` (100 times the runtime bound).
    #[arg(long)]
    max_iters: Option<String>,
    /// Output file; `.json` writes JSON, otherwise CSV.
    #[arg(long)]
    out: Option<String>,
    /// Compare the mean runtime with the closed-form bound.
    #[arg(long)]
    bounds: bool,
    /// Write 0 in the `seconds` column for byte-reproducible output.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    threads: Option<String>,
}

impl RunArgs {
    fn settings(self) -> Result<RawSettings, Error> {
        let file = match &self.config {
            Some(path) => RawSettings::from_file(path)?,
            None => RawSettings::default(),
        };
        let cli = RawSettings {
            problem: self.problem,
            algo: self.algo,
            mu: self.mu,
            mutation: self.mutation,
            beta: self.beta,
            update: self.update,
            refpoint: self.refpoint,
            reps: self.reps,
            seed: self.seed,
            max_iters: self.max_iters,
            out: self.out,
            bounds: self.bounds.then(|| "true".into()),
            timing: self.no_timing.then(|| "false".into()),
            threads: self.threads,
        };
        Ok(cli.over(file))
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n enumerated exhaustively.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 200_000)]
    mc_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(Error),
    Run(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e)
        } else {
            Failure::Run(e)
        }
    }
}

fn print_outcome(out: &ExperimentOutcome) {
    let s = &out.summary;
    println!("runs: {}  censored: {}", s.runs, s.censored);
    println!("iterations: mean {:.1}  median {:.1}  95% CI ±{:.1}", s.mean, s.median, s.ci_half_width);
    if let Some(report) = &out.bounds {
        if report.rows.is_empty() {
            println!("bounds: none applicable");
        }
        for row in &report.rows {
            println!(
                "bound {}: {:.1}  mean+ci {:.1}  {}{}",
                row.name,
                row.value,
                row.mean + row.ci_half_width,
                if row.pass { "PASS" } else { "FAIL" },
                if row.mu_condition { "" } else { "  (mu below the bound's hypothesis)" }
            );
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run(args) => {
            let spec = (*args).settings()?.resolve()?;
            let out = run_experiment(&spec)?;
            print_outcome(&out);
        }
        Command::Verify(args) => {
            let budget = OracleBudget::new(args.max_n, args.mc_samples)?;
            let outcomes = run_self_check(&budget, args.seed)?;
            for o in &outcomes {
                println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::Verification);
            }
        }
        Command::Front { problem } => {
            let inst: ProblemInstance = problem.parse()?;
            let front = inst.pareto_front();
            println!("# {inst}: {} points", front.size());
            for p in front.points() {
                println!("{p}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}

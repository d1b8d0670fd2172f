//! Seeded repetitions of a configured run, written as CSV or JSON rows,
//! with summary statistics and comparison against the runtime bounds.

pub mod bounds;
pub mod config;
pub mod stats;
pub mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Instant;

use log::{info, warn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{self, Algorithm, AlgorithmConfig};
use crate::benchmarks::ProblemInstance;
use crate::error::{invalid, Result};
use crate::selection::ReferencePoint;

pub use bounds::{bound_value, default_max_iterations, Theorem};
pub use config::RawSettings;
pub use stats::Summary;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemInstance,
    pub algorithm: AlgorithmConfig,
    pub reference: ReferencePoint,
    pub repetitions: usize,
    pub master_seed: u64,
    /// `.json` selects JSON, anything else CSV; `None` writes nothing.
    pub output: Option<PathBuf>,
    pub bounds: bool,
    /// When false the `seconds` column is written as 0 so output files are
    /// byte-identical across runs.
    pub timing: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ExperimentSpec {
    pub fn new(problem: ProblemInstance, algorithm: AlgorithmConfig, repetitions: usize) -> Self {
        ExperimentSpec {
            reference: ReferencePoint::default_for(problem.m()),
            master_seed: algorithm.seed,
            problem,
            algorithm,
            repetitions,
            output: None,
            bounds: false,
            timing: true,
            threads: None,
        }
    }
}

/// Random stream of repetition `rep`: the master seed selects the key and
/// the repetition index the ChaCha stream.
pub fn rep_rng(master_seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(rep);
    rng
}

/// One output row per repetition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub problem: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub algo: String,
    pub mu: usize,
    pub mutation: String,
    pub beta: Option<f64>,
    pub update: String,
    pub seed: u64,
    pub rep: u64,
    pub iterations: u64,
    pub evaluations: u64,
    pub censored: bool,
    pub seconds: f64,
}

impl ResultRow {
    fn new(spec: &ExperimentSpec, rep: u64, record: &algorithms::RunRecord, seconds: f64) -> Self {
        let cfg = &spec.algorithm;
        let gsemo = cfg.algo == Algorithm::Gsemo;
        ResultRow {
            problem: spec.problem.to_string(),
            n: spec.problem.n(),
            m: spec.problem.m(),
            k: spec.problem.k(),
            algo: cfg.algo.name().to_string(),
            mu: if gsemo { 0 } else { cfg.mu },
            mutation: cfg.mutation.name().to_string(),
            beta: cfg.mutation.beta(),
            update: if gsemo { String::new() } else { cfg.update.name().to_string() },
            seed: spec.master_seed,
            rep,
            iterations: record.iterations,
            evaluations: record.evaluations,
            censored: record.censored,
            seconds: if spec.timing { seconds } else { 0.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub name: String,
    pub value: f64,
    pub mean: f64,
    pub ci_half_width: f64,
    pub pass: bool,
    /// The population-size hypothesis of the bound is met.
    pub mu_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub censored: usize,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Compares the iteration statistics with the bound applicable to the
/// configuration. Returns an empty report when no explicit bound exists.
pub fn bound_report(inst: &ProblemInstance, cfg: &AlgorithmConfig, summary: &Summary) -> BoundReport {
    let mut rows = Vec::new();
    match Theorem::applicable(inst, cfg) {
        Some(theorem) => match bound_value(theorem, inst, cfg) {
            Ok(value) => rows.push(BoundRow {
                name: theorem.name().to_string(),
                value,
                mean: summary.mean,
                ci_half_width: summary.ci_half_width,
                pass: summary.below(value),
                mu_condition: theorem.mu_condition_holds(inst, cfg.mu),
            }),
            Err(err) => warn!("no numeric bound for {theorem}: {err}"),
        },
        None => warn!("no runtime bound covers {} on {inst}", cfg.algo.name()),
    }
    BoundReport { rows, censored: summary.censored }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentOutcome {
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
    pub bounds: Option<BoundReport>,
}

enum Sink {
    Csv(Box<csv::Writer<File>>),
    Json(BufWriter<File>, Vec<ResultRow>),
    Discard,
}

impl Sink {
    fn open(spec: &ExperimentSpec) -> Result<Sink> {
        let Some(path) = &spec.output else {
            return Ok(Sink::Discard);
        };
        let file = File::create(path)?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            Ok(Sink::Json(BufWriter::new(file), Vec::new()))
        } else {
            Ok(Sink::Csv(Box::new(csv::Writer::from_writer(file))))
        }
    }

    fn push(&mut self, row: &ResultRow) -> Result<()> {
        match self {
            Sink::Csv(w) => {
                w.serialize(row)?;
                w.flush()?;
            }
            Sink::Json(_, rows) => rows.push(row.clone()),
            Sink::Discard => {}
        }
        Ok(())
    }

    fn finish(self) -> Result<()> {
        match self {
            Sink::Csv(mut w) => w.flush()?,
            Sink::Json(mut w, rows) => {
                serde_json::to_writer_pretty(&mut w, &rows)?;
                writeln!(w)?;
                w.flush()?;
            }
            Sink::Discard => {}
        }
        Ok(())
    }
}

fn run_rep(spec: &ExperimentSpec, rep: u64) -> Result<ResultRow> {
    let mut rng = rep_rng(spec.master_seed, rep);
    let cfg = AlgorithmConfig { seed: spec.master_seed, ..spec.algorithm.clone() };
    let start = Instant::now();
    let record = algorithms::run(&spec.problem, &cfg, &spec.reference, &mut rng)?;
    Ok(ResultRow::new(spec, rep, &record, start.elapsed().as_secs_f64()))
}

/// Runs all repetitions in parallel. Rows reach the output in repetition
/// order as soon as their predecessors are done.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    if spec.repetitions < 1 {
        return Err(invalid("reps must be at least 1"));
    }
    spec.algorithm.validate(&spec.problem)?;
    let mut sink = Sink::open(spec)?;
    let (tx, rx) = mpsc::channel::<(u64, Result<ResultRow>)>();
    let reps = spec.repetitions as u64;
    let rows = std::thread::scope(|scope| -> Result<Vec<ResultRow>> {
        let writer = scope.spawn(move || -> Result<Vec<ResultRow>> {
            let mut pending = std::collections::BTreeMap::new();
            let mut rows = Vec::with_capacity(reps as usize);
            let mut first_error = None;
            for (rep, row) in rx {
                pending.insert(rep, row);
                while let Some(row) = pending.remove(&(rows.len() as u64)) {
                    match row {
                        Ok(row) if first_error.is_none() => {
                            if let Err(e) = sink.push(&row) {
                                first_error = Some(e);
                            }
                            rows.push(row);
                        }
                        Ok(row) => rows.push(row),
                        Err(e) => {
                            first_error.get_or_insert(e);
                            break;
                        }
                    }
                }
                if first_error.is_some() {
                    break;
                }
            }
            if let Some(e) = first_error {
                return Err(e);
            }
            sink.finish()?;
            Ok(rows)
        });
        let work = move || {
            (0..reps).into_par_iter().for_each_with(tx, |tx, rep| {
                let row = run_rep(spec, rep);
                if let Ok(r) = &row {
                    info!("rep {rep}: {} iterations{}", r.iterations, if r.censored { " (censored)" } else { "" });
                }
                // The writer hangs up after an error; later results are moot.
                let _ = tx.send((rep, row));
            });
        };
        match spec.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| invalid(format!("cannot build thread pool: {e}")))?
                .install(work),
            None => work(),
        }
        writer.join().expect("writer thread panicked")
    })?;
    let samples: Vec<Option<f64>> = rows
        .iter()
        .map(|r| (!r.censored).then_some(r.iterations as f64))
        .collect();
    let summary = Summary::from_samples(&samples);
    if summary.censored > 0 {
        warn!("{} of {} runs hit the iteration cap", summary.censored, summary.runs);
    }
    let bounds = spec.bounds.then(|| bound_report(&spec.problem, &spec.algorithm, &summary));
    Ok(ExperimentOutcome { rows, summary, bounds })
}

//! Run settings from a flat `key=value` file merged with command-line flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::algorithms::{Algorithm, AlgorithmConfig, UpdateRule};
use crate::benchmarks::ProblemInstance;
use crate::error::{invalid, Result};
use crate::harness::bounds::default_max_iterations;
use crate::harness::ExperimentSpec;
use crate::selection::ReferencePoint;
use crate::variation::{MutationOperator, DEFAULT_BETA};

/// Unparsed settings. Keys match the long command-line flags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSettings {
    pub problem: Option<String>,
    pub algo: Option<String>,
    pub mu: Option<String>,
    pub mutation: Option<String>,
    pub beta: Option<String>,
    pub update: Option<String>,
    pub refpoint: Option<String>,
    pub reps: Option<String>,
    pub seed: Option<String>,
    pub max_iters: Option<String>,
    pub out: Option<String>,
    pub bounds: Option<String>,
    pub timing: Option<String>,
    pub threads: Option<String>,
}

impl RawSettings {
    /// Parses `key=value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawSettings::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {}: expected key=value", lineno + 1)))?;
            let value = Some(value.trim().to_string());
            let slot = match key.trim() {
                "problem" => &mut raw.problem,
                "algo" => &mut raw.algo,
                "mu" => &mut raw.mu,
                "mutation" => &mut raw.mutation,
                "beta" => &mut raw.beta,
                "update" => &mut raw.update,
                "refpoint" => &mut raw.refpoint,
                "reps" => &mut raw.reps,
                "seed" => &mut raw.seed,
                "max-iters" | "max_iters" => &mut raw.max_iters,
                "out" => &mut raw.out,
                "bounds" => &mut raw.bounds,
                "timing" => &mut raw.timing,
                "threads" => &mut raw.threads,
                other => return Err(invalid(format!("config line {}: unknown key `{other}`", lineno + 1))),
            };
            if slot.is_some() {
                return Err(invalid(format!("config line {}: duplicate key `{}`", lineno + 1, key.trim())));
            }
            *slot = value;
        }
        Ok(raw)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: RawSettings) -> RawSettings {
        RawSettings {
            problem: self.problem.or(base.problem),
            algo: self.algo.or(base.algo),
            mu: self.mu.or(base.mu),
            mutation: self.mutation.or(base.mutation),
            beta: self.beta.or(base.beta),
            update: self.update.or(base.update),
            refpoint: self.refpoint.or(base.refpoint),
            reps: self.reps.or(base.reps),
            seed: self.seed.or(base.seed),
            max_iters: self.max_iters.or(base.max_iters),
            out: self.out.or(base.out),
            bounds: self.bounds.or(base.bounds),
            timing: self.timing.or(base.timing),
            threads: self.threads.or(base.threads),
        }
    }

    /// Applies defaults and validates everything into an experiment.
    pub fn resolve(&self) -> Result<ExperimentSpec> {
        let problem: ProblemInstance = self
            .problem
            .as_deref()
            .ok_or_else(|| invalid("missing required setting `problem`"))?
            .parse()?;
        let algo: Algorithm = parse_or(&self.algo, "algo", Algorithm::SmsEmoa)?;
        let update: UpdateRule = parse_or(&self.update, "update", UpdateRule::Standard)?;
        let beta: f64 = parse_or(&self.beta, "beta", DEFAULT_BETA)?;
        let mutation = match self.mutation.as_deref().unwrap_or("standard") {
            "standard" => MutationOperator::Standard,
            "heavy" => MutationOperator::heavy_tailed(beta)?,
            other => return Err(invalid(format!("unknown mutation `{other}` (expected standard or heavy)"))),
        };
        let mu = match self.mu.as_deref().unwrap_or("auto") {
            "auto" => AlgorithmConfig::auto_mu(&problem, update),
            s => number(s, "mu")?,
        };
        let seed: u64 = parse_or(&self.seed, "seed", 0)?;
        let mut algorithm = match algo {
            Algorithm::SmsEmoa => AlgorithmConfig::sms_emoa(mu, mutation, update, 1, seed),
            Algorithm::Gsemo => AlgorithmConfig::gsemo(mutation, 1, seed),
        };
        algorithm.max_iterations = match self.max_iters.as_deref().unwrap_or("auto") {
            "auto" => default_max_iterations(&problem, &algorithm),
            s => number(s, "max-iters")?,
        };
        algorithm.validate(&problem)?;
        let reference = match self.refpoint.as_deref() {
            None => ReferencePoint::default_for(problem.m()),
            Some(s) => {
                let coords = s
                    .split(',')
                    .map(|c| number::<i64>(c.trim(), "refpoint"))
                    .collect::<Result<Vec<_>>>()?;
                ReferencePoint::for_problem(&problem, coords)?
            }
        };
        let repetitions: usize = parse_or(&self.reps, "reps", 1)?;
        if repetitions < 1 {
            return Err(invalid("reps must be at least 1"));
        }
        let threads = self.threads.as_deref().map(|s| number::<usize>(s, "threads")).transpose()?;
        Ok(ExperimentSpec {
            problem,
            algorithm,
            reference,
            repetitions,
            master_seed: seed,
            output: self.out.as_ref().map(PathBuf::from),
            bounds: flag(&self.bounds, "bounds", false)?,
            timing: flag(&self.timing, "timing", true)?,
            threads,
        })
    }
}

fn number<T: FromStr>(s: &str, key: &str) -> Result<T> {
    s.parse().map_err(|_| invalid(format!("`{key}` has malformed value `{s}`")))
}

fn parse_or<T>(value: &Option<String>, key: &str, default: T) -> Result<T>
where
    T: FromStr,
{
    match value {
        None => Ok(default),
        Some(s) => number(s, key),
    }
}

fn flag(value: &Option<String>, key: &str, default: bool) -> Result<bool> {
    match value.as_deref() {
        None => Ok(default),
        Some("true" | "yes" | "1") => Ok(true),
        Some("false" | "no" | "0") => Ok(false),
        Some(other) => Err(invalid(format!("`{key}` must be true or false, got `{other}`"))),
    }
}

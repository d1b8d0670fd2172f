//! The SMS-EMOA main loop and the GSEMO, with full-front coverage tracking.
//!
//! Both algorithms are exposed as steppable engines ([`SmsEmoa`], [`Gsemo`])
//! so callers can inspect the population after every iteration, and as
//! run-to-coverage functions producing a [`RunRecord`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use log::warn;
use rand::Rng;
use serde::Serialize;

use crate::benchmarks::{FrontDescriptor, ProblemInstance, ProblemKind};
use crate::bitstring::BitString;
use crate::error::{invalid, Error, Result};
use crate::objective::{compare_values, Individual, ObjectiveVector, Relation};
use crate::selection::{standard_removal_index, stochastic_removal_index, ReferencePoint};
use crate::variation::{select_parent_uniform, MutationOperator, Mutator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    SmsEmoa,
    Gsemo,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SmsEmoa => "sms",
            Algorithm::Gsemo => "gsemo",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sms" | "sms-emoa" | "sms_emoa" => Ok(Algorithm::SmsEmoa),
            "gsemo" => Ok(Algorithm::Gsemo),
            other => Err(invalid(format!("unknown algorithm `{other}` (expected sms or gsemo)"))),
        }
    }
}

/// Survivor selection of the SMS-EMOA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpdateRule {
    Standard,
    Stochastic,
}

impl UpdateRule {
    pub fn name(self) -> &'static str {
        match self {
            UpdateRule::Standard => "standard",
            UpdateRule::Stochastic => "stochastic",
        }
    }
}

impl FromStr for UpdateRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(UpdateRule::Standard),
            "stochastic" => Ok(UpdateRule::Stochastic),
            other => Err(invalid(format!("unknown update rule `{other}` (expected standard or stochastic)"))),
        }
    }
}

impl fmt::Display for UpdateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgorithmConfig {
    pub algo: Algorithm,
    /// Population size; ignored by the GSEMO.
    pub mu: usize,
    pub mutation: MutationOperator,
    /// Ignored by the GSEMO.
    pub update: UpdateRule,
    pub max_iterations: u64,
    pub seed: u64,
}

/// Population size from which the survival guarantee of the given update
/// rule applies, using the antichain bound of the instance.
pub fn survival_threshold(inst: &ProblemInstance, update: UpdateRule) -> u64 {
    let bound = inst.antichain_bound();
    match update {
        UpdateRule::Standard => bound,
        UpdateRule::Stochastic => 2 * bound + 1,
    }
}

impl AlgorithmConfig {
    pub fn sms_emoa(mu: usize, mutation: MutationOperator, update: UpdateRule, max_iterations: u64, seed: u64) -> Self {
        AlgorithmConfig { algo: Algorithm::SmsEmoa, mu, mutation, update, max_iterations, seed }
    }

    pub fn gsemo(mutation: MutationOperator, max_iterations: u64, seed: u64) -> Self {
        AlgorithmConfig {
            algo: Algorithm::Gsemo,
            mu: 1,
            mutation,
            update: UpdateRule::Standard,
            max_iterations,
            seed,
        }
    }

    /// Default population size: the survival threshold for the block
    /// problems and `n+1` for OneMinMax and LOTZ.
    pub fn auto_mu(inst: &ProblemInstance, update: UpdateRule) -> usize {
        match inst.kind() {
            ProblemKind::OneMinMax | ProblemKind::Lotz if update == UpdateRule::Standard => inst.n() + 1,
            _ => survival_threshold(inst, update) as usize,
        }
    }

    /// Whether `μ` guarantees that covered front points are never lost.
    pub fn survival_guaranteed(&self, inst: &ProblemInstance) -> bool {
        match self.algo {
            Algorithm::Gsemo => true,
            Algorithm::SmsEmoa => self.mu as u64 >= survival_threshold(inst, self.update),
        }
    }

    /// Checks hard constraints and warns when `μ` is below the survival
    /// threshold.
    pub fn validate(&self, inst: &ProblemInstance) -> Result<()> {
        if self.algo == Algorithm::SmsEmoa && self.mu < 1 {
            return Err(invalid("population size must be at least 1"));
        }
        if self.max_iterations < 1 {
            return Err(invalid("iteration cap must be positive"));
        }
        if !self.survival_guaranteed(inst) {
            warn!(
                "mu={} is below {} for the {} update on {inst}; covered front points may be lost",
                self.mu,
                survival_threshold(inst, self.update),
                self.update
            );
        }
        Ok(())
    }
}

/// Fraction of the Pareto front covered by a population.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub covered: usize,
    pub total: usize,
}

impl Coverage {
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.covered as f64 / self.total as f64
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.total
    }
}

/// `|f(P) ∩ F*| / |F*|`.
pub fn coverage_fraction<T: AsRef<ObjectiveVector>>(population: &[T], front: &FrontDescriptor) -> Coverage {
    let mut hit: Vec<&ObjectiveVector> = population
        .iter()
        .map(|x| x.as_ref())
        .filter(|v| front.contains(v))
        .collect();
    hit.sort();
    hit.dedup();
    Coverage { covered: hit.len(), total: front.size() }
}

/// Multiset of the population's front values, updated per insertion and
/// removal.
#[derive(Clone, Debug)]
pub struct CoverageTracker {
    front: FrontDescriptor,
    counts: HashMap<ObjectiveVector, usize>,
}

impl CoverageTracker {
    pub fn new(front: FrontDescriptor) -> Self {
        CoverageTracker { front, counts: HashMap::new() }
    }

    pub fn insert(&mut self, v: &ObjectiveVector) {
        if self.front.contains(v) {
            *self.counts.entry(v.clone()).or_default() += 1;
        }
    }

    pub fn remove(&mut self, v: &ObjectiveVector) {
        if let Some(c) = self.counts.get_mut(v) {
            *c -= 1;
            if *c == 0 {
                self.counts.remove(v);
            }
        }
    }

    pub fn covered(&self) -> usize {
        self.counts.len()
    }

    pub fn is_complete(&self) -> bool {
        self.counts.len() == self.front.size()
    }

    pub fn contains(&self, v: &ObjectiveVector) -> bool {
        self.counts.contains_key(v)
    }

    pub fn front(&self) -> &FrontDescriptor {
        &self.front
    }

    pub fn covered_points(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.counts.keys()
    }
}

/// Histogram of inner levels over the population; mOJZJ only.
#[derive(Clone, Debug)]
struct InnerLevels {
    counts: Vec<usize>,
}

impl InnerLevels {
    fn new(inst: &ProblemInstance) -> Option<Self> {
        (inst.kind() == ProblemKind::Mojzj).then(|| InnerLevels { counts: vec![0; inst.num_blocks() + 1] })
    }

    fn max(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }
}

/// Outcome of a complete run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub seed: u64,
    /// Iteration at which the population first covered the whole front;
    /// `None` when the run was censored.
    pub iterations_to_coverage: Option<u64>,
    /// Iterations actually executed.
    pub iterations: u64,
    pub evaluations: u64,
    /// `(iteration, covered count)` at start and whenever the count changes.
    pub coverage_trajectory: Vec<(u64, usize)>,
    /// `(iteration, max inner level)` at start and on change; mOJZJ only.
    pub inner_coverage_trajectory: Vec<(u64, usize)>,
    pub censored: bool,
}

struct Trajectories {
    coverage: Vec<(u64, usize)>,
    inner: Vec<(u64, usize)>,
}

impl Trajectories {
    fn record(&mut self, iteration: u64, covered: usize, inner: Option<usize>) {
        if self.coverage.last().map(|&(_, c)| c) != Some(covered) {
            self.coverage.push((iteration, covered));
        }
        if let Some(level) = inner {
            if self.inner.last().map(|&(_, l)| l) != Some(level) {
                self.inner.push((iteration, level));
            }
        }
    }
}

/// Result of one SMS-EMOA iteration.
#[derive(Clone, Debug)]
pub struct SmsStep {
    pub offspring: Individual,
    pub removed: Individual,
    /// The offspring itself was discarded.
    pub offspring_removed: bool,
}

/// Steppable SMS-EMOA.
pub struct SmsEmoa {
    inst: ProblemInstance,
    reference: ReferencePoint,
    mutator: Mutator,
    update: UpdateRule,
    population: Vec<Individual>,
    tracker: CoverageTracker,
    inner: Option<InnerLevels>,
    iteration: u64,
    check_survival: bool,
}

impl SmsEmoa {
    /// Samples `μ` individuals uniformly at random.
    pub fn new<R: Rng + ?Sized>(
        inst: &ProblemInstance,
        cfg: &AlgorithmConfig,
        reference: ReferencePoint,
        rng: &mut R,
    ) -> Result<Self> {
        let initial = (0..cfg.mu)
            .map(|_| inst.individual(BitString::random(inst.n(), rng)))
            .collect::<Result<Vec<_>>>()?;
        Self::with_population(inst, cfg, reference, initial)
    }

    pub fn with_population(
        inst: &ProblemInstance,
        cfg: &AlgorithmConfig,
        reference: ReferencePoint,
        population: Vec<Individual>,
    ) -> Result<Self> {
        if cfg.algo != Algorithm::SmsEmoa {
            return Err(invalid("SMS-EMOA engine needs an sms configuration"));
        }
        cfg.validate(inst)?;
        if population.len() != cfg.mu {
            return Err(invalid(format!("initial population has {} members, expected mu={}", population.len(), cfg.mu)));
        }
        if reference.len() != inst.m() {
            return Err(Error::DimensionMismatch { left: reference.len(), right: inst.m() });
        }
        let mut tracker = CoverageTracker::new(inst.pareto_front());
        let mut inner = InnerLevels::new(inst);
        for x in &population {
            tracker.insert(x.objectives());
            if let Some(levels) = inner.as_mut() {
                levels.counts[inst.inner_level(x.genome())?] += 1;
            }
        }
        Ok(SmsEmoa {
            inst: *inst,
            reference,
            mutator: cfg.mutation.for_length(inst.n())?,
            update: cfg.update,
            population,
            tracker,
            inner,
            iteration: 0,
            check_survival: cfg.survival_guaranteed(inst),
        })
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn tracker(&self) -> &CoverageTracker {
        &self.tracker
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn is_covered(&self) -> bool {
        self.tracker.is_complete()
    }

    pub fn max_inner_level(&self) -> Option<usize> {
        self.inner.as_ref().map(InnerLevels::max)
    }

    /// One iteration: uniform parent, mutation, removal of one individual
    /// from `P_t ∪ {x'}`.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<SmsStep> {
        let parent = select_parent_uniform(&self.population, rng)?;
        let child = self.mutator.mutate(parent.genome(), rng);
        let offspring = self.inst.individual(child)?;
        self.tracker.insert(offspring.objectives());
        if let Some(levels) = self.inner.as_mut() {
            levels.counts[self.inst.inner_level(offspring.genome())?] += 1;
        }
        self.population.push(offspring.clone());
        let index = match self.update {
            UpdateRule::Standard => standard_removal_index(&self.population, &self.reference, rng)?,
            UpdateRule::Stochastic => stochastic_removal_index(&self.population, &self.reference, rng)?,
        };
        let offspring_removed = index == self.population.len() - 1;
        let removed = self.population.swap_remove(index);
        self.tracker.remove(removed.objectives());
        if let Some(levels) = self.inner.as_mut() {
            levels.counts[self.inst.inner_level(removed.genome())?] -= 1;
        }
        if cfg!(debug_assertions) && self.check_survival {
            debug_assert!(
                self.population.iter().any(|y| matches!(
                    compare_values(y.objectives().values(), removed.objectives().values()),
                    Relation::Dominates | Relation::Equal
                )),
                "survival guarantee violated: nothing weakly dominates removed {}",
                removed.objectives()
            );
        }
        self.iteration += 1;
        Ok(SmsStep { offspring, removed, offspring_removed })
    }
}

fn run_to_coverage<R, S>(
    cfg: &AlgorithmConfig,
    initial_evaluations: u64,
    engine: &mut S,
    rng: &mut R,
    mut step: impl FnMut(&mut S, &mut R) -> Result<()>,
    state: impl Fn(&S) -> (u64, bool, usize, Option<usize>),
) -> Result<RunRecord>
where
    R: Rng + ?Sized,
{
    let (_, mut covered, count, inner) = state(engine);
    let mut traj = Trajectories { coverage: vec![(0, count)], inner: Vec::new() };
    if let Some(level) = inner {
        traj.inner.push((0, level));
    }
    let mut iterations = 0;
    while !covered && iterations < cfg.max_iterations {
        step(engine, rng)?;
        let (it, done, count, inner) = state(engine);
        iterations = it;
        covered = done;
        traj.record(it, count, inner);
    }
    Ok(RunRecord {
        seed: cfg.seed,
        iterations_to_coverage: covered.then_some(iterations),
        iterations,
        evaluations: initial_evaluations + iterations,
        coverage_trajectory: traj.coverage,
        inner_coverage_trajectory: traj.inner,
        censored: !covered,
    })
}

/// Runs the SMS-EMOA with reference point `(-1, …, -1)` until the front is
/// covered or the iteration cap is reached.
pub fn sms_emoa_run<R: Rng + ?Sized>(inst: &ProblemInstance, cfg: &AlgorithmConfig, rng: &mut R) -> Result<RunRecord> {
    sms_emoa_run_with_reference(inst, cfg, ReferencePoint::default_for(inst.m()), rng)
}

pub fn sms_emoa_run_with_reference<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    cfg: &AlgorithmConfig,
    reference: ReferencePoint,
    rng: &mut R,
) -> Result<RunRecord> {
    let reference = ReferencePoint::for_problem(inst, reference.coords().to_vec())?;
    let mut engine = SmsEmoa::new(inst, cfg, reference, rng)?;
    run_to_coverage(
        cfg,
        cfg.mu as u64,
        &mut engine,
        rng,
        |e, r| e.step(r).map(|_| ()),
        |e| (e.iteration, e.is_covered(), e.tracker.covered(), e.max_inner_level()),
    )
}

/// Result of one GSEMO iteration.
#[derive(Clone, Debug)]
pub struct GsemoStep {
    pub offspring: Individual,
    pub accepted: bool,
    /// Members discarded because the offspring weakly dominates them.
    pub removed: Vec<Individual>,
}

/// Steppable GSEMO.
pub struct Gsemo {
    inst: ProblemInstance,
    mutator: Mutator,
    population: Vec<Individual>,
    tracker: CoverageTracker,
    inner: Option<InnerLevels>,
    iteration: u64,
}

impl Gsemo {
    /// Starts from a single uniformly random solution.
    pub fn new<R: Rng + ?Sized>(inst: &ProblemInstance, cfg: &AlgorithmConfig, rng: &mut R) -> Result<Self> {
        if cfg.algo != Algorithm::Gsemo {
            return Err(invalid("GSEMO engine needs a gsemo configuration"));
        }
        cfg.validate(inst)?;
        let first = inst.individual(BitString::random(inst.n(), rng))?;
        let mut tracker = CoverageTracker::new(inst.pareto_front());
        tracker.insert(first.objectives());
        let mut inner = InnerLevels::new(inst);
        if let Some(levels) = inner.as_mut() {
            levels.counts[inst.inner_level(first.genome())?] += 1;
        }
        Ok(Gsemo {
            inst: *inst,
            mutator: cfg.mutation.for_length(inst.n())?,
            population: vec![first],
            tracker,
            inner,
            iteration: 0,
        })
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn tracker(&self) -> &CoverageTracker {
        &self.tracker
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn is_covered(&self) -> bool {
        self.tracker.is_complete()
    }

    pub fn max_inner_level(&self) -> Option<usize> {
        self.inner.as_ref().map(InnerLevels::max)
    }

    /// Adds the offspring iff no member dominates it, dropping every member
    /// it weakly dominates.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<GsemoStep> {
        let parent = select_parent_uniform(&self.population, rng)?;
        let child = self.mutator.mutate(parent.genome(), rng);
        let offspring = self.inst.individual(child)?;
        self.iteration += 1;
        let value = offspring.objectives().values();
        if self
            .population
            .iter()
            .any(|y| compare_values(y.objectives().values(), value) == Relation::Dominates)
        {
            return Ok(GsemoStep { offspring, accepted: false, removed: Vec::new() });
        }
        let (removed, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut self.population)
            .into_iter()
            .partition(|y| matches!(compare_values(value, y.objectives().values()), Relation::Dominates | Relation::Equal));
        self.population = kept;
        for y in &removed {
            self.tracker.remove(y.objectives());
            if let Some(levels) = self.inner.as_mut() {
                levels.counts[self.inst.inner_level(y.genome())?] -= 1;
            }
        }
        self.tracker.insert(offspring.objectives());
        if let Some(levels) = self.inner.as_mut() {
            levels.counts[self.inst.inner_level(offspring.genome())?] += 1;
        }
        self.population.push(offspring.clone());
        Ok(GsemoStep { offspring, accepted: true, removed })
    }
}

pub fn gsemo_run<R: Rng + ?Sized>(inst: &ProblemInstance, cfg: &AlgorithmConfig, rng: &mut R) -> Result<RunRecord> {
    let mut engine = Gsemo::new(inst, cfg, rng)?;
    run_to_coverage(
        cfg,
        1,
        &mut engine,
        rng,
        |e, r| e.step(r).map(|_| ()),
        |e| (e.iteration, e.is_covered(), e.tracker.covered(), e.max_inner_level()),
    )
}

/// Dispatches on `cfg.algo`.
pub fn run<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    cfg: &AlgorithmConfig,
    reference: &ReferencePoint,
    rng: &mut R,
) -> Result<RunRecord> {
    match cfg.algo {
        Algorithm::SmsEmoa => sms_emoa_run_with_reference(inst, cfg, reference.clone(), rng),
        Algorithm::Gsemo => gsemo_run(inst, cfg, rng),
    }
}

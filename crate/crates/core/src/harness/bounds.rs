//! Closed-form expected-runtime upper bounds, in iterations.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algorithms::{survival_threshold, Algorithm, AlgorithmConfig, UpdateRule};
use crate::benchmarks::{ProblemInstance, ProblemKind};
use crate::error::{invalid, Error, Result};
use crate::variation::MutationOperator;

/// Which runtime guarantee to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Standard SMS-EMOA on mOJZJ.
    Sms,
    /// SMS-EMOA with stochastic population update on mOJZJ.
    Spu,
    /// SMS-EMOA with heavy-tailed mutation on mOJZJ; only known up to a
    /// constant, so it has no numeric value.
    Htm,
    /// SMS-EMOA on OneMinMax.
    Omm,
    /// SMS-EMOA on LOTZ.
    Lotz,
    /// GSEMO on mOJZJ.
    Gsemo,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Sms => "sms",
            Theorem::Spu => "spu",
            Theorem::Htm => "htm",
            Theorem::Omm => "omm",
            Theorem::Lotz => "lotz",
            Theorem::Gsemo => "gsemo",
        }
    }

    /// The guarantee covering this algorithm configuration on this instance,
    /// if any.
    pub fn applicable(inst: &ProblemInstance, cfg: &AlgorithmConfig) -> Option<Theorem> {
        let block = inst.kind().is_block_problem();
        let standard = cfg.mutation == MutationOperator::Standard;
        match (cfg.algo, inst.kind()) {
            (Algorithm::Gsemo, _) if block && standard => Some(Theorem::Gsemo),
            (Algorithm::Gsemo, _) => None,
            (Algorithm::SmsEmoa, _) if block && !standard => {
                (cfg.update == UpdateRule::Standard).then_some(Theorem::Htm)
            }
            (Algorithm::SmsEmoa, _) if block => Some(match cfg.update {
                UpdateRule::Standard => Theorem::Sms,
                UpdateRule::Stochastic => Theorem::Spu,
            }),
            (Algorithm::SmsEmoa, ProblemKind::OneMinMax) if standard && cfg.update == UpdateRule::Standard => {
                Some(Theorem::Omm)
            }
            (Algorithm::SmsEmoa, ProblemKind::Lotz) if standard && cfg.update == UpdateRule::Standard => {
                Some(Theorem::Lotz)
            }
            _ => None,
        }
    }

    /// Population-size hypothesis of the guarantee.
    pub fn mu_condition_holds(self, inst: &ProblemInstance, mu: usize) -> bool {
        let mu = mu as u64;
        match self {
            Theorem::Sms | Theorem::Htm => mu >= survival_threshold(inst, UpdateRule::Standard),
            Theorem::Spu => mu >= survival_threshold(inst, UpdateRule::Stochastic),
            Theorem::Omm | Theorem::Lotz => mu > inst.n() as u64,
            Theorem::Gsemo => true,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sms" => Theorem::Sms,
            "spu" => Theorem::Spu,
            "htm" => Theorem::Htm,
            "omm" => Theorem::Omm,
            "lotz" => Theorem::Lotz,
            "gsemo" => Theorem::Gsemo,
            other => return Err(invalid(format!("unknown bound `{other}`"))),
        })
    }
}

/// `(n, m, k, n', M)` of a block problem; mOMM behaves like mOJZJ with
/// `k = 1`.
struct BlockParams {
    n: f64,
    m: f64,
    k: i32,
    inner: f64,
    front: f64,
    antichain: f64,
}

fn block_params(theorem: Theorem, inst: &ProblemInstance) -> Result<BlockParams> {
    if !inst.kind().is_block_problem() {
        return Err(Error::NotApplicable(format!("bound `{theorem}` needs mojzj or momm, got {inst}")));
    }
    let k = inst.k().unwrap_or(1);
    let blocks = inst.num_blocks() as i32;
    let len = inst.block_len();
    Ok(BlockParams {
        n: inst.n() as f64,
        m: inst.m() as f64,
        k: k as i32,
        inner: ((len + 1 - 2 * k) as f64).powi(blocks),
        front: inst.front_size() as f64,
        antichain: inst.antichain_bound() as f64,
    })
}

/// First phase shared by the block-problem bounds: `e·μ·(mk/2)^k·(1+ln m)`.
fn first_inner(p: &BlockParams, mu: f64) -> f64 {
    E * mu * (p.m * p.k as f64 / 2.0).powi(p.k) * (1.0 + p.m.ln())
}

/// Value of the bound for `inst` with the population size in `cfg`.
pub fn bound_value(theorem: Theorem, inst: &ProblemInstance, cfg: &AlgorithmConfig) -> Result<f64> {
    let mu = cfg.mu as f64;
    let n = inst.n() as f64;
    match theorem {
        Theorem::Sms => {
            let p = block_params(theorem, inst)?;
            Ok(first_inner(&p, mu) + E * mu * p.front * p.n.powi(p.k))
        }
        Theorem::Spu => {
            let p = block_params(theorem, inst)?;
            let factor = (4.0 * E * mu / 2f64.powi(p.k)).min(1.0);
            Ok(first_inner(&p, mu)
                + E * p.n * mu * p.inner
                + E * mu * (p.front - p.inner) * p.n.powi(p.k) * factor)
        }
        Theorem::Gsemo => {
            let p = block_params(theorem, inst)?;
            // The largest incomparable set is replaced by its upper bound.
            let mbar = p.antichain;
            Ok(first_inner(&p, mbar) + E * p.front * mbar * p.n.powi(p.k))
        }
        Theorem::Omm => {
            if inst.kind() != ProblemKind::OneMinMax {
                return Err(Error::NotApplicable(format!("bound `omm` needs omm, got {inst}")));
            }
            Ok(2.0 * E * mu * n * (n.ln() + 1.0))
        }
        Theorem::Lotz => {
            if inst.kind() != ProblemKind::Lotz {
                return Err(Error::NotApplicable(format!("bound `lotz` needs lotz, got {inst}")));
            }
            Ok(2.0 * E * mu * n * n)
        }
        Theorem::Htm => Err(Error::NotApplicable(
            "the heavy-tailed bound is asymptotic and has no explicit constant".into(),
        )),
    }
}

/// Default iteration cap: 100 times the applicable bound. Configurations
/// without an explicit bound borrow the closest one (standard mutation,
/// or `μ = n+1` for the GSEMO on the bi-objective problems).
pub fn default_max_iterations(inst: &ProblemInstance, cfg: &AlgorithmConfig) -> u64 {
    let fallback = |algo_mu: usize| AlgorithmConfig { mu: algo_mu, ..cfg.clone() };
    let value = match Theorem::applicable(inst, cfg) {
        Some(Theorem::Htm) => bound_value(Theorem::Sms, inst, cfg),
        Some(t) => bound_value(t, inst, cfg),
        None => match inst.kind() {
            ProblemKind::OneMinMax => bound_value(Theorem::Omm, inst, &fallback(cfg.mu.max(inst.n() + 1))),
            ProblemKind::Lotz => bound_value(Theorem::Lotz, inst, &fallback(cfg.mu.max(inst.n() + 1))),
            _ if cfg.algo == Algorithm::Gsemo => bound_value(Theorem::Gsemo, inst, cfg),
            _ => bound_value(Theorem::Sms, inst, cfg),
        },
    };
    let cap = 100.0 * value.unwrap_or(1e9);
    if cap >= u64::MAX as f64 {
        u64::MAX
    } else {
        cap.ceil().max(1.0) as u64
    }
}

//! Self-verification: closed forms and the hypervolume engine against the
//! brute-force oracles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::benchmarks::ProblemInstance;
use crate::bitstring::BitString;
use crate::error::Result;
use crate::objective::{compare_values, ObjectiveVector, Relation};
use crate::oracle::{brute_force_front, brute_force_pareto_set, hv_inclusion_exclusion, hv_monte_carlo, OracleBudget};
use crate::selection::{hv_contribution, hypervolume, ReferencePoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, failures: Vec<String>, cases: usize) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{cases} cases")
        } else {
            format!("{} of {cases} cases failed; first: {}", failures.len(), failures[0])
        };
        CheckOutcome { name: name.to_string(), passed, detail }
    }
}

/// Valid instances of every problem with `n ≤ max_n`.
pub fn small_instances(max_n: usize) -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(ProblemInstance::one_min_max(n).unwrap());
        out.push(ProblemInstance::lotz(n).unwrap());
        for m in (2..=n).step_by(2) {
            if let Ok(inst) = ProblemInstance::momm(n, m) {
                out.push(inst);
            }
            for k in 1..=n {
                if let Ok(inst) = ProblemInstance::mojzj(n, m, k) {
                    out.push(inst);
                }
            }
        }
    }
    out
}

/// Random antichain of at most `max_size` vectors in `[0..=max_coord]^m`.
pub fn random_antichain<R: Rng + ?Sized>(m: usize, max_size: usize, max_coord: i64, rng: &mut R) -> Vec<ObjectiveVector> {
    let target = rng.gen_range(1..=max_size);
    let mut set: Vec<ObjectiveVector> = Vec::new();
    for _ in 0..50 * max_size {
        if set.len() == target {
            break;
        }
        let v = ObjectiveVector::new((0..m).map(|_| rng.gen_range(0..=max_coord)).collect());
        if set
            .iter()
            .all(|u| compare_values(u.values(), v.values()) == Relation::Incomparable)
        {
            set.push(v);
        }
    }
    set
}

fn check_fronts(budget: &OracleBudget, max_n: usize) -> Result<CheckOutcome> {
    let instances = small_instances(max_n);
    let mut failures = Vec::new();
    for inst in &instances {
        let closed = inst.pareto_front();
        let brute = brute_force_front(inst, budget)?;
        if closed != brute {
            failures.push(format!("{inst}: closed form {} points, enumeration {}", closed.size(), brute.size()));
        } else if closed.size() as u64 != inst.front_size() {
            failures.push(format!("{inst}: front size formula {} vs {}", inst.front_size(), closed.size()));
        }
    }
    Ok(CheckOutcome::new("pareto front = enumeration", failures, instances.len()))
}

fn check_pareto_sets(budget: &OracleBudget, max_n: usize) -> Result<CheckOutcome> {
    let instances = small_instances(max_n);
    let mut failures = Vec::new();
    for inst in &instances {
        let set = brute_force_pareto_set(inst, budget)?;
        let mut count = 0;
        for i in 0..1u64 << inst.n() {
            let x = BitString::from_index(i, inst.n());
            if inst.is_pareto_optimal(&x)? {
                count += 1;
            }
        }
        if count != set.len() {
            failures.push(format!("{inst}: characterization {count} vs enumeration {}", set.len()));
        }
    }
    Ok(CheckOutcome::new("pareto set characterization", failures, instances.len()))
}

fn check_hypervolume<R: Rng + ?Sized>(cases: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let m = rng.gen_range(1..=6);
        let set = random_antichain(m, 10, 20, rng);
        let r = ReferencePoint::default_for(m);
        let fast = hypervolume(&set, &r)?;
        let exact = hv_inclusion_exclusion(&set, &r)?;
        if fast as i128 != exact {
            failures.push(format!("{set:?}: {fast} vs {exact}"));
        }
    }
    Ok(CheckOutcome::new("hypervolume = inclusion-exclusion", failures, cases))
}

fn check_contributions<R: Rng + ?Sized>(cases: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let m = rng.gen_range(2..=5);
        let mut set = random_antichain(m, 8, 20, rng);
        let dup = set.choose(rng).expect("antichain is non-empty").clone();
        set.push(dup.clone());
        set.shuffle(rng);
        let r = ReferencePoint::default_for(m);
        for i in 0..set.len() {
            let c = hv_contribution(&set, i, &r)?;
            if (set[i] == dup) != (c == 0) {
                failures.push(format!("{:?} in {set:?}: contribution {c}", set[i]));
            }
        }
    }
    Ok(CheckOutcome::new("zero contribution iff duplicated", failures, cases))
}

fn check_monte_carlo<R: Rng + ?Sized>(budget: &OracleBudget, cases: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let set = random_antichain(m, 6, 10, rng);
        let r = ReferencePoint::default_for(m);
        let exact = hypervolume(&set, &r)? as f64;
        let est = hv_monte_carlo(&set, &r, budget.mc_samples().max(1000), rng)?;
        if (est.value - exact).abs() > 5.0 * est.std_error + 1e-9 {
            failures.push(format!("{set:?}: {} ± {} vs {exact}", est.value, est.std_error));
        }
    }
    Ok(CheckOutcome::new("hypervolume = monte carlo", failures, cases))
}

/// The full oracle suite. Deterministic for a given seed.
pub fn run_self_check(budget: &OracleBudget, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_n = budget.max_n_exhaustive().min(12);
    Ok(vec![
        check_fronts(budget, max_n)?,
        check_pareto_sets(budget, max_n.min(10))?,
        check_hypervolume(1000, &mut rng)?,
        check_contributions(1000, &mut rng)?,
        check_monte_carlo(budget, 20, &mut rng)?,
    ])
}

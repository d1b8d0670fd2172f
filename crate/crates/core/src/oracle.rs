//! Brute-force references used to cross-check the closed forms and the
//! hypervolume engine.

use std::collections::HashSet;

use rand::Rng;

use crate::benchmarks::{FrontDescriptor, ProblemInstance};
use crate::bitstring::BitString;
use crate::error::{invalid, Error, Result};
use crate::objective::{compare_values, Individual, ObjectiveVector, Relation};
use crate::selection::ReferencePoint;

/// Largest subset size accepted by [`hv_inclusion_exclusion`].
pub const MAX_INCLUSION_EXCLUSION: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    max_n_exhaustive: usize,
    mc_samples: u64,
}

impl OracleBudget {
    pub fn new(max_n_exhaustive: usize, mc_samples: u64) -> Result<Self> {
        if max_n_exhaustive > 24 {
            return Err(invalid(format!("exhaustive enumeration is capped at n=24, got {max_n_exhaustive}")));
        }
        Ok(OracleBudget { max_n_exhaustive, mc_samples })
    }

    pub fn max_n_exhaustive(&self) -> usize {
        self.max_n_exhaustive
    }

    pub fn mc_samples(&self) -> u64 {
        self.mc_samples
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_n_exhaustive: 14, mc_samples: 1_000_000 }
    }
}

fn nondominated(values: impl IntoIterator<Item = ObjectiveVector>) -> Vec<ObjectiveVector> {
    let distinct: Vec<ObjectiveVector> = values.into_iter().collect::<HashSet<_>>().into_iter().collect();
    distinct
        .iter()
        .filter(|v| {
            !distinct
                .iter()
                .any(|u| compare_values(u.values(), v.values()) == Relation::Dominates)
        })
        .cloned()
        .collect()
}

fn check_exhaustive(inst: &ProblemInstance, budget: &OracleBudget) -> Result<()> {
    if inst.n() > budget.max_n_exhaustive {
        return Err(Error::BudgetExceeded(format!(
            "n={} exceeds the exhaustive limit {}",
            inst.n(),
            budget.max_n_exhaustive
        )));
    }
    Ok(())
}

fn all_values(inst: &ProblemInstance) -> Result<Vec<ObjectiveVector>> {
    (0..1u64 << inst.n())
        .map(|i| inst.evaluate(&BitString::from_index(i, inst.n())))
        .collect()
}

/// Enumerates all `2^n` search points and keeps the non-dominated values.
pub fn brute_force_front(inst: &ProblemInstance, budget: &OracleBudget) -> Result<FrontDescriptor> {
    check_exhaustive(inst, budget)?;
    Ok(FrontDescriptor::new(nondominated(all_values(inst)?)))
}

/// The Pareto set by enumeration: search points whose value is not
/// dominated by any attainable value.
pub fn brute_force_pareto_set(inst: &ProblemInstance, budget: &OracleBudget) -> Result<Vec<BitString>> {
    let front = brute_force_front(inst, budget)?;
    let n = inst.n();
    let mut set = Vec::new();
    for i in 0..1u64 << n {
        let x = BitString::from_index(i, n);
        if front.contains(&inst.evaluate(&x)?) {
            set.push(x);
        }
    }
    Ok(set)
}

/// `Σ_{∅≠T⊆S} (−1)^{|T|+1} vol(∩_{u∈T} [r, u])`.
pub fn hv_inclusion_exclusion<T: AsRef<ObjectiveVector>>(points: &[T], r: &ReferencePoint) -> Result<i128> {
    if points.len() > MAX_INCLUSION_EXCLUSION {
        return Err(Error::BudgetExceeded(format!(
            "inclusion-exclusion over {} points exceeds the limit {MAX_INCLUSION_EXCLUSION}",
            points.len()
        )));
    }
    let m = r.len();
    for p in points {
        if p.as_ref().len() != m {
            return Err(Error::DimensionMismatch { left: p.as_ref().len(), right: m });
        }
    }
    let mut total = 0i128;
    let mut corner = vec![0i64; m];
    for mask in 1u32..1 << points.len() {
        corner.iter_mut().for_each(|c| *c = i64::MAX);
        for (i, p) in points.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (c, v) in corner.iter_mut().zip(p.as_ref().values()) {
                    *c = (*c).min(*v);
                }
            }
        }
        let vol: i128 = corner
            .iter()
            .zip(r.coords())
            .map(|(c, r)| (c - r).max(0) as i128)
            .product();
        if mask.count_ones() % 2 == 1 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total)
}

/// Monte-Carlo estimate of the hypervolume together with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Uniform sampling in the bounding box `[r, max(S)]`.
pub fn hv_monte_carlo<T, R>(points: &[T], r: &ReferencePoint, samples: u64, rng: &mut R) -> Result<Estimate>
where
    T: AsRef<ObjectiveVector>,
    R: Rng + ?Sized,
{
    if samples < 1000 {
        return Err(invalid(format!("Monte-Carlo hypervolume needs at least 1000 samples, got {samples}")));
    }
    if points.is_empty() {
        return Ok(Estimate { value: 0.0, std_error: 0.0 });
    }
    let m = r.len();
    let mut upper = vec![i64::MIN; m];
    for p in points {
        let v = p.as_ref().values();
        if v.len() != m {
            return Err(Error::DimensionMismatch { left: v.len(), right: m });
        }
        for (u, x) in upper.iter_mut().zip(v) {
            *u = (*u).max(*x);
        }
    }
    if upper.iter().zip(r.coords()).any(|(u, r)| u <= r) {
        return Ok(Estimate { value: 0.0, std_error: 0.0 });
    }
    let box_volume: f64 = upper.iter().zip(r.coords()).map(|(u, r)| (u - r) as f64).product();
    let mut sample = vec![0f64; m];
    let mut hits = 0u64;
    for _ in 0..samples {
        for (d, s) in sample.iter_mut().enumerate() {
            *s = rng.gen_range(r.coords()[d] as f64..upper[d] as f64);
        }
        if points
            .iter()
            .any(|p| p.as_ref().values().iter().zip(&sample).all(|(v, s)| *s <= *v as f64))
        {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    Ok(Estimate {
        value: frac * box_volume,
        std_error: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
    })
}

/// True iff the individuals are pairwise incomparable.
pub fn verify_antichain(individuals: &[Individual]) -> bool {
    individuals.iter().enumerate().all(|(i, a)| {
        individuals[i + 1..]
            .iter()
            .all(|b| compare_values(a.objectives().values(), b.objectives().values()) == Relation::Incomparable)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::incomparable_family;
    use crate::benchmarks::incomparable_family_instance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ovs(vs: &[&[i64]]) -> Vec<ObjectiveVector> {
        vs.iter().map(|v| ObjectiveVector::new(v.to_vec())).collect()
    }

    #[test]
    fn brute_force_front_examples() {
        let budget = OracleBudget::default();
        let inst = ProblemInstance::mojzj(8, 4, 2).unwrap();
        let front = brute_force_front(&inst, &budget).unwrap();
        assert_eq!(front.size(), 9);
        assert_eq!(front, inst.pareto_front());
        let omm = ProblemInstance::one_min_max(6).unwrap();
        assert_eq!(brute_force_front(&omm, &budget).unwrap().size(), 7);
        let lotz = ProblemInstance::lotz(5).unwrap();
        let front = brute_force_front(&lotz, &budget).unwrap();
        assert_eq!(front, lotz.pareto_front());
        assert_eq!(front.size(), 6);
    }

    #[test]
    fn budget_limits() {
        assert!(OracleBudget::new(25, 10).is_err());
        let inst = ProblemInstance::one_min_max(15).unwrap();
        assert!(matches!(
            brute_force_front(&inst, &OracleBudget::default()),
            Err(Error::BudgetExceeded(_))
        ));
        let many = ovs(&[&[1i64][..]; 16]);
        assert!(hv_inclusion_exclusion(&many, &ReferencePoint::default_for(1)).is_err());
    }

    #[test]
    fn pareto_set_matches_characterization() {
        let budget = OracleBudget::default();
        for inst in [
            ProblemInstance::mojzj(8, 4, 2).unwrap(),
            ProblemInstance::mojzj(10, 2, 3).unwrap(),
            ProblemInstance::lotz(8).unwrap(),
            ProblemInstance::momm(6, 4).unwrap(),
        ] {
            let set: HashSet<BitString> = brute_force_pareto_set(&inst, &budget).unwrap().into_iter().collect();
            for i in 0..1u64 << inst.n() {
                let x = BitString::from_index(i, inst.n());
                assert_eq!(set.contains(&x), inst.is_pareto_optimal(&x).unwrap(), "{inst} {x}");
            }
        }
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let r = ReferencePoint::default_for(2);
        assert_eq!(hv_inclusion_exclusion(&ovs(&[&[0, 2], &[2, 0]]), &r).unwrap(), 5);
        assert_eq!(
            hv_inclusion_exclusion(&ovs(&[&[0, 2], &[2, 0], &[0, 2]]), &r).unwrap(),
            5
        );
        assert_eq!(hv_inclusion_exclusion(&ovs(&[&[1, 1], &[1, 1], &[0, 0]]), &r).unwrap(), 4);
    }

    #[test]
    fn monte_carlo_examples() {
        let r = ReferencePoint::default_for(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let est = hv_monte_carlo(&ovs(&[&[1, 2]]), &r, 1_000_000, &mut rng).unwrap();
        // a single box fills its bounding box exactly
        assert!((est.value - 6.0).abs() <= 3.0 * est.std_error + 1e-12);
        let empty: Vec<ObjectiveVector> = vec![];
        assert_eq!(hv_monte_carlo(&empty, &r, 1000, &mut rng).unwrap().value, 0.0);
        assert!(hv_monte_carlo(&empty, &r, 10, &mut rng).is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_inclusion_exclusion() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let m = rng.gen_range(2..=5);
            let size = rng.gen_range(1..=6);
            let pts: Vec<ObjectiveVector> = (0..size)
                .map(|_| ObjectiveVector::new((0..m).map(|_| rng.gen_range(0..=20)).collect()))
                .collect();
            let r = ReferencePoint::default_for(m);
            let exact = hv_inclusion_exclusion(&pts, &r).unwrap() as f64;
            let est = hv_monte_carlo(&pts, &r, 20_000, &mut rng).unwrap();
            assert!((est.value - exact).abs() <= 4.0 * est.std_error + 1e-9, "{est:?} vs {exact}");
        }
    }

    #[test]
    fn antichain_checks() {
        let inst = incomparable_family_instance(8).unwrap();
        let family: Vec<Individual> = incomparable_family(8, 3)
            .unwrap()
            .into_iter()
            .map(|x| inst.individual(x).unwrap())
            .collect();
        assert!(verify_antichain(&family));
        assert!(verify_antichain(&family[..1]));
        let omm = ProblemInstance::one_min_max(4).unwrap();
        let chain: Vec<Individual> = ["1100", "1100"].iter().map(|s| omm.individual(s.parse().unwrap()).unwrap()).collect();
        assert!(!verify_antichain(&chain));
        let lotz = ProblemInstance::lotz(4).unwrap();
        let chain: Vec<Individual> = ["1100", "0100"].iter().map(|s| lotz.individual(s.parse().unwrap()).unwrap()).collect();
        assert!(!verify_antichain(&chain));
    }
}

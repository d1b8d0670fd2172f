//! Parent selection and mutation: standard bit-wise mutation and
//! heavy-tailed mutation with a power-law distributed rate.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::bitstring::BitString;
use crate::error::{invalid, Result};

/// Default power-law exponent for heavy-tailed mutation.
pub const DEFAULT_BETA: f64 = 1.5;

/// Returns each member with probability `1/len`.
pub fn select_parent_uniform<'a, T, R: Rng + ?Sized>(population: &'a [T], rng: &mut R) -> Result<&'a T> {
    if population.is_empty() {
        return Err(invalid("cannot select a parent from an empty population"));
    }
    Ok(&population[rng.gen_range(0..population.len())])
}

fn flip_each<R: Rng + ?Sized>(x: &BitString, p: f64, rng: &mut R) -> BitString {
    let mut y = x.clone();
    for i in 0..x.len() {
        if rng.gen_bool(p) {
            y.flip(i);
        }
    }
    y
}

/// Flips every bit independently with probability `1/n`.
pub fn mutate_standard<R: Rng + ?Sized>(x: &BitString, rng: &mut R) -> BitString {
    if x.is_empty() {
        return x.clone();
    }
    flip_each(x, 1.0 / x.len() as f64, rng)
}

/// Power law on `[1..floor(n/2)]` with `Pr[α = i] ∝ i^{-β}`.
#[derive(Clone, Debug)]
pub struct PowerLaw {
    beta: f64,
    support_max: usize,
    normalizer: f64,
    // cumulative[i] = Σ_{j<=i+1} j^{-β}
    cumulative: Vec<f64>,
}

impl PowerLaw {
    pub fn new(n: usize, beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 1.0 {
            return Err(invalid(format!("power-law exponent must be a finite real > 1, got {beta}")));
        }
        let support_max = n / 2;
        if support_max < 1 {
            return Err(invalid(format!("power law on [1..n/2] needs n >= 2, got n={n}")));
        }
        let weights: Vec<f64> = (1..=support_max).map(|i| (i as f64).powf(-beta)).collect();
        // Smallest terms first with Neumaier compensation.
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for &w in weights.iter().rev() {
            let t = sum + w;
            if sum.abs() >= w.abs() {
                comp += (sum - t) + w;
            } else {
                comp += (w - t) + sum;
            }
            sum = t;
        }
        let normalizer = sum + comp;
        let mut acc = 0.0;
        let cumulative = weights
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect();
        Ok(PowerLaw { beta, support_max, normalizer, cumulative })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn support_max(&self) -> usize {
        self.support_max
    }

    /// `C^β_{n/2} = Σ_{j=1}^{n/2} j^{-β}`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn pmf(&self, i: usize) -> f64 {
        if i < 1 || i > self.support_max {
            return 0.0;
        }
        (i as f64).powf(-self.beta) / self.normalizer
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("support is non-empty");
        let u = rng.gen::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.support_max - 1) + 1
    }
}

pub fn sample_alpha<R: Rng + ?Sized>(dist: &PowerLaw, rng: &mut R) -> usize {
    dist.sample(rng)
}

/// Draws a fresh `α` and flips every bit independently with probability
/// `α/n`.
pub fn mutate_heavy_tailed<R: Rng + ?Sized>(x: &BitString, dist: &PowerLaw, rng: &mut R) -> Result<BitString> {
    if dist.support_max != x.len() / 2 {
        return Err(invalid(format!(
            "power law built for n/2={} applied to a string of length {}",
            dist.support_max,
            x.len()
        )));
    }
    let alpha = dist.sample(rng);
    Ok(flip_each(x, alpha as f64 / x.len() as f64, rng))
}

/// Mutation operator as configured for a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MutationOperator {
    Standard,
    HeavyTailed { beta: f64 },
}

impl MutationOperator {
    pub fn heavy_tailed(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 1.0 {
            return Err(invalid(format!("heavy-tailed mutation needs beta > 1, got {beta}")));
        }
        Ok(MutationOperator::HeavyTailed { beta })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MutationOperator::Standard => "standard",
            MutationOperator::HeavyTailed { .. } => "heavy",
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match self {
            MutationOperator::Standard => None,
            MutationOperator::HeavyTailed { beta } => Some(*beta),
        }
    }

    /// Specializes the operator to strings of length `n`, caching the
    /// power-law normalizer.
    pub fn for_length(&self, n: usize) -> Result<Mutator> {
        let dist = match *self {
            MutationOperator::Standard => None,
            MutationOperator::HeavyTailed { beta } => Some(PowerLaw::new(n, beta)?),
        };
        Ok(Mutator { n, dist })
    }
}

impl fmt::Display for MutationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MutationOperator::Standard => f.write_str("standard"),
            MutationOperator::HeavyTailed { beta } => write!(f, "heavy(beta={beta})"),
        }
    }
}

/// A [`MutationOperator`] bound to a fixed string length.
#[derive(Clone, Debug)]
pub struct Mutator {
    n: usize,
    dist: Option<PowerLaw>,
}

impl Mutator {
    pub fn mutate<R: Rng + ?Sized>(&self, x: &BitString, rng: &mut R) -> BitString {
        debug_assert_eq!(x.len(), self.n);
        match &self.dist {
            None => mutate_standard(x, rng),
            Some(dist) => {
                let alpha = dist.sample(rng);
                flip_each(x, alpha as f64 / self.n as f64, rng)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn parent_selection() {
        let mut r = rng(1);
        assert!(select_parent_uniform::<u8, _>(&[], &mut r).is_err());
        for _ in 0..100 {
            assert_eq!(*select_parent_uniform(&[7], &mut r).unwrap(), 7);
        }
        let pop = [0usize, 1, 2, 3];
        let draws = 1_000_000;
        let mut counts = [0usize; 4];
        for _ in 0..draws {
            counts[*select_parent_uniform(&pop, &mut r).unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 / draws as f64 - 0.25).abs() <= 0.005, "{counts:?}");
        }
        let seq = |seed| {
            let mut r = rng(seed);
            (0..50).map(|_| *select_parent_uniform(&[0, 1], &mut r).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(seq(9), seq(9));
    }

    #[test]
    fn standard_mutation_on_one_bit_always_flips() {
        let mut r = rng(2);
        let x: BitString = "0".parse().unwrap();
        for _ in 0..1000 {
            assert_eq!(mutate_standard(&x, &mut r).to_string(), "1");
        }
    }

    #[test]
    fn standard_mutation_statistics() {
        let mut r = rng(3);
        let n = 20;
        let x = BitString::random(n, &mut r);
        let trials = 1_000_000;
        let mut total = 0usize;
        let mut exact_pair = 0usize;
        for _ in 0..trials {
            let y = mutate_standard(&x, &mut r);
            assert_eq!(y.len(), n);
            let d = x.hamming_distance(&y).unwrap();
            total += d;
            if d == 2 && y.get(3) != x.get(3) && y.get(11) != x.get(11) {
                exact_pair += 1;
            }
        }
        assert!((total as f64 / trials as f64 - 1.0).abs() <= 0.01);
        let p = (1.0 / 20.0f64).powi(2) * (19.0 / 20.0f64).powi(18);
        let est = exact_pair as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((est - p).abs() <= 3.0 * se, "est {est} vs {p}");
    }

    #[test]
    fn power_law_small_cases() {
        let d = PowerLaw::new(4, 2.0).unwrap();
        assert!((d.normalizer() - 1.25).abs() < 1e-15);
        assert!((d.pmf(1) - 0.8).abs() < 1e-15);
        assert!((d.pmf(2) - 0.2).abs() < 1e-15);
        let d = PowerLaw::new(2, 1.5).unwrap();
        let mut r = rng(4);
        assert!((0..1000).all(|_| d.sample(&mut r) == 1));
        // odd n: support is floor(n/2)
        assert_eq!(PowerLaw::new(7, 1.5).unwrap().support_max(), 3);
    }

    #[test]
    fn power_law_rejects_bad_parameters() {
        assert!(PowerLaw::new(1, 1.5).is_err());
        assert!(PowerLaw::new(10, 1.0).is_err());
        assert!(PowerLaw::new(10, f64::NAN).is_err());
        assert!(MutationOperator::heavy_tailed(0.5).is_err());
    }

    #[test]
    fn power_law_pmf_sums_to_one() {
        for (n, beta) in [(2, 1.1), (20, 1.5), (101, 2.5), (1000, 1.01)] {
            let d = PowerLaw::new(n, beta).unwrap();
            let total: f64 = (1..=n / 2).map(|i| d.pmf(i)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn power_law_goodness_of_fit() {
        let d = PowerLaw::new(20, 1.5).unwrap();
        let mut r = rng(5);
        let draws = 1_000_000;
        let mut counts = [0usize; 11];
        for _ in 0..draws {
            counts[sample_alpha(&d, &mut r)] += 1;
        }
        assert_eq!(counts[0], 0);
        let chi2: f64 = (1..=10)
            .map(|i| {
                let e = d.pmf(i) * draws as f64;
                (counts[i] as f64 - e).powi(2) / e
            })
            .sum();
        // chi-square, 9 degrees of freedom, upper 0.001 quantile
        assert!(chi2 < 27.877, "chi2 = {chi2}");
    }

    #[test]
    fn heavy_tailed_on_two_bits_uses_rate_one_half() {
        let d = PowerLaw::new(2, 1.5).unwrap();
        let mut r = rng(6);
        let x: BitString = "00".parse().unwrap();
        let trials = 200_000;
        let flips: usize = (0..trials)
            .map(|_| mutate_heavy_tailed(&x, &d, &mut r).unwrap().count_ones())
            .sum();
        let mean = flips as f64 / trials as f64;
        assert!((mean - 1.0).abs() < 0.01);
        assert!(mutate_heavy_tailed(&BitString::zeros(5), &d, &mut r).is_err());
    }

    /// `Pr[H = j] = Σ_α Pr[α] C(n,j) (α/n)^j (1-α/n)^{n-j}`.
    fn heavy_distance_pmf(d: &PowerLaw, n: usize, j: usize) -> f64 {
        (1..=n / 2)
            .map(|a| {
                let p = a as f64 / n as f64;
                d.pmf(a) * binom(n as u64, j as u64) * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32)
            })
            .sum()
    }

    #[test]
    fn heavy_tailed_distance_has_power_law_tail() {
        let n = 20;
        let beta = 1.5;
        let d = PowerLaw::new(n, beta).unwrap();
        let exact: Vec<f64> = (1..=n / 2).map(|j| heavy_distance_pmf(&d, n, j)).collect();
        let c = exact
            .iter()
            .enumerate()
            .map(|(i, p)| p * ((i + 1) as f64).powf(beta))
            .fold(f64::INFINITY, f64::min);
        assert!(c > 0.05, "tail constant {c}");

        let mut r = rng(7);
        let x = BitString::random(n, &mut r);
        let trials = 1_000_000;
        let mut counts = vec![0usize; n + 1];
        for _ in 0..trials {
            let y = mutate_heavy_tailed(&x, &d, &mut r).unwrap();
            counts[x.hamming_distance(&y).unwrap()] += 1;
        }
        for j in 1..=n / 2 {
            let est = counts[j] as f64 / trials as f64;
            let se = (exact[j - 1] * (1.0 - exact[j - 1]) / trials as f64).sqrt();
            assert!((est - exact[j - 1]).abs() <= 4.0 * se, "j={j}: {est} vs {}", exact[j - 1]);
            assert!(est >= 0.5 * c * (j as f64).powf(-beta));
        }
    }

    #[test]
    fn heavy_tailed_beats_standard_on_specific_flip_sets() {
        let n = 20;
        let d = PowerLaw::new(n, 1.5).unwrap();
        for k in 3..=10 {
            let heavy: f64 = (1..=n / 2)
                .map(|a| {
                    let p = a as f64 / n as f64;
                    d.pmf(a) * p.powi(k) * (1.0 - p).powi(n as i32 - k)
                })
                .sum();
            let p = 1.0 / n as f64;
            let standard = p.powi(k) * (1.0 - p).powi(n as i32 - k);
            assert!(heavy > standard, "k={k}");
        }
    }

    #[test]
    fn mutator_preserves_length() {
        let mut r = rng(8);
        for op in [MutationOperator::Standard, MutationOperator::heavy_tailed(2.0).unwrap()] {
            let m = op.for_length(33).unwrap();
            let x = BitString::random(33, &mut r);
            for _ in 0..100 {
                assert_eq!(m.mutate(&x, &mut r).len(), 33);
            }
        }
        assert!(MutationOperator::heavy_tailed(1.5).unwrap().for_length(1).is_err());
    }
}

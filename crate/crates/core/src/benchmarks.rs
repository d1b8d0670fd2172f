//! Benchmark problems: mOJZJ, mOneMinMax, OneMinMax and LOTZ.
//!
//! The block problems split the `n` bit positions into `m/2` contiguous
//! blocks of length `n' = 2n/m`; block `i` drives objectives `2i-1` and `2i`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitstring::BitString;
use crate::error::{invalid, Error, Result};
use crate::objective::{Individual, ObjectiveVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Mojzj,
    Momm,
    #[serde(rename = "omm")]
    OneMinMax,
    Lotz,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Mojzj => "mojzj",
            ProblemKind::Momm => "momm",
            ProblemKind::OneMinMax => "omm",
            ProblemKind::Lotz => "lotz",
        }
    }

    /// Whether the problem is built from `m/2` bi-objective blocks.
    pub fn is_block_problem(self) -> bool {
        matches!(self, ProblemKind::Mojzj | ProblemKind::Momm)
    }
}

/// A validated benchmark instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProblemInstance {
    kind: ProblemKind,
    n: usize,
    m: usize,
    k: Option<usize>,
}

fn check_blocks(n: usize, m: usize) -> Result<()> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(invalid(format!("number of objectives must be even and >= 2, got m={m}")));
    }
    if n == 0 || !n.is_multiple_of(m / 2) {
        return Err(invalid(format!("n={n} must be a positive multiple of m/2={}", m / 2)));
    }
    Ok(())
}

impl ProblemInstance {
    pub fn mojzj(n: usize, m: usize, k: usize) -> Result<Self> {
        check_blocks(n, m)?;
        let block = 2 * n / m;
        if k < 1 || 2 * k > block {
            return Err(invalid(format!(
                "gap size must satisfy 1 <= k <= n'/2 = {}, got k={k}",
                block / 2
            )));
        }
        Ok(ProblemInstance { kind: ProblemKind::Mojzj, n, m, k: Some(k) })
    }

    pub fn momm(n: usize, m: usize) -> Result<Self> {
        check_blocks(n, m)?;
        Ok(ProblemInstance { kind: ProblemKind::Momm, n, m, k: None })
    }

    pub fn one_min_max(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("problem size must be positive"));
        }
        Ok(ProblemInstance { kind: ProblemKind::OneMinMax, n, m: 2, k: None })
    }

    pub fn lotz(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("problem size must be positive"));
        }
        Ok(ProblemInstance { kind: ProblemKind::Lotz, n, m: 2, k: None })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Gap size; only mOJZJ has one.
    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// `n' = 2n/m`; equals `n` for the plain bi-objective problems.
    pub fn block_len(&self) -> usize {
        2 * self.n / self.m
    }

    pub fn num_blocks(&self) -> usize {
        self.m / 2
    }

    /// Bit positions of block `i` (zero based).
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        let len = self.block_len();
        i * len..(i + 1) * len
    }

    fn block_counts<'a>(&'a self, x: &'a BitString) -> impl Iterator<Item = usize> + 'a {
        (0..self.num_blocks()).map(move |i| x.count_ones_in(self.block(i)))
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { left: x.len(), right: self.n });
        }
        Ok(())
    }

    fn require_mojzj(&self, what: &str) -> Result<usize> {
        match (self.kind, self.k) {
            (ProblemKind::Mojzj, Some(k)) => Ok(k),
            _ => Err(Error::NotApplicable(format!("{what} is defined for mOJZJ only, not {self}"))),
        }
    }

    pub fn evaluate(&self, x: &BitString) -> Result<ObjectiveVector> {
        match self.kind {
            ProblemKind::Mojzj => eval_mojzj(x, self),
            ProblemKind::Momm => eval_momm(x, self),
            ProblemKind::OneMinMax => {
                self.check_len(x)?;
                Ok(eval_oneminmax(x))
            }
            ProblemKind::Lotz => {
                self.check_len(x)?;
                Ok(eval_lotz(x))
            }
        }
    }

    pub fn individual(&self, genome: BitString) -> Result<Individual> {
        let objectives = self.evaluate(&genome)?;
        Ok(Individual::from_parts(genome, objectives))
    }

    /// Smallest value any objective can take on this instance.
    pub fn objective_lower_bound(&self) -> i64 {
        match self.kind {
            // Jump is at least 1: k + 0 outside the gap, n' - |y|_1 >= 1 inside.
            ProblemKind::Mojzj => 1,
            _ => 0,
        }
    }

    /// Size of the Pareto front, `M`.
    pub fn front_size(&self) -> u64 {
        let blocks = self.num_blocks() as u32;
        let len = self.block_len() as u64;
        match self.kind {
            ProblemKind::Mojzj => (len - 2 * self.k.unwrap_or(1) as u64 + 3).pow(blocks),
            ProblemKind::Momm => (len + 1).pow(blocks),
            ProblemKind::OneMinMax | ProblemKind::Lotz => self.n as u64 + 1,
        }
    }

    /// Upper bound on the size of any set of pairwise incomparable solutions:
    /// `(n'+1)^(m/2)` for the block problems and `n+1` for OneMinMax/LOTZ.
    pub fn antichain_bound(&self) -> u64 {
        match self.kind {
            ProblemKind::Mojzj | ProblemKind::Momm => {
                (self.block_len() as u64 + 1).pow(self.num_blocks() as u32)
            }
            ProblemKind::OneMinMax | ProblemKind::Lotz => self.n as u64 + 1,
        }
    }

    /// The Pareto front in closed form.
    pub fn pareto_front(&self) -> FrontDescriptor {
        let len = self.block_len() as i64;
        let per_block: Vec<(i64, i64)> = match self.kind {
            ProblemKind::Mojzj => {
                let k = self.k.unwrap_or(1) as i64;
                std::iter::once(k)
                    .chain(2 * k..=len)
                    .chain(std::iter::once(len + k))
                    .map(|a| (a, len + 2 * k - a))
                    .collect()
            }
            ProblemKind::Momm => (0..=len).map(|ones| (len - ones, ones)).collect(),
            ProblemKind::OneMinMax | ProblemKind::Lotz => {
                (0..=len).map(|i| (i, len - i)).collect()
            }
        };
        let mut points = vec![Vec::with_capacity(self.m)];
        for _ in 0..self.num_blocks() {
            points = points
                .into_iter()
                .flat_map(|prefix| {
                    per_block.iter().map(move |&(a, b)| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
        FrontDescriptor::new(points.into_iter().map(ObjectiveVector::new).collect())
    }

    /// Pareto-set membership from the closed-form characterization.
    pub fn is_pareto_optimal(&self, x: &BitString) -> Result<bool> {
        self.check_len(x)?;
        Ok(match self.kind {
            ProblemKind::Mojzj => {
                let k = self.k.unwrap_or(1);
                let len = self.block_len();
                self.block_counts(x)
                    .all(|c| (k..=len - k).contains(&c) || c == 0 || c == len)
            }
            ProblemKind::Momm | ProblemKind::OneMinMax => true,
            ProblemKind::Lotz => x.leading_ones() + x.trailing_zeros() == self.n,
        })
    }

    /// A Pareto optimum none of whose blocks is `0^{n'}` or `1^{n'}`.
    pub fn is_inner_pareto_optimum(&self, x: &BitString) -> Result<bool> {
        let k = self.require_mojzj("inner Pareto optimality")?;
        self.check_len(x)?;
        let len = self.block_len();
        Ok(self.block_counts(x).all(|c| (k..=len - k).contains(&c)))
    }

    /// Number of blocks whose one-count lies in `[k..n'-k]`.
    pub fn inner_level(&self, x: &BitString) -> Result<usize> {
        let k = self.require_mojzj("the inner level")?;
        self.check_len(x)?;
        let len = self.block_len();
        Ok(self.block_counts(x).filter(|c| (k..=len - k).contains(c)).count())
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProblemKind::Mojzj => write!(
                f,
                "mojzj:n={},m={},k={}",
                self.n,
                self.m,
                self.k.unwrap_or_default()
            ),
            ProblemKind::Momm => write!(f, "momm:n={},m={}", self.n, self.m),
            ProblemKind::OneMinMax => write!(f, "omm:n={}", self.n),
            ProblemKind::Lotz => write!(f, "lotz:n={}", self.n),
        }
    }
}

/// Parses `mojzj:n=<int>,m=<int>,k=<int>`, `momm:n=<int>,m=<int>`,
/// `omm:n=<int>` or `lotz:n=<int>`.
impl FromStr for ProblemInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ProblemSpec { spec: s.to_string(), reason };
        let (name, params) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| fail("expected <name>:<key>=<value>,...".into()))?;
        let allowed: &[&str] = match name {
            "mojzj" => &["n", "m", "k"],
            "momm" => &["n", "m"],
            "omm" | "lotz" => &["n"],
            other => return Err(fail(format!("unknown problem `{other}`"))),
        };
        let mut values: Vec<Option<usize>> = vec![None; allowed.len()];
        for pair in params.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| fail(format!("expected key=value, got `{pair}`")))?;
            let slot = allowed
                .iter()
                .position(|a| *a == key.trim())
                .ok_or_else(|| fail(format!("unknown parameter `{key}` for {name}")))?;
            if values[slot].is_some() {
                return Err(fail(format!("duplicate parameter `{key}`")));
            }
            let parsed = value
                .trim()
                .parse::<usize>()
                .map_err(|_| fail(format!("`{value}` is not a non-negative integer")))?;
            values[slot] = Some(parsed);
        }
        let get = |i: usize| values[i].ok_or_else(|| fail(format!("missing parameter `{}`", allowed[i])));
        let inst = match name {
            "mojzj" => ProblemInstance::mojzj(get(0)?, get(1)?, get(2)?),
            "momm" => ProblemInstance::momm(get(0)?, get(1)?),
            "omm" => ProblemInstance::one_min_max(get(0)?),
            _ => ProblemInstance::lotz(get(0)?),
        };
        inst.map_err(|e| fail(e.to_string()))
    }
}

/// `Jump_{n',k}` of a block given its number of ones.
pub(crate) fn jump_value(ones: usize, len: usize, k: usize) -> i64 {
    if ones + k <= len || ones == len {
        (k + ones) as i64
    } else {
        (len - ones) as i64
    }
}

/// The Jump function on a bit string of length `n'`.
pub fn jump(y: &BitString, k: usize) -> Result<i64> {
    if k < 1 || k > y.len() {
        return Err(invalid(format!("gap size must lie in [1..{}], got {k}", y.len())));
    }
    Ok(jump_value(y.count_ones(), y.len(), k))
}

pub fn eval_mojzj(x: &BitString, inst: &ProblemInstance) -> Result<ObjectiveVector> {
    let k = inst.require_mojzj("eval_mojzj")?;
    inst.check_len(x)?;
    let len = inst.block_len();
    let mut values = Vec::with_capacity(inst.m);
    for ones in inst.block_counts(x) {
        values.push(jump_value(ones, len, k));
        values.push(jump_value(len - ones, len, k));
    }
    Ok(ObjectiveVector::new(values))
}

pub fn eval_momm(x: &BitString, inst: &ProblemInstance) -> Result<ObjectiveVector> {
    if inst.kind != ProblemKind::Momm {
        return Err(Error::NotApplicable(format!("eval_momm on {inst}")));
    }
    inst.check_len(x)?;
    let len = inst.block_len();
    let mut values = Vec::with_capacity(inst.m);
    for ones in inst.block_counts(x) {
        values.push((len - ones) as i64);
        values.push(ones as i64);
    }
    Ok(ObjectiveVector::new(values))
}

/// `(number of zeros, number of ones)`.
pub fn eval_oneminmax(x: &BitString) -> ObjectiveVector {
    ObjectiveVector::new(vec![x.count_zeros() as i64, x.count_ones() as i64])
}

/// `(leading ones, trailing zeros)`.
pub fn eval_lotz(x: &BitString) -> ObjectiveVector {
    ObjectiveVector::new(vec![x.leading_ones() as i64, x.trailing_zeros() as i64])
}

/// The exact set of Pareto-optimal objective vectors.
#[derive(Clone, Debug)]
pub struct FrontDescriptor {
    points: Vec<ObjectiveVector>,
    lookup: HashSet<ObjectiveVector>,
}

impl FrontDescriptor {
    /// Deduplicates and sorts the given points.
    pub fn new(mut points: Vec<ObjectiveVector>) -> Self {
        points.sort();
        points.dedup();
        let lookup = points.iter().cloned().collect();
        FrontDescriptor { points, lookup }
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, v: &ObjectiveVector) -> bool {
        self.lookup.contains(v)
    }
}

impl PartialEq for FrontDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for FrontDescriptor {}

/// The mOJZJ instance (`m = 4`, `k = n'/2`) on which
/// [`incomparable_family`] lives.
pub fn incomparable_family_instance(block_len: usize) -> Result<ProblemInstance> {
    if !block_len.is_multiple_of(2) {
        return Err(invalid(format!("block length must be even, got {block_len}")));
    }
    ProblemInstance::mojzj(2 * block_len, 4, block_len / 2)
}

/// The strings `x^(i) = 1^i 0^{n'-i} 1^{n'/2+i} 0^{n'/2-i}` for
/// `i = 1..=count`. Their objective vectors are
/// `(k+i, i, n'/2-i, k+n'/2-i)` with `k = n'/2`, pairwise incomparable, so
/// incomparable sets can be larger than the Pareto front.
pub fn incomparable_family(block_len: usize, count: usize) -> Result<Vec<BitString>> {
    let inst = incomparable_family_instance(block_len)?;
    let k = block_len / 2;
    if count < 1 || count + 1 > k {
        return Err(invalid(format!("family size must lie in [1..{}], got {count}", k.saturating_sub(1))));
    }
    let half = block_len / 2;
    Ok((1..=count)
        .map(|i| {
            let mut x = BitString::zeros(inst.n());
            for p in 0..i {
                x.set(p, true);
            }
            for p in 0..half + i {
                x.set(block_len + p, true);
            }
            x
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn ov(v: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(v.to_vec())
    }

    /// Jump written out per position, without any shared helper.
    fn jump_naive(y: &[bool], k: usize) -> i64 {
        let len = y.len();
        let ones = y.iter().filter(|&&b| b).count();
        if ones <= len - k || y.iter().all(|&b| b) {
            (k + ones) as i64
        } else {
            (len - ones) as i64
        }
    }

    /// mOJZJ straight from the definition: odd objectives use Jump on the
    /// block, even ones Jump on the complemented block.
    fn mojzj_naive(x: &BitString, m: usize, k: usize) -> Vec<i64> {
        let bits: Vec<bool> = x.iter().collect();
        let len = 2 * bits.len() / m;
        let mut out = vec![];
        for block in bits.chunks(len) {
            let comp: Vec<bool> = block.iter().map(|b| !b).collect();
            out.push(jump_naive(block, k));
            out.push(jump_naive(&comp, k));
        }
        out
    }

    /// The bi-objective OJZJ as usually stated.
    fn ojzj(x: &BitString, k: usize) -> Vec<i64> {
        let n = x.len();
        let ones = x.count_ones();
        let zeros = n - ones;
        let f1 = if ones <= n - k || ones == n { k + ones } else { n - ones };
        let f2 = if zeros <= n - k || zeros == n { k + zeros } else { n - zeros };
        vec![f1 as i64, f2 as i64]
    }

    #[test]
    fn jump_examples() {
        assert_eq!(jump(&bs("1111"), 2).unwrap(), 6);
        assert_eq!(jump(&bs("0000"), 2).unwrap(), 2);
        assert_eq!(jump(&bs("0111"), 2).unwrap(), 1);
        assert!(jump(&bs("0111"), 0).is_err());
        assert!(jump(&bs("0111"), 5).is_err());
    }

    #[test]
    fn mojzj_examples() {
        let inst = ProblemInstance::mojzj(8, 4, 2).unwrap();
        assert_eq!(inst.evaluate(&bs("11110000")).unwrap(), ov(&[6, 2, 2, 6]));
        assert_eq!(inst.evaluate(&bs("11001100")).unwrap(), ov(&[4, 4, 4, 4]));
        let x = bs("11100100");
        assert_eq!(mojzj_naive(&x, 4, 2), vec![1, 3, 3, 1]);
        assert_eq!(inst.evaluate(&x).unwrap(), ov(&[1, 3, 3, 1]));
        assert!(inst.evaluate(&bs("1110")).is_err());
    }

    #[test]
    fn mojzj_matches_definition_and_block_sums() {
        for (n, m, k) in [(8, 4, 2), (12, 4, 1), (12, 6, 2), (9, 6, 1), (10, 2, 3)] {
            let inst = ProblemInstance::mojzj(n, m, k).unwrap();
            let len = inst.block_len();
            for idx in 0..1u64 << n {
                let x = BitString::from_index(idx, n);
                let f = inst.evaluate(&x).unwrap();
                assert_eq!(f.values(), mojzj_naive(&x, m, k).as_slice());
                for (b, pair) in f.values().chunks(2).enumerate() {
                    let c = x.count_ones_in(inst.block(b));
                    let on_front = (k..=len - k).contains(&c) || c == 0 || c == len;
                    assert_eq!(pair[0] + pair[1] == (len + 2 * k) as i64, on_front);
                }
            }
        }
    }

    #[test]
    fn two_objective_mojzj_is_ojzj() {
        for n in [2, 5, 8, 14] {
            for k in 1..=n / 2 {
                let inst = ProblemInstance::mojzj(n, 2, k).unwrap();
                for idx in 0..1u64 << n {
                    let x = BitString::from_index(idx, n);
                    assert_eq!(inst.evaluate(&x).unwrap().values(), ojzj(&x, k).as_slice());
                }
            }
        }
    }

    #[test]
    fn momm_is_mojzj_with_unit_gap_minus_one_up_to_pair_order() {
        for (n, m) in [(4, 2), (6, 4), (12, 4), (12, 6), (8, 8)] {
            let momm = ProblemInstance::momm(n, m).unwrap();
            let jump1 = ProblemInstance::mojzj(n, m, 1).unwrap();
            for idx in 0..1u64 << n {
                let x = BitString::from_index(idx, n);
                let a = momm.evaluate(&x).unwrap();
                let b = jump1.evaluate(&x).unwrap();
                // Equal up to swapping the two objectives of every block.
                let shifted: Vec<i64> = b.values().chunks(2).flat_map(|p| [p[1] - 1, p[0] - 1]).collect();
                assert_eq!(a.values(), shifted.as_slice());
            }
        }
    }

    #[test]
    fn momm_examples() {
        let inst = ProblemInstance::momm(4, 2).unwrap();
        assert_eq!(inst.evaluate(&bs("1111")).unwrap(), ov(&[0, 4]));
        assert_eq!(inst.evaluate(&bs("0000")).unwrap(), ov(&[4, 0]));
        let inst = ProblemInstance::momm(6, 4).unwrap();
        // blocks 110 and 100
        assert_eq!(inst.evaluate(&bs("110100")).unwrap(), ov(&[1, 2, 2, 1]));
    }

    #[test]
    fn oneminmax_and_lotz_examples() {
        assert_eq!(eval_oneminmax(&bs("0101")), ov(&[2, 2]));
        assert_eq!(eval_oneminmax(&bs("1111")), ov(&[0, 4]));
        assert_eq!(eval_oneminmax(&bs("0000")), ov(&[4, 0]));
        assert_eq!(eval_lotz(&bs("1111")), ov(&[4, 0]));
        assert_eq!(eval_lotz(&bs("1100")), ov(&[2, 2]));
        assert_eq!(eval_lotz(&bs("0110")), ov(&[0, 1]));
    }

    #[test]
    fn front_examples() {
        let inst = ProblemInstance::mojzj(8, 4, 2).unwrap();
        assert_eq!(inst.pareto_front().size(), 9);
        assert_eq!(inst.front_size(), 9);
        let omm = ProblemInstance::one_min_max(4).unwrap().pareto_front();
        let expected: Vec<_> = [[0, 4], [1, 3], [2, 2], [3, 1], [4, 0]].iter().map(|v| ov(v)).collect();
        assert_eq!(omm, FrontDescriptor::new(expected));
        let lotz = ProblemInstance::lotz(3).unwrap().pareto_front();
        let expected: Vec<_> = [[3, 0], [2, 1], [1, 2], [0, 3]].iter().map(|v| ov(v)).collect();
        assert_eq!(lotz, FrontDescriptor::new(expected));
    }

    #[test]
    fn front_size_formula() {
        for (n, m, k) in [(8, 4, 2), (12, 4, 2), (12, 4, 3), (12, 6, 1), (40, 4, 5), (24, 8, 1)] {
            let inst = ProblemInstance::mojzj(n, m, k).unwrap();
            let len = 2 * n / m;
            let expected = ((len - 2 * k + 3) as u64).pow((m / 2) as u32);
            assert_eq!(inst.pareto_front().size() as u64, expected);
            assert_eq!(inst.front_size(), expected);
        }
    }

    #[test]
    fn pareto_membership_examples() {
        let inst = ProblemInstance::mojzj(8, 4, 2).unwrap();
        assert!(inst.is_pareto_optimal(&bs("11110000")).unwrap());
        assert!(!inst.is_pareto_optimal(&bs("11100000")).unwrap());
        assert!(inst.is_pareto_optimal(&bs("11001100")).unwrap());

        assert!(inst.is_inner_pareto_optimum(&bs("11001100")).unwrap());
        assert!(!inst.is_inner_pareto_optimum(&bs("11110000")).unwrap());
        assert!(!inst.is_inner_pareto_optimum(&bs("10100000")).unwrap());

        assert_eq!(inst.inner_level(&bs("11001100")).unwrap(), 2);
        assert_eq!(inst.inner_level(&bs("11110000")).unwrap(), 0);
        assert_eq!(inst.inner_level(&bs("11000000")).unwrap(), 1);
    }

    #[test]
    fn inner_queries_reject_other_problems() {
        let omm = ProblemInstance::one_min_max(4).unwrap();
        assert!(matches!(omm.inner_level(&bs("0101")), Err(Error::NotApplicable(_))));
        assert!(omm.is_inner_pareto_optimum(&bs("0101")).is_err());
    }

    #[test]
    fn incomparable_family_values() {
        let inst = incomparable_family_instance(8).unwrap();
        let family = incomparable_family(8, 3).unwrap();
        let values: Vec<_> = family.iter().map(|x| inst.evaluate(x).unwrap()).collect();
        assert_eq!(values[0], ov(&[5, 1, 3, 7]));
        assert_eq!(values[2], ov(&[7, 3, 1, 5]));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(values[i].incomparable(&values[j]).unwrap());
                }
            }
        }
        assert!(incomparable_family(8, 4).is_err());
        assert!(incomparable_family(8, 0).is_err());
        assert!(incomparable_family(7, 1).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(ProblemInstance::mojzj(8, 3, 1).is_err());
        assert!(ProblemInstance::mojzj(9, 4, 1).is_err());
        assert!(ProblemInstance::mojzj(8, 4, 3).is_err());
        assert!(ProblemInstance::mojzj(8, 4, 0).is_err());
        assert!(ProblemInstance::momm(0, 2).is_err());
        assert!(ProblemInstance::lotz(0).is_err());
    }

    #[test]
    fn problem_spec_grammar() {
        let p: ProblemInstance = "mojzj:n=8,m=4,k=2".parse().unwrap();
        assert_eq!(p, ProblemInstance::mojzj(8, 4, 2).unwrap());
        assert_eq!(p.to_string(), "mojzj:n=8,m=4,k=2");
        let p: ProblemInstance = "momm:m=4,n=12".parse().unwrap();
        assert_eq!(p, ProblemInstance::momm(12, 4).unwrap());
        assert_eq!("omm:n=20".parse::<ProblemInstance>().unwrap().n(), 20);
        assert_eq!("lotz:n=7".parse::<ProblemInstance>().unwrap().kind(), ProblemKind::Lotz);
        for bad in ["", "omm", "omm:n=x", "omm:n=3,m=2", "mojzj:n=8,m=4", "foo:n=3", "lotz:n=2,n=3", "mojzj:n=8,m=4,k=9"] {
            assert!(bad.parse::<ProblemInstance>().is_err(), "{bad}");
        }
    }
}

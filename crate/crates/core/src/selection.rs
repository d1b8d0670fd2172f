//! Non-dominated sorting, exact integer hypervolume and the SMS-EMOA
//! survivor selection rules.

use std::collections::HashMap;

use rand::Rng;

use crate::benchmarks::ProblemInstance;
use crate::error::{invalid, Error, Result};
use crate::objective::{compare_values, Individual, ObjectiveVector, Relation};

/// Fronts `F_1, …, F_{i*}` as indices into the sorted input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn first(&self) -> &[usize] {
        self.fronts.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn last(&self) -> &[usize] {
        self.fronts.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

fn check_dims<T: AsRef<ObjectiveVector>>(items: &[T]) -> Result<usize> {
    let m = items.first().map(|x| x.as_ref().len()).unwrap_or(0);
    for x in items {
        if x.as_ref().len() != m {
            return Err(Error::DimensionMismatch { left: m, right: x.as_ref().len() });
        }
    }
    Ok(m)
}

/// Deb's fast non-dominated sort in `O(m N^2)`.
///
/// Individuals with equal objective vectors never dominate each other and
/// therefore share a front.
pub fn fast_nondominated_sort<T: AsRef<ObjectiveVector>>(items: &[T]) -> Result<FrontPartition> {
    check_dims(items)?;
    Ok(sort_subset(items, &(0..items.len()).collect::<Vec<_>>()))
}

fn sort_subset<T: AsRef<ObjectiveVector>>(items: &[T], subset: &[usize]) -> FrontPartition {
    let len = subset.len();
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut count = vec![0usize; len];
    for a in 0..len {
        let va = items[subset[a]].as_ref().values();
        for b in a + 1..len {
            match compare_values(va, items[subset[b]].as_ref().values()) {
                Relation::Dominates => {
                    dominated[a].push(b);
                    count[b] += 1;
                }
                Relation::Dominated => {
                    dominated[b].push(a);
                    count[a] += 1;
                }
                _ => {}
            }
        }
    }
    let mut current: Vec<usize> = (0..len).filter(|&i| count[i] == 0).collect();
    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &a in &current {
            for &b in &dominated[a] {
                count[b] -= 1;
                if count[b] == 0 {
                    next.push(b);
                }
            }
        }
        fronts.push(current.iter().map(|&i| subset[i]).collect());
        current = next;
    }
    FrontPartition { fronts }
}

/// Reference point for the hypervolume; must lie strictly below every
/// objective vector it is used with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferencePoint {
    coords: Vec<i64>,
}

impl ReferencePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        ReferencePoint { coords }
    }

    /// `(-1, …, -1)`.
    pub fn default_for(m: usize) -> Self {
        ReferencePoint { coords: vec![-1; m] }
    }

    /// Validates `coords` against the instance so that `HV_r({x}) > 0` for
    /// every search point.
    pub fn for_problem(inst: &ProblemInstance, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != inst.m() {
            return Err(Error::DimensionMismatch { left: coords.len(), right: inst.m() });
        }
        let floor = inst.objective_lower_bound();
        if let Some(c) = coords.iter().find(|&&c| c >= floor) {
            return Err(invalid(format!(
                "reference point coordinate {c} is not below the smallest attainable objective value {floor}"
            )));
        }
        Ok(ReferencePoint { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Offsets of `v` above the reference point, rejecting points that do
    /// not strictly dominate it coordinatewise.
    fn shift(&self, v: &ObjectiveVector) -> Result<Vec<u64>> {
        if v.len() != self.coords.len() {
            return Err(Error::DimensionMismatch { left: v.len(), right: self.coords.len() });
        }
        v.values()
            .iter()
            .zip(&self.coords)
            .map(|(&x, &r)| {
                if x > r {
                    Ok((x - r) as u64)
                } else {
                    Err(invalid(format!("point {v} is not strictly above the reference point {:?}", self.coords)))
                }
            })
            .collect()
    }
}

/// Exact measure of `∪_{u∈S} [r, u]`.
pub fn hypervolume<T: AsRef<ObjectiveVector>>(points: &[T], r: &ReferencePoint) -> Result<u128> {
    let shifted = points
        .iter()
        .map(|p| r.shift(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(hv_shifted(&shifted, r.len()))
}

fn box_volume(p: &[u64], dims: usize) -> u128 {
    p[..dims].iter().map(|&c| c as u128).product()
}

fn hv_shifted(points: &[Vec<u64>], dims: usize) -> u128 {
    let mut refs: Vec<&[u64]> = points.iter().map(|p| p.as_slice()).collect();
    hv_recursive(&mut refs, dims)
}

fn weakly_dominates_in(a: &[u64], b: &[u64], dims: usize) -> bool {
    a[..dims].iter().zip(&b[..dims]).all(|(x, y)| x >= y)
}

/// Dimension sweep: slices along the last coordinate and recurses on the
/// points reaching each slice.
fn hv_recursive(points: &mut [&[u64]], dims: usize) -> u128 {
    match points.len() {
        0 => return 0,
        1 => return box_volume(points[0], dims),
        _ => {}
    }
    match dims {
        0 => 0,
        1 => points.iter().map(|p| p[0] as u128).max().unwrap_or(0),
        2 => {
            points.sort_unstable_by(|a, b| b[0].cmp(&a[0]).then(b[1].cmp(&a[1])));
            let mut area = 0u128;
            let mut top = 0u64;
            for p in points.iter() {
                if p[1] > top {
                    area += p[0] as u128 * (p[1] - top) as u128;
                    top = p[1];
                }
            }
            area
        }
        _ => {
            let last = dims - 1;
            points.sort_unstable_by(|a, b| b[last].cmp(&a[last]));
            let mut volume = 0u128;
            // Points seen so far, pruned to those not weakly dominated in the
            // remaining dims; later slices are lower so pruned points never
            // matter again.
            let mut reaching: Vec<&[u64]> = Vec::with_capacity(points.len());
            for i in 0..points.len() {
                let p = points[i];
                if !reaching.iter().any(|q| weakly_dominates_in(q, p, last)) {
                    reaching.retain(|q| !weakly_dominates_in(p, q, last));
                    reaching.push(p);
                }
                let level = p[last];
                let below = points.get(i + 1).map_or(0, |q| q[last]);
                if level > below {
                    let mut slice = reaching.clone();
                    volume += hv_recursive(&mut slice, last) * (level - below) as u128;
                }
            }
            volume
        }
    }
}

/// `Δ_r(x, F) = HV_r(F) − HV_r(F \ {x})` for the member at `index`.
///
/// Zero whenever another member weakly dominates `x`, which inside an
/// antichain means a duplicate objective vector.
pub fn hv_contribution<T: AsRef<ObjectiveVector>>(front: &[T], index: usize, r: &ReferencePoint) -> Result<u128> {
    if index >= front.len() {
        return Err(invalid(format!("index {index} is not a member of a front of size {}", front.len())));
    }
    let shifted = front
        .iter()
        .map(|p| r.shift(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let dims = r.len();
    Ok(contribution_shifted(&shifted, index, dims, None))
}

fn contribution_shifted(shifted: &[Vec<u64>], index: usize, dims: usize, total: Option<u128>) -> u128 {
    let x = &shifted[index];
    if shifted
        .iter()
        .enumerate()
        .any(|(j, y)| j != index && weakly_dominates_in(y, x, dims))
    {
        return 0;
    }
    let total = total.unwrap_or_else(|| hv_shifted(shifted, dims));
    let mut without: Vec<&[u64]> = shifted
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, p)| p.as_slice())
        .collect();
    total - hv_recursive(&mut without, dims)
}

/// Picks the member of `subset` to discard: uniformly among the members of
/// the last front with minimal hypervolume contribution.
fn removal_in_subset<T, R>(items: &[T], subset: &[usize], r: &ReferencePoint, rng: &mut R) -> Result<usize>
where
    T: AsRef<ObjectiveVector>,
    R: Rng + ?Sized,
{
    let partition = sort_subset(items, subset);
    let last = partition.last();
    if last.len() == 1 {
        return Ok(last[0]);
    }
    // All points are strictly above r, so inside the antichain `last` a
    // contribution is zero exactly for duplicated objective vectors.
    let mut multiplicity: HashMap<&ObjectiveVector, usize> = HashMap::with_capacity(last.len());
    for &i in last {
        *multiplicity.entry(items[i].as_ref()).or_default() += 1;
    }
    let duplicated: Vec<usize> = last
        .iter()
        .copied()
        .filter(|&i| multiplicity[items[i].as_ref()] > 1)
        .collect();
    let candidates = if !duplicated.is_empty() {
        for &i in last {
            r.shift(items[i].as_ref())?;
        }
        duplicated
    } else {
        let shifted = last
            .iter()
            .map(|&i| r.shift(items[i].as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let total = hv_shifted(&shifted, r.len());
        let deltas: Vec<u128> = (0..last.len())
            .map(|j| contribution_shifted(&shifted, j, r.len(), Some(total)))
            .collect();
        let min = *deltas.iter().min().expect("front is non-empty");
        last.iter()
            .zip(&deltas)
            .filter(|&(_, &d)| d == min)
            .map(|(&i, _)| i)
            .collect()
    };
    Ok(candidates[rng.gen_range(0..candidates.len())])
}

/// Index of the individual the standard SMS-EMOA removes from `combined`.
pub fn standard_removal_index<T, R>(combined: &[T], r: &ReferencePoint, rng: &mut R) -> Result<usize>
where
    T: AsRef<ObjectiveVector>,
    R: Rng + ?Sized,
{
    if combined.is_empty() {
        return Err(invalid("cannot select survivors from an empty population"));
    }
    check_dims(combined)?;
    removal_in_subset(combined, &(0..combined.len()).collect::<Vec<_>>(), r, rng)
}

/// Number of with-replacement draws the stochastic update makes from a
/// combined population of the given size: `⌊(μ+1)/2⌋`.
pub fn stochastic_sample_size(combined_len: usize) -> usize {
    combined_len / 2
}

/// Index removed by the stochastic population update: selection runs only on
/// the distinct members of a with-replacement sample of `⌊(μ+1)/2⌋` draws.
pub fn stochastic_removal_index<T, R>(combined: &[T], r: &ReferencePoint, rng: &mut R) -> Result<usize>
where
    T: AsRef<ObjectiveVector>,
    R: Rng + ?Sized,
{
    if combined.len() < 2 {
        return Err(invalid("stochastic population update needs at least two individuals"));
    }
    check_dims(combined)?;
    let mut sample: Vec<usize> = (0..stochastic_sample_size(combined.len()))
        .map(|_| rng.gen_range(0..combined.len()))
        .collect();
    sample.sort_unstable();
    sample.dedup();
    removal_in_subset(combined, &sample, r, rng)
}

fn split_off(mut combined: Vec<Individual>, index: usize) -> (Vec<Individual>, Individual) {
    let removed = combined.remove(index);
    (combined, removed)
}

/// Standard SMS-EMOA survivor selection on `R_t = P_t ∪ {x'}`; returns the
/// next population and the removed individual.
pub fn survivor_select_standard<R: Rng + ?Sized>(
    combined: Vec<Individual>,
    r: &ReferencePoint,
    rng: &mut R,
) -> Result<(Vec<Individual>, Individual)> {
    let index = standard_removal_index(&combined, r, rng)?;
    Ok(split_off(combined, index))
}

/// Stochastic population update on `R_t = P_t ∪ {x'}`.
pub fn survivor_select_stochastic<R: Rng + ?Sized>(
    combined: Vec<Individual>,
    r: &ReferencePoint,
    rng: &mut R,
) -> Result<(Vec<Individual>, Individual)> {
    let index = stochastic_removal_index(&combined, r, rng)?;
    Ok(split_off(combined, index))
}

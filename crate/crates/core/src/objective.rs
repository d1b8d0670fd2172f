//! Objective vectors, Pareto dominance and evaluated individuals.
//!
//! Everything is maximized and integer valued.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectiveVector(Vec<i64>);

/// Outcome of comparing two objective vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The left vector strictly dominates the right one.
    Dominates,
    /// The left vector is strictly dominated by the right one.
    Dominated,
    Incomparable,
}

impl ObjectiveVector {
    pub fn new(values: Vec<i64>) -> Self {
        ObjectiveVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn relation(&self, other: &ObjectiveVector) -> Result<Relation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(compare_values(&self.0, &other.0))
    }

    /// `self ≻ other`: at least as good everywhere, strictly better somewhere.
    pub fn dominates(&self, other: &ObjectiveVector) -> Result<bool> {
        Ok(self.relation(other)? == Relation::Dominates)
    }

    /// `self ⪰ other`.
    pub fn weakly_dominates(&self, other: &ObjectiveVector) -> Result<bool> {
        Ok(matches!(
            self.relation(other)?,
            Relation::Dominates | Relation::Equal
        ))
    }

    /// Neither vector weakly dominates the other.
    pub fn incomparable(&self, other: &ObjectiveVector) -> Result<bool> {
        Ok(self.relation(other)? == Relation::Incomparable)
    }
}

impl From<Vec<i64>> for ObjectiveVector {
    fn from(values: Vec<i64>) -> Self {
        ObjectiveVector(values)
    }
}

impl AsRef<ObjectiveVector> for ObjectiveVector {
    fn as_ref(&self) -> &ObjectiveVector {
        self
    }
}

impl fmt::Debug for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Dominance relation of two equally long value slices.
pub(crate) fn compare_values(left: &[i64], right: &[i64]) -> Relation {
    debug_assert_eq!(left.len(), right.len());
    let mut better = false;
    let mut worse = false;
    for (a, b) in left.iter().zip(right) {
        if a > b {
            better = true;
        } else if a < b {
            worse = true;
        }
        if better && worse {
            return Relation::Incomparable;
        }
    }
    match (better, worse) {
        (false, false) => Relation::Equal,
        (true, false) => Relation::Dominates,
        (false, true) => Relation::Dominated,
        (true, true) => Relation::Incomparable,
    }
}

/// A genome together with its cached objective values.
///
/// Only constructible through an evaluator, so the cache always matches the
/// genome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Individual {
    genome: BitString,
    objectives: ObjectiveVector,
}

impl Individual {
    pub(crate) fn from_parts(genome: BitString, objectives: ObjectiveVector) -> Self {
        Individual { genome, objectives }
    }

    pub fn genome(&self) -> &BitString {
        &self.genome
    }

    pub fn objectives(&self) -> &ObjectiveVector {
        &self.objectives
    }

    pub fn into_genome(self) -> BitString {
        self.genome
    }
}

impl AsRef<ObjectiveVector> for Individual {
    fn as_ref(&self) -> &ObjectiveVector {
        &self.objectives
    }
}

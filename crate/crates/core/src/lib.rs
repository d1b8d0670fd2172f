//! SMS-EMOA and GSEMO on pseudo-Boolean many-objective benchmarks.
//!
//! The crate provides the mOJZJ, mOneMinMax, OneMinMax and LOTZ problems,
//! exact integer hypervolume selection, standard and heavy-tailed bit-wise
//! mutation, the standard and stochastic population updates, brute-force
//! oracles for cross-checking, and an experiment harness that compares
//! measured runtimes with closed-form bounds.
//!
//! ```
//! use rand::SeedableRng;
//! use smsemoa::{AlgorithmConfig, MutationOperator, ProblemInstance, UpdateRule};
//!
//! let inst: ProblemInstance = "omm:n=6".parse().unwrap();
//! let cfg = AlgorithmConfig::sms_emoa(7, MutationOperator::Standard, UpdateRule::Standard, 100_000, 1);
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let record = smsemoa::sms_emoa_run(&inst, &cfg, &mut rng).unwrap();
//! assert!(!record.censored);
//! ```

pub mod algorithms;
pub mod benchmarks;
pub mod bitstring;
pub mod error;
pub mod harness;
pub mod objective;
pub mod oracle;
pub mod selection;
pub mod variation;

pub use algorithms::{
    coverage_fraction, gsemo_run, sms_emoa_run, Algorithm, AlgorithmConfig, Coverage, Gsemo, RunRecord, SmsEmoa,
    UpdateRule,
};
pub use benchmarks::{FrontDescriptor, ProblemInstance, ProblemKind};
pub use bitstring::BitString;
pub use error::{Error, Result};
pub use harness::{run_experiment, ExperimentSpec};
pub use objective::{Individual, ObjectiveVector, Relation};
pub use selection::{hv_contribution, hypervolume, ReferencePoint};
pub use variation::{MutationOperator, PowerLaw};

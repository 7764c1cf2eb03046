//! No-regret learning dynamics for time-varying two-player zero-sum matrix
//! games, with exact game-theoretic metrics.
//!
//! The crate provides four layers:
//!
//! - game primitives: payoff matrices, mixed strategies on the probability
//!   simplex, duality gaps, best responses, and exact Nash equilibria via a
//!   dense simplex-method LP ([`matrix`], [`simplex`], [`nash`]);
//! - online learners: optimistic Hedge with a fixed-share update and
//!   optimistic projected gradient descent, both satisfying a dynamic-regret
//!   bound parameterized by gradient variation ([`learners`]);
//! - the two-layer player: an optimistic-gradient meta-learner combining a
//!   geometric step-size pool of base learners plus one constant "dummy"
//!   learner per pure action, with stability correction terms and
//!   self-confident learning-rate tuning ([`meta`]);
//! - instrumentation: deterministic matrix schedules ([`environments`]) and
//!   running performance/non-stationarity measures ([`metrics`]).
//!
//! All numeric code is generic over the [`scalar::Scalar`] type; the aliases
//! at the crate root fix the scalar to `f64`, which is what the command-line
//! harness and the verification suites use.

pub mod environments;
pub mod error;
pub mod learners;
pub mod matrix;
pub mod meta;
pub mod metrics;
pub mod nash;
pub mod oracle;
pub mod scalar;
pub mod simplex;

mod lp;

pub use error::Error;
pub use scalar::Scalar;

/// Default scalar for simulations and the CLI harness.
pub type Real = f64;

pub type PayoffMatrix = matrix::PayoffMatrix<Real>;
pub type MixedStrategy = simplex::MixedStrategy<Real>;
pub type NashSolution = nash::NashSolution<Real>;
pub type DrvuParams = learners::DrvuParams<Real>;
pub type Learner = learners::Learner<Real>;
pub type StepSizePool = meta::StepSizePool<Real>;
pub type MetaPlayer = meta::MetaPlayer<Real>;
pub type GameSchedule = environments::GameSchedule<Real>;
pub type MetricsAccumulator = metrics::MetricsAccumulator<Real>;
pub type Measures = metrics::Measures<Real>;

//! Deterministic, replayable generators of time-varying payoff sequences.
//!
//! Every schedule is a pure function of `(schedule, t)`: two calls with the
//! same round return bit-identical matrices, which the two-pass deviation
//! measure and replay-based verification rely on.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::PayoffMatrix;
use crate::scalar::{real, Scalar};
use crate::simplex::MixedStrategy;

/// One entry of a file-defined schedule: a matrix repeated a number of
/// rounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Scalar + Serialize",
    deserialize = "S: Scalar + Deserialize<'de>"
))]
pub struct ScheduleStep<S> {
    pub matrix: PayoffMatrix<S>,
    #[serde(default = "default_repeat")]
    pub repeat: u64,
}

fn default_repeat() -> u64 {
    1
}

/// Serialized form of a file schedule: `{"T": .., "steps": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Scalar + Serialize",
    deserialize = "S: Scalar + Deserialize<'de>"
))]
pub struct ScheduleFile<S> {
    #[serde(rename = "T")]
    pub horizon: u64,
    pub steps: Vec<ScheduleStep<S>>,
}

#[derive(Debug, Clone)]
enum Kind<S> {
    Stationary {
        matrix: PayoffMatrix<S>,
    },
    /// Matching pennies for the first half, an identical-column matrix for
    /// the second: the classic case separating per-round equilibrium play
    /// from the cumulative-matrix benchmark.
    TwoPhase,
    /// Four epochs; each opens with a fast alternating phase around a base
    /// matrix and continues with a slowly rescaled ramp matrix. Designed so
    /// that the equilibrium path length and the squared matrix variation
    /// grow like √T while the deviation from the average matrix grows like
    /// T^(3/4).
    EpochDrift {
        t0: u64,
    },
    /// `base + sign·delta`, the sign flipping every `period` rounds.
    PeriodicDrift {
        base: PayoffMatrix<S>,
        delta: PayoffMatrix<S>,
        period: u64,
    },
    File {
        steps: Vec<ScheduleStep<S>>,
        /// Exclusive prefix sums of the repeat counts.
        offsets: Vec<u64>,
    },
}

/// A deterministic matrix sequence over a fixed horizon.
#[derive(Debug, Clone)]
pub struct GameSchedule<S> {
    kind: Kind<S>,
    horizon: u64,
    seed: u64,
}

impl<S: Scalar> GameSchedule<S> {
    pub fn stationary(matrix: PayoffMatrix<S>, horizon: u64) -> Result<Self, Error> {
        if horizon < 1 {
            return Err(Error::HorizonTooSmall { horizon, min: 1 });
        }
        Ok(Self {
            kind: Kind::Stationary { matrix },
            horizon,
            seed: 0,
        })
    }

    pub fn two_phase(horizon: u64) -> Result<Self, Error> {
        if horizon < 2 {
            return Err(Error::HorizonTooSmall { horizon, min: 2 });
        }
        Ok(Self {
            kind: Kind::TwoPhase,
            horizon,
            seed: 0,
        })
    }

    /// The four-epoch drift benchmark; requires `horizon ≥ 64` so each epoch
    /// is longer than its alternating phase `T₀ = 2⌊√T⌋`.
    pub fn epoch_drift(horizon: u64) -> Result<Self, Error> {
        if horizon < 64 {
            return Err(Error::HorizonTooSmall { horizon, min: 64 });
        }
        let t0 = 2
            * (S::from_u64(horizon)
                .unwrap()
                .sqrt()
                .floor()
                .to_u64()
                .unwrap());
        Ok(Self {
            kind: Kind::EpochDrift { t0 },
            horizon,
            seed: 0,
        })
    }

    pub fn periodic_drift(
        base: PayoffMatrix<S>,
        delta: PayoffMatrix<S>,
        period: u64,
        horizon: u64,
    ) -> Result<Self, Error> {
        if horizon < 1 {
            return Err(Error::HorizonTooSmall { horizon, min: 1 });
        }
        if period < 1 {
            return Err(Error::Schedule("period must be at least 1"));
        }
        if base.rows() != delta.rows() || base.cols() != delta.cols() {
            return Err(Error::DimensionMismatch {
                expected: base.rows() * base.cols(),
                found: delta.rows() * delta.cols(),
            });
        }
        Ok(Self {
            kind: Kind::PeriodicDrift {
                base,
                delta,
                period,
            },
            horizon,
            seed: 0,
        })
    }

    pub fn from_file(file: ScheduleFile<S>) -> Result<Self, Error> {
        if file.horizon < 1 {
            return Err(Error::HorizonTooSmall {
                horizon: file.horizon,
                min: 1,
            });
        }
        if file.steps.is_empty() {
            return Err(Error::Schedule("file schedule has no steps"));
        }
        let (rows, cols) = (file.steps[0].matrix.rows(), file.steps[0].matrix.cols());
        let mut offsets = Vec::with_capacity(file.steps.len());
        let mut covered = 0u64;
        for step in &file.steps {
            if step.matrix.rows() != rows || step.matrix.cols() != cols {
                return Err(Error::Schedule("steps change the matrix shape"));
            }
            if step.repeat == 0 {
                return Err(Error::Schedule("zero repeat count"));
            }
            offsets.push(covered);
            covered = covered.saturating_add(step.repeat);
        }
        if covered < file.horizon {
            return Err(Error::Schedule("steps cover fewer rounds than the horizon"));
        }
        Ok(Self {
            kind: Kind::File {
                steps: file.steps,
                offsets,
            },
            horizon: file.horizon,
            seed: 0,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn dims(&self) -> (usize, usize) {
        match &self.kind {
            Kind::Stationary { matrix } => (matrix.rows(), matrix.cols()),
            Kind::TwoPhase | Kind::EpochDrift { .. } => (2, 2),
            Kind::PeriodicDrift { base, .. } => (base.rows(), base.cols()),
            Kind::File { steps, .. } => (steps[0].matrix.rows(), steps[0].matrix.cols()),
        }
    }

    /// The game matrix of round `t` (1-based).
    pub fn matrix_at(&self, t: u64) -> Result<PayoffMatrix<S>, Error> {
        if t < 1 || t > self.horizon {
            return Err(Error::RoundOutOfRange {
                t,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            Kind::Stationary { matrix } => matrix.clone(),
            Kind::TwoPhase => {
                if t <= self.horizon / 2 {
                    matching_pennies()
                } else {
                    identical_columns()
                }
            }
            Kind::EpochDrift { t0 } => self.epoch_drift_matrix(t, *t0),
            Kind::PeriodicDrift {
                base,
                delta,
                period,
            } => {
                let mut m = base.clone();
                let flip = ((t - 1) / period) % 2 == 1;
                let signed = if flip {
                    delta.scaled(-S::one())
                } else {
                    delta.clone()
                };
                m.accumulate(&signed)
                    .expect("shapes checked at construction");
                m.clamped_unit()
            }
            Kind::File { steps, offsets } => {
                let target = t - 1;
                let idx = match offsets.binary_search(&target) {
                    Ok(i) => i,
                    Err(i) => i - 1,
                };
                steps[idx].matrix.clone()
            }
        })
    }

    /// Whether the emitted matrix was clamped back into the unit range at
    /// round `t` (only the odd ramp rounds of the drift benchmark).
    pub fn clamped_at(&self, t: u64) -> bool {
        match &self.kind {
            Kind::EpochDrift { t0 } => {
                t >= 1 && t <= self.horizon && !self.in_alternating_phase(t, *t0) && t % 2 == 1
            }
            _ => false,
        }
    }

    /// Average matrix `Ā = (1/T)·Σ A_t`, the first pass of the deviation
    /// measure.
    pub fn average_matrix(&self) -> Result<PayoffMatrix<S>, Error> {
        let (rows, cols) = self.dims();
        let mut sum = PayoffMatrix::zeros(rows, cols);
        for t in 1..=self.horizon {
            sum.accumulate(&self.matrix_at(t)?)?;
        }
        Ok(sum.scaled(S::one() / S::from_u64(self.horizon).unwrap()))
    }

    fn in_alternating_phase(&self, t: u64, t0: u64) -> bool {
        let epoch = ((t - 1) * 4 / self.horizon).min(3);
        let start = epoch * self.horizon / 4 + 1;
        t < start + t0
    }

    fn epoch_drift_matrix(&self, t: u64, t0: u64) -> PayoffMatrix<S> {
        if self.in_alternating_phase(t, t0) {
            let base = alternating_base();
            let flip: PayoffMatrix<S> = alternating_flip();
            let mut m = base;
            let signed = if t % 2 == 0 {
                flip
            } else {
                flip.scaled(-S::one())
            };
            m.accumulate(&signed).expect("fixed 2x2 shapes");
            m
        } else {
            // Coefficient ½ + (½ − (−1)^t·T^(−1/4)); the odd-round value
            // exceeds one, so entries are clamped back into the unit range.
            let quarter_root = S::from_u64(self.horizon).unwrap().powf(real(-0.25));
            let sign = if t % 2 == 0 { S::one() } else { -S::one() };
            let coeff = real::<S>(0.5) + (real::<S>(0.5) - sign * quarter_root);
            ramp_direction().scaled(coeff).clamped_unit()
        }
    }
}

/// Best-response opponent: the vertex maximizing the column player's reward
/// against `x` under `a`, ties to the lowest index.
pub fn adversarial_opponent<S: Scalar>(
    x: &MixedStrategy<S>,
    a: &PayoffMatrix<S>,
) -> Result<MixedStrategy<S>, Error> {
    Ok(a.best_response_col(x)?.1)
}

fn matching_pennies<S: Scalar>() -> PayoffMatrix<S> {
    PayoffMatrix::new(vec![vec![S::one(), -S::one()], vec![-S::one(), S::one()]])
        .expect("fixed entries")
}

fn identical_columns<S: Scalar>() -> PayoffMatrix<S> {
    PayoffMatrix::new(vec![vec![S::one(), -S::one()], vec![S::one(), -S::one()]])
        .expect("fixed entries")
}

fn alternating_base<S: Scalar>() -> PayoffMatrix<S> {
    PayoffMatrix::new(vec![
        vec![real(0.5), real(0.5)],
        vec![real(-0.5), real(-0.5)],
    ])
    .expect("fixed entries")
}

fn alternating_flip<S: Scalar>() -> PayoffMatrix<S> {
    let third = S::one() / real::<S>(3.0);
    PayoffMatrix::new(vec![vec![third, real(-0.5)], vec![third, real(-0.5)]])
        .expect("fixed entries")
}

fn ramp_direction<S: Scalar>() -> PayoffMatrix<S> {
    PayoffMatrix::new(vec![vec![-S::one(), -S::one()], vec![S::one(), S::one()]])
        .expect("fixed entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nash::nash_solve;

    fn mat(rows: &[&[f64]]) -> PayoffMatrix<f64> {
        PayoffMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_phase_matrices() {
        let s = GameSchedule::<f64>::two_phase(100).unwrap();
        assert_eq!(s.matrix_at(1).unwrap(), mat(&[&[1.0, -1.0], &[-1.0, 1.0]]));
        assert_eq!(s.matrix_at(50).unwrap(), mat(&[&[1.0, -1.0], &[-1.0, 1.0]]));
        assert_eq!(s.matrix_at(51).unwrap(), mat(&[&[1.0, -1.0], &[1.0, -1.0]]));
        assert_eq!(
            s.matrix_at(100).unwrap(),
            mat(&[&[1.0, -1.0], &[1.0, -1.0]])
        );
        assert!(s.matrix_at(0).is_err());
        assert!(s.matrix_at(101).is_err());
    }

    #[test]
    fn two_phase_cumulative_matrix_is_exact() {
        let t = 200u64;
        let s = GameSchedule::<f64>::two_phase(t).unwrap();
        let mut sum = PayoffMatrix::zeros(2, 2);
        for round in 1..=t {
            sum.accumulate(&s.matrix_at(round).unwrap()).unwrap();
        }
        let t_f = t as f64;
        assert_eq!(sum.entries_row_major(), &[t_f, -t_f, 0.0, 0.0]);
    }

    #[test]
    fn epoch_drift_constants() {
        let s = GameSchedule::<f64>::epoch_drift(2_000_000).unwrap();
        match s.kind {
            Kind::EpochDrift { t0 } => assert_eq!(t0, 2828),
            _ => unreachable!(),
        }
        assert!(GameSchedule::<f64>::epoch_drift(32).is_err());
    }

    #[test]
    fn epoch_drift_alternating_phase_matrices() {
        let s = GameSchedule::<f64>::epoch_drift(10_000).unwrap();
        let even = s.matrix_at(2).unwrap();
        let expected_even = mat(&[&[5.0 / 6.0, 0.0], &[-1.0 / 6.0, -1.0]]);
        assert!(even.inf_norm_distance(&expected_even).unwrap() < 1e-15);
        let odd = s.matrix_at(3).unwrap();
        let expected_odd = mat(&[&[1.0 / 6.0, 1.0], &[-5.0 / 6.0, 0.0]]);
        assert!(odd.inf_norm_distance(&expected_odd).unwrap() < 1e-15);
    }

    #[test]
    fn epoch_drift_alternating_equilibria() {
        let s = GameSchedule::<f64>::epoch_drift(10_000).unwrap();
        let even = nash_solve(&s.matrix_at(2).unwrap()).unwrap();
        assert_eq!(even.x_star.weights(), &[0.0, 1.0]);
        assert_eq!(even.y_star.weights(), &[1.0, 0.0]);
        let odd = nash_solve(&s.matrix_at(3).unwrap()).unwrap();
        assert_eq!(odd.x_star.weights(), &[0.0, 1.0]);
        assert_eq!(odd.y_star.weights(), &[0.0, 1.0]);
    }

    #[test]
    fn epoch_drift_ramp_phase() {
        let t = 10_000u64;
        let s = GameSchedule::<f64>::epoch_drift(t).unwrap();
        // First epoch: rounds 1..=200 alternate, the ramp starts at 201.
        let coeff = 1.0 - (t as f64).powf(-0.25);
        let even_round = 202;
        let m = s.matrix_at(even_round).unwrap();
        assert!((m.get(0, 0) - (-coeff)).abs() < 1e-15);
        assert!((m.get(1, 1) - coeff).abs() < 1e-15);
        assert!(!s.clamped_at(even_round));

        // Odd ramp rounds scale past one and are clamped back to the ramp
        // direction itself.
        let odd_round = 203;
        assert!(s.clamped_at(odd_round));
        let clamped = s.matrix_at(odd_round).unwrap();
        assert_eq!(clamped, mat(&[&[-1.0, -1.0], &[1.0, 1.0]]));
    }

    #[test]
    fn all_epoch_drift_entries_stay_in_unit_range() {
        let t = 4096u64;
        let s = GameSchedule::<f64>::epoch_drift(t).unwrap();
        for round in 1..=t {
            let m = s.matrix_at(round).unwrap();
            assert!(m.inf_norm() <= 1.0, "round {round} escaped the unit cube");
        }
    }

    #[test]
    fn schedules_replay_bit_exactly() {
        let t = 512u64;
        let s = GameSchedule::<f64>::epoch_drift(t).unwrap();
        for round in [1, 7, 63, 128, 300, 512] {
            assert_eq!(
                s.matrix_at(round).unwrap().key(),
                s.matrix_at(round).unwrap().key()
            );
        }
    }

    #[test]
    fn periodic_drift_alternates_and_clamps() {
        let base = mat(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        let delta = mat(&[&[0.6, 0.0], &[0.0, 0.0]]);
        let s = GameSchedule::periodic_drift(base, delta, 2, 10).unwrap();
        assert_eq!(s.matrix_at(1).unwrap().get(0, 0), 1.0); // clamped from 1.1
        assert_eq!(s.matrix_at(2).unwrap().get(0, 0), 1.0);
        assert!((s.matrix_at(3).unwrap().get(0, 0) - (-0.1)).abs() < 1e-15);
        assert!((s.matrix_at(4).unwrap().get(0, 0) - (-0.1)).abs() < 1e-15);
        assert_eq!(s.matrix_at(5).unwrap().get(0, 0), 1.0);
    }

    #[test]
    fn stationary_returns_same_matrix() {
        let a = mat(&[&[0.1, -0.2], &[0.3, -0.4]]);
        let s = GameSchedule::stationary(a.clone(), 5).unwrap();
        for t in 1..=5 {
            assert_eq!(s.matrix_at(t).unwrap(), a);
        }
    }

    #[test]
    fn file_schedule_lookup_and_validation() {
        let file = ScheduleFile {
            horizon: 5,
            steps: vec![
                ScheduleStep {
                    matrix: mat(&[&[0.0, 0.1]]),
                    repeat: 2,
                },
                ScheduleStep {
                    matrix: mat(&[&[0.5, -0.5]]),
                    repeat: 3,
                },
            ],
        };
        let s = GameSchedule::from_file(file).unwrap();
        assert_eq!(s.matrix_at(2).unwrap().get(0, 1), 0.1);
        assert_eq!(s.matrix_at(3).unwrap().get(0, 0), 0.5);
        assert_eq!(s.matrix_at(5).unwrap().get(0, 0), 0.5);

        let short = ScheduleFile {
            horizon: 9,
            steps: vec![ScheduleStep {
                matrix: mat(&[&[0.0]]),
                repeat: 3,
            }],
        };
        assert!(GameSchedule::from_file(short).is_err());
    }

    #[test]
    fn file_schedule_json_round_trip() {
        let json = r#"{"T": 3, "steps": [{"matrix": {"rows":1,"cols":2,"entries":[[0.25,-0.75]]}, "repeat": 3}]}"#;
        let file: ScheduleFile<f64> = serde_json::from_str(json).unwrap();
        let s = GameSchedule::from_file(file).unwrap();
        assert_eq!(s.matrix_at(3).unwrap().get(0, 1), -0.75);
    }

    #[test]
    fn adversarial_opponent_examples() {
        let pennies = mat(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        let e1 = MixedStrategy::vertex(2, 0);
        assert_eq!(
            adversarial_opponent(&e1, &pennies).unwrap().weights(),
            &[1.0, 0.0]
        );
        let uniform = MixedStrategy::uniform(2);
        assert_eq!(
            adversarial_opponent(&uniform, &pennies).unwrap().weights(),
            &[1.0, 0.0]
        );
        let drift = mat(&[&[5.0 / 6.0, 0.0], &[-1.0 / 6.0, -1.0]]);
        let x = MixedStrategy::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(
            adversarial_opponent(&x, &drift).unwrap().weights(),
            &[1.0, 0.0]
        );
    }
}

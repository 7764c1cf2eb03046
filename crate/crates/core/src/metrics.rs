//! Running performance and non-stationarity measures of a play trace.
//!
//! Three performance measures are tracked online: each player's individual
//! regret, the cumulative duality gap, and the dynamic equilibrium regret
//! (cumulative payoff against the cumulative per-round minimax value). The
//! cumulative-matrix equilibrium regret — the measure this benchmark exists
//! to compare against — is computed on demand from the accumulated matrix.
//!
//! Per-round equilibria come from the deterministic LP solver and are cached
//! by exact matrix content, so schedules with few distinct matrices cost few
//! solves. The equilibrium path length is therefore taken over this one
//! canonical equilibrium selection per matrix; where the per-round
//! equilibrium is unique the two notions coincide, otherwise the computed
//! path length is an upper bound on the minimum over selections.

use std::collections::HashMap;

use crate::environments::GameSchedule;
use crate::error::Error;
use crate::matrix::{inf_distance, max_entry, min_entry, MatrixKey, PayoffMatrix};
use crate::nash::{nash_solve, NashSolution};
use crate::scalar::Scalar;
use crate::simplex::MixedStrategy;

/// Equilibrium cache keyed by exact matrix bytes.
#[derive(Debug, Default)]
pub struct NeCache<S> {
    map: HashMap<MatrixKey, NashSolution<S>>,
}

impl<S: Scalar> NeCache<S> {
    pub fn new() -> Self {
        Self {
            map: HashMap::new(),
        }
    }

    pub fn solve(&mut self, a: &PayoffMatrix<S>) -> Result<&NashSolution<S>, Error> {
        let key = a.key();
        if !self.map.contains_key(&key) {
            let sol = nash_solve(a)?;
            self.map.insert(key.clone(), sol);
        }
        Ok(self.map.get(&key).expect("inserted above"))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// The three non-stationarity measures of a matrix sequence plus their
/// combination `Q = V + min{P, W}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measures<S> {
    /// Path length of the canonical equilibrium sequence.
    pub path_length: S,
    /// Squared per-step matrix variation Σ‖A_t − A_{t−1}‖∞².
    pub variation: S,
    /// Total deviation from the average matrix Σ‖A_t − Ā‖∞.
    pub deviation: S,
    /// `variation + min(path_length, deviation)`.
    pub combined: S,
}

/// Online accumulator over one play trace.
#[derive(Debug)]
pub struct MetricsAccumulator<S> {
    rows: usize,
    cols: usize,
    round: u64,
    cum_payoff: S,
    cum_value: S,
    cum_gap: S,
    cum_loss_vec: Vec<S>,
    cum_reward_vec: Vec<S>,
    cum_matrix: PayoffMatrix<S>,
    path_acc: S,
    variation_acc: S,
    grad_var_x: S,
    grad_var_y: S,
    deviation: Option<(PayoffMatrix<S>, S)>,
    prev_matrix: Option<PayoffMatrix<S>>,
    prev_equilibrium: Option<(MixedStrategy<S>, MixedStrategy<S>)>,
    prev_loss_vec: Option<Vec<S>>,
    prev_reward_vec: Option<Vec<S>>,
    cache: NeCache<S>,
}

impl<S: Scalar> MetricsAccumulator<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            round: 0,
            cum_payoff: S::zero(),
            cum_value: S::zero(),
            cum_gap: S::zero(),
            cum_loss_vec: vec![S::zero(); rows],
            cum_reward_vec: vec![S::zero(); cols],
            cum_matrix: PayoffMatrix::zeros(rows, cols),
            path_acc: S::zero(),
            variation_acc: S::zero(),
            grad_var_x: S::zero(),
            grad_var_y: S::zero(),
            deviation: None,
            prev_matrix: None,
            prev_equilibrium: None,
            prev_loss_vec: None,
            prev_reward_vec: None,
            cache: NeCache::new(),
        }
    }

    /// Supplies the horizon-average matrix so the deviation measure can be
    /// accumulated online (it needs the full-sequence average up front).
    pub fn with_average_matrix(mut self, average: PayoffMatrix<S>) -> Self {
        self.deviation = Some((average, S::zero()));
        self
    }

    /// Advances every accumulator with one round of play.
    pub fn step(
        &mut self,
        a: &PayoffMatrix<S>,
        x: &MixedStrategy<S>,
        y: &MixedStrategy<S>,
    ) -> Result<(), Error> {
        if a.rows() != self.rows || a.cols() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: a.rows() * a.cols(),
            });
        }
        let loss_vec = a.loss_vector(y)?;
        let reward_vec = a.reward_vector(x)?;
        if x.dim() != self.rows || y.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: x.dim(),
            });
        }

        self.round += 1;
        let payoff = crate::matrix::dot(x.weights(), &loss_vec);
        self.cum_payoff += payoff;

        let solution = self.cache.solve(a)?;
        let value = solution.value;
        let equilibrium = (solution.x_star.clone(), solution.y_star.clone());
        self.cum_value += value;

        let gap = (max_entry(&reward_vec) - min_entry(&loss_vec)).max(S::zero());
        self.cum_gap += gap;

        for (acc, &l) in self.cum_loss_vec.iter_mut().zip(&loss_vec) {
            *acc += l;
        }
        for (acc, &r) in self.cum_reward_vec.iter_mut().zip(&reward_vec) {
            *acc += r;
        }
        self.cum_matrix.accumulate(a)?;

        if let Some((x_prev, y_prev)) = &self.prev_equilibrium {
            self.path_acc += equilibrium.0.l1_distance(x_prev) + equilibrium.1.l1_distance(y_prev);
        }
        if let Some(prev) = &self.prev_matrix {
            self.variation_acc += a.inf_norm_distance(prev)?.powi(2);
        }
        if let Some(prev) = &self.prev_loss_vec {
            self.grad_var_x += inf_distance(&loss_vec, prev).powi(2);
        }
        if let Some(prev) = &self.prev_reward_vec {
            self.grad_var_y += inf_distance(&reward_vec, prev).powi(2);
        }
        if let Some((average, acc)) = &mut self.deviation {
            *acc += a.inf_norm_distance(average)?;
        }

        self.prev_matrix = Some(a.clone());
        self.prev_equilibrium = Some(equilibrium);
        self.prev_loss_vec = Some(loss_vec);
        self.prev_reward_vec = Some(reward_vec);
        Ok(())
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn cumulative_payoff(&self) -> S {
        self.cum_payoff
    }

    /// Row player's regret against the best fixed action in hindsight:
    /// cumulative payoff minus the vertex minimum of the accumulated loss
    /// vector.
    pub fn individual_regret_x(&self) -> S {
        self.cum_payoff - min_entry(&self.cum_loss_vec)
    }

    /// Column player's regret: vertex maximum of the accumulated reward
    /// vector minus the cumulative payoff.
    pub fn individual_regret_y(&self) -> S {
        max_entry(&self.cum_reward_vec) - self.cum_payoff
    }

    /// |cumulative payoff − cumulative per-round game value|.
    pub fn dynamic_ne_regret(&self) -> S {
        (self.cum_payoff - self.cum_value).abs()
    }

    /// Cumulative duality gap; nondecreasing in the round.
    pub fn duality_gap_total(&self) -> S {
        self.cum_gap
    }

    /// |cumulative payoff − minimax value of the cumulative matrix|. The
    /// accumulated matrix is rescaled by 1/t before the solve to keep the LP
    /// well conditioned, and the value scaled back.
    pub fn ne_regret(&self) -> Result<S, Error> {
        if self.round == 0 {
            return Ok(S::zero());
        }
        let t = S::from_u64(self.round).unwrap();
        let solution = nash_solve(&self.cum_matrix.scaled(S::one() / t))?;
        Ok((self.cum_payoff - t * solution.value).abs())
    }

    /// Running equilibrium path length P_t.
    pub fn path_length(&self) -> S {
        self.path_acc
    }

    /// Running squared matrix variation V_t.
    pub fn variation(&self) -> S {
        self.variation_acc
    }

    /// Running deviation W_t; zero unless the average matrix was supplied.
    pub fn deviation(&self) -> S {
        self.deviation.as_ref().map_or(S::zero(), |(_, acc)| *acc)
    }

    /// Σ‖A_t y_t − A_{t−1} y_{t−1}‖∞², the row player's gradient variation.
    pub fn gradient_variation_x(&self) -> S {
        self.grad_var_x
    }

    pub fn gradient_variation_y(&self) -> S {
        self.grad_var_y
    }

    /// Distinct matrices seen so far (size of the equilibrium cache).
    pub fn distinct_matrices(&self) -> usize {
        self.cache.len()
    }
}

/// Computes the non-stationarity measures of a schedule in two passes:
/// the first pass forms the average matrix, the second accumulates the
/// per-round terms (equilibria cached by matrix content).
pub fn nonstationarity_measures<S: Scalar>(
    schedule: &GameSchedule<S>,
) -> Result<Measures<S>, Error> {
    let average = schedule.average_matrix()?;
    let mut cache = NeCache::new();
    let mut path_length = S::zero();
    let mut variation = S::zero();
    let mut deviation = S::zero();
    let mut prev: Option<(PayoffMatrix<S>, MixedStrategy<S>, MixedStrategy<S>)> = None;

    for t in 1..=schedule.horizon() {
        let a = schedule.matrix_at(t)?;
        let solution = cache.solve(&a)?;
        let (x_star, y_star) = (solution.x_star.clone(), solution.y_star.clone());
        if let Some((a_prev, x_prev, y_prev)) = &prev {
            path_length += x_star.l1_distance(x_prev) + y_star.l1_distance(y_prev);
            variation += a.inf_norm_distance(a_prev)?.powi(2);
        }
        deviation += a.inf_norm_distance(&average)?;
        prev = Some((a, x_star, y_star));
    }

    Ok(Measures {
        path_length,
        variation,
        deviation,
        combined: variation + path_length.min(deviation),
    })
}

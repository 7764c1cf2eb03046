//! Exact Nash equilibria of zero-sum matrix games.

use crate::error::Error;
use crate::lp::solve_positive_game;
use crate::matrix::PayoffMatrix;
use crate::scalar::Scalar;
use crate::simplex::MixedStrategy;

/// A minimax/maximin strategy pair together with the game value.
///
/// The value is evaluated as `x*ᵀA y*` on the original matrix, so the
/// value invariant holds bit-exactly and the saddle-point property holds
/// within [`Scalar::saddle_tol`].
#[derive(Debug, Clone, PartialEq)]
pub struct NashSolution<S> {
    pub x_star: MixedStrategy<S>,
    pub y_star: MixedStrategy<S>,
    pub value: S,
}

impl<S: Scalar> NashSolution<S> {
    /// Largest violation of the vertex saddle-point inequalities
    /// `x*ᵀA e_j ≤ v` and `e_iᵀA y* ≥ v`; nonpositive residual means the
    /// pair is an equilibrium.
    pub fn saddle_residual(&self, a: &PayoffMatrix<S>) -> Result<S, Error> {
        let rewards = a.reward_vector(&self.x_star)?;
        let losses = a.loss_vector(&self.y_star)?;
        let mut worst = S::neg_infinity();
        for &r in &rewards {
            worst = worst.max(r - self.value);
        }
        for &l in &losses {
            worst = worst.max(self.value - l);
        }
        Ok(worst)
    }
}

/// Solves a zero-sum game exactly through the dense simplex method.
///
/// Entries are first shifted by `1 − min entry` so the shifted game has
/// entries ≥ 1 and a strictly positive value, which keeps the reciprocal LP
/// bounded and feasible for any input, including cumulative matrices that
/// were rescaled by the caller. Output is deterministic: the pivoting rule is
/// fixed, so identical inputs produce identical strategies.
pub fn nash_solve<S: Scalar>(a: &PayoffMatrix<S>) -> Result<NashSolution<S>, Error> {
    let mut min = S::infinity();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            min = min.min(a.get(i, j));
        }
    }
    let shift = S::one() - min;
    let shifted = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j) + shift).collect())
        .collect();
    let b = PayoffMatrix::unbounded(shifted)?;

    let lp = solve_positive_game(&b)?;
    let x_star = MixedStrategy::normalized(lp.primal);
    let y_star = MixedStrategy::normalized(lp.dual);
    let value = a.payoff(&x_star, &y_star)?;
    Ok(NashSolution {
        x_star,
        y_star,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> PayoffMatrix<f64> {
        PayoffMatrix::unbounded(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn matching_pennies_is_uniform_with_value_zero() {
        let sol = nash_solve(&mat(&[&[1.0, -1.0], &[-1.0, 1.0]])).unwrap();
        for &w in sol.x_star.weights().iter().chain(sol.y_star.weights()) {
            assert!((w - 0.5).abs() < 1e-12);
        }
        assert!(sol.value.abs() < 1e-12);
        assert!(
            sol.saddle_residual(&mat(&[&[1.0, -1.0], &[-1.0, 1.0]]))
                .unwrap()
                <= 1e-12
        );
    }

    #[test]
    fn identical_rows_value_one_first_column() {
        let a = mat(&[&[1.0, -1.0], &[1.0, -1.0]]);
        let sol = nash_solve(&a).unwrap();
        assert_eq!(sol.value, 1.0);
        assert_eq!(sol.y_star.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn rescaled_two_phase_cumulative_matrix() {
        // (1/T)·Σ A_t of the two-phase sequence.
        let a = mat(&[&[1.0, -1.0], &[0.0, 0.0]]);
        let sol = nash_solve(&a).unwrap();
        assert_eq!(sol.value, 0.0);
        assert_eq!(sol.x_star.weights(), &[0.0, 1.0]);
        assert_eq!(sol.y_star.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn alternating_drift_even_round_matrix() {
        let a = mat(&[&[5.0 / 6.0, 0.0], &[-1.0 / 6.0, -1.0]]);
        let sol = nash_solve(&a).unwrap();
        assert_eq!(sol.x_star.weights(), &[0.0, 1.0]);
        assert_eq!(sol.y_star.weights(), &[1.0, 0.0]);
        assert!((sol.value - (-1.0 / 6.0)).abs() < 1e-12);
    }

    #[test]
    fn deterministic_output() {
        let a = mat(&[&[0.3, -0.7, 0.1], &[-0.2, 0.5, -0.9]]);
        let first = nash_solve(&a).unwrap();
        let second = nash_solve(&a).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn handles_all_negative_entries() {
        let a = mat(&[&[-1.0, -1.0], &[-1.0, -1.0]]);
        let sol = nash_solve(&a).unwrap();
        assert_eq!(sol.value, -1.0);
    }
}

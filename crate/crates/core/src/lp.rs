//! Dense primal simplex method for the zero-sum game LP.
//!
//! The equilibrium of a matrix with strictly positive entries `B` is found
//! through the classic reciprocal form: maximize `1ᵀu` subject to
//! `Bᵀu ≤ 1`, `u ≥ 0`. At the optimum `Σu = 1/v` where `v` is the game value
//! of `B`, the row player's strategy is `u/Σu`, and the column player's
//! strategy is the normalized dual vector read off the slack columns.
//!
//! Pivoting uses Bland's anti-cycling rule throughout: the entering column is
//! the lowest-index improving column, and ratio-test ties are broken by the
//! lowest basic-variable index. This makes the solver deterministic and
//! guarantees termination.

use crate::error::Error;
use crate::matrix::PayoffMatrix;
use crate::scalar::Scalar;

pub(crate) struct LpSolution<S> {
    /// Optimal `u` (length = rows of the game matrix).
    pub primal: Vec<S>,
    /// Optimal duals on the column constraints (length = cols).
    pub dual: Vec<S>,
}

/// Solves the reciprocal LP for a game matrix with entries ≥ 1.
pub(crate) fn solve_positive_game<S: Scalar>(b: &PayoffMatrix<S>) -> Result<LpSolution<S>, Error> {
    let m = b.rows();
    let n = b.cols();
    let vars = m + n; // structural + slack
    let tol = S::lp_tol();

    // tableau[r][c]: row 0 is the objective (reduced costs z−c, rhs in the
    // last column), rows 1..=n are the constraints Bᵀu + s = 1.
    let width = vars + 1;
    let mut tableau = vec![vec![S::zero(); width]; n + 1];
    for j in 0..m {
        tableau[0][j] = -S::one();
    }
    for r in 0..n {
        for i in 0..m {
            tableau[r + 1][i] = b.get(i, r);
        }
        tableau[r + 1][m + r] = S::one();
        tableau[r + 1][vars] = S::one();
    }
    let mut basis: Vec<usize> = (m..m + n).collect();

    let max_pivots = 10_000usize;
    for _ in 0..max_pivots {
        // Entering: lowest-index column with a negative reduced cost.
        let mut entering = None;
        for j in 0..vars {
            if tableau[0][j] < -tol {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else {
            return Ok(extract(&tableau, &basis, m, n));
        };

        // Leaving: minimum ratio, ties to the lowest basic-variable index.
        let mut leaving: Option<(usize, S)> = None;
        for r in 1..=n {
            let coeff = tableau[r][col];
            if coeff > tol {
                let ratio = tableau[r][vars] / coeff;
                let better = match leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - tol
                            || ((ratio - lratio).abs() <= tol && basis[r - 1] < basis[lr - 1])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((row, _)) = leaving else {
            // Bᵀu ≤ 1 with entries ≥ 1 always bounds Σu.
            return Err(Error::Solver("unbounded game LP"));
        };

        pivot(&mut tableau, row, col);
        basis[row - 1] = col;
    }
    Err(Error::Solver("pivot limit exceeded"))
}

fn pivot<S: Scalar>(tableau: &mut [Vec<S>], row: usize, col: usize) {
    let width = tableau[0].len();
    let p = tableau[row][col];
    for c in 0..width {
        tableau[row][c] /= p;
    }
    for r in 0..tableau.len() {
        if r == row {
            continue;
        }
        let factor = tableau[r][col];
        if factor != S::zero() {
            for c in 0..width {
                let delta = factor * tableau[row][c];
                tableau[r][c] -= delta;
            }
            tableau[r][col] = S::zero();
        }
    }
}

fn extract<S: Scalar>(tableau: &[Vec<S>], basis: &[usize], m: usize, n: usize) -> LpSolution<S> {
    let vars = m + n;
    let mut primal = vec![S::zero(); m];
    for (r, &var) in basis.iter().enumerate() {
        if var < m {
            primal[var] = tableau[r + 1][vars];
        }
    }
    // Duals are the objective-row entries under the slack columns.
    let dual = (0..n).map(|r| tableau[0][m + r]).collect();
    LpSolution { primal, dual }
}

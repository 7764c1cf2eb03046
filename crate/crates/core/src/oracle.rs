//! Support-enumeration reference solver.
//!
//! Independent cross-check of the LP path in [`crate::nash`]: every zero-sum
//! matrix game has an equilibrium whose supports index a square subsystem, so
//! enumerating all equal-size support pairs and solving each small linear
//! system finds one. Exponential in the matrix size and meant for
//! verification on small games only; it shares no code with the simplex
//! solver.

use crate::matrix::PayoffMatrix;
use crate::scalar::Scalar;
use crate::simplex::MixedStrategy;

/// Equilibrium candidate found by enumeration.
#[derive(Debug, Clone)]
pub struct OracleSolution<S> {
    pub x_star: MixedStrategy<S>,
    pub y_star: MixedStrategy<S>,
    pub value: S,
}

/// Enumerates support pairs in lexicographic order and returns the first
/// verified equilibrium. Returns `None` only if rounding rejects every
/// candidate, which does not happen for well-scaled inputs.
pub fn solve_by_support_enumeration<S: Scalar>(a: &PayoffMatrix<S>) -> Option<OracleSolution<S>> {
    let m = a.rows();
    let n = a.cols();
    let eps = S::saddle_tol() * S::from_f64(10.0).unwrap();

    for k in 1..=m.min(n) {
        for row_support in combinations(m, k) {
            for col_support in combinations(n, k) {
                if let Some(candidate) = try_support_pair(a, &row_support, &col_support, eps) {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn try_support_pair<S: Scalar>(
    a: &PayoffMatrix<S>,
    rows: &[usize],
    cols: &[usize],
    eps: S,
) -> Option<OracleSolution<S>> {
    let k = rows.len();

    // Unknowns (x on the row support, v): xᵀA restricted to the column
    // support is constant v, and x sums to one.
    let mut sys_x = vec![vec![S::zero(); k + 1]; k + 1];
    let mut rhs_x = vec![S::zero(); k + 1];
    for (eq, &j) in cols.iter().enumerate() {
        for (t, &i) in rows.iter().enumerate() {
            sys_x[eq][t] = a.get(i, j);
        }
        sys_x[eq][k] = -S::one();
    }
    for t in 0..k {
        sys_x[k][t] = S::one();
    }
    rhs_x[k] = S::one();
    let sol_x = gaussian_solve(sys_x, rhs_x)?;

    // Unknowns (y on the column support, v): A y restricted to the row
    // support is constant v, and y sums to one.
    let mut sys_y = vec![vec![S::zero(); k + 1]; k + 1];
    let mut rhs_y = vec![S::zero(); k + 1];
    for (eq, &i) in rows.iter().enumerate() {
        for (t, &j) in cols.iter().enumerate() {
            sys_y[eq][t] = a.get(i, j);
        }
        sys_y[eq][k] = -S::one();
    }
    for t in 0..k {
        sys_y[k][t] = S::one();
    }
    rhs_y[k] = S::one();
    let sol_y = gaussian_solve(sys_y, rhs_y)?;

    let v_x = sol_x[k];
    let v_y = sol_y[k];
    if (v_x - v_y).abs() > eps {
        return None;
    }

    if sol_x[..k].iter().any(|&w| w < -eps) || sol_y[..k].iter().any(|&w| w < -eps) {
        return None;
    }

    let mut x_full = vec![S::zero(); a.rows()];
    for (t, &i) in rows.iter().enumerate() {
        x_full[i] = sol_x[t].max(S::zero());
    }
    let mut y_full = vec![S::zero(); a.cols()];
    for (t, &j) in cols.iter().enumerate() {
        y_full[j] = sol_y[t].max(S::zero());
    }
    let x_star = MixedStrategy::normalized(x_full);
    let y_star = MixedStrategy::normalized(y_full);

    // Saddle-point verification against every vertex deviation.
    let rewards = a.reward_vector(&x_star).ok()?;
    if rewards.iter().any(|&r| r > v_x + eps) {
        return None;
    }
    let losses = a.loss_vector(&y_star).ok()?;
    if losses.iter().any(|&l| l < v_x - eps) {
        return None;
    }

    let value = a.payoff(&x_star, &y_star).ok()?;
    Some(OracleSolution {
        x_star,
        y_star,
        value,
    })
}

/// Gaussian elimination with partial pivoting; `None` on a singular system.
fn gaussian_solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    let tiny = S::from_f64(1e-11).unwrap();
    for col in 0..n {
        let mut pivot_row = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[pivot_row][col].abs() {
                pivot_row = r;
            }
        }
        if a[pivot_row][col].abs() < tiny {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor != S::zero() {
                for c in col..n {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
                let delta = factor * b[col];
                b[r] -= delta;
            }
        }
    }
    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(
        start: usize,
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            recurse(i + 1, n, k, current, out);
            current.pop();
        }
    }
    recurse(0, n, k, &mut current, &mut out);
    out
}

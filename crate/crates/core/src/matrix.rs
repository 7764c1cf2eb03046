//! Payoff matrices and the bilinear game operations built on them.
//!
//! The matrix entry `(i, j)` is the loss of the row player (and the reward of
//! the column player) when they play actions `i` and `j`. Per-round game
//! matrices carry entries in `[-1, 1]`; cumulative matrices are built with
//! [`PayoffMatrix::unbounded`] and rescaled before any equilibrium solve.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::Scalar;
use crate::simplex::MixedStrategy;

/// Dense row-major payoff matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

/// Exact content key for equilibrium caching: dimensions plus entry bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixKey {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl<S: Scalar> PayoffMatrix<S> {
    /// Builds a per-round game matrix; every entry must lie in `[-1, 1]`.
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        let m = Self::unbounded(rows)?;
        for i in 0..m.rows {
            for j in 0..m.cols {
                if m.get(i, j).abs() > S::one() {
                    return Err(Error::EntryOutOfRange { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix with arbitrary finite entries (cumulative sums exceed
    /// the unit range).
    pub fn unbounded(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyDimension);
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::NonFinite);
                }
                entries.push(v);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// All-zero matrix, the identity for [`PayoffMatrix::accumulate`].
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1);
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries[i * self.cols + j]
    }

    pub fn entries_row_major(&self) -> &[S] {
        &self.entries
    }

    /// Entrywise sum, for cumulative matrices.
    pub fn accumulate(&mut self, other: &Self) -> Result<(), Error> {
        self.check_shape(other)?;
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(())
    }

    /// Entrywise scaling; the result is unbounded.
    pub fn scaled(&self, factor: S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&v| v * factor).collect(),
        }
    }

    /// Entrywise clamp into `[-1, 1]`.
    pub fn clamped_unit(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|&v| v.min(S::one()).max(-S::one()))
                .collect(),
        }
    }

    /// max_{ij} |a_ij|.
    pub fn inf_norm(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// ‖self − other‖∞ (entrywise max norm).
    pub fn inf_norm_distance(&self, other: &Self) -> Result<S, Error> {
        self.check_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(S::zero(), |acc, (&a, &b)| acc.max((a - b).abs())))
    }

    /// The loss vector `A y` observed by the row player.
    pub fn loss_vector(&self, y: &MixedStrategy<S>) -> Result<Vec<S>, Error> {
        if y.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: y.dim(),
            });
        }
        let yw = y.weights();
        let mut out = vec![S::zero(); self.rows];
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            out[i] = dot(row, yw);
        }
        Ok(out)
    }

    /// The reward vector `xᵀA` observed by the column player.
    pub fn reward_vector(&self, x: &MixedStrategy<S>) -> Result<Vec<S>, Error> {
        if x.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: x.dim(),
            });
        }
        let xw = x.weights();
        let mut out = vec![S::zero(); self.cols];
        for (i, &xi) in xw.iter().enumerate() {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (o, &a) in out.iter_mut().zip(row) {
                *o += xi * a;
            }
        }
        Ok(out)
    }

    /// Expected payoff `xᵀA y`, computed as `x · (A y)`.
    pub fn payoff(&self, x: &MixedStrategy<S>, y: &MixedStrategy<S>) -> Result<S, Error> {
        if x.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: x.dim(),
            });
        }
        let losses = self.loss_vector(y)?;
        Ok(dot(x.weights(), &losses))
    }

    /// Per-round duality gap `max_y xᵀA y − min_x xᵀA y_t`; both linear
    /// optima sit at simplex vertices. Nonnegative by the saddle-point
    /// inequality; rounding residue below zero is clipped.
    pub fn duality_gap(&self, x: &MixedStrategy<S>, y: &MixedStrategy<S>) -> Result<S, Error> {
        let rewards = self.reward_vector(x)?;
        let losses = self.loss_vector(y)?;
        let best_attack = max_entry(&rewards);
        let best_defense = min_entry(&losses);
        let gap = best_attack - best_defense;
        debug_assert!(gap > -S::saddle_tol(), "duality gap materially negative");
        Ok(gap.max(S::zero()))
    }

    /// Vertex best response of the row player to `y`: the action minimizing
    /// the loss vector, lowest index on ties.
    pub fn best_response_row(
        &self,
        y: &MixedStrategy<S>,
    ) -> Result<(usize, MixedStrategy<S>), Error> {
        let losses = self.loss_vector(y)?;
        let idx = argmin(&losses);
        Ok((idx, MixedStrategy::vertex(self.rows, idx)))
    }

    /// Vertex best response of the column player to `x`: the action
    /// maximizing the reward vector, lowest index on ties.
    pub fn best_response_col(
        &self,
        x: &MixedStrategy<S>,
    ) -> Result<(usize, MixedStrategy<S>), Error> {
        let rewards = self.reward_vector(x)?;
        let idx = argmax(&rewards);
        Ok((idx, MixedStrategy::vertex(self.cols, idx)))
    }

    /// Exact content key (dimensions + entry bit patterns).
    pub fn key(&self) -> MatrixKey {
        MatrixKey {
            rows: self.rows,
            cols: self.cols,
            bits: self.entries.iter().map(|&v| v.bit_pattern()).collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn max_entry<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::neg_infinity(), |acc, &x| acc.max(x))
}

pub(crate) fn min_entry<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::infinity(), |acc, &x| acc.min(x))
}

/// Lowest index attaining the minimum (strict comparison keeps the first).
pub(crate) fn argmin<S: Scalar>(v: &[S]) -> usize {
    let mut idx = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x < v[idx] {
            idx = i;
        }
    }
    idx
}

pub(crate) fn argmax<S: Scalar>(v: &[S]) -> usize {
    let mut idx = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[idx] {
            idx = i;
        }
    }
    idx
}

/// ‖a − b‖∞ of two loss/reward vectors.
pub(crate) fn inf_distance<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}

#[derive(Serialize, Deserialize)]
struct MatrixWire<S> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar + Serialize> Serialize for PayoffMatrix<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let entries = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for PayoffMatrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::<S>::deserialize(deserializer)?;
        if wire.entries.len() != wire.rows {
            return Err(D::Error::custom("row count does not match entries"));
        }
        if wire.entries.iter().any(|r| r.len() != wire.cols) {
            return Err(D::Error::custom("column count does not match entries"));
        }
        PayoffMatrix::new(wire.entries).map_err(D::Error::custom)
    }
}

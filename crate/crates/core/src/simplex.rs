//! Mixed strategies and Euclidean geometry of the probability simplex.

use crate::error::Error;
use crate::scalar::Scalar;

/// A point on the probability simplex: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy<S> {
    weights: Vec<S>,
}

impl<S: Scalar> MixedStrategy<S> {
    /// Validates the simplex invariants: nonnegative weights, sum within
    /// [`Scalar::simplex_tol`] of one.
    pub fn new(weights: Vec<S>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let mut sum = S::zero();
        for &w in &weights {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if w < S::zero() {
                return Err(Error::BadStrategy("negative weight"));
            }
            sum += w;
        }
        if (sum - S::one()).abs() > S::simplex_tol() {
            return Err(Error::BadStrategy("weights do not sum to one"));
        }
        Ok(Self { weights })
    }

    /// The uniform distribution over `k` actions.
    pub fn uniform(k: usize) -> Self {
        assert!(k >= 1, "dimension must be at least 1");
        let w = S::one() / S::from_usize(k).unwrap();
        Self {
            weights: vec![w; k],
        }
    }

    /// The basis vector putting all mass on action `j`.
    pub fn vertex(k: usize, j: usize) -> Self {
        assert!(j < k, "vertex index out of range");
        let mut weights = vec![S::zero(); k];
        weights[j] = S::one();
        Self { weights }
    }

    /// Builds a strategy from raw nonnegative-up-to-rounding weights by
    /// clamping tiny negatives and renormalizing. Used to clean solver and
    /// multiplicative-update output; weights materially below zero panic in
    /// debug builds.
    pub fn normalized(mut weights: Vec<S>) -> Self {
        assert!(!weights.is_empty(), "dimension must be at least 1");
        let mut sum = S::zero();
        for w in &mut weights {
            debug_assert!(w.is_finite());
            debug_assert!(*w > -S::simplex_tol().sqrt(), "weight {w} below zero");
            if *w < S::zero() {
                *w = S::zero();
            }
            sum += *w;
        }
        debug_assert!(sum > S::zero(), "weights sum to zero");
        for w in &mut weights {
            *w /= sum;
        }
        Self { weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// ‖self − other‖₁.
    pub fn l1_distance(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(&a, &b)| (a - b).abs())
            .sum()
    }

    /// Shannon entropy in nats, with 0·log 0 = 0.
    pub fn entropy(&self) -> S {
        let mut h = S::zero();
        for &w in &self.weights {
            if w > S::zero() {
                h -= w * w.ln();
            }
        }
        h
    }
}

/// Euclidean projection onto the probability simplex.
///
/// Sort-then-threshold: with the entries sorted in decreasing order, the
/// projection is `max(v_i − τ, 0)` for the unique shift τ making the result
/// sum to one. O(k log k) and exact at this scale.
pub fn project_to_simplex<S: Scalar>(v: &[S]) -> Result<MixedStrategy<S>, Error> {
    if v.is_empty() {
        return Err(Error::EmptyDimension);
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite entries"));

    let mut cumulative = S::zero();
    let mut tau = S::zero();
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let count = S::from_usize(k + 1).unwrap();
        let candidate = (cumulative - S::one()) / count;
        if u - candidate > S::zero() {
            tau = candidate;
        } else {
            break;
        }
    }

    let projected = v
        .iter()
        .map(|&x| (x - tau).max(S::zero()))
        .collect::<Vec<_>>();
    Ok(MixedStrategy::normalized(projected))
}

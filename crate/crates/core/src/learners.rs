//! Base learners on the probability simplex.
//!
//! Two optimistic mirror-descent instantiations are provided, both of which
//! satisfy the DRVU property (dynamic regret bounded by variation in
//! utilities) with explicit constants:
//!
//! - optimistic Hedge with a fixed-share update (entropic regularizer, every
//!   auxiliary weight mixed toward uniform by ξ after each update), and
//! - optimistic projected gradient descent (Euclidean regularizer).
//!
//! A third kind, the dummy learner, constantly plays one pure action and
//! ignores feedback; the two-layer player uses one dummy per action so the
//! meta level can express vertex strategies directly.

use crate::error::Error;
use crate::matrix::dot;
use crate::matrix::inf_distance;
use crate::scalar::{real, Scalar};
use crate::simplex::{project_to_simplex, MixedStrategy};

/// Which base algorithm a learner runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerKind {
    HedgeFixedShare,
    OptimisticOgd,
    /// Always plays the given basis vector.
    Dummy(usize),
}

/// DRVU constants (α, β, γ): the dynamic regret of a learner with step size
/// η against a comparator sequence with path length P is bounded by
/// `(α/η)(1+P) + ηβ·Σ‖g_t−g_{t−1}‖∞² − (γ/η)·Σ‖x_t−x_{t−1}‖₁²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrvuParams<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
}

/// Proven DRVU constants for a learner kind on a `dim`-action simplex over
/// `horizon` rounds.
pub fn drvu_params_for<S: Scalar>(
    kind: LearnerKind,
    dim: usize,
    horizon: u64,
) -> Result<DrvuParams<S>, Error> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    let d = S::from_usize(dim).unwrap();
    match kind {
        LearnerKind::HedgeFixedShare => {
            let mt = d * S::from_u64(horizon.max(1)).unwrap();
            Ok(DrvuParams {
                alpha: real::<S>(3.0) + mt.ln(),
                beta: S::one(),
                gamma: real(0.25),
            })
        }
        LearnerKind::OptimisticOgd => Ok(DrvuParams {
            alpha: d + real(2.0),
            beta: d / real(2.0),
            gamma: S::one() / (real::<S>(4.0) * d),
        }),
        LearnerKind::Dummy(_) => Err(Error::Unsupported("dummy learners have no DRVU constants")),
    }
}

/// One base learner: the current decision, the auxiliary point the next
/// update steps from, and the fixed step size.
#[derive(Debug, Clone)]
pub struct Learner<S> {
    kind: LearnerKind,
    eta: S,
    /// Fixed-share coefficient ξ; zero for OGD and dummies.
    fixed_share: S,
    /// x̃ for Hedge (post fixed-share), x̂ for OGD.
    anchor: MixedStrategy<S>,
    decision: MixedStrategy<S>,
    last_decision: MixedStrategy<S>,
}

impl<S: Scalar> Learner<S> {
    /// Optimistic Hedge with the fixed-share coefficient ξ = 1/horizon.
    pub fn hedge(dim: usize, eta: S, horizon: u64) -> Self {
        let xi = S::one() / S::from_u64(horizon.max(1)).unwrap();
        Self::hedge_with_share(dim, eta, xi)
    }

    pub fn hedge_with_share(dim: usize, eta: S, fixed_share: S) -> Self {
        assert!(eta > S::zero());
        assert!(fixed_share >= S::zero() && fixed_share <= S::one());
        let uniform = MixedStrategy::uniform(dim);
        Self {
            kind: LearnerKind::HedgeFixedShare,
            eta,
            fixed_share,
            anchor: uniform.clone(),
            decision: uniform.clone(),
            last_decision: uniform,
        }
    }

    pub fn ogd(dim: usize, eta: S) -> Self {
        assert!(eta > S::zero());
        let uniform = MixedStrategy::uniform(dim);
        Self {
            kind: LearnerKind::OptimisticOgd,
            eta,
            fixed_share: S::zero(),
            anchor: uniform.clone(),
            decision: uniform.clone(),
            last_decision: uniform,
        }
    }

    pub fn dummy(dim: usize, action: usize) -> Self {
        let vertex = MixedStrategy::vertex(dim, action);
        Self {
            kind: LearnerKind::Dummy(action),
            eta: S::one(),
            fixed_share: S::zero(),
            anchor: vertex.clone(),
            decision: vertex.clone(),
            last_decision: vertex,
        }
    }

    pub fn kind(&self) -> LearnerKind {
        self.kind
    }

    pub fn eta(&self) -> S {
        self.eta
    }

    pub fn dim(&self) -> usize {
        self.decision.dim()
    }

    /// The decision played this round (after [`Learner::predict`]).
    pub fn decision(&self) -> &MixedStrategy<S> {
        &self.decision
    }

    /// The previous round's decision; equal to the current one at round 1,
    /// so stability and correction terms start at zero.
    pub fn last_decision(&self) -> &MixedStrategy<S> {
        &self.last_decision
    }

    /// The optimistic half-step: plays argmin over the simplex of
    /// `η⟨x, h⟩ + D(x, anchor)` for the learner's regularizer. Dummy
    /// learners ignore the optimism vector.
    pub fn predict(&mut self, optimism: &[S]) -> Result<&MixedStrategy<S>, Error> {
        if optimism.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: optimism.len(),
            });
        }
        if optimism.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let next = match self.kind {
            LearnerKind::Dummy(_) => self.decision.clone(),
            LearnerKind::HedgeFixedShare => entropic_step(&self.anchor, optimism, self.eta),
            LearnerKind::OptimisticOgd => euclidean_step(&self.anchor, optimism, self.eta)?,
        };
        self.last_decision = std::mem::replace(&mut self.decision, next);
        Ok(&self.decision)
    }

    /// Advances the auxiliary point with the observed loss vector; Hedge then
    /// mixes with the uniform distribution so every weight stays ≥ ξ/k.
    pub fn update(&mut self, loss: &[S]) -> Result<(), Error> {
        if loss.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: loss.len(),
            });
        }
        if loss.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        match self.kind {
            LearnerKind::Dummy(_) => {}
            LearnerKind::HedgeFixedShare => {
                let stepped = entropic_step(&self.anchor, loss, self.eta);
                let k = S::from_usize(self.dim()).unwrap();
                let xi = self.fixed_share;
                let mixed = stepped
                    .weights()
                    .iter()
                    .map(|&w| (S::one() - xi) * w + xi / k)
                    .collect();
                self.anchor = MixedStrategy::normalized(mixed);
            }
            LearnerKind::OptimisticOgd => {
                self.anchor = euclidean_step(&self.anchor, loss, self.eta)?;
            }
        }
        Ok(())
    }
}

/// Multiplicative-weights step `w_i ∝ base_i · exp(−η g_i)`, carried out in
/// log space with max subtraction.
fn entropic_step<S: Scalar>(base: &MixedStrategy<S>, grad: &[S], eta: S) -> MixedStrategy<S> {
    let mut logits: Vec<S> = base
        .weights()
        .iter()
        .zip(grad)
        .map(|(&w, &g)| w.ln() - eta * g)
        .collect();
    let peak = logits.iter().fold(S::neg_infinity(), |acc, &v| acc.max(v));
    for l in &mut logits {
        *l = (*l - peak).exp();
    }
    MixedStrategy::normalized(logits)
}

/// Euclidean step: projection of `base − η g` back onto the simplex.
fn euclidean_step<S: Scalar>(
    base: &MixedStrategy<S>,
    grad: &[S],
    eta: S,
) -> Result<MixedStrategy<S>, Error> {
    let shifted: Vec<S> = base
        .weights()
        .iter()
        .zip(grad)
        .map(|(&w, &g)| w - eta * g)
        .collect();
    project_to_simplex(&shifted)
}

/// Result of replaying a loss/comparator sequence through a learner and
/// evaluating both sides of the DRVU inequality.
#[derive(Debug, Clone, Copy)]
pub struct DrvuReport<S> {
    pub holds: bool,
    pub lhs: S,
    pub rhs: S,
}

/// Runs a fresh learner of the given kind on the loss sequence with the
/// previous-loss optimism rule (`h_t = g_{t−1}`, `h_1 = 0`) and checks its
/// dynamic regret against the DRVU bound with the proven constants.
///
/// The OGD right-hand side carries the explicit simplex diameter constant
/// `D² = 2·dim` on top of the proven bound, covering the additive constant
/// absorbed by its regret analysis.
pub fn drvu_check<S: Scalar>(
    kind: LearnerKind,
    dim: usize,
    eta: S,
    losses: &[Vec<S>],
    comparators: &[MixedStrategy<S>],
) -> Result<DrvuReport<S>, Error> {
    if losses.len() != comparators.len() {
        return Err(Error::DimensionMismatch {
            expected: losses.len(),
            found: comparators.len(),
        });
    }
    let horizon = losses.len() as u64;
    let params = drvu_params_for::<S>(kind, dim, horizon)?;
    let mut learner = match kind {
        LearnerKind::HedgeFixedShare => Learner::hedge(dim, eta, horizon),
        LearnerKind::OptimisticOgd => Learner::ogd(dim, eta),
        LearnerKind::Dummy(_) => unreachable!("rejected by drvu_params_for"),
    };

    let mut lhs = S::zero();
    let mut stability = S::zero();
    let mut grad_variation = S::zero();
    let mut path_length = S::zero();
    let mut prev_loss: Option<&Vec<S>> = None;
    let zero = vec![S::zero(); dim];

    for (t, (loss, comparator)) in losses.iter().zip(comparators).enumerate() {
        if loss.len() != dim || comparator.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: loss.len(),
            });
        }
        let optimism = prev_loss.map_or(&zero[..], |g| &g[..]);
        let decision = learner.predict(optimism)?.clone();

        lhs += dot(decision.weights(), loss) - dot(comparator.weights(), loss);
        if t > 0 {
            stability += decision.l1_distance(learner.last_decision()).powi(2);
            path_length += comparator.l1_distance(&comparators[t - 1]);
        }
        grad_variation += inf_distance(loss, optimism).powi(2);

        learner.update(loss)?;
        prev_loss = Some(loss);
    }

    let mut rhs = params.alpha / eta * (S::one() + path_length)
        + eta * params.beta * grad_variation
        - params.gamma / eta * stability;
    if matches!(kind, LearnerKind::OptimisticOgd) {
        rhs += real::<S>(2.0) * S::from_usize(dim).unwrap();
    }
    Ok(DrvuReport {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn assert_simplex(s: &MixedStrategy<f64>) {
        let sum: f64 = s.weights().iter().sum();
        assert!((sum - 1.0).abs() <= TOL);
        assert!(s.weights().iter().all(|&w| w >= 0.0));
    }

    #[test]
    fn hedge_zero_optimism_is_identity() {
        let mut l = Learner::<f64>::hedge(3, 0.5, 100);
        let d = l.predict(&[0.0, 0.0, 0.0]).unwrap();
        for &w in d.weights() {
            assert!((w - 1.0 / 3.0).abs() <= TOL);
        }
    }

    #[test]
    fn ogd_predict_projects() {
        let mut l = Learner::ogd(2, 0.5);
        l.anchor = MixedStrategy::new(vec![1.0, 0.0]).unwrap();
        let d = l.predict(&[1.0, 0.0]).unwrap();
        assert_eq!(d.weights(), &[0.75, 0.25]);
    }

    #[test]
    fn dummy_ignores_everything() {
        let mut l = Learner::dummy(3, 1);
        let before = l.decision().clone();
        l.predict(&[5.0, -3.0, 0.2]).unwrap();
        l.update(&[1.0, 1.0, -1.0]).unwrap();
        l.predict(&[-2.0, 0.0, 9.0]).unwrap();
        assert_eq!(l.decision(), &before);
        assert_eq!(l.decision().weights(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn hedge_constant_loss_preserves_uniform() {
        let mut l = Learner::<f64>::hedge(4, 0.3, 50);
        l.update(&[0.7, 0.7, 0.7, 0.7]).unwrap();
        let d = l.predict(&[0.0; 4]).unwrap();
        for &w in d.weights() {
            assert!((w - 0.25).abs() <= TOL);
        }
    }

    #[test]
    fn full_mixing_restores_uniform() {
        let mut l = Learner::<f64>::hedge_with_share(3, 0.9, 1.0);
        l.update(&[1.0, -1.0, 0.0]).unwrap();
        for &w in l.anchor.weights() {
            assert!((w - 1.0 / 3.0).abs() <= TOL);
        }
    }

    #[test]
    fn ogd_update_projects() {
        let mut l = Learner::ogd(2, 1.0);
        l.update(&[1.0, 0.0]).unwrap();
        assert_eq!(l.anchor.weights(), &[0.0, 1.0]);
    }

    #[test]
    fn drvu_constants() {
        let hedge: DrvuParams<f64> = drvu_params_for(LearnerKind::HedgeFixedShare, 2, 100).unwrap();
        assert!((hedge.alpha - (3.0 + 200.0f64.ln())).abs() <= TOL);
        assert_eq!(hedge.beta, 1.0);
        assert_eq!(hedge.gamma, 0.25);

        let ogd: DrvuParams<f64> = drvu_params_for(LearnerKind::OptimisticOgd, 2, 100).unwrap();
        assert_eq!(ogd.alpha, 4.0);
        assert_eq!(ogd.beta, 1.0);
        assert_eq!(ogd.gamma, 0.125);

        let degenerate: DrvuParams<f64> =
            drvu_params_for(LearnerKind::OptimisticOgd, 1, 100).unwrap();
        assert_eq!(degenerate.alpha, 3.0);
        assert_eq!(degenerate.beta, 0.5);
        assert_eq!(degenerate.gamma, 0.25);

        assert!(drvu_params_for::<f64>(LearnerKind::Dummy(0), 2, 100).is_err());
    }

    #[test]
    fn drvu_single_round_is_trivial() {
        let losses = vec![vec![0.4, -0.9]];
        let mut l = Learner::<f64>::hedge(2, 0.1, 1);
        let x1 = l.predict(&[0.0, 0.0]).unwrap().clone();
        let report = drvu_check(LearnerKind::HedgeFixedShare, 2, 0.1, &losses, &[x1]).unwrap();
        assert!(report.holds);
        assert!(report.lhs.abs() <= TOL);
        assert!(report.rhs > 0.0);
    }

    #[test]
    fn drvu_holds_on_constant_losses() {
        let t = 200;
        let losses: Vec<Vec<f64>> = (0..t).map(|_| vec![0.8, -0.2, 0.1]).collect();
        let uniform = MixedStrategy::uniform(3);
        let comparators = vec![uniform; t];
        for eta in [0.01, 0.1] {
            let report =
                drvu_check(LearnerKind::HedgeFixedShare, 3, eta, &losses, &comparators).unwrap();
            assert!(report.holds, "lhs {} rhs {}", report.lhs, report.rhs);
        }
    }

    #[test]
    fn decisions_stay_on_simplex_under_updates() {
        let mut hedge = Learner::hedge(3, 0.8, 20);
        let mut ogd = Learner::ogd(3, 0.8);
        let grads = [
            [1.0, -1.0, 0.5],
            [-0.3, 0.9, -0.8],
            [0.0, 0.0, 1.0],
            [-1.0, -1.0, -1.0],
        ];
        let mut prev: [f64; 3] = [0.0; 3];
        for g in grads {
            assert_simplex(hedge.predict(&prev).unwrap());
            assert_simplex(ogd.predict(&prev).unwrap());
            hedge.update(&g).unwrap();
            ogd.update(&g).unwrap();
            assert_simplex(&hedge.anchor);
            assert_simplex(&ogd.anchor);
            prev = g;
        }
    }

    #[test]
    fn rejects_non_finite_inputs() {
        let mut l = Learner::hedge(2, 0.5, 10);
        assert_eq!(l.predict(&[f64::INFINITY, 0.0]), Err(Error::NonFinite));
        assert_eq!(l.update(&[f64::NAN, 0.0]), Err(Error::NonFinite));
    }
}

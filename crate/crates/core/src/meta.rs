//! The two-layer player: an optimistic-gradient meta-learner over a pool of
//! base learners.
//!
//! The pool holds N tuned learners with geometrically spaced step sizes
//! `η_i = 2^{i−1}/(L√T)` plus one dummy learner per pure action. Each round
//! the meta level mixes the base decisions with weights maintained by
//! optimistic projected gradient descent over the pool simplex. Two
//! ingredients specific to the game setting:
//!
//! - each base learner's meta loss and optimism carry a stability correction
//!   `λ‖x_{t,i} − x_{t−1,i}‖₁²`, biasing weight toward stable learners;
//! - the meta learning rate is self-confident,
//!   `ε_{t+1} = 1/√(L² + Σ_{s≥2}‖g_s − g_{s−1}‖∞²)`, driven by the observed
//!   variation of the opponent-induced gradient.
//!
//! A player never sees the game matrix itself, only the gradient it induces:
//! `A_t y_t` for the row player, `−A_tᵀ x_t` for the column player.

use crate::error::Error;
use crate::learners::{drvu_params_for, DrvuParams, Learner, LearnerKind};
use crate::matrix::{dot, inf_distance};
use crate::scalar::{real, Scalar};
use crate::simplex::{project_to_simplex, MixedStrategy};

/// Geometric step-size grid shared by the tuned base learners, plus the
/// constants derived from the DRVU parameters.
#[derive(Debug, Clone)]
pub struct StepSizePool<S> {
    etas: Vec<S>,
    big_l: S,
    lambda: S,
    c: S,
}

impl<S: Scalar> StepSizePool<S> {
    /// `N = ⌊½·log₂T⌋ + 1` step sizes `2^{i−1}/(L√T)` with
    /// `L = max{4, √(16cβ), √(8cβ/γ)}` and `λ = γL/2`.
    pub fn new(drvu: &DrvuParams<S>, horizon: u64, c: S) -> Result<Self, Error> {
        if horizon < 2 {
            return Err(Error::HorizonTooSmall { horizon, min: 2 });
        }
        let t = S::from_u64(horizon).unwrap();
        let count = (t.ln() / real::<S>(2.0).ln() / real::<S>(2.0))
            .floor()
            .to_usize()
            .unwrap()
            + 1;
        let four = real::<S>(4.0);
        let big_l = four
            .max((real::<S>(16.0) * c * drvu.beta).sqrt())
            .max((real::<S>(8.0) * c * drvu.beta / drvu.gamma).sqrt());
        let base = S::one() / (big_l * t.sqrt());
        let mut etas = Vec::with_capacity(count);
        let mut eta = base;
        for _ in 0..count {
            etas.push(eta);
            eta *= real(2.0);
        }
        Ok(Self {
            etas,
            big_l,
            lambda: drvu.gamma * big_l / real(2.0),
            c,
        })
    }

    pub fn len(&self) -> usize {
        self.etas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.etas.is_empty()
    }

    pub fn etas(&self) -> &[S] {
        &self.etas
    }

    pub fn big_l(&self) -> S {
        self.big_l
    }

    pub fn lambda(&self) -> S {
        self.lambda
    }

    pub fn c(&self) -> S {
        self.c
    }
}

/// One player's full state: base-learner pool, meta weights, and the caches
/// feeding the optimism and correction terms.
#[derive(Debug, Clone)]
pub struct MetaPlayer<S> {
    dim: usize,
    learners: Vec<Learner<S>>,
    tuned: usize,
    lambda: S,
    big_l: S,
    /// Auxiliary meta weights p̂_t.
    p_hat: Vec<S>,
    /// Meta weights p_t of the current round.
    p: Vec<S>,
    /// ε_t, refreshed after each feed.
    eps: S,
    grad_var_acc: S,
    prev_grad: Option<Vec<S>>,
    corrections: Vec<S>,
    round: u64,
    awaiting_feed: bool,
}

impl<S: Scalar> MetaPlayer<S> {
    /// Builds the player for a `dim`-action side: N tuned learners of the
    /// given kind plus `dim` dummy learners, uniform auxiliary weights, and
    /// `ε₁ = 1/L`.
    pub fn new(dim: usize, horizon: u64, kind: LearnerKind, c: S) -> Result<Self, Error> {
        let drvu = drvu_params_for::<S>(kind, dim, horizon)?;
        let pool = StepSizePool::new(&drvu, horizon, c)?;
        let mut learners = Vec::with_capacity(pool.len() + dim);
        for &eta in pool.etas() {
            learners.push(match kind {
                LearnerKind::HedgeFixedShare => Learner::hedge(dim, eta, horizon),
                LearnerKind::OptimisticOgd => Learner::ogd(dim, eta),
                LearnerKind::Dummy(_) => {
                    return Err(Error::Unsupported("dummy is not a tuned base kind"))
                }
            });
        }
        for action in 0..dim {
            learners.push(Learner::dummy(dim, action));
        }
        Ok(Self::with_pool(
            dim,
            learners,
            pool.len(),
            pool.lambda(),
            pool.big_l(),
        ))
    }

    /// Assembles a player from an explicit learner pool; the first `tuned`
    /// learners receive feedback, the rest are treated as dummies.
    pub fn with_pool(
        dim: usize,
        learners: Vec<Learner<S>>,
        tuned: usize,
        lambda: S,
        big_l: S,
    ) -> Self {
        assert!(!learners.is_empty());
        assert!(tuned <= learners.len());
        assert!(learners.iter().all(|l| l.dim() == dim));
        let count = learners.len();
        let uniform = vec![S::one() / S::from_usize(count).unwrap(); count];
        Self {
            dim,
            learners,
            tuned,
            lambda,
            big_l,
            p_hat: uniform.clone(),
            p: uniform,
            eps: S::one() / big_l,
            grad_var_acc: S::zero(),
            prev_grad: None,
            corrections: vec![S::zero(); count],
            round: 0,
            awaiting_feed: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_learners(&self) -> usize {
        self.learners.len()
    }

    pub fn num_tuned(&self) -> usize {
        self.tuned
    }

    pub fn lambda(&self) -> S {
        self.lambda
    }

    pub fn big_l(&self) -> S {
        self.big_l
    }

    /// Current meta learning rate ε_t.
    pub fn epsilon(&self) -> S {
        self.eps
    }

    /// Meta weights of the most recent round.
    pub fn weights(&self) -> &[S] {
        &self.p
    }

    /// Entropy of the meta weights, a measure of how spread the mixture is.
    pub fn weight_entropy(&self) -> S {
        let mut h = S::zero();
        for &w in &self.p {
            if w > S::zero() {
                h -= w * w.ln();
            }
        }
        h
    }

    pub fn learners(&self) -> &[Learner<S>] {
        &self.learners
    }

    /// Plays the round: collects base decisions (tuned learners use the
    /// previous gradient as optimism), forms the corrected optimism vector,
    /// steps the meta weights, and returns the mixture decision.
    pub fn decide(&mut self) -> Result<MixedStrategy<S>, Error> {
        if self.awaiting_feed {
            return Err(Error::Protocol("decide called twice in one round"));
        }
        self.round += 1;
        let zero = vec![S::zero(); self.dim];
        let optimism_vec = self.prev_grad.clone().unwrap_or(zero);

        for learner in &mut self.learners {
            learner.predict(&optimism_vec)?;
        }
        for (i, learner) in self.learners.iter().enumerate() {
            let drift = learner.decision().l1_distance(learner.last_decision());
            self.corrections[i] = self.lambda * drift * drift;
        }

        // m_{t,i} = x_{t,i}ᵀ g_{t−1} + λ‖x_{t,i} − x_{t−1,i}‖₁², zero at t=1.
        let count = self.learners.len();
        let mut meta_optimism = vec![S::zero(); count];
        if let Some(prev) = &self.prev_grad {
            for i in 0..count {
                meta_optimism[i] =
                    dot(self.learners[i].decision().weights(), prev) + self.corrections[i];
            }
        }
        self.p = self.meta_step(&meta_optimism)?;

        let mut mixture = vec![S::zero(); self.dim];
        for (i, learner) in self.learners.iter().enumerate() {
            let w = self.p[i];
            for (m, &x) in mixture.iter_mut().zip(learner.decision().weights()) {
                *m += w * x;
            }
        }
        self.awaiting_feed = true;
        Ok(MixedStrategy::normalized(mixture))
    }

    /// Consumes the revealed gradient: advances the auxiliary meta weights
    /// with the corrected loss vector, refreshes ε from the accumulated
    /// gradient variation, and forwards the gradient to the tuned learners.
    pub fn feed(&mut self, grad: &[S]) -> Result<(), Error> {
        if !self.awaiting_feed {
            return Err(Error::Protocol("feed called before decide"));
        }
        if grad.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: grad.len(),
            });
        }
        if grad.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }

        let count = self.learners.len();
        let mut meta_loss = vec![S::zero(); count];
        for i in 0..count {
            meta_loss[i] = dot(self.learners[i].decision().weights(), grad) + self.corrections[i];
        }
        self.p_hat = self.meta_step(&meta_loss)?.to_vec();

        if let Some(prev) = &self.prev_grad {
            self.grad_var_acc += inf_distance(grad, prev).powi(2);
        }
        self.eps = S::one() / (self.big_l * self.big_l + self.grad_var_acc).sqrt();

        for learner in &mut self.learners[..self.tuned] {
            learner.update(grad)?;
        }
        self.prev_grad = Some(grad.to_vec());
        self.awaiting_feed = false;
        Ok(())
    }

    /// One optimistic-OGD half-step on the pool simplex: the proximal
    /// objective `ε⟨p, v⟩ + ‖p − p̂‖₂²` has its argmin at the projection of
    /// `p̂ − (ε/2)v`.
    fn meta_step(&self, v: &[S]) -> Result<Vec<S>, Error> {
        let half_step = self.eps / real::<S>(2.0);
        let target: Vec<S> = self
            .p_hat
            .iter()
            .zip(v)
            .map(|(&p, &vi)| p - half_step * vi)
            .collect();
        Ok(project_to_simplex(&target)?.weights().to_vec())
    }
}

/// The two sides of one simulation: the row player fed with `A_t y_t` and the
/// column player fed with `−A_tᵀ x_t`, constructed symmetrically.
pub fn make_player_pair<S: Scalar>(
    rows: usize,
    cols: usize,
    horizon: u64,
    kind: LearnerKind,
    c: S,
) -> Result<(MetaPlayer<S>, MetaPlayer<S>), Error> {
    let x = MetaPlayer::new(rows, horizon, kind, c)?;
    let y = MetaPlayer::new(cols, horizon, kind, c)?;
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn hedge_pool(horizon: u64) -> StepSizePool<f64> {
        let drvu = drvu_params_for(LearnerKind::HedgeFixedShare, 2, horizon).unwrap();
        StepSizePool::new(&drvu, horizon, 0.5).unwrap()
    }

    #[test]
    fn pool_matches_reference_constants() {
        let pool = hedge_pool(2_000_000);
        assert_eq!(pool.big_l(), 4.0);
        assert_eq!(pool.len(), 11);
        let t = 2_000_000f64;
        assert!((pool.etas()[0] - 1.0 / (4.0 * t.sqrt())).abs() < 1e-18);
        for (i, &eta) in pool.etas().iter().enumerate() {
            assert!((eta - 2f64.powi(i as i32) / (4.0 * t.sqrt())).abs() < 1e-15);
        }
        assert_eq!(pool.lambda(), 0.25 * 4.0 / 2.0);
    }

    #[test]
    fn tiny_horizon_pool() {
        let pool = hedge_pool(4);
        assert_eq!(pool.len(), 2);
        assert!(StepSizePool::<f64>::new(
            &drvu_params_for(LearnerKind::HedgeFixedShare, 2, 4).unwrap(),
            1,
            0.5
        )
        .is_err());
    }

    #[test]
    fn init_appends_dummies_and_uniform_weights() {
        let player =
            MetaPlayer::<f64>::new(2, 2_000_000, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        assert_eq!(player.num_learners(), 13);
        assert_eq!(player.num_tuned(), 11);
        let d1 = player.learners()[11].decision().weights().to_vec();
        let d2 = player.learners()[12].decision().weights().to_vec();
        assert_eq!(d1, vec![1.0, 0.0]);
        assert_eq!(d2, vec![0.0, 1.0]);
        assert!((player.epsilon() - 0.25).abs() <= TOL);
    }

    #[test]
    fn first_round_decision_averages_the_pool() {
        let mut player =
            MetaPlayer::<f64>::new(2, 1000, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        let x1 = player.decide().unwrap();
        // Tuned learners start uniform and the two dummies average to
        // uniform as well, so the mixture is uniform.
        for &w in x1.weights() {
            assert!((w - 0.5).abs() <= TOL);
        }
        let count = player.num_learners() as f64;
        for &w in player.weights() {
            assert!((w - 1.0 / count).abs() <= TOL);
        }
    }

    #[test]
    fn meta_projection_closed_form() {
        // Two-learner pool, p̂ = (½, ½), ε = ¼, optimism (1, 0).
        let learners = vec![Learner::<f64>::dummy(2, 0), Learner::dummy(2, 1)];
        let mut player = MetaPlayer::with_pool(2, learners, 0, 0.0, 4.0);
        player.prev_grad = Some(vec![1.0, 0.0]);
        // Dummies: decision e₁ and e₂, so m = (e₁·g, e₂·g) = (1, 0).
        let decision = player.decide().unwrap();
        assert!((player.weights()[0] - 0.4375).abs() <= TOL);
        assert!((player.weights()[1] - 0.5625).abs() <= TOL);
        assert!((decision.weights()[0] - 0.4375).abs() <= TOL);
    }

    #[test]
    fn single_learner_pool_reduces_to_that_learner() {
        let learners = vec![Learner::hedge(3, 0.2, 100)];
        let mut player = MetaPlayer::with_pool(3, learners, 1, 0.0, 4.0);
        let mut reference = Learner::hedge(3, 0.2, 100);
        let mut prev: Vec<f64> = vec![0.0; 3];
        for step in 0..20 {
            let got = player.decide().unwrap();
            let want = reference.predict(&prev).unwrap().clone();
            for (g, w) in got.weights().iter().zip(want.weights()) {
                assert!((g - w).abs() <= 1e-9, "diverged at step {step}");
            }
            let g = vec![(step as f64 * 0.37).sin(), (step as f64 * 0.11).cos(), -0.5];
            player.feed(&g).unwrap();
            reference.update(&g).unwrap();
            prev = g;
        }
    }

    #[test]
    fn epsilon_stays_constant_when_frozen() {
        let mut player =
            MetaPlayer::<f64>::new(2, 1000, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        for _ in 0..5 {
            player.decide().unwrap();
            player.feed(&[0.25, 0.25]).unwrap();
            assert!((player.epsilon() - 0.25).abs() <= TOL);
        }
    }

    #[test]
    fn epsilon_monotone_and_bounded() {
        let mut player = MetaPlayer::<f64>::new(2, 64, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        let horizon = 64u64;
        let mut last = player.epsilon();
        for t in 0..horizon {
            player.decide().unwrap();
            let flip = if t % 2 == 0 { 1.0 } else { -1.0 };
            player.feed(&[flip, -flip]).unwrap();
            let eps = player.epsilon();
            if t == 0 {
                // The variation sum starts one round later, so the rate is
                // still 1/L after the first feed.
                assert!((eps - 0.25).abs() <= TOL);
            }
            assert!(eps <= last + 1e-15);
            let floor = 1.0 / (16.0 + 4.0 * horizon as f64).sqrt();
            assert!(eps >= floor - 1e-15);
            last = eps;
        }
    }

    #[test]
    fn protocol_violations_are_rejected() {
        let mut player = MetaPlayer::<f64>::new(2, 100, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        assert!(matches!(player.feed(&[0.0, 0.0]), Err(Error::Protocol(_))));
        player.decide().unwrap();
        assert!(matches!(player.decide(), Err(Error::Protocol(_))));
        assert!(player.feed(&[0.1, -0.1]).is_ok());
    }

    #[test]
    fn corrections_are_nonnegative_and_zero_for_dummies() {
        let mut player = MetaPlayer::<f64>::new(2, 100, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        for t in 0..10 {
            player.decide().unwrap();
            let n = player.num_learners();
            for i in 0..n {
                assert!(player.corrections[i] >= 0.0);
            }
            assert_eq!(player.corrections[n - 2], 0.0);
            assert_eq!(player.corrections[n - 1], 0.0);
            let flip = if t % 3 == 0 { 0.9 } else { -0.4 };
            player.feed(&[flip, 0.2]).unwrap();
        }
    }

    #[test]
    fn player_pair_is_symmetric() {
        let (x, y) =
            make_player_pair::<f64>(2, 3, 2_000_000, LearnerKind::HedgeFixedShare, 0.5).unwrap();
        assert_eq!(x.num_learners(), 13);
        assert_eq!(y.num_learners(), 14);
        assert_eq!(x.dim(), 2);
        assert_eq!(y.dim(), 3);
    }
}

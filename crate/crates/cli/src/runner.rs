//! The round loop: decide both players, reveal the matrix, feed both, and
//! advance the metrics.

use std::path::Path;

use regretlab_core::environments::adversarial_opponent;
use regretlab_core::metrics::NeCache;
use regretlab_core::{
    GameSchedule, Learner, MetaPlayer, MetricsAccumulator, MixedStrategy, PayoffMatrix, Real,
};

use crate::config::{BaseKind, PlayerSpec, RunConfig};
use crate::trace::{RunTrace, TraceRow};
use crate::HarnessError;

/// Row player or column player; decides feedback signs and dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Col,
}

enum Engine {
    TwoLayer(MetaPlayer),
    SingleBase {
        learner: Learner,
        prev_loss: Option<Vec<Real>>,
    },
    Fixed(MixedStrategy),
    NashOracle {
        cache: NeCache<Real>,
        side: Side,
    },
    Adversarial,
}

impl Engine {
    fn build(
        spec: &PlayerSpec,
        side: Side,
        dim: usize,
        horizon: u64,
        c: f64,
    ) -> Result<Self, HarnessError> {
        Ok(match spec {
            PlayerSpec::TwoLayer { base } => {
                Engine::TwoLayer(MetaPlayer::new(dim, horizon, (*base).into(), c)?)
            }
            PlayerSpec::SingleBase { eta, base } => Engine::SingleBase {
                learner: match base {
                    BaseKind::HedgeFixedShare => Learner::hedge(dim, *eta, horizon),
                    BaseKind::OptimisticOgd => Learner::ogd(dim, *eta),
                },
                prev_loss: None,
            },
            PlayerSpec::FixedStrategy { weights } => {
                if weights.len() != dim {
                    return Err(HarnessError::Dimension(format!(
                        "fixed strategy has {} weights, schedule side needs {dim}",
                        weights.len()
                    )));
                }
                Engine::Fixed(MixedStrategy::new(weights.clone())?)
            }
            PlayerSpec::NashOracle => Engine::NashOracle {
                cache: NeCache::new(),
                side,
            },
            PlayerSpec::AdversarialBestResponse => {
                if side == Side::Row {
                    return Err(HarnessError::Config(
                        "adversarial_best_response is only available to the y player".into(),
                    ));
                }
                Engine::Adversarial
            }
        })
    }

    /// The round's decision. Oracle engines peek at the matrix; the
    /// adversarial engine additionally needs the row player's decision.
    fn decide(
        &mut self,
        a: &PayoffMatrix,
        opponent: Option<&MixedStrategy>,
    ) -> Result<MixedStrategy, HarnessError> {
        Ok(match self {
            Engine::TwoLayer(player) => player.decide()?,
            Engine::SingleBase { learner, prev_loss } => {
                let zero = vec![0.0; learner.dim()];
                let optimism = prev_loss.as_deref().unwrap_or(&zero);
                learner.predict(optimism)?.clone()
            }
            Engine::Fixed(strategy) => strategy.clone(),
            Engine::NashOracle { cache, side } => {
                let sol = cache.solve(a)?;
                match side {
                    Side::Row => sol.x_star.clone(),
                    Side::Col => sol.y_star.clone(),
                }
            }
            Engine::Adversarial => {
                let x = opponent.expect("row decision available to the adversary");
                adversarial_opponent(x, a)?
            }
        })
    }

    /// Observed gradient: `A_t y_t` for the row side, `−A_tᵀ x_t` for the
    /// column side.
    fn feed(&mut self, grad: &[Real]) -> Result<(), HarnessError> {
        match self {
            Engine::TwoLayer(player) => player.feed(grad)?,
            Engine::SingleBase { learner, prev_loss } => {
                learner.update(grad)?;
                *prev_loss = Some(grad.to_vec());
            }
            Engine::Fixed(_) | Engine::NashOracle { .. } | Engine::Adversarial => {}
        }
        Ok(())
    }

    fn epsilon(&self) -> f64 {
        match self {
            Engine::TwoLayer(player) => player.epsilon(),
            _ => 0.0,
        }
    }

    fn weight_entropy(&self) -> f64 {
        match self {
            Engine::TwoLayer(player) => player.weight_entropy(),
            _ => 0.0,
        }
    }
}

/// Everything a finished run exposes to callers and files.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trace: RunTrace,
    pub final_reg_x: f64,
    pub final_reg_y: f64,
    pub final_dyn_ne_reg: f64,
    pub final_ne_reg: f64,
    pub final_dual_gap: f64,
    pub final_path_length: f64,
    pub final_variation: f64,
    pub final_deviation: f64,
    /// Rounds whose emitted matrix was clamped back into the unit range.
    pub clamped_rounds: u64,
}

impl RunOutcome {
    /// max(reg_x, reg_y): the individual-regret figure of a self-play run.
    pub fn individual_regret(&self) -> f64 {
        self.final_reg_x.max(self.final_reg_y)
    }
}

/// Runs the configured simulation and returns the sampled trace.
pub fn run_config(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    cfg.validate()?;
    let schedule = cfg.schedule.build(cfg.seed)?;
    run_on_schedule(&schedule, &cfg.x_player, &cfg.y_player, cfg.stride, cfg.c)
}

/// The round loop against an already-built schedule.
pub fn run_on_schedule(
    schedule: &GameSchedule,
    x_spec: &PlayerSpec,
    y_spec: &PlayerSpec,
    stride: u64,
    c: f64,
) -> Result<RunOutcome, HarnessError> {
    let horizon = schedule.horizon();
    let (rows, cols) = schedule.dims();
    let mut x_engine = Engine::build(x_spec, Side::Row, rows, horizon, c)?;
    let mut y_engine = Engine::build(y_spec, Side::Col, cols, horizon, c)?;

    let average = schedule.average_matrix()?;
    let mut metrics = MetricsAccumulator::new(rows, cols).with_average_matrix(average);
    let mut trace = RunTrace::new();
    let mut clamped_rounds = 0u64;

    for t in 1..=horizon {
        let a = schedule.matrix_at(t)?;
        if schedule.clamped_at(t) {
            clamped_rounds += 1;
        }

        let x = x_engine.decide(&a, None)?;
        let y = y_engine.decide(&a, Some(&x))?;

        let loss_x = a.loss_vector(&y)?;
        let reward = a.reward_vector(&x)?;
        let loss_y: Vec<Real> = reward.iter().map(|&r| -r).collect();
        x_engine.feed(&loss_x)?;
        y_engine.feed(&loss_y)?;

        metrics.step(&a, &x, &y)?;

        if t % stride == 0 || t == horizon {
            trace.push(TraceRow {
                t,
                reg_x: metrics.individual_regret_x(),
                reg_y: metrics.individual_regret_y(),
                dyn_ne_reg: metrics.dynamic_ne_regret(),
                ne_reg: metrics.ne_regret()?,
                dual_gap: metrics.duality_gap_total(),
                p_t: metrics.path_length(),
                v_t: metrics.variation(),
                w_t: metrics.deviation(),
                eps_x: x_engine.epsilon(),
                eps_y: y_engine.epsilon(),
                meta_entropy_x: x_engine.weight_entropy(),
                meta_entropy_y: y_engine.weight_entropy(),
            });
        }
    }

    Ok(RunOutcome {
        final_reg_x: metrics.individual_regret_x(),
        final_reg_y: metrics.individual_regret_y(),
        final_dyn_ne_reg: metrics.dynamic_ne_regret(),
        final_ne_reg: metrics.ne_regret()?,
        final_dual_gap: metrics.duality_gap_total(),
        final_path_length: metrics.path_length(),
        final_variation: metrics.variation(),
        final_deviation: metrics.deviation(),
        clamped_rounds,
        trace,
    })
}

/// Executes a run and writes its artifacts (CSV trace, optional plot).
pub fn run_and_write(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let outcome = run_config(cfg)?;
    let csv_path = cfg.out_dir.join("trace.csv");
    outcome.trace.write_csv(&csv_path)?;
    if cfg.plot {
        let svg_path = cfg.out_dir.join("plot.svg");
        write_run_plot(&outcome, &svg_path)?;
    }
    Ok(outcome)
}

fn write_run_plot(outcome: &RunOutcome, path: &Path) -> Result<(), HarnessError> {
    use crate::svg::{Panel, Series};
    let rows = outcome.trace.rows();
    let series = |f: fn(&TraceRow) -> f64| {
        vec![Series {
            label: "run".to_string(),
            points: rows.iter().map(|r| (r.t as f64, f(r))).collect(),
        }]
    };
    let panels = vec![
        Panel {
            title: "individual regret".to_string(),
            series: series(|r| r.reg_x.max(r.reg_y)),
        },
        Panel {
            title: "dynamic NE regret".to_string(),
            series: series(|r| r.dyn_ne_reg),
        },
        Panel {
            title: "duality gap".to_string(),
            series: series(|r| r.dual_gap),
        },
    ];
    crate::svg::write_panels(path, &panels)
}

//! Run configuration: JSON file format plus validation against the schedule.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use regretlab_core::environments::ScheduleFile;
use regretlab_core::learners::LearnerKind;
use regretlab_core::{GameSchedule, PayoffMatrix, Real};

use crate::HarnessError;

/// Tuned base-learner kind selectable from configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    #[default]
    HedgeFixedShare,
    OptimisticOgd,
}

impl From<BaseKind> for LearnerKind {
    fn from(kind: BaseKind) -> Self {
        match kind {
            BaseKind::HedgeFixedShare => LearnerKind::HedgeFixedShare,
            BaseKind::OptimisticOgd => LearnerKind::OptimisticOgd,
        }
    }
}

/// Which matrix sequence to play.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleSpec {
    Stationary {
        matrix: PayoffMatrix,
        #[serde(rename = "T")]
        horizon: u64,
    },
    TwoPhase {
        #[serde(rename = "T")]
        horizon: u64,
    },
    EpochDrift {
        #[serde(rename = "T")]
        horizon: u64,
    },
    PeriodicDrift {
        base: PayoffMatrix,
        delta: PayoffMatrix,
        period: u64,
        #[serde(rename = "T")]
        horizon: u64,
    },
    File {
        path: PathBuf,
        #[serde(rename = "T", default)]
        horizon: Option<u64>,
    },
}

impl ScheduleSpec {
    pub fn horizon(&self) -> Option<u64> {
        match self {
            ScheduleSpec::Stationary { horizon, .. }
            | ScheduleSpec::TwoPhase { horizon }
            | ScheduleSpec::EpochDrift { horizon }
            | ScheduleSpec::PeriodicDrift { horizon, .. } => Some(*horizon),
            ScheduleSpec::File { horizon, .. } => *horizon,
        }
    }

    pub fn with_horizon(mut self, t: u64) -> Self {
        match &mut self {
            ScheduleSpec::Stationary { horizon, .. }
            | ScheduleSpec::TwoPhase { horizon }
            | ScheduleSpec::EpochDrift { horizon }
            | ScheduleSpec::PeriodicDrift { horizon, .. } => *horizon = t,
            ScheduleSpec::File { horizon, .. } => *horizon = Some(t),
        }
        self
    }

    pub fn build(&self, seed: u64) -> Result<GameSchedule, HarnessError> {
        let schedule = match self {
            ScheduleSpec::Stationary { matrix, horizon } => {
                GameSchedule::stationary(matrix.clone(), *horizon)?
            }
            ScheduleSpec::TwoPhase { horizon } => GameSchedule::two_phase(*horizon)?,
            ScheduleSpec::EpochDrift { horizon } => GameSchedule::epoch_drift(*horizon)?,
            ScheduleSpec::PeriodicDrift {
                base,
                delta,
                period,
                horizon,
            } => GameSchedule::periodic_drift(base.clone(), delta.clone(), *period, *horizon)?,
            ScheduleSpec::File { path, horizon } => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    HarnessError::Config(format!("cannot read schedule file {path:?}: {e}"))
                })?;
                let mut file: ScheduleFile<Real> = serde_json::from_str(&text)
                    .map_err(|e| HarnessError::Config(format!("schedule file: {e}")))?;
                if let Some(t) = horizon {
                    file.horizon = *t;
                }
                GameSchedule::from_file(file)?
            }
        };
        Ok(schedule.with_seed(seed))
    }
}

/// Algorithm played by one side.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlayerSpec {
    /// The two-layer meta/base player.
    TwoLayer {
        #[serde(default)]
        base: BaseKind,
    },
    /// One base learner with a fixed step size, no meta layer.
    SingleBase {
        eta: f64,
        #[serde(default)]
        base: BaseKind,
    },
    /// Plays the given strategy every round.
    FixedStrategy { weights: Vec<f64> },
    /// Plays its side of the canonical per-round equilibrium.
    NashOracle,
    /// Column player only: vertex best response to the revealed round.
    AdversarialBestResponse,
}

/// Full run description; CLI flags override individual fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub schedule: ScheduleSpec,
    pub x_player: PlayerSpec,
    pub y_player: PlayerSpec,
    /// Metric sampling stride for the CSV trace; the final row is always
    /// emitted.
    #[serde(default = "default_stride")]
    pub stride: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Constant in the step-size pool scale `L = max{4, √(16cβ), √(8cβ/γ)}`.
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub plot: bool,
    /// Step sizes swept by the comparison command; the tuned pool of the
    /// two-layer player when omitted.
    #[serde(default)]
    pub etas: Option<Vec<f64>>,
}

fn default_stride() -> u64 {
    100
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_c() -> f64 {
    0.5
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {path:?}: {e}")))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.stride == 0 {
            return Err(HarnessError::Config("stride must be at least 1".into()));
        }
        if let Some(t) = self.schedule.horizon() {
            if t < 2 {
                return Err(HarnessError::Config("horizon must be at least 2".into()));
            }
        }
        if self.c <= 0.0 {
            return Err(HarnessError::Config("c must be positive".into()));
        }
        if matches!(self.x_player, PlayerSpec::AdversarialBestResponse) {
            return Err(HarnessError::Config(
                "adversarial_best_response is only available to the y player".into(),
            ));
        }
        if let Some(etas) = &self.etas {
            if etas.iter().any(|&e| e <= 0.0 || !e.is_finite()) {
                return Err(HarnessError::Config("swept etas must be positive".into()));
            }
        }
        Ok(())
    }
}

//! Step-size sweep: every single-η base learner in self-play against the
//! two-layer algorithm on the same schedule, compared per measure.

use std::path::Path;

use serde::Serialize;

use regretlab_core::learners::drvu_params_for;
use regretlab_core::{Real, StepSizePool};

use crate::config::{PlayerSpec, RunConfig};
use crate::runner::{run_config, RunOutcome};
use crate::svg::{Panel, Series};
use crate::HarnessError;

/// The three compared measures.
pub const MEASURES: [&str; 3] = ["individual_regret", "dyn_ne_regret", "dual_gap"];

#[derive(Debug, Clone, Serialize)]
pub struct ConfigResult {
    pub label: String,
    pub eta: Option<f64>,
    pub individual_regret: f64,
    pub dyn_ne_regret: f64,
    pub dual_gap: f64,
}

impl ConfigResult {
    pub fn measure(&self, name: &str) -> f64 {
        match name {
            "individual_regret" => self.individual_regret,
            "dyn_ne_regret" => self.dyn_ne_regret,
            "dual_gap" => self.dual_gap,
            other => panic!("unknown measure {other}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureSummary {
    pub measure: String,
    pub best_eta: f64,
    pub best_single_value: f64,
    pub two_layer_value: f64,
    /// two_layer_value / best_single_value.
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub horizon: u64,
    pub etas: Vec<f64>,
    pub results: Vec<ConfigResult>,
    pub per_measure: Vec<MeasureSummary>,
}

/// Outcomes plus traces for plotting; traces are index-aligned with
/// `summary.results`.
pub struct SweepOutcome {
    pub summary: SweepSummary,
    pub runs: Vec<RunOutcome>,
}

/// The η grid: the config's explicit list, or the two-layer player's own
/// tuned pool.
pub fn sweep_etas(cfg: &RunConfig) -> Result<Vec<f64>, HarnessError> {
    if let Some(etas) = &cfg.etas {
        return Ok(etas.clone());
    }
    let base = match &cfg.x_player {
        PlayerSpec::TwoLayer { base } | PlayerSpec::SingleBase { base, .. } => *base,
        _ => Default::default(),
    };
    let (rows, _) = cfg.schedule.build(cfg.seed)?.dims();
    let horizon = cfg
        .schedule
        .horizon()
        .ok_or_else(|| HarnessError::Config("sweep needs an explicit horizon".into()))?;
    let drvu = drvu_params_for::<Real>(base.into(), rows, horizon)?;
    let pool = StepSizePool::new(&drvu, horizon, cfg.c)?;
    Ok(pool.etas().to_vec())
}

/// Runs the whole grid. Each configuration is independent, so they execute
/// on worker threads; results are joined in grid order.
pub fn run_sweep(cfg: &RunConfig) -> Result<SweepOutcome, HarnessError> {
    cfg.validate()?;
    let horizon = cfg
        .schedule
        .horizon()
        .ok_or_else(|| HarnessError::Config("sweep needs an explicit horizon".into()))?;
    let etas = sweep_etas(cfg)?;

    let base = match &cfg.x_player {
        PlayerSpec::TwoLayer { base } | PlayerSpec::SingleBase { base, .. } => *base,
        _ => Default::default(),
    };
    let mut configs: Vec<(String, Option<f64>, RunConfig)> = etas
        .iter()
        .map(|&eta| {
            let mut run = cfg.clone();
            run.x_player = PlayerSpec::SingleBase { eta, base };
            run.y_player = PlayerSpec::SingleBase { eta, base };
            (format!("eta_{eta:.6e}"), Some(eta), run)
        })
        .collect();
    let mut two_layer = cfg.clone();
    two_layer.x_player = PlayerSpec::TwoLayer { base };
    two_layer.y_player = PlayerSpec::TwoLayer { base };
    configs.push(("two_layer".to_string(), None, two_layer));

    let runs: Vec<Result<RunOutcome, HarnessError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|(_, _, run)| scope.spawn(move || run_config(run)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    let mut results = Vec::with_capacity(configs.len());
    let mut outcomes = Vec::with_capacity(configs.len());
    for ((label, eta, _), run) in configs.iter().zip(runs) {
        let outcome = run?;
        results.push(ConfigResult {
            label: label.clone(),
            eta: *eta,
            individual_regret: outcome.individual_regret(),
            dyn_ne_regret: outcome.final_dyn_ne_reg,
            dual_gap: outcome.final_dual_gap,
        });
        outcomes.push(outcome);
    }

    let two_layer_result = results.last().expect("two-layer run present").clone();
    let singles = &results[..results.len() - 1];
    let per_measure = MEASURES
        .iter()
        .map(|&measure| {
            let best = singles
                .iter()
                .min_by(|a, b| {
                    a.measure(measure)
                        .partial_cmp(&b.measure(measure))
                        .expect("finite measures")
                })
                .expect("at least one single-eta run");
            let best_value = best.measure(measure);
            let two_layer_value = two_layer_result.measure(measure);
            MeasureSummary {
                measure: measure.to_string(),
                best_eta: best.eta.expect("single runs carry eta"),
                best_single_value: best_value,
                two_layer_value,
                ratio: two_layer_value / best_value,
            }
        })
        .collect();

    Ok(SweepOutcome {
        summary: SweepSummary {
            horizon,
            etas,
            results,
            per_measure,
        },
        runs: outcomes,
    })
}

/// Runs the sweep and writes per-config CSVs, the JSON summary, and the
/// three-panel comparison plot.
pub fn run_sweep_and_write(cfg: &RunConfig) -> Result<SweepOutcome, HarnessError> {
    let outcome = run_sweep(cfg)?;
    std::fs::create_dir_all(&cfg.out_dir)?;

    for (result, run) in outcome.summary.results.iter().zip(&outcome.runs) {
        run.trace
            .write_csv(&cfg.out_dir.join(format!("trace_{}.csv", result.label)))?;
    }
    let summary_json = serde_json::to_string_pretty(&outcome.summary)
        .map_err(|e| HarnessError::Io(e.to_string()))?;
    std::fs::write(cfg.out_dir.join("summary.json"), summary_json)?;
    write_comparison_plot(&outcome, &cfg.out_dir.join("comparison.svg"))?;
    Ok(outcome)
}

/// One panel per measure; the two-layer curve plus the per-measure best
/// single-η curves.
fn write_comparison_plot(outcome: &SweepOutcome, path: &Path) -> Result<(), HarnessError> {
    let summary = &outcome.summary;
    let two_layer_idx = summary.results.len() - 1;

    let curve = |idx: usize, field: fn(&crate::trace::TraceRow) -> f64| -> Vec<(f64, f64)> {
        outcome.runs[idx]
            .trace
            .rows()
            .iter()
            .map(|r| (r.t as f64, field(r)))
            .collect()
    };
    let fields: [(&str, fn(&crate::trace::TraceRow) -> f64); 3] = [
        ("individual regret", |r| r.reg_x.max(r.reg_y)),
        ("dynamic NE regret", |r| r.dyn_ne_reg),
        ("duality gap", |r| r.dual_gap),
    ];

    let mut panels = Vec::new();
    for (i, (title, field)) in fields.iter().enumerate() {
        let mut series = vec![Series {
            label: "two-layer".to_string(),
            points: curve(two_layer_idx, *field),
        }];
        for m in &summary.per_measure {
            let idx = summary
                .results
                .iter()
                .position(|r| r.eta == Some(m.best_eta))
                .expect("best eta among results");
            let label = format!("best {} (eta={:.2e})", short_name(&m.measure), m.best_eta);
            if series.iter().all(|s| s.label != label) {
                series.push(Series {
                    label,
                    points: curve(idx, *field),
                });
            }
        }
        panels.push(Panel {
            title: fields[i].0.to_string(),
            series,
        });
        let _ = title;
    }
    crate::svg::write_panels(path, &panels)
}

fn short_name(measure: &str) -> &'static str {
    match measure {
        "individual_regret" => "regret",
        "dyn_ne_regret" => "dyn-NE",
        "dual_gap" => "gap",
        _ => "?",
    }
}

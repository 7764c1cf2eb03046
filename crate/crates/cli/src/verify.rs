//! Verification suites runnable from the CLI: the DRVU property on seeded
//! random sequences, trace-level measure orderings, and the LP-vs-enumeration
//! equilibrium oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regretlab_core::learners::{drvu_check, LearnerKind};
use regretlab_core::matrix::PayoffMatrix;
use regretlab_core::nash::nash_solve;
use regretlab_core::oracle::solve_by_support_enumeration;
use regretlab_core::simplex::MixedStrategy;
use regretlab_core::Real;

use crate::config::{PlayerSpec, RunConfig, ScheduleSpec};
use crate::runner::{run_on_schedule, RunOutcome};
use crate::trace::RunTrace;
use crate::HarnessError;

/// Slack for ordering checks. The orderings are exact inequalities; the
/// tolerance only absorbs summation rounding, which scales with the size of
/// the accumulated quantities (equality cases like dynamic regret against an
/// exact best responder sit right on the boundary).
pub fn ordering_tol(scale: f64) -> f64 {
    1e-8 * (1.0 + scale.abs())
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "suite {}: {} checks, {} violations — {}\n",
            self.suite,
            self.checks,
            self.violations.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(first) = self.violations.first() {
            out.push_str(&format!("first counterexample: {first}\n"));
        }
        out
    }
}

/// DRVU suite: seeded random losses and comparators, both learner kinds,
/// η ∈ {0.01, 0.1}; any violation of the bound is reported.
pub fn verify_drvu(seed: u64) -> VerifyReport {
    let dim = 3;
    let horizon = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut checks = 0;

    for instance in 0..100 {
        let losses: Vec<Vec<f64>> = (0..horizon)
            .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            .collect();
        let comparators: Vec<MixedStrategy<Real>> = (0..horizon)
            .map(|_| {
                MixedStrategy::normalized(
                    (0..dim)
                        .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
                        .collect(),
                )
            })
            .collect();
        for kind in [LearnerKind::HedgeFixedShare, LearnerKind::OptimisticOgd] {
            for eta in [0.01, 0.1] {
                checks += 1;
                match drvu_check(kind, dim, eta, &losses, &comparators) {
                    Ok(report) if report.holds => {}
                    Ok(report) => violations.push(format!(
                        "instance {instance} kind {kind:?} eta {eta}: lhs {} > rhs {}",
                        report.lhs, report.rhs
                    )),
                    Err(e) => violations.push(format!(
                        "instance {instance} kind {kind:?} eta {eta}: error {e}"
                    )),
                }
            }
        }
    }
    VerifyReport {
        suite: "drvu".to_string(),
        checks,
        violations,
    }
}

/// Oracle suite: LP equilibria against support enumeration on seeded random
/// matrices, 2 ≤ m, n ≤ 5.
pub fn verify_oracle(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut checks = 0;

    for case in 0..1000 {
        let rows = rng.gen_range(2..=5);
        let cols = rng.gen_range(2..=5);
        let entries: Vec<Vec<f64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            .collect();
        let a = PayoffMatrix::new(entries).unwrap();
        checks += 1;

        let lp = match nash_solve(&a) {
            Ok(sol) => sol,
            Err(e) => {
                violations.push(format!("case {case}: LP failed: {e}"));
                continue;
            }
        };
        let residual = lp.saddle_residual(&a).unwrap_or(f64::INFINITY);
        if residual > 1e-8 {
            violations.push(format!("case {case}: saddle residual {residual:.3e}"));
        }
        match solve_by_support_enumeration(&a) {
            Some(reference) => {
                let gap = (lp.value - reference.value).abs();
                if gap > 1e-6 {
                    violations.push(format!(
                        "case {case}: value gap {gap:.3e} (lp {} vs enumeration {})",
                        lp.value, reference.value
                    ));
                }
            }
            None => violations.push(format!("case {case}: enumeration found no equilibrium")),
        }
    }
    VerifyReport {
        suite: "oracle".to_string(),
        checks,
        violations,
    }
}

/// Trace-level invariants: per-row measure orderings against the duality
/// gap, monotone gap, non-increasing meta learning rates, and the
/// variation-deviation inequality at the end.
pub fn check_trace_invariants(label: &str, trace: &RunTrace) -> (usize, Vec<String>) {
    let mut violations = Vec::new();
    let mut checks = 0;
    let mut prev_gap = 0.0f64;
    let mut prev_eps: Option<(f64, f64)> = None;

    for row in trace.rows() {
        checks += 4;
        let tol = ordering_tol(row.dual_gap);
        if row.reg_x > row.dual_gap + tol {
            violations.push(format!(
                "{label} t={}: reg_x {} > dual_gap {}",
                row.t, row.reg_x, row.dual_gap
            ));
        }
        if row.reg_y > row.dual_gap + tol {
            violations.push(format!(
                "{label} t={}: reg_y {} > dual_gap {}",
                row.t, row.reg_y, row.dual_gap
            ));
        }
        if row.dyn_ne_reg > row.dual_gap + tol {
            violations.push(format!(
                "{label} t={}: dyn_ne_reg {} > dual_gap {}",
                row.t, row.dyn_ne_reg, row.dual_gap
            ));
        }
        if row.dual_gap < prev_gap - 1e-12 {
            violations.push(format!(
                "{label} t={}: dual_gap decreased {} -> {}",
                row.t, prev_gap, row.dual_gap
            ));
        }
        prev_gap = row.dual_gap;

        if let Some((ex, ey)) = prev_eps {
            checks += 1;
            if row.eps_x > ex + 1e-12 || row.eps_y > ey + 1e-12 {
                violations.push(format!("{label} t={}: meta learning rate increased", row.t));
            }
        }
        if row.eps_x > 0.0 {
            prev_eps = Some((row.eps_x, row.eps_y));
        }
    }

    if let Some(last) = trace.last() {
        checks += 1;
        if last.v_t > 4.0 * last.w_t + ordering_tol(last.w_t) {
            violations.push(format!(
                "{label}: V_T {} > 4·W_T {}",
                last.v_t,
                4.0 * last.w_t
            ));
        }
    }
    (checks, violations)
}

/// The scenario set exercised by the invariants suite.
pub fn invariant_scenarios(horizon: u64) -> Vec<(String, RunConfig)> {
    let two_layer = PlayerSpec::TwoLayer {
        base: Default::default(),
    };
    let pennies = PayoffMatrix::new(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
    let make = |name: &str, schedule: ScheduleSpec, x: PlayerSpec, y: PlayerSpec| {
        (
            name.to_string(),
            RunConfig {
                schedule,
                x_player: x,
                y_player: y,
                stride: 100,
                out_dir: "out".into(),
                c: 0.5,
                seed: 0,
                plot: false,
                etas: None,
            },
        )
    };
    vec![
        make(
            "two_phase_oracle",
            ScheduleSpec::TwoPhase { horizon },
            PlayerSpec::NashOracle,
            PlayerSpec::NashOracle,
        ),
        make(
            "drift_self_play",
            ScheduleSpec::EpochDrift { horizon },
            two_layer.clone(),
            two_layer.clone(),
        ),
        make(
            "stationary_self_play",
            ScheduleSpec::Stationary {
                matrix: pennies,
                horizon,
            },
            two_layer.clone(),
            two_layer.clone(),
        ),
        make(
            "drift_vs_adversary",
            ScheduleSpec::EpochDrift { horizon },
            two_layer,
            PlayerSpec::AdversarialBestResponse,
        ),
    ]
}

/// Invariants suite: runs the scenario set and checks every trace.
pub fn verify_invariants(horizon: u64) -> Result<VerifyReport, HarnessError> {
    let mut checks = 0;
    let mut violations = Vec::new();
    for (label, cfg) in invariant_scenarios(horizon) {
        let schedule = cfg.schedule.build(cfg.seed)?;
        let outcome = run_on_schedule(&schedule, &cfg.x_player, &cfg.y_player, cfg.stride, cfg.c)?;
        let (c, v) = check_trace_invariants(&label, &outcome.trace);
        checks += c;
        violations.extend(v);
    }
    Ok(VerifyReport {
        suite: "invariants".to_string(),
        checks,
        violations,
    })
}

/// Runs invariant checks against an existing outcome (used by the acceptance
/// suite to validate the traces produced by its own runs).
pub fn check_outcome(label: &str, outcome: &RunOutcome) -> (usize, Vec<String>) {
    check_trace_invariants(label, &outcome.trace)
}

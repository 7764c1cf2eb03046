//! Seeded DRVU property suite: both learner kinds must satisfy their proven
//! dynamic-regret bound on every random loss/comparator sequence — zero
//! violations tolerated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regretlab_core::learners::{drvu_check, LearnerKind};
use regretlab_core::simplex::MixedStrategy;

const DIM: usize = 3;
const HORIZON: usize = 500;

fn random_simplex_point(rng: &mut ChaCha8Rng) -> MixedStrategy<f64> {
    // Exponential spacings give a uniform draw from the simplex.
    let raw: Vec<f64> = (0..DIM)
        .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
        .collect();
    MixedStrategy::normalized(raw)
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    piecewise: bool,
) -> (Vec<Vec<f64>>, Vec<MixedStrategy<f64>>) {
    let losses: Vec<Vec<f64>> = (0..HORIZON)
        .map(|_| (0..DIM).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect();
    let comparators = if piecewise {
        // Few switches: a low-path-length sequence, the harder case for the
        // (α/η)(1+P) budget.
        let mut out = Vec::with_capacity(HORIZON);
        let mut current = random_simplex_point(rng);
        for _ in 0..HORIZON {
            if rng.gen_bool(0.01) {
                current = random_simplex_point(rng);
            }
            out.push(current.clone());
        }
        out
    } else {
        (0..HORIZON).map(|_| random_simplex_point(rng)).collect()
    };
    (losses, comparators)
}

#[test]
fn drvu_holds_on_all_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd2f0);
    let kinds = [LearnerKind::HedgeFixedShare, LearnerKind::OptimisticOgd];
    let etas = [0.01, 0.1];
    let mut checks = 0usize;
    for instance in 0..100 {
        let (losses, comparators) = random_instance(&mut rng, instance % 2 == 1);
        for kind in kinds {
            for eta in etas {
                let report = drvu_check(kind, DIM, eta, &losses, &comparators).unwrap();
                assert!(
                    report.holds,
                    "violation: instance {instance} kind {kind:?} eta {eta}: \
                     lhs {} > rhs {}",
                    report.lhs, report.rhs
                );
                checks += 1;
            }
        }
    }
    assert_eq!(checks, 400);
}

#[test]
fn drvu_holds_with_adversarial_sign_flips() {
    // Worst-case gradient variation: the loss flips sign every round.
    let losses: Vec<Vec<f64>> = (0..HORIZON)
        .map(|t| {
            let s = if t % 2 == 0 { 1.0 } else { -1.0 };
            vec![s, -s, s]
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let comparators: Vec<_> = (0..HORIZON)
        .map(|_| random_simplex_point(&mut rng))
        .collect();
    for kind in [LearnerKind::HedgeFixedShare, LearnerKind::OptimisticOgd] {
        for eta in [0.01, 0.1, 0.5] {
            let report = drvu_check(kind, DIM, eta, &losses, &comparators).unwrap();
            assert!(report.holds, "{kind:?} at eta {eta}");
        }
    }
}

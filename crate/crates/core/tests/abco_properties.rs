mod support;

use proptest::prelude::ProptestConfig;
use support::invariants;

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

#[test]
fn stages_preserve_bounds() {
    invariants::stages_preserve_bounds(cases());
}

#[test]
fn personal_bests_never_worsen() {
    invariants::personal_bests_never_worsen(cases());
}

#[test]
fn global_best_is_monotone() {
    invariants::global_best_is_monotone(cases());
}

#[test]
fn reproduction_conserves_size_and_keeps_top_r() {
    invariants::reproduction_conserves_size_and_keeps_top_r(cases());
}

#[test]
fn k_nearest_matches_brute_force() {
    invariants::k_nearest_matches_brute_force(cases());
}

#[test]
fn min_max_duality() {
    invariants::min_max_duality(cases());
}

#[test]
fn early_stop_only_at_checkpoints() {
    invariants::early_stop_only_at_checkpoints(cases());
}

#[test]
fn directed_steps_fall_as_threshold_rises() {
    invariants::directed_steps_fall_as_threshold_rises(cases());
}

#[test]
fn baselines_stay_in_bounds() {
    invariants::baselines_stay_in_bounds(cases());
}

mod common;

use common::props;

#[test]
fn transpose_round_trips() {
    props::transpose_round_trips();
}

#[test]
fn handle_count_and_degree_identities() {
    props::handle_count_and_degree_identities();
}

#[test]
fn adjacency_is_symmetric() {
    props::adjacency_is_symmetric();
}

#[test]
fn ball_frontiers_partition_the_component() {
    props::ball_frontiers_partition_the_component();
}

#[test]
fn link_density_identity() {
    props::link_density_identity();
}

#[test]
fn trajectory_is_monotone() {
    props::trajectory_is_monotone();
}

#[test]
fn larger_seed_sets_infect_supersets() {
    props::larger_seed_sets_infect_supersets();
}

#[test]
fn higher_beta_and_longer_horizon_infect_supersets() {
    props::higher_beta_and_longer_horizon_infect_supersets();
}

#[test]
fn outbreaks_stay_inside_seed_components() {
    props::outbreaks_stay_inside_seed_components();
}

#[test]
fn simulation_is_deterministic() {
    props::simulation_is_deterministic();
}

#[test]
fn generator_meets_exact_sizes() {
    props::generator_meets_exact_sizes();
}

#[test]
fn seed_sets_are_prefix_consistent() {
    props::seed_sets_are_prefix_consistent();
}

#[test]
fn discount_heuristics_start_at_max_degree() {
    props::discount_heuristics_start_at_max_degree();
}

#[test]
fn auc_matches_written_curve() {
    props::auc_matches_written_curve();
}

#[test]
fn edge_lists_round_trip() {
    props::edge_lists_round_trip();
}

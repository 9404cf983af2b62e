use std::collections::BTreeSet;

use qgame::catalog::{builtin, PayoffPair};
use qgame::equilibria::{
    epsilon_ne_scan, verify_candidate, GameSetup, Geometry, NeScan, Profile, Route, StrategyGrid,
    DEFAULT_EPSILON,
};
use qgame::ewl::{CorrelationKind, StrategyParams};

fn scan(game: &str, kind: CorrelationKind, eps: f64) -> NeScan {
    let setup = GameSetup::new(builtin(game).unwrap(), kind);
    epsilon_ne_scan(&setup, &StrategyGrid::default(), eps).unwrap()
}

fn flagged(s: &NeScan) -> BTreeSet<(usize, usize)> {
    s.components
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect()
}

#[test]
fn pd_quantum_has_a_single_point() {
    let s = scan("PD", CorrelationKind::Quantum, DEFAULT_EPSILON);
    assert_eq!(s.components.len(), 1);
    let c = &s.components[0];
    assert_eq!(c.geometry, Geometry::Point);
    let isz = StrategyParams::I_SIGMA_Z;
    assert!(c.contains(&s.grid, &Profile::new(isz, isz)));
    assert!(
        c.representative_payoffs
            .max_abs_diff(&PayoffPair::new(3.0, 3.0))
            < 1e-9
    );
}

#[test]
fn stag_hunt_quantum_has_two_focal_points() {
    let s = scan("SH", CorrelationKind::Quantum, DEFAULT_EPSILON);
    assert_eq!(s.components.len(), 2);
    for c in &s.components {
        assert_eq!(c.geometry, Geometry::Point);
        assert!(
            c.representative_payoffs
                .max_abs_diff(&PayoffPair::new(6.0, 6.0))
                < 1e-9
        );
    }
}

#[test]
fn scan_is_monotone_in_epsilon() {
    for (game, kind) in [
        ("PD", CorrelationKind::Classical),
        ("SD", CorrelationKind::Quantum),
        ("BoS", CorrelationKind::Quantum),
    ] {
        let mut previous = BTreeSet::new();
        for eps in [1e-4, 1e-3, 1e-2, 5e-2] {
            let current = flagged(&scan(game, kind, eps));
            assert!(previous.is_subset(&current), "{game} {kind} at {eps}");
            previous = current;
        }
    }
}

#[test]
fn symmetric_games_are_swap_symmetric() {
    for game in ["PD", "CG", "SH"] {
        for kind in [CorrelationKind::Quantum, CorrelationKind::Classical] {
            let s = scan(game, kind, DEFAULT_EPSILON);
            let sets: BTreeSet<Vec<(usize, usize)>> =
                s.components.iter().map(|c| c.members.clone()).collect();
            let swapped: BTreeSet<Vec<(usize, usize)>> = sets
                .iter()
                .map(|m| {
                    let mut v: Vec<_> = m.iter().map(|&(i, j)| (j, i)).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            assert_eq!(sets, swapped, "{game} {kind}");
        }
    }
}

#[test]
fn points_survive_grid_doubling() {
    let fine = StrategyGrid::default().doubled();
    for game in ["PD", "SD"] {
        let setup = GameSetup::new(builtin(game).unwrap(), CorrelationKind::Quantum);
        let coarse = epsilon_ne_scan(&setup, &StrategyGrid::default(), DEFAULT_EPSILON).unwrap();
        let doubled = epsilon_ne_scan(&setup, &fine, DEFAULT_EPSILON).unwrap();
        for c in coarse.points() {
            let v =
                verify_candidate(&setup, &c.representative, DEFAULT_EPSILON, &coarse.grid).unwrap();
            if v.is_ne {
                assert!(
                    doubled.component_containing(&c.representative).is_some(),
                    "{game}: {} lost at {}",
                    c.representative,
                    fine
                );
            }
        }
    }
}

#[test]
fn every_representative_verifies_by_simulation() {
    for game in ["PD", "CG", "SH", "BoS", "MP", "SD"] {
        for kind in [CorrelationKind::Quantum, CorrelationKind::Classical] {
            let s = scan(game, kind, DEFAULT_EPSILON);
            let sim = GameSetup::new(builtin(game).unwrap(), kind).with_route(Route::Simulation);
            for c in &s.components {
                let v =
                    verify_candidate(&sim, &c.representative, DEFAULT_EPSILON, &s.grid).unwrap();
                assert!(
                    v.is_ne,
                    "{game} {kind}: {} gain {}",
                    c.representative, v.max_unilateral_gain
                );
            }
        }
    }
}

#[test]
fn matching_pennies_quantum_has_no_equilibrium() {
    let s = scan("MP", CorrelationKind::Quantum, 0.05);
    assert!(s.components.is_empty());
}

#[test]
fn report_json_shape() {
    let s = scan("PD", CorrelationKind::Quantum, DEFAULT_EPSILON);
    let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
    let c = &v["components"][0];
    assert_eq!(c["geometry"], "point");
    assert!(c["payoff_range"]["min"]["alice"].is_number());
    assert!(c["max_unilateral_gain"].is_number());
    assert_eq!(v["correlation"], "quantum");
}

//! The acceptance gate. Each test checks one release criterion end to end
//! and prints a single `criterion N pass: ...` line (visible with
//! `cargo test --test acceptance -- --nocapture`); a failed criterion
//! fails its test with the offending values in the panic message.

use std::f64::consts::{E, PI};
use std::process::Command;

use hydrocomplex::complexity::{self, complexity_triple};
use hydrocomplex::measures::{self, Space, VarianceValue};
use hydrocomplex::oracle::{
    oracle_disequilibrium, oracle_entropy, oracle_fisher, oracle_moment, oracle_normalization,
    oracle_variance,
};
use hydrocomplex::quad::QuadratureSpec;
use hydrocomplex::states::{battery, HyperState, NuclearCharge};

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn charge(v: f64) -> NuclearCharge {
    NuclearCharge::new(v).expect("valid charge")
}

fn gs3() -> HyperState {
    HyperState::new(3, 1, &[0, 0]).expect("ground state")
}

/// The standing battery: every valid chain for D in {2, 3, 4, 6}, n <= 4.
fn full_battery() -> Vec<HyperState> {
    battery(&[2, 3, 4, 6], 4)
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn criterion_01_ground_state_lmc_law() {
    let z = charge(1.0);
    let q = q();
    for d in 2..=10usize {
        let expected = (E / 2.0).powi(d as i32);
        let closed = complexity::ground_state_lmc(d, Space::Position).unwrap();
        assert!(
            rel(closed, expected) <= 1e-12,
            "closed form at D = {d}: {closed} vs (e/2)^D = {expected}"
        );
        let state = HyperState::circular(d, 1).unwrap();
        let pipeline = complexity::lmc(&state, z, Space::Position, &q).unwrap().value;
        assert!(
            rel(pipeline, expected) <= 1e-6,
            "quadrature pipeline at D = {d}: {pipeline} vs (e/2)^D = {expected}"
        );
    }
    println!(
        "criterion 1 pass: ground-state position LMC equals (e/2)^D for D = 2..10 \
         (closed within 1e-12, quadrature pipeline within 1e-6)"
    );
}

#[test]
fn criterion_02_three_dimensional_ground_state_golden_set() {
    let state = gs3();
    let z = charge(1.0);
    let q = q();
    let tol = 1e-8;

    let closed_variance = |space| match measures::variance(&state, z, space) {
        VarianceValue::Closed(v) => v,
        VarianceValue::PrintedOnly(_) => unreachable!("position variance is closed"),
    };

    // (quantity, reference, closed route, oracle route)
    let golden: [(&str, f64, f64, f64); 7] = [
        (
            "position disequilibrium = 1/(8 pi)",
            1.0 / (8.0 * PI),
            measures::disequilibrium(&state, z, Space::Position, &q).unwrap().value,
            oracle_disequilibrium(&state, z, Space::Position, &q).unwrap().value,
        ),
        (
            "position entropy = 3 + ln pi",
            3.0 + PI.ln(),
            measures::shannon_entropy(&state, z, Space::Position, &q).unwrap().value,
            oracle_entropy(&state, z, Space::Position, &q).unwrap().value,
        ),
        (
            "position Fisher = 4",
            4.0,
            measures::fisher_information(&state, z, Space::Position),
            oracle_fisher(&state, z, Space::Position, &q).unwrap().value,
        ),
        (
            "position variance = 3/4",
            0.75,
            closed_variance(Space::Position),
            oracle_variance(&state, z, Space::Position, &q).unwrap().value,
        ),
        (
            "momentum Fisher = 12",
            12.0,
            measures::fisher_information(&state, z, Space::Momentum),
            oracle_fisher(&state, z, Space::Momentum, &q).unwrap().value,
        ),
        (
            "second momentum moment = 1",
            1.0,
            // Kinetic identity: <p^2> = Z^2/eta^2.
            (z.value() / state.eta()).powi(2),
            oracle_moment(&state, z, Space::Momentum, 2, &q).unwrap().value,
        ),
        (
            "momentum disequilibrium = 33/(16 pi^2)",
            33.0 / (16.0 * PI * PI),
            measures::disequilibrium(&state, z, Space::Momentum, &q).unwrap().value,
            oracle_disequilibrium(&state, z, Space::Momentum, &q).unwrap().value,
        ),
    ];

    for (name, reference, closed, oracle) in golden {
        assert!(rel(closed, reference) <= tol, "{name}: closed {closed} vs {reference}");
        assert!(rel(oracle, reference) <= tol, "{name}: oracle {oracle} vs {reference}");
        assert!(rel(closed, oracle) <= tol, "{name}: closed {closed} vs oracle {oracle}");
    }
    println!(
        "criterion 2 pass: 3-D ground-state golden set (7 quantities) matches closed, \
         oracle and reference pairwise within 1e-8"
    );
}

#[test]
fn criterion_03_oracle_momentum_entropy_anchor() {
    // Frozen before the adaptive quadrature existed: composite Simpson on a
    // fixed grid (h = 1/2048, [0, 200]) for -int gamma ln gamma of the 3-D
    // ground state.
    const FIXED_GRID: f64 = 2.421862340883849;
    let state = gs3();
    let q = q();
    let oracle = oracle_entropy(&state, charge(1.0), Space::Momentum, &q).unwrap().value;
    assert!(
        (oracle - FIXED_GRID).abs() <= 1e-4,
        "oracle {oracle} vs fixed-grid anchor {FIXED_GRID}"
    );
    let closed = measures::shannon_entropy(&state, charge(1.0), Space::Momentum, &q)
        .unwrap()
        .value;
    assert!(
        rel(closed, oracle) <= 1e-6,
        "closed {closed} vs oracle {oracle}"
    );
    println!(
        "criterion 3 pass: oracle momentum entropy {oracle:.9} within 1e-4 of the \
         pre-build fixed-grid anchor and within 1e-6 of the closed form"
    );
}

#[test]
fn criterion_04_complexities_are_charge_invariant() {
    let q = q();
    let charges = [1.0, 2.5, 37.0];
    for state in full_battery() {
        for space in [Space::Position, Space::Momentum] {
            let base = complexity_triple(&state, charge(charges[0]), space, &q).unwrap();
            for &value in &charges[1..] {
                let other = complexity_triple(&state, charge(value), space, &q).unwrap();
                // The gate is 1e-8 relative; the implementation evaluates
                // the charge-free aggregates, so equality is bit-exact.
                assert_eq!(
                    base.lmc.value, other.lmc.value,
                    "LMC changed with Z for {state:?} {space}"
                );
                assert_eq!(
                    base.fisher_shannon.value, other.fisher_shannon.value,
                    "Fisher-Shannon changed with Z for {state:?} {space}"
                );
                assert_eq!(
                    base.cramer_rao.value, other.cramer_rao.value,
                    "Cramer-Rao changed with Z for {state:?} {space}"
                );
            }
        }
    }
    println!(
        "criterion 4 pass: all six complexities identical at Z in {{1, 2.5, 37}} across \
         the D in {{2,3,4,6}}, n <= 4 battery (gate 1e-8 relative, observed bit-exact)"
    );
}

#[test]
fn criterion_05_densities_are_normalized() {
    let q = q();
    let states = full_battery();
    for state in &states {
        for space in [Space::Position, Space::Momentum] {
            let norm = oracle_normalization(state, space, &q).unwrap().value;
            assert!(
                (norm - 1.0).abs() <= 1e-8,
                "normalization {norm} for {state:?} {space}"
            );
        }
    }
    println!(
        "criterion 5 pass: position and momentum densities of all {} battery states \
         integrate to 1 within 1e-8",
        states.len()
    );
}

#[test]
fn criterion_06_closed_forms_match_the_oracle() {
    let q = q();
    let z = charge(1.0);
    let tol = 1e-6;

    for state in full_battery() {
        let closed = measures::shannon_entropy(&state, z, Space::Position, &q).unwrap().value;
        let oracle = oracle_entropy(&state, z, Space::Position, &q).unwrap().value;
        assert!(
            rel(closed, oracle) <= tol,
            "position entropy for {state:?}: {closed} vs {oracle}"
        );

        for space in [Space::Position, Space::Momentum] {
            let closed = measures::fisher_information(&state, z, space);
            let oracle = oracle_fisher(&state, z, space, &q).unwrap().value;
            assert!(
                rel(closed, oracle) <= tol,
                "{space} Fisher for {state:?}: {closed} vs {oracle}"
            );
        }

        if let VarianceValue::Closed(closed) = measures::variance(&state, z, Space::Position) {
            let oracle = oracle_variance(&state, z, Space::Position, &q).unwrap().value;
            assert!(
                rel(closed, oracle) <= tol,
                "position variance for {state:?}: {closed} vs {oracle}"
            );
        } else {
            unreachable!("position variance is closed");
        }
    }

    for d in [2usize, 3, 5, 15] {
        for n in 1..=5u32 {
            let state = HyperState::circular(d, n).unwrap();
            for space in [Space::Position, Space::Momentum] {
                let closed = measures::circular_disequilibrium(n, d, z, space).unwrap();
                let oracle = oracle_disequilibrium(&state, z, space, &q).unwrap().value;
                assert!(
                    rel(closed, oracle) <= tol,
                    "circular {space} disequilibrium at D = {d}, n = {n}: {closed} vs {oracle}"
                );
            }
        }
    }
    println!(
        "criterion 6 pass: position entropy, both Fishers and position variance across \
         the battery, and circular disequilibria (D in {{2,3,5,15}}, n <= 5), all within \
         1e-6 of the oracle"
    );
}

#[test]
fn criterion_07_circular_lmc_decreases_with_n() {
    for d in [2usize, 5, 15] {
        let values: Vec<f64> = (1..=8u32)
            .map(|n| complexity::circular_lmc(n, d, Space::Position).unwrap())
            .collect();
        for (i, pair) in values.windows(2).enumerate() {
            assert!(
                pair[0] > pair[1],
                "not strictly decreasing at D = {d}, n = {}: {values:?}",
                i + 1
            );
        }
        assert!(
            values[0] - values[1] >= 1e-3,
            "first drop too small at D = {d}: {} -> {}",
            values[0],
            values[1]
        );
    }
    println!(
        "criterion 7 pass: circular position LMC strictly decreasing for n = 1..8 at \
         D in {{2, 5, 15}}, with LMC(1) - LMC(2) >= 1e-3"
    );
}

#[test]
fn criterion_08_validate_documents_the_known_discrepancies() {
    let output = Command::new(env!("CARGO_BIN_EXE_hydrocomplex"))
        .args(["validate", "--D", "3", "--n", "1"])
        .output()
        .expect("binary spawns");
    assert!(output.status.success(), "validate exited with {:?}", output.status);
    let text = String::from_utf8(output.stdout).expect("UTF-8 output");

    // Table rows end with `... <deviation> <status>`.
    let fields = |needle: &str| -> (Vec<f64>, f64, String) {
        let line = text
            .lines()
            .find(|l| l.contains(needle))
            .unwrap_or_else(|| panic!("no row for {needle}\n{text}"));
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let status = tokens[tokens.len() - 1].to_string();
        let deviation: f64 = tokens[tokens.len() - 2].parse().expect("deviation cell");
        let values = tokens[tokens.len() - 4..tokens.len() - 2]
            .iter()
            .map(|t| t.parse().expect("value cell"))
            .collect();
        (values, deviation, status)
    };

    let (values, deviation, status) = fields("printed-momentum-expectation");
    assert_eq!(status, "discrepancy");
    assert!(deviation > 0.2, "deviation {deviation}");
    assert!(rel(values[0], 2.0 / PI) <= 1e-9, "quoted <p> should be 2/pi");
    assert!(rel(values[1], 8.0 / (3.0 * PI)) <= 1e-6, "oracle <p> should be 8/(3 pi)");

    let (values, deviation, status) = fields("printed-variance/momentum");
    assert_eq!(status, "discrepancy");
    assert!(deviation > 0.2, "deviation {deviation}");
    assert!(rel(values[0], 1.0 - 4.0 / (PI * PI)) <= 1e-9);
    assert!(rel(values[1], 1.0 - 64.0 / (9.0 * PI * PI)) <= 1e-6);

    let (values, deviation, status) = fields("cramer-rao-bound/position");
    assert_eq!(status, "informational");
    assert!(deviation > 0.2, "deviation {deviation}");
    assert!(rel(values[0], 3.0) <= 1e-9, "product should be 3");
    assert!(rel(values[1], 9.0) <= 1e-12, "bound should be D^2 = 9");

    println!(
        "criterion 8 pass: validate reports the quoted momentum expectation and momentum \
         variance as discrepancies (> 0.2) and the Cramer-Rao bound miss as informational"
    );
}

#[test]
fn criterion_09_lower_bounds_hold_across_the_battery() {
    let q = q();
    let z = charge(1.0);
    let states = full_battery();
    for state in &states {
        let d = state.dimension() as f64;
        for space in [Space::Position, Space::Momentum] {
            let triple = complexity_triple(state, z, space, &q).unwrap();
            assert!(
                triple.lmc.value >= 1.0 - 1e-9,
                "LMC bound for {state:?} {space}: {}",
                triple.lmc.value
            );
            assert!(
                triple.fisher_shannon.value >= d - 1e-9,
                "Fisher-Shannon bound for {state:?} {space}: {}",
                triple.fisher_shannon.value
            );
        }
    }
    println!(
        "criterion 9 pass: LMC >= 1 - 1e-9 and Fisher-Shannon >= D - 1e-9 for all {} \
         battery states in both spaces",
        states.len()
    );
}

#[test]
fn criterion_10_sweep_output_is_deterministic() {
    let run = || {
        let output = Command::new(env!("CARGO_BIN_EXE_hydrocomplex"))
            .args(["sweep", "--D", "2,5,15", "--n-max", "8"])
            .output()
            .expect("binary spawns");
        assert!(output.status.success());
        output.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty());
    assert_eq!(
        first, second,
        "two identical sweep invocations emitted different bytes"
    );
    let rows = first.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count();
    assert_eq!(rows, 25, "header plus 24 family rows");
    println!(
        "criterion 10 pass: repeated sweep over the circular family (D in {{2,5,15}}, \
         n = 1..8) produced byte-identical CSV"
    );
}

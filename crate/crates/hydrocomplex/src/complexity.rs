//! Two-component complexity products and their lower bounds.
//!
//! Each product pairs a concentration measure with a spread measure:
//!
//! * LMC: disequilibrium × exp(Shannon entropy),
//! * Fisher-Shannon: Fisher information × entropy power `(1/2πe) e^{2S/D}`,
//! * Cramér-Rao: Fisher information × variance.
//!
//! All three are independent of the nuclear charge: the `Z^{±D}` and
//! `∓ D ln Z` factors of their ingredients cancel algebraically. The
//! assemblies here exploit that by evaluating every ingredient at `Z = 1`,
//! which makes the invariance bit-exact rather than approximate.

use std::f64::consts::{E, LN_2, PI, TAU};

use crate::measures::{self, Space, VarianceValue};
use crate::oracle::{oracle_variance, OracleError};
use crate::quad::{Measured, QuadError, QuadratureSpec};
use crate::specfun::{digamma_pos, log_gamma_pos, LN_PI};
use crate::states::{HyperState, NuclearCharge, StateError};

fn unit_charge() -> NuclearCharge {
    NuclearCharge::new(1.0).expect("unit charge is valid")
}

/// Outcome of one lower-bound check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOutcome {
    pub bound: f64,
    pub value: f64,
    pub satisfied: bool,
    /// Whether the suite treats a violation as a failure. The Cramér-Rao
    /// bound `C ≥ D²` conflicts with the canonical ground-state product
    /// (`F·V = 3` at `D = 3`), so it stays informational.
    pub asserted: bool,
}

/// The three lower-bound outcomes for one space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lmc: BoundOutcome,
    pub fisher_shannon: BoundOutcome,
    pub cramer_rao: BoundOutcome,
}

/// The three complexities of one state in one space, with bound outcomes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityTriple {
    pub lmc: Measured,
    pub fisher_shannon: Measured,
    pub cramer_rao: Measured,
    pub space: Space,
    pub bounds: BoundReport,
}

/// The Z-independent entropy aggregate: the full entropy is
/// `t - D ln Z` in position space and `t + D ln Z` in momentum space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShannonDecomposition {
    pub t: Measured,
    pub space: Space,
}

/// Computes the Z-free entropy aggregate for one space.
pub fn shannon_aggregate(
    state: &HyperState,
    space: Space,
    q: &QuadratureSpec,
) -> Result<ShannonDecomposition, QuadError> {
    let t = measures::shannon_entropy(state, unit_charge(), space, q)?;
    Ok(ShannonDecomposition { t, space })
}

/// LMC complexity `disequilibrium × exp(entropy)`.
pub fn lmc(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    // Z^{±D} from the disequilibrium cancels exp(∓ D ln Z) from the
    // entropy exactly; the charge never enters the arithmetic.
    let _ = z;
    let one = unit_charge();
    let deseq = measures::disequilibrium(state, one, space, q)?;
    let entropy = measures::shannon_entropy(state, one, space, q)?;
    let power = entropy.value.exp();
    let value = deseq.value * power;
    Ok(Measured {
        value,
        error_estimate: power * deseq.error_estimate + value.abs() * entropy.error_estimate,
    })
}

/// Fisher-Shannon complexity `F × (1/2πe) exp(2S/D)`.
pub fn fisher_shannon(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    // Z² from the Fisher information cancels exp(∓ 2 ln Z) from the
    // entropy power; only the Z-free aggregate is used.
    let _ = z;
    let d = state.dimension() as f64;
    let aggregate = shannon_aggregate(state, space, q)?;
    let fisher = measures::fisher_information(state, unit_charge(), space);
    let value = fisher / (TAU * E) * ((2.0 / d) * aggregate.t.value).exp();
    Ok(Measured {
        value,
        error_estimate: value.abs() * (2.0 / d) * aggregate.t.error_estimate,
    })
}

/// Cramér-Rao complexity `F × V` with the canonical variance: closed form
/// in position space, oracle moments in momentum space (where the closed
/// variance expression is untrustworthy). The quadrature spec is consumed
/// only on the momentum path.
pub fn cramer_rao(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    // F ∝ Z^{±2} cancels V ∝ Z^{∓2}.
    let _ = z;
    let one = unit_charge();
    let fisher = measures::fisher_information(state, one, space);
    let variance = match measures::variance(state, one, space) {
        VarianceValue::Closed(v) => Measured::exact(v),
        VarianceValue::PrintedOnly(_) => oracle_variance(state, one, space, q)?,
    };
    Ok(variance * fisher)
}

/// Checks the lower bounds `C_LMC ≥ 1`, `C_FS ≥ D`, `C_CR ≥ D²`.
pub fn bound_report(
    lmc: f64,
    fisher_shannon: f64,
    cramer_rao: f64,
    dimension: usize,
) -> BoundReport {
    let d = dimension as f64;
    let outcome = |value: f64, bound: f64, asserted: bool| BoundOutcome {
        bound,
        value,
        satisfied: value >= bound - 1e-9,
        asserted,
    };
    BoundReport {
        lmc: outcome(lmc, 1.0, true),
        fisher_shannon: outcome(fisher_shannon, d, true),
        cramer_rao: outcome(cramer_rao, d * d, false),
    }
}

/// Assembles all three complexities and their bound outcomes.
pub fn complexity_triple(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<ComplexityTriple, OracleError> {
    let lmc = lmc(state, z, space, q)?;
    let fisher_shannon = fisher_shannon(state, z, space, q)?;
    let cramer_rao = cramer_rao(state, z, space, q)?;
    Ok(ComplexityTriple {
        lmc,
        fisher_shannon,
        cramer_rao,
        space,
        bounds: bound_report(
            lmc.value,
            fisher_shannon.value,
            cramer_rao.value,
            state.dimension(),
        ),
    })
}

/// LMC complexity of a circular state from the closed expressions, with
/// the disequilibrium and entropy combined in log space before
/// exponentiation so large quantum numbers cannot overflow.
pub fn circular_lmc(n: u32, dimension: usize, space: Space) -> Result<f64, StateError> {
    let one = unit_charge();
    let log_deseq = measures::circular_log_disequilibrium(n, dimension, one, space)?;
    let entropy = measures::circular_shannon(n, dimension, one, space)?;
    Ok((log_deseq + entropy).exp())
}

/// Ground-state LMC complexity from the dedicated closed forms:
/// `(e/2)^D` in position space and a gamma/digamma product in momentum
/// space. Coincides with [`circular_lmc`] at `n = 1`.
pub fn ground_state_lmc(dimension: usize, space: Space) -> Result<f64, StateError> {
    HyperState::circular(dimension, 1)?;
    let d = dimension as f64;
    match space {
        Space::Position => Ok((d * (1.0 - LN_2)).exp()),
        Space::Momentum => {
            let ln = d * LN_2 + log_gamma_pos((d + 1.0) / 2.0) + log_gamma_pos(2.0 + 1.5 * d)
                - 0.5 * LN_PI
                - log_gamma_pos(2.0 * d + 2.0)
                + (d + 1.0) * (digamma_pos(d + 1.0) - digamma_pos((d + 2.0) / 2.0));
            Ok(ln.exp())
        }
    }
}

/// The Cramér-Rao products in their quoted closed forms, which disagree
/// with the `F × V` product: the position form mixes `n` with `η` and
/// drops one power of `(L+1)`, the momentum form carries `-1` where the
/// Fisher bracket has `+1`. Evaluated verbatim for the consistency report.
pub fn printed_cramer_rao(state: &HyperState, space: Space) -> f64 {
    let eta = state.eta();
    let big_l = state.big_l();
    let m = f64::from(state.m_abs());
    match space {
        Space::Position => {
            let n = f64::from(state.n());
            (n - m) * (eta * eta * (eta * eta + 2.0) - big_l * big_l * (big_l + 1.0))
                / eta.powi(3)
        }
        Space::Momentum => {
            2.0 * (1.0 - 4.0 / (PI * PI))
                * (5.0 * eta * eta - 3.0 * big_l * (big_l + 1.0)
                    - m * (8.0 * eta - 6.0 * big_l - 3.0)
                    - 1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::battery;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn z(v: f64) -> NuclearCharge {
        NuclearCharge::new(v).unwrap()
    }

    fn gs3() -> HyperState {
        HyperState::new(3, 1, &[0, 0]).unwrap()
    }

    #[test]
    fn ground_state_lmc_reference_values() {
        let half_e: f64 = E / 2.0;
        assert_relative_eq!(
            ground_state_lmc(3, Space::Position).unwrap(),
            half_e.powi(3),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            ground_state_lmc(2, Space::Position).unwrap(),
            half_e.powi(2),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            ground_state_lmc(3, Space::Momentum).unwrap(),
            2.354483560918658,
            max_relative = 1e-12
        );

        // The generic quadrature pipeline reaches the same values.
        let pos = lmc(&gs3(), z(1.0), Space::Position, &q()).unwrap();
        assert_relative_eq!(pos.value, half_e.powi(3), max_relative = 1e-9);
        let mom = lmc(&gs3(), z(1.0), Space::Momentum, &q()).unwrap();
        assert_relative_eq!(mom.value, 2.354483560918658, max_relative = 1e-8);
    }

    #[test]
    fn ground_state_fisher_shannon_reference_values() {
        let pos = fisher_shannon(&gs3(), z(1.0), Space::Position, &q()).unwrap();
        assert_relative_eq!(
            pos.value,
            2.0 * E * PI.powf(-1.0 / 3.0),
            max_relative = 1e-9
        );
        let mom = fisher_shannon(&gs3(), z(1.0), Space::Momentum, &q()).unwrap();
        assert_relative_eq!(mom.value, 3.5310824870391566, max_relative = 1e-8);
    }

    #[test]
    fn ground_state_cramer_rao_reference_values() {
        let pos = cramer_rao(&gs3(), z(1.0), Space::Position, &q()).unwrap();
        assert_relative_eq!(pos.value, 3.0, max_relative = 1e-12);
        assert_eq!(pos.error_estimate, 0.0);

        let mom = cramer_rao(&gs3(), z(1.0), Space::Momentum, &q()).unwrap();
        assert_relative_eq!(
            mom.value,
            12.0 * (1.0 - 64.0 / (9.0 * PI * PI)),
            max_relative = 1e-8
        );

        // The quoted closed products differ from F × V in momentum space
        // and coincide for the 3-D ground state in position space.
        assert_abs_diff_eq!(
            printed_cramer_rao(&gs3(), Space::Position),
            3.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            printed_cramer_rao(&gs3(), Space::Momentum),
            8.0 * (1.0 - 4.0 / (PI * PI)),
            max_relative = 1e-12
        );
    }

    #[test]
    fn charge_invariance_is_bit_exact() {
        let state = HyperState::new(4, 3, &[1, 1, 0]).unwrap();
        for space in [Space::Position, Space::Momentum] {
            let a = lmc(&state, z(1.0), space, &q()).unwrap();
            let b = lmc(&state, z(37.0), space, &q()).unwrap();
            assert_eq!(a.value, b.value);

            let a = fisher_shannon(&state, z(1.0), space, &q()).unwrap();
            let b = fisher_shannon(&state, z(2.5), space, &q()).unwrap();
            assert_eq!(a.value, b.value);

            let a = cramer_rao(&state, z(1.0), space, &q()).unwrap();
            let b = cramer_rao(&state, z(37.0), space, &q()).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn shannon_aggregate_reconstructs_entropy() {
        let state = HyperState::new(3, 2, &[1, 0]).unwrap();
        let zq = 2.5f64;
        for (space, sign) in [(Space::Position, -1.0), (Space::Momentum, 1.0)] {
            let t = shannon_aggregate(&state, space, &q()).unwrap();
            let s = measures::shannon_entropy(&state, z(zq), space, &q()).unwrap();
            assert_abs_diff_eq!(s.value, t.t.value + sign * 3.0 * zq.ln(), epsilon = 1e-12);
        }
    }

    #[test]
    fn circular_lmc_matches_generic_pipeline() {
        for dimension in [2usize, 3, 5, 15] {
            for n in 1..=5u32 {
                let state = HyperState::circular(dimension, n).unwrap();
                for space in [Space::Position, Space::Momentum] {
                    let closed = circular_lmc(n, dimension, space).unwrap();
                    let pipeline = lmc(&state, z(1.0), space, &q()).unwrap();
                    // exp(S) turns the entropy's absolute quadrature error
                    // into relative error of the product, so the product
                    // tolerance is looser than the per-factor one.
                    assert_relative_eq!(pipeline.value, closed, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn circular_lmc_at_n1_is_the_ground_state_form() {
        for dimension in 2..=10 {
            for space in [Space::Position, Space::Momentum] {
                assert_relative_eq!(
                    circular_lmc(1, dimension, space).unwrap(),
                    ground_state_lmc(dimension, space).unwrap(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn circular_position_lmc_decreases_with_n() {
        for dimension in [2usize, 5, 15] {
            let values: Vec<f64> = (1..=8)
                .map(|n| circular_lmc(n, dimension, Space::Position).unwrap())
                .collect();
            for pair in values.windows(2) {
                assert!(
                    pair[0] > pair[1],
                    "not decreasing at D = {dimension}: {values:?}"
                );
            }
        }
    }

    #[test]
    fn bounds_hold_across_battery() {
        for state in battery(&[2, 3, 4], 3) {
            for space in [Space::Position, Space::Momentum] {
                let triple = complexity_triple(&state, z(1.0), space, &q()).unwrap();
                assert!(
                    triple.bounds.lmc.satisfied,
                    "LMC bound failed for {state:?} {space}: {}",
                    triple.lmc.value
                );
                assert!(
                    triple.bounds.fisher_shannon.satisfied,
                    "FS bound failed for {state:?} {space}: {}",
                    triple.fisher_shannon.value
                );
            }
        }
    }

    #[test]
    fn bound_report_flags_cramer_rao_as_informational() {
        let triple = complexity_triple(&gs3(), z(1.0), Space::Position, &q()).unwrap();
        let cr = triple.bounds.cramer_rao;
        assert!(!cr.asserted);
        assert!(!cr.satisfied, "GS D=3 has F·V = 3 < 9");
        assert_abs_diff_eq!(cr.bound, 9.0, epsilon = 1e-12);
        assert!(triple.bounds.lmc.asserted && triple.bounds.fisher_shannon.asserted);
    }
}

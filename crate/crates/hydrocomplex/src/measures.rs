//! Single-component information measures of hydrogenic orbitals.
//!
//! For each state and each space (position or momentum) this module
//! produces the four measures that the complexity products are built from:
//!
//! * disequilibrium `∫ density²`, assembled as a radial quartic quadrature
//!   times one quartic Gegenbauer quadrature per polar angle,
//! * Shannon entropy `-∫ density ln density`, assembled from digamma
//!   coefficients plus polynomial entropic integrals ([`entropic_integral`]),
//! * Fisher information, in closed form,
//! * variance, in closed form where the closed form is trustworthy.
//!
//! Circular states (`μ₁ = … = μ_{D-1} = n-1`) additionally admit fully
//! closed disequilibria and entropies ([`circular_disequilibrium`],
//! [`circular_shannon`]); these share no quadrature with the generic path
//! and serve as an internal cross-check.
//!
//! A few closed expressions shipped with this family of measures are
//! inconsistent with the densities they describe. They are kept here under
//! the name "printed" (for example [`printed_disequilibrium`] and
//! [`VarianceValue::PrintedOnly`]) and surfaced by the `validate`
//! subcommand, never silently substituted for density-derived values.

use std::f64::consts::{LN_2, PI, TAU};
use std::fmt;

use crate::orthopoly::{roots_of, GegenbauerSpec, LaguerreSpec};
use crate::quad::{integrate_adaptive, Interval, Measured, QuadError, QuadratureSpec};
use crate::specfun::{digamma_pos, log_gamma_pos, LN_PI};
use crate::states::{AngularFactorSpec, HyperState, NuclearCharge, StateError};

/// Which of the two reciprocal spaces a measure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    /// Sign of the `D ln Z` entropy shift: growing `Z` contracts the
    /// position density and dilates the momentum density.
    fn ln_z_sign(self) -> f64 {
        match self {
            Space::Position => -1.0,
            Space::Momentum => 1.0,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        })
    }
}

/// How a [`MeasureSet`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed and semi-closed expressions (this module).
    ClosedForm,
    /// Direct numerical integration of the density (the oracle module).
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
        })
    }
}

/// The bundle of single-component measures for one state in one space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSet {
    /// `∫ density`; equals 1 up to quadrature error.
    pub normalization: f64,
    pub disequilibrium: f64,
    /// Shannon entropy in nats.
    pub shannon: f64,
    pub fisher: f64,
    pub variance: f64,
    pub provenance: Provenance,
}

/// Moment weight `x^i` inside an entropic integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentWeight {
    Zero,
    One,
}

impl MomentWeight {
    fn apply(self, x: f64) -> f64 {
        match self {
            MomentWeight::Zero => 1.0,
            MomentWeight::One => x,
        }
    }
}

/// A polynomial entropic integral
/// `E_i[p] = -∫ x^i ω(x) p²(x) ln p²(x) dx`
/// taken over the orthogonality interval of `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropicIntegralSpec {
    Laguerre {
        poly: LaguerreSpec,
        moment: MomentWeight,
    },
    Gegenbauer {
        poly: GegenbauerSpec,
        moment: MomentWeight,
    },
}

/// Evaluates an entropic integral with quadrature panels split at every
/// root of the polynomial, where `ln p²` has an integrable singularity.
pub fn entropic_integral(
    spec: EntropicIntegralSpec,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    match spec {
        EntropicIntegralSpec::Laguerre { poly, moment } => {
            let interval = Interval::half_line(0.0).with_breakpoints(&roots_of(&poly));
            integrate_adaptive(
                move |x| {
                    let p2 = poly.value(x).powi(2);
                    if p2 == 0.0 {
                        return 0.0;
                    }
                    -moment.apply(x) * poly.weight(x) * p2 * p2.ln()
                },
                &interval,
                q,
            )
            .map(Measured::from)
        }
        EntropicIntegralSpec::Gegenbauer { poly, moment } => {
            let interval = Interval::finite(-1.0, 1.0).with_breakpoints(&roots_of(&poly));
            integrate_adaptive(
                move |x| {
                    let p2 = poly.value(x).powi(2);
                    if p2 == 0.0 {
                        return 0.0;
                    }
                    -moment.apply(x) * poly.weight(x) * p2 * p2.ln()
                },
                &interval,
                q,
            )
            .map(Measured::from)
        }
    }
}

/// `∫ shape²(x) x^{D-1} dx` over the dimensionless radial variable.
fn radial_quartic(
    state: &HyperState,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let power = state.dimension() as i32 - 1;
    match space {
        Space::Position => {
            let shape = state.position_shape();
            let interval = Interval::half_line(0.0).with_breakpoints(&shape.breakpoints());
            integrate_adaptive(
                move |x| shape.value(x).powi(2) * x.powi(power),
                &interval,
                q,
            )
            .map(Measured::from)
        }
        Space::Momentum => {
            let shape = state.momentum_shape();
            let interval = Interval::half_line(0.0).with_breakpoints(&shape.breakpoints());
            integrate_adaptive(
                move |t| shape.value(t).powi(2) * t.powi(power),
                &interval,
                q,
            )
            .map(Measured::from)
        }
    }
}

/// `∫ F_j²(θ) sin^{D-1-j}θ dθ` for one polar-angle factor.
fn angular_quartic(
    factor: AngularFactorSpec,
    dimension: usize,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let power = (dimension - 1 - factor.axis()) as i32;
    let interval = Interval::finite(0.0, PI).with_breakpoints(&factor.theta_breakpoints());
    integrate_adaptive(
        move |theta| factor.value(theta).powi(2) * theta.sin().powi(power),
        &interval,
        q,
    )
    .map(Measured::from)
}

/// `∫ |harmonic|⁴ dΩ`: the azimuthal factor `1/2π` times one quartic
/// quadrature per polar angle. Errors combine in relative terms.
fn harmonic_quartic(state: &HyperState, q: &QuadratureSpec) -> Result<Measured, QuadError> {
    let mut value = 1.0 / TAU;
    let mut relative = 0.0;
    for factor in state.angular_factors() {
        let part = angular_quartic(factor, state.dimension(), q)?;
        value *= part.value;
        relative += relative_error(part);
    }
    Ok(Measured {
        value,
        error_estimate: (value * relative).abs(),
    })
}

fn relative_error(m: Measured) -> f64 {
    if m.value == 0.0 {
        0.0
    } else {
        (m.error_estimate / m.value).abs()
    }
}

/// Disequilibrium `∫ density²` over all of space.
///
/// The radial factor integrates the squared radial density directly; the
/// angular factor is [`harmonic_quartic`]. The nuclear charge enters only
/// through the exact prefactor `(2Z/η)^D` (position) or `(η/Z)^D`
/// (momentum), so the Z-scaling laws hold to machine precision.
pub fn disequilibrium(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let d = state.dimension() as i32;
    let eta = state.eta();
    let scale = match space {
        Space::Position => (2.0 * z.value() / eta).powi(d),
        Space::Momentum => (eta / z.value()).powi(d),
    };
    let radial = radial_quartic(state, space, q)?;
    let angular = harmonic_quartic(state, q)?;
    let value = scale * radial.value * angular.value;
    let relative = relative_error(radial) + relative_error(angular);
    Ok(Measured {
        value,
        error_estimate: (value * relative).abs(),
    })
}

/// Radial part of the position entropy that is known in closed form; the
/// remaining radial contribution is the Laguerre entropic integral.
fn position_radial_coefficient(state: &HyperState) -> f64 {
    let eta = state.eta();
    let big_l = state.big_l();
    let l = f64::from(state.l());
    let d = state.dimension() as f64;
    -2.0 * l * ((2.0 * eta - 2.0 * big_l - 1.0) / (2.0 * eta) + digamma_pos(eta + big_l + 1.0))
        + (3.0 * eta * eta - big_l * (big_l + 1.0)) / eta
        - ((d - 1.0) * LN_2 - (d + 1.0) * eta.ln())
}

/// Radial part of the momentum entropy that is known in closed form.
fn momentum_radial_coefficient(state: &HyperState) -> f64 {
    let eta = state.eta();
    let big_l = state.big_l();
    let d = state.dimension() as f64;
    // (2L+1)/(2η-1) reduced to a ratio of integers. Both vanish together
    // for n = 1 (where l = 0), so the quotient is 1 there; writing it this
    // way keeps the n = 1, D = 2 state (η = 1/2) finite.
    let ratio = if state.n() == 1 {
        1.0
    } else {
        f64::from(2 * state.l() + state.dimension() as u32 - 2)
            / f64::from(2 * state.n() + state.dimension() as u32 - 4)
    };
    let two_l4 = 2.0 * big_l + 4.0;
    -(d * eta.ln() - two_l4 * LN_2) - two_l4 * (digamma_pos(eta + big_l + 1.0) - digamma_pos(eta))
        + (big_l + 2.0) / eta
        - (d + 1.0) * (1.0 - ratio * 2.0 * eta / (2.0 * eta + 1.0))
}

/// Angular part of the entropy that is known in closed form (shared by both
/// spaces); the remaining angular contribution is one Gegenbauer entropic
/// integral per polar angle.
fn angular_coefficient(state: &HyperState) -> f64 {
    let mut b = TAU.ln();
    for factor in state.angular_factors() {
        let (mu_j, mu_next) = factor.mu_pair();
        let alpha = factor.alpha();
        let s = alpha + f64::from(mu_j);
        b -= 2.0
            * f64::from(mu_next)
            * (digamma_pos(2.0 * alpha + f64::from(mu_j) + f64::from(mu_next))
                - digamma_pos(s)
                - LN_2
                - 0.5 / s);
    }
    b
}

/// Shannon entropy `-∫ density ln density` in nats.
///
/// Assembled as closed coefficients plus polynomial entropic integrals;
/// the only quadrature error comes from the latter. The nuclear charge
/// enters only through the exact `∓ D ln Z` shift.
pub fn shannon_entropy(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let d = state.dimension() as f64;
    let mut value = angular_coefficient(state) + space.ln_z_sign() * d * z.value().ln();
    let mut error = 0.0;
    for factor in state.angular_factors() {
        let part = entropic_integral(
            EntropicIntegralSpec::Gegenbauer {
                poly: factor.polynomial(),
                moment: MomentWeight::Zero,
            },
            q,
        )?;
        value += part.value;
        error += part.error_estimate;
    }
    match space {
        Space::Position => {
            value += position_radial_coefficient(state);
            let radial = entropic_integral(
                EntropicIntegralSpec::Laguerre {
                    poly: *state.position_shape().polynomial(),
                    moment: MomentWeight::One,
                },
                q,
            )?;
            let inv_two_eta = 0.5 / state.eta();
            value += inv_two_eta * radial.value;
            error += inv_two_eta * radial.error_estimate;
        }
        Space::Momentum => {
            value += momentum_radial_coefficient(state);
            let radial = entropic_integral(
                EntropicIntegralSpec::Gegenbauer {
                    poly: *state.momentum_shape().polynomial(),
                    moment: MomentWeight::Zero,
                },
                q,
            )?;
            value += radial.value;
            error += radial.error_estimate;
        }
    }
    Ok(Measured {
        value,
        error_estimate: error,
    })
}

/// Fisher information, in closed form in both spaces.
pub fn fisher_information(state: &HyperState, z: NuclearCharge, space: Space) -> f64 {
    let eta = state.eta();
    let m = f64::from(state.m_abs());
    match space {
        Space::Position => 4.0 * z.value().powi(2) / eta.powi(3) * (eta - m),
        Space::Momentum => {
            let big_l = state.big_l();
            2.0 * eta * eta / z.value().powi(2)
                * (5.0 * eta * eta - 3.0 * big_l * (big_l + 1.0)
                    + 1.0
                    - m * (8.0 * eta - 6.0 * big_l - 3.0))
        }
    }
}

/// A variance together with its trust status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceValue {
    /// The closed expression is the canonical value.
    Closed(f64),
    /// The closed expression contradicts the first moment of the density
    /// it accompanies. It is kept for side-by-side reporting; callers that
    /// need a trustworthy value must integrate the moments directly (see
    /// the oracle module).
    PrintedOnly(f64),
}

impl VarianceValue {
    /// The closed expression regardless of trust status.
    pub fn printed(self) -> f64 {
        match self {
            VarianceValue::Closed(v) | VarianceValue::PrintedOnly(v) => v,
        }
    }

    /// The canonical value, when the closed expression provides one.
    pub fn closed(self) -> Option<f64> {
        match self {
            VarianceValue::Closed(v) => Some(v),
            VarianceValue::PrintedOnly(_) => None,
        }
    }

    pub fn is_canonical(self) -> bool {
        matches!(self, VarianceValue::Closed(_))
    }
}

/// Variance of the density.
///
/// Position: `⟨r²⟩ - ⟨r⟩²` in closed form. Momentum: only the untrusted
/// closed expression `(Z²/η²)(1 - 4/π²)` is available here; it relies on a
/// mean momentum `2Z/(πη)` that the density itself does not reproduce, so
/// it is returned as [`VarianceValue::PrintedOnly`].
pub fn variance(state: &HyperState, z: NuclearCharge, space: Space) -> VarianceValue {
    let eta = state.eta();
    match space {
        Space::Position => {
            let big_l = state.big_l();
            let eta2 = eta * eta;
            VarianceValue::Closed(
                (eta2 * (eta2 + 2.0) - (big_l * (big_l + 1.0)).powi(2))
                    / (4.0 * z.value().powi(2)),
            )
        }
        Space::Momentum => {
            let scale = z.value() / eta;
            VarianceValue::PrintedOnly(scale * scale * (1.0 - 4.0 / (PI * PI)))
        }
    }
}

/// The closed mean-momentum expression the printed variance relies on.
/// It disagrees with the first moment of the momentum density; `validate`
/// reports both.
pub fn printed_momentum_expectation(state: &HyperState, z: NuclearCharge) -> f64 {
    2.0 * z.value() / (PI * state.eta())
}

/// A closed expression evaluated exactly as written, which may fail to
/// converge for some states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrintedForm {
    Value(Measured),
    /// The integrand as written has a non-integrable singularity at the
    /// origin for this state.
    Divergent,
}

/// The disequilibrium evaluated from the factored radial kernels as
/// written, rather than from the squared density.
///
/// The momentum kernel is algebraically identical to the direct route and
/// must agree with [`disequilibrium`]. The position kernel carries
/// `x^{-D-5}` where direct substitution of the density yields `x^{3-D}`;
/// as written it behaves like `x^{4l+D-9}` at the origin, diverging
/// whenever `4l + D ≤ 8`, and disagrees with the direct route elsewhere.
/// `validate` reports the comparison.
pub fn printed_disequilibrium(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<PrintedForm, QuadError> {
    let d = state.dimension() as i32;
    let eta = state.eta();
    let angular = harmonic_quartic(state, q)?;
    match space {
        Space::Position => {
            let origin_power = 4 * state.l() as i32 + d - 9;
            if origin_power < 0 {
                return Ok(PrintedForm::Divergent);
            }
            let poly = *state.position_shape().polynomial();
            let interval = Interval::half_line(0.0).with_breakpoints(&roots_of(&poly));
            let kernel = integrate_adaptive(
                move |x: f64| x.powi(origin_power) * (-2.0 * x).exp() * poly.value(x).powi(4),
                &interval,
                q,
            )?;
            let scale = 2f64.powi(d - 2) * z.value().powi(d) / eta.powi(d + 2);
            let value = scale * kernel.value * angular.value;
            let relative = relative_error(kernel.into()) + relative_error(angular);
            Ok(PrintedForm::Value(Measured {
                value,
                error_estimate: (value * relative).abs(),
            }))
        }
        Space::Momentum => {
            let poly = *state.momentum_shape().polynomial();
            let l = state.l() as i32;
            // t^{4l+D-1} (1+t²)^{-(4L+8)} C̃⁴, grouped as bounded factors so
            // large powers cannot overflow before they cancel.
            let u_power = 2 * l + 2 * d + 2;
            let interval = Interval::half_line(0.0).with_breakpoints(
                &state.momentum_shape().breakpoints(),
            );
            let kernel = integrate_adaptive(
                move |t: f64| {
                    let u = 1.0 + t * t;
                    let c = poly.value((1.0 - t * t) / u);
                    (t * t / u).powi(2 * l) * t.powi(d - 1) * u.powi(-u_power) * c.powi(4)
                },
                &interval,
                q,
            )?;
            // 2^{4L+8} = 2^{4l+2D+2}.
            let scale =
                2f64.powi(4 * l + 2 * d + 2) * eta.powi(d) / z.value().powi(d);
            let value = scale * kernel.value * angular.value;
            let relative = relative_error(kernel.into()) + relative_error(angular);
            Ok(PrintedForm::Value(Measured {
                value,
                error_estimate: (value * relative).abs(),
            }))
        }
    }
}

/// Disequilibrium of a circular state from its dedicated closed
/// expression, bypassing all quadrature and polynomial machinery.
pub fn circular_disequilibrium(
    n: u32,
    dimension: usize,
    z: NuclearCharge,
    space: Space,
) -> Result<f64, StateError> {
    Ok(circular_log_disequilibrium(n, dimension, z, space)?.exp())
}

/// Logarithm of the circular disequilibrium; complexity products combine
/// it with the entropy before exponentiating, so large quantum numbers
/// cannot overflow intermediate gamma factors.
pub(crate) fn circular_log_disequilibrium(
    n: u32,
    dimension: usize,
    z: NuclearCharge,
    space: Space,
) -> Result<f64, StateError> {
    HyperState::circular(dimension, n)?;
    let nf = f64::from(n);
    let d = dimension as f64;
    // 2η for a circular state.
    let two_eta = 2.0 * nf + d - 3.0;
    let ln = match space {
        Space::Position => {
            d * z.value().ln() + log_gamma_pos(nf - 0.5)
                + log_gamma_pos(2.0 * nf + (d - 3.0) / 2.0)
                - (2.0 * nf - 2.0) * LN_2
                - 0.5 * d * LN_PI
                - d * two_eta.ln()
                - log_gamma_pos(nf)
                - 2.0 * log_gamma_pos(nf + (d - 1.0) / 2.0)
        }
        Space::Momentum => {
            (4.0 * nf + d - 4.0) * LN_2 + d * two_eta.ln()
                + 2.0 * log_gamma_pos(nf + (d - 1.0) / 2.0)
                + log_gamma_pos(2.0 * nf - 1.0)
                + log_gamma_pos(2.0 * nf + 1.5 * d)
                - d * z.value().ln()
                - 0.5 * (d + 2.0) * LN_PI
                - 2.0 * log_gamma_pos(nf)
                - log_gamma_pos(4.0 * nf + 2.0 * d - 2.0)
        }
    };
    Ok(ln)
}

/// Shannon entropy of a circular state from its dedicated closed
/// expression.
pub fn circular_shannon(
    n: u32,
    dimension: usize,
    z: NuclearCharge,
    space: Space,
) -> Result<f64, StateError> {
    HyperState::circular(dimension, n)?;
    let nf = f64::from(n);
    let d = dimension as f64;
    let two_eta = 2.0 * nf + d - 3.0;
    match space {
        Space::Position => Ok(2.0 * nf + d - 2.0
            - (nf - 1.0) * (digamma_pos(nf) + digamma_pos(nf + (d - 1.0) / 2.0))
            - d * LN_2
            + d * two_eta.ln()
            + 0.5 * (d - 1.0) * LN_PI
            + log_gamma_pos(nf)
            + log_gamma_pos(nf + (d - 1.0) / 2.0)
            - d * z.value().ln()),
        Space::Momentum => {
            let radial = (2.0 * nf + d - 1.0) / two_eta - (d + 1.0) / (2.0 * nf + d - 2.0)
                - (nf - 1.0) * digamma_pos(nf)
                - 0.5 * (d + 1.0) * digamma_pos(nf + (d - 2.0) / 2.0)
                + (nf + (d - 1.0) / 2.0) * digamma_pos(nf + (d - 3.0) / 2.0);
            Ok(radial + (d + 1.0) * LN_2 + d * z.value().ln() + 0.5 * (d + 1.0) * LN_PI
                + log_gamma_pos(nf)
                - d * two_eta.ln()
                - log_gamma_pos(nf + (d - 1.0) / 2.0))
        }
    }
}

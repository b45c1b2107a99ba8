//! Brute-force evaluation of every measure directly from density values.
//!
//! Nothing here uses the closed or semi-closed expressions of the measures
//! module: the only ingredients are the factorized density (polynomial
//! evaluation plus elementary functions) and the adaptive quadrature. The
//! two paths are kept apart so that one can certify or refute the other.
//!
//! All radial integrals are evaluated in the dimensionless variables
//! `x = 2Zr/η` (position) and `t = ηp/Z` (momentum), so the quadrature
//! sees the same integrand for every nuclear charge and the exact scale
//! factors are applied afterwards. Gradient integrands are arranged as
//! exact squares, which makes them finite at polynomial roots without any
//! limit taking.

use thiserror::Error;

use crate::measures::Space;
use crate::orthopoly::{roots_of, GegenbauerSpec, LaguerreSpec};
use crate::quad::{integrate_adaptive, Interval, Measured, QuadError, QuadratureSpec};
use crate::states::{HyperState, NuclearCharge};

/// Failure modes of the oracle evaluations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("radial moment of order {k} diverges for the {space} density of this state")]
    DivergentMoment { k: i32, space: Space },
}

/// Dimensionless position radial density `x^{2l} e^{-x} p²(x) / (2η)`,
/// normalized against `x^{D-1} dx`, with its derivative and the gradient
/// quadratic `(d/dx)² / value`.
#[derive(Debug, Clone, Copy)]
struct PositionRadial {
    two_l: i32,
    inv_two_eta: f64,
    poly: LaguerreSpec,
}

impl PositionRadial {
    fn new(state: &HyperState) -> Self {
        Self {
            two_l: 2 * state.l() as i32,
            inv_two_eta: 0.5 / state.eta(),
            poly: *state.position_shape().polynomial(),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        roots_of(&self.poly)
    }

    fn value(&self, x: f64) -> f64 {
        let (p, _) = self.poly.value_and_derivative(x);
        x.powi(self.two_l) * (-x).exp() * self.inv_two_eta * p * p
    }

    /// Analytic derivative; the exact-square gradient forms below were
    /// derived from it, and the tests cross-check both against central
    /// differences.
    #[cfg(test)]
    fn derivative(&self, x: f64) -> f64 {
        let (p, dp) = self.poly.value_and_derivative(x);
        let w = x.powi(self.two_l) * (-x).exp() * self.inv_two_eta;
        // w′/w = 2l/x - 1.
        w * p * ((f64::from(self.two_l) / x - 1.0) * p + 2.0 * dp)
    }

    /// `derivative² / value`, written as `w_exp x^{2l-2} [(2l-x)p + 2xp′]²`
    /// so roots of `p` cancel exactly.
    fn gradient_quadratic(&self, x: f64) -> f64 {
        let (p, dp) = self.poly.value_and_derivative(x);
        let w_exp = (-x).exp() * self.inv_two_eta;
        if self.two_l == 0 {
            return w_exp * (p - 2.0 * dp).powi(2);
        }
        let bracket = (f64::from(self.two_l) - x) * p + 2.0 * x * dp;
        w_exp * x.powi(self.two_l - 2) * bracket * bracket
    }
}

/// Dimensionless momentum radial density
/// `2^m (t²/u)^l u^{-(m-l)} c²(y)` with `u = 1+t²`, `y = (1-t²)/u` and
/// `m = 2l+D+1`, normalized against `t^{D-1} dt`.
#[derive(Debug, Clone, Copy)]
struct MomentumRadial {
    l: i32,
    m: i32,
    poly: GegenbauerSpec,
}

impl MomentumRadial {
    fn new(state: &HyperState) -> Self {
        let l = state.l() as i32;
        Self {
            l,
            m: 2 * l + state.dimension() as i32 + 1,
            poly: *state.momentum_shape().polynomial(),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        // y is decreasing in t, so roots map to t = √((1-y)/(1+y)).
        let mut points: Vec<f64> = roots_of(&self.poly)
            .iter()
            .map(|y| ((1.0 - y) / (1.0 + y)).sqrt())
            .collect();
        points.sort_by(f64::total_cmp);
        points
    }

    fn envelope(&self, t: f64) -> f64 {
        let u = 1.0 + t * t;
        2f64.powi(self.m) * (t * t / u).powi(self.l) * u.powi(self.l - self.m)
    }

    fn value(&self, t: f64) -> f64 {
        let u = 1.0 + t * t;
        let (c, _) = self.poly.value_and_derivative((1.0 - t * t) / u);
        self.envelope(t) * c * c
    }

    /// Analytic derivative; the exact-square gradient forms below were
    /// derived from it, and the tests cross-check both against central
    /// differences.
    #[cfg(test)]
    fn derivative(&self, t: f64) -> f64 {
        let u = 1.0 + t * t;
        let (c, dc) = self.poly.value_and_derivative((1.0 - t * t) / u);
        let dy = -4.0 * t / (u * u);
        // W′/W = 2l/t - 2mt/u.
        let ratio = 2.0 * f64::from(self.l) / t - 2.0 * f64::from(self.m) * t / u;
        self.envelope(t) * c * (ratio * c + 2.0 * dc * dy)
    }

    /// `derivative² / value` as an exact square; finite at roots of `c`.
    fn gradient_quadratic(&self, t: f64) -> f64 {
        let u = 1.0 + t * t;
        let (c, dc) = self.poly.value_and_derivative((1.0 - t * t) / u);
        let dy = -4.0 * t / (u * u);
        let scale = 2f64.powi(self.m) * u.powi(-self.m);
        if self.l == 0 {
            let bracket = -2.0 * f64::from(self.m) * t / u * c + 2.0 * dc * dy;
            return scale * bracket * bracket;
        }
        let bracket = (2.0 * f64::from(self.l) - 2.0 * f64::from(self.m) * t * t / u) * c
            + 2.0 * t * dc * dy;
        scale * t.powi(2 * self.l - 2) * bracket * bracket
    }
}

/// One polar-angle density factor `c²(cos θ) sin^{2μ'}θ`, normalized
/// against `sin^{D-1-j}θ dθ`.
#[derive(Debug, Clone, Copy)]
struct AngularRadial {
    mu_next: i32,
    /// Exponent of the factor's own measure, `D-1-j`.
    measure_power: i32,
    poly: GegenbauerSpec,
}

impl AngularRadial {
    fn breakpoints(&self) -> Vec<f64> {
        let mut points: Vec<f64> = roots_of(&self.poly).iter().map(|x| x.acos()).collect();
        points.sort_by(f64::total_cmp);
        points
    }

    /// A factor with `μ_j = 0` is identically constant and contributes
    /// nothing to gradients.
    fn is_constant(&self) -> bool {
        self.poly.degree() == 0 && self.mu_next == 0
    }

    fn value(&self, theta: f64) -> f64 {
        let (c, _) = self.poly.value_and_derivative(theta.cos());
        c * c * theta.sin().powi(2 * self.mu_next)
    }

    /// Analytic derivative; the exact-square gradient forms below were
    /// derived from it, and the tests cross-check both against central
    /// differences.
    #[cfg(test)]
    fn derivative(&self, theta: f64) -> f64 {
        let (s, co) = theta.sin_cos();
        let (c, dc) = self.poly.value_and_derivative(co);
        if self.mu_next == 0 {
            return -2.0 * s * c * dc;
        }
        s.powi(2 * self.mu_next - 1)
            * c
            * (2.0 * f64::from(self.mu_next) * co * c - 2.0 * s * s * dc)
    }

    /// `derivative² / value` as an exact square; finite at roots of `c`.
    fn gradient_quadratic(&self, theta: f64) -> f64 {
        let (s, co) = theta.sin_cos();
        let (c, dc) = self.poly.value_and_derivative(co);
        if self.mu_next == 0 {
            return 4.0 * s * s * dc * dc;
        }
        let bracket = 2.0 * f64::from(self.mu_next) * co * c - 2.0 * s * s * dc;
        s.powi(2 * self.mu_next - 2) * bracket * bracket
    }
}

fn angular_parts(state: &HyperState) -> Vec<AngularRadial> {
    state
        .angular_factors()
        .iter()
        .map(|f| AngularRadial {
            mu_next: f.mu_pair().1 as i32,
            measure_power: (state.dimension() - 1 - f.axis()) as i32,
            poly: f.polynomial(),
        })
        .collect()
}

/// `∫ f(x) x^{power} dx` over the half line with the factor's breakpoints.
fn half_line_integral<F: Fn(f64) -> f64>(
    f: F,
    power: i32,
    breakpoints: &[f64],
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let interval = Interval::half_line(0.0).with_breakpoints(breakpoints);
    integrate_adaptive(move |x| f(x) * x.powi(power), &interval, q).map(Measured::from)
}

/// `∫ f(θ) sin^{power}θ dθ` over `(0, π)` with the factor's breakpoints.
fn polar_integral<F: Fn(f64) -> f64>(
    f: F,
    power: i32,
    breakpoints: &[f64],
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let interval = Interval::finite(0.0, std::f64::consts::PI).with_breakpoints(breakpoints);
    integrate_adaptive(move |theta| f(theta) * theta.sin().powi(power), &interval, q)
        .map(Measured::from)
}

/// Dimensionless radial norm `∫ shape x^{D-1} dx` for the requested space.
fn radial_norm(
    state: &HyperState,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, QuadError> {
    let power = state.dimension() as i32 - 1;
    match space {
        Space::Position => {
            let f = PositionRadial::new(state);
            half_line_integral(move |x| f.value(x), power, &f.breakpoints(), q)
        }
        Space::Momentum => {
            let f = MomentumRadial::new(state);
            half_line_integral(move |t| f.value(t), power, &f.breakpoints(), q)
        }
    }
}

/// Product of the polar-angle factor norms (each is 1 up to quadrature
/// error; the azimuthal factor is exactly 1).
fn angular_norm(state: &HyperState, q: &QuadratureSpec) -> Result<Measured, QuadError> {
    let mut norm = Measured::exact(1.0);
    for factor in angular_parts(state) {
        let part = polar_integral(
            move |theta| factor.value(theta),
            factor.measure_power,
            &factor.breakpoints(),
            q,
        )?;
        norm = norm * part;
    }
    Ok(norm)
}

/// `∫ density` over all of space; equals 1 for every valid state.
pub fn oracle_normalization(
    state: &HyperState,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    Ok(radial_norm(state, space, q)? * angular_norm(state, q)?)
}

/// Radial moment `⟨r^k⟩` or `⟨p^k⟩` by direct quadrature.
pub fn oracle_moment(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    k: i32,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    let d = state.dimension() as i32;
    let two_l = 2 * state.l() as i32;
    // The integrand opens as x^{k+D-1+2l} at the origin; the momentum
    // density additionally decays only algebraically, like t^{-(2l+2D+2)}.
    let diverges = k + d + two_l <= 0
        || (space == Space::Momentum && k >= d + two_l + 2);
    if diverges {
        return Err(OracleError::DivergentMoment { k, space });
    }
    let power = k + d - 1;
    let (dimensionless, scale) = match space {
        Space::Position => {
            let f = PositionRadial::new(state);
            let moment = half_line_integral(move |x| f.value(x), power, &f.breakpoints(), q)?;
            (moment, (state.eta() / (2.0 * z.value())).powi(k))
        }
        Space::Momentum => {
            let f = MomentumRadial::new(state);
            let moment = half_line_integral(move |t| f.value(t), power, &f.breakpoints(), q)?;
            (moment, (z.value() / state.eta()).powi(k))
        }
    };
    Ok(dimensionless * angular_norm(state, q)? * scale)
}

/// Variance `⟨r²⟩ - ⟨r⟩²` (or the momentum analog) from oracle moments.
pub fn oracle_variance(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    let m1 = oracle_moment(state, z, space, 1, q)?;
    let m2 = oracle_moment(state, z, space, 2, q)?;
    Ok(Measured {
        value: m2.value - m1.value * m1.value,
        error_estimate: m2.error_estimate + 2.0 * m1.value.abs() * m1.error_estimate,
    })
}

/// `-t ln t` extended by continuity to `t = 0`.
fn neg_t_ln_t(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        -t * t.ln()
    }
}

/// Shannon entropy `-∫ density ln density` over all of space.
///
/// The product density splits the entropy into one term per factor plus
/// the azimuthal constant `ln 2π`. The dimensionless substitution shifts
/// the radial term by the exact Jacobian `±D ln(scale)`.
pub fn oracle_entropy(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    let d = state.dimension() as f64;
    let power = state.dimension() as i32 - 1;
    let (radial, shift) = match space {
        Space::Position => {
            let f = PositionRadial::new(state);
            let s = half_line_integral(move |x| neg_t_ln_t(f.value(x)), power, &f.breakpoints(), q)?;
            // R(r) = λ^{-D} shape(r/λ): the log picks up D ln λ.
            (s, d * (state.eta() / (2.0 * z.value())).ln())
        }
        Space::Momentum => {
            let f = MomentumRadial::new(state);
            let s = half_line_integral(move |t| neg_t_ln_t(f.value(t)), power, &f.breakpoints(), q)?;
            (s, d * (z.value() / state.eta()).ln())
        }
    };
    let mut total = radial + Measured::exact(shift + std::f64::consts::TAU.ln());
    for factor in angular_parts(state) {
        let part = polar_integral(
            move |theta| neg_t_ln_t(factor.value(theta)),
            factor.measure_power,
            &factor.breakpoints(),
            q,
        )?;
        total = total + part;
    }
    Ok(total)
}

/// Disequilibrium `∫ density²` over all of space.
pub fn oracle_disequilibrium(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    let d = state.dimension() as i32;
    let power = d - 1;
    let (radial, scale) = match space {
        Space::Position => {
            let f = PositionRadial::new(state);
            let r = half_line_integral(move |x| f.value(x).powi(2), power, &f.breakpoints(), q)?;
            (r, (2.0 * z.value() / state.eta()).powi(d))
        }
        Space::Momentum => {
            let f = MomentumRadial::new(state);
            let r = half_line_integral(move |t| f.value(t).powi(2), power, &f.breakpoints(), q)?;
            (r, (state.eta() / z.value()).powi(d))
        }
    };
    let mut total = radial * (scale / std::f64::consts::TAU);
    for factor in angular_parts(state) {
        let part = polar_integral(
            move |theta| factor.value(theta).powi(2),
            factor.measure_power,
            &factor.breakpoints(),
            q,
        )?;
        total = total * part;
    }
    Ok(total)
}

/// Fisher information `∫ |∇ density|² / density` over all of space.
///
/// The gradient splits along the coordinates: a radial term, plus one term
/// per polar angle weighted by `⟨r^{-2}⟩` and the chain of `⟨sin^{-2}θ⟩`
/// expectations of the preceding factors. The azimuthal derivative
/// vanishes identically. Each 1-D integrand is an exact square.
pub fn oracle_fisher(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    q: &QuadratureSpec,
) -> Result<Measured, OracleError> {
    let d = state.dimension() as i32;
    let power = d - 1;
    let factors = angular_parts(state);
    let last_active = factors.iter().rposition(|f| !f.is_constant());
    // ⟨x^{-2}⟩ multiplies the angular terms only; when every factor is
    // flat it must not even be computed, since its integrand opens as
    // x^{D-3+2l} and diverges for D = 2, l = 0.
    let (radial, inverse_square, scale) = match space {
        Space::Position => {
            let f = PositionRadial::new(state);
            let grad =
                half_line_integral(move |x| f.gradient_quadratic(x), power, &f.breakpoints(), q)?;
            let inv2 = if last_active.is_some() {
                half_line_integral(move |x| f.value(x), power - 2, &f.breakpoints(), q)?
            } else {
                Measured::exact(0.0)
            };
            let lambda = state.eta() / (2.0 * z.value());
            (grad, inv2, lambda.powi(-2))
        }
        Space::Momentum => {
            let f = MomentumRadial::new(state);
            let grad =
                half_line_integral(move |t| f.gradient_quadratic(t), power, &f.breakpoints(), q)?;
            let inv2 = if last_active.is_some() {
                half_line_integral(move |t| f.value(t), power - 2, &f.breakpoints(), q)?
            } else {
                Measured::exact(0.0)
            };
            (grad, inv2, (state.eta() / z.value()).powi(2))
        }
    };

    let mut angular_total = Measured::exact(0.0);
    if let Some(last_active) = last_active {
        // Running product of ⟨sin^{-2}θ_j⟩ over the factors preceding the
        // current axis; those expectations converge because every factor
        // ahead of an active one carries μ' ≥ 1.
        let mut chain = Measured::exact(1.0);
        for (index, factor) in factors.iter().take(last_active + 1).enumerate() {
            let factor = *factor;
            if !factor.is_constant() {
                let term = polar_integral(
                    move |theta| factor.gradient_quadratic(theta),
                    factor.measure_power,
                    &factor.breakpoints(),
                    q,
                )?;
                angular_total = angular_total + chain * term;
            }
            if index < last_active {
                let sin_inv2 = polar_integral(
                    move |theta| factor.value(theta),
                    factor.measure_power - 2,
                    &factor.breakpoints(),
                    q,
                )?;
                chain = chain * sin_inv2;
            }
        }
        angular_total = inverse_square * angular_total;
    }
    Ok((radial + angular_total) * scale)
}

//! Hydrogenic bound states in D dimensions and their probability densities.
//!
//! A state is the hyperquantum-number chain `(n, μ₁, ..., μ_{D-1})` with
//! `n-1 ≥ μ₁ ≥ ... ≥ μ_{D-1} ≥ 0`; `μ₁` plays the role of `l` and `μ_{D-1}`
//! of `|m|`. Both densities factorize as
//!
//! `density(r, θ₁..θ_{D-2}) = radial(r) · (1/2π) · ∏_j F_j(θ_j)`
//!
//! and this module exposes exactly those factors: dimensionless radial
//! shapes (position in `x = r/λ`, momentum in `t = ηp/Z`), per-angle
//! factors, and the closed-form circular-state densities as an independent
//! evaluation path.

use thiserror::Error;

use crate::orthopoly::{roots_of, GegenbauerSpec, LaguerreSpec};
use crate::specfun::{log_gamma_pos, LN_PI};

/// Validation failures for states and evaluation points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("dimension must be at least 2, got {d}")]
    DimensionTooSmall { d: usize },
    #[error("principal quantum number must be at least 1")]
    PrincipalQuantumNumberZero,
    #[error("mu chain must have D-1 = {expected} entries, got {got}")]
    MuLengthMismatch { expected: usize, got: usize },
    #[error("mu_1 = {l} exceeds n-1 = {}", n - 1)]
    AngularMomentumTooLarge { l: u32, n: u32 },
    #[error("mu chain must be non-increasing: mu_{index} = {value} < mu_{} = {next}", index + 1)]
    ChainViolation { index: usize, value: u32, next: u32 },
    #[error("nuclear charge must be positive and finite, got {z}")]
    InvalidNuclearCharge { z: f64 },
    #[error("radius must be non-negative, got {r}")]
    NegativeRadius { r: f64 },
    #[error("momentum must be non-negative, got {p}")]
    NegativeMomentum { p: f64 },
    #[error("polar angle must lie in [0, pi], got {theta}")]
    AngleOutOfRange { theta: f64 },
    #[error("expected {expected} polar angles for D = {d}, got {got}")]
    AngleCountMismatch { d: usize, expected: usize, got: usize },
}

/// A validated hydrogenic bound state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperState {
    d: usize,
    n: u32,
    mu: Vec<u32>,
}

/// The nuclear charge `Z > 0` in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuclearCharge(f64);

impl NuclearCharge {
    pub fn new(z: f64) -> Result<Self, StateError> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(StateError::InvalidNuclearCharge { z });
        }
        Ok(NuclearCharge(z))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Scale parameters of a state for a given nuclear charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Grand principal quantum number `η = n + (D-3)/2`.
    pub eta: f64,
    /// Grand orbital quantum number `L = l + (D-3)/2` (half-integer for
    /// even D; `-1/2` for the two-dimensional ground state).
    pub big_l: f64,
    /// Length scale `λ = η/(2Z)` in atomic units.
    pub lambda: f64,
    /// Bound-state energy `E = -Z²/η²`.
    pub energy: f64,
}

/// Checks the hyperquantum-number chain and builds the state.
///
/// Each failure mode is reported distinctly: dimension, `n`, chain length,
/// `l ≤ n-1`, and the first index where monotonicity breaks.
pub fn validate_state(d: usize, n: u32, mu: &[u32]) -> Result<HyperState, StateError> {
    if d < 2 {
        return Err(StateError::DimensionTooSmall { d });
    }
    if n == 0 {
        return Err(StateError::PrincipalQuantumNumberZero);
    }
    if mu.len() != d - 1 {
        return Err(StateError::MuLengthMismatch {
            expected: d - 1,
            got: mu.len(),
        });
    }
    if mu[0] > n - 1 {
        return Err(StateError::AngularMomentumTooLarge { l: mu[0], n });
    }
    for (i, pair) in mu.windows(2).enumerate() {
        if pair[0] < pair[1] {
            return Err(StateError::ChainViolation {
                index: i + 1,
                value: pair[0],
                next: pair[1],
            });
        }
    }
    Ok(HyperState {
        d,
        n,
        mu: mu.to_vec(),
    })
}

impl HyperState {
    /// See [`validate_state`].
    pub fn new(d: usize, n: u32, mu: &[u32]) -> Result<Self, StateError> {
        validate_state(d, n, mu)
    }

    /// The circular state of the manifold: `μ_i = n-1` for every axis.
    pub fn circular(d: usize, n: u32) -> Result<Self, StateError> {
        if d < 2 {
            return Err(StateError::DimensionTooSmall { d });
        }
        if n == 0 {
            return Err(StateError::PrincipalQuantumNumberZero);
        }
        validate_state(d, n, &vec![n - 1; d - 1])
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    /// `l = μ₁`.
    pub fn l(&self) -> u32 {
        self.mu[0]
    }

    /// `|m| = μ_{D-1}`.
    pub fn m_abs(&self) -> u32 {
        *self.mu.last().expect("chain has D-1 >= 1 entries")
    }

    pub fn is_circular(&self) -> bool {
        self.mu.iter().all(|&m| m == self.n - 1)
    }

    /// `η = n + (D-3)/2`, independent of Z.
    pub fn eta(&self) -> f64 {
        self.n as f64 + (self.d as f64 - 3.0) / 2.0
    }

    /// `L = l + (D-3)/2`, independent of Z.
    pub fn big_l(&self) -> f64 {
        self.l() as f64 + (self.d as f64 - 3.0) / 2.0
    }

    /// Degree of the radial polynomials, `η - L - 1 = n - l - 1`.
    pub fn radial_degree(&self) -> usize {
        (self.n - 1 - self.l()) as usize
    }

    /// The per-angle factors of `|Y|²`, one for each axis `j = 1..D-2`;
    /// empty in two dimensions, where `|Y|² = 1/2π` alone.
    pub fn angular_factors(&self) -> Vec<AngularFactorSpec> {
        (1..=self.d.saturating_sub(2))
            .map(|j| AngularFactorSpec {
                j,
                alpha: (self.d as f64 - j as f64 - 1.0) / 2.0,
                mu_j: self.mu[j - 1],
                mu_next: self.mu[j],
            })
            .collect()
    }

    /// The dimensionless position radial profile in `x = r/λ`.
    pub fn position_shape(&self) -> PositionRadialShape {
        let alpha = 2.0 * self.big_l() + 1.0;
        PositionRadialShape {
            two_l: 2 * self.l() as i32,
            inv_two_eta: 0.5 / self.eta(),
            poly: LaguerreSpec::new(self.radial_degree(), alpha)
                .expect("alpha = 2L+1 >= 0 for D >= 2"),
        }
    }

    /// The dimensionless momentum radial profile in `t = ηp/Z`.
    pub fn momentum_shape(&self) -> MomentumRadialShape {
        MomentumRadialShape {
            l: self.l() as i32,
            d: self.d as i32,
            poly: GegenbauerSpec::new(self.radial_degree(), self.big_l() + 1.0)
                .expect("lambda = L+1 >= 1/2 for D >= 2"),
        }
    }
}

/// `η, L, λ, E` for a state and charge.
pub fn derived_params(state: &HyperState, z: NuclearCharge) -> DerivedParams {
    let eta = state.eta();
    let zv = z.value();
    DerivedParams {
        eta,
        big_l: state.big_l(),
        lambda: eta / (2.0 * zv),
        energy: -zv * zv / (eta * eta),
    }
}

/// One factor of the hyperspherical harmonic density: axis index `j`,
/// Gegenbauer parameter offset `α_j = (D-j-1)/2`, and the adjacent chain
/// entries `μ_j, μ_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularFactorSpec {
    j: usize,
    alpha: f64,
    mu_j: u32,
    mu_next: u32,
}

impl AngularFactorSpec {
    pub fn axis(&self) -> usize {
        self.j
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu_pair(&self) -> (u32, u32) {
        (self.mu_j, self.mu_next)
    }

    /// The Gegenbauer polynomial of this factor: degree `μ_j - μ_{j+1}`,
    /// parameter `α_j + μ_{j+1}`.
    pub fn polynomial(&self) -> GegenbauerSpec {
        GegenbauerSpec::new(
            (self.mu_j - self.mu_next) as usize,
            self.alpha + self.mu_next as f64,
        )
        .expect("alpha_j + mu_{j+1} >= 1/2")
    }

    /// `F_j(θ) = C̃²(cos θ)·(sin θ)^{2μ_{j+1}}`, normalized so that
    /// `∫₀^π F_j (sin θ)^{D-1-j} dθ = 1`.
    pub fn value(&self, theta: f64) -> f64 {
        let (f, _) = self.value_and_derivative(theta);
        f
    }

    /// The factor and its θ-derivative in one pass.
    pub fn value_and_derivative(&self, theta: f64) -> (f64, f64) {
        let (sin_t, cos_t) = theta.sin_cos();
        let sin_t = sin_t.max(0.0);
        let (p, dp) = self.polynomial().value_and_derivative(cos_t);
        let e = 2 * self.mu_next as i32;
        let sin_pow = sin_t.powi(e);
        let value = p * p * sin_pow;
        // d/dθ [P²(cos θ) sin^{2μ'}θ]
        //   = -2 P P' sin θ · sin^{2μ'}θ + 2μ' P² sin^{2μ'-1}θ cos θ.
        let derivative = if self.mu_next == 0 {
            -2.0 * p * dp * sin_t
        } else {
            -2.0 * p * dp * sin_t * sin_pow + e as f64 * p * p * sin_t.powi(e - 1) * cos_t
        };
        (value, derivative)
    }

    /// cos θ positions of the polynomial roots, the log-singular points of
    /// entropy-like integrands in θ (as `θ = acos`, increasing in θ).
    pub fn theta_breakpoints(&self) -> Vec<f64> {
        let mut thetas: Vec<f64> = roots_of(&self.polynomial())
            .into_iter()
            .map(f64::acos)
            .collect();
        thetas.sort_by(f64::total_cmp);
        thetas
    }
}

/// Checked evaluation of a single angular factor.
pub fn angular_density_factor(spec: &AngularFactorSpec, theta: f64) -> Result<f64, StateError> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(StateError::AngleOutOfRange { theta });
    }
    Ok(spec.value(theta))
}

/// Dimensionless position radial profile
/// `ρ̂(x) = x^{2l} e^{-x} [L̃(x)]² / (2η)` with `∫ ρ̂ x^{D-1} dx = 1`;
/// the physical radial factor is `λ^{-D} ρ̂(r/λ)`.
#[derive(Debug, Clone, Copy)]
pub struct PositionRadialShape {
    two_l: i32,
    inv_two_eta: f64,
    poly: LaguerreSpec,
}

impl PositionRadialShape {
    pub fn value(&self, x: f64) -> f64 {
        let p = self.poly.value(x);
        x.powi(self.two_l) * (-x).exp() * p * p * self.inv_two_eta
    }

    pub fn value_and_derivative(&self, x: f64) -> (f64, f64) {
        let (p, dp) = self.poly.value_and_derivative(x);
        let w = (-x).exp() * self.inv_two_eta;
        let square = p * p;
        let bracket = 2.0 * p * dp - square;
        if self.two_l == 0 {
            (w * square, w * bracket)
        } else {
            let pow = x.powi(self.two_l);
            let pow_m1 = x.powi(self.two_l - 1);
            (
                w * pow * square,
                w * (self.two_l as f64 * pow_m1 * square + pow * bracket),
            )
        }
    }

    /// Roots of the Laguerre factor: zeros of the density, hence the
    /// integrable singularities of its entropy integrand.
    pub fn breakpoints(&self) -> Vec<f64> {
        roots_of(&self.poly)
    }

    pub fn polynomial(&self) -> &LaguerreSpec {
        &self.poly
    }
}

/// Dimensionless momentum radial profile in `t = ηp/Z`,
/// `g(t) = 2^{2L+4} t^{2l} (1+t²)^{-(2L+4)} [C̃(y)]²` with
/// `y = (1-t²)/(1+t²)` and `∫ g t^{D-1} dt = 1`; the physical radial
/// factor is `(η/Z)^D g(ηp/Z)`.
#[derive(Debug, Clone, Copy)]
pub struct MomentumRadialShape {
    l: i32,
    d: i32,
    poly: GegenbauerSpec,
}

impl MomentumRadialShape {
    /// `2^{2L+4} = 2^{2l+D+1}`, the integer power despite half-integer L.
    fn prefactor(&self) -> f64 {
        2.0f64.powi(2 * self.l + self.d + 1)
    }

    pub fn value(&self, t: f64) -> f64 {
        let u = 1.0 + t * t;
        let y = (1.0 - t * t) / u;
        let p = self.poly.value(y);
        // t^{2l} (1+t²)^{-(2L+4)} regrouped as (t²/u)^l · u^{-(l+D+1)}
        // so every factor stays O(1) even at D = 15, t ~ 10³.
        let s = t * t / u;
        self.prefactor() * s.powi(self.l) * u.powi(-(self.l + self.d + 1)) * p * p
    }

    pub fn value_and_derivative(&self, t: f64) -> (f64, f64) {
        let u = 1.0 + t * t;
        let y = (1.0 - t * t) / u;
        let (p, dp) = self.poly.value_and_derivative(y);
        let square = p * p;
        let m = 2 * self.l + self.d + 1; // exponent of (1+t²)
        let u_pow = u.powi(-m);
        let k = self.prefactor();

        let t_pow = if self.l == 0 { 1.0 } else { t.powi(2 * self.l) };
        let value = k * t_pow * u_pow * square;

        // g' = K u^{-m} [ 2l t^{2l-1} P² - (2m/u) t^{2l+1} P² - (8/u²) t^{2l+1} P P' ]
        // from y'(t) = -4t/u².
        let poly_term = -(2.0 * m as f64 / u) * t * square - (8.0 / (u * u)) * t * p * dp;
        let derivative = if self.l == 0 {
            k * u_pow * poly_term
        } else {
            let t_pow_m1 = t.powi(2 * self.l - 1);
            k * u_pow * (2.0 * self.l as f64 * t_pow_m1 * square + t_pow * poly_term)
        };
        (value, derivative)
    }

    /// Zeros of the density in `t`, mapped from the Gegenbauer roots in `y`
    /// through `t = sqrt((1-y)/(1+y))`, increasing.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = roots_of(&self.poly)
            .into_iter()
            .map(|y| ((1.0 - y) / (1.0 + y)).sqrt())
            .collect();
        ts.sort_by(f64::total_cmp);
        ts
    }

    pub fn polynomial(&self) -> &GegenbauerSpec {
        &self.poly
    }
}

/// Radial factor of the position density at radius `r`; the full density
/// is this times `|Y|²`.
pub fn position_radial_density(
    state: &HyperState,
    z: NuclearCharge,
    r: f64,
) -> Result<f64, StateError> {
    if r.is_nan() || r < 0.0 {
        return Err(StateError::NegativeRadius { r });
    }
    let lambda = derived_params(state, z).lambda;
    Ok(lambda.powi(-(state.d as i32)) * state.position_shape().value(r / lambda))
}

/// Radial factor of the momentum density at momentum `p`; the full density
/// is this times `|Y|²`.
pub fn momentum_radial_density(
    state: &HyperState,
    z: NuclearCharge,
    p: f64,
) -> Result<f64, StateError> {
    if p.is_nan() || p < 0.0 {
        return Err(StateError::NegativeMomentum { p });
    }
    let eta = state.eta();
    let scale = eta / z.value();
    Ok(scale.powi(state.d as i32) * state.momentum_shape().value(scale * p))
}

fn check_angles(d: usize, angles: &[f64]) -> Result<(), StateError> {
    if angles.len() != d - 2 {
        return Err(StateError::AngleCountMismatch {
            d,
            expected: d - 2,
            got: angles.len(),
        });
    }
    for &theta in angles {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(StateError::AngleOutOfRange { theta });
        }
    }
    Ok(())
}

/// `|Y(θ₁..θ_{D-2})|² = (1/2π) ∏_j F_j(θ_j)`.
pub fn harmonic_density(state: &HyperState, angles: &[f64]) -> Result<f64, StateError> {
    check_angles(state.d, angles)?;
    let mut value = 0.5 / std::f64::consts::PI;
    for (factor, &theta) in state.angular_factors().iter().zip(angles) {
        value *= factor.value(theta);
    }
    Ok(value)
}

/// The full position density through the generic factorized pipeline.
pub fn position_density(
    state: &HyperState,
    z: NuclearCharge,
    r: f64,
    angles: &[f64],
) -> Result<f64, StateError> {
    Ok(position_radial_density(state, z, r)? * harmonic_density(state, angles)?)
}

/// The full momentum density through the generic factorized pipeline.
pub fn momentum_density(
    state: &HyperState,
    z: NuclearCharge,
    p: f64,
    angles: &[f64],
) -> Result<f64, StateError> {
    Ok(momentum_radial_density(state, z, p)? * harmonic_density(state, angles)?)
}

/// `exponent · ln(base)` for integer exponents, `None` when the power is an
/// exact zero (base 0 with positive exponent).
fn log_int_pow(base: f64, exponent: u32) -> Option<f64> {
    if exponent == 0 {
        Some(0.0)
    } else if base == 0.0 {
        None
    } else {
        Some(exponent as f64 * base.ln())
    }
}

/// Closed-form circular-state position density, evaluated in log space.
///
/// This path never touches the polynomial machinery, so it can certify the
/// generic pipeline (and vice versa).
pub fn circular_position_density(
    n: u32,
    d: usize,
    z: NuclearCharge,
    r: f64,
    angles: &[f64],
) -> Result<f64, StateError> {
    if d < 2 {
        return Err(StateError::DimensionTooSmall { d });
    }
    if n == 0 {
        return Err(StateError::PrincipalQuantumNumberZero);
    }
    if r.is_nan() || r < 0.0 {
        return Err(StateError::NegativeRadius { r });
    }
    check_angles(d, angles)?;

    let nf = n as f64;
    let df = d as f64;
    let eta = nf + (df - 3.0) / 2.0;
    let x = 2.0 * z.value() * r / eta;

    let mut log_density = (df + 2.0 - 2.0 * nf) * std::f64::consts::LN_2
        + df * z.value().ln()
        - 0.5 * (df - 1.0) * LN_PI
        - df * (2.0 * nf + df - 3.0).ln()
        - log_gamma_pos(nf)
        - log_gamma_pos(nf + (df - 1.0) / 2.0)
        - x;
    let power = 2 * (n - 1);
    match log_int_pow(x, power) {
        Some(term) => log_density += term,
        None => return Ok(0.0),
    }
    for &theta in angles {
        match log_int_pow(theta.sin().max(0.0), power) {
            Some(term) => log_density += term,
            None => return Ok(0.0),
        }
    }
    Ok(log_density.exp())
}

/// Closed-form circular-state momentum density, evaluated in log space.
pub fn circular_momentum_density(
    n: u32,
    d: usize,
    z: NuclearCharge,
    p: f64,
    angles: &[f64],
) -> Result<f64, StateError> {
    if d < 2 {
        return Err(StateError::DimensionTooSmall { d });
    }
    if n == 0 {
        return Err(StateError::PrincipalQuantumNumberZero);
    }
    if p.is_nan() || p < 0.0 {
        return Err(StateError::NegativeMomentum { p });
    }
    check_angles(d, angles)?;

    let nf = n as f64;
    let df = d as f64;
    let eta = nf + (df - 3.0) / 2.0;
    let t = eta * p / z.value();

    let mut log_density = 2.0 * (nf - 1.0) * std::f64::consts::LN_2
        + df * (2.0 * nf + df - 3.0).ln()
        + log_gamma_pos(nf + (df - 1.0) / 2.0)
        - df * z.value().ln()
        - 0.5 * (df + 1.0) * LN_PI
        - log_gamma_pos(nf)
        - (2.0 * nf + df - 1.0) * (1.0 + t * t).ln();
    let power = 2 * (n - 1);
    match log_int_pow(t, power) {
        Some(term) => log_density += term,
        None => return Ok(0.0),
    }
    for &theta in angles {
        match log_int_pow(theta.sin().max(0.0), power) {
            Some(term) => log_density += term,
            None => return Ok(0.0),
        }
    }
    Ok(log_density.exp())
}

/// Every valid state with `n ≤ n_max` for each requested dimension: the
/// standing test battery for normalization and invariance sweeps.
pub fn battery(dims: &[usize], n_max: u32) -> Vec<HyperState> {
    fn extend_chain(d: usize, n: u32, chain: &mut Vec<u32>, out: &mut Vec<HyperState>) {
        if chain.len() == d - 1 {
            out.push(HyperState::new(d, n, chain).expect("chain built non-increasing"));
            return;
        }
        let cap = chain.last().copied().unwrap_or(n - 1);
        for value in (0..=cap).rev() {
            chain.push(value);
            extend_chain(d, n, chain, out);
            chain.pop();
        }
    }

    let mut out = Vec::new();
    for &d in dims {
        for n in 1..=n_max {
            extend_chain(d, n, &mut Vec::new(), &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_adaptive, Interval, QuadratureSpec};
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn z(v: f64) -> NuclearCharge {
        NuclearCharge::new(v).unwrap()
    }

    #[test]
    fn validation_accepts_and_rejects_chains() {
        assert!(validate_state(3, 2, &[1, 1]).is_ok());
        assert!(validate_state(4, 3, &[2, 1, 1]).is_ok());

        assert!(matches!(
            validate_state(3, 2, &[2, 0]),
            Err(StateError::AngularMomentumTooLarge { l: 2, n: 2 })
        ));
        assert!(matches!(
            validate_state(4, 3, &[1, 2, 0]),
            Err(StateError::ChainViolation { index: 1, .. })
        ));
        assert!(matches!(
            validate_state(1, 1, &[]),
            Err(StateError::DimensionTooSmall { d: 1 })
        ));
        assert!(matches!(
            validate_state(3, 0, &[0, 0]),
            Err(StateError::PrincipalQuantumNumberZero)
        ));
        assert!(matches!(
            validate_state(3, 2, &[1]),
            Err(StateError::MuLengthMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn derived_params_reference_values() {
        let p = derived_params(&HyperState::new(3, 1, &[0, 0]).unwrap(), z(1.0));
        assert_eq!(
            (p.eta, p.big_l, p.lambda, p.energy),
            (1.0, 0.0, 0.5, -1.0)
        );

        let p = derived_params(&HyperState::new(2, 1, &[0]).unwrap(), z(1.0));
        assert_eq!(
            (p.eta, p.big_l, p.lambda, p.energy),
            (0.5, -0.5, 0.25, -4.0)
        );

        let p = derived_params(&HyperState::new(5, 3, &[2, 2, 2, 2]).unwrap(), z(2.0));
        assert_eq!((p.eta, p.big_l, p.lambda, p.energy), (4.0, 3.0, 1.0, -0.25));
    }

    #[test]
    fn ground_state_densities_match_hydrogen() {
        let gs = HyperState::new(3, 1, &[0, 0]).unwrap();
        let radial0 = position_radial_density(&gs, z(1.0), 0.0).unwrap();
        assert_relative_eq!(radial0, 4.0, max_relative = 1e-13);

        let inv_pi = 1.0 / std::f64::consts::PI;
        for r in [0.0, 0.5, 2.0] {
            let full = position_density(&gs, z(1.0), r, &[1.1]).unwrap();
            assert_relative_eq!(full, inv_pi * (-2.0 * r).exp(), max_relative = 1e-12);
        }
        for p in [0.0, 1.0, 2.5] {
            let full = momentum_density(&gs, z(1.0), p, &[0.4]).unwrap();
            let expected = 8.0 * inv_pi * inv_pi * (1.0 + p * p).powi(-4);
            assert_relative_eq!(full, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn centrifugal_factor_vanishes_at_origin() {
        let state = HyperState::new(3, 2, &[1, 0]).unwrap();
        assert_eq!(position_radial_density(&state, z(1.0), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn angular_factor_reference_values() {
        // s-state in D = 3: the single factor is the constant 1/2.
        let s_state = HyperState::new(3, 1, &[0, 0]).unwrap();
        let factors = s_state.angular_factors();
        assert_eq!(factors.len(), 1);
        assert_relative_eq!(
            angular_density_factor(&factors[0], std::f64::consts::FRAC_PI_2).unwrap(),
            0.5,
            max_relative = 1e-13
        );

        // Circular D = 3, n = 2: factor is (3/4) sin²θ.
        let circ = HyperState::circular(3, 2).unwrap();
        let factors = circ.angular_factors();
        assert_relative_eq!(
            angular_density_factor(&factors[0], std::f64::consts::FRAC_PI_2).unwrap(),
            0.75,
            max_relative = 1e-13
        );

        assert!(angular_density_factor(&factors[0], -0.1).is_err());
        assert!(angular_density_factor(&factors[0], 3.2).is_err());
    }

    #[test]
    fn angular_factors_normalize_against_their_measure() {
        let q = QuadratureSpec::default();
        let state = HyperState::new(6, 4, &[3, 2, 2, 1, 0]).unwrap();
        for factor in state.angular_factors() {
            let weight_exp = (state.dimension() - 1 - factor.axis()) as i32;
            let f = move |theta: f64| factor.value(theta) * theta.sin().powi(weight_exp);
            let r = integrate_adaptive(f, &Interval::finite(0.0, std::f64::consts::PI), &q)
                .unwrap();
            assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn radial_shapes_normalize_against_their_measure() {
        let q = QuadratureSpec::default();
        for (d, n, mu) in [
            (2usize, 1u32, vec![0u32]),
            (3, 4, vec![1, 0]),
            (4, 3, vec![1, 1, 0]),
            (6, 2, vec![1, 1, 1, 0, 0]),
        ] {
            let state = HyperState::new(d, n, &mu).unwrap();
            let pos = state.position_shape();
            let r = integrate_adaptive(
                move |x: f64| pos.value(x) * x.powi(d as i32 - 1),
                &Interval::half_line(0.0).with_breakpoints(&pos.breakpoints()),
                &q,
            )
            .unwrap();
            assert_relative_eq!(r.value, 1.0, max_relative = 1e-9);

            let mom = state.momentum_shape();
            let r = integrate_adaptive(
                move |t: f64| mom.value(t) * t.powi(d as i32 - 1),
                &Interval::half_line(0.0).with_breakpoints(&mom.breakpoints()),
                &q,
            )
            .unwrap();
            assert_relative_eq!(r.value, 1.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn shape_derivatives_match_finite_differences() {
        let state = HyperState::new(4, 3, &[1, 1, 0]).unwrap();
        let pos = state.position_shape();
        let mom = state.momentum_shape();
        let h = 1e-6;
        for x in [0.3, 1.7, 6.0, 11.5] {
            let (_, d) = pos.value_and_derivative(x);
            let fd = (pos.value(x + h) - pos.value(x - h)) / (2.0 * h);
            assert_relative_eq!(d, fd, max_relative = 1e-6, epsilon = 1e-9);
            let (_, d) = mom.value_and_derivative(x);
            let fd = (mom.value(x + h) - mom.value(x - h)) / (2.0 * h);
            assert_relative_eq!(d, fd, max_relative = 1e-6, epsilon = 1e-9);
        }
    }

    #[test]
    fn circular_closed_forms_match_generic_pipeline() {
        let mut rng = StdRng::seed_from_u64(0x1db7);
        for (n, d) in [(1u32, 3usize), (2, 2), (3, 4), (4, 3), (2, 6)] {
            let state = HyperState::circular(d, n).unwrap();
            let charge = z(1.3);
            for _ in 0..100 {
                let r: f64 = rng.random_range(0.0..12.0);
                let p: f64 = rng.random_range(0.0..4.0);
                let angles: Vec<f64> = (0..d - 2)
                    .map(|_| rng.random_range(0.0..std::f64::consts::PI))
                    .collect();

                let generic = position_density(&state, charge, r, &angles).unwrap();
                let closed = circular_position_density(n, d, charge, r, &angles).unwrap();
                assert_relative_eq!(generic, closed, max_relative = 1e-12, epsilon = 1e-300);

                let generic = momentum_density(&state, charge, p, &angles).unwrap();
                let closed = circular_momentum_density(n, d, charge, p, &angles).unwrap();
                assert_relative_eq!(generic, closed, max_relative = 1e-12, epsilon = 1e-300);
            }
        }
    }

    #[test]
    fn circular_reference_values() {
        // n = 1, D = 3: (Z³/π) e^{-2Zr}.
        let rho = circular_position_density(1, 3, z(1.0), 0.7, &[2.0]).unwrap();
        assert_relative_eq!(
            rho,
            (-1.4f64).exp() / std::f64::consts::PI,
            max_relative = 1e-13
        );
        // n = 1, D = 3, p = 1: (8/π²)/16.
        let gamma = circular_momentum_density(1, 3, z(1.0), 1.0, &[2.0]).unwrap();
        assert_relative_eq!(
            gamma,
            0.5 / (std::f64::consts::PI * std::f64::consts::PI),
            max_relative = 1e-13
        );
    }

    #[test]
    fn z_scaling_is_exact() {
        let mut rng = StdRng::seed_from_u64(0x9e37);
        let zv = 2.5;
        for (d, n, mu) in [(4usize, 3u32, vec![1u32, 1, 0]), (2, 3, vec![1]), (3, 2, vec![1, 1])] {
            let state = HyperState::new(d, n, &mu).unwrap();
            for _ in 0..40 {
                let r: f64 = rng.random_range(0.01..8.0);
                let p: f64 = rng.random_range(0.01..4.0);
                let angles: Vec<f64> = (0..d - 2)
                    .map(|_| rng.random_range(0.0..std::f64::consts::PI))
                    .collect();

                let scaled = position_density(&state, z(zv), r, &angles).unwrap();
                let reference = position_density(&state, z(1.0), zv * r, &angles).unwrap();
                assert_relative_eq!(
                    scaled,
                    zv.powi(d as i32) * reference,
                    max_relative = 1e-12
                );

                let scaled = momentum_density(&state, z(zv), p, &angles).unwrap();
                let reference = momentum_density(&state, z(1.0), p / zv, &angles).unwrap();
                assert_relative_eq!(
                    scaled,
                    zv.powi(-(d as i32)) * reference,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn battery_enumerates_all_chains() {
        let states = battery(&[2, 3, 4, 6], 4);
        // Chains per (D, n): number of non-increasing (D-1)-tuples below n.
        assert_eq!(states.len(), 10 + 20 + 35 + 84);
        assert!(states.iter().all(|s| s.n() <= 4));
        let gs_count = states.iter().filter(|s| s.l() == 0 && s.n() == 1).count();
        assert_eq!(gs_count, 4);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_state() -> impl Strategy<Value = HyperState> {
            (2usize..8, 1u32..6).prop_flat_map(|(d, n)| {
                proptest::collection::vec(0..n, d - 1).prop_map(move |mut mu| {
                    mu.sort_unstable_by(|a, b| b.cmp(a));
                    HyperState::new(d, n, &mu).expect("sorted chain below n is valid")
                })
            })
        }

        proptest! {
            #[test]
            fn derived_quantities_stay_in_range(state in arbitrary_state()) {
                prop_assert!(state.eta() >= 0.5);
                prop_assert!(state.big_l() >= -0.5);
                prop_assert!(state.radial_degree() < state.n() as usize);
                let params = derived_params(&state, NuclearCharge::new(1.0).unwrap());
                prop_assert!(params.lambda > 0.0);
                prop_assert!(params.energy < 0.0);
            }

            #[test]
            fn densities_are_non_negative(state in arbitrary_state(), seed in 0u64..1000) {
                let mut rng = StdRng::seed_from_u64(seed);
                let charge = NuclearCharge::new(1.0).unwrap();
                let r = rng.random_range(0.0..10.0);
                let p = rng.random_range(0.0..5.0);
                let angles: Vec<f64> = (0..state.dimension() - 2)
                    .map(|_| rng.random_range(0.0..std::f64::consts::PI))
                    .collect();
                prop_assert!(position_density(&state, charge, r, &angles).unwrap() >= 0.0);
                prop_assert!(momentum_density(&state, charge, p, &angles).unwrap() >= 0.0);
            }
        }
    }
}

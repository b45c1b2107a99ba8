//! Log-gamma and digamma for positive real arguments.
//!
//! Everything downstream (polynomial norms, entropy coefficients, closed-form
//! complexities) is phrased in terms of `ln Γ` and `ψ` rather than `Γ`, so
//! that states like `n = 8, D = 15` never leave log space.

use thiserror::Error;

/// The Euler-Mascheroni constant, `-ψ(1)`.
pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// Constant value for `ln(pi)`.
pub const LN_PI: f64 = 1.1447298858494002;

/// Constant value for `ln(2 * sqrt(e / pi))`.
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452;

/// Polynomial coefficients for the Lanczos approximation of `ln Γ`.
const GAMMA_DK: &[f64] = &[
    2.4857408913875355e-5,
    1.0514237858172197,
    -3.4568709722201625,
    4.512277094668948,
    -2.9828522532357664,
    1.056397115771267,
    -1.9542877319164587e-1,
    1.709705434044412e-2,
    -5.719261174043057e-4,
    4.633994733599057e-6,
    -2.7199490848860772e-9,
];

/// Auxiliary shift used by the Lanczos approximation.
const GAMMA_R: f64 = 10.900511;

/// Domain violations of the special functions in this module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// The argument was zero, negative, or not a number.
    #[error("{function}({argument}) is undefined: argument must be positive")]
    NonPositiveArgument {
        function: &'static str,
        argument: f64,
    },
}

/// Computes `ln Γ(x)` for `x > 0` with relative accuracy close to machine
/// precision (about 1e-14 away from the zeros of `ln Γ`).
pub fn log_gamma(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x <= 0.0 {
        return Err(SpecFunError::NonPositiveArgument {
            function: "log_gamma",
            argument: x,
        });
    }
    Ok(log_gamma_pos(x))
}

/// Computes the digamma function `ψ(x) = d ln Γ(x) / dx` for `x > 0` with
/// absolute accuracy better than 1e-12.
pub fn digamma(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x <= 0.0 {
        return Err(SpecFunError::NonPositiveArgument {
            function: "digamma",
            argument: x,
        });
    }
    Ok(digamma_pos(x))
}

/// `ln Γ(x)` for arguments already known to be positive.
///
/// The implementation is derived from "An Analysis of the Lanczos Gamma
/// Approximation", Glendon Ralph Pugh, 2004 p. 116.
pub(crate) fn log_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (t.0 as f64 - x));

        // Reflection through Γ(x)Γ(1-x) = π/sin(πx); sin(πx) > 0 on (0, 1/2).
        LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / std::f64::consts::E).ln()
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (x + t.0 as f64 - 1.0));

        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).ln()
    }
}

/// `ψ(x)` for arguments already known to be positive.
///
/// Based on "Algorithm AS 103", Jose Bernardo, Applied Statistics 25(3),
/// 1976: the recurrence ψ(x) = ψ(x+1) - 1/x lifts the argument above 12,
/// where the asymptotic series in 1/x² converges past double precision.
pub(crate) fn digamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    const C: f64 = 12.0;
    const S: f64 = 1e-6;
    const S3: f64 = 1.0 / 12.0;
    const S4: f64 = 1.0 / 120.0;
    const S5: f64 = 1.0 / 252.0;
    const S6: f64 = 1.0 / 240.0;
    const S7: f64 = 1.0 / 132.0;
    const ZETA_2: f64 = 1.6449340668482264;

    if x <= S {
        return -EULER_GAMMA - 1.0 / x + ZETA_2 * x;
    }

    let mut result = 0.0;
    let mut z = x;
    while z < C {
        result -= 1.0 / z;
        z += 1.0;
    }

    let mut r = 1.0 / z;
    result += z.ln() - 0.5 * r;
    r *= r;
    result - r * (S3 - r * (S4 - r * (S5 - r * (S6 - r * S7))))
}

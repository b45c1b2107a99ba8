//! Orthonormal Laguerre and Gegenbauer polynomials.
//!
//! Both families are evaluated by their three-term recurrences directly in
//! the orthonormal normalization, so values stay O(1) and no factorial ever
//! materializes. Roots are located as eigenvalues of the symmetric Jacobi
//! matrix of the recurrence (Sturm-count bisection plus a Newton polish),
//! which is how the quadrature layer learns where entropy integrands have
//! their log singularities.

use thiserror::Error;

use crate::specfun::{log_gamma_pos, LN_PI};

/// A generalized Laguerre polynomial, orthonormal against
/// `ω_α(x) = x^α e^{-x}` on `(0, ∞)`.
///
/// The recurrence keeps the classical sign convention, i.e. the leading
/// coefficient carries `(-1)^k` and the value at the origin is positive.
/// Every use downstream squares the value, so the sign never propagates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    degree: usize,
    alpha: f64,
}

/// A Gegenbauer (ultraspherical) polynomial, orthonormal against
/// `ω*_λ(x) = (1-x²)^{λ-1/2}` on `(-1, 1)`, with positive leading
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerSpec {
    degree: usize,
    lambda: f64,
}

/// Invalid parameters or evaluation points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrthoPolyError {
    #[error("Laguerre parameter must satisfy alpha > -1, got {alpha}")]
    LaguerreParameter { alpha: f64 },
    #[error("Gegenbauer parameter must satisfy lambda > 0, got {lambda}")]
    GegenbauerParameter { lambda: f64 },
    #[error("Laguerre polynomials are evaluated on x >= 0, got {x}")]
    OutsideLaguerreSupport { x: f64 },
    #[error("Gegenbauer polynomials are evaluated on [-1, 1], got {x}")]
    OutsideGegenbauerSupport { x: f64 },
}

impl LaguerreSpec {
    pub fn new(degree: usize, alpha: f64) -> Result<Self, OrthoPolyError> {
        if alpha.is_nan() || alpha <= -1.0 {
            return Err(OrthoPolyError::LaguerreParameter { alpha });
        }
        Ok(LaguerreSpec { degree, alpha })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The orthogonality weight `x^α e^{-x}`.
    pub fn weight(&self, x: f64) -> f64 {
        x.powf(self.alpha) * (-x).exp()
    }

    /// Value of the polynomial; `x` is assumed inside the support.
    pub fn value(&self, x: f64) -> f64 {
        self.value_and_derivative(x).0
    }

    /// Value and first derivative, both from the same recurrence pass.
    pub fn value_and_derivative(&self, x: f64) -> (f64, f64) {
        // p_0 = Γ(α+1)^{-1/2}; the k -> k+1 step is
        //   p_{k+1} = [(2k+α+1-x) p_k - sqrt(k(k+α)) p_{k-1}] / sqrt((k+1)(k+α+1)).
        let alpha = self.alpha;
        let mut p = (-0.5 * log_gamma_pos(alpha + 1.0)).exp();
        let mut dp = 0.0;
        if self.degree == 0 {
            return (p, dp);
        }
        let mut p_prev = 0.0;
        let mut dp_prev = 0.0;
        for k in 0..self.degree {
            let k_f = k as f64;
            let scale = ((k_f + 1.0) * (k_f + alpha + 1.0)).sqrt();
            let mid = 2.0 * k_f + alpha + 1.0 - x;
            let low = (k_f * (k_f + alpha)).sqrt();
            let p_next = (mid * p - low * p_prev) / scale;
            let dp_next = (mid * dp - p - low * dp_prev) / scale;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
        }
        (p, dp)
    }
}

impl GegenbauerSpec {
    pub fn new(degree: usize, lambda: f64) -> Result<Self, OrthoPolyError> {
        if lambda.is_nan() || lambda <= 0.0 {
            return Err(OrthoPolyError::GegenbauerParameter { lambda });
        }
        Ok(GegenbauerSpec { degree, lambda })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The orthogonality weight `(1-x²)^{λ-1/2}`.
    pub fn weight(&self, x: f64) -> f64 {
        (1.0 - x * x).powf(self.lambda - 0.5)
    }

    /// `ln ∫ ω*_λ`, the log of the weight's total mass.
    pub fn log_weight_mass(&self) -> f64 {
        0.5 * LN_PI + log_gamma_pos(self.lambda + 0.5) - log_gamma_pos(self.lambda + 1.0)
    }

    /// Value of the polynomial; `x` is assumed inside the support.
    pub fn value(&self, x: f64) -> f64 {
        self.value_and_derivative(x).0
    }

    /// Value and first derivative, both from the same recurrence pass.
    pub fn value_and_derivative(&self, x: f64) -> (f64, f64) {
        // p_0 = m_0^{-1/2} with m_0 = ∫ ω*_λ; the recurrence is
        //   x p_k = b_{k+1} p_{k+1} + b_k p_{k-1}
        // with the Jacobi coefficients b_k below.
        let mut p = (-0.5 * self.log_weight_mass()).exp();
        let mut dp = 0.0;
        if self.degree == 0 {
            return (p, dp);
        }
        let mut p_prev = 0.0;
        let mut dp_prev = 0.0;
        let mut b = jacobi_offdiag_gegenbauer(1, self.lambda);
        for k in 0..self.degree {
            let b_next = jacobi_offdiag_gegenbauer(k + 1, self.lambda);
            let b_here = if k == 0 { 0.0 } else { b };
            let p_next = (x * p - b_here * p_prev) / b_next;
            let dp_next = (p + x * dp - b_here * dp_prev) / b_next;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
            b = b_next;
        }
        (p, dp)
    }
}

/// Off-diagonal Jacobi coefficient of the orthonormal Gegenbauer family,
/// `b_k = sqrt(k(k+2λ-1) / (4(k+λ)(k+λ-1)))` for `k >= 1`.
fn jacobi_offdiag_gegenbauer(k: usize, lambda: f64) -> f64 {
    let k_f = k as f64;
    (k_f * (k_f + 2.0 * lambda - 1.0) / (4.0 * (k_f + lambda) * (k_f + lambda - 1.0))).sqrt()
}

/// Checked evaluation of the orthonormal Laguerre polynomial `L̃_k^α(x)`.
pub fn eval_laguerre_on(spec: LaguerreSpec, x: f64) -> Result<f64, OrthoPolyError> {
    if x.is_nan() || x < 0.0 {
        return Err(OrthoPolyError::OutsideLaguerreSupport { x });
    }
    Ok(spec.value(x))
}

/// Checked evaluation of the orthonormal Gegenbauer polynomial `C̃_k^λ(x)`.
pub fn eval_gegenbauer_on(spec: GegenbauerSpec, x: f64) -> Result<f64, OrthoPolyError> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(OrthoPolyError::OutsideGegenbauerSupport { x });
    }
    Ok(spec.value(x))
}

/// A polynomial family seen through its symmetric Jacobi matrix, which is
/// all the root finder needs.
pub trait JacobiRecurrence {
    fn degree(&self) -> usize;
    /// Diagonal entry `a_k`, `0 <= k < degree`.
    fn jacobi_diagonal(&self, k: usize) -> f64;
    /// Off-diagonal entry coupling rows `k-1` and `k`, `1 <= k < degree`.
    fn jacobi_offdiagonal(&self, k: usize) -> f64;
    fn value_and_derivative(&self, x: f64) -> (f64, f64);
}

impl JacobiRecurrence for LaguerreSpec {
    fn degree(&self) -> usize {
        self.degree
    }

    fn jacobi_diagonal(&self, k: usize) -> f64 {
        2.0 * k as f64 + self.alpha + 1.0
    }

    fn jacobi_offdiagonal(&self, k: usize) -> f64 {
        (k as f64 * (k as f64 + self.alpha)).sqrt()
    }

    fn value_and_derivative(&self, x: f64) -> (f64, f64) {
        LaguerreSpec::value_and_derivative(self, x)
    }
}

impl JacobiRecurrence for GegenbauerSpec {
    fn degree(&self) -> usize {
        self.degree
    }

    fn jacobi_diagonal(&self, _k: usize) -> f64 {
        0.0
    }

    fn jacobi_offdiagonal(&self, k: usize) -> f64 {
        jacobi_offdiag_gegenbauer(k, self.lambda)
    }

    fn value_and_derivative(&self, x: f64) -> (f64, f64) {
        GegenbauerSpec::value_and_derivative(self, x)
    }
}

/// All real roots of the degree-`k` polynomial, strictly increasing, each
/// accurate to 1e-12 or better. Empty for constants.
pub fn roots_of<P: JacobiRecurrence>(spec: &P) -> Vec<f64> {
    let n = spec.degree();
    if n == 0 {
        return Vec::new();
    }
    let diag: Vec<f64> = (0..n).map(|k| spec.jacobi_diagonal(k)).collect();
    let offdiag: Vec<f64> = (0..n)
        .map(|k| if k == 0 { 0.0 } else { spec.jacobi_offdiagonal(k) })
        .collect();

    // Gershgorin bounds enclose the whole spectrum.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..n {
        let radius = offdiag[k].abs() + if k + 1 < n { offdiag[k + 1].abs() } else { 0.0 };
        lo = lo.min(diag[k] - radius);
        hi = hi.max(diag[k] + radius);
    }

    // Sturm count: eigenvalues of the Jacobi matrix below sigma.
    let eigen_below = |sigma: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for k in 0..n {
            d = diag[k] - sigma - offdiag[k] * offdiag[k] / d;
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };

    (0..n)
        .map(|i| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                if eigen_below(mid) > i {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            // Newton polish inside the bisection bracket.
            let mut root = 0.5 * (a + b);
            for _ in 0..3 {
                let (p, dp) = spec.value_and_derivative(root);
                if dp == 0.0 {
                    break;
                }
                let next = root - p / dp;
                if next > a && next < b {
                    root = next;
                }
            }
            root
        })
        .collect()
}

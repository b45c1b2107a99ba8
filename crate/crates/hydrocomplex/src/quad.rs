//! Adaptive Gauss-Kronrod quadrature.
//!
//! Plain 15-point Gauss-Kronrod panels, adaptively bisected worst-error
//! first. Two features matter for the integrands in this crate:
//!
//! * callers declare the interior points where the integrand has an
//!   integrable singularity (polynomial roots inside `p² ln p²` terms), and
//!   every declared point becomes a panel boundary so no panel straddles it;
//! * semi-infinite intervals are handled by integrating a finite head and
//!   then doubling tail segments until two consecutive segments fall below
//!   the tail bound, which is recorded in the result as `truncated_at`.

use std::collections::BinaryHeap;

use thiserror::Error;

/// Kronrod abscissae for the 15-point rule (positive half, descending).
const XGK15: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Weights of the embedded 7-point Gauss rule.
const WG15: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Weights of the 15-point Kronrod rule.
const WGK15: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Accuracy and budget knobs for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target relative error of the full integral.
    pub rel_tol: f64,
    /// Target absolute error, the floor when the integral is near zero.
    pub abs_tol: f64,
    /// Hard cap on the number of panels across the whole interval.
    pub max_panels: usize,
    /// A tail segment smaller than this fraction of the accumulated value
    /// (twice in a row) terminates a semi-infinite integral.
    pub tail_cut: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 4096,
            tail_cut: 1e-18,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<(), QuadError> {
        let ok = self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.tail_cut > 0.0;
        if !ok || self.max_panels < 16 {
            return Err(QuadError::InvalidSpec {
                rel_tol: self.rel_tol,
                abs_tol: self.abs_tol,
                max_panels: self.max_panels,
            });
        }
        Ok(())
    }
}

/// Integration domain: a finite interval or a half-line, plus the interior
/// points that must become panel boundaries.
#[derive(Debug, Clone)]
pub struct Interval {
    lower: f64,
    upper: f64,
    breakpoints: Vec<f64>,
}

impl Interval {
    /// The finite interval `[lower, upper]`.
    pub fn finite(lower: f64, upper: f64) -> Self {
        Interval {
            lower,
            upper,
            breakpoints: Vec::new(),
        }
    }

    /// The half-line `[lower, ∞)`.
    pub fn half_line(lower: f64) -> Self {
        Interval {
            lower,
            upper: f64::INFINITY,
            breakpoints: Vec::new(),
        }
    }

    /// Declares interior integrable singularities; points outside the open
    /// interval are ignored.
    pub fn with_breakpoints(mut self, points: &[f64]) -> Self {
        self.breakpoints.extend_from_slice(points);
        self
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
    /// Where a semi-infinite integral was cut off; `None` for finite ones.
    pub truncated_at: Option<f64>,
}

/// A value carrying a propagated accuracy estimate.
///
/// Assembled quantities combine several quadratures with exact
/// coefficients; the estimate is the conservative sum of the component
/// estimates, scaled the same way the value is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub value: f64,
    pub error_estimate: f64,
}

impl Measured {
    /// A value known in closed form, with no quadrature error attached.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
        }
    }
}

impl From<QuadResult> for Measured {
    fn from(r: QuadResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
        }
    }
}

impl std::ops::Add for Measured {
    type Output = Measured;

    fn add(self, rhs: Measured) -> Measured {
        Measured {
            value: self.value + rhs.value,
            error_estimate: self.error_estimate + rhs.error_estimate,
        }
    }
}

impl std::ops::Mul for Measured {
    type Output = Measured;

    /// Product with first-order error propagation (relative errors add).
    fn mul(self, rhs: Measured) -> Measured {
        let value = self.value * rhs.value;
        let error_estimate =
            (self.error_estimate * rhs.value).abs() + (rhs.error_estimate * self.value).abs();
        Measured {
            value,
            error_estimate,
        }
    }
}

impl std::ops::Mul<f64> for Measured {
    type Output = Measured;

    fn mul(self, k: f64) -> Measured {
        Measured {
            value: self.value * k,
            error_estimate: self.error_estimate * k.abs(),
        }
    }
}

/// Failure modes of [`integrate_adaptive`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error(
        "quadrature spec invalid: rel_tol {rel_tol}, abs_tol {abs_tol}, max_panels {max_panels}"
    )]
    InvalidSpec {
        rel_tol: f64,
        abs_tol: f64,
        max_panels: usize,
    },
    /// The panel budget ran out; the partial result is reported so callers
    /// can decide whether the achieved accuracy is still acceptable.
    #[error("panel budget exhausted: error {error_estimate:.3e} on value {value:.9e} after {panels} panels")]
    BudgetExhausted {
        value: f64,
        error_estimate: f64,
        panels: usize,
    },
    #[error("tail does not decay: segment [{from:.3e}, {to:.3e}] still contributes {segment:.3e}")]
    NonDecayingTail { from: f64, to: f64, segment: f64 },
    #[error("integrand is not finite near x = {x:.6e}")]
    NonFinite { x: f64 },
}

/// One evaluated panel, ordered by error so the heap pops the worst first.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// 15-point Gauss-Kronrod estimate on `[a, b]`, after QUADPACK's QK15.
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadError> {
    let center = 0.5 * (a + b);
    let half_len = 0.5 * (b - a);
    let abs_half_len = half_len.abs();

    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    let f_center = f(center);
    let mut res_gauss = f_center * WG15[3];
    let mut res_kronrod = f_center * WGK15[7];
    let mut res_abs = res_kronrod.abs();

    // Gauss nodes sit at the odd Kronrod indices.
    for (j, gauss_w) in WG15.iter().enumerate().take(3) {
        let jtw = j * 2 + 1;
        let abscissa = half_len * XGK15[jtw];
        let fval1 = f(center - abscissa);
        let fval2 = f(center + abscissa);
        let fsum = fval1 + fval2;
        fv1[jtw] = fval1;
        fv2[jtw] = fval2;
        res_gauss += *gauss_w * fsum;
        res_kronrod += WGK15[jtw] * fsum;
        res_abs += WGK15[jtw] * (fval1.abs() + fval2.abs());
    }
    for j in 0..4 {
        let jtwm1 = j * 2;
        let abscissa = half_len * XGK15[jtwm1];
        let fval1 = f(center - abscissa);
        let fval2 = f(center + abscissa);
        fv1[jtwm1] = fval1;
        fv2[jtwm1] = fval2;
        res_kronrod += WGK15[jtwm1] * (fval1 + fval2);
        res_abs += WGK15[jtwm1] * (fval1.abs() + fval2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK15[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK15[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half_len;
    let value = res_kronrod * half_len;
    res_abs *= abs_half_len;
    res_asc *= abs_half_len;

    if !value.is_finite() {
        return Err(QuadError::NonFinite { x: center });
    }
    Ok(Panel {
        a,
        b,
        value,
        error: rescale_error(err, res_abs, res_asc),
    })
}

/// QUADPACK's conservative error model for a Kronrod panel.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled_err = err.abs();

    if res_asc != 0.0 && scaled_err != 0.0 {
        let scale = (200.0 * scaled_err / res_asc).powf(1.5);
        scaled_err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled_err {
            scaled_err = min_err;
        }
    }
    scaled_err
}

/// Adaptive integration over a finite interval with a shared panel budget.
#[allow(clippy::too_many_arguments)]
fn integrate_finite<F: Fn(f64) -> f64>(
    f: &F,
    lower: f64,
    upper: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
    used_panels: &mut usize,
) -> Result<(f64, f64), QuadError> {
    // Panel edges: bounds plus every declared singularity strictly inside.
    let mut edges = vec![lower];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > lower && p < upper)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(upper);

    let mut heap = BinaryHeap::new();
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    for pair in edges.windows(2) {
        let panel = qk15(f, pair[0], pair[1])?;
        *used_panels += 1;
        total_value += panel.value;
        total_error += panel.error;
        heap.push(panel);
    }

    loop {
        let target = abs_tol.max(rel_tol * total_value.abs());
        if total_error <= target {
            return Ok((total_value, total_error));
        }
        if *used_panels + 1 > max_panels {
            return Err(QuadError::BudgetExhausted {
                value: total_value,
                error_estimate: total_error,
                panels: *used_panels,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel width is at rounding granularity; give up on refining it.
            heap.push(Panel {
                error: 0.0,
                ..worst
            });
            total_error -= worst.error;
            continue;
        }
        let left = qk15(f, worst.a, mid)?;
        let right = qk15(f, mid, worst.b)?;
        *used_panels += 1;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

/// Integrates `f` over `interval` to the accuracy requested by `q`.
///
/// Returns the estimate together with its error bound; a budget failure
/// still carries the partial result inside the error.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    interval: &Interval,
    q: &QuadratureSpec,
) -> Result<QuadResult, QuadError> {
    q.validate()?;
    let mut used_panels = 0usize;

    if interval.upper.is_finite() {
        let (value, error_estimate) = integrate_finite(
            &f,
            interval.lower,
            interval.upper,
            &interval.breakpoints,
            q.rel_tol,
            q.abs_tol,
            q.max_panels,
            &mut used_panels,
        )?;
        return Ok(QuadResult {
            value,
            error_estimate,
            panels: used_panels,
            truncated_at: None,
        });
    }

    // Head: everything up to a margin past the last declared singularity.
    let last_break = interval
        .breakpoints
        .iter()
        .copied()
        .fold(interval.lower, f64::max);
    let head_end = last_break.max(interval.lower) + 16.0;
    let (mut value, mut error_estimate) = integrate_finite(
        &f,
        interval.lower,
        head_end,
        &interval.breakpoints,
        q.rel_tol,
        q.abs_tol,
        q.max_panels,
        &mut used_panels,
    )?;

    // Tail: doubling segments until two consecutive ones are negligible.
    let mut from = head_end;
    let mut quiet_segments = 0;
    let mut last_segment: f64 = 0.0;
    for _ in 0..64 {
        let to = 2.0 * from;
        let seg_abs_tol = q.abs_tol.max(0.1 * q.rel_tol * value.abs());
        let (seg_value, seg_error) = integrate_finite(
            &f,
            from,
            to,
            &[],
            q.rel_tol,
            seg_abs_tol,
            q.max_panels,
            &mut used_panels,
        )?;
        value += seg_value;
        error_estimate += seg_error;

        let negligible =
            seg_value.abs() <= q.tail_cut * value.abs() || seg_value.abs() <= 0.01 * q.abs_tol;
        quiet_segments = if negligible { quiet_segments + 1 } else { 0 };
        if quiet_segments >= 2 {
            // Bound the discarded remainder by the last live segment.
            error_estimate += last_segment.abs();
            return Ok(QuadResult {
                value,
                error_estimate,
                panels: used_panels,
                truncated_at: Some(to),
            });
        }
        last_segment = seg_value;
        from = to;
    }
    Err(QuadError::NonDecayingTail {
        from: head_end,
        to: from,
        segment: last_segment,
    })
}

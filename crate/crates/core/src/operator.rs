//! The coefficient-multiplier operator on normalized meromorphic functions,
//! its integral representations (used as independent oracles) and the
//! three first-order recurrences it satisfies.
//!
//! For `f(z) = z^{-p} + sum a_k z^k` the operator acts by
//!
//! ```text
//! I f(z) = z^{-p} + sum_k  Gamma(c - p mu) Gamma(a + mu k)
//!                          --------------------------------  [l / (l + lambda (k + p))]^m  a_k z^k
//!                          Gamma(a - p mu) Gamma(c + mu k)
//! ```
//!
//! The coefficient path is the production path. The integral forms are
//! verification-only.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussJacobi;
use crate::series::{scaled_laurent_zdz, LaurentFunction, TaylorSeries};
use crate::special::{coefficient_multiplier, gamma_factor, log_gamma, power_factor};

pub mod presets;

/// Parameters `(p, m, lambda, l, mu, a, c)` of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub p: u32,
    pub m: i64,
    pub lambda: f64,
    pub ell: f64,
    pub mu: f64,
    pub a: Complex64,
    pub c: Complex64,
}

impl OperatorParams {
    /// Validated constructor: `Re(a) > p mu`, `Re(c - a) >= 0`, `lambda, l, mu > 0`.
    pub fn new(
        p: u32,
        m: i64,
        lambda: f64,
        ell: f64,
        mu: f64,
        a: Complex64,
        c: Complex64,
    ) -> Result<Self> {
        let params = Self {
            p,
            m,
            lambda,
            ell,
            mu,
            a,
            c,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.p == 0 {
            return bad("p must be at least 1".into());
        }
        for (name, v) in [("lambda", self.lambda), ("l", self.ell), ("mu", self.mu)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.a.is_finite() && self.c.is_finite()) {
            return bad("a and c must be finite".into());
        }
        let pmu = self.p as f64 * self.mu;
        if !(self.a.re > pmu) {
            return bad(format!("need Re(a) > p mu = {pmu}, got Re(a) = {}", self.a.re));
        }
        if !((self.c - self.a).re >= 0.0) {
            return bad(format!(
                "need Re(c - a) >= 0, got {}",
                (self.c - self.a).re
            ));
        }
        Ok(())
    }

    /// `p mu`.
    pub fn p_mu(&self) -> f64 {
        self.p as f64 * self.mu
    }

    /// Same parameters with `a` replaced by `a + delta`.
    ///
    /// Shifted parameters feed the recurrences and may leave the validated
    /// region (for example `Re(c - a - 1) < 0`); the coefficient formula
    /// stays well defined as long as no gamma argument hits a pole.
    pub fn shift_a(&self, delta: f64) -> Self {
        Self {
            a: self.a + delta,
            ..*self
        }
    }

    /// Same parameters with `c` replaced by `c + delta`; see [`Self::shift_a`].
    pub fn shift_c(&self, delta: f64) -> Self {
        Self {
            c: self.c + delta,
            ..*self
        }
    }

    /// Same parameters with `m` replaced by `m + delta`.
    pub fn shift_m(&self, delta: i64) -> Self {
        Self {
            m: self.m + delta,
            ..*self
        }
    }

    /// Whether all parameters are real.
    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.c.im == 0.0
    }
}

impl fmt::Display for OperatorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={}, m={}, lambda={}, l={}, mu={}, a={}, c={}",
            self.p, self.m, self.lambda, self.ell, self.mu, self.a, self.c
        )
    }
}

fn check_pole_order(params: &OperatorParams, f: &LaurentFunction) -> Result<()> {
    if f.pole_order() != params.p {
        return Err(Error::PoleOrderMismatch {
            expected: params.p,
            found: f.pole_order(),
        });
    }
    Ok(())
}

/// Applies the operator coefficientwise. The pole term is left unchanged.
pub fn apply_operator(params: &OperatorParams, f: &LaurentFunction) -> Result<LaurentFunction> {
    check_pole_order(params, f)?;
    f.map_tail(|k, a| Ok(coefficient_multiplier(params, k)? * a))
}

/// Only the gamma-ratio part of the multiplier (the `m = 0` operator).
pub fn apply_gamma_part(params: &OperatorParams, f: &LaurentFunction) -> Result<LaurentFunction> {
    check_pole_order(params, f)?;
    f.map_tail(|k, a| Ok(gamma_factor(params, k)? * a))
}

/// Only the power part of the multiplier (the `a = c` operator).
pub fn apply_power_part(params: &OperatorParams, f: &LaurentFunction) -> Result<LaurentFunction> {
    check_pole_order(params, f)?;
    f.map_tail(|k, a| Ok(a * power_factor(params, k)?))
}

/// `z^p I f(z)` as a power series of order `K + p`.
pub fn apply_scaled(params: &OperatorParams, f: &LaurentFunction) -> Result<TaylorSeries> {
    Ok(apply_operator(params, f)?.to_scaled())
}

const ORACLE_NODES: usize = 64;
const ORACLE_CHECK_NODES: usize = 48;
const GRADING_RATIO: f64 = 0.1;
const MAX_ORACLE_IMAG: f64 = 10.0;
const MAX_L_DEPTH: i64 = 3;

fn check_oracle_point(z: Complex64) -> Result<()> {
    if z.norm() == 0.0 || z.norm() >= 1.0 {
        return Err(Error::IntegralUndefined(format!(
            "sample point must satisfy 0 < |z| < 1, got {z}"
        )));
    }
    Ok(())
}

/// Number of geometric panels needed so the innermost panel's weight mass is
/// below double precision for the given endpoint exponent.
fn grading_levels(exponent: f64) -> usize {
    let levels = (1e-17f64.ln() / (exponent * GRADING_RATIO.ln())).ceil();
    levels.clamp(3.0, 80.0) as usize
}

struct BetaIntegral {
    /// Real parts of the endpoint exponents, absorbed into the Jacobi weights.
    alpha: f64,
    beta: f64,
    /// Imaginary parts, kept in the integrand as `t^{i s}`, `(1-t)^{i s}`.
    alpha_im: f64,
    beta_im: f64,
}

impl BetaIntegral {
    fn phase(&self, t: f64, one_minus_t: f64) -> Complex64 {
        let mut ph = Complex64::new(1.0, 0.0);
        if self.alpha_im != 0.0 {
            ph *= Complex64::new(0.0, self.alpha_im * t.ln()).exp();
        }
        if self.beta_im != 0.0 {
            ph *= Complex64::new(0.0, self.beta_im * one_minus_t.ln()).exp();
        }
        ph
    }

    /// `int_0^1 t^{alpha + i alpha_im} (1-t)^{beta + i beta_im} g(t) dt`, split at
    /// `t = 1/2`. Each half is integrated in its distance `x` to the endpoint,
    /// on a mesh graded geometrically toward `x = 0` (always at `t = 0`, and at
    /// `t = 1` when the right exponent is complex).
    fn integrate<G>(&self, n: usize, g: &G) -> Result<Complex64>
    where
        G: Fn(f64) -> Complex64,
    {
        let legendre = GaussJacobi::legendre(n)?;
        let left = |x: f64| g(x) * self.phase(x, 1.0 - x) * (1.0 - x).powf(self.beta);
        let right = |x: f64| g(1.0 - x) * self.phase(1.0 - x, x) * (1.0 - x).powf(self.alpha);
        let left_levels = grading_levels(self.alpha + 1.0);
        let right_levels = if self.beta_im != 0.0 {
            grading_levels(self.beta + 1.0)
        } else {
            0
        };
        Ok(half_integral(n, &legendre, self.alpha, left_levels, &left)?
            + half_integral(n, &legendre, self.beta, right_levels, &right)?)
    }

    fn integrate_checked<G>(&self, g: &G) -> Result<Complex64>
    where
        G: Fn(f64) -> Complex64,
    {
        let main = self.integrate(ORACLE_NODES, g)?;
        let check = self.integrate(ORACLE_CHECK_NODES, g)?;
        let scale = main.norm().max(1.0);
        if (main - check).norm() > 1e-9 * scale || !main.is_finite() {
            return Err(Error::Quadrature(format!(
                "{ORACLE_NODES}- and {ORACLE_CHECK_NODES}-node estimates differ by {:e}",
                (main - check).norm()
            )));
        }
        Ok(main)
    }
}

/// `int_0^{1/2} x^e h(x) dx`: a Gauss-Jacobi panel absorbs `x^e` on the
/// innermost interval `[0, x_0]`, Legendre panels cover `[x_0, 1/2]` with
/// edges `10^{-j}/2`.
fn half_integral<H>(n: usize, legendre: &GaussJacobi, e: f64, levels: usize, h: &H) -> Result<Complex64>
where
    H: Fn(f64) -> Complex64,
{
    let first = 0.5 * GRADING_RATIO.powi(levels as i32);
    let jacobi = GaussJacobi::new(n, e, 0.0)?;
    let mut total = jacobi.integrate(|s| h(first * s)) * first.powf(e + 1.0);
    let mut lo = first;
    for j in (0..levels).rev() {
        let hi = 0.5 * GRADING_RATIO.powi(j as i32);
        total += legendre.integrate_on(lo, hi, |x| h(x) * x.powf(e));
        lo = hi;
    }
    Ok(total)
}

/// Evaluates the `m = 0` operator at `z` from its Euler-type integral
///
/// ```text
/// Gamma(c - p mu) / (Gamma(a - p mu) Gamma(c - a)) int_0^1 t^{a-1} (1-t)^{c-a-1} f(z t^mu) dt
/// ```
///
/// after factoring the pole of `f` as `t^{-p mu}`.
pub fn apply_j_integral(
    params: &OperatorParams,
    f: &LaurentFunction,
    z: Complex64,
) -> Result<Complex64> {
    check_pole_order(params, f)?;
    check_oracle_point(z)?;
    if params.m != 0 {
        return Err(Error::IntegralUndefined(format!(
            "the Euler integral represents the m = 0 operator, got m = {}",
            params.m
        )));
    }
    let pmu = params.p_mu();
    let shifted_a = params.a - pmu;
    let gap = params.c - params.a;
    if !(gap.re > 0.0) {
        return Err(Error::IntegralUndefined(
            "integral form needs Re(c - a) > 0; use the coefficient path".into(),
        ));
    }
    if !(shifted_a.re > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need Re(a) > p mu, got Re(a) = {}",
            params.a.re
        )));
    }
    if params.a.im.abs() > MAX_ORACLE_IMAG || params.c.im.abs() > MAX_ORACLE_IMAG {
        return Err(Error::Quadrature(format!(
            "|Im a| or |Im c| above {MAX_ORACLE_IMAG}: oracle accuracy not guaranteed"
        )));
    }
    let prefactor =
        (log_gamma(params.c - pmu)? - log_gamma(shifted_a)? - log_gamma(gap)?).exp();
    let scaled = f.to_scaled();
    let mu = params.mu;
    let integrand = |t: f64| scaled.eval(z * t.powf(mu));
    let beta = BetaIntegral {
        alpha: shifted_a.re - 1.0,
        beta: gap.re - 1.0,
        alpha_im: shifted_a.im,
        beta_im: gap.im,
    };
    let integral = beta.integrate_checked(&integrand)?;
    Ok(prefactor * integral / z.powu(params.p))
}

/// `G_m(w)` for the nested recursion `G_j(w) = (l/lambda) int_0^1 s^{l/lambda - 1} G_{j-1}(s w) ds`.
fn nested_power_integral(
    rule: &GaussJacobi,
    ratio: f64,
    depth: i64,
    scaled: &TaylorSeries,
    w: Complex64,
) -> Complex64 {
    if depth == 0 {
        return scaled.eval(w);
    }
    rule.integrate(|s| nested_power_integral(rule, ratio, depth - 1, scaled, w * s)) * ratio
}

/// Evaluates the `a = c` operator at `z` through the `m`-fold integral
/// recursion `L^m f(z) = (l/lambda) z^{-p-l/lambda} int_0^z t^{l/lambda+p-1} L^{m-1} f(t) dt`,
/// integrating along the ray `t = s z`.
pub fn apply_l_integral(
    params: &OperatorParams,
    f: &LaurentFunction,
    z: Complex64,
) -> Result<Complex64> {
    check_pole_order(params, f)?;
    check_oracle_point(z)?;
    if params.a != params.c {
        return Err(Error::IntegralUndefined(
            "the power-weight recursion represents the a = c operator".into(),
        ));
    }
    if params.m == 0 {
        return f.eval(z);
    }
    if params.m < 0 {
        return Err(Error::IntegralUndefined(format!(
            "recursion defined for m >= 0 only, got m = {}",
            params.m
        )));
    }
    if params.m > MAX_L_DEPTH {
        return Err(Error::Quadrature(format!(
            "nested quadrature limited to m <= {MAX_L_DEPTH}, got m = {}",
            params.m
        )));
    }
    let ratio = params.ell / params.lambda;
    let scaled = f.to_scaled();
    let rule = GaussJacobi::new(ORACLE_NODES, ratio - 1.0, 0.0)?;
    let check = GaussJacobi::new(ORACLE_CHECK_NODES, ratio - 1.0, 0.0)?;
    let main = nested_power_integral(&rule, ratio, params.m, &scaled, z);
    let alt = nested_power_integral(&check, ratio, params.m, &scaled, z);
    if (main - alt).norm() > 1e-9 * main.norm().max(1.0) {
        return Err(Error::Quadrature(format!(
            "{ORACLE_NODES}- and {ORACLE_CHECK_NODES}-node estimates differ by {:e}",
            (main - alt).norm()
        )));
    }
    Ok(main / z.powu(params.p))
}

/// The three first-order recurrences linking neighbouring parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Recurrence {
    /// `z (I_a f)' = ((a - p mu)/mu) I_{a+1} f - (a/mu) I_a f`
    A1,
    /// `z (I_{c+1} f)' = ((c - p mu)/mu) I_c f - (c/mu) I_{c+1} f`
    C1,
    /// `z (I^{m+1} f)' = (l/lambda) I^m f - ((l + lambda p)/lambda) I^{m+1} f`
    M1,
}

impl Recurrence {
    pub const ALL: [Recurrence; 3] = [Recurrence::A1, Recurrence::C1, Recurrence::M1];
}

/// Both sides of a recurrence as scaled series `z^p (...)`, left first.
pub fn recurrence_sides(
    params: &OperatorParams,
    f: &LaurentFunction,
    which: Recurrence,
) -> Result<(TaylorSeries, TaylorSeries)> {
    let p = params.p;
    let pmu = Complex64::new(params.p_mu(), 0.0);
    let mu = params.mu;
    let (left, right) = match which {
        Recurrence::A1 => {
            let base = apply_scaled(params, f)?;
            let up = apply_scaled(&params.shift_a(1.0), f)?;
            let left = scaled_laurent_zdz(&base, p);
            let right = up
                .scale((params.a - pmu) / mu)
                .sub(&base.scale(params.a / mu))?;
            (left, right)
        }
        Recurrence::C1 => {
            let base = apply_scaled(params, f)?;
            let up = apply_scaled(&params.shift_c(1.0), f)?;
            let left = scaled_laurent_zdz(&up, p);
            let right = base
                .scale((params.c - pmu) / mu)
                .sub(&up.scale(params.c / mu))?;
            (left, right)
        }
        Recurrence::M1 => {
            let base = apply_scaled(params, f)?;
            let up = apply_scaled(&params.shift_m(1), f)?;
            let left = scaled_laurent_zdz(&up, p);
            let ratio = params.ell / params.lambda;
            let decay = (params.ell + params.lambda * p as f64) / params.lambda;
            let right = base
                .scale(Complex64::new(ratio, 0.0))
                .sub(&up.scale(Complex64::new(decay, 0.0)))?;
            (left, right)
        }
    };
    Ok((left, right))
}

/// Maximum absolute coefficient difference between the two sides of a recurrence.
pub fn recurrence_residual(
    params: &OperatorParams,
    f: &LaurentFunction,
    which: Recurrence,
) -> Result<f64> {
    let (left, right) = recurrence_sides(params, f, which)?;
    Ok(left.max_abs_diff(&right))
}

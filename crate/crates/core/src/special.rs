//! Complex log-gamma, the operator's coefficient multipliers and the
//! Moebius dominant `q(z) = (1 + Az)/(1 + Bz)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::OperatorParams;
use crate::series::TaylorSeries;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
/// ln(2 pi) / 2
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Lanczos partial-fraction sum for `Gamma(zm1 + 1)`.
fn lanczos_sum(zm1: Complex64) -> Complex64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, &c)| {
            acc + c / (zm1 + (i + 1) as f64)
        })
}

/// `ln(1 + w)` without cancellation for small `w`.
fn ln_1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// A logarithm of `Gamma(z)` (Lanczos, g = 7, nine terms, with reflection
/// below `Re z = 0.5`).
///
/// The imaginary part is only determined modulo `2 pi`; `exp(log_gamma(z))`
/// is `Gamma(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_gamma_pole(z) {
        return Err(Error::GammaPole(z));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(Complex64::new(LN_PI, 0.0) - s.ln() - log_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let zm1 = z - 1.0;
    let t = zm1 + (LANCZOS_G + 0.5);
    Ok(HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + lanczos_sum(zm1).ln())
}

/// `ln Gamma(x) - ln Gamma(y)`.
pub fn log_gamma_ratio(x: Complex64, y: Complex64) -> Result<Complex64> {
    if is_gamma_pole(x) {
        return Err(Error::GammaPole(x));
    }
    log_gamma_shift(y, x - y)
}

/// `ln Gamma(y + d) - ln Gamma(y)` with the offset `d` passed separately, so
/// that nearby large arguments do not cancel and rounding in `y` only enters
/// through `psi(y + d) - psi(y)`.
pub fn log_gamma_shift(y: Complex64, d: Complex64) -> Result<Complex64> {
    let x = y + d;
    if is_gamma_pole(y) {
        return Err(Error::GammaPole(y));
    }
    if is_gamma_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if d == Complex64::new(0.0, 0.0) {
        return Ok(d);
    }
    if x.re < 0.5 || y.re < 0.5 {
        return Ok(log_gamma(x)? - log_gamma(y)?);
    }
    let (xm1, ym1) = (x - 1.0, y - 1.0);
    let tx = xm1 + (LANCZOS_G + 0.5);
    let ty = ym1 + (LANCZOS_G + 0.5);
    Ok(d * tx.ln() + (ym1 + 0.5) * ln_1p(d / ty) - d
        + (lanczos_sum(xm1) / lanczos_sum(ym1)).ln())
}

/// `Gamma(z)` for real arguments away from the poles.
pub fn gamma_real(x: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(x, 0.0))?;
    Ok(lg.exp().re)
}

/// The gamma-ratio part of the multiplier,
/// `Gamma(c - p mu) Gamma(a + mu k) / (Gamma(a - p mu) Gamma(c + mu k))`.
///
/// Exactly 1 when `a == c`.
pub fn gamma_factor(params: &OperatorParams, k: i64) -> Result<Complex64> {
    if params.a == params.c {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let pmu = params.p as f64 * params.mu;
    let muk = params.mu * k as f64;
    let d = params.a - params.c;
    let upper = log_gamma_shift(params.c + muk, d)?;
    let lower = log_gamma_shift(params.c - pmu, d)?;
    Ok((upper - lower).exp())
}

/// `[l / (l + lambda (k + p))]^m`, any integer `m`.
pub fn power_factor(params: &OperatorParams, k: i64) -> Result<f64> {
    let denom = params.ell + params.lambda * (k + params.p as i64) as f64;
    if denom == 0.0 {
        return Err(Error::InvalidParams(format!(
            "l + lambda (k + p) vanishes at k = {k}"
        )));
    }
    let m = i32::try_from(params.m)
        .map_err(|_| Error::InvalidParams(format!("m = {} out of range", params.m)))?;
    Ok((params.ell / denom).powi(m))
}

/// Scalar applied by the operator to the Laurent coefficient `a_k`.
pub fn coefficient_multiplier(params: &OperatorParams, k: i64) -> Result<Complex64> {
    if k < 1 - params.p as i64 && k != -(params.p as i64) {
        return Err(Error::InvalidParams(format!(
            "coefficient index {k} below 1 - p"
        )));
    }
    Ok(gamma_factor(params, k)? * power_factor(params, k)?)
}

/// `q(z) = (1 + A z)/(1 + B z)` with `-1 <= B < A <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusQ {
    a: f64,
    b: f64,
}

impl MoebiusQ {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && -1.0 <= b && b < a && a <= 1.0) {
            return Err(Error::InvalidMoebius { a, b });
        }
        Ok(Self { a, b })
    }

    /// `(1 + z)/(1 - z)`.
    pub fn half_plane() -> Self {
        Self { a: 1.0, b: -1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn denom(&self, z: Complex64) -> Result<Complex64> {
        let d = 1.0 + self.b * z;
        if d.norm() == 0.0 {
            return Err(Error::MoebiusSingular(z));
        }
        Ok(d)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((1.0 + self.a * z) / self.denom(z)?)
    }

    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let d = self.denom(z)?;
        Ok((self.a - self.b) / (d * d))
    }

    pub fn second_deriv(&self, z: Complex64) -> Result<Complex64> {
        let d = self.denom(z)?;
        Ok(-2.0 * self.b * (self.a - self.b) / (d * d * d))
    }

    /// `z = (w - 1)/(A - B w)`.
    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        let d = self.a - self.b * w;
        if d.norm() == 0.0 {
            return Err(Error::MoebiusSingular(w));
        }
        Ok((w - 1.0) / d)
    }

    /// `1 + z q''/q' = (1 - Bz)/(1 + Bz)`.
    pub fn convexity_expr(&self, z: Complex64) -> Result<Complex64> {
        Ok((1.0 - self.b * z) / self.denom(z)?)
    }

    /// Infimum of `Re(1 + z q''/q')` over the open unit disk, `(1-|B|)/(1+|B|)`.
    /// The infimum is not attained inside the disk unless `B = 0`.
    pub fn convexity_bound(&self) -> f64 {
        let b = self.b.abs();
        (1.0 - b) / (1.0 + b)
    }

    /// Taylor coefficients `1 + (A - B) sum (-B)^{n-1} z^n`.
    pub fn series(&self, k: usize) -> TaylorSeries {
        let k = k.max(1);
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.push(Complex64::new(1.0, 0.0));
        let mut t = self.a - self.b;
        for _ in 1..=k {
            coeffs.push(Complex64::new(t, 0.0));
            t *= -self.b;
        }
        TaylorSeries::new(coeffs).expect("finite Moebius coefficients")
    }
}

/// A candidate dominant with `q(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum QFunction {
    Moebius(MoebiusQ),
    Series(TaylorSeries),
}

impl QFunction {
    pub fn series_q(series: TaylorSeries) -> Result<Self> {
        let c0 = series.coeff(0);
        if (c0 - 1.0).norm() > 1e-12 {
            return Err(Error::QNotNormalized(c0));
        }
        Ok(Self::Series(series))
    }

    pub fn value(&self, w: Complex64) -> Result<Complex64> {
        match self {
            Self::Moebius(q) => q.eval(w),
            Self::Series(s) => Ok(s.eval(w)),
        }
    }

    /// `w q'(w)`.
    pub fn zq_prime(&self, w: Complex64) -> Result<Complex64> {
        match self {
            Self::Moebius(q) => Ok(w * q.deriv(w)?),
            Self::Series(s) => Ok(s.derivative_zdz().eval(w)),
        }
    }

    /// `1 + w q''(w)/q'(w)`.
    pub fn convexity_expr(&self, w: Complex64) -> Result<Complex64> {
        match self {
            Self::Moebius(q) => q.convexity_expr(w),
            Self::Series(s) => {
                let d1 = s.derivative_zdz();
                let d2 = d1.derivative_zdz();
                let zq1 = d1.eval(w);
                if zq1.norm() < 1e-300 {
                    return Err(Error::DerivativeVanishes(w));
                }
                Ok(d2.eval(w) / zq1)
            }
        }
    }

    pub fn series(&self, k: usize) -> TaylorSeries {
        match self {
            Self::Moebius(q) => q.series(k),
            Self::Series(s) => s.truncate(k),
        }
    }

    pub fn as_moebius(&self) -> Option<&MoebiusQ> {
        match self {
            Self::Moebius(q) => Some(q),
            Self::Series(_) => None,
        }
    }
}

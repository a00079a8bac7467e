//! Truncated power series and normalized Laurent series.
//!
//! Every binary operation works on series of equal truncation order `K`;
//! use [`TaylorSeries::truncate`] to bring operands to a common order first.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation order used when nothing else is requested.
pub const DEFAULT_ORDER: usize = 64;

/// Largest radius at which truncated series are sampled by default.
pub const DEFAULT_R_TRUST: f64 = 0.95;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance on the constant term accepted by [`TaylorSeries::log`].
const UNIT_CONSTANT_TOL: f64 = 1e-10;

/// Error-free `a + b = s + e`.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Veltkamp splitting of `a` into two 26-bit halves.
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Error-free `a b = p + e` (Dekker).
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// Complex sum of products in about twice working precision, so that the
/// convolution recurrences below keep small coefficients that arise from
/// cancellation of large terms.
#[derive(Clone, Copy, Default)]
struct Accumulator {
    re: f64,
    re_err: f64,
    im: f64,
    im_err: f64,
}

impl Accumulator {
    fn new(start: Complex64) -> Self {
        Self { re: start.re, im: start.im, ..Self::default() }
    }

    fn push_re(&mut self, (p, e): (f64, f64)) {
        let (s, t) = two_sum(self.re, p);
        self.re = s;
        self.re_err += t + e;
    }

    fn push_im(&mut self, (p, e): (f64, f64)) {
        let (s, t) = two_sum(self.im, p);
        self.im = s;
        self.im_err += t + e;
    }

    /// Adds `a b`.
    fn add_prod(&mut self, a: Complex64, b: Complex64) {
        self.push_re(two_prod(a.re, b.re));
        self.push_re(two_prod(-a.im, b.im));
        self.push_im(two_prod(a.re, b.im));
        self.push_im(two_prod(a.im, b.re));
    }

    /// Adds `s a b` for a real weight `s`, keeping the rounding error of `s a`.
    fn add_scaled_prod(&mut self, s: f64, a: Complex64, b: Complex64) {
        let (hr, lr) = two_prod(s, a.re);
        let (hi, li) = two_prod(s, a.im);
        self.add_prod(Complex64::new(hr, hi), b);
        let low = Complex64::new(lr, li) * b;
        self.re_err += low.re;
        self.im_err += low.im;
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_err, self.im + self.im_err)
    }
}

/// A power series `c_0 + c_1 z + ... + c_K z^K` truncated at order `K >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

fn check_finite(coeffs: &[Complex64]) -> Result<()> {
    match coeffs.iter().position(|c| !c.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

impl TaylorSeries {
    /// Builds a series from `c_0..c_K`; the length fixes `K`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidTruncation(coeffs.len().saturating_sub(1)));
        }
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// Builds a series from leading coefficients, zero-padded up to order `k`.
    pub fn from_slice(coeffs: &[Complex64], k: usize) -> Result<Self> {
        let mut v = vec![ZERO; k + 1];
        for (dst, src) in v.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Self::new(v)
    }

    pub fn from_real(coeffs: &[f64], k: usize) -> Result<Self> {
        let v: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_slice(&v, k)
    }

    pub fn zero(k: usize) -> Self {
        Self::constant(ZERO, k)
    }

    pub fn one(k: usize) -> Self {
        Self::constant(ONE, k)
    }

    pub fn constant(c: Complex64, k: usize) -> Self {
        let k = k.max(1);
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The identity series `z`.
    pub fn identity(k: usize) -> Self {
        let mut s = Self::zero(k);
        s.coeffs[1] = ONE;
        s
    }

    /// `1 + z + z^2 + ... + z^K`.
    pub fn geometric(k: usize) -> Self {
        Self {
            coeffs: vec![ONE; k.max(1) + 1],
        }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    /// Re-truncates (or zero-extends) to order `k`.
    pub fn truncate(&self, k: usize) -> Self {
        let k = k.max(1);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(k + 1, ZERO);
        Self { coeffs }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at `K`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let k = self.order();
        let out = (0..=k)
            .map(|n| {
                let mut acc = Accumulator::default();
                for (a, b) in self.coeffs[..=n].iter().zip(other.coeffs[..=n].iter().rev()) {
                    acc.add_prod(*a, *b);
                }
                acc.value()
            })
            .collect();
        Ok(Self { coeffs: out })
    }

    /// Series quotient `self / other`; `other(0)` must be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let b0 = other.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(Error::DivisionByZeroSeries);
        }
        let k = self.order();
        let mut q = vec![ZERO; k + 1];
        for n in 0..=k {
            let mut acc = Accumulator::new(self.coeffs[n]);
            for j in 1..=n {
                acc.add_prod(-other.coeffs[j], q[n - j]);
            }
            q[n] = acc.value() / b0;
        }
        Ok(Self { coeffs: q })
    }

    /// The map `f -> z f'`: coefficient `n` becomes `n c_n`.
    pub fn derivative_zdz(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * n as f64)
                .collect(),
        }
    }

    /// `outer(inner(z))` truncated at `K`; requires `inner(0) == 0` exactly.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_same_order(inner)?;
        if inner.coeffs[0] != ZERO {
            return Err(Error::NonzeroInnerConstant(inner.coeffs[0]));
        }
        let k = self.order();
        let mut acc = Self::constant(self.coeffs[k], k);
        for j in (0..k).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += self.coeffs[j];
        }
        Ok(acc)
    }

    /// `exp(f)` via `e_n = (1/n) sum_{j=1}^{n} j f_j e_{n-j}`.
    pub fn exp(&self) -> Self {
        let k = self.order();
        let mut e = vec![ZERO; k + 1];
        e[0] = self.coeffs[0].exp();
        for n in 1..=k {
            let mut acc = Accumulator::default();
            for j in 1..=n {
                acc.add_scaled_prod(j as f64, self.coeffs[j], e[n - j]);
            }
            e[n] = acc.value() / n as f64;
        }
        Self { coeffs: e }
    }

    /// Principal `log(f)` anchored at `log(f(0)) = 0`; requires `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - ONE).norm() > UNIT_CONSTANT_TOL {
            return Err(Error::ConstantTermNotOne(c0));
        }
        let k = self.order();
        let f: Vec<Complex64> = if c0 == ONE {
            self.coeffs.clone()
        } else {
            self.coeffs.iter().map(|c| c / c0).collect()
        };
        let mut l = vec![ZERO; k + 1];
        l[0] = if c0 == ONE { ZERO } else { c0.ln() };
        // n l_n = n f_n - sum_{j<n} j l_j f_{n-j}
        for n in 1..=k {
            let mut acc = Accumulator::default();
            acc.add_scaled_prod(n as f64, f[n], ONE);
            for j in 1..n {
                acc.add_scaled_prod(-(j as f64), l[j], f[n - j]);
            }
            l[n] = acc.value() / n as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// Principal power `f^alpha = exp(alpha log f)`; requires `f(0) = 1`.
    pub fn pow(&self, alpha: Complex64) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - ONE).norm() > UNIT_CONSTANT_TOL {
            return Err(Error::ConstantTermNotOne(c0));
        }
        if alpha == ZERO {
            return Ok(Self::one(self.order()));
        }
        if alpha == ONE {
            return Ok(self.clone());
        }
        Ok(self.log()?.scale(alpha).exp())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Maximum absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

/// A truncated member of the class of normalized meromorphic functions with
/// a pole of order `p` at the origin:
/// `f(z) = z^{-p} + sum_{k=1-p}^{K} a_k z^k`.
///
/// The leading `z^{-p}` coefficient is implicitly 1 and is not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentFunction {
    pole_order: u32,
    /// `a_{1-p}, ..., a_K`.
    tail: Vec<Complex64>,
}

impl LaurentFunction {
    /// `tail` holds `a_{1-p}..a_K`, so `K = tail.len() - p`; requires `K >= 1`.
    pub fn new(pole_order: u32, tail: Vec<Complex64>) -> Result<Self> {
        if pole_order == 0 {
            return Err(Error::InvalidPoleOrder(0));
        }
        let p = pole_order as usize;
        if tail.len() < p + 1 {
            return Err(Error::InvalidTruncation(tail.len().saturating_sub(p)));
        }
        check_finite(&tail)?;
        Ok(Self { pole_order, tail })
    }

    /// `z^{-p}` with an all-zero tail up to order `k`.
    pub fn pure_pole(pole_order: u32, k: usize) -> Result<Self> {
        Self::new(pole_order, vec![ZERO; k.max(1) + pole_order as usize])
    }

    /// Reads `f` back from `z^p f(z)`; the constant term of `scaled` must be 1.
    pub fn from_scaled(pole_order: u32, scaled: &TaylorSeries) -> Result<Self> {
        let c0 = scaled.coeff(0);
        if (c0 - ONE).norm() > UNIT_CONSTANT_TOL {
            return Err(Error::ConstantTermNotOne(c0));
        }
        let p = pole_order as usize;
        if scaled.order() < p + 1 {
            return Err(Error::InvalidTruncation(scaled.order().saturating_sub(p)));
        }
        Self::new(pole_order, scaled.coeffs()[1..].to_vec())
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    /// Top retained index `K`.
    pub fn order(&self) -> usize {
        self.tail.len() - self.pole_order as usize
    }

    pub fn tail(&self) -> &[Complex64] {
        &self.tail
    }

    /// Coefficient `a_k` for `1-p <= k <= K`; the pole coefficient (k = -p) is 1.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let p = self.pole_order as i64;
        if k == -p {
            return ONE;
        }
        let idx = k + p - 1;
        if idx < 0 {
            return ZERO;
        }
        self.tail.get(idx as usize).copied().unwrap_or(ZERO)
    }

    /// Iterator over `(k, a_k)` for the stored tail.
    pub fn indexed_tail(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let first = 1 - self.pole_order as i64;
        self.tail.iter().enumerate().map(move |(i, c)| (first + i as i64, *c))
    }

    pub fn map_tail(&self, mut f: impl FnMut(i64, Complex64) -> Result<Complex64>) -> Result<Self> {
        let tail = self
            .indexed_tail()
            .map(|(k, a)| f(k, a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.pole_order, tail)
    }

    /// `z^p f(z)` as a power series of order `K + p`.
    pub fn to_scaled(&self) -> TaylorSeries {
        let mut coeffs = Vec::with_capacity(self.tail.len() + 1);
        coeffs.push(ONE);
        coeffs.extend_from_slice(&self.tail);
        TaylorSeries { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z == ZERO {
            return Err(Error::EvalAtPole);
        }
        Ok(self.to_scaled().eval(z) / z.powu(self.pole_order))
    }
}

/// The Laurent operator `g -> z g'` expressed on the scaled form `G = z^p g`:
/// `z^p (z g') = z G' - p G`.
pub fn scaled_laurent_zdz(scaled: &TaylorSeries, pole_order: u32) -> TaylorSeries {
    let p = pole_order as f64;
    TaylorSeries {
        coeffs: scaled
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (n as f64 - p))
            .collect(),
    }
}

/// A series of either kind, as read from or written to a function file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Taylor(TaylorSeries),
    Laurent(LaurentFunction),
}

#[derive(Debug, Serialize, Deserialize)]
struct SeriesFile {
    pole_order: u32,
    #[serde(rename = "K")]
    k: usize,
    coeffs: Vec<[f64; 2]>,
}

impl AnySeries {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SeriesFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs: Vec<Complex64> = file
            .coeffs
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        if file.pole_order == 0 {
            if coeffs.len() != file.k + 1 {
                return Err(Error::Parse(format!(
                    "Taylor series with K = {} needs {} coefficients, found {}",
                    file.k,
                    file.k + 1,
                    coeffs.len()
                )));
            }
            Ok(Self::Taylor(TaylorSeries::new(coeffs)?))
        } else {
            let expected = file.k + file.pole_order as usize;
            if coeffs.len() != expected {
                return Err(Error::Parse(format!(
                    "Laurent function with p = {}, K = {} needs {} coefficients, found {}",
                    file.pole_order,
                    file.k,
                    expected,
                    coeffs.len()
                )));
            }
            Ok(Self::Laurent(LaurentFunction::new(file.pole_order, coeffs)?))
        }
    }

    pub fn to_json(&self) -> String {
        let (pole_order, k, coeffs) = match self {
            Self::Taylor(t) => (0, t.order(), t.coeffs()),
            Self::Laurent(f) => (f.pole_order(), f.order(), f.tail()),
        };
        let file = SeriesFile {
            pole_order,
            k,
            coeffs: coeffs.iter().map(|c| [c.re, c.im]).collect(),
        };
        serde_json::to_string(&file).expect("series file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn difference_of_squares() {
        let a = TaylorSeries::from_real(&[1.0, 1.0], 2).unwrap();
        let b = TaylorSeries::from_real(&[1.0, -1.0], 2).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn multiplicative_identity() {
        let f = TaylorSeries::from_slice(&[c(0.3, 1.0), c(-2.0, 0.5), c(4.0, 0.0)], 5).unwrap();
        assert_eq!(f.mul(&TaylorSeries::one(5)).unwrap(), f);
    }

    #[test]
    fn geometric_times_one_minus_z() {
        let g = TaylorSeries::geometric(8);
        let h = TaylorSeries::from_real(&[1.0, -1.0], 8).unwrap();
        let prod = g.mul(&h).unwrap();
        assert_eq!(prod, TaylorSeries::one(8));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = TaylorSeries::one(3);
        let b = TaylorSeries::one(4);
        assert_eq!(a.mul(&b), Err(Error::TruncationMismatch(3, 4)));
        assert!(a.add(&b).is_err());
        assert_eq!(a.add(&b.truncate(3)).unwrap().coeff(0), c(2.0, 0.0));
    }

    #[test]
    fn construction_checks() {
        assert!(TaylorSeries::new(vec![c(1.0, 0.0)]).is_err());
        assert_eq!(
            TaylorSeries::new(vec![c(1.0, 0.0), c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(1))
        );
        assert!(LaurentFunction::new(0, vec![ZERO; 3]).is_err());
        assert!(LaurentFunction::new(2, vec![ZERO; 2]).is_err());
    }

    #[test]
    fn zdz_rules() {
        let one = TaylorSeries::one(4);
        assert_eq!(one.derivative_zdz(), TaylorSeries::zero(4));
        let z = TaylorSeries::identity(4);
        assert_eq!(z.derivative_zdz(), z);
        let f = TaylorSeries::from_real(&[1.0, 0.0, 3.0], 4).unwrap();
        assert_eq!(
            f.derivative_zdz(),
            TaylorSeries::from_real(&[0.0, 0.0, 6.0], 4).unwrap()
        );
    }

    #[test]
    fn compose_examples() {
        let q = TaylorSeries::from_slice(&[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)], 6).unwrap();
        let zero = TaylorSeries::zero(6);
        assert_eq!(q.compose(&zero).unwrap(), TaylorSeries::one(6));

        let omega = TaylorSeries::from_slice(&[ZERO, c(0.5, 0.1), c(0.0, 0.3)], 6).unwrap();
        assert_eq!(TaylorSeries::identity(6).compose(&omega).unwrap(), omega);

        let z2 = TaylorSeries::from_real(&[0.0, 0.0, 1.0], 6).unwrap();
        let out = TaylorSeries::geometric(6).compose(&z2).unwrap();
        let expected = TaylorSeries::from_real(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0], 6).unwrap();
        assert_eq!(out, expected);

        let bad = TaylorSeries::one(6);
        assert!(matches!(
            q.compose(&bad),
            Err(Error::NonzeroInnerConstant(_))
        ));
    }

    #[test]
    fn exp_log_pow_basics() {
        assert_eq!(TaylorSeries::zero(5).exp(), TaylorSeries::one(5));
        let f = TaylorSeries::from_real(&[1.0, 1.0], 4).unwrap();
        let sq = f.pow(c(2.0, 0.0)).unwrap();
        let expected = TaylorSeries::from_real(&[1.0, 2.0, 1.0], 4).unwrap();
        assert!(sq.max_abs_diff(&expected) < 1e-14);
        assert_eq!(f.pow(c(1.0, 0.0)).unwrap(), f);
        assert_eq!(f.pow(ZERO).unwrap(), TaylorSeries::one(4));

        let g = TaylorSeries::from_real(&[2.0, 1.0], 4).unwrap();
        assert!(matches!(g.log(), Err(Error::ConstantTermNotOne(_))));
        assert!(g.pow(c(0.5, 0.0)).is_err());
    }

    #[test]
    fn log_of_one_plus_z() {
        // log(1+z) = z - z^2/2 + z^3/3 - ...
        let f = TaylorSeries::from_real(&[1.0, 1.0], 10).unwrap();
        let l = f.log().unwrap();
        for n in 1..=10 {
            let expected = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            assert!((l.coeff(n) - c(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = TaylorSeries::from_slice(&[c(1.0, 0.2), c(-0.4, 0.1), c(0.3, 0.0)], 10).unwrap();
        let b = TaylorSeries::from_slice(&[c(2.0, -1.0), c(0.5, 0.5)], 10).unwrap();
        let q = a.mul(&b).unwrap().div(&b).unwrap();
        assert!(q.max_abs_diff(&a) < 1e-14);
        assert_eq!(a.div(&TaylorSeries::zero(10)), Err(Error::DivisionByZeroSeries));
    }

    #[test]
    fn eval_examples() {
        let f = LaurentFunction::pure_pole(1, 4).unwrap();
        assert_eq!(f.eval(c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        assert_eq!(f.eval(ZERO), Err(Error::EvalAtPole));

        let g = TaylorSeries::from_real(&[1.0, 1.0], 1).unwrap();
        assert_eq!(g.eval(c(0.0, 1.0)), c(1.0, 1.0));

        let geo = TaylorSeries::geometric(40);
        assert!((geo.eval(c(0.5, 0.0)) - c(2.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn laurent_indexing() {
        let f = LaurentFunction::new(2, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.coeff(-2), ONE);
        assert_eq!(f.coeff(-1), c(1.0, 0.0));
        assert_eq!(f.coeff(2), c(4.0, 0.0));
        assert_eq!(f.coeff(3), ZERO);
        let scaled = f.to_scaled();
        assert_eq!(scaled.order(), 4);
        assert_eq!(LaurentFunction::from_scaled(2, &scaled).unwrap(), f);
        // z^{-2} + z^{-1} + 2 + 3z + 4z^2 at z = 1
        assert_eq!(f.eval(ONE).unwrap(), c(11.0, 0.0));
    }

    #[test]
    fn scaled_zdz_matches_pole_term() {
        // z (z^{-p})' = -p z^{-p}
        let f = LaurentFunction::pure_pole(3, 2).unwrap();
        let d = scaled_laurent_zdz(&f.to_scaled(), 3);
        assert_eq!(d.coeff(0), c(-3.0, 0.0));
        assert!(d.coeffs()[1..].iter().all(|x| *x == ZERO));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = LaurentFunction::new(2, vec![c(1.0, -1.0), c(0.5, 0.0), c(0.0, 2.0)]).unwrap();
        let text = AnySeries::Laurent(f.clone()).to_json();
        assert!(text.contains("\"pole_order\":2"));
        assert!(text.contains("\"K\":1"));
        assert_eq!(AnySeries::from_json(&text).unwrap(), AnySeries::Laurent(f));

        let t = TaylorSeries::from_real(&[1.0, 2.0, 3.0], 2).unwrap();
        let text = AnySeries::Taylor(t.clone()).to_json();
        assert_eq!(AnySeries::from_json(&text).unwrap(), AnySeries::Taylor(t));

        let bad = r#"{"pole_order":0,"K":3,"coeffs":[[1,0],[0,0]]}"#;
        assert!(matches!(AnySeries::from_json(bad), Err(Error::Parse(_))));
        assert!(AnySeries::from_json("not json").is_err());
    }
}

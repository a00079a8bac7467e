//! Sampled subordination verdicts `F ≺ q`, Schwarz-function families and the
//! two hypothesis checks used by the theorems (convexity and starlikeness of
//! `zq'/q`).
//!
//! Verdicts are numerical evidence on a finite grid, not proofs.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{TaylorSeries, DEFAULT_R_TRUST};
use crate::special::{MoebiusQ, QFunction};

/// Margins within this distance of zero give an indeterminate verdict.
pub const INDETERMINATE_BAND: f64 = 1e-7;
/// Tolerance for `F(0) = q(0)`.
pub const CENTER_TOL: f64 = 1e-10;
/// Radius of the circle whose image bounds the dominant's image region.
pub const BOUNDARY_RADIUS: f64 = 0.999;
pub const WINDING_SEGMENTS: usize = 4096;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A Schwarz function: analytic on the disk, `w(0) = 0`, `|w| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SchwarzFn {
    /// `e^{i theta} z^n`
    RotationPower { theta: f64, n: u32 },
    /// `r z`, `0 < r <= 1`
    ScaledIdentity { r: f64 },
    /// `z (s + z)/(1 + conj(s) z)`, `|s| < 1`
    BlaschkeScaled { s: Complex64 },
}

impl SchwarzFn {
    pub fn identity() -> Self {
        Self::RotationPower { theta: 0.0, n: 1 }
    }

    pub fn rotation_power(theta: f64, n: u32) -> Result<Self> {
        if n == 0 || !theta.is_finite() {
            return Err(Error::InvalidSchwarz(format!(
                "rotation power needs n >= 1 and finite theta, got n = {n}, theta = {theta}"
            )));
        }
        Ok(Self::RotationPower { theta, n })
    }

    pub fn scaled_identity(r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidSchwarz(format!("scale must lie in (0, 1], got {r}")));
        }
        Ok(Self::ScaledIdentity { r })
    }

    pub fn blaschke_scaled(s: Complex64) -> Result<Self> {
        if !(s.norm() < 1.0) {
            return Err(Error::InvalidSchwarz(format!("need |s| < 1, got {s}")));
        }
        Ok(Self::BlaschkeScaled { s })
    }

    /// Rotations `e^{i theta} z` are the extremal Schwarz functions: they
    /// reach the boundary of every dominant.
    pub fn is_extremal(&self) -> bool {
        match *self {
            Self::RotationPower { n, .. } => n == 1,
            Self::ScaledIdentity { r } => r == 1.0,
            Self::BlaschkeScaled { .. } => false,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::RotationPower { theta, n } => format!("rotation_power(theta={theta},n={n})"),
            Self::ScaledIdentity { r } => format!("scaled_identity(r={r})"),
            Self::BlaschkeScaled { s } => format!("blaschke_scaled(s={}{:+}i)", s.re, s.im),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            Self::RotationPower { theta, n } => Complex64::from_polar(1.0, theta) * z.powu(n),
            Self::ScaledIdentity { r } => z * r,
            Self::BlaschkeScaled { s } => z * (s + z) / (ONE + s.conj() * z),
        }
    }

    /// Taylor series truncated at order `k`; the Blaschke factor is expanded
    /// through the geometric series of `1/(1 + conj(s) z)`.
    pub fn series(&self, k: usize) -> TaylorSeries {
        let k = k.max(1);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        match *self {
            Self::RotationPower { theta, n } => {
                if (n as usize) <= k {
                    coeffs[n as usize] = Complex64::from_polar(1.0, theta);
                }
            }
            Self::ScaledIdentity { r } => coeffs[1] = Complex64::new(r, 0.0),
            Self::BlaschkeScaled { s } => {
                // z (s + z) sum_j (-conj s)^j z^j
                let ratio = -s.conj();
                let mut g = ONE;
                for j in 0..k {
                    coeffs[j + 1] += s * g;
                    if j + 2 <= k {
                        coeffs[j + 2] += g;
                    }
                    g *= ratio;
                }
            }
        }
        TaylorSeries::new(coeffs).expect("finite Schwarz coefficients")
    }
}

/// Sample points on concentric circles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    radii: Vec<f64>,
    angles: usize,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        Self::geometric(12, 0.3, DEFAULT_R_TRUST, 720).expect("default grid is valid")
    }
}

impl SamplingGrid {
    /// `n_radii` radii spaced geometrically from `r_min` to `r_trust`.
    pub fn geometric(n_radii: usize, r_min: f64, r_trust: f64, angles: usize) -> Result<Self> {
        if n_radii == 0 || angles == 0 {
            return Err(Error::InvalidParams("grid needs at least one radius and angle".into()));
        }
        if !(r_trust > 0.0 && r_trust < 1.0) {
            return Err(Error::InvalidParams(format!(
                "r_trust must lie in (0, 1), got {r_trust}"
            )));
        }
        let r_min = r_min.min(r_trust);
        if !(r_min > 0.0) {
            return Err(Error::InvalidParams(format!("r_min must be positive, got {r_min}")));
        }
        let radii = if n_radii == 1 {
            vec![r_trust]
        } else {
            let ratio = (r_trust / r_min).powf(1.0 / (n_radii - 1) as f64);
            let mut radii: Vec<f64> = (0..n_radii).map(|i| r_min * ratio.powi(i as i32)).collect();
            radii[n_radii - 1] = r_trust;
            radii
        };
        Ok(Self { radii, angles })
    }

    /// Same shape with the outer radius replaced.
    pub fn with_r_trust(&self, r_trust: f64) -> Result<Self> {
        Self::geometric(self.radii.len(), self.radii[0], r_trust, self.angles)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn r_trust(&self) -> f64 {
        *self.radii.last().expect("grid has radii")
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All sample points, ordered by radius then angle.
    pub fn points(&self) -> Vec<Complex64> {
        let step = 2.0 * PI / self.angles as f64;
        self.radii
            .iter()
            .flat_map(|&r| (0..self.angles).map(move |j| Complex64::from_polar(r, step * j as f64)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Indeterminate,
}

impl Outcome {
    fn from_margin(margin: f64) -> Self {
        if margin > INDETERMINATE_BAND {
            Self::Holds
        } else if margin < -INDETERMINATE_BAND {
            Self::Fails
        } else {
            Self::Indeterminate
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MoebiusInverse,
    Winding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialMargin {
    pub radius: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubordinationVerdict {
    pub outcome: Outcome,
    /// Moebius path: `min (1 - |q^{-1}(F(z))|)`. Winding path: signed distance
    /// from `F(z)` to the boundary curve, positive inside.
    pub margin: f64,
    pub witness: Complex64,
    pub samples_used: usize,
    pub method: Method,
    /// The same margin restricted to each sampling circle.
    pub radial_margins: Vec<RadialMargin>,
    /// Moebius path only: `min (|z| - |q^{-1}(F(z))|)`, the slack in the
    /// Schwarz-lemma bound `|w(z)| <= |z|` for `w = q^{-1} o F`.
    pub schwarz_margin: Option<f64>,
    pub schwarz_witness: Option<Complex64>,
}

impl SubordinationVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

fn check_center(f0: Complex64, q0: Complex64) -> Result<()> {
    if (f0 - q0).norm() > CENTER_TOL {
        return Err(Error::CenterMismatch { f0, q0 });
    }
    Ok(())
}

/// Minimum over `values` (paired with points), keeping the first on ties.
fn argmin(values: impl Iterator<Item = (f64, Complex64)>) -> (f64, Complex64) {
    values.fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |best, (v, z)| {
        if v < best.0 || v.is_nan() {
            (v, z)
        } else {
            best
        }
    })
}

fn radial_minima(grid: &SamplingGrid, per_sample: &[f64]) -> Vec<RadialMargin> {
    grid.radii()
        .iter()
        .zip(per_sample.chunks(grid.angles()))
        .map(|(&radius, chunk)| RadialMargin {
            radius,
            margin: chunk.iter().copied().fold(f64::INFINITY, f64::min),
        })
        .collect()
}

/// `F ≺ q`, choosing the exact Moebius inverse when available and the
/// winding test otherwise.
pub fn check_subordination(
    f: &TaylorSeries,
    q: &QFunction,
    grid: &SamplingGrid,
) -> Result<SubordinationVerdict> {
    match q {
        QFunction::Moebius(m) => check_subordination_moebius(f, m, grid),
        QFunction::Series(_) => {
            check_center(f.coeff(0), ONE)?;
            let curve = BoundaryCurve::new(|w| q.value(w), BOUNDARY_RADIUS, WINDING_SEGMENTS)?;
            winding_verdict(|z| Ok(f.eval(z)), &curve, grid)
        }
    }
}

/// Moebius path: `w = q^{-1}(F(z))` must lie in the unit disk.
pub fn check_subordination_moebius(
    f: &TaylorSeries,
    q: &MoebiusQ,
    grid: &SamplingGrid,
) -> Result<SubordinationVerdict> {
    check_center(f.coeff(0), ONE)?;
    moebius_verdict(|z| Ok(f.eval(z)), q, grid)
}

/// Moebius path for an arbitrary function of `z` (for example a pointwise
/// power of a series).
pub fn moebius_verdict<F>(f: F, q: &MoebiusQ, grid: &SamplingGrid) -> Result<SubordinationVerdict>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let points = grid.points();
    let inverses: Vec<Complex64> = points
        .par_iter()
        .map(|&z| q.inverse(f(z)?))
        .collect::<Result<_>>()?;
    let disk: Vec<f64> = inverses.iter().map(|u| 1.0 - u.norm()).collect();
    let (margin, witness) = argmin(disk.iter().copied().zip(points.iter().copied()));
    let (schwarz, schwarz_witness) = argmin(
        inverses
            .iter()
            .zip(&points)
            .map(|(u, z)| (z.norm() - u.norm(), *z)),
    );
    Ok(SubordinationVerdict {
        outcome: Outcome::from_margin(margin),
        margin,
        witness,
        samples_used: points.len(),
        method: Method::MoebiusInverse,
        radial_margins: radial_minima(grid, &disk),
        schwarz_margin: Some(schwarz),
        schwarz_witness: Some(schwarz_witness),
    })
}

/// Polygonal approximation of a dominant's boundary curve `h(C e^{it})`.
///
/// Starting from `segments` equal steps in `t`, each step is bisected until
/// the curve's midpoint lies within `1e-6 max(1, |h|)` of the chord, so the
/// polygon's winding number matches the curve's away from a thin band.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    points: Vec<Complex64>,
    ts: Vec<f64>,
}

const MAX_BISECTIONS: u32 = 14;

impl BoundaryCurve {
    pub fn new<H>(h: H, radius: f64, segments: usize) -> Result<Self>
    where
        H: Fn(Complex64) -> Result<Complex64>,
    {
        let segments = segments.max(8);
        let at = |t: f64| h(Complex64::from_polar(radius, t));
        let step = 2.0 * PI / segments as f64;
        let mut points = Vec::with_capacity(segments + 1);
        let mut ts = Vec::with_capacity(segments + 1);
        let mut prev = at(0.0)?;
        points.push(prev);
        ts.push(0.0);
        for j in 1..=segments {
            let t1 = step * j as f64;
            let next = at(t1)?;
            refine(&at, t1 - step, t1, prev, next, 0, &mut points, &mut ts)?;
            prev = next;
        }
        Ok(Self { points, ts })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn params(&self) -> &[f64] {
        &self.ts
    }

    /// Winding number of the closed polygon about `w` and the distance from
    /// `w` to it.
    pub fn winding_and_distance(&self, w: Complex64) -> (f64, f64) {
        let mut total = 0.0;
        let mut dist2 = f64::INFINITY;
        for pair in self.points.windows(2) {
            let (a, b) = (pair[0] - w, pair[1] - w);
            total += (b * a.conj()).arg();
            dist2 = dist2.min(segment_distance2(a, b));
        }
        (total / (2.0 * PI), dist2.sqrt())
    }
}

#[allow(clippy::too_many_arguments)]
fn refine<A>(
    at: &A,
    t0: f64,
    t1: f64,
    p0: Complex64,
    p1: Complex64,
    depth: u32,
    points: &mut Vec<Complex64>,
    ts: &mut Vec<f64>,
) -> Result<()>
where
    A: Fn(f64) -> Result<Complex64>,
{
    if depth < MAX_BISECTIONS {
        let tm = 0.5 * (t0 + t1);
        let pm = at(tm)?;
        let scale = p0.norm().max(p1.norm()).max(1.0);
        if (pm - 0.5 * (p0 + p1)).norm() > 1e-6 * scale {
            refine(at, t0, tm, p0, pm, depth + 1, points, ts)?;
            return refine(at, tm, t1, pm, p1, depth + 1, points, ts);
        }
    }
    points.push(p1);
    ts.push(t1);
    Ok(())
}

/// Squared distance from the origin to the segment `[a, b]`.
fn segment_distance2(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm_sqr();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len2).clamp(0.0, 1.0);
    (a + d * t).norm_sqr()
}

/// Winding path: `F(z)` must lie inside the image of the boundary curve
/// (winding number 1). The margin is the signed distance to the curve.
pub fn winding_verdict<F>(f: F, curve: &BoundaryCurve, grid: &SamplingGrid) -> Result<SubordinationVerdict>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let points = grid.points();
    let signed: Vec<f64> = points
        .par_iter()
        .map(|&z| {
            let w = f(z)?;
            if !w.is_finite() {
                return Err(Error::NonFinite(0));
            }
            let (winding, dist) = curve.winding_and_distance(w);
            Ok(if (winding - 1.0).abs() < 0.5 { dist } else { -dist })
        })
        .collect::<Result<_>>()?;
    let (margin, witness) = argmin(signed.iter().copied().zip(points.iter().copied()));
    Ok(SubordinationVerdict {
        outcome: Outcome::from_margin(margin),
        margin,
        witness,
        samples_used: points.len(),
        method: Method::Winding,
        radial_margins: radial_minima(grid, &signed),
        schwarz_margin: None,
        schwarz_witness: None,
    })
}

/// `F ≺ h` for a dominant given pointwise (for example `q + gamma z q'`),
/// by the winding test. `h` is assumed univalent.
pub fn check_subordination_to<H>(
    f: &TaylorSeries,
    h: H,
    grid: &SamplingGrid,
) -> Result<SubordinationVerdict>
where
    H: Fn(Complex64) -> Result<Complex64>,
{
    check_center(f.coeff(0), h(Complex64::new(0.0, 0.0))?)?;
    let curve = BoundaryCurve::new(h, BOUNDARY_RADIUS, WINDING_SEGMENTS)?;
    winding_verdict(|z| Ok(f.eval(z)), &curve, grid)
}

/// Forces the winding path for a Moebius or series dominant.
pub fn check_subordination_winding(
    f: &TaylorSeries,
    q: &QFunction,
    grid: &SamplingGrid,
) -> Result<SubordinationVerdict> {
    check_subordination_to(f, |w| q.value(w), grid)
}

/// Number of zeros of `g` inside `|z| < radius`, from the winding of
/// `g(radius e^{it})` about the origin.
pub fn count_zeros<G>(g: G, radius: f64) -> Result<i64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let curve = BoundaryCurve::new(g, radius, WINDING_SEGMENTS)?;
    let (winding, dist) = curve.winding_and_distance(Complex64::new(0.0, 0.0));
    if dist == 0.0 {
        return Err(Error::FunctionVanishes(Complex64::new(radius, 0.0)));
    }
    Ok(winding.round() as i64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub min_value: f64,
    pub floor: f64,
    pub passed: bool,
}

struct SeriesDerivs {
    q: TaylorSeries,
    zq1: TaylorSeries,
    zzq1: TaylorSeries,
}

impl SeriesDerivs {
    fn new(q: &TaylorSeries, r: f64) -> Result<Self> {
        let zq1 = q.derivative_zdz();
        let zzq1 = zq1.derivative_zdz();
        // zq' always vanishes at 0; any further zero means q' vanishes.
        if count_zeros(|w| Ok(zq1.eval(w)), r)? != 1 {
            return Err(Error::DerivativeVanishes(Complex64::new(r, 0.0)));
        }
        Ok(Self {
            q: q.clone(),
            zq1,
            zzq1,
        })
    }

    fn convexity(&self, w: Complex64) -> Result<Complex64> {
        let d = self.zq1.eval(w);
        if d.norm() < 1e-300 {
            return Err(Error::DerivativeVanishes(w));
        }
        Ok(self.zzq1.eval(w) / d)
    }
}

fn grid_min<E>(grid: &SamplingGrid, expr: E) -> Result<f64>
where
    E: Fn(Complex64) -> Result<f64> + Sync,
{
    let values: Vec<f64> = grid.points().par_iter().map(|&z| expr(z)).collect::<Result<_>>()?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// Minimum of `Re(1 + z q''/q')` over `|z| <= r_trust` compared with `floor`.
///
/// For Moebius `q` the minimum is the closed form `(1 - |B| r)/(1 + |B| r)`;
/// otherwise it is a grid minimum.
pub fn check_convexity_condition(
    q: &QFunction,
    floor: f64,
    grid: &SamplingGrid,
) -> Result<HypothesisCheck> {
    let min_value = match q {
        QFunction::Moebius(m) => {
            let br = m.b().abs() * grid.r_trust();
            (1.0 - br) / (1.0 + br)
        }
        QFunction::Series(s) => {
            let d = SeriesDerivs::new(s, grid.r_trust())?;
            grid_min(grid, |z| Ok(d.convexity(z)?.re))?
        }
    };
    Ok(HypothesisCheck {
        name: "convexity".into(),
        min_value,
        floor,
        passed: min_value > floor,
    })
}

/// The convexity condition over the whole open disk. For Moebius `q` this
/// compares the non-attained infimum `(1 - |B|)/(1 + |B|)` with the floor,
/// so equality passes; otherwise it falls back to the grid check.
pub fn check_convexity_infimum(
    q: &QFunction,
    floor: f64,
    grid: &SamplingGrid,
) -> Result<HypothesisCheck> {
    match q {
        QFunction::Moebius(m) => {
            let inf = m.convexity_bound();
            Ok(HypothesisCheck {
                name: "convexity".into(),
                min_value: inf,
                floor,
                passed: inf >= floor - 1e-12,
            })
        }
        QFunction::Series(_) => check_convexity_condition(q, floor, grid),
    }
}

/// Minimum of `Re(1 + z q''/q' - z q'/q)` over the grid; passes iff positive.
pub fn check_q_starlike(q: &QFunction, grid: &SamplingGrid) -> Result<HypothesisCheck> {
    let min_value = match q {
        QFunction::Moebius(m) => {
            let (a, b) = (m.a(), m.b());
            grid_min(grid, |z| {
                let den = (1.0 + a * z) * (1.0 + b * z);
                if den.norm() == 0.0 {
                    return Err(Error::MoebiusSingular(z));
                }
                Ok(((1.0 - a * b * z * z) / den).re)
            })?
        }
        QFunction::Series(s) => {
            let r = grid.r_trust();
            if count_zeros(|w| Ok(s.eval(w)), r)? != 0 {
                return Err(Error::FunctionVanishes(Complex64::new(r, 0.0)));
            }
            let d = SeriesDerivs::new(s, r)?;
            grid_min(grid, |z| {
                let qz = d.q.eval(z);
                if qz.norm() < 1e-300 {
                    return Err(Error::FunctionVanishes(z));
                }
                Ok((d.convexity(z)? - d.zq1.eval(z) / qz).re)
            })?
        }
    };
    Ok(HypothesisCheck {
        name: "q_starlike".into(),
        min_value,
        floor: 0.0,
        passed: min_value > 0.0,
    })
}

/// Samples `g(radius e^{it})` at `n` equally spaced `t`.
pub fn sample_curve<G>(g: G, radius: f64, n: usize) -> Result<Vec<(f64, Complex64)>>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            Ok((t, g(Complex64::from_polar(radius, t))?))
        })
        .collect()
}

/// CSV with header `t,re,im`.
pub fn curve_csv(samples: &[(f64, Complex64)]) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, w) in samples {
        out.push_str(&format!("{t},{},{}\n", w.re, w.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_grid() -> SamplingGrid {
        SamplingGrid::geometric(4, 0.3, 0.95, 96).unwrap()
    }

    #[test]
    fn schwarz_series_examples() {
        assert_eq!(SchwarzFn::identity().series(5), TaylorSeries::identity(5));
        let b0 = SchwarzFn::blaschke_scaled(c(0.0, 0.0)).unwrap().series(4);
        assert_eq!(b0.coeffs()[2], c(1.0, 0.0));
        assert!(b0.coeffs().iter().enumerate().all(|(i, v)| i == 2 || *v == c(0.0, 0.0)));

        // z (0.5 + z)(1 - 0.5 z + 0.25 z^2 - 0.125 z^3)
        let b = SchwarzFn::blaschke_scaled(c(0.5, 0.0)).unwrap().series(4);
        let expected = [0.0, 0.5, 0.75, -0.375, 0.1875];
        for (got, want) in b.coeffs().iter().zip(expected) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn schwarz_eval_matches_series() {
        let fams = [
            SchwarzFn::rotation_power(0.7, 3).unwrap(),
            SchwarzFn::scaled_identity(0.4).unwrap(),
            SchwarzFn::blaschke_scaled(c(0.3, -0.5)).unwrap(),
        ];
        let z = c(0.2, 0.35);
        for w in fams {
            let s = w.series(80);
            assert!((s.eval(z) - w.eval(z)).norm() < 1e-14, "{w:?}");
            assert_eq!(w.eval(c(0.0, 0.0)), c(0.0, 0.0));
            assert!(w.eval(c(0.0, 0.99)).norm() < 1.0);
        }
        assert!(SchwarzFn::blaschke_scaled(c(1.0, 0.0)).is_err());
        assert!(SchwarzFn::scaled_identity(1.5).is_err());
    }

    #[test]
    fn own_expansion_is_subordinate() {
        let q = MoebiusQ::new(1.0, -0.5).unwrap();
        let grid = SamplingGrid::default();
        let v = check_subordination(&q.series(256), &QFunction::Moebius(q), &grid).unwrap();
        assert!(v.holds());
        assert!((v.margin - 0.05).abs() < 1e-9);
        assert!(v.schwarz_margin.unwrap().abs() < 1e-9);
    }

    #[test]
    fn composition_with_square_holds() {
        let q = MoebiusQ::half_plane();
        let k = 256;
        let f = q.series(k).compose(&SchwarzFn::rotation_power(0.0, 2).unwrap().series(k)).unwrap();
        let v = check_subordination(&f, &QFunction::Moebius(q), &SamplingGrid::default()).unwrap();
        assert!(v.holds());
        assert!(v.schwarz_margin.unwrap() > 0.0);
    }

    #[test]
    fn disk_containment_failure() {
        let q = QFunction::Moebius(MoebiusQ::new(1.0, 0.0).unwrap());
        let f = TaylorSeries::from_real(&[1.0, 1.1], 4).unwrap();
        let grid = small_grid();
        let v = check_subordination(&f, &q, &grid).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        let w = check_subordination_winding(&f, &q, &grid).unwrap();
        assert_eq!(w.outcome, Outcome::Fails);
    }

    #[test]
    fn center_mismatch_rejected() {
        let q = QFunction::Moebius(MoebiusQ::half_plane());
        let f = TaylorSeries::from_real(&[1.5, 0.1], 4).unwrap();
        assert!(matches!(
            check_subordination(&f, &q, &small_grid()),
            Err(Error::CenterMismatch { .. })
        ));
    }

    #[test]
    fn winding_counts() {
        let curve = BoundaryCurve::new(|w| Ok(w), 1.0, 64).unwrap();
        let (inside, _) = curve.winding_and_distance(c(0.2, 0.1));
        let (outside, d) = curve.winding_and_distance(c(1.5, 0.0));
        assert!((inside - 1.0).abs() < 1e-12);
        assert!(outside.abs() < 1e-12);
        assert!((d - 0.5).abs() < 1e-3);
        assert_eq!(count_zeros(|w| Ok(w * w - 0.25), 0.9).unwrap(), 2);
    }

    #[test]
    fn series_q_uses_winding() {
        let m = MoebiusQ::new(1.0, 0.5).unwrap();
        let q = QFunction::series_q(m.series(200)).unwrap();
        let f = m
            .series(200)
            .compose(&SchwarzFn::scaled_identity(0.5).unwrap().series(200))
            .unwrap();
        let v = check_subordination(&f, &q, &small_grid()).unwrap();
        assert_eq!(v.method, Method::Winding);
        assert!(v.holds());
    }

    #[test]
    fn convexity_examples() {
        let grid = SamplingGrid::default();
        let b0 = QFunction::Moebius(MoebiusQ::new(1.0, 0.0).unwrap());
        let chk = check_convexity_condition(&b0, 0.0, &grid).unwrap();
        assert_eq!(chk.min_value, 1.0);
        assert!(chk.passed);

        let half = QFunction::Moebius(MoebiusQ::half_plane());
        let chk = check_convexity_condition(&half, 0.0, &grid).unwrap();
        assert!((chk.min_value - 0.05 / 1.95).abs() < 1e-15);
        assert!(chk.passed);

        let bm = QFunction::Moebius(MoebiusQ::new(1.0, -0.5).unwrap());
        let chk = check_convexity_condition(&bm, 1.0 / 3.0 - 1e-6, &grid).unwrap();
        assert!(chk.min_value >= 1.0 / 3.0 && chk.passed);

        let inf = check_convexity_infimum(&half, 0.0, &grid).unwrap();
        assert!(inf.passed && inf.min_value == 0.0);
    }

    #[test]
    fn convexity_series_matches_closed_form() {
        let m = MoebiusQ::new(0.8, -0.6).unwrap();
        let grid = SamplingGrid::geometric(3, 0.3, 0.8, 64).unwrap();
        let closed = check_convexity_condition(&QFunction::Moebius(m), 0.0, &grid).unwrap();
        let series = QFunction::series_q(m.series(300)).unwrap();
        let sampled = check_convexity_condition(&series, 0.0, &grid).unwrap();
        // the grid includes z = -0.8, where the closed-form minimum is attained
        assert!((closed.min_value - sampled.min_value).abs() < 1e-10);
    }

    #[test]
    fn starlike_examples() {
        let grid = small_grid();
        let half = check_q_starlike(&QFunction::Moebius(MoebiusQ::half_plane()), &grid).unwrap();
        assert!(half.passed);
        let eps = 1e-3;
        let near_one = QFunction::series_q(TaylorSeries::from_real(&[1.0, eps], 8).unwrap()).unwrap();
        let chk = check_q_starlike(&near_one, &grid).unwrap();
        assert!(chk.passed);
        assert!((chk.min_value - (1.0 - eps * 0.95)).abs() < 1e-5);
        let vanishing =
            QFunction::series_q(TaylorSeries::from_real(&[1.0, 1.0 / 0.9], 8).unwrap()).unwrap();
        assert!(matches!(
            check_q_starlike(&vanishing, &grid),
            Err(Error::FunctionVanishes(_))
        ));
    }

    #[test]
    fn curve_csv_header() {
        let samples = sample_curve(|w| Ok(w), 0.5, 4).unwrap();
        let csv = curve_csv(&samples);
        assert!(csv.starts_with("t,re,im\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}

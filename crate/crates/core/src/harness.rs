//! Constructive instances of the three subordination theorems.
//!
//! Each generator starts from a Schwarz function `w`, builds the premise
//! target `h o w` (subordinate to the premise dominant by definition),
//! inverts the first-order relation linking the target to the operator image
//! coefficient by coefficient, and divides out the operator's multipliers to
//! recover `f`. The evaluators then recompute everything from `f` alone and
//! check hypothesis, premise and conclusion on a sampling grid.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{apply_scaled, OperatorParams};
use crate::series::{scaled_laurent_zdz, LaurentFunction, TaylorSeries};
use crate::special::{coefficient_multiplier, QFunction};
use crate::subordination::{
    check_convexity_infimum, check_q_starlike, check_subordination, check_subordination_to,
    count_zeros, HypothesisCheck, Outcome, SamplingGrid, SchwarzFn, SubordinationVerdict,
};

pub mod batch;
pub mod corollary;

/// Truncation order used by the harness. Evaluating at `|z| = 0.95` near a
/// boundary pole of `q` needs far more than 64 terms.
pub const HARNESS_ORDER: usize = 512;
/// Divisors closer to zero than this reject the instance.
pub const RESONANCE_TOL: f64 = 1e-9;
/// Tolerance of the proof identity `Omega = zeta P + z P'`.
pub const OMEGA_TOL: f64 = 1e-10;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Solves `delta k + gamma z k' = target` for `k`: `k_n = target_n / (delta + gamma n)`.
pub fn solve_linear_ode(delta: Complex64, gamma: Complex64, target: &TaylorSeries) -> Result<TaylorSeries> {
    if gamma == ZERO {
        return Err(Error::InvalidTheorem("gamma must be nonzero".into()));
    }
    let coeffs = target
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, t)| {
            let divisor = delta + gamma * n as f64;
            if divisor.norm() < RESONANCE_TOL {
                return Err(Error::Resonance { index: n, divisor });
            }
            Ok(t / divisor)
        })
        .collect::<Result<Vec<_>>>()?;
    TaylorSeries::new(coeffs)
}

/// `delta k + gamma z k'`.
pub fn linear_ode_forward(delta: Complex64, gamma: Complex64, k: &TaylorSeries) -> Result<TaylorSeries> {
    k.scale(delta).add(&k.derivative_zdz().scale(gamma))
}

/// Which pair of conditions of the first theorem is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// shifts `a -> a + 1`
    A,
    /// shifts `c -> c - 1`
    C,
    /// shifts `m -> m - 1`
    M,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::A, Branch::C, Branch::M];

    pub fn name(&self) -> &'static str {
        match self {
            Branch::A => "A",
            Branch::C => "C",
            Branch::M => "M",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Branch::A),
            "C" | "c" => Ok(Branch::C),
            "M" | "m" => Ok(Branch::M),
            _ => Err(Error::Parse(format!("unknown branch {s:?} (expected A, C or M)"))),
        }
    }
}

/// Dominant pieces composed with a Schwarz function.
struct Composed {
    q: TaylorSeries,
    zq1: TaylorSeries,
}

fn compose_dominant(q: &QFunction, omega: &TaylorSeries) -> Result<Composed> {
    let k = omega.order();
    match q {
        QFunction::Moebius(m) => {
            let one = TaylorSeries::one(k);
            let den = one.add(&omega.scale(Complex64::new(m.b(), 0.0)))?;
            let num = one.add(&omega.scale(Complex64::new(m.a(), 0.0)))?;
            let qw = num.div(&den)?;
            let zq1 = omega
                .scale(Complex64::new(m.a() - m.b(), 0.0))
                .div(&den)?
                .div(&den)?;
            Ok(Composed { q: qw, zq1 })
        }
        QFunction::Series(s) => {
            let s = s.truncate(k);
            Ok(Composed {
                q: s.compose(omega)?,
                zq1: s.derivative_zdz().compose(omega)?,
            })
        }
    }
}

/// `f` from the scaled series `G = z^p I f`: each coefficient is divided by
/// the operator's multiplier.
pub fn recover_function(op: &OperatorParams, scaled_image: &TaylorSeries) -> Result<LaurentFunction> {
    let p = op.p as i64;
    let tail = scaled_image.coeffs()[1..]
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let k = i as i64 + 1 - p;
            let mult = coefficient_multiplier(op, k)?;
            if mult.norm() == 0.0 || !mult.is_finite() {
                return Err(Error::InvalidParams(format!("multiplier at k = {k} is {mult}")));
            }
            Ok(g / mult)
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentFunction::new(op.p, tail)
}

fn check_nonzero(name: &str, v: Complex64) -> Result<()> {
    if v == ZERO || !v.is_finite() {
        return Err(Error::InvalidTheorem(format!("{name} must be finite and nonzero, got {v}")));
    }
    Ok(())
}

/// Grids and truncation used by the evaluators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub order: usize,
    /// Grid for the conclusion and the hypothesis checks.
    pub grid: SamplingGrid,
    /// Coarser grid for the premise, whose dominant needs the winding test.
    pub premise_grid: SamplingGrid,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            order: HARNESS_ORDER,
            grid: SamplingGrid::default(),
            premise_grid: SamplingGrid::geometric(3, 0.3, crate::series::DEFAULT_R_TRUST, 96)
                .expect("valid premise grid"),
        }
    }
}

impl HarnessConfig {
    pub fn with_r_trust(&self, r_trust: f64) -> Result<Self> {
        Ok(Self {
            order: self.order,
            grid: self.grid.with_r_trust(r_trust)?,
            premise_grid: self.premise_grid.with_r_trust(r_trust)?,
        })
    }
}

/// Everything recomputed from a recovered `f`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub hypothesis: HypothesisCheck,
    /// The premise expression built from `f`.
    pub premise_series: TaylorSeries,
    pub premise: SubordinationVerdict,
    /// The conclusion expression built from `f`.
    pub conclusion_series: TaylorSeries,
    pub conclusion: SubordinationVerdict,
    /// Third theorem only: `max |Omega_n - (zeta P + z P')_n|`.
    pub identity_residual: Option<f64>,
}

impl Evaluation {
    /// The margin reported for the conclusion: the Schwarz-lemma slack
    /// `min (|z| - |q^{-1}(F(z))|)` when `q` is Moebius, otherwise the
    /// winding margin.
    pub fn conclusion_margin(&self) -> f64 {
        conclusion_margin(&self.conclusion)
    }

    pub fn outcome(&self) -> Outcome {
        let m = self.conclusion_margin();
        if m > crate::subordination::INDETERMINATE_BAND {
            Outcome::Holds
        } else if m < -crate::subordination::INDETERMINATE_BAND {
            Outcome::Fails
        } else {
            Outcome::Indeterminate
        }
    }
}

pub fn conclusion_margin(v: &SubordinationVerdict) -> f64 {
    v.schwarz_margin.unwrap_or(v.margin)
}

// ---------------------------------------------------------------------------
// first theorem: k + gamma z k' ≺ q + gamma z q'  =>  k ≺ q

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Params {
    pub op: OperatorParams,
    pub xi: Complex64,
    pub branch: Branch,
    pub q: QFunction,
}

impl Theorem1Params {
    pub fn new(op: OperatorParams, xi: Complex64, branch: Branch, q: QFunction) -> Result<Self> {
        op.validate()?;
        check_nonzero("xi", xi)?;
        if branch == Branch::C {
            let d = op.c - op.p_mu() - 1.0;
            if d.norm() < 1e-12 {
                return Err(Error::InvalidTheorem(
                    "branch C needs c != p mu + 1".into(),
                ));
            }
        }
        Ok(Self { op, xi, branch, q })
    }

    /// `mu xi / (p (a - p mu))`, `mu xi / (p (c - p mu - 1))` or `lambda xi / (l p)`.
    pub fn gamma(&self) -> Complex64 {
        let op = &self.op;
        let p = op.p as f64;
        match self.branch {
            Branch::A => op.mu * self.xi / (p * (op.a - op.p_mu())),
            Branch::C => op.mu * self.xi / (p * (op.c - op.p_mu() - 1.0)),
            Branch::M => op.lambda * self.xi / (op.ell * p),
        }
    }

    /// `max{0, -Re(1/gamma)}`.
    pub fn floor(&self) -> f64 {
        (-(1.0 / self.gamma()).re).max(0.0)
    }

    /// Parameters of the shifted operator appearing in the premise.
    pub fn shifted_op(&self) -> OperatorParams {
        match self.branch {
            Branch::A => self.op.shift_a(1.0),
            Branch::C => self.op.shift_c(-1.0),
            Branch::M => self.op.shift_m(-1),
        }
    }

    pub fn hypothesis(&self, grid: &SamplingGrid) -> Result<HypothesisCheck> {
        check_convexity_infimum(&self.q, self.floor(), grid)
    }
}

#[derive(Debug, Clone)]
pub struct Theorem1Instance {
    pub f: LaurentFunction,
    /// `k = z^p I f`
    pub k: TaylorSeries,
    /// `(q + gamma z q') o w`
    pub target: TaylorSeries,
}

impl Theorem1Instance {
    /// `max |(k + gamma z k') - target|`.
    pub fn forward_residual(&self, tp: &Theorem1Params) -> Result<f64> {
        Ok(linear_ode_forward(ONE, tp.gamma(), &self.k)?.max_abs_diff(&self.target))
    }
}

pub fn generate_theorem1_instance(
    tp: &Theorem1Params,
    omega: &SchwarzFn,
    order: usize,
) -> Result<Theorem1Instance> {
    let gamma = tp.gamma();
    let parts = compose_dominant(&tp.q, &omega.series(order))?;
    let target = parts.q.add(&parts.zq1.scale(gamma))?;
    let k = solve_linear_ode(ONE, gamma, &target)?;
    let f = recover_function(&tp.op, &k)?;
    Ok(Theorem1Instance { f, k, target })
}

pub fn evaluate_theorem1(
    tp: &Theorem1Params,
    f: &LaurentFunction,
    cfg: &HarnessConfig,
) -> Result<Evaluation> {
    let hypothesis = tp.hypothesis(&cfg.grid)?;
    let k = apply_scaled(&tp.op, f)?;
    let shifted = apply_scaled(&tp.shifted_op(), f)?;
    let p = tp.op.p as f64;
    let premise_series = shifted
        .scale(tp.xi / p)
        .add(&k.scale((p - tp.xi) / p))?;
    let gamma = tp.gamma();
    let q = &tp.q;
    let premise = check_subordination_to(
        &premise_series,
        |w| Ok(q.value(w)? + gamma * q.zq_prime(w)?),
        &cfg.premise_grid,
    )?;
    let conclusion = check_subordination(&k, q, &cfg.grid)?;
    Ok(Evaluation {
        hypothesis,
        premise_series,
        premise,
        conclusion_series: k,
        conclusion,
        identity_residual: None,
    })
}

// ---------------------------------------------------------------------------
// second and third theorems share the bracket
// W = (tau z^p I(a+1) f + kappa z^p I(a) f)/(tau + kappa) and P = W^eta

/// `(eta, tau, kappa)` and the operator, shared by the second and third theorems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketParams {
    pub op: OperatorParams,
    pub eta: Complex64,
    pub tau: Complex64,
    pub kappa: Complex64,
}

impl BracketParams {
    pub fn new(op: OperatorParams, eta: Complex64, tau: Complex64, kappa: Complex64) -> Result<Self> {
        op.validate()?;
        check_nonzero("eta", eta)?;
        check_nonzero("tau + kappa", tau + kappa)?;
        if !(tau.is_finite() && kappa.is_finite()) {
            return Err(Error::InvalidTheorem("tau and kappa must be finite".into()));
        }
        Ok(Self { op, eta, tau, kappa })
    }

    /// `tau (a - p mu + mu n) + kappa (a - p mu)`.
    pub fn denominator(&self, n: usize) -> Complex64 {
        let s = self.op.a - self.op.p_mu();
        self.tau * (s + self.op.mu * n as f64) + self.kappa * s
    }

    /// The bracket `W` computed from `f`.
    pub fn bracket(&self, f: &LaurentFunction) -> Result<TaylorSeries> {
        let up = apply_scaled(&self.op.shift_a(1.0), f)?;
        let base = apply_scaled(&self.op, f)?;
        let sum = self.tau + self.kappa;
        up.scale(self.tau / sum).add(&base.scale(self.kappa / sum))
    }

    /// Inverts [`Self::bracket`]: the coefficient of `z^p I(a) f` at `z^n`
    /// is `W_n (tau + kappa)(a - p mu) / (tau (a - p mu + mu n) + kappa (a - p mu))`.
    pub fn function_from_bracket(&self, w: &TaylorSeries) -> Result<LaurentFunction> {
        let s = self.op.a - self.op.p_mu();
        let num = (self.tau + self.kappa) * s;
        let scale = self.tau.norm() + self.kappa.norm();
        let image = w
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, wn)| {
                let den = self.denominator(n);
                let size = scale * (s.norm() + self.op.mu * n as f64);
                if den.norm() < RESONANCE_TOL * size.max(1.0) {
                    return Err(Error::Resonance { index: n, divisor: den });
                }
                Ok(if n == 0 { ONE } else { wn * num / den })
            })
            .collect::<Result<Vec<_>>>()?;
        recover_function(&self.op, &TaylorSeries::new(image)?)
    }

    /// Pieces recomputed from `f`: `W`, `P = W^eta` and `z W'/W`, after
    /// checking that `W` has no zero in `|z| < r_trust`.
    fn from_function(&self, f: &LaurentFunction, grid: &SamplingGrid) -> Result<(TaylorSeries, TaylorSeries, TaylorSeries)> {
        let w = self.bracket(f)?;
        let r = grid.r_trust();
        let zeros = count_zeros(|z| Ok(w.eval(z)), r)?;
        if zeros != 0 {
            return Err(Error::BracketVanishes(Complex64::new(r, 0.0)));
        }
        let min = grid
            .points()
            .iter()
            .map(|&z| (w.eval(z).norm(), z))
            .fold((f64::INFINITY, ZERO), |b, x| if x.0 < b.0 { x } else { b });
        if min.0 < 1e-12 {
            return Err(Error::BracketVanishes(min.1));
        }
        let p = w.pow(self.eta)?;
        // p + z^p (z B')/(z^p B) for the Laurent bracket B = W/z^p
        let order = self.op.p as f64;
        let log_deriv = scaled_laurent_zdz(&w, self.op.p)
            .div(&w)?
            .add(&TaylorSeries::constant(Complex64::new(order, 0.0), w.order()))?;
        Ok((w, p, log_deriv))
    }
}

#[derive(Debug, Clone)]
pub struct BracketInstance {
    pub f: LaurentFunction,
    /// The bracket `W`.
    pub w: TaylorSeries,
    /// `P = W^eta`.
    pub p: TaylorSeries,
    /// The premise target the generator started from.
    pub target: TaylorSeries,
}

// second theorem: eta z W'/W ≺ z q'/q  =>  W^eta ≺ q

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Params {
    pub bracket: BracketParams,
    pub q: QFunction,
}

impl Theorem2Params {
    pub fn new(bracket: BracketParams, q: QFunction) -> Result<Self> {
        Ok(Self { bracket, q })
    }

    pub fn hypothesis(&self, grid: &SamplingGrid) -> Result<HypothesisCheck> {
        check_q_starlike(&self.q, grid)
    }
}

impl BracketInstance {
    /// Second theorem: `max |z P'/P - H|`.
    pub fn forward_residual_log(&self) -> Result<f64> {
        Ok(self
            .p
            .derivative_zdz()
            .div(&self.p)?
            .max_abs_diff(&self.target))
    }

    /// Third theorem: `max |zeta P + z P' - T|`.
    pub fn forward_residual_linear(&self, zeta: Complex64) -> Result<f64> {
        Ok(linear_ode_forward(zeta, ONE, &self.p)?.max_abs_diff(&self.target))
    }
}

pub fn generate_theorem2_instance(
    tp: &Theorem2Params,
    omega: &SchwarzFn,
    order: usize,
) -> Result<BracketInstance> {
    let parts = compose_dominant(&tp.q, &omega.series(order))?;
    let h = parts.zq1.div(&parts.q)?;
    // z P'/P = H  <=>  (log P)_n = H_n / n
    let mut log_p = vec![ZERO; order + 1];
    for (n, hn) in h.coeffs().iter().enumerate().skip(1) {
        log_p[n] = hn / n as f64;
    }
    let log_p = TaylorSeries::new(log_p)?;
    let p = log_p.exp();
    let w = log_p.scale(1.0 / tp.bracket.eta).exp();
    let f = tp.bracket.function_from_bracket(&w)?;
    Ok(BracketInstance { f, w, p, target: h })
}

/// Builds an instance from an explicit bracket `W` (with `W(0) = 1`).
pub fn theorem2_instance_from_bracket(
    tp: &Theorem2Params,
    w: TaylorSeries,
) -> Result<BracketInstance> {
    let f = tp.bracket.function_from_bracket(&w)?;
    let p = w.pow(tp.bracket.eta)?;
    let target = p.derivative_zdz().div(&p)?;
    Ok(BracketInstance { f, w, p, target })
}

pub fn evaluate_theorem2(
    tp: &Theorem2Params,
    f: &LaurentFunction,
    cfg: &HarnessConfig,
) -> Result<Evaluation> {
    let hypothesis = tp.hypothesis(&cfg.grid)?;
    let (_, p, log_deriv) = tp.bracket.from_function(f, &cfg.grid)?;
    let premise_series = log_deriv.scale(tp.bracket.eta);
    let q = &tp.q;
    let premise = check_subordination_to(
        &premise_series,
        |w| Ok(q.zq_prime(w)? / q.value(w)?),
        &cfg.premise_grid,
    )?;
    let conclusion = check_subordination(&p, q, &cfg.grid)?;
    Ok(Evaluation {
        hypothesis,
        premise_series,
        premise,
        conclusion_series: p,
        conclusion,
        identity_residual: None,
    })
}

// third theorem: zeta P + z P' ≺ zeta q + z q'  =>  P ≺ q

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Params {
    pub bracket: BracketParams,
    pub zeta: Complex64,
    pub q: QFunction,
}

impl Theorem3Params {
    pub fn new(bracket: BracketParams, zeta: Complex64, q: QFunction) -> Result<Self> {
        if !zeta.is_finite() {
            return Err(Error::InvalidTheorem(format!("zeta must be finite, got {zeta}")));
        }
        Ok(Self { bracket, zeta, q })
    }

    /// `max{0, -Re zeta}`.
    pub fn floor(&self) -> f64 {
        (-self.zeta.re).max(0.0)
    }

    pub fn hypothesis(&self, grid: &SamplingGrid) -> Result<HypothesisCheck> {
        check_convexity_infimum(&self.q, self.floor(), grid)
    }
}

pub fn generate_theorem3_instance(
    tp: &Theorem3Params,
    omega: &SchwarzFn,
    order: usize,
) -> Result<BracketInstance> {
    let parts = compose_dominant(&tp.q, &omega.series(order))?;
    let target = parts.q.scale(tp.zeta).add(&parts.zq1)?;
    let mut p = Vec::with_capacity(order + 1);
    // P(0) = q(0) = 1 also covers zeta = 0, where the n = 0 equation is 0 = 0.
    p.push(ONE);
    for (n, tn) in target.coeffs().iter().enumerate().skip(1) {
        let divisor = tp.zeta + n as f64;
        if divisor.norm() < RESONANCE_TOL {
            return Err(Error::Resonance { index: n, divisor });
        }
        p.push(tn / divisor);
    }
    let p = TaylorSeries::new(p)?;
    let w = p.pow(1.0 / tp.bracket.eta)?;
    let f = tp.bracket.function_from_bracket(&w)?;
    Ok(BracketInstance { f, w, p, target })
}

/// Evaluates the third theorem, including the identity
/// `Omega = zeta P + z P'` between the closed form of `Omega` (built from the
/// logarithmic derivative of the bracket) and the derivative of `P = W^eta`.
pub fn evaluate_theorem3(
    tp: &Theorem3Params,
    f: &LaurentFunction,
    cfg: &HarnessConfig,
) -> Result<Evaluation> {
    let hypothesis = tp.hypothesis(&cfg.grid)?;
    let (_, p, log_deriv) = tp.bracket.from_function(f, &cfg.grid)?;
    // Omega = W^eta [zeta + eta z W'/W]
    let omega = p.scale(tp.zeta).add(&p.mul(&log_deriv)?.scale(tp.bracket.eta))?;
    let identity_residual = Some(omega.max_abs_diff(&linear_ode_forward(tp.zeta, ONE, &p)?));
    let q = &tp.q;
    let zeta = tp.zeta;
    let premise = check_subordination_to(
        &omega,
        |w| Ok(zeta * q.value(w)? + q.zq_prime(w)?),
        &cfg.premise_grid,
    )?;
    let conclusion = check_subordination(&p, q, &cfg.grid)?;
    Ok(Evaluation {
        hypothesis,
        premise_series: omega,
        premise,
        conclusion_series: p,
        conclusion,
        identity_residual,
    })
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
    HypothesisFailed,
    Error,
}

impl From<Outcome> for Verdict {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Holds => Verdict::Holds,
            Outcome::Fails => Verdict::Fails,
            Outcome::Indeterminate => Verdict::Indeterminate,
        }
    }
}

/// A flattened parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Complex([f64; 2]),
    Text(String),
}

impl From<Complex64> for ParamValue {
    fn from(c: Complex64) -> Self {
        if c.im == 0.0 {
            ParamValue::Real(c.re)
        } else {
            ParamValue::Complex([c.re, c.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub id: usize,
    pub theorem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub branch: Option<String>,
    pub params: BTreeMap<String, ParamValue>,
    pub hypothesis: Option<HypothesisCheck>,
    pub premise_margin: Option<f64>,
    pub conclusion_margin: Option<f64>,
    pub verdict: Verdict,
    pub witness: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Any of the three theorems with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum TheoremParams {
    T1(Theorem1Params),
    T2(Theorem2Params),
    T3(Theorem3Params),
}

/// A generated instance of any theorem.
#[derive(Debug, Clone)]
pub enum Instance {
    T1(Theorem1Instance),
    Bracket(BracketInstance),
}

impl Instance {
    pub fn function(&self) -> &LaurentFunction {
        match self {
            Instance::T1(i) => &i.f,
            Instance::Bracket(i) => &i.f,
        }
    }
}

impl TheoremParams {
    pub fn name(&self) -> &'static str {
        match self {
            TheoremParams::T1(_) => "thm1",
            TheoremParams::T2(_) => "thm2",
            TheoremParams::T3(_) => "thm3",
        }
    }

    pub fn op(&self) -> &OperatorParams {
        match self {
            TheoremParams::T1(t) => &t.op,
            TheoremParams::T2(t) => &t.bracket.op,
            TheoremParams::T3(t) => &t.bracket.op,
        }
    }

    pub fn q(&self) -> &QFunction {
        match self {
            TheoremParams::T1(t) => &t.q,
            TheoremParams::T2(t) => &t.q,
            TheoremParams::T3(t) => &t.q,
        }
    }

    pub fn branch(&self) -> Option<Branch> {
        match self {
            TheoremParams::T1(t) => Some(t.branch),
            _ => None,
        }
    }

    pub fn hypothesis(&self, grid: &SamplingGrid) -> Result<HypothesisCheck> {
        match self {
            TheoremParams::T1(t) => t.hypothesis(grid),
            TheoremParams::T2(t) => t.hypothesis(grid),
            TheoremParams::T3(t) => t.hypothesis(grid),
        }
    }

    pub fn generate(&self, omega: &SchwarzFn, order: usize) -> Result<Instance> {
        Ok(match self {
            TheoremParams::T1(t) => Instance::T1(generate_theorem1_instance(t, omega, order)?),
            TheoremParams::T2(t) => Instance::Bracket(generate_theorem2_instance(t, omega, order)?),
            TheoremParams::T3(t) => Instance::Bracket(generate_theorem3_instance(t, omega, order)?),
        })
    }

    pub fn evaluate(&self, instance: &Instance, cfg: &HarnessConfig) -> Result<Evaluation> {
        let f = instance.function();
        match self {
            TheoremParams::T1(t) => evaluate_theorem1(t, f, cfg),
            TheoremParams::T2(t) => evaluate_theorem2(t, f, cfg),
            TheoremParams::T3(t) => evaluate_theorem3(t, f, cfg),
        }
    }

    /// Flattened parameters for reports.
    pub fn flatten(&self) -> BTreeMap<String, ParamValue> {
        let op = self.op();
        let mut m = BTreeMap::new();
        m.insert("p".into(), ParamValue::Int(op.p as i64));
        m.insert("m".into(), ParamValue::Int(op.m));
        m.insert("lambda".into(), ParamValue::Real(op.lambda));
        m.insert("l".into(), ParamValue::Real(op.ell));
        m.insert("mu".into(), ParamValue::Real(op.mu));
        m.insert("a".into(), op.a.into());
        m.insert("c".into(), op.c.into());
        match self.q() {
            QFunction::Moebius(q) => {
                m.insert("A".into(), ParamValue::Real(q.a()));
                m.insert("B".into(), ParamValue::Real(q.b()));
            }
            QFunction::Series(s) => {
                m.insert("q".into(), ParamValue::Text(format!("series(K={})", s.order())));
            }
        }
        match self {
            TheoremParams::T1(t) => {
                m.insert("xi".into(), t.xi.into());
            }
            TheoremParams::T2(t) => insert_bracket(&mut m, &t.bracket),
            TheoremParams::T3(t) => {
                insert_bracket(&mut m, &t.bracket);
                m.insert("zeta".into(), t.zeta.into());
            }
        }
        m
    }
}

fn insert_bracket(m: &mut BTreeMap<String, ParamValue>, b: &BracketParams) {
    m.insert("eta".into(), b.eta.into());
    m.insert("tau".into(), b.tau.into());
    m.insert("kappa".into(), b.kappa.into());
}

impl HarnessReport {
    fn skeleton(id: usize, tp: &TheoremParams, omega: &SchwarzFn, order: usize) -> Self {
        let mut params = tp.flatten();
        params.insert("omega".into(), ParamValue::Text(omega.label()));
        params.insert("K".into(), ParamValue::Int(order as i64));
        Self {
            id,
            theorem: tp.name().into(),
            preset: None,
            branch: tp.branch().map(|b| b.name().to_string()),
            params,
            hypothesis: None,
            premise_margin: None,
            conclusion_margin: None,
            verdict: Verdict::Error,
            witness: None,
            identity_residual: None,
            reduction_residual: None,
            detail: None,
        }
    }

    /// A report for an instance that could not be constructed.
    pub fn rejected(id: usize, theorem: &str, branch: Option<Branch>, detail: String) -> Self {
        Self {
            id,
            theorem: theorem.into(),
            preset: None,
            branch: branch.map(|b| b.name().to_string()),
            params: BTreeMap::new(),
            hypothesis: None,
            premise_margin: None,
            conclusion_margin: None,
            verdict: Verdict::Error,
            witness: None,
            identity_residual: None,
            reduction_residual: None,
            detail: Some(detail),
        }
    }
}

/// Full result of one run: the report plus the intermediate objects.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub report: HarnessReport,
    pub params: Option<TheoremParams>,
    pub instance: Option<Instance>,
    pub evaluation: Option<Evaluation>,
}

/// Checks the hypothesis, generates an instance, evaluates it from `f` and
/// summarizes. Errors become `error` reports.
pub fn run_theorem(
    id: usize,
    tp: &TheoremParams,
    omega: &SchwarzFn,
    cfg: &HarnessConfig,
) -> RunResult {
    let mut report = HarnessReport::skeleton(id, tp, omega, cfg.order);
    let hypothesis = match tp.hypothesis(&cfg.grid) {
        Ok(h) => h,
        Err(e) => {
            report.detail = Some(e.to_string());
            return RunResult { report, params: Some(tp.clone()), instance: None, evaluation: None };
        }
    };
    let passed = hypothesis.passed;
    report.hypothesis = Some(hypothesis);
    if !passed {
        report.verdict = Verdict::HypothesisFailed;
        return RunResult { report, params: Some(tp.clone()), instance: None, evaluation: None };
    }
    let instance = match tp.generate(omega, cfg.order) {
        Ok(i) => i,
        Err(e) => {
            report.detail = Some(e.to_string());
            return RunResult { report, params: Some(tp.clone()), instance: None, evaluation: None };
        }
    };
    match tp.evaluate(&instance, cfg) {
        Ok(ev) => {
            report.premise_margin = Some(ev.premise.margin);
            report.conclusion_margin = Some(ev.conclusion_margin());
            let witness = ev.conclusion.schwarz_witness.unwrap_or(ev.conclusion.witness);
            report.witness = Some([witness.re, witness.im]);
            report.identity_residual = ev.identity_residual;
            report.verdict = ev.outcome().into();
            if let Some(r) = ev.identity_residual {
                if !(r <= OMEGA_TOL) {
                    report.verdict = Verdict::Fails;
                    report.detail = Some(format!("Omega identity residual {r:e} above {OMEGA_TOL:e}"));
                }
            }
            RunResult { report, params: Some(tp.clone()), instance: Some(instance), evaluation: Some(ev) }
        }
        Err(e) => {
            report.detail = Some(e.to_string());
            RunResult { report, params: Some(tp.clone()), instance: Some(instance), evaluation: None }
        }
    }
}

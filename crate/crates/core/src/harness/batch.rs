//! Seeded random instances and parallel batches.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    BracketParams, Branch, HarnessConfig, HarnessReport, RunResult, Theorem1Params,
    Theorem2Params, Theorem3Params, TheoremParams,
};
use crate::error::{Error, Result};
use crate::operator::OperatorParams;
use crate::special::{MoebiusQ, QFunction};
use crate::subordination::{SamplingGrid, SchwarzFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    T1,
    T2,
    T3,
}

impl TheoremKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" | "thm1" => Some(Self::T1),
            "2" | "thm2" => Some(Self::T2),
            "3" | "thm3" => Some(Self::T3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QChoice {
    /// Random `-1 <= B < A <= 1`.
    Random,
    Fixed { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaChoice {
    Random,
    /// `zeta = (|B| - 1)/(|B| + 1)`
    FromB,
    Fixed(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaChoice {
    /// A random non-extremal member of the shipped families.
    Random,
    Fixed(SchwarzFn),
}

/// Which parameters are pinned and which are drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawSpec {
    pub theorem: TheoremKind,
    /// `None` cycles A, C, M by instance id.
    pub branch: Option<Branch>,
    pub p: Option<u32>,
    pub a_equals_c: bool,
    pub m_zero: bool,
    pub q: QChoice,
    pub eta: Option<Complex64>,
    pub tau_kappa: Option<(Complex64, Complex64)>,
    pub zeta: ZetaChoice,
    /// Explicit values, taking precedence over everything above.
    pub overrides: BTreeMap<String, Complex64>,
}

/// Keys accepted in [`DrawSpec::overrides`].
pub const OVERRIDE_KEYS: &[&str] = &[
    "p", "m", "lambda", "l", "mu", "a", "c", "A", "B", "xi", "eta", "tau", "kappa", "zeta",
];

impl DrawSpec {
    pub fn new(theorem: TheoremKind) -> Self {
        Self {
            theorem,
            branch: None,
            p: None,
            a_equals_c: false,
            m_zero: false,
            q: QChoice::Random,
            eta: None,
            tau_kappa: None,
            zeta: ZetaChoice::Random,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_overrides(mut self, overrides: BTreeMap<String, Complex64>) -> Result<Self> {
        for key in overrides.keys() {
            if !OVERRIDE_KEYS.contains(&key.as_str()) {
                return Err(Error::InvalidParams(format!(
                    "unknown parameter {key:?} (known: {})",
                    OVERRIDE_KEYS.join(", ")
                )));
            }
        }
        self.overrides.extend(overrides);
        Ok(self)
    }

    pub fn branch_for(&self, id: usize) -> Branch {
        self.branch.unwrap_or(Branch::ALL[id % 3])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub seed: u64,
    pub trials: usize,
    pub harness: HarnessConfig,
    pub omega: OmegaChoice,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 10,
            harness: HarnessConfig::default(),
            omega: OmegaChoice::Random,
        }
    }
}

/// Per-instance generator: the same `(seed, id)` always gives the same draw.
pub fn instance_rng(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64 + 1);
    rng
}

fn annulus(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(r_min..=r_max), rng.gen_range(0.0..2.0 * PI))
}

fn unit_disk(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    Complex64::from_polar(r_max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

/// A random non-extremal Schwarz function.
pub fn random_schwarz(rng: &mut ChaCha8Rng) -> SchwarzFn {
    match rng.gen_range(0..3) {
        0 => SchwarzFn::rotation_power(rng.gen_range(0.0..2.0 * PI), rng.gen_range(2..=4))
            .expect("valid rotation power"),
        1 => SchwarzFn::scaled_identity(rng.gen_range(0.3..=0.9)).expect("valid scale"),
        _ => SchwarzFn::blaschke_scaled(unit_disk(rng, 0.7)).expect("valid Blaschke point"),
    }
}

fn random_q(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let a = 1.0 - rng.gen::<f64>() * 2.0;
        let b = if rng.gen_bool(0.2) { -1.0 } else { rng.gen_range(-1.0..a) };
        if a - b >= 0.1 {
            return (a, b);
        }
    }
}

struct Drawer<'a> {
    spec: &'a DrawSpec,
    rng: ChaCha8Rng,
}

impl Drawer<'_> {
    fn fixed(&self, key: &str) -> Option<Complex64> {
        self.spec.overrides.get(key).copied()
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        match self.fixed(key) {
            None => Ok(None),
            Some(v) if v.im == 0.0 => Ok(Some(v.re)),
            Some(v) => Err(Error::InvalidParams(format!("{key} must be real, got {v}"))),
        }
    }

    fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.real(key)? {
            Some(v) if v.fract() != 0.0 => {
                Err(Error::InvalidParams(format!("{key} must be an integer, got {v}")))
            }
            v => Ok(v.map(|v| v as i64)),
        }
    }

    fn op(&mut self, branch: Option<Branch>) -> Result<OperatorParams> {
        let spec = self.spec;
        let p = match self.int("p")? {
            Some(p) if p >= 1 => p as u32,
            Some(p) => return Err(Error::InvalidParams(format!("p must be >= 1, got {p}"))),
            None => spec.p.unwrap_or_else(|| self.rng.gen_range(1..=3)),
        };
        let m = match self.int("m")? {
            Some(m) => m,
            None if spec.m_zero => 0,
            None => self.rng.gen_range(-2..=3),
        };
        let lambda = self.real("lambda")?.unwrap_or_else(|| self.rng.gen_range(0.5..=2.0));
        let ell = self.real("l")?.unwrap_or_else(|| self.rng.gen_range(0.5..=2.0));
        let mu = self.real("mu")?.unwrap_or_else(|| self.rng.gen_range(0.3..=2.0));
        let p_mu = p as f64 * mu;
        let a = self
            .fixed("a")
            .unwrap_or_else(|| Complex64::new(p_mu + self.rng.gen_range(0.5..8.0), 0.0));
        let c = match self.fixed("c") {
            Some(c) => c,
            None if spec.a_equals_c => a,
            None => {
                let lo = if branch == Some(Branch::C) { 1.05 } else { 0.0 };
                a + self.rng.gen_range(lo..=4.0)
            }
        };
        OperatorParams::new(p, m, lambda, ell, mu, a, c)
    }

    fn q(&mut self) -> Result<QFunction> {
        let (a, b) = match (self.real("A")?, self.real("B")?) {
            (Some(a), Some(b)) => (a, b),
            (ra, rb) => {
                let (da, db) = match self.spec.q {
                    QChoice::Fixed { a, b } => (a, b),
                    QChoice::Random => random_q(&mut self.rng),
                };
                (ra.unwrap_or(da), rb.unwrap_or(db))
            }
        };
        Ok(QFunction::Moebius(MoebiusQ::new(a, b)?))
    }

    fn eta(&mut self) -> Complex64 {
        self.fixed("eta")
            .or(self.spec.eta)
            .unwrap_or_else(|| annulus(&mut self.rng, 0.5, 3.0))
    }

    fn tau_kappa(&mut self, op: &OperatorParams) -> (Complex64, Complex64) {
        let (ft, fk) = (self.fixed("tau"), self.fixed("kappa"));
        if let (Some(t), Some(k)) = (ft, fk) {
            return (t, k);
        }
        if let Some((t, k)) = self.spec.tau_kappa {
            return (ft.unwrap_or(t), fk.unwrap_or(k));
        }
        let s = op.a - op.p_mu();
        for _ in 0..1000 {
            let t = ft.unwrap_or_else(|| unit_disk(&mut self.rng, 2.0));
            let k = fk.unwrap_or_else(|| unit_disk(&mut self.rng, 2.0));
            if (t + k).norm() < 0.1 {
                continue;
            }
            // every divisor tau (s + mu n) + kappa s must stay well away from zero
            let well_conditioned = (0..=super::HARNESS_ORDER).all(|n| {
                let den = t * (s + op.mu * n as f64) + k * s;
                let size = t.norm() * (s + op.mu * n as f64).norm() + k.norm() * s.norm();
                den.norm() > 1e-3 * size
            });
            if well_conditioned {
                return (t, k);
            }
        }
        (ft.unwrap_or(Complex64::new(1.0, 0.0)), fk.unwrap_or(Complex64::new(0.0, 0.0)))
    }

    fn zeta(&mut self, q: &QFunction) -> Complex64 {
        if let Some(z) = self.fixed("zeta") {
            return z;
        }
        let b = q.as_moebius().map(|m| m.b().abs()).unwrap_or(1.0);
        match self.spec.zeta {
            ZetaChoice::Fixed(z) => z,
            ZetaChoice::FromB => Complex64::new((b - 1.0) / (b + 1.0), 0.0),
            ZetaChoice::Random => {
                let inf = (1.0 - b) / (1.0 + b);
                Complex64::new(self.rng.gen_range(-inf..=3.0), self.rng.gen_range(-2.0..=2.0))
            }
        }
    }
}

/// Draws the parameters of instance `id`. Random draws are retried until
/// the theorem's hypothesis passes (at most 1000 times); explicit values
/// are never changed.
pub fn draw_params(spec: &DrawSpec, seed: u64, id: usize, grid: &SamplingGrid) -> Result<TheoremParams> {
    let mut d = Drawer { spec, rng: instance_rng(seed, id) };
    let branch = spec.branch_for(id);
    let mut last = None;
    for _ in 0..1000 {
        let tp = match spec.theorem {
            TheoremKind::T1 => {
                let op = d.op(Some(branch))?;
                let q = d.q()?;
                let xi = d.fixed("xi").unwrap_or_else(|| annulus(&mut d.rng, 0.2, 3.0));
                TheoremParams::T1(Theorem1Params::new(op, xi, branch, q)?)
            }
            TheoremKind::T2 => {
                let op = d.op(None)?;
                let q = d.q()?;
                let eta = d.eta();
                let (tau, kappa) = d.tau_kappa(&op);
                TheoremParams::T2(Theorem2Params::new(BracketParams::new(op, eta, tau, kappa)?, q)?)
            }
            TheoremKind::T3 => {
                let op = d.op(None)?;
                let q = d.q()?;
                let eta = d.eta();
                let (tau, kappa) = d.tau_kappa(&op);
                let zeta = d.zeta(&q);
                TheoremParams::T3(Theorem3Params::new(BracketParams::new(op, eta, tau, kappa)?, zeta, q)?)
            }
        };
        if tp.hypothesis(grid)?.passed {
            return Ok(tp);
        }
        last = Some(tp);
    }
    Ok(last.expect("at least one draw"))
}

pub fn draw_omega(choice: &OmegaChoice, seed: u64, id: usize) -> SchwarzFn {
    match choice {
        OmegaChoice::Fixed(w) => *w,
        OmegaChoice::Random => {
            // separate stream from the parameter draws
            let mut rng = instance_rng(seed ^ 0x9e37_79b9_7f4a_7c15, id);
            random_schwarz(&mut rng)
        }
    }
}

/// One instance: draw, run, report. Construction errors become error records.
pub fn run_instance(spec: &DrawSpec, cfg: &BatchConfig, id: usize) -> RunResult {
    let omega = draw_omega(&cfg.omega, cfg.seed, id);
    let theorem = match spec.theorem {
        TheoremKind::T1 => "thm1",
        TheoremKind::T2 => "thm2",
        TheoremKind::T3 => "thm3",
    };
    let branch = (spec.theorem == TheoremKind::T1).then(|| spec.branch_for(id));
    match draw_params(spec, cfg.seed, id, &cfg.harness.grid) {
        Ok(tp) => super::run_theorem(id, &tp, &omega, &cfg.harness),
        Err(e) => RunResult {
            report: HarnessReport::rejected(id, theorem, branch, e.to_string()),
            params: None,
            instance: None,
            evaluation: None,
        },
    }
}

/// Runs `cfg.trials` instances in parallel; results are ordered by id.
pub fn run_batch_full(spec: &DrawSpec, cfg: &BatchConfig) -> Vec<RunResult> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|id| run_instance(spec, cfg, id))
        .collect()
}

pub fn run_batch(spec: &DrawSpec, cfg: &BatchConfig) -> Vec<HarnessReport> {
    run_batch_full(spec, cfg).into_iter().map(|r| r.report).collect()
}

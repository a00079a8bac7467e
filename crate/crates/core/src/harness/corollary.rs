//! The fourteen corollaries as parameter bindings of the three theorems.

use num_complex::Complex64;

use super::batch::{run_batch_full, BatchConfig, DrawSpec, QChoice, TheoremKind, ZetaChoice};
use super::{Evaluation, HarnessReport, RunResult, TheoremParams};
use crate::error::{Error, Result};
use crate::series::{scaled_laurent_zdz, LaurentFunction, TaylorSeries};

/// Closed-form premise and conclusion shapes of a reduced corollary,
/// computed straight from `f`.
type Reduction = fn(&TheoremParams, &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)>;

#[derive(Debug, Clone)]
pub struct CorollaryPreset {
    pub name: &'static str,
    pub theorem: TheoremKind,
    /// Parameter substitutions in words.
    pub bindings: &'static str,
    pub note: Option<&'static str>,
    reduction: Option<Reduction>,
    shape: fn() -> DrawSpec,
}

impl CorollaryPreset {
    /// The draw specification with the corollary's parameters pinned.
    pub fn spec(&self) -> DrawSpec {
        (self.shape)()
    }

    pub fn has_reduction(&self) -> bool {
        self.reduction.is_some()
    }

    /// `max |computed - closed form|` over premise and conclusion.
    pub fn reduction_residual(&self, tp: &TheoremParams, f: &LaurentFunction, ev: &Evaluation) -> Option<Result<f64>> {
        let reduce = self.reduction?;
        Some(reduce(tp, f).map(|(premise, conclusion)| {
            premise
                .max_abs_diff(&ev.premise_series)
                .max(conclusion.max_abs_diff(&ev.conclusion_series))
        }))
    }

    /// Runs a batch and fills `preset` and `reduction_residual`.
    pub fn run(&self, cfg: &BatchConfig) -> Vec<RunResult> {
        let spec = self.spec();
        let mut results = run_batch_full(&spec, cfg);
        for r in &mut results {
            r.report.preset = Some(self.name.to_string());
            if let (Some(tp), Some(inst), Some(ev)) = (&r.params, &r.instance, &r.evaluation) {
                match self.reduction_residual(tp, inst.function(), ev) {
                    Some(Ok(res)) => r.report.reduction_residual = Some(res),
                    Some(Err(e)) => r.report.detail = Some(e.to_string()),
                    None => {}
                }
            }
        }
        results
    }

    pub fn run_reports(&self, cfg: &BatchConfig) -> Vec<HarnessReport> {
        self.run(cfg).into_iter().map(|r| r.report).collect()
    }
}

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn half_plane(mut s: DrawSpec) -> DrawSpec {
    s.p = Some(1);
    s.q = QChoice::Fixed { a: 1.0, b: -1.0 };
    s
}

fn reduced(mut s: DrawSpec) -> DrawSpec {
    s = half_plane(s);
    s.a_equals_c = true;
    s.m_zero = true;
    s
}

fn with_bracket(kind: TheoremKind, tau: f64, kappa: f64) -> DrawSpec {
    let mut s = DrawSpec::new(kind);
    s.tau_kappa = Some((Complex64::new(tau, 0.0), Complex64::new(kappa, 0.0)));
    s
}

fn cor1() -> DrawSpec {
    DrawSpec::new(TheoremKind::T1)
}
fn cor2() -> DrawSpec {
    half_plane(DrawSpec::new(TheoremKind::T1))
}
fn cor3() -> DrawSpec {
    reduced(DrawSpec::new(TheoremKind::T1))
}
fn cor4() -> DrawSpec {
    with_bracket(TheoremKind::T2, 0.0, 1.0)
}
fn cor5() -> DrawSpec {
    half_plane(cor4())
}
fn cor6() -> DrawSpec {
    let mut s = reduced(cor4());
    s.eta = Some(ONE);
    s
}
fn cor7() -> DrawSpec {
    with_bracket(TheoremKind::T2, 1.0, 0.0)
}
fn cor8() -> DrawSpec {
    half_plane(cor7())
}
fn cor9() -> DrawSpec {
    let mut s = reduced(cor7());
    s.eta = Some(ONE);
    s
}
fn cor10() -> DrawSpec {
    let mut s = with_bracket(TheoremKind::T3, 0.0, 1.0);
    s.zeta = ZetaChoice::FromB;
    s
}
fn cor11() -> DrawSpec {
    let mut s = reduced(cor10());
    s.zeta = ZetaChoice::Fixed(ZERO);
    s
}
fn cor12() -> DrawSpec {
    let mut s = cor11();
    s.eta = Some(ONE);
    s
}
fn cor13() -> DrawSpec {
    let mut s = with_bracket(TheoremKind::T3, 1.0, 0.0);
    s.zeta = ZetaChoice::FromB;
    s
}
fn cor14() -> DrawSpec {
    let mut s = reduced(with_bracket(TheoremKind::T3, 1.0, 0.0));
    s.zeta = ZetaChoice::Fixed(ZERO);
    s.eta = Some(ONE);
    s
}

/// `z f` for `p = 1`.
fn zf(f: &LaurentFunction) -> Result<TaylorSeries> {
    if f.pole_order() != 1 {
        return Err(Error::InvalidTheorem("reduced corollaries need p = 1".into()));
    }
    Ok(f.to_scaled())
}

/// `(mu/(a - mu)) (z^2 f' + (a/mu) z f)`.
fn g_form(tp: &TheoremParams, f: &LaurentFunction) -> Result<TaylorSeries> {
    let op = tp.op();
    let s = zf(f)?;
    let z2f1 = scaled_laurent_zdz(&s, 1);
    Ok(z2f1.add(&s.scale(op.a / op.mu))?.scale(op.mu / (op.a - op.mu)))
}

fn eta_of(tp: &TheoremParams) -> Complex64 {
    match tp {
        TheoremParams::T2(t) => t.bracket.eta,
        TheoremParams::T3(t) => t.bracket.eta,
        TheoremParams::T1(_) => ONE,
    }
}

// (mu xi/(a - mu)) z (z f)' + z f and z f
fn reduce_cor3(tp: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let gamma = match tp {
        TheoremParams::T1(t) => t.gamma(),
        _ => return Err(Error::InvalidTheorem("corollary 3 binds the first theorem".into())),
    };
    let s = zf(f)?;
    Ok((s.add(&s.derivative_zdz().scale(gamma))?, s))
}

// 1 + z f'/f and z f
fn reduce_cor6(_: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let s = zf(f)?;
    let ratio = scaled_laurent_zdz(&s, 1).div(&s)?;
    Ok((ratio.add(&TaylorSeries::one(s.order()))?, s))
}

// z g'/g and g
fn reduce_cor9(tp: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let g = g_form(tp, f)?;
    Ok((g.derivative_zdz().div(&g)?, g))
}

// [z f]^eta eta (1 + z f'/f) and [z f]^eta
fn reduce_cor11(tp: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let eta = eta_of(tp);
    let s = zf(f)?;
    let pw = s.pow(eta)?;
    let ratio = scaled_laurent_zdz(&s, 1).div(&s)?.add(&TaylorSeries::one(s.order()))?;
    Ok((pw.mul(&ratio)?.scale(eta), pw))
}

// z f + z^2 f' and z f
fn reduce_cor12(_: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let s = zf(f)?;
    Ok((s.add(&scaled_laurent_zdz(&s, 1))?, s))
}

// z g' and g
fn reduce_cor14(tp: &TheoremParams, f: &LaurentFunction) -> Result<(TaylorSeries, TaylorSeries)> {
    let g = g_form(tp, f)?;
    Ok((g.derivative_zdz(), g))
}

/// The corollary catalog, `cor1` to `cor14`.
pub fn corollary_presets() -> Vec<CorollaryPreset> {
    fn p(
        name: &'static str,
        theorem: TheoremKind,
        bindings: &'static str,
        note: Option<&'static str>,
        reduction: Option<Reduction>,
        shape: fn() -> DrawSpec,
    ) -> CorollaryPreset {
        CorollaryPreset { name, theorem, bindings, note, reduction, shape }
    }
    use TheoremKind::*;
    vec![
        p("cor1", T1, "q(z) = (1 + Az)/(1 + Bz), all branches", None, None, cor1),
        p("cor2", T1, "p = A = 1, B = -1", None, None, cor2),
        p("cor3", T1, "p = A = 1, B = -1, a = c, m = 0", None, Some(reduce_cor3), cor3),
        p("cor4", T2, "tau = 0, kappa = 1", None, None, cor4),
        p("cor5", T2, "tau = 0, kappa = 1, p = A = 1, B = -1", None, None, cor5),
        p("cor6", T2, "tau = 0, kappa = 1, p = A = eta = 1, B = -1, a = c, m = 0", None, Some(reduce_cor6), cor6),
        p("cor7", T2, "tau = 1, kappa = 0", None, None, cor7),
        p("cor8", T2, "tau = 1, kappa = 0, p = A = 1, B = -1", None, None, cor8),
        p(
            "cor9",
            T2,
            "tau = 1, kappa = 0, p = A = eta = 1, B = -1, a = c, m = 0",
            Some("bracket is (mu/(a - mu)) (z^2 f' + (a/mu) z f)"),
            Some(reduce_cor9),
            cor9,
        ),
        p("cor10", T3, "tau = 0, kappa = 1, zeta = (|B| - 1)/(|B| + 1)", None, None, cor10),
        p(
            "cor11",
            T3,
            "tau = 0, kappa = 1, zeta = 0, p = A = 1, B = -1, a = c, m = 0",
            Some("Remark 1 / Mishra et al. [Corollary 4.9]"),
            Some(reduce_cor11),
            cor11,
        ),
        p(
            "cor12",
            T3,
            "tau = 0, kappa = 1, zeta = 0, p = A = eta = 1, B = -1, a = c, m = 0",
            None,
            Some(reduce_cor12),
            cor12,
        ),
        p("cor13", T3, "tau = 1, kappa = 0, zeta = (|B| - 1)/(|B| + 1)", None, None, cor13),
        p(
            "cor14",
            T3,
            "tau = 1, kappa = 0, zeta = 0, p = A = eta = 1, B = -1, a = c, m = 0",
            Some("bracket is (mu/(a - mu)) (z^2 f' + (a/mu) z f)"),
            Some(reduce_cor14),
            cor14,
        ),
    ]
}

pub fn find_corollary(name: &str) -> Result<CorollaryPreset> {
    corollary_presets()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

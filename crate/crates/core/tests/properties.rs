use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pvalent::harness::batch::{run_instance, BatchConfig, DrawSpec, OmegaChoice, TheoremKind};
use pvalent::harness::{
    BracketParams, HarnessConfig, Instance, RunResult, Theorem2Params, Theorem3Params, TheoremParams,
    Verdict,
};
use pvalent::operator::{
    apply_gamma_part, apply_j_integral, apply_l_integral, apply_power_part, recurrence_sides,
};
use pvalent::random::{random_function, random_real_params};
use pvalent::special::{coefficient_multiplier, gamma_factor, log_gamma, power_factor};
use pvalent::subordination::{
    check_subordination, check_subordination_moebius, check_subordination_winding, Outcome,
    SamplingGrid, SchwarzFn,
};
use pvalent::{apply_operator, LaurentFunction, MoebiusQ, OperatorParams, QFunction, Recurrence, TaylorSeries};

const EPS: f64 = f64::EPSILON;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coefficients uniform in the square of half-width `decay^n`.
fn series(k: usize, decay: f64) -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), k + 1).prop_map(move |v| {
        let coeffs = v
            .into_iter()
            .enumerate()
            .map(|(n, (re, im))| c(re, im) * decay.powi(n as i32))
            .collect();
        TaylorSeries::new(coeffs).unwrap()
    })
}

fn with_constant(f: TaylorSeries, c0: Complex64) -> TaylorSeries {
    let mut coeffs = f.into_coeffs();
    coeffs[0] = c0;
    TaylorSeries::new(coeffs).unwrap()
}

fn pair(decay: f64) -> impl Strategy<Value = (TaylorSeries, TaylorSeries)> {
    (1usize..=64).prop_flat_map(move |k| (series(k, decay), series(k, decay)))
}

fn schwarz(max_s: f64) -> impl Strategy<Value = SchwarzFn> {
    prop_oneof![
        (-3.2..3.2f64, 1u32..=4).prop_map(|(t, n)| SchwarzFn::rotation_power(t, n).unwrap()),
        (0.05..=1.0f64).prop_map(|r| SchwarzFn::scaled_identity(r).unwrap()),
        (0.0..max_s, -3.2..3.2f64)
            .prop_map(|(r, t)| SchwarzFn::blaschke_scaled(Complex64::from_polar(r, t)).unwrap()),
    ]
}

/// `-1 <= B < A <= 1` with `|B| <= max_b`.
fn moebius(max_b: f64) -> impl Strategy<Value = MoebiusQ> {
    (-max_b..=max_b, 0.0..=1.0f64).prop_map(|(b, u)| {
        let a = (b + 0.01 + u * (1.0 - b - 0.01)).min(1.0);
        MoebiusQ::new(a, b).unwrap()
    })
}

fn draw(seed: u64) -> (OperatorParams, LaurentFunction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = random_real_params(&mut rng);
    let f = random_function(&mut rng, params.p, 48).unwrap();
    (params, f)
}

fn with(params: &OperatorParams, m: i64, a: f64, cc: f64) -> OperatorParams {
    OperatorParams::new(params.p, m, params.lambda, params.ell, params.mu, c(a, 0.0), c(cc, 0.0)).unwrap()
}

fn tail_size(f: &LaurentFunction) -> f64 {
    f.tail().iter().map(|a| a.norm()).fold(1.0, f64::max)
}

fn tail_diff(f: &LaurentFunction, g: &LaurentFunction) -> f64 {
    f.tail().iter().zip(g.tail()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mul_commutes((a, b) in pair(0.9)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert!(ab.max_abs_diff(&ba) <= 1e-15);
    }

    #[test]
    fn mul_associates((a, b) in pair(0.9), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = a.order();
        let cc = TaylorSeries::new(
            (0..=k).map(|n| c(rand::Rng::gen_range(&mut rng, -1.0..1.0), 0.3) * 0.9f64.powi(n as i32)).collect(),
        ).unwrap();
        let left = a.mul(&b).unwrap().mul(&cc).unwrap();
        let right = a.mul(&b.mul(&cc).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-13);
    }

    #[test]
    fn exp_inverts_log(f in (1usize..=64).prop_flat_map(|k| series(k, 0.5))) {
        let f = with_constant(f, c(1.0, 0.0));
        let back = f.log().unwrap().exp();
        prop_assert!(back.max_abs_diff(&f) <= 1e-12);
    }

    #[test]
    fn log_inverts_exp(g in (1usize..=64).prop_flat_map(|k| series(k, 0.5))) {
        let g = with_constant(g, c(0.0, 0.0));
        let back = g.exp().log().unwrap();
        prop_assert!(back.max_abs_diff(&g) <= 1e-12);
    }

    #[test]
    fn trivial_powers_are_exact(f in (1usize..=64).prop_flat_map(|k| series(k, 0.8))) {
        let f = with_constant(f, c(1.0, 0.0));
        prop_assert_eq!(f.pow(c(1.0, 0.0)).unwrap(), f.clone());
        prop_assert_eq!(f.pow(c(0.0, 0.0)).unwrap(), TaylorSeries::one(f.order()));
    }

    #[test]
    fn leibniz_rule((a, b) in pair(0.9)) {
        let left = a.mul(&b).unwrap().derivative_zdz();
        let right = a.derivative_zdz().mul(&b).unwrap().add(&a.mul(&b.derivative_zdz()).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn composition_matches_pointwise(
        g in series(64, 0.9),
        omega in schwarz(0.95),
        (r, t) in (0.0..=0.5f64, -3.2..3.2f64),
    ) {
        let z = Complex64::from_polar(r, t);
        let composed = g.compose(&omega.series(64)).unwrap();
        prop_assert!((composed.eval(z) - g.eval(omega.eval(z))).norm() <= 1e-9);
    }

    #[test]
    fn gamma_functional_equation(re in 0.5..10.0f64, im in -10.0..=10.0f64) {
        let z = c(re, im);
        let ratio = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
        prop_assert!((ratio - z).norm() <= 1e-10 * z.norm());
    }

    #[test]
    fn identity_multiplier_is_one(seed in any::<u64>(), k in 0i64..=200) {
        let (params, _) = draw(seed);
        let id = with(&params, 0, params.a.re, params.a.re);
        prop_assert_eq!(coefficient_multiplier(&id, k).unwrap(), c(1.0, 0.0));
        prop_assert_eq!(coefficient_multiplier(&id, -(params.p as i64)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn power_factor_exponents_add(seed in any::<u64>(), m1 in -3i64..=3, m2 in -3i64..=3, k in 0i64..=64) {
        let (params, _) = draw(seed);
        let (a, cc) = (params.a.re, params.c.re);
        let x12 = power_factor(&with(&params, m1 + m2, a, cc), k).unwrap();
        let x1 = power_factor(&with(&params, m1, a, cc), k).unwrap();
        let x2 = power_factor(&with(&params, m2, a, cc), k).unwrap();
        prop_assert!((x12 - x1 * x2).abs() <= 1e-13 * x12.abs().max(1.0));
    }

    #[test]
    fn moebius_inverse_round_trip(q in moebius(1.0), (r, t) in (0.0..=0.95f64, -3.2..3.2f64)) {
        let z = Complex64::from_polar(r, t);
        let back = q.inverse(q.eval(z).unwrap()).unwrap();
        prop_assert!((back - z).norm() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operator_is_linear(seed in any::<u64>(), (ar, ai, br, bi) in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)) {
        let (params, f) = draw(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let g = random_function(&mut rng, params.p, 48).unwrap();
        let (alpha, beta) = (c(ar, ai), c(br, bi));
        let tail = f.tail().iter().zip(g.tail()).map(|(x, y)| alpha * x + beta * y).collect();
        let combined = apply_operator(&params, &LaurentFunction::new(params.p, tail).unwrap()).unwrap();
        let (tf, tg) = (apply_operator(&params, &f).unwrap(), apply_operator(&params, &g).unwrap());
        for ((h, x), y) in combined.tail().iter().zip(tf.tail()).zip(tg.tail()) {
            prop_assert!((h - (alpha * x + beta * y)).norm() <= 1e-13);
        }
    }

    #[test]
    fn operator_parts_commute(seed in any::<u64>()) {
        let (params, f) = draw(seed);
        let power_first = apply_gamma_part(&params, &apply_power_part(&params, &f).unwrap()).unwrap();
        let gamma_first = apply_power_part(&params, &apply_gamma_part(&params, &f).unwrap()).unwrap();
        // the two orders round differently, by at most a couple of ulps
        for (x, y) in power_first.tail().iter().zip(gamma_first.tail()) {
            prop_assert!((x - y).norm() <= 4.0 * EPS * x.norm());
        }
    }

    #[test]
    fn gamma_ratios_telescope(seed in any::<u64>(), u in 0.0..=3.0f64, v in 0.0..=3.0f64, k in 0i64..=64) {
        let (params, _) = draw(seed);
        let a = params.a.re;
        let (cc, e) = (a + u, a + u + v);
        let first = gamma_factor(&with(&params, 0, a, cc), k).unwrap();
        let second = gamma_factor(&with(&params, 0, cc, e), k).unwrap();
        let direct = gamma_factor(&with(&params, 0, a, e), k).unwrap();
        prop_assert!((first * second - direct).norm() <= 1e-11 * direct.norm());
    }

    #[test]
    fn power_part_semigroup(seed in any::<u64>(), m1 in 0i64..=3, m2 in 0i64..=3) {
        let (params, f) = draw(seed);
        let a = params.a.re;
        let twice = apply_operator(&with(&params, m2, a, a), &apply_operator(&with(&params, m1, a, a), &f).unwrap()).unwrap();
        let once = apply_operator(&with(&params, m1 + m2, a, a), &f).unwrap();
        prop_assert!(tail_diff(&twice, &once) <= 1e-12);
    }

    #[test]
    fn power_part_semigroup_negative_m(seed in any::<u64>(), m1 in -2i64..=3, m2 in -2i64..=3) {
        let (params, f) = draw(seed);
        let a = params.a.re;
        let twice = apply_operator(&with(&params, m2, a, a), &apply_operator(&with(&params, m1, a, a), &f).unwrap()).unwrap();
        let once = apply_operator(&with(&params, m1 + m2, a, a), &f).unwrap();
        prop_assert!(tail_diff(&twice, &once) <= 1e-12 * tail_size(&once));
    }

    #[test]
    fn recurrences_hold_for_negative_m(seed in any::<u64>(), m in -3i64..=-1) {
        let (params, f) = draw(seed);
        let params = with(&params, m, params.a.re, params.c.re);
        for which in Recurrence::ALL {
            let (left, right) = recurrence_sides(&params, &f, which).unwrap();
            let size = left.coeffs().iter().chain(right.coeffs()).map(|x| x.norm()).fold(1.0, f64::max);
            prop_assert!(left.max_abs_diff(&right) <= 1e-12 * size, "{:?}", which);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn integral_oracles_match_coefficients(seed in any::<u64>(), m in 1i64..=3) {
        let (params, f) = draw(seed);
        let a = params.a.re;
        let j = with(&params, 0, a, params.c.re.max(a + 0.05));
        let l = with(&params, m, a, a);
        for (r, t) in [(0.3, 0.4), (0.5, 2.1), (0.7, -1.3)] {
            let z = Complex64::from_polar(r, t);
            let coef = apply_operator(&j, &f).unwrap().eval(z).unwrap();
            prop_assert!((apply_j_integral(&j, &f, z).unwrap() - coef).norm() <= 1e-8);
            let coef = apply_operator(&l, &f).unwrap().eval(z).unwrap();
            prop_assert!((apply_l_integral(&l, &f, z).unwrap() - coef).norm() <= 1e-8);
        }
    }

    #[test]
    fn euler_integral_with_complex_parameters(
        seed in any::<u64>(),
        (a_im, gap_re, gap_im) in (-2.0..=2.0f64, 0.3..=3.0f64, -2.0..=2.0f64),
    ) {
        let (params, f) = draw(seed);
        let a = c(params.a.re, a_im);
        let j = OperatorParams::new(params.p, 0, 1.0, 1.0, params.mu, a, a + c(gap_re, gap_im)).unwrap();
        for (r, t) in [(0.3, 0.4), (0.5, 2.1), (0.7, -1.3)] {
            let z = Complex64::from_polar(r, t);
            let coef = apply_operator(&j, &f).unwrap().eval(z).unwrap();
            prop_assert!((apply_j_integral(&j, &f, z).unwrap() - coef).norm() <= 1e-8);
        }
    }

    #[test]
    fn composed_dominant_is_subordinate_at_order_64(q in moebius(0.75), omega in schwarz(0.9)) {
        let f = q.series(64).compose(&omega.series(64)).unwrap();
        let v = check_subordination(&f, &QFunction::Moebius(q), &SamplingGrid::default()).unwrap();
        prop_assert!(v.holds() && v.margin > 0.0, "{:?}", v.margin);
    }

    #[test]
    fn composed_dominant_is_subordinate(q in moebius(1.0), omega in schwarz(0.99)) {
        let f = q.series(512).compose(&omega.series(512)).unwrap();
        let v = check_subordination(&f, &QFunction::Moebius(q), &SamplingGrid::default()).unwrap();
        prop_assert!(v.holds() && v.margin > 0.0, "{:?}", v.margin);
        // the Schwarz bound holds on every circle, not just the outermost
        prop_assert!(v.schwarz_margin.unwrap() >= -1e-12, "{:?}", v.schwarz_margin);
    }

    #[test]
    fn moebius_and_winding_agree(q in moebius(0.8), omega in schwarz(0.9), rho in 0.5..=1.2f64) {
        let inner = omega.series(256).scale(c(rho, 0.0));
        let f = q.series(256).compose(&inner).unwrap();
        let grid = SamplingGrid::default();
        let exact = check_subordination_moebius(&f, &q, &grid).unwrap();
        // the winding curve is traced at radius 0.999, so near-boundary cases are ambiguous
        prop_assume!(exact.margin.abs() > 2e-3);
        let winding = check_subordination_winding(&f, &QFunction::Moebius(q), &grid).unwrap();
        prop_assert_eq!(exact.holds(), winding.holds());
    }

    #[test]
    fn shrinking_trust_radius_keeps_verdicts(q in moebius(0.8), omega in schwarz(0.9), rho in 0.5..=1.2f64) {
        let f = q.series(256).compose(&omega.series(256).scale(c(rho, 0.0))).unwrap();
        let q = QFunction::Moebius(q);
        let wide = check_subordination(&f, &q, &SamplingGrid::default()).unwrap();
        let narrow = check_subordination(&f, &q, &SamplingGrid::default().with_r_trust(0.8).unwrap()).unwrap();
        prop_assert!(narrow.margin >= wide.margin);
        prop_assert!(!wide.holds() || narrow.holds());
    }
}

fn theorem_run(kind: TheoremKind, seed: u64, id: usize, omega: OmegaChoice) -> RunResult {
    let cfg = BatchConfig { seed, omega, ..BatchConfig::default() };
    run_instance(&DrawSpec::new(kind), &cfg, id)
}

fn theorem_kind() -> impl Strategy<Value = TheoremKind> {
    prop_oneof![Just(TheoremKind::T1), Just(TheoremKind::T2), Just(TheoremKind::T3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn generated_instances_invert_their_odes(kind in theorem_kind(), seed in any::<u64>(), id in 0usize..3) {
        let r = theorem_run(kind, seed, id, OmegaChoice::Random);
        let (Some(tp), Some(instance)) = (r.params, r.instance) else {
            return Err(TestCaseError::reject("hypothesis not met"));
        };
        match (&tp, &instance) {
            (TheoremParams::T1(t), Instance::T1(i)) => {
                prop_assert!(i.forward_residual(t).unwrap() <= 1e-12);
                let k = apply_operator(&t.op, &i.f).unwrap().to_scaled();
                prop_assert!(k.max_abs_diff(&i.k) <= 1e-10);
            }
            (TheoremParams::T2(t), Instance::Bracket(i)) => {
                prop_assert!(i.forward_residual_log().unwrap() <= 1e-12);
                prop_assert!(t.bracket.bracket(&i.f).unwrap().max_abs_diff(&i.w) <= 1e-10);
            }
            (TheoremParams::T3(t), Instance::Bracket(i)) => {
                prop_assert!(i.forward_residual_linear(t.zeta).unwrap() <= 1e-12);
                prop_assert!(t.bracket.bracket(&i.f).unwrap().max_abs_diff(&i.w) <= 1e-10);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn conclusions_never_fail(kind in theorem_kind(), seed in any::<u64>(), id in 0usize..3) {
        let r = theorem_run(kind, seed, id, OmegaChoice::Random);
        prop_assert!(r.report.verdict != Verdict::Fails, "{:?}", r.report);
    }

    #[test]
    fn extremal_instance_reaches_the_boundary(seed in any::<u64>(), id in 0usize..3) {
        let r = theorem_run(TheoremKind::T1, seed, id, OmegaChoice::Fixed(SchwarzFn::identity()));
        let Some(ev) = r.evaluation else {
            return Err(TestCaseError::reject("hypothesis not met"));
        };
        let radial = &ev.conclusion.radial_margins;
        for w in radial.windows(2) {
            prop_assert!(w[1].margin <= w[0].margin + 1e-9);
        }
        let last = radial.last().unwrap();
        prop_assert!((last.margin - (1.0 - last.radius)).abs() <= 1e-6, "{:?}", last);
    }

    #[test]
    fn bracket_is_homogeneous_in_tau_kappa(
        third in any::<bool>(),
        seed in any::<u64>(),
        (r, t) in (0.2..=5.0f64, -3.2..3.2f64),
    ) {
        let kind = if third { TheoremKind::T3 } else { TheoremKind::T2 };
        let r0 = theorem_run(kind, seed, 0, OmegaChoice::Random);
        let (Some(tp), Some(instance), Some(before)) = (r0.params, r0.instance, r0.evaluation) else {
            return Err(TestCaseError::reject("hypothesis not met"));
        };
        let s = Complex64::from_polar(r, t);
        let scale = |b: &BracketParams| BracketParams::new(b.op, b.eta, b.tau * s, b.kappa * s).unwrap();
        let scaled = match &tp {
            TheoremParams::T2(p) => TheoremParams::T2(Theorem2Params::new(scale(&p.bracket), p.q.clone()).unwrap()),
            TheoremParams::T3(p) => TheoremParams::T3(Theorem3Params::new(scale(&p.bracket), p.zeta, p.q.clone()).unwrap()),
            TheoremParams::T1(_) => unreachable!(),
        };
        let cfg = HarnessConfig::default();
        let omega = pvalent::harness::batch::draw_omega(&OmegaChoice::Random, seed, 0);
        let other = scaled.generate(&omega, cfg.order).unwrap();
        let f = instance.function();
        prop_assert!(tail_diff(f, other.function()) <= 1e-12 * tail_size(f));
        let after = scaled.evaluate(&other, &cfg).unwrap();
        prop_assert_eq!(after.outcome(), before.outcome());
        prop_assert!(matches!(after.outcome(), Outcome::Holds | Outcome::Indeterminate));
    }
}

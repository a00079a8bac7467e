//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 malformed input or
//! arguments, 4 oracle deviation, 5 recurrence residual breach, 6 a theorem
//! instance with passing hypotheses failed, 7 I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::error::Error;
use crate::harness::batch::{run_batch_full, BatchConfig, DrawSpec, OmegaChoice, TheoremKind};
use crate::harness::corollary::{corollary_presets, find_corollary};
use crate::harness::{Branch, HarnessConfig, RunResult, Verdict};
use crate::operator::presets::{find_preset, preset_catalog};
use crate::operator::{
    apply_gamma_part, apply_j_integral, apply_l_integral, apply_operator, recurrence_sides,
    OperatorParams, Recurrence,
};
use crate::random::{random_function, random_real_params};
use crate::series::{AnySeries, LaurentFunction, TaylorSeries, DEFAULT_R_TRUST};
use crate::special::{MoebiusQ, QFunction};
use crate::subordination::{
    check_subordination, check_subordination_winding, curve_csv, sample_curve, SamplingGrid,
    SchwarzFn, BOUNDARY_RADIUS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_PARAMS: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;
pub const EXIT_RESIDUAL: i32 = 5;
pub const EXIT_THEOREM_FAILS: i32 = 6;
pub const EXIT_IO: i32 = 7;

/// Oracle tolerance for `apply --oracle`.
pub const ORACLE_TOL: f64 = 1e-8;
/// Residual tolerance for `verify-recurrences`.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "pvalent", version, about = "Multiplier operators on p-valent meromorphic functions and subordination checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the operator to a function file.
    Apply(ApplyArgs),
    /// Check the three recurrences on random functions.
    VerifyRecurrences(RecurrenceArgs),
    /// Test F ≺ q for a Taylor series file F.
    CheckSubordination(SubordinationArgs),
    /// Run a theorem (1, 2, 3) or a corollary preset (cor1..cor14) on a batch.
    RunTheorem(TheoremArgs),
    /// List operator and corollary presets.
    Presets,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    /// Input function file (JSON).
    input: PathBuf,
    /// Operator parameters, e.g. "p=1,m=0,lambda=1,l=1,mu=1,a=2,c=3".
    #[arg(long)]
    params: Option<String>,
    /// Named operator preset; --params then holds its free parameters.
    #[arg(long)]
    preset: Option<String>,
    /// Cross-check against the integral representation.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RecurrenceArgs {
    /// Fixed operator parameters; random real parameters when omitted.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long = "K", default_value_t = 32)]
    k: usize,
    /// Adds this amount to every left-hand coefficient (detector test).
    #[arg(long)]
    perturb: Option<f64>,
}

#[derive(Debug, Args)]
struct SubordinationArgs {
    /// Taylor series file for F.
    input: PathBuf,
    /// Moebius dominant, e.g. "A=1,B=-1" (default half-plane).
    #[arg(long)]
    params: Option<String>,
    /// Series dominant file instead of a Moebius q.
    #[arg(long)]
    dominant: Option<PathBuf>,
    /// Use the winding test even for Moebius q.
    #[arg(long)]
    winding: bool,
    #[arg(long = "r-trust", default_value_t = DEFAULT_R_TRUST)]
    r_trust: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    /// 1, 2, 3 or a corollary preset name.
    target: String,
    /// Fixed parameters for every instance, e.g. "a=3,c=4,xi=1+0.5i".
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long = "K", default_value_t = crate::harness::HARNESS_ORDER)]
    k: usize,
    #[arg(long = "r-trust", default_value_t = DEFAULT_R_TRUST)]
    r_trust: f64,
    /// Branch A, C or M for the first theorem; cycles through all three by default.
    #[arg(long)]
    branch: Option<String>,
    /// Schwarz function: random, identity, power:<n>[:<theta>], scaled:<r>, blaschke:<s>.
    #[arg(long, default_value = "random")]
    omega: String,
    /// Write "<stem>-<id>_conclusion.csv" and "<stem>-<id>_boundary.csv".
    #[arg(long)]
    curves: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::TruncationMismatch(..)
            | Error::InvalidTruncation(_)
            | Error::NonFinite(_)
            | Error::InvalidPoleOrder(_)
            | Error::PoleOrderMismatch { .. }
            | Error::ConstantTermNotOne(_)
            | Error::CenterMismatch { .. } => EXIT_MALFORMED,
            _ => EXIT_INVALID_PARAMS,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Apply(a) => cmd_apply(a),
        Command::VerifyRecurrences(a) => cmd_verify_recurrences(a),
        Command::CheckSubordination(a) => cmd_check_subordination(a),
        Command::RunTheorem(a) => cmd_run_theorem(a),
        Command::Presets => {
            print!("{}", presets_listing());
            Ok(EXIT_OK)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Parses "re", "re+imi", "re-imi", "imi" or "i".
pub fn parse_complex(s: &str) -> crate::error::Result<Complex64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        let re = t.parse::<f64>().map_err(|_| bad())?;
        return finite(Complex64::new(re, 0.0), s);
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    finite(Complex64::new(re, im), s)
}

fn finite(v: Complex64, s: &str) -> crate::error::Result<Complex64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("not a finite number: {s:?}")))
    }
}

/// Parses "k=v,k=v" with complex values.
pub fn parse_params(s: &str) -> crate::error::Result<BTreeMap<String, Complex64>> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
        let k = k.trim();
        if out.insert(k.to_string(), parse_complex(v)?).is_some() {
            return Err(Error::Parse(format!("parameter {k:?} given twice")));
        }
    }
    Ok(out)
}

fn real_param(map: &BTreeMap<String, Complex64>, key: &str, default: Option<f64>) -> crate::error::Result<f64> {
    match (map.get(key), default) {
        (Some(v), _) if v.im == 0.0 => Ok(v.re),
        (Some(v), _) => Err(Error::InvalidParams(format!("{key} must be real, got {v}"))),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::InvalidParams(format!("missing parameter {key:?}"))),
    }
}

fn integer(key: &str, v: f64) -> crate::error::Result<i64> {
    if v.fract() != 0.0 || v.abs() > 1e9 {
        return Err(Error::InvalidParams(format!("{key} must be an integer, got {v}")));
    }
    Ok(v as i64)
}

/// Operator parameters from "p,m,lambda,l,mu,a,c"; p, m, lambda, l, mu
/// default to 1, 0, 1, 1, 1.
pub fn operator_from_map(map: &BTreeMap<String, Complex64>) -> crate::error::Result<OperatorParams> {
    const KEYS: [&str; 7] = ["p", "m", "lambda", "l", "mu", "a", "c"];
    if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::InvalidParams(format!(
            "unknown operator parameter {k:?} (known: {})",
            KEYS.join(", ")
        )));
    }
    let p = integer("p", real_param(map, "p", Some(1.0))?)?;
    if p < 1 {
        return Err(Error::InvalidParams(format!("p must be >= 1, got {p}")));
    }
    let m = integer("m", real_param(map, "m", Some(0.0))?)?;
    let get = |k: &str| {
        map.get(k)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("missing parameter {k:?}")))
    };
    OperatorParams::new(
        p as u32,
        m,
        real_param(map, "lambda", Some(1.0))?,
        real_param(map, "l", Some(1.0))?,
        real_param(map, "mu", Some(1.0))?,
        get("a")?,
        get("c")?,
    )
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_apply(args: ApplyArgs) -> CliResult<i32> {
    let map = match &args.params {
        Some(s) => parse_params(s)?,
        None => BTreeMap::new(),
    };
    let params = match &args.preset {
        Some(name) => find_preset(name)?.build(&map)?,
        None => operator_from_map(&map)?,
    };
    let f = match AnySeries::from_json(&read_file(&args.input)?)? {
        AnySeries::Laurent(f) => f,
        AnySeries::Taylor(_) => {
            return Err(fail(EXIT_MALFORMED, "apply needs a Laurent function (pole_order >= 1)"))
        }
    };
    let g = apply_operator(&params, &f)?;
    write_output(args.out.as_deref(), &AnySeries::Laurent(g.clone()).to_json())?;
    if args.oracle {
        let dev = oracle_deviation(&params, &f, &g)?;
        eprintln!("oracle max deviation: {dev:.3e}");
        if !(dev <= ORACLE_TOL) {
            return Err(fail(
                EXIT_ORACLE,
                format!("oracle deviation {dev:.3e} above {ORACLE_TOL:e}"),
            ));
        }
    }
    Ok(EXIT_OK)
}

/// Largest deviation between the coefficient image and the integral
/// representation at three points with `|z|` in {0.3, 0.5, 0.7}.
///
/// For `m != 0` and `a != c` the operator factors as the power part applied
/// to the gamma part; both stages are checked.
fn oracle_deviation(params: &OperatorParams, f: &LaurentFunction, g: &LaurentFunction) -> crate::error::Result<f64> {
    let points = [
        Complex64::from_polar(0.3, 0.4),
        Complex64::from_polar(0.5, 2.1),
        Complex64::from_polar(0.7, -1.3),
    ];
    let mut dev: f64 = 0.0;
    for z in points {
        let coefficient_side = g.eval(z)?;
        let integral_side = if params.a == params.c {
            apply_l_integral(params, f, z)?
        } else if params.m == 0 {
            apply_j_integral(params, f, z)?
        } else {
            let gamma_params = OperatorParams { m: 0, ..*params };
            let stage = apply_gamma_part(params, f)?;
            let j = apply_j_integral(&gamma_params, f, z)?;
            dev = dev.max((j - stage.eval(z)?).norm());
            let power_params = OperatorParams { c: params.a, ..*params };
            apply_l_integral(&power_params, &stage, z)?
        };
        dev = dev.max((coefficient_side - integral_side).norm());
    }
    Ok(dev)
}

fn cmd_verify_recurrences(args: RecurrenceArgs) -> CliResult<i32> {
    if args.k < 1 {
        return Err(fail(EXIT_INVALID_PARAMS, "K must be at least 1"));
    }
    let fixed = match &args.params {
        Some(s) => Some(operator_from_map(&parse_params(s)?)?),
        None => None,
    };
    let mut worst = [0.0f64; 3];
    for trial in 0..args.trials {
        let mut rng = crate::harness::batch::instance_rng(args.seed, trial);
        let params = fixed.unwrap_or_else(|| random_real_params(&mut rng));
        let f = random_function(&mut rng, params.p, args.k)?;
        for (slot, which) in Recurrence::ALL.iter().enumerate() {
            let (left, right) = recurrence_sides(&params, &f, *which)?;
            let left = match args.perturb {
                Some(eps) => TaylorSeries::new(left.coeffs().iter().map(|c| c + eps).collect())?,
                None => left,
            };
            worst[slot] = worst[slot].max(left.max_abs_diff(&right));
        }
    }
    for (which, r) in Recurrence::ALL.iter().zip(worst) {
        println!("{which:?}: max residual {r:.3e} over {} trials", args.trials);
    }
    let max = worst.into_iter().fold(0.0, f64::max);
    if max > RESIDUAL_TOL {
        return Err(fail(EXIT_RESIDUAL, format!("residual {max:.3e} above {RESIDUAL_TOL:e}")));
    }
    Ok(EXIT_OK)
}

fn cmd_check_subordination(args: SubordinationArgs) -> CliResult<i32> {
    let f = match AnySeries::from_json(&read_file(&args.input)?)? {
        AnySeries::Taylor(t) => t,
        AnySeries::Laurent(_) => {
            return Err(fail(EXIT_MALFORMED, "check-subordination needs a Taylor series (pole_order 0)"))
        }
    };
    let q = match (&args.dominant, &args.params) {
        (Some(_), Some(_)) => {
            return Err(fail(EXIT_INVALID_PARAMS, "give either --dominant or --params, not both"))
        }
        (Some(path), None) => match AnySeries::from_json(&read_file(path)?)? {
            AnySeries::Taylor(t) => QFunction::series_q(t)?,
            AnySeries::Laurent(_) => return Err(fail(EXIT_MALFORMED, "dominant must be a Taylor series")),
        },
        (None, params) => {
            let map = match params {
                Some(s) => parse_params(s)?,
                None => BTreeMap::new(),
            };
            if let Some(k) = map.keys().find(|k| *k != "A" && *k != "B") {
                return Err(fail(EXIT_INVALID_PARAMS, format!("unknown parameter {k:?} (known: A, B)")));
            }
            QFunction::Moebius(MoebiusQ::new(
                real_param(&map, "A", Some(1.0))?,
                real_param(&map, "B", Some(-1.0))?,
            )?)
        }
    };
    let grid = SamplingGrid::default().with_r_trust(args.r_trust)?;
    let verdict = if args.winding {
        check_subordination_winding(&f, &q, &grid)?
    } else {
        check_subordination(&f, &q, &grid)?
    };
    let json = serde_json::json!({
        "outcome": verdict.outcome,
        "method": verdict.method,
        "margin": verdict.margin,
        "schwarz_margin": verdict.schwarz_margin,
        "witness": [verdict.witness.re, verdict.witness.im],
        "samples": verdict.samples_used,
    });
    write_output(args.out.as_deref(), &serde_json::to_string_pretty(&json).expect("json"))?;
    Ok(EXIT_OK)
}

/// Parses the `--omega` flag.
pub fn parse_omega(s: &str) -> crate::error::Result<OmegaChoice> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> crate::error::Result<f64> {
        parts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("--omega {s:?} is missing a value")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad number in --omega {s:?}")))
    };
    Ok(match parts[0] {
        "random" if parts.len() == 1 => OmegaChoice::Random,
        "identity" if parts.len() == 1 => OmegaChoice::Fixed(SchwarzFn::identity()),
        "power" if parts.len() <= 3 => {
            let n = integer("n", num(1)?)?;
            let theta = if parts.len() == 3 { num(2)? } else { 0.0 };
            let n = u32::try_from(n).map_err(|_| Error::InvalidSchwarz(format!("power n = {n}")))?;
            OmegaChoice::Fixed(SchwarzFn::rotation_power(theta, n)?)
        }
        "scaled" if parts.len() == 2 => OmegaChoice::Fixed(SchwarzFn::scaled_identity(num(1)?)?),
        "blaschke" if parts.len() == 2 => {
            let sv = parse_complex(parts[1])?;
            OmegaChoice::Fixed(SchwarzFn::blaschke_scaled(sv)?)
        }
        _ => return Err(Error::Parse(format!("unknown --omega {s:?}"))),
    })
}

fn theorem_spec(target: &str) -> crate::error::Result<(DrawSpec, Option<String>)> {
    if let Some(kind) = TheoremKind::parse(target) {
        return Ok((DrawSpec::new(kind), None));
    }
    let cor = find_corollary(target)?;
    Ok((cor.spec(), Some(cor.name.to_string())))
}

fn cmd_run_theorem(args: TheoremArgs) -> CliResult<i32> {
    if args.k < 8 {
        return Err(fail(EXIT_INVALID_PARAMS, format!("K must be at least 8, got {}", args.k)));
    }
    let (mut spec, corollary) = theorem_spec(&args.target)?;
    if let Some(b) = &args.branch {
        if spec.theorem != TheoremKind::T1 {
            return Err(fail(EXIT_INVALID_PARAMS, "--branch applies to the first theorem only"));
        }
        spec.branch = Some(Branch::parse(b)?);
    }
    if let Some(p) = &args.params {
        spec = spec.with_overrides(parse_params(p)?)?;
    }
    let harness = HarnessConfig { order: args.k, ..HarnessConfig::default() }.with_r_trust(args.r_trust)?;
    let cfg = BatchConfig {
        seed: args.seed,
        trials: args.trials,
        harness,
        omega: parse_omega(&args.omega)?,
    };
    let run = || match &corollary {
        Some(name) => find_corollary(name).map(|c| c.run(&cfg)),
        None => Ok(run_batch_full(&spec, &cfg)),
    };
    let results = match args.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| fail(EXIT_INVALID_PARAMS, format!("cannot start {j} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let reports: Vec<_> = results.iter().map(|r| &r.report).collect();
    let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    write_output(args.out.as_deref(), &json)?;
    if let Some(stem) = &args.curves {
        for r in &results {
            write_curves(stem, r, args.r_trust)?;
        }
    }
    let failed = reports
        .iter()
        .any(|r| r.verdict == Verdict::Fails && r.hypothesis.as_ref().is_some_and(|h| h.passed));
    Ok(if failed { EXIT_THEOREM_FAILS } else { EXIT_OK })
}

fn write_curves(stem: &Path, r: &RunResult, r_trust: f64) -> CliResult<()> {
    let (Some(tp), Some(ev)) = (&r.params, &r.evaluation) else {
        return Ok(());
    };
    let conclusion = sample_curve(|z| Ok(ev.conclusion_series.eval(z)), r_trust, 720)?;
    let q = tp.q();
    let boundary = sample_curve(|z| q.value(z), BOUNDARY_RADIUS, 720)?;
    let name = stem
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "curves".into());
    for (suffix, samples) in [("conclusion", conclusion), ("boundary", boundary)] {
        let path = stem.with_file_name(format!("{name}-{}_{suffix}.csv", r.report.id));
        std::fs::write(&path, curve_csv(&samples))
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// The text printed by `presets`.
pub fn presets_listing() -> String {
    let mut s = String::from("operator presets\n");
    for p in preset_catalog() {
        let _ = writeln!(s, "  {:<22} free: {:<28} {}", p.name, p.free.join(", "), p.reference);
    }
    s.push_str("corollary presets\n");
    for c in corollary_presets() {
        let theorem = match c.theorem {
            TheoremKind::T1 => "theorem 1",
            TheoremKind::T2 => "theorem 2",
            TheoremKind::T3 => "theorem 3",
        };
        let _ = write!(s, "  {:<6} {:<10} {}", c.name, theorem, c.bindings);
        if let Some(note) = c.note {
            let _ = write!(s, " ({note})");
        }
        s.push('\n');
    }
    s
}

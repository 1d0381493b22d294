//! The `steinberg-lab` command line. [`run`] does all the work and returns
//! the exit code with the captured output so it can be driven from tests.

use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use regex::Regex;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycles::steinberg_cycle;
use crate::error::{Error, Result};
use crate::hodge::{self, ProductTorus, TorsionVerdict};
use crate::special::{CutSide, PrecisionContext, DEFAULT_TOL};
use crate::symbols::{
    cup_cocycle, epsilon, epsilon_with_side, h2_class, is_coboundary, verify_certificate, CoboundaryOutcome,
    K2Presentation,
};
use crate::tate::{probe_algebraicity, PointSpec, TateParameter};
use crate::theta::{automorphy_residual, divisor_of_section, nodal_section, section_f, tate_theta, AutomorphyBundle, DivisorOnCurve};

pub const SCHEMA: &str = "steinberg-lab/1";
pub const TOL_ENV: &str = "STEINBERG_LAB_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`; exponents allowed.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        let num = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?";
        Regex::new(&format!(r"^(?P<re>[+-]?{num})?(?:(?P<sign>[+-])?(?P<im>{num})?(?P<i>i))?$")).unwrap()
    });
    let t = s.trim();
    let bad = || format!("malformed complex literal {s:?} (expected a+bi)");
    let caps = re.captures(t).filter(|_| !t.is_empty()).ok_or_else(bad)?;
    let num = |m: Option<regex::Match>| m.map(|m| m.as_str().parse::<f64>().map_err(|_| bad())).transpose();
    let real = num(caps.name("re"))?;
    let imag_abs = num(caps.name("im"))?;
    let has_i = caps.name("i").is_some();
    let sign = caps.name("sign").map(|m| m.as_str());
    let z = match (real, has_i, sign, imag_abs) {
        (Some(r), false, _, _) => Complex64::new(r, 0.0),
        // "3i": the real slot captured the imaginary coefficient
        (Some(r), true, None, None) => Complex64::new(0.0, r),
        (Some(_), true, None, Some(_)) => return Err(bad()),
        (r, true, s, m) => {
            let mag = m.unwrap_or(1.0);
            let im = if s == Some("-") { -mag } else { mag };
            Complex64::new(r.unwrap_or(0.0), im)
        }
        (None, false, _, _) => return Err(bad()),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "steinberg-lab", version, about = "Steinberg cycles on products of Tate curves")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Absolute tolerance for series and contour work
    #[arg(long, global = true, env = TOL_ENV)]
    tol: Option<f64>,
    /// Cap on series terms
    #[arg(long, global = true)]
    terms: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Include diagnostic traces in the report
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "tau")]
    q: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    tau: Option<Complex64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Theta function and the section F(w) = theta(w/u)/theta(w)
    Theta {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Option<Complex64>,
        #[arg(long)]
        check_automorphy: bool,
        /// Locate the divisor of F by contour integration
        #[arg(long)]
        divisor: bool,
        /// Number of seeded random sample points
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The Steinberg cycle p(u) * p'(v) and its filtration data
    Cycle {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "tau2")]
        q2: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau2: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Option<Complex64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Nodal certificate, cup-product class and epsilon for one u
    SteinbergCheck {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
    },
    /// Integer solutions of 1 - t^m u = t'^p (1 - t^n u)
    Probe {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "tau2")]
        q2: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau2: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Option<Complex64>,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Integral (1,1)-classes on E_tau x E_tau2
    Ns {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau2: Option<Complex64>,
        /// Height bound of the class search
        #[arg(long, default_value_t = hodge::DEFAULT_HEIGHT_BOUND)]
        bound: i64,
    },
    /// Deligne image of cls (x) v and its torsion test
    Deligne {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau2: Option<Complex64>,
        /// e0 = [E x 0], 0e = [0 x E'], diag, diag-0e, or six integers a12,a13,a14,a23,a24,a34
        #[arg(long, default_value = "e0")]
        class: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Complex64,
        /// Largest torsion order tried
        #[arg(long, default_value_t = hodge::DEFAULT_ORDER_BOUND)]
        bound: u64,
        /// Height bound of the class search
        #[arg(long, default_value_t = hodge::DEFAULT_HEIGHT_BOUND)]
        height: i64,
    },
}

/// Echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub precision: PrecisionContext,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Report {
    Json { result: Value, verified: bool },
    Csv { header: Vec<String>, rows: Vec<Vec<String>>, verified: bool },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_numeric_degeneracy() { EXIT_NUMERIC } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli) {
        Ok((config, command, report)) => render(&config, command, report),
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn render(config: &RunConfig, command: &str, report: Report) -> Outcome {
    match report {
        Report::Json { result, verified } => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "config": config,
                "status": if verified { "ok" } else { "verification_failed" },
                "result": result,
            });
            let mut stdout = serde_json::to_string_pretty(&doc).expect("report serialises");
            stdout.push('\n');
            Outcome {
                code: if verified { EXIT_OK } else { EXIT_VERIFICATION },
                stdout,
                stderr: String::new(),
            }
        }
        Report::Csv { header, rows, verified } => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory csv");
            for r in &rows {
                w.write_record(r).expect("in-memory csv");
            }
            let stdout = String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv");
            Outcome {
                code: if verified { EXIT_OK } else { EXIT_VERIFICATION },
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn config_from(g: &GlobalArgs) -> std::result::Result<RunConfig, Failure> {
    let base = PrecisionContext::default();
    let precision = PrecisionContext::new(
        g.tol.unwrap_or(DEFAULT_TOL),
        g.terms.unwrap_or(base.series_term_cap),
        base.quadrature_nodes,
    )?;
    Ok(RunConfig {
        precision,
        seed: g.seed,
        output_format: g.format,
        trace: g.trace,
    })
}

fn curve_from(c: &CurveArgs, name: &str) -> std::result::Result<TateParameter, Failure> {
    match (c.q, c.tau) {
        (Some(q), _) => Ok(TateParameter::new(q)?),
        (None, Some(tau)) => Ok(TateParameter::from_tau(tau)?),
        (None, None) => Err(usage(format!("{name}: give --q or --tau"))),
    }
}

fn second_curve(q2: Option<Complex64>, tau2: Option<Complex64>) -> std::result::Result<TateParameter, Failure> {
    match (q2, tau2) {
        (Some(q), _) => Ok(TateParameter::new(q)?),
        (None, Some(t)) => Ok(TateParameter::from_tau(t)?),
        (None, None) => Err(usage("give --q2 or --tau2")),
    }
}

/// The generator for sweep item `index`: independent of thread scheduling.
fn item_rng(seed: u64, index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform in `log|z|` over `[lo, hi]` and in angle.
fn random_annulus(rng: &mut impl Rng, lo: f64, hi: f64) -> Complex64 {
    let r = rng.gen_range(lo..hi).exp();
    let a = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Complex64::from_polar(r, a)
}

/// A random point of the fundamental annulus of `curve`, away from 1.
fn random_point(rng: &mut impl Rng, curve: TateParameter) -> Complex64 {
    let lo = if curve.is_nodal() { -1.5 } else { curve.q().norm().ln() * 0.95 };
    loop {
        let z = random_annulus(rng, lo, 0.0);
        if (z - 1.0).norm() > 1e-3 {
            return z;
        }
    }
}

fn cx(z: Complex64) -> [String; 2] {
    [z.re.to_string(), z.im.to_string()]
}

fn require_json(config: &RunConfig, what: &str) -> std::result::Result<(), Failure> {
    if config.output_format == OutputFormat::Csv {
        return Err(usage(format!("csv output is only available for sweeps (--samples); {what} emits json")));
    }
    Ok(())
}

fn execute(cli: Cli) -> std::result::Result<(RunConfig, &'static str, Report), Failure> {
    let config = config_from(&cli.global)?;
    let ctx = config.precision;
    let verify_tol = 10.0 * ctx.target_abs_tol;
    match cli.command {
        Command::Theta { curve, w, u, check_automorphy, divisor, samples } => {
            let curve = curve_from(&curve, "theta")?;
            let bundle = u.map(|u| AutomorphyBundle::new(curve, u)).transpose()?;
            if check_automorphy && bundle.is_none() {
                return Err(usage("--check-automorphy needs --u"));
            }
            if (check_automorphy || divisor) && curve.is_nodal() {
                return Err(usage("automorphy and divisor checks need 0 < |q| < 1"));
            }
            let points: Vec<(usize, Complex64)> = match (w, samples) {
                (Some(_), Some(_)) => return Err(usage("--w and --samples are exclusive")),
                (Some(w), None) => vec![(0, w)],
                (None, n) => {
                    let n = match n {
                        Some(n) => n,
                        None if check_automorphy || divisor => 16,
                        None => return Err(usage("theta needs --w or --samples")),
                    };
                    (0..n).map(|i| (i, random_point(&mut item_rng(config.seed, i), curve))).collect()
                }
            };
            if samples.is_none() {
                require_json(&config, "theta")?;
            }
            let rows = points
                .par_iter()
                .map(|&(i, w)| -> Result<(usize, Complex64, Complex64, Option<Complex64>, Option<f64>)> {
                    let th = tate_theta(w, curve, &ctx)?;
                    let f = bundle.as_ref().map(|b| section_f(w, b, &ctx)).transpose()?;
                    let res = match (&bundle, check_automorphy) {
                        (Some(b), true) => Some(automorphy_residual(w, b, &ctx)?),
                        _ => None,
                    };
                    Ok((i, w, th, f, res))
                })
                .collect::<Result<Vec<_>>>()?;
            let max_res = rows.iter().filter_map(|r| r.4).fold(0.0f64, f64::max);
            let mut verified = max_res < verify_tol;
            let mut divisor_json = Value::Null;
            if divisor {
                let b = bundle.as_ref().ok_or_else(|| usage("--divisor needs --u"))?;
                let report = divisor_of_section(b, &ctx)?;
                let expected = DivisorOnCurve::new(curve, [(curve.point(b.monodromy_u)?, 1), (curve.identity(), -1)], ctx.target_abs_tol)?;
                let matches = report.divisor.approx_eq(&expected, 1e-6);
                verified &= matches;
                divisor_json = json!({
                    "divisor": report.divisor,
                    "expected": expected,
                    "matches_expected": matches,
                    "trace": if config.trace { serde_json::to_value(&report.trace).unwrap() } else { Value::Null },
                });
            }
            if config.output_format == OutputFormat::Csv {
                let header = ["index", "w_re", "w_im", "theta_re", "theta_im", "f_re", "f_im", "automorphy_residual"];
                let rows = rows
                    .iter()
                    .map(|(i, w, th, f, r)| {
                        let mut row = vec![i.to_string()];
                        row.extend(cx(*w));
                        row.extend(cx(*th));
                        match f {
                            Some(f) => row.extend(cx(*f)),
                            None => row.extend([String::new(), String::new()]),
                        }
                        row.push(r.map(|r| r.to_string()).unwrap_or_default());
                        row
                    })
                    .collect();
                return Ok((config, "theta", Report::Csv { header: header.map(String::from).to_vec(), rows, verified }));
            }
            let samples: Vec<Value> = rows
                .iter()
                .map(|(i, w, th, f, r)| json!({"index": i, "w": w, "theta": th, "f": f, "automorphy_residual": r}))
                .collect();
            let result = json!({
                "curve": curve,
                "u": u,
                "samples": samples,
                "automorphy": if check_automorphy { json!({"max_residual": max_res, "threshold": verify_tol}) } else { Value::Null },
                "divisor": divisor_json,
            });
            Ok((config, "theta", Report::Json { result, verified }))
        }
        Command::Cycle { curve, q2, tau2, u, v, samples } => {
            let c1 = curve_from(&curve, "cycle")?;
            let c2 = second_curve(q2, tau2)?;
            let inputs: Vec<(usize, Complex64, Complex64)> = match (u, v, samples) {
                (Some(u), Some(v), None) => vec![(0, u, v)],
                (None, None, Some(n)) => (0..n)
                    .map(|i| {
                        let mut rng = item_rng(config.seed, i);
                        let u = random_point(&mut rng, c1);
                        (i, u, random_point(&mut rng, c2))
                    })
                    .collect(),
                _ => return Err(usage("cycle needs --u and --v, or --samples")),
            };
            if samples.is_none() {
                require_json(&config, "cycle")?;
            }
            let tol = ctx.target_abs_tol;
            let rows = inputs
                .par_iter()
                .map(|&(i, u, v)| -> Result<Value> {
                    let z = steinberg_cycle(c1, c2, u, v)?;
                    let (a, b) = z.albanese()?;
                    Ok(json!({
                        "index": i,
                        "u": u,
                        "v": v,
                        "cycle": z,
                        "degree": z.degree(),
                        "albanese": [PointSpec::from(&a), PointSpec::from(&b)],
                        "in_f1": z.degree() == 0,
                        "in_f2": z.in_f2(tol),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            let verified = rows.iter().all(|r| r["in_f2"] == json!(true));
            if config.output_format == OutputFormat::Csv {
                let header = ["index", "u_re", "u_im", "v_re", "v_im", "terms", "degree", "alb1_re", "alb1_im", "alb2_re", "alb2_im", "in_f2"];
                let rows = rows
                    .iter()
                    .map(|r| {
                        let f = |v: &Value| match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        vec![
                            f(&r["index"]),
                            f(&r["u"][0]),
                            f(&r["u"][1]),
                            f(&r["v"][0]),
                            f(&r["v"][1]),
                            r["cycle"]["terms"].as_array().map_or(0, |a| a.len()).to_string(),
                            f(&r["degree"]),
                            f(&r["albanese"][0]["w_re"]),
                            f(&r["albanese"][0]["w_im"]),
                            f(&r["albanese"][1]["w_re"]),
                            f(&r["albanese"][1]["w_im"]),
                            f(&r["in_f2"]),
                        ]
                    })
                    .collect();
                return Ok((config, "cycle", Report::Csv { header: header.map(String::from).to_vec(), rows, verified }));
            }
            let result = if samples.is_none() {
                rows.into_iter().next().unwrap()
            } else {
                json!({ "surface": [c1, c2], "samples": rows })
            };
            Ok((config, "cycle", Report::Json { result, verified }))
        }
        Command::SteinbergCheck { u } => {
            require_json(&config, "steinberg-check")?;
            let one = Complex64::new(1.0, 0.0);
            if u == one || u == Complex64::new(0.0, 0.0) {
                return Err(usage(format!("steinberg-check needs u outside {{0, 1}}, got {u}")));
            }
            let nodal = nodal_section(u)?;
            let divisor_ok = nodal.divisor == vec![(u, 1), (one, -1)];
            let gluing_ok = nodal.gluing_ratio == u;

            let cup = cup_cocycle(u)?;
            let free = h2_class(&cup, cup.tensor_module())?;
            let free_outcome = is_coboundary(&cup, cup.tensor_module())?;
            let k2 = K2Presentation::new(cup.lattice().clone(), vec![(0, 1)], verify_tol)?;
            let quotient = h2_class(&cup, &k2)?;
            let outcome = is_coboundary(&cup, &k2)?;
            let checked = match &outcome {
                CoboundaryOutcome::Coboundary { certificate } => Some(verify_certificate(certificate, &cup, &k2)?),
                CoboundaryOutcome::Obstructed { .. } => None,
            };

            let eps = if u.im == 0.0 && u.re > 1.0 { epsilon_with_side(u, CutSide::Upper)? } else { epsilon(u)? };
            let (offset, residual) = eps.lattice_offset()?;

            let verified = divisor_ok
                && gluing_ok
                && !free.is_zero()
                && !free_outcome.is_coboundary()
                && quotient.is_zero()
                && checked.is_some()
                && residual < 1e-8;
            let result = json!({
                "u": u,
                "nodal": {
                    "section": nodal,
                    "divisor_ok": divisor_ok,
                    "gluing_ratio_ok": gluing_ok,
                },
                "free_lattice": {
                    "class": free,
                    "outcome": free_outcome,
                },
                "steinberg_quotient": {
                    "class": quotient,
                    "outcome": outcome,
                    "certificate_checked_pairs": checked,
                },
                "epsilon": {
                    "element": eps,
                    "contraction": eps.contraction()?,
                    "reference": eps.reference_value()?,
                    "lattice_offset": offset,
                    "residual": residual,
                },
            });
            Ok((config, "steinberg-check", Report::Json { result, verified }))
        }
        Command::Probe { curve, q2, tau2, u, bound, samples } => {
            let t = curve_from(&curve, "probe")?;
            let t2 = second_curve(q2, tau2)?;
            let inputs: Vec<(usize, Complex64)> = match (u, samples) {
                (Some(u), None) => vec![(0, u)],
                (None, Some(n)) => (0..n).map(|i| (i, random_annulus(&mut item_rng(config.seed, i), -1.0, 1.0))).collect(),
                _ => return Err(usage("probe needs --u or --samples")),
            };
            if samples.is_none() {
                require_json(&config, "probe")?;
            }
            let rows = inputs
                .par_iter()
                .map(|&(i, u)| Ok((i, u, probe_algebraicity(t, t2, u, bound, verify_tol)?)))
                .collect::<Result<Vec<_>>>()?;
            if config.output_format == OutputFormat::Csv {
                let header = ["index", "u_re", "u_im", "solutions"];
                let rows = rows
                    .iter()
                    .map(|(i, u, s)| {
                        let sols: Vec<String> = s.iter().map(|s| format!("{} {} {}", s.n, s.m, s.p)).collect();
                        let mut row = vec![i.to_string()];
                        row.extend(cx(*u));
                        row.push(sols.join(";"));
                        row
                    })
                    .collect();
                return Ok((config, "probe", Report::Csv { header: header.map(String::from).to_vec(), rows, verified: true }));
            }
            let samples_json: Vec<Value> = rows
                .iter()
                .map(|(i, u, s)| json!({"index": i, "u": u, "solutions": s}))
                .collect();
            let result = json!({"t": t, "t2": t2, "bound": bound, "samples": samples_json});
            Ok((config, "probe", Report::Json { result, verified: true }))
        }
        Command::Ns { tau, tau2, bound } => {
            require_json(&config, "ns")?;
            let torus = ProductTorus::new(tau, tau2.unwrap_or(tau))?;
            let report = hodge::ns_group_with_bound(&torus, bound)?;
            let f2 = hodge::ns_meets_f2_trivially(&report);
            let result = json!({
                "report": report,
                "basis_labels": hodge::BASIS_LABELS,
                "f2_intersection_trivial": f2,
            });
            Ok((config, "ns", Report::Json { result, verified: f2 }))
        }
        Command::Deligne { tau, tau2, class, v, bound, height } => {
            require_json(&config, "deligne")?;
            let torus = ProductTorus::new(tau, tau2.unwrap_or(tau))?;
            let report = hodge::ns_group_with_bound(&torus, height)?;
            let cls = match class.as_str() {
                "e0" => report.e_times_zero()?,
                "0e" => report.zero_times_e()?,
                "diag" => report.diagonal()?,
                "diag-0e" => {
                    let d = report.diagonal()?.vector;
                    let z = report.zero_times_e()?.vector;
                    let mut v = [0i64; 6];
                    for k in 0..6 {
                        v[k] = d[k] - z[k];
                    }
                    report.class_from_vector(v)?
                }
                other => {
                    let parts: Vec<i64> = other
                        .split(',')
                        .map(|s| s.trim().parse::<i64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| usage(format!("unknown class {other:?}")))?;
                    let v: [i64; 6] = parts
                        .try_into()
                        .map_err(|_| usage("a class vector has six entries a12,a13,a14,a23,a24,a34"))?;
                    report.class_from_vector(v)?
                }
            };
            let image = hodge::deligne_image(&cls, v)?;
            let verdict = hodge::is_torsion(&cls, v, bound, ctx.target_abs_tol)?;
            let result = json!({
                "class": cls,
                "v": v,
                "image": image,
                "zero": image.is_zero(1e-9),
                "torsion": verdict,
                "is_torsion": match verdict {
                    TorsionVerdict::Torsion { .. } => json!(true),
                    TorsionVerdict::NonTorsion => json!(false),
                    TorsionVerdict::Indeterminate { .. } => Value::Null,
                },
            });
            Ok((config, "deligne", Report::Json { result, verified: true }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let ok = [
            ("2+1i", Complex64::new(2.0, 1.0)),
            ("2+i", Complex64::new(2.0, 1.0)),
            ("-0.5-2.5i", Complex64::new(-0.5, -2.5)),
            ("3", Complex64::new(3.0, 0.0)),
            ("3i", Complex64::new(0.0, 3.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1e-3+2E2i", Complex64::new(1e-3, 200.0)),
            (" .5 ", Complex64::new(0.5, 0.0)),
        ];
        for (s, z) in ok {
            assert_eq!(parse_complex(s).unwrap(), z, "{s}");
        }
        for s in ["2+i+", "", "i2", "2+3", "abc", "1..2", "2 + i", "3i4", "2ii"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn theta_at_nodal_fibre() {
        let out = run(["steinberg-lab", "theta", "--q", "0", "--w", "3"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["result"]["samples"][0]["theta"], json!([-2.0, 0.0]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["steinberg-lab", "theta", "--q", "0.3", "--w", "2+i+"]).code, EXIT_USAGE);
        assert_eq!(run(["steinberg-lab", "steinberg-check", "--u", "1"]).code, EXIT_USAGE);
        assert_eq!(run(["steinberg-lab", "ns", "--tau", "i", "--format", "csv"]).code, EXIT_USAGE);
        assert_eq!(run(["steinberg-lab", "theta", "--q", "0.3", "--u", "2", "--w", "1", "--check-automorphy"]).code, EXIT_NUMERIC);
        assert_eq!(run(["steinberg-lab", "--help"]).code, EXIT_OK);
    }
}

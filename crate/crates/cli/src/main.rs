mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fibercount::bounds::{liaison_check, prop17_check, prop1_certificate, theorem_bound, verify_main_theorem};
use fibercount::experiment::{sweep, to_csv, SweepConfig};
use fibercount::fibers::{exhaustive_scan, fiber_at_point, one_dim_locus, Hypotheses};
use fibercount::hilbert::{graded_dims, ideal_dimension_in_degree, nml_invariants, DimsMode, NmlRoute};
use fibercount::input::{parse_input, FieldSpec, InputSpec};
use fibercount::{Error, Field, Parameterization, ProjectivePoint};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "fibercount", version, about = "Curve fibers of rational surface parameterizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized steps.
    #[arg(long, global = true, env = "FIBERCOUNT_SEED")]
    seed: Option<u64>,
    /// Run hypothesis-dependent steps even when the hypotheses fail.
    #[arg(long = "override", global = true)]
    override_hypotheses: bool,
    /// Leave timings out of the report.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Args)]
struct InputArg {
    /// Input file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Hypotheses, invariants and the main bound.
    Analyze(InputArg),
    /// The points with curve fibers, or one fiber with `--point`.
    Fibers {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        point: Option<String>,
    },
    /// Saturation certificate search.
    Bound {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        smax: Option<u32>,
    },
    /// Exhaustive scan over a finite field.
    Scan {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        ext: Option<u32>,
    },
    /// Random instances over F_p, CSV output.
    Sweep {
        #[arg(long, default_value_t = 7)]
        prime: u32,
        #[arg(long, default_value_t = 3)]
        dmin: u32,
        #[arg(long, default_value_t = 5)]
        dmax: u32,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        ext: u32,
        /// Add the known family with `Σ = d + 2` to each row with d >= 4.
        #[arg(long)]
        inject: bool,
    },
    /// Hilbert function table of `R/I` and `R/I^sat`.
    Hilbert {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        upto: Option<u32>,
    },
}

const DEFAULT_SMAX: u32 = 3;

struct Outcome {
    report: Value,
    applicable: bool,
}

struct Timer {
    enabled: bool,
    marks: Map<String, Value>,
}

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.enabled {
            self.marks.insert(name.to_string(), json!(t.elapsed().as_millis() as u64));
        }
        out
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text);
}

fn read_input(arg: &InputArg) -> Result<InputSpec, Error> {
    let text = if arg.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Invalid(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(&arg.input).map_err(|e| Error::Invalid(format!("{}: {}", arg.input.display(), e)))?
    };
    parse_input(&text)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    if let Command::Sweep { prime, dmin, dmax, samples, ext, inject } = &cli.command {
        let cfg = SweepConfig {
            p: *prime,
            degrees: *dmin..=*dmax,
            samples: *samples,
            seed: cli.seed.unwrap_or(0),
            ext: *ext,
            inject_family: *inject,
        };
        let rows = sweep(&cfg)?;
        emit(to_csv(&rows).trim_end());
        for r in rows.iter().filter(|r| r.falsified) {
            eprintln!("warning: d = {} exceeds the bound {} (max {:?})", r.d, r.bound, r.max_sum);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let input = match &cli.command {
        Command::Analyze(i) => i,
        Command::Fibers { input, .. } | Command::Bound { input, .. } | Command::Scan { input, .. } | Command::Hilbert { input, .. } => input,
        Command::Sweep { .. } => unreachable!(),
    };
    let spec = read_input(input)?;
    let seed = cli.seed.or(spec.options.seed).unwrap_or(0);
    let mut timer = Timer { enabled: !cli.no_timings, marks: Map::new() };
    let outcome = match spec.field {
        FieldSpec::Rational => {
            if matches!(cli.command, Command::Scan { .. }) {
                return Err(Error::FieldMismatch);
            }
            let param = spec.rational_parameterization()?;
            dispatch(cli, &spec, &param, seed, &mut timer)?
        }
        FieldSpec::Prime(_) => {
            let param = spec.prime_parameterization()?;
            if let Command::Scan { ext, .. } = &cli.command {
                scan(&param, ext.or(spec.options.ext).unwrap_or(1), &mut timer)?
            } else {
                dispatch(cli, &spec, &param, seed, &mut timer)?
            }
        }
    };
    let mut report = outcome.report;
    let obj = report.as_object_mut().expect("reports are objects");
    obj.insert("schema_version".into(), json!(report::SCHEMA_VERSION));
    obj.insert("applicable".into(), json!(outcome.applicable));
    obj.insert("seed".into(), json!(seed));
    if timer.enabled {
        obj.insert("timings_ms".into(), Value::Object(timer.marks));
    }
    emit(&serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(if outcome.applicable { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn base<F: Field>(command: &str, param: &Parameterization<F>, timer: &mut Timer) -> (Map<String, Value>, bool) {
    let rep = timer.time("hypotheses", || param.base_locus().clone());
    let mut obj = Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("field".into(), json!(param.field().name()));
    obj.insert("degree".into(), json!(param.degree()));
    obj.insert("hypotheses".into(), report::hypotheses(&rep));
    obj.insert("syzygy_degrees".into(), json!(param.syzygies().column_degrees()));
    (obj, rep.hypotheses_pass)
}

fn dispatch<F: Field>(cli: &Cli, spec: &InputSpec, param: &Parameterization<F>, seed: u64, timer: &mut Timer) -> Result<Outcome, Error> {
    let override_flag = cli.override_hypotheses || spec.options.override_hypotheses;
    let policy = if override_flag { Hypotheses::Override } else { Hypotheses::Enforce };
    match &cli.command {
        Command::Analyze(_) => {
            let (mut obj, pass) = base("analyze", param, timer);
            obj.insert("invariants".into(), if pass { invariants(param, seed, timer)? } else { Value::Null });
            let check = timer.time("locus", || verify_main_theorem(param, seed));
            let field = param.field();
            obj.insert(
                "locus".into(),
                match &check.locus {
                    Ok(l) => report::locus(field, l),
                    Err(e) => json!({ "error": e }),
                },
            );
            obj.insert("sum_deg_h".into(), json!(check.certificate.observed_sum));
            obj.insert("bound".into(), json!(theorem_bound(param.degree()).ok()));
            obj.insert("satisfied".into(), json!(check.certificate.satisfied));
            obj.insert("certificates".into(), json!([report::certificate(&check.certificate)]));
            Ok(Outcome { report: Value::Object(obj), applicable: pass })
        }
        Command::Fibers { point, .. } => {
            let (mut obj, pass) = base("fibers", param, timer);
            let field = param.field();
            if let Some(text) = point {
                let p = ProjectivePoint::parse(field, text)?;
                let value = match fiber_at_point(param, &p, policy) {
                    Ok(r) => report::fiber(field, &r),
                    Err(e @ Error::Hypotheses(_)) => json!({ "point": p.format(field), "error": e.to_string() }),
                    Err(e) => return Err(e),
                };
                obj.insert("fiber".into(), value);
            } else {
                let value = match timer.time("locus", || one_dim_locus(param, seed, policy)) {
                    Ok(l) => {
                        obj.insert("sum_deg_h".into(), json!(l.total_degree));
                        report::locus(field, &l)
                    }
                    Err(e) if !pass => json!({ "error": e.to_string() }),
                    Err(e) => return Err(e),
                };
                obj.insert("locus".into(), value);
            }
            Ok(Outcome { report: Value::Object(obj), applicable: pass })
        }
        Command::Bound { smax, .. } => {
            let (mut obj, pass) = base("bound", param, timer);
            let smax = smax.or(spec.options.smax).unwrap_or(DEFAULT_SMAX);
            obj.insert("smax".into(), json!(smax));
            match timer.time("prop1", || prop1_certificate(param, smax)) {
                Ok(cert) => {
                    obj.insert(
                        "prop1".into(),
                        match &cert {
                            Some(c) => match c.kind {
                                fibercount::bounds::BoundKind::Prop1 { s, nu } => json!({ "s": s, "nu": nu }),
                                _ => Value::Null,
                            },
                            None => Value::Null,
                        },
                    );
                    obj.insert("certificates".into(), json!(cert.iter().map(report::certificate).collect::<Vec<_>>()));
                }
                Err(Error::Hypotheses(msg)) => {
                    obj.insert("prop1".into(), json!({ "error": msg }));
                }
                Err(e) => return Err(e),
            }
            obj.insert("bound".into(), json!(theorem_bound(param.degree()).ok()));
            if pass {
                let checks = timer.time("prop17", || (1..=smax.min(2)).map(|s| prop17_check(param, s)).collect::<Result<Vec<_>, _>>())?;
                obj.insert("prop17".into(), json!(checks.iter().map(report::prop17).collect::<Vec<_>>()));
            }
            Ok(Outcome { report: Value::Object(obj), applicable: pass })
        }
        Command::Hilbert { upto, .. } => {
            let (mut obj, pass) = base("hilbert", param, timer);
            let upto = upto.unwrap_or(2 * param.degree());
            let q = graded_dims(param.ideal(), upto, DimsMode::Quotient);
            let sat = graded_dims(param.saturation(), upto, DimsMode::Quotient);
            obj.insert("upto".into(), json!(upto));
            obj.insert("quotient".into(), json!(q.table.values().collect::<Vec<_>>()));
            obj.insert("saturation".into(), json!(sat.table.values().collect::<Vec<_>>()));
            obj.insert("stabilization".into(), json!(sat.stabilization));
            Ok(Outcome { report: Value::Object(obj), applicable: pass })
        }
        Command::Scan { .. } | Command::Sweep { .. } => unreachable!("handled by the caller"),
    }
}

fn invariants<F: Field>(param: &Parameterization<F>, seed: u64, timer: &mut Timer) -> Result<Value, Error> {
    let d = param.degree();
    let (closed, direct) = timer.time("invariants", || {
        (
            nml_invariants(param.ideal(), d, NmlRoute::ClosedForm),
            nml_invariants(param.ideal(), d, NmlRoute::Direct),
        )
    });
    let (closed, direct) = (closed?, direct?);
    let deg_p = closed.deg_p;
    let di = d as u64;
    let (lo, hi) = (di * (di + 1) / 2, di * di - 2 * di + 3);
    let mu = 2 * d as i64 - 2;
    let liaison = timer.time("liaison", || liaison_check(param, seed))?;
    Ok(json!({
        "deg_p": deg_p,
        "nml": [report::nml(&closed), report::nml(&direct)],
        "routes_agree": (closed.n, closed.m, closed.l) == (direct.n, direct.m, direct.l),
        "lemma5_window": { "low": lo, "high": hi, "holds": lo <= deg_p && deg_p <= hi },
        "ideal_dim_2d_minus_2": [ideal_dimension_in_degree(param.ideal(), mu), ideal_dimension_in_degree(param.saturation(), mu)],
        "liaison": report::liaison(&liaison),
    }))
}

fn scan(param: &Parameterization<fibercount::PrimeField>, ext: u32, timer: &mut Timer) -> Result<Outcome, Error> {
    let (mut obj, pass) = base("scan", param, timer);
    let locus = timer.time("scan", || exhaustive_scan(param, ext))?;
    let field = fibercount::ExtensionField::new(param.field().modulus() as u64, ext)?;
    let q = field.size().unwrap_or(0);
    obj.insert(
        "extension".into(),
        json!({ "p": field.prime(), "e": ext, "modulus": field.modulus_coeffs(), "points_scanned": q * q * q + q * q + q + 1 }),
    );
    obj.insert("sum_deg_h".into(), json!(locus.total_degree));
    obj.insert("locus".into(), report::locus(&field, &locus));
    Ok(Outcome { report: Value::Object(obj), applicable: pass })
}

//! `penta-geom`: membership checks, sampling, witnesses, boundary strata,
//! convexity reports, automorphisms and property suites from the shell.
//!
//! Exit status: 0 on success, 1 when a computation or suite fails, 2 on
//! usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use penta_geom::automorphisms::{auto_apply, auto_compose, auto_inverse, orbit_of_origin, PentaAutomorphism};
use penta_geom::convexity::{cconvexity_check, linconvex_witness, witness_verify, PhiField, ScalarField2C};
use penta_geom::domains::{
    boundary_classify, penta_contains, phi_z_field, Criterion, PentaPoint, SymmetrisedPoint, DEFAULT_TOL,
};
use penta_geom::harness::{run_suite_id, sample_penta, SamplerConfig, SamplerStrategy, SuiteConfig, SuiteId};
use penta_geom::GeomError;

#[derive(Parser, Debug)]
#[command(name = "penta-geom", version, about = "Numerical geometry of the pentablock")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Boundary band for membership verdicts.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Sample count; each command has its own default.
    #[arg(long, global = true)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership of a point, "aRe,aIm,sRe,sIm,pRe,pIm".
    Check {
        #[arg(long, value_parser = parse_point)]
        point: PentaPoint,
        #[arg(long, default_value = "all", value_parser = parse_criterion)]
        criterion: Criterion,
    },
    /// Random points as CSV (or JSON with --json).
    Sample {
        #[arg(long, default_value = "contraction-pushforward", value_parser = parse_strategy)]
        strategy: SamplerStrategy,
        #[arg(long)]
        radius_cap: Option<f64>,
    },
    /// A complex hyperplane through an exterior point that misses P.
    Witness {
        #[arg(long, value_parser = parse_point)]
        point: PentaPoint,
        /// Also check the witness against --n samples of P.
        #[arg(long)]
        verify: bool,
    },
    /// Boundary stratum of a point.
    Boundary {
        #[arg(long, value_parser = parse_point)]
        point: PentaPoint,
    },
    /// C-convexity inequality of a field along a complex line in (s, p).
    Convexity {
        #[arg(long, value_enum, default_value_t = FieldKind::Phi)]
        field: FieldKind,
        /// Parameter of phi^z, "re,im".
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        z: Complex64,
        /// Base point "sRe,sIm,pRe,pIm".
        #[arg(long, value_parser = parse_pair, default_value = "0,0,0,0")]
        base: [Complex64; 2],
        /// Direction "d1Re,d1Im,d2Re,d2Im", normalized before use.
        #[arg(long, value_parser = parse_pair, default_value = "1,0,0,0")]
        direction: [Complex64; 2],
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        t0: Complex64,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
    /// Automorphisms f = (omega, eta, alpha), each given as "re,im".
    #[command(subcommand)]
    Auto(AutoCommand),
    /// Run a named property suite, or all of them.
    Suite {
        /// Suite name, e.g. automorphism-group
        #[arg(long, value_parser = parse_suite, required_unless_present = "all")]
        name: Option<SuiteId>,
        /// Run every suite; the JSON output is an array of reports
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Worker threads (default: PENTA_GEOM_THREADS, then all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum AutoCommand {
    /// f(x).
    Apply {
        #[command(flatten)]
        f: AutoArgs,
        #[arg(long, value_parser = parse_point)]
        point: PentaPoint,
    },
    /// f ∘ g, with g applied first.
    Compose {
        #[command(flatten)]
        f: AutoArgs,
        #[arg(long = "g-omega", value_parser = parse_complex)]
        g_omega: Complex64,
        #[arg(long = "g-eta", value_parser = parse_complex)]
        g_eta: Complex64,
        #[arg(long = "g-alpha", value_parser = parse_complex)]
        g_alpha: Complex64,
    },
    /// f⁻¹.
    Invert {
        #[command(flatten)]
        f: AutoArgs,
    },
    /// f(0).
    Orbit {
        #[command(flatten)]
        f: AutoArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct AutoArgs {
    #[arg(long, value_parser = parse_complex)]
    omega: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "1,0")]
    eta: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0,0")]
    alpha: Complex64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FieldKind {
    Phi,
    Phiz,
}

fn parse_reals(text: &str, count: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != count {
        return Err(format!("expected {count} comma-separated reals, got {}", v.len()));
    }
    Ok(v)
}

fn parse_point(text: &str) -> Result<PentaPoint, String> {
    text.parse::<PentaPoint>().map_err(|e| e.to_string())
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let v = parse_reals(text, 2)?;
    Ok(Complex64::new(v[0], v[1]))
}

fn parse_pair(text: &str) -> Result<[Complex64; 2], String> {
    let v = parse_reals(text, 4)?;
    Ok([Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])])
}

fn parse_criterion(text: &str) -> Result<Criterion, String> {
    text.parse::<Criterion>().map_err(|e| e.to_string())
}

fn parse_strategy(text: &str) -> Result<SamplerStrategy, String> {
    text.parse::<SamplerStrategy>().map_err(|e| e.to_string())
}

fn parse_suite(text: &str) -> Result<SuiteId, String> {
    text.parse::<SuiteId>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::InvalidParams(_) | GeomError::UnknownSuite(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.json {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(|e| Failure::Math(format!("stdout: {e}")))
        }
    }
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Math(format!("serialization: {e}")))?;
    emit(common, &text)
}

fn automorphism(a: &AutoArgs) -> Result<PentaAutomorphism, Failure> {
    Ok(PentaAutomorphism::from_parts(a.omega, a.eta, a.alpha)?)
}

#[derive(Serialize)]
struct BoundaryOutput {
    point: PentaPoint,
    class: String,
}

#[derive(Serialize)]
struct WitnessOutput {
    witness: penta_geom::convexity::HyperplaneWitness,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<penta_geom::convexity::WitnessVerification>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    if !(common.tol >= 0.0) {
        return Err(Failure::Usage("--tol must be nonnegative".into()));
    }
    match cli.command {
        Command::Check { point, criterion } => {
            let report = penta_contains(&point, criterion, common.tol)?;
            emit_json(common, &report)
        }
        Command::Sample { strategy, radius_cap } => {
            let cfg = SamplerConfig {
                strategy,
                count: common.n.unwrap_or(10),
                seed: common.seed,
                radius_cap,
            };
            let points = sample_penta(&cfg)?;
            if common.json.is_some() {
                return emit_json(common, &points);
            }
            let mut text = String::from("aRe,aIm,sRe,sIm,pRe,pIm,class");
            for x in &points {
                let r = x.to_reals();
                let class = boundary_classify(x, common.tol);
                text.push_str(&format!("\n{},{},{},{},{},{},{class}", r[0], r[1], r[2], r[3], r[4], r[5]));
            }
            emit(common, &text)
        }
        Command::Witness { point, verify } => {
            let witness = linconvex_witness(&point, common.tol)?;
            let verification = if verify {
                Some(witness_verify(&witness, common.n.unwrap_or(10_000), common.seed)?)
            } else {
                None
            };
            emit_json(
                common,
                &WitnessOutput {
                    witness,
                    residual: witness.residual(&point),
                    verification,
                },
            )
        }
        Command::Boundary { point } => emit_json(
            common,
            &BoundaryOutput {
                point,
                class: boundary_classify(&point, common.tol).to_string(),
            },
        ),
        Command::Convexity {
            field,
            z,
            base,
            direction,
            t0,
            h,
        } => {
            let phiz;
            let u: &dyn ScalarField2C = match field {
                FieldKind::Phi => &PhiField,
                FieldKind::Phiz => {
                    phiz = phi_z_field(z)?;
                    &phiz
                }
            };
            let report = cconvexity_check(u, &SymmetrisedPoint::new(base[0], base[1]), direction, t0, h)?;
            emit_json(common, &report)
        }
        Command::Auto(cmd) => match cmd {
            AutoCommand::Apply { f, point } => emit_json(common, &auto_apply(&automorphism(&f)?, &point)?),
            AutoCommand::Compose {
                f,
                g_omega,
                g_eta,
                g_alpha,
            } => {
                let g = PentaAutomorphism::from_parts(g_omega, g_eta, g_alpha)?;
                emit_json(common, &auto_compose(&automorphism(&f)?, &g))
            }
            AutoCommand::Invert { f } => emit_json(common, &auto_inverse(&automorphism(&f)?)),
            AutoCommand::Orbit { f } => emit_json(common, &orbit_of_origin(&automorphism(&f)?)),
        },
        Command::Suite { name, all, threads } => {
            let cfg = SuiteConfig {
                n: common.n,
                tol: common.tol,
                threads,
            };
            let ids: Vec<SuiteId> = if all { SuiteId::ALL.to_vec() } else { name.into_iter().collect() };
            let mut reports = Vec::with_capacity(ids.len());
            for id in ids {
                let report = run_suite_id(id, &cfg, common.seed)?;
                eprintln!("{}", report.summary());
                reports.push(report);
            }
            let pass = reports.iter().all(|r| r.pass);
            if reports.len() == 1 {
                emit_json(common, &reports[0])?;
            } else {
                emit_json(common, &reports)?;
            }
            if pass {
                Ok(())
            } else {
                Err(Failure::Math("suite failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

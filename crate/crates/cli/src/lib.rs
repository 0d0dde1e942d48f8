//! Command-line front end. [`run`] is the whole program minus process exit,
//! so the exit-code contract is testable in-process:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success                                   |
//! | 1    | argument or input-file error              |
//! | 2    | point outside the domain, invalid request |
//! | 3    | a verification suite failed               |

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use barrlund::levelset::{level_sets, to_csv, LevelMetric, LevelSetRequest};
use barrlund::metrics::{hyperbolic_disk, hyperbolic_halfplane, m_disk, point_pair};
use barrlund::mobius_qc::{lipschitz_sup_estimate, phi_k, schwarz_bound, LipschitzExperiment};
use barrlund::validation::{run_named, search_artanh_triangle, search_mobius_conjecture};
use barrlund::barrlund::b_with_mode;
use barrlund::{BoundaryMode, ComplexPoint, Domain, Error, Method, MetricResult, PExponent, PolygonWithHoles};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "barrlund", version, about = "Barrlund p-relative distance and related metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between two points.
    Dist(DistArgs),
    /// Level curves of the distance from a centre, as CSV polylines.
    Levelset(LevelsetArgs),
    /// Run property suites; one JSON report per line.
    Verify(VerifyArgs),
    /// Seeded searches; reports are evidence only and never fail the run.
    Search(SearchArgs),
    /// The distortion function φ_K(r) and its bound 4^{1−1/K} r^{1/K}.
    Phi(PhiArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DomainKind {
    Disk,
    Halfplane,
    Exterior,
    Punctured,
    Polygon,
}

#[derive(Args, Debug)]
struct DomainArgs {
    #[arg(long, value_enum)]
    domain: DomainKind,
    /// Deleted point of the punctured plane.
    #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
    puncture: ComplexPoint,
    /// JSON polygon document: {"outer": [[x, y], ...], "holes": [...]}.
    #[arg(long)]
    polygon: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, default_value = "b", value_parser = parse_metric)]
    metric: LevelMetric,
    #[arg(long, default_value = "2", value_parser = parse_exponent)]
    p: PExponent,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    z1: ComplexPoint,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    z2: ComplexPoint,
    /// Take the supremum over the whole complement instead of the boundary.
    #[arg(long)]
    complement: bool,
}

#[derive(Args, Debug)]
struct LevelsetArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, default_value = "b", value_parser = parse_metric)]
    metric: LevelMetric,
    #[arg(long, default_value = "2", value_parser = parse_exponent)]
    p: PExponent,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: ComplexPoint,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    levels: Vec<f64>,
    /// Cells per axis.
    #[arg(long, default_value_t = 200)]
    grid: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Record wall-clock time in `runtime_ms`; output is otherwise byte-stable.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(subcommand)]
    kind: SearchKind,
}

#[derive(Subcommand, Debug)]
enum SearchKind {
    /// Triangle inequality for artanh s_D.
    Artanh(SearchCommon),
    /// Lipschitz constant 1 + |a| for disk automorphisms, p in {1, 2}.
    Mobius(SearchCommon),
    /// Largest observed Lipschitz ratio of one automorphism.
    Lipschitz {
        #[arg(long, value_parser = parse_exponent)]
        p: PExponent,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        a: ComplexPoint,
        #[command(flatten)]
        common: SearchCommon,
    },
}

#[derive(Args, Debug)]
struct SearchCommon {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct PhiArgs {
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
}

fn parse_point(s: &str) -> Result<ComplexPoint, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x in `{s}`: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y in `{s}`: {e}"))?;
    Ok(ComplexPoint::new(x, y))
}

fn parse_exponent(s: &str) -> Result<PExponent, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<LevelMetric, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Json(_) | Error::InvalidPolygon(_) | Error::InvalidExponent(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn build_domain(a: &DomainArgs) -> Result<Domain, Failure> {
    Ok(match a.domain {
        DomainKind::Disk => Domain::UnitDisk,
        DomainKind::Halfplane => Domain::UpperHalfPlane,
        DomainKind::Exterior => Domain::ExteriorUnitDisk,
        DomainKind::Punctured => Domain::PuncturedPlane { center: a.puncture },
        DomainKind::Polygon => {
            let path = a.polygon.as_ref().ok_or_else(|| Failure::usage("--domain polygon needs --polygon FILE"))?;
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Domain::PolygonWithHoles(PolygonWithHoles::from_json(&text)?)
        }
    })
}

/// One-line result of `dist`; field order is part of the output format.
#[derive(Serialize)]
struct DistOutput {
    value: f64,
    extremal_point: Option<[f64; 2]>,
    method: &'static str,
    residual: f64,
}

impl From<MetricResult> for DistOutput {
    fn from(r: MetricResult) -> Self {
        Self {
            value: r.value,
            extremal_point: r.extremal_point.map(|z| [z.re, z.im]),
            method: r.method.as_str(),
            residual: r.residual,
        }
    }
}

impl DistOutput {
    fn scalar(value: f64) -> Self {
        Self { value, extremal_point: None, method: Method::ClosedForm.as_str(), residual: 0.0 }
    }
}

#[derive(Serialize)]
struct LipschitzOutput {
    #[serde(flatten)]
    experiment: LipschitzExperiment,
    conjecture_bound: f64,
    runtime_ms: u64,
}

#[derive(Serialize)]
struct PhiOutput {
    k: f64,
    r: f64,
    phi: f64,
    bound: f64,
    slack: f64,
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(v).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_dist(a: &DistArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let d = build_domain(&a.domain)?;
    let mode = if a.complement { BoundaryMode::Complement } else { BoundaryMode::Boundary };
    let unsupported = || Error::UnsupportedMetric { metric: a.metric.id(), domain: d.name() };
    let v = match a.metric {
        LevelMetric::Barrlund => DistOutput::from(b_with_mode(&d, a.p, a.z1, a.z2, mode)?),
        LevelMetric::TriangularRatio => {
            DistOutput::from(b_with_mode(&d, PExponent::Finite(1.0), a.z1, a.z2, mode)?)
        }
        LevelMetric::Hyperbolic => DistOutput::scalar(match d {
            Domain::UnitDisk => hyperbolic_disk(a.z1, a.z2)?,
            Domain::UpperHalfPlane => hyperbolic_halfplane(a.z1, a.z2)?,
            _ => return Err(unsupported().into()),
        }),
        LevelMetric::PointPair => DistOutput::scalar(point_pair(&d, a.z1, a.z2)?),
        LevelMetric::MDisk => match d {
            Domain::UnitDisk => DistOutput::scalar(m_disk(a.z1, a.z2)?),
            _ => return Err(unsupported().into()),
        },
    };
    json_line(out, &v)?;
    Ok(EXIT_OK)
}

fn cmd_levelset(a: &LevelsetArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let d = build_domain(&a.domain)?;
    let req = LevelSetRequest::new(d, a.metric, a.p, a.center, a.levels.clone(), a.grid)?;
    out.write_all(to_csv(&level_sets(&req)).as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let reports = run_named(&a.suite, a.trials, a.seed).ok_or_else(|| {
        let names: Vec<_> = barrlund::validation::suite_names().collect();
        Failure::usage(format!("unknown suite `{}`; expected all or one of: {}", a.suite, names.join(", ")))
    })?;
    let mut code = EXIT_OK;
    for r in reports {
        if !r.passed {
            code = EXIT_FAILED;
        }
        let r = if a.timing { r } else { r.without_runtime() };
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(code)
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let common = match &a.kind {
        SearchKind::Artanh(c) | SearchKind::Mobius(c) | SearchKind::Lipschitz { common: c, .. } => c,
    };
    if common.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let line = match &a.kind {
        SearchKind::Artanh(c) | SearchKind::Mobius(c) => {
            let r = match a.kind {
                SearchKind::Artanh(_) => search_artanh_triangle(c.trials, c.seed),
                _ => search_mobius_conjecture(c.trials, c.seed),
            };
            let r = if c.timing { r } else { r.without_runtime() };
            r.to_json()
        }
        SearchKind::Lipschitz { p, a, common } => {
            let start = Instant::now();
            let experiment = lipschitz_sup_estimate(*p, *a, common.trials, common.seed)?;
            let runtime_ms = if common.timing { start.elapsed().as_millis() as u64 } else { 0 };
            let v = LipschitzOutput { experiment, conjecture_bound: 1.0 + a.norm(), runtime_ms };
            serde_json::to_string(&v).map_err(|e| Failure::usage(e.to_string()))?
        }
    };
    writeln!(out, "{line}")?;
    Ok(EXIT_OK)
}

fn cmd_phi(a: &PhiArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let phi = phi_k(a.k, a.r)?;
    let bound = schwarz_bound(a.k, a.r);
    json_line(out, &PhiOutput { k: a.k, r: a.r, phi, bound, slack: bound - phi })?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Dist(a) => cmd_dist(a, out),
        Command::Levelset(a) => cmd_levelset(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Phi(a) => cmd_phi(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

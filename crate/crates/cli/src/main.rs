//! `toricrep`: batch front end for building and using representation
//! matrices of rational surfaces.

mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;
use toric_syzygy::embed::newton_data;
use toric_syzygy::implicitize::{expected_degree_product, find_implicit};
use toric_syzygy::repmat::{deserialize, serialize, SurfacePoint, MINOR_GCD_MAX_ROWS};
use toric_syzygy::syzygy::{default_nu, syzygy_matrix};

use input::{emit, json_line, parse_point, read, CurveArgs, JobArgs};

const THREADS_VAR: &str = "TORICREP_THREADS";
const CURVE_MINOR_SAMPLES: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "toricrep", version, about = "Representation matrices of rational surfaces over toric varieties")]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton polygon, embedding and degree bound of a job.
    Analyze(JobArgs),
    /// Build the representation matrix and write it as JSON.
    Matrix(JobArgs),
    /// Decide whether a point lies on the surface of a matrix file.
    Member {
        /// Matrix file written by `matrix` or `curve`.
        matrix: PathBuf,
        /// Projective coordinates, e.g. `1,0,0,0` or `2/3,1,0,5`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Implicit equation by interpolation.
    Implicit {
        #[command(flatten)]
        job: JobArgs,
        /// Largest degree tried; defaults to the normalized area of N(f).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Plane curve matrix and its determinant.
    Curve(CurveArgs),
    /// Run the invariant suite on a job.
    Verify(JobArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let n: usize = value.parse().with_context(|| format!("{THREADS_VAR}={value:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze(args) => analyze(&args),
        Command::Matrix(args) => matrix(&args),
        Command::Member { matrix, point, seed } => member(&matrix, &point, seed),
        Command::Implicit { job, max_degree } => implicit(&job, max_degree),
        Command::Curve(args) => curve(&args),
        Command::Verify(args) => verify(&args),
    }
}

fn analyze(args: &JobArgs) -> Result<ExitCode> {
    let job = args.load()?;
    let f = job.parametrization()?;
    let nd = newton_data(&f)?;
    let p = job.prepare()?;
    let q = p.map.embedding().polygon();
    let d = p.map.d();
    let nu0 = default_nu(&p.map);
    let size = |n: u32| p.map.embedding().graded_basis(n).len();
    let report = json!({
        "label": job.label,
        "newton_polygon": nd.newton.vertices(),
        "translation": nd.translation,
        "homothety_factor": nd.d,
        "nprime": nd.nprime.vertices(),
        "embedding": job.embedding.label(),
        "polytope": q.vertices(),
        "d": d,
        "alpha": q.alpha(),
        "nu0": nu0,
        "basis_sizes": { "nu0": size(nu0), "nu0_plus_d": size(nu0 + d) },
        "predicted_rows": size(nu0),
        "nu": p.nu,
        "rows_at_nu": size(p.nu),
    });
    emit(&json_line(&report), job.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn matrix(args: &JobArgs) -> Result<ExitCode> {
    let job = args.load()?;
    let p = job.prepare()?;
    let m = syzygy_matrix(&p.map, p.nu, job.field)?;
    let (rows, cols) = m.shape();
    let summary = json!({ "rows": rows, "cols": cols, "nu": p.nu, "nullspace_dimension": cols });
    emit(&serialize(&m), job.output.as_deref())?;
    if job.output.is_some() {
        emit(&json_line(&summary), None)?;
    } else {
        eprintln!("{rows}x{cols} matrix, nullspace dimension {cols}");
    }
    Ok(ExitCode::SUCCESS)
}

fn member(path: &std::path::Path, point: &str, seed: u64) -> Result<ExitCode> {
    let m = deserialize(&read(path)?).with_context(|| format!("reading {}", path.display()))?;
    let point = SurfacePoint::new(parse_point(point)?)?;
    let verdict = m.is_on_surface(&point, seed)?;
    emit(&json_line(&serde_json::to_value(verdict)?), None)?;
    Ok(if verdict.on_surface { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn implicit(args: &JobArgs, max_degree: Option<u32>) -> Result<ExitCode> {
    let job = args.load()?;
    let f = job.parametrization()?;
    let bound = expected_degree_product(&f);
    let max_degree = match max_degree {
        Some(k) => k,
        None => u32::try_from(bound).context("degree bound does not fit in 32 bits")?,
    };
    let forms = find_implicit(&f, max_degree, job.seed)?;
    if forms.is_empty() {
        log::warn!("no implicit equation of degree at most {max_degree}");
    }
    let report = json!({
        "label": job.label,
        "expected_degree_product": bound,
        "max_degree": max_degree,
        "forms": forms
            .iter()
            .map(|form| json!({ "degree": form.degree, "equation": form.poly.to_string() }))
            .collect::<Vec<_>>(),
    });
    emit(&json_line(&report), job.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn curve(args: &CurveArgs) -> Result<ExitCode> {
    let spec = args.load()?;
    let m = spec.matrix()?;
    let (rows, cols) = m.shape();
    let mut report = json!({ "label": spec.label, "rows": rows, "cols": cols, "nu": m.nu() });
    if rows == cols && !m.field().is_prime_field() {
        report["determinant"] = json!(m.determinant()?.normalized().to_string());
    } else if rows <= cols && rows <= MINOR_GCD_MAX_ROWS && !m.field().is_prime_field() {
        let g = m.minor_gcd(CURVE_MINOR_SAMPLES, args.seed)?;
        report["minor_gcd"] = json!(g.gcd.to_string());
        report["minors_used"] = json!(g.minors_used);
    }
    if let Some(out) = &args.out {
        emit(&serialize(&m), Some(out))?;
    }
    emit(&json_line(&report), None)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &JobArgs) -> Result<ExitCode> {
    let job = args.load()?;
    let p = job.prepare()?;
    let m = syzygy_matrix(&p.map, p.nu, job.field)?;
    let checks = verify::run(&p, &m, job.seed);
    let report = verify::report(&checks);
    let failed = report["failed"].as_u64().unwrap_or(0);
    emit(&json_line(&report), job.output.as_deref())?;
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

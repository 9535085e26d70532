use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use num_rational::BigRational;
use toric_syzygy::embed::EmbeddingChoice;
use toric_syzygy::job::{CurveSpec, JobSpec};
use toric_syzygy::lattice::{LatticePolygon, Point};
use toric_syzygy::linalg::{Field, DEFAULT_PRIME};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EmbeddingArg {
    Nprime,
    N,
    Rectangle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldArg {
    Rational,
    Prime,
}

/// Field selection shared by every command that builds a matrix.
#[derive(Args, Debug, Default)]
pub struct FieldArgs {
    /// Coefficient field.
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
    /// Prime modulus; implies `--field prime`.
    #[arg(long)]
    pub prime: Option<u64>,
}

impl FieldArgs {
    pub fn resolve(&self) -> Result<Option<Field>> {
        Ok(match (self.field, self.prime) {
            (Some(FieldArg::Rational), Some(_)) => bail!("--prime conflicts with --field rational"),
            (Some(FieldArg::Rational), None) => Some(Field::Rational),
            (_, Some(p)) => Some(Field::prime(p)?),
            (Some(FieldArg::Prime), None) => Some(Field::prime(DEFAULT_PRIME)?),
            (None, None) => None,
        })
    }
}

/// A surface job: a JSON file, inline polynomials, or a file with flags
/// overriding its fields.
#[derive(Args, Debug)]
pub struct JobArgs {
    /// Job file (JSON).
    pub job: Option<PathBuf>,
    /// One of the four polynomials; repeat four times instead of a job file.
    #[arg(long = "poly", value_name = "POLY")]
    pub polys: Vec<String>,
    #[arg(long, value_enum, conflicts_with = "polytope")]
    pub embedding: Option<EmbeddingArg>,
    /// Explicit polygon as `x,y;x,y;...`.
    #[arg(long)]
    pub polytope: Option<String>,
    /// Degree of the explicit polygon embedding.
    #[arg(long, requires = "polytope")]
    pub d: Option<u32>,
    #[arg(long)]
    pub nu: Option<u32>,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; defaults to the job's `output` field, then stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl JobArgs {
    pub fn load(&self) -> Result<JobSpec> {
        let mut job = match (&self.job, self.polys.len()) {
            (Some(path), 0) => JobSpec::from_json(&read(path)?).with_context(|| format!("reading {}", path.display()))?,
            (None, 4) => JobSpec::new(std::array::from_fn(|i| self.polys[i].clone())),
            (Some(_), _) => bail!("give either a job file or --poly, not both"),
            (None, n) => bail!("expected a job file or exactly four --poly values, got {n}"),
        };
        if let Some(e) = self.embedding {
            job.embedding = match e {
                EmbeddingArg::Nprime => EmbeddingChoice::Nprime,
                EmbeddingArg::N => EmbeddingChoice::N,
                EmbeddingArg::Rectangle => EmbeddingChoice::Rectangle,
            };
        }
        if let Some(text) = &self.polytope {
            let polygon = LatticePolygon::from_vertices(parse_vertices(text)?)?;
            job.embedding = EmbeddingChoice::Custom { polygon, d: self.d.unwrap_or(1) };
        }
        if self.nu.is_some() {
            job.nu = self.nu;
        }
        if let Some(field) = self.field.resolve()? {
            job.field = field;
        }
        if let Some(seed) = self.seed {
            job.seed = seed;
        }
        if self.out.is_some() {
            job.output = self.out.clone();
        }
        Ok(job)
    }
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Curve file (JSON).
    pub curve: Option<PathBuf>,
    /// One of the three polynomials in `s`; repeat three times.
    #[arg(long = "poly", value_name = "POLY")]
    pub polys: Vec<String>,
    /// Degree to homogenize to.
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub nu: Option<u32>,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the matrix.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl CurveArgs {
    pub fn load(&self) -> Result<CurveSpec> {
        let mut spec = match (&self.curve, self.polys.len()) {
            (Some(path), 0) => CurveSpec::from_json(&read(path)?).with_context(|| format!("reading {}", path.display()))?,
            (None, 3) => CurveSpec {
                label: None,
                polynomials: std::array::from_fn(|i| self.polys[i].clone()),
                degree: None,
                nu: None,
                field: Field::Rational,
            },
            (Some(_), _) => bail!("give either a curve file or --poly, not both"),
            (None, n) => bail!("expected a curve file or exactly three --poly values, got {n}"),
        };
        if self.degree.is_some() {
            spec.degree = self.degree;
        }
        if self.nu.is_some() {
            spec.nu = self.nu;
        }
        if let Some(field) = self.field.resolve()? {
            spec.field = field;
        }
        Ok(spec)
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_vertices(text: &str) -> Result<Vec<Point>> {
    text.split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| {
            let (x, y) = v.split_once(',').with_context(|| format!("vertex {v:?} is not `x,y`"))?;
            Ok((x.trim().parse()?, y.trim().parse()?))
        })
        .collect()
}

/// Coordinates separated by commas or whitespace; each an integer or `a/b`.
pub fn parse_point(text: &str) -> Result<Vec<BigRational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigRational>().with_context(|| format!("bad coordinate {t:?}")))
        .collect()
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when no path is given.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn json_line(value: &serde_json::Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("values serialize");
    bytes.push(b'\n');
    bytes
}

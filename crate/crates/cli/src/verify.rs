//! The invariant suite behind `toricrep verify`.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use toric_syzygy::embed::GradedMap;
use toric_syzygy::implicitize::sample_surface_points;
use toric_syzygy::job::Prepared;
use toric_syzygy::lattice::Point;
use toric_syzygy::linalg::{ExactMatrix, Field, Scalar, DEFAULT_PRIME};
use toric_syzygy::poly::BivariatePolynomial;
use toric_syzygy::repmat::{deserialize, serialize, RepresentationMatrix};
use toric_syzygy::sampling::{random_rational, rng};

const PARAMETER_POINTS: usize = 3;
const SURFACE_POINTS: usize = 3;

pub struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name, passed, detail: detail.into() }
    }

    fn from_result(name: &'static str, r: toric_syzygy::error::Result<Check>) -> Self {
        r.unwrap_or_else(|e| Check::new(name, false, e.to_string()))
    }
}

pub fn run(job: &Prepared, m: &RepresentationMatrix, seed: u64) -> Vec<Check> {
    let q = job.map.embedding().polygon();
    let (nu, d) = (job.nu, job.map.d());
    let basis = |n: u32| job.map.embedding().graded_basis(n);
    let mut checks = Vec::new();

    let (area, b) = (q.normalized_area() as i64, q.boundary_point_count() as i64);
    let interior = q.interior_lattice_points().len() as i64;
    checks.push(Check::new("pick", area == 2 * interior + b - 2, format!("2A = {area}, I = {interior}, B = {b}")));

    let ehrhart = [nu, nu + d].iter().all(|&n| {
        let n64 = n as i64;
        2 * basis(n).len() as i64 == area * n64 * n64 + b * n64 + 2
    });
    checks.push(Check::new(
        "ehrhart",
        ehrhart,
        format!("|basis({nu})| = {}, |basis({})| = {}", basis(nu).len(), nu + d, basis(nu + d).len()),
    ));

    let (low, step) = (basis(nu), basis(d));
    let sums: BTreeSet<Point> = low.iter().flat_map(|p| step.iter().map(move |q| (p.0 + q.0, p.1 + q.1))).collect();
    let target: BTreeSet<Point> = basis(nu + d).iter().copied().collect();
    checks.push(Check::new("normality", sums == target, format!("basis({nu}) + basis({d}) = basis({})", nu + d)));

    let (rows, cols) = m.shape();
    checks.push(Check::new("shape", rows == basis(nu).len(), format!("{rows}x{cols}")));

    checks.push(Check::from_result("syzygies", syzygies(&job.map, m, seed)));
    checks.push(Check::from_result("independence", independence(m)));

    let generic = m.generic_rank(seed);
    checks.push(Check::new(
        "generic rank",
        generic == rows.min(cols),
        format!("{generic} of {}", rows.min(cols)),
    ));
    checks.push(Check::from_result("rank drop", rank_drop(job, m, generic, seed)));

    let bytes = serialize(m);
    let round_trip = deserialize(&bytes).map(|back| back == *m && serialize(&back) == bytes);
    checks.push(Check::new("serialization", round_trip == Ok(true), format!("{} bytes", bytes.len())));
    checks
}

/// Every column satisfies `sum_i h_i g_i = 0`, tested at seeded parameters.
fn syzygies(g: &GradedMap, m: &RepresentationMatrix, seed: u64) -> toric_syzygy::error::Result<Check> {
    let field = m.field();
    let mut r = rng(seed);
    let cols = m.shape().1;
    let mut tested = 0;
    let mut attempts = 0;
    while tested < PARAMETER_POINTS && attempts < 10 * PARAMETER_POINTS {
        attempts += 1;
        let (s, t) = (random_rational(&mut r, 1000, 16), random_rational(&mut r, 1000, 16));
        let (Ok(s), Ok(t)) = (field.from_rational(&s), field.from_rational(&t)) else { continue };
        let values: Vec<Scalar> = (0..4).map(|i| g.expand(i).evaluate_scalar(&s, &t)).collect::<Result<_, _>>()?;
        let monomials: Vec<Scalar> = m.row_basis()
            .iter()
            .map(|&p| BivariatePolynomial::monomial(p, one()).evaluate_scalar(&s, &t))
            .collect::<Result<_, _>>()?;
        for c in 0..cols {
            let mut total = field.zero();
            for (i, gi) in values.iter().enumerate() {
                let mut h = field.zero();
                for (row, mono) in monomials.iter().enumerate() {
                    h = &h + &(&m.coefficient_matrices()[i].get(row, c) * mono);
                }
                total = &total + &(&h * gi);
            }
            if !total.is_zero() {
                return Ok(Check::new("syzygies", false, format!("column {c} fails at (s, t) = ({s}, {t})")));
            }
        }
        tested += 1;
    }
    Ok(Check::new("syzygies", tested == PARAMETER_POINTS, format!("{cols} columns at {tested} parameter points")))
}

/// The stacked coefficient matrices have full column rank, so the columns
/// are a basis of the syzygy module in this degree. Rank modulo a prime
/// never exceeds the rank over the rationals, so a full rank mod p settles it.
fn independence(m: &RepresentationMatrix) -> toric_syzygy::error::Result<Check> {
    let (rows, cols) = m.shape();
    let p = match m.field() {
        Field::Prime(p) => p,
        Field::Rational => DEFAULT_PRIME,
    };
    let mut values = Vec::with_capacity(4 * rows * cols);
    for block in m.coefficient_matrices() {
        let reduced = match block.field() {
            Field::Rational => block.reduce_mod(p)?,
            Field::Prime(_) => block.clone(),
        };
        for r in 0..rows {
            for c in 0..cols {
                match reduced.get(r, c) {
                    Scalar::Residue { value, .. } => values.push(value),
                    Scalar::Rational(_) => unreachable!("reduced above"),
                }
            }
        }
    }
    let stacked = ExactMatrix::from_residues(m.variables() * rows, cols, p, values)?;
    let rank = stacked.rank();
    Ok(Check::new("independence", rank == cols, format!("rank {rank} of {cols} mod {p}")))
}

fn rank_drop(job: &Prepared, m: &RepresentationMatrix, generic: usize, seed: u64) -> toric_syzygy::error::Result<Check> {
    let points = sample_surface_points(&job.parametrization, SURFACE_POINTS, seed)?;
    for p in &points {
        let verdict = m.membership_against(p, generic)?;
        if !verdict.on_surface {
            return Ok(Check::new("rank drop", false, format!("rank {} at a surface point", verdict.evaluated_rank)));
        }
    }
    Ok(Check::new("rank drop", true, format!("{} surface points", points.len())))
}

fn one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(1.into())
}

pub fn report(checks: &[Check]) -> Value {
    let passed = checks.iter().filter(|c| c.passed).count();
    json!({
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "passed": passed,
        "failed": checks.len() - passed,
    })
}

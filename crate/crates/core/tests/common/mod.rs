#![allow(dead_code)]

use std::path::PathBuf;

use num_rational::BigRational;
use toric_syzygy::forms::{parse_form, MultiPoly};
use toric_syzygy::job::{CurveSpec, JobSpec};
use toric_syzygy::linalg::Field;
use toric_syzygy::repmat::RepresentationMatrix;
use toric_syzygy::syzygy::syzygy_matrix;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn job(name: &str) -> JobSpec {
    let bytes = std::fs::read(fixture_path(name)).expect("fixture exists");
    JobSpec::from_json(&bytes).expect("fixture parses")
}

pub fn curve(name: &str) -> CurveSpec {
    let bytes = std::fs::read(fixture_path(name)).expect("fixture exists");
    CurveSpec::from_json(&bytes).expect("fixture parses")
}

pub fn matrix(name: &str, field: Field) -> RepresentationMatrix {
    let p = job(name).prepare().expect("fixture embeds");
    syzygy_matrix(&p.map, p.nu, field).expect("matrix builds")
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The printed quadric of the degree-16 example and its proper
/// reparametrization.
pub fn quadric() -> MultiPoly {
    parse_form(4, "2*T1*T2 - T2*T3 - 3*T1*T4 - 2*T2*T4 + 3*T4^2").unwrap()
}

/// The printed sextic of the sparse example, transcribed verbatim.
pub const PRINTED_SEXTIC: &str = "2809*T1^2*T2^4 + 124002*T2^6 - 5618*T1^3*T2^2*T3 + 66816*T1*T2^4*T3 \
    + 2809*T1^4*T3^2 - 50580*T1^2*T2^2*T3^2 + 86976*T2^4*T3^2 + 212*T1^3*T3^3 - 14210*T1*T2^2*T3^3 \
    + 3078*T1^2*T3^4 + 13632*T2^2*T3^4 + 116*T1*T3^5 + 841*T3^6 + 14045*T1^3*T2^2*T4 \
    - 169849*T1*T2^4*T4 - 14045*T1^4*T3*T4 + 261327*T1^2*T2^2*T3*T4 - 468288*T2^4*T3*T4 \
    - 7208*T1^3*T3^2*T4 + 157155*T1*T2^2*T3^3*T4 - 31098*T1^2*T3^3*T4 - 129215*T2^2*T3^3*T4 \
    - 4528*T1*T3^4*T4 - 12673*T3^5*T4 - 16695*T1^2*T2^2*T4^2 + 169600*T2^4*T4^2 \
    + 30740*T1^3*T3*T4^2 - 433384*T1*T2^2*T3*T4^2 + 82434*T1^2*T3^2*T4^2 + 269745*T2^2*T3^2*T4^2 \
    + 36696*T1*T3^3*T4^2 + 63946*T3^4*T4^2 + 2775*T1*T2^2*T4^3 - 19470*T1^2*T3*T4^4 \
    + 177675*T2^2*T3*T4^3 - 85360*T1*T3^2*T4^3 - 109490*T3^3*T4^3 - 125*T2^2*T4^4 \
    + 2900*T1*T3*T4^4 + 7325*T3^2*T4^4 - 125*T3*T4^5";

pub fn printed_sextic() -> MultiPoly {
    parse_form(4, PRINTED_SEXTIC).unwrap()
}

/// The printed sextic with its two degree-7 terms read as degree 6:
/// `T1^2*T3*T4^4` as `T1^2*T3*T4^3` and `T1*T2^2*T3^3*T4` as
/// `T1*T2^2*T3^2*T4`.
pub fn sextic() -> MultiPoly {
    let text = PRINTED_SEXTIC
        .replace("- 19470*T1^2*T3*T4^4", "- 19470*T1^2*T3*T4^3")
        .replace("+ 157155*T1*T2^2*T3^3*T4", "+ 157155*T1*T2^2*T3^2*T4");
    parse_form(4, &text).unwrap()
}

/// Parameters `(s, t) = (a/b, c/e)` on a small deterministic grid that
/// avoids zero denominators in Laurent parametrizations.
pub fn parameter_grid(count: usize) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    let mut k: i64 = 0;
    while out.len() < count {
        k += 1;
        let s = BigRational::new((k % 17 - 8).into(), (k % 5 + 1).into());
        let t = BigRational::new((k % 13 - 6).into(), (k % 7 + 2).into());
        out.push((s, t));
    }
    out
}

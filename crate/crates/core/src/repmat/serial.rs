//! Canonical JSON form of a [`RepresentationMatrix`].
//!
//! ```json
//! {"coeff_matrices":[[["1/1","0/1"],...],...],"d":1,"field":"rational",
//!  "nu":2,"polytope":[[0,0],...],"row_basis":[[0,0],...]}
//! ```
//!
//! Keys are sorted, there is no whitespace, rational entries are always
//! written `num/den` in lowest terms and residues as plain decimal strings.
//! A prime field is written `{"prime":p}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::RepresentationMatrix;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::linalg::{ExactMatrix, Field};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    coeff_matrices: Vec<Vec<Vec<String>>>,
    d: u32,
    field: WireField,
    nu: u32,
    polytope: Vec<Point>,
    row_basis: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireField {
    Named(String),
    Prime { prime: u64 },
}

pub fn serialize(m: &RepresentationMatrix) -> Vec<u8> {
    let field = match m.field() {
        Field::Rational => WireField::Named("rational".into()),
        Field::Prime(p) => WireField::Prime { prime: p },
    };
    let (nr, nc) = m.shape();
    let coeff_matrices = m
        .coefficient_matrices()
        .iter()
        .map(|a| (0..nr).map(|r| (0..nc).map(|c| entry_string(a, r, c)).collect()).collect())
        .collect();
    let wire = Wire {
        coeff_matrices,
        d: m.d(),
        field,
        nu: m.nu(),
        polytope: m.polytope().to_vec(),
        row_basis: m.row_basis().to_vec(),
    };
    let mut out = serde_json::to_vec(&wire).expect("serializing plain data");
    out.push(b'\n');
    out
}

fn entry_string(a: &ExactMatrix, r: usize, c: usize) -> String {
    match a.rational(r, c) {
        Some(q) => format!("{}/{}", q.numer(), q.denom()),
        None => a.get(r, c).to_string(),
    }
}

pub fn deserialize(bytes: &[u8]) -> Result<RepresentationMatrix> {
    let wire: Wire = serde_json::from_slice(bytes).map_err(|e| json_error(bytes, &e))?;
    let field = match &wire.field {
        WireField::Named(s) if s == "rational" => Field::Rational,
        WireField::Named(s) => return Err(format_error(bytes, s, format!("unknown field {s:?}"))),
        WireField::Prime { prime } => Field::prime(*prime).map_err(|e| Error::Format {
            offset: find_token(bytes, &prime.to_string()),
            message: e.to_string(),
        })?,
    };
    let mut coeffs = Vec::with_capacity(wire.coeff_matrices.len());
    for rows in &wire.coeff_matrices {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Format { offset: 0, message: "ragged coefficient matrix".into() });
        }
        let m = match field {
            Field::Rational => {
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_rational(s).ok_or_else(|| bad_entry(bytes, s))).collect())
                    .collect::<Result<Vec<Vec<BigRational>>>>()?;
                ExactMatrix::from_rational_rows(parsed)?
            }
            Field::Prime(p) => {
                let values = rows
                    .iter()
                    .flatten()
                    .map(|s| s.parse::<u64>().ok().filter(|&v| v < p).ok_or_else(|| bad_entry(bytes, s)))
                    .collect::<Result<Vec<u64>>>()?;
                ExactMatrix::from_residues(rows.len(), ncols, p, values)?
            }
        };
        coeffs.push(m);
    }
    RepresentationMatrix::new(wire.nu, wire.d, wire.polytope, wire.row_basis, coeffs)
        .map_err(|e| Error::Format { offset: 0, message: e.to_string() })
}

/// Accepts `n` or `n/d` with `d > 0`.
fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d <= BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn bad_entry(bytes: &[u8], s: &str) -> Error {
    format_error(bytes, s, format!("invalid matrix entry {s:?}"))
}

fn format_error(bytes: &[u8], token: &str, message: String) -> Error {
    Error::Format { offset: find_token(bytes, &format!("\"{token}\"")), message }
}

fn find_token(bytes: &[u8], token: &str) -> usize {
    let t = token.as_bytes();
    bytes.windows(t.len().max(1)).position(|w| w == t).unwrap_or(0)
}

/// Maps a serde_json error to a byte offset; serde_json reports the
/// 1-based line and column of the last byte it read.
pub(crate) fn json_error(bytes: &[u8], e: &serde_json::Error) -> Error {
    let offset = if e.is_eof() {
        bytes.len()
    } else {
        let start: usize = bytes.split(|&b| b == b'\n').take(e.line().saturating_sub(1)).map(|l| l.len() + 1).sum();
        (start + e.column().saturating_sub(1)).min(bytes.len())
    };
    Error::Format { offset, message: e.to_string() }
}

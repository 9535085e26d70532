//! Job files: a parametrization plus the choices needed to build its
//! representation matrix.
//!
//! ```json
//! {
//!   "label": "sparse sextic",
//!   "polynomials": ["s*t^6 + 2", "s*t^5 - 3*s*t^3", "s*t^4 + 5*s^2*t^6", "2 + s^2*t^6"],
//!   "embedding": "nprime",
//!   "nu": 2,
//!   "field": "rational",
//!   "seed": 0
//! }
//! ```
//!
//! `embedding` is `"nprime"`, `"n"`, `"rectangle"` or
//! `{"custom": {"polygon": [[0,0],[0,3],[1,3]], "d": 2}}`; `field` is
//! `"rational"` or `{"prime": p}`. Everything except `polynomials` is
//! optional.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::embed::{embed, EmbeddingChoice, GradedMap, NewtonData};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::poly::{parse_polynomial, Parametrization};
use crate::repmat::{json_error, RepresentationMatrix};
use crate::syzygy::{curve_matrix, default_nu};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub polynomials: [String; 4],
    #[serde(default = "default_embedding")]
    pub embedding: EmbeddingChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_embedding() -> EmbeddingChoice {
    EmbeddingChoice::Nprime
}

fn default_field() -> Field {
    Field::Rational
}

impl JobSpec {
    pub fn new(polynomials: [String; 4]) -> Self {
        Self {
            label: None,
            polynomials,
            embedding: default_embedding(),
            nu: None,
            field: default_field(),
            seed: 0,
            output: None,
        }
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let job: JobSpec = serde_json::from_slice(bytes).map_err(|e| json_error(bytes, &e))?;
        if let Field::Prime(p) = job.field {
            Field::prime(p)?;
        }
        Ok(job)
    }

    pub fn parametrization(&self) -> Result<Parametrization> {
        let [a, b, c, d] = &self.polynomials;
        Parametrization::parse([a, b, c, d])
    }

    /// Parses, embeds and settles the degree: the override if given,
    /// otherwise `2d - alpha`.
    pub fn prepare(&self) -> Result<Prepared> {
        let f = self.parametrization()?;
        let (newton, map) = embed(&f, &self.embedding)?;
        let nu = self.nu.unwrap_or_else(|| default_nu(&map));
        Ok(Prepared { parametrization: f, newton, map, nu })
    }
}

/// A plane curve job: three polynomials in `s` alone, homogenized to
/// `degree`. The degree defaults to the largest exponent and `nu` to
/// `degree - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub polynomials: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
    #[serde(default = "default_field")]
    pub field: Field,
}

impl CurveSpec {
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| json_error(bytes, &e))
    }

    pub fn matrix(&self) -> Result<RepresentationMatrix> {
        let polys = [
            parse_polynomial(&self.polynomials[0])?,
            parse_polynomial(&self.polynomials[1])?,
            parse_polynomial(&self.polynomials[2])?,
        ];
        let degree = match self.degree {
            Some(d) => d,
            None => polys.iter().filter_map(|p| p.max_degree_in_s()).max().unwrap_or(0).max(0) as u32,
        };
        if degree == 0 {
            return Err(Error::InvalidArgument("curve degree must be positive".into()));
        }
        curve_matrix(&polys, degree, self.nu.unwrap_or(degree - 1), self.field)
    }
}

#[derive(Clone, Debug)]
pub struct Prepared {
    pub parametrization: Parametrization,
    pub newton: NewtonData,
    pub map: GradedMap,
    pub nu: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;

    #[test]
    fn defaults() {
        let job = JobSpec::from_json(br#"{"polynomials": ["1", "s", "t", "s*t"]}"#).unwrap();
        assert_eq!(job.embedding, EmbeddingChoice::Nprime);
        assert_eq!(job.field, Field::Rational);
        assert_eq!(job.seed, 0);
        let p = job.prepare().unwrap();
        assert_eq!(p.nu, 1);
    }

    #[test]
    fn custom_embedding_and_prime() {
        let text = br#"{
            "polynomials": ["s*t^6+2", "s*t^5-3*s*t^3", "s*t^4+5*s^2*t^6", "2+s^2*t^6"],
            "embedding": {"custom": {"polygon": [[0,0],[0,3],[1,3]], "d": 2}},
            "nu": 2,
            "field": {"prime": 101}
        }"#;
        let job = JobSpec::from_json(text).unwrap();
        let q = LatticePolygon::from_vertices(vec![(0, 0), (0, 3), (1, 3)]).unwrap();
        assert_eq!(job.embedding, EmbeddingChoice::Custom { polygon: q, d: 2 });
        assert_eq!(job.field, Field::Prime(101));
        let back = JobSpec::from_json(serde_json::to_string(&job).unwrap().as_bytes()).unwrap();
        assert_eq!(back, job);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(JobSpec::from_json(b"{\"polynomials\": [\"1\"]}"), Err(Error::Format { .. })));
        assert!(matches!(
            JobSpec::from_json(br#"{"polynomials": ["1","s","t","s*t"], "field": {"prime": 100}}"#),
            Err(Error::InvalidPrime(100))
        ));
        let collinear = JobSpec::new(["1".into(), "s".into(), "s^2".into(), "s^3".into()]);
        assert!(matches!(collinear.prepare(), Err(Error::DegenerateSupport(_))));
    }

    #[test]
    fn curve_defaults() {
        let c = CurveSpec::from_json(br#"{"polynomials": ["1-s^2", "2*s", "1+s^2"]}"#).unwrap();
        assert_eq!(c.matrix().unwrap().shape(), (2, 2));
        let line = CurveSpec::from_json(br#"{"polynomials": ["s", "1", "s+1"]}"#).unwrap();
        assert_eq!(line.matrix().unwrap().shape(), (1, 1));
    }
}

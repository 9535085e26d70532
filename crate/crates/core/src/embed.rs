//! Newton polygon, homothety factor, and toric embeddings.
//!
//! A graded piece of the semigroup ring in degree `n` has the lattice points
//! of `n * Q` as a basis, and multiplication is addition of points. The map
//! `g` is therefore just each `f_i` re-indexed over the points of `d * Q`; no
//! presentation of the toric ideal is needed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{convex_hull, LatticePolygon, Point};
use crate::poly::{BivariatePolynomial, Parametrization};

/// `N(f)`, its translation to the origin, the factor `d` and `N'(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    /// Translated so that its componentwise minimum is `(0, 0)`.
    pub newton: LatticePolygon,
    /// The shift subtracted from every exponent.
    pub translation: Point,
    pub d: u32,
    pub nprime: LatticePolygon,
}

pub fn newton_data(f: &Parametrization) -> Result<NewtonData> {
    let support: Vec<Point> = f.joint_support().into_iter().collect();
    let hull = convex_hull(&support)?;
    let translation = hull.min_corner();
    let newton = hull.translate((-translation.0, -translation.1));
    let anchor = newton.vertices()[0];
    let d = newton
        .vertices()
        .iter()
        .fold(0i64, |g, &(x, y)| g.gcd(&(x - anchor.0)).gcd(&(y - anchor.1)));
    let nprime = newton_quotient(&newton, d);
    Ok(NewtonData { newton, translation, d: d as u32, nprime })
}

fn newton_quotient(newton: &LatticePolygon, d: i64) -> LatticePolygon {
    let anchor = newton.vertices()[0];
    let shrunk: Vec<Point> = newton
        .vertices()
        .iter()
        .map(|&(x, y)| ((x - anchor.0) / d, (y - anchor.1) / d))
        .collect();
    let p = LatticePolygon::from_vertices(shrunk).expect("a scaled polygon stays two-dimensional");
    let (mx, my) = p.min_corner();
    p.translate((-mx, -my))
}

/// A polygon `Q` with the degree `d` of the induced map, and a cache of the
/// graded bases `n * Q`.
#[derive(Debug)]
pub struct ToricEmbedding {
    polygon: LatticePolygon,
    d: u32,
    cache: RwLock<HashMap<u32, Arc<Vec<Point>>>>,
}

impl Clone for ToricEmbedding {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("basis cache poisoned").clone();
        Self { polygon: self.polygon.clone(), d: self.d, cache: RwLock::new(cache) }
    }
}

impl PartialEq for ToricEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.polygon == other.polygon && self.d == other.d
    }
}

impl Eq for ToricEmbedding {}

impl ToricEmbedding {
    pub fn new(polygon: LatticePolygon, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("the degree d must be positive".into()));
        }
        Ok(Self { polygon, d, cache: RwLock::new(HashMap::new()) })
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Lexicographically sorted lattice points of `n * Q`.
    pub fn graded_basis(&self, n: u32) -> Arc<Vec<Point>> {
        if let Some(b) = self.cache.read().expect("basis cache poisoned").get(&n) {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.polygon.dilated_lattice_points(n));
        let mut cache = self.cache.write().expect("basis cache poisoned");
        Arc::clone(cache.entry(n).or_insert(basis))
    }

    /// Ambient dimension plus one: the number of points of `Q`.
    pub fn ambient_size(&self) -> usize {
        self.graded_basis(1).len()
    }
}

/// The map `g = (g_1, ..., g_4)` as coefficient vectors over `basis(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    embedding: ToricEmbedding,
    translation: Point,
    coefficients: [Vec<BigRational>; 4],
}

impl GradedMap {
    pub fn embedding(&self) -> &ToricEmbedding {
        &self.embedding
    }

    pub fn d(&self) -> u32 {
        self.embedding.d
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    /// Coefficients of `g_i` (0-based `i`), indexed like `basis(d)`.
    pub fn coefficients(&self, i: usize) -> &[BigRational] {
        &self.coefficients[i]
    }

    /// `g_i` as a polynomial in the translated coordinates.
    pub fn expand(&self, i: usize) -> BivariatePolynomial {
        let basis = self.embedding.graded_basis(self.d());
        BivariatePolynomial::from_terms(
            basis.iter().zip(&self.coefficients[i]).map(|(&e, c)| (e, c.clone())),
        )
    }

    /// Undoes the translation, recovering the original `f`.
    pub fn to_parametrization(&self) -> Result<Parametrization> {
        let polys = std::array::from_fn(|i| self.expand(i).shift(self.translation));
        Parametrization::new(polys)
    }
}

/// Re-indexes each `f_i` over the lattice points of `d * Q`.
pub fn build_embedding(f: &Parametrization, q: LatticePolygon, d: u32) -> Result<GradedMap> {
    let embedding = ToricEmbedding::new(q, d)?;
    let translation = {
        let s = f.joint_support();
        let mx = s.iter().map(|e| e.0).min().expect("nonempty support");
        let my = s.iter().map(|e| e.1).min().expect("nonempty support");
        (mx, my)
    };
    let basis = embedding.graded_basis(d);
    let index: HashMap<Point, usize> = basis.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut coefficients: [Vec<BigRational>; 4] = Default::default();
    for (i, (poly, slot)) in f.polys().iter().zip(coefficients.iter_mut()).enumerate() {
        *slot = vec![BigRational::zero(); basis.len()];
        for (&(a, b), c) in poly.terms() {
            let p = (a - translation.0, b - translation.1);
            let Some(&k) = index.get(&p) else {
                return Err(Error::Containment { poly: i + 1, point: p });
            };
            slot[k] = c.clone();
        }
    }
    Ok(GradedMap { embedding, translation, coefficients })
}

/// How to choose the polygon `Q` and degree `d` of the embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingChoice {
    /// `N'(f)` with its homothety factor.
    Nprime,
    /// `N(f)` itself with `d = 1`.
    N,
    /// The bidegree rectangle: for `N(f)` inside `[0, e1] x [0, e2]`,
    /// `Q = [0, e1/g] x [0, e2/g]` and `d = g = gcd(e1, e2)`.
    Rectangle,
    /// A caller-supplied polygon and degree.
    Custom { polygon: LatticePolygon, d: u32 },
}

impl EmbeddingChoice {
    pub fn label(&self) -> &'static str {
        match self {
            EmbeddingChoice::Nprime => "Nprime",
            EmbeddingChoice::N => "N",
            EmbeddingChoice::Rectangle => "bidegree-rectangle",
            EmbeddingChoice::Custom { .. } => "custom",
        }
    }

    pub fn resolve(&self, nd: &NewtonData) -> Result<(LatticePolygon, u32)> {
        Ok(match self {
            EmbeddingChoice::Nprime => (nd.nprime.clone(), nd.d),
            EmbeddingChoice::N => (nd.newton.clone(), 1),
            EmbeddingChoice::Rectangle => bidegree_rectangle(&nd.newton),
            EmbeddingChoice::Custom { polygon, d } => {
                if *d == 0 {
                    return Err(Error::InvalidArgument("the degree d must be positive".into()));
                }
                (polygon.clone(), *d)
            }
        })
    }
}

fn bidegree_rectangle(newton: &LatticePolygon) -> (LatticePolygon, u32) {
    let (e1, e2) = newton.max_corner();
    let g = e1.gcd(&e2);
    let q = LatticePolygon::rectangle(e1 / g, e2 / g).expect("N(f) is two-dimensional");
    (q, g as u32)
}

/// The standard candidate embeddings, each containing `N(f)`.
pub fn default_polytope_choices(nd: &NewtonData) -> Vec<(&'static str, LatticePolygon, u32)> {
    [EmbeddingChoice::Nprime, EmbeddingChoice::N, EmbeddingChoice::Rectangle]
        .iter()
        .map(|c| {
            let (q, d) = c.resolve(nd).expect("standard choices always resolve");
            (c.label(), q, d)
        })
        .collect()
}

/// Convenience: Newton data, the chosen `(Q, d)`, and the graded map.
pub fn embed(f: &Parametrization, choice: &EmbeddingChoice) -> Result<(NewtonData, GradedMap)> {
    let nd = newton_data(f)?;
    let (q, d) = choice.resolve(&nd)?;
    let g = build_embedding(f, q, d)?;
    Ok((nd, g))
}

/// Summary of basis sizes, handy for reports.
pub fn basis_sizes(e: &ToricEmbedding, degrees: &[u32]) -> BTreeMap<u32, usize> {
    degrees.iter().map(|&n| (n, e.graded_basis(n).len())).collect()
}

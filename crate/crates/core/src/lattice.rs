//! Convex lattice polygons in Z^2.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer point `(x, y)`; also used for the exponent `s^x t^y`.
pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// A two-dimensional convex lattice polygon.
///
/// Vertices are stored counter-clockwise, strictly convex, starting at the
/// lexicographically smallest vertex, so structural equality is geometric
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for LatticePolygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        Self::from_vertices(v)
    }
}

impl From<LatticePolygon> for Vec<Point> {
    fn from(p: LatticePolygon) -> Self {
        p.vertices
    }
}

impl LatticePolygon {
    /// The convex hull of the given vertices (any order or redundancy).
    pub fn from_vertices(points: Vec<Point>) -> Result<Self> {
        convex_hull(&points)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// `[0, w] x [0, h]`.
    pub fn rectangle(w: i64, h: i64) -> Result<Self> {
        Self::from_vertices(vec![(0, 0), (w, 0), (w, h), (0, h)])
    }

    /// Scales every vertex by `n`. Panics on `n == 0`.
    pub fn dilate(&self, n: u32) -> Self {
        assert!(n >= 1, "dilation factor must be positive");
        let n = n as i64;
        Self { vertices: self.vertices.iter().map(|&(x, y)| (n * x, n * y)).collect() }
    }

    pub fn translate(&self, (dx, dy): Point) -> Self {
        Self { vertices: self.vertices.iter().map(|&(x, y)| (x + dx, y + dy)).collect() }
    }

    pub fn min_corner(&self) -> Point {
        let x = self.vertices.iter().map(|v| v.0).min().expect("nonempty");
        let y = self.vertices.iter().map(|v| v.1).min().expect("nonempty");
        (x, y)
    }

    pub fn max_corner(&self) -> Point {
        let x = self.vertices.iter().map(|v| v.0).max().expect("nonempty");
        let y = self.vertices.iter().map(|v| v.1).max().expect("nonempty");
        (x, y)
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point) -> bool {
        self.edges().all(|(a, b)| cross(a, b, p) >= 0)
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        self.edges().all(|(a, b)| cross(a, b, p) > 0)
    }

    /// Range of `y` over the polygon's vertical slice at `x`, as exact
    /// integer bounds `(ceil(lo), floor(hi))` (possibly empty) together with
    /// whether each bound is attained exactly.
    fn slice(&self, x: i64) -> Option<(Bound, Bound)> {
        let mut lo: Option<(i128, i128)> = None;
        let mut hi: Option<(i128, i128)> = None;
        let mut update = |num: i128, den: i128| {
            // num/den with den > 0
            if lo.is_none_or(|(n, d)| num * d < n * den) {
                lo = Some((num, den));
            }
            if hi.is_none_or(|(n, d)| num * d > n * den) {
                hi = Some((num, den));
            }
        };
        for (a, b) in self.edges() {
            let (x1, x2) = (a.0 as i128, b.0 as i128);
            let (y1, y2) = (a.1 as i128, b.1 as i128);
            let xi = x as i128;
            if x1 == x2 {
                if x1 == xi {
                    update(y1, 1);
                    update(y2, 1);
                }
                continue;
            }
            if (xi - x1) * (xi - x2) > 0 {
                continue;
            }
            let (num, den) = (y1 * (x2 - x1) + (xi - x1) * (y2 - y1), x2 - x1);
            let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
            update(num, den);
        }
        let (ln, ld) = lo?;
        let (hn, hd) = hi?;
        Some((
            Bound { value: Integer::div_ceil(&ln, &ld) as i64, exact: ln % ld == 0 },
            Bound { value: Integer::div_floor(&hn, &hd) as i64, exact: hn % hd == 0 },
        ))
    }

    /// All lattice points, boundary included, in lexicographic `(x, y)` order.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (x0, _) = self.min_corner();
        let (x1, _) = self.max_corner();
        let mut out = Vec::new();
        for x in x0..=x1 {
            if let Some((lo, hi)) = self.slice(x) {
                out.extend((lo.value..=hi.value).map(|y| (x, y)));
            }
        }
        out
    }

    /// Lattice points strictly inside, in lexicographic order.
    pub fn interior_lattice_points(&self) -> Vec<Point> {
        let (x0, _) = self.min_corner();
        let (x1, _) = self.max_corner();
        let mut out = Vec::new();
        for x in x0 + 1..x1 {
            if let Some((lo, hi)) = self.slice(x) {
                let a = if lo.exact { lo.value + 1 } else { lo.value };
                let b = if hi.exact { hi.value - 1 } else { hi.value };
                out.extend((a..=b).map(|y| (x, y)));
            }
        }
        out
    }

    /// Twice the Euclidean area (shoelace).
    pub fn normalized_area(&self) -> u64 {
        let s: i128 = self
            .edges()
            .map(|(a, b)| a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128)
            .sum();
        s.unsigned_abs() as u64
    }

    pub fn boundary_point_count(&self) -> u64 {
        self.edges().map(|(a, b)| (b.0 - a.0).unsigned_abs().gcd(&(b.1 - a.1).unsigned_abs())).sum()
    }

    /// Largest `i <= 2` such that `i * self` has no interior lattice point
    /// (`i = 0` always qualifies). Every lattice polygon dilated by 3 has an
    /// interior point, so checking `i = 1, 2` suffices.
    pub fn alpha(&self) -> u32 {
        if !self.interior_lattice_points().is_empty() {
            0
        } else if !self.dilate(2).interior_lattice_points().is_empty() {
            1
        } else {
            2
        }
    }

    /// Lattice points of `n * self`, with `n = 0` giving the origin alone.
    pub fn dilated_lattice_points(&self, n: u32) -> Vec<Point> {
        if n == 0 {
            vec![(0, 0)]
        } else {
            self.dilate(n).lattice_points()
        }
    }

    /// Smallest axis-parallel rectangle containing the polygon.
    pub fn bounding_box(&self) -> (Point, Point) {
        (self.min_corner(), self.max_corner())
    }
}

#[derive(Clone, Copy, Debug)]
struct Bound {
    value: i64,
    exact: bool,
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Counter-clockwise, strictly convex hull (Andrew's monotone chain).
pub fn convex_hull(points: &[Point]) -> Result<LatticePolygon> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateSupport(format!("{} distinct point(s)", pts.len())));
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateSupport("points are collinear".into()));
    }
    // The chain starts at the lexicographic minimum.
    Ok(LatticePolygon { vertices: lower })
}

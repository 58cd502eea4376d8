//! Exact integer geometry of lattice figures.
//!
//! Everything here works on `i64` coordinates with `i128` intermediates for
//! orientation tests; there is no floating point in this module.

mod basis;
mod convex;
mod io;
mod lines;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use basis::{complete_basis, uv_representation, BasisCompletion, UvRepresentation};
pub use convex::{check_convex, convex_closure, convex_hull};
pub use io::{format_figure, parse_figure};
pub use lines::{direction_gcd, line_partition, primitive_directions, LinePartition, LineRun};

/// A lattice point or integer vector. One-dimensional points keep `y = 0`.
/// Serializes as `[x, y]`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `self.x * other.y - self.y * other.x`, i.e. det[self | other].
    pub fn cross(self, other: Point) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn dot(self, other: Point) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    pub fn max_norm(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn l1_norm(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    /// Flip the sign so that the first nonzero component is positive.
    pub fn sign_canonical(self) -> Point {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            -self
        } else {
            self
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for i64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for (i64, i64) {
    fn from(p: Point) -> Self {
        (p.x, p.y)
    }
}

/// A primitive integer direction with canonical sign (first nonzero
/// component positive).
///
/// Directions are ordered by the angle of the undirected line, counter-
/// clockwise from the x-axis: `(1,0) < (2,1) < (1,1) < (0,1) < (1,-1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Point", into = "Point")]
pub struct Direction(Point);

impl Direction {
    /// Representative with angle in `[0, pi)`.
    fn upper(self) -> Point {
        if self.0.y < 0 {
            -self.0
        } else {
            self.0
        }
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Both representatives lie in the upper half plane, where the cross
        // product orders them by angle.
        0.cmp(&self.upper().cross(other.upper()))
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Direction {
    /// Accepts only vectors that are already primitive and sign-canonical.
    pub fn new(x: i64, y: i64) -> Result<Self> {
        let p = Point::new(x, y);
        match Direction::from_vector(p) {
            Some((d, 1)) if d.0 == p => Ok(d),
            Some(_) => Err(Error::InvalidArgument(format!(
                "{p} is not a primitive sign-canonical direction"
            ))),
            None => Err(Error::ZeroVector),
        }
    }

    /// Splits a nonzero vector into its canonical direction and multiplicity:
    /// `v = ±k·d`. Returns `None` for the zero vector.
    pub fn from_vector(v: Point) -> Option<(Direction, i64)> {
        if v.is_zero() {
            return None;
        }
        let k = v.x.abs().gcd(&v.y.abs());
        let d = Point::new(v.x / k, v.y / k).sign_canonical();
        Some((Direction(d), k))
    }

    pub fn vector(self) -> Point {
        self.0
    }

    pub fn x(self) -> i64 {
        self.0.x
    }

    pub fn y(self) -> i64 {
        self.0.y
    }
}

impl From<Direction> for Point {
    fn from(d: Direction) -> Point {
        d.0
    }
}

impl TryFrom<Point> for Direction {
    type Error = Error;
    fn try_from(p: Point) -> Result<Self> {
        Direction::new(p.x, p.y)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn get(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

/// A finite lattice figure whose points carry nonzero integer weights.
///
/// An unweighted figure is one where every weight is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedFigure {
    dim: Dim,
    points: BTreeMap<Point, i64>,
}

impl WeightedFigure {
    pub fn new(dim: Dim, points: impl IntoIterator<Item = (Point, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, w) in points {
            if dim == Dim::One && p.y != 0 {
                return Err(Error::DimensionMismatch { expected: 1, found: 2 });
            }
            if w == 0 {
                return Err(Error::ZeroWeight(p.to_string()));
            }
            if map.insert(p, w).is_some() {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyFigure);
        }
        Ok(WeightedFigure { dim, points: map })
    }

    pub fn unweighted(dim: Dim, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        Self::new(dim, points.into_iter().map(|p| (p, 1)))
    }

    /// Unweighted 2D figure from coordinate pairs.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::unweighted(Dim::Two, coords.iter().map(|&c| Point::from(c)))
    }

    /// 1D figure with the given weights at positions `0, 1, 2, ...`.
    pub fn from_weights_1d(weights: &[i64]) -> Result<Self> {
        Self::new(
            Dim::One,
            weights.iter().enumerate().map(|(i, &w)| (Point::new(i as i64, 0), w)),
        )
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.points.iter().map(|(&p, &w)| (p, w))
    }

    pub fn weight(&self, p: Point) -> Option<i64> {
        self.points.get(&p).copied()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains_key(&p)
    }

    pub fn is_unweighted(&self) -> bool {
        self.points.values().all(|&w| w == 1)
    }

    /// Componentwise minimum and maximum corners.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(i64::MAX, i64::MAX);
        let mut hi = Point::new(i64::MIN, i64::MIN);
        for p in self.points.keys() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn translate(&self, by: Point) -> WeightedFigure {
        let by = match self.dim {
            Dim::One => Point::new(by.x, 0),
            Dim::Two => by,
        };
        WeightedFigure {
            dim: self.dim,
            points: self.points.iter().map(|(&p, &w)| (p + by, w)).collect(),
        }
    }

    pub fn require_dim(&self, dim: Dim) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim.get(), found: self.dim.get() })
        }
    }
}

/// Translates the figure so that every axis has minimum coordinate 0.
pub fn canonicalize(fig: &WeightedFigure) -> WeightedFigure {
    let (lo, _) = fig.bounding_box();
    fig.translate(-lo)
}

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_convex, Dim, Direction, Point, WeightedFigure};
use crate::error::{Error, Result};

/// A convex figure written column by column in a unimodular basis `(u, v)`:
/// the points `i·u + j·v` with `0 <= i <= n` and `lows[i] <= j < highs[i]`.
/// The end columns are nonempty; middle columns may be empty when `v` is long
/// relative to the figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UvRepresentation {
    pub u: Point,
    pub v: Point,
    pub n: usize,
    pub lows: Vec<i64>,
    pub highs: Vec<i64>,
}

impl UvRepresentation {
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for (i, (&lo, &hi)) in self.lows.iter().zip(&self.highs).enumerate() {
            for j in lo..hi {
                out.push(i as i64 * self.u + j * self.v);
            }
        }
        out.sort();
        out
    }

    pub fn column_lengths(&self) -> Vec<i64> {
        self.lows.iter().zip(&self.highs).map(|(l, r)| r - l).collect()
    }
}

/// Coordinates `(a, b)` of `z = a·u + b·v` for a unimodular basis.
pub(crate) fn basis_coords(u: Point, v: Point, z: Point) -> (i64, i64) {
    let det = u.cross(v);
    debug_assert!(det.abs() == 1);
    let a = z.cross(v) / det;
    let b = u.cross(z) / det;
    (a as i64, b as i64)
}

pub fn uv_representation(fig: &WeightedFigure, u: Point, v: Point) -> Result<UvRepresentation> {
    fig.require_dim(Dim::Two)?;
    if u.cross(v).abs() != 1 {
        return Err(Error::NotUnimodular { u0: u.x, u1: u.y, v0: v.x, v1: v.y });
    }
    let mut columns: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for p in fig.points() {
        let (a, b) = basis_coords(u, v, p);
        columns.entry(a).or_default().push(b);
    }
    let first = *columns.keys().next().expect("figure is nonempty");
    let last = *columns.keys().next_back().expect("figure is nonempty");
    let mut lows = Vec::new();
    let mut highs = Vec::new();
    let mut first_gap = None;
    for a in first..=last {
        let Some(col) = columns.get_mut(&a) else {
            // A convex figure may skip lattice lines parallel to `v` when `v`
            // is long; the column is then the empty interval [r, r).
            first_gap.get_or_insert(a - first);
            let r = highs.last().copied().unwrap_or(0);
            lows.push(r);
            highs.push(r);
            continue;
        };
        col.sort_unstable();
        let (lo, hi) = (col[0], col[col.len() - 1]);
        if (hi - lo + 1) as usize != col.len() {
            return Err(Error::Representation { column: a - first, problem: "not a contiguous interval" });
        }
        lows.push(lo);
        highs.push(hi + 1);
    }
    if !check_convex(fig)? {
        return Err(match first_gap {
            Some(column) => Error::Representation { column, problem: "empty inside a non-convex figure" },
            None => Error::NotConvex,
        });
    }
    Ok(UvRepresentation { u, v, n: (last - first) as usize, lows, highs })
}

/// Result of [`complete_basis`]: `v = ±k·u` and `det(u, u_prime) = 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCompletion {
    pub u: Direction,
    pub k: i64,
    pub u_prime: Point,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Splits `v` into its canonical primitive direction `u` and multiplicity `k`,
/// and completes `u` to a basis with `det(u, u') = 1`. Among all such `u'`
/// the one with smallest max-norm is chosen, then smallest L1 norm, then the
/// lexicographically smallest.
pub fn complete_basis(v: Point) -> Result<BasisCompletion> {
    let (u, k) = Direction::from_vector(v).ok_or(Error::ZeroVector)?;
    let uv = u.vector();
    // det(u, w) = u.x*w.y - u.y*w.x = 1  <=>  u.x*w.y + u.y*(-w.x) = 1.
    let (g, s, t) = ext_gcd(uv.x, uv.y);
    debug_assert_eq!(g, 1);
    let base = Point::new(-t, s);
    debug_assert_eq!(uv.cross(base), 1);

    // All solutions are base + m·u; max-norm is convex in m.
    let at = |m: i64| base + m * uv;
    let norm = |m: i64| at(m).max_norm();
    let mut m = 0i64;
    while norm(m - 1) < norm(m) {
        m -= 1;
    }
    while norm(m + 1) < norm(m) {
        m += 1;
    }
    let best = norm(m);
    let (mut lo, mut hi) = (m, m);
    while norm(lo - 1) == best {
        lo -= 1;
    }
    while norm(hi + 1) == best {
        hi += 1;
    }
    let u_prime = (lo..=hi)
        .map(at)
        .min_by_key(|w| (w.l1_norm(), *w))
        .expect("nonempty range");
    Ok(BasisCompletion { u, k, u_prime })
}

use num_integer::Integer;

use super::{Dim, Point, WeightedFigure};
use crate::error::Result;

/// Vertices of the convex hull in counter-clockwise order, without collinear
/// points. A collinear input yields its two endpoints; a singleton yields one.
pub fn convex_hull(points: impl IntoIterator<Item = Point>) -> Vec<Point> {
    let mut pts: Vec<Point> = points.into_iter().collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);

    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Inclusive `y` range of hull lattice points on column `x`, if any.
fn column_range(hull: &[Point], x: i64) -> Option<(i64, i64)> {
    match hull.len() {
        0 => None,
        1 => (hull[0].x == x).then_some((hull[0].y, hull[0].y)),
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let d = b - a;
            if d.x == 0 {
                return (a.x == x).then_some((a.y.min(b.y), a.y.max(b.y)));
            }
            let (lo, hi) = (a.x.min(b.x), a.x.max(b.x));
            if x < lo || x > hi {
                return None;
            }
            let num = d.y as i128 * (x - a.x) as i128;
            let den = d.x as i128;
            if num % den != 0 {
                return None;
            }
            let y = a.y + (num / den) as i64;
            Some((y, y))
        }
        _ => {
            // Each CCW edge a->b gives cross(b-a, p-a) >= 0, linear in p.y.
            let mut lo = i128::MIN;
            let mut hi = i128::MAX;
            for i in 0..hull.len() {
                let a = hull[i];
                let b = hull[(i + 1) % hull.len()];
                let d = b - a;
                let rhs = d.y as i128 * (x - a.x) as i128 + d.x as i128 * a.y as i128;
                match d.x.signum() {
                    1 => lo = lo.max(Integer::div_ceil(&rhs, &(d.x as i128))),
                    -1 => hi = hi.min(Integer::div_floor(&rhs, &(d.x as i128))),
                    _ => {
                        if -(d.y as i128) * ((x - a.x) as i128) < 0 {
                            return None;
                        }
                    }
                }
            }
            (lo <= hi).then_some((lo as i64, hi as i64))
        }
    }
}

/// All lattice points of the convex hull of `points`.
pub fn convex_closure(points: impl IntoIterator<Item = Point>) -> Vec<Point> {
    let hull = convex_hull(points);
    let Some(min_x) = hull.iter().map(|p| p.x).min() else {
        return Vec::new();
    };
    let max_x = hull.iter().map(|p| p.x).max().unwrap();
    let mut out = Vec::new();
    for x in min_x..=max_x {
        if let Some((lo, hi)) = column_range(&hull, x) {
            out.extend((lo..=hi).map(|y| Point::new(x, y)));
        }
    }
    out
}

/// Whether the figure equals the set of lattice points in its convex hull.
/// Weights are ignored.
pub fn check_convex(fig: &WeightedFigure) -> Result<bool> {
    fig.require_dim(Dim::Two)?;
    let hull = convex_hull(fig.points());
    let (lo, hi) = fig.bounding_box();
    let mut count = 0usize;
    for x in lo.x..=hi.x {
        if let Some((a, b)) = column_range(&hull, x) {
            count += (b - a + 1) as usize;
            if count > fig.len() {
                return Ok(false);
            }
        }
    }
    // The figure is contained in its own hull, so equal counts mean equal sets.
    Ok(count == fig.len())
}

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use super::{Dim, Direction, Point, WeightedFigure};
use crate::error::Result;

/// Intersection of the figure with one line parallel to a direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineRun {
    /// `cross(d, p)` for any point `p` on the line; constant along it.
    pub line: i64,
    pub length: usize,
    /// Whether the points are consecutive lattice points of the line.
    pub contiguous: bool,
    /// Sum of the weights on the line.
    pub weight_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinePartition {
    pub direction: Direction,
    /// Sorted by line identifier.
    pub runs: Vec<LineRun>,
}

impl LinePartition {
    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.length).collect()
    }

    pub fn all_contiguous(&self) -> bool {
        self.runs.iter().all(|r| r.contiguous)
    }

    pub fn gcd(&self) -> usize {
        self.runs.iter().fold(0, |g, r| g.gcd(&r.length))
    }
}

/// Canonical primitive directions `p` such that two figure points differ by a
/// multiple of `p`. Any other direction meets the figure in singletons only.
pub fn primitive_directions(fig: &WeightedFigure) -> Result<BTreeSet<Direction>> {
    fig.require_dim(Dim::Two)?;
    let pts: Vec<Point> = fig.points().collect();
    let mut out = BTreeSet::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if let Some((d, _)) = Direction::from_vector(b - a) {
                out.insert(d);
            }
        }
    }
    Ok(out)
}

/// Groups the figure's points by the lines parallel to `d`.
pub fn line_partition(fig: &WeightedFigure, d: Direction) -> Result<LinePartition> {
    fig.require_dim(Dim::Two)?;
    let dv = d.vector();
    let step = dv.dot(dv);
    // line id -> (count, weight sum, min position, max position)
    let mut lines: BTreeMap<i64, (usize, i64, i128, i128)> = BTreeMap::new();
    for (p, w) in fig.iter() {
        let id = dv.cross(p) as i64;
        let pos = dv.dot(p);
        let e = lines.entry(id).or_insert((0, 0, pos, pos));
        e.0 += 1;
        e.1 += w;
        e.2 = e.2.min(pos);
        e.3 = e.3.max(pos);
    }
    let runs = lines
        .into_iter()
        .map(|(line, (length, weight_sum, lo, hi))| LineRun {
            line,
            length,
            contiguous: (hi - lo) / step + 1 == length as i128,
            weight_sum,
        })
        .collect();
    Ok(LinePartition { direction: d, runs })
}

/// gcd of the line-intersection lengths along `d`; 1 certifies that the
/// figure is `d`-relatively prime.
pub fn direction_gcd(fig: &WeightedFigure, d: Direction) -> Result<usize> {
    Ok(line_partition(fig, d)?.gcd())
}

//! Figure text format.
//!
//! One point per line: `x y [w]` in 2D, `x [w]` in 1D, weight defaulting to 1.
//! `#` starts a comment, blank lines are skipped. The dimension comes from the
//! first data line: one token means 1D, three tokens mean 2D, and two tokens
//! mean 2D unless a `dim 1` directive precedes the data.

use super::{Dim, Point, WeightedFigure};
use crate::error::{Error, Result};

fn parse_int(tok: &str, line: usize) -> Result<i64> {
    tok.parse::<i64>().map_err(|_| Error::parse(line, format!("expected an integer, found {tok:?}")))
}

pub fn parse_figure(text: &str) -> Result<WeightedFigure> {
    let mut dim: Option<Dim> = None;
    let mut points = Vec::new();
    let mut seen = std::collections::BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0] == "dim" {
            if dim.is_some() {
                return Err(Error::parse(line_no, "`dim` directive must precede the points"));
            }
            dim = match toks.get(1..) {
                Some(["1"]) => Some(Dim::One),
                Some(["2"]) => Some(Dim::Two),
                _ => return Err(Error::parse(line_no, "expected `dim 1` or `dim 2`")),
            };
            continue;
        }
        let d = *dim.get_or_insert(match toks.len() {
            1 => Dim::One,
            2 | 3 => Dim::Two,
            n => return Err(Error::parse(line_no, format!("expected 1 to 3 fields, found {n}"))),
        });
        let nums = toks.iter().map(|t| parse_int(t, line_no)).collect::<Result<Vec<_>>>()?;
        let (p, w) = match (d, nums.as_slice()) {
            (Dim::One, [x]) => (Point::new(*x, 0), 1),
            (Dim::One, [x, w]) => (Point::new(*x, 0), *w),
            (Dim::Two, [x, y]) => (Point::new(*x, *y), 1),
            (Dim::Two, [x, y, w]) => (Point::new(*x, *y), *w),
            _ => {
                return Err(Error::parse(
                    line_no,
                    format!("{} fields do not fit a {}D figure", nums.len(), d.get()),
                ))
            }
        };
        if w == 0 {
            return Err(Error::parse(line_no, "weights must be nonzero"));
        }
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint(p.to_string()));
        }
        points.push((p, w));
    }
    WeightedFigure::new(dim.unwrap_or(Dim::Two), points)
}

/// Inverse of [`parse_figure`]. 1D figures carry a `dim 1` header so that
/// weighted points read back unambiguously.
pub fn format_figure(fig: &WeightedFigure) -> String {
    let mut out = String::new();
    if fig.dim() == Dim::One {
        out.push_str("dim 1\n");
    }
    for (p, w) in fig.iter() {
        let line = match (fig.dim(), w) {
            (Dim::One, 1) => format!("{}\n", p.x),
            (Dim::One, w) => format!("{} {}\n", p.x, w),
            (Dim::Two, 1) => format!("{} {}\n", p.x, p.y),
            (Dim::Two, w) => format!("{} {} {}\n", p.x, p.y, w),
        };
        out.push_str(&line);
    }
    out
}

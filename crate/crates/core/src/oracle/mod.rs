//! Brute-force ground truth on finite windows.
//!
//! Only translates of the figure that lie entirely inside a window count;
//! partially visible translates are ignored.

mod search;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Point, WeightedFigure};
use crate::witness::{offsets_1d, ConfigurationWindow, PeriodicSequence};

pub use search::{
    search_windows_2d, search_words_1d, search_zero_sum_1d, solution_window, SearchResult, SearchStats,
};

/// Weighted letter counts of one translate, indexed like the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianCombination {
    pub alphabet: Vec<String>,
    pub multiplicities: Vec<i64>,
}

/// Translation vectors `p` with `fig + p` inside the window, in scan order
/// (`y` then `x` ascending).
pub fn translates(win: &ConfigurationWindow, fig: &WeightedFigure) -> Vec<Point> {
    let (lo, hi) = fig.bounding_box();
    let (o, e) = (win.origin(), win.end());
    let mut out = Vec::new();
    for py in (o.y - lo.y)..(e.y - hi.y) {
        for px in (o.x - lo.x)..(e.x - hi.x) {
            out.push(Point::new(px, py));
        }
    }
    out
}

fn multiplicities(win: &ConfigurationWindow, fig: &WeightedFigure, pos: Point) -> Option<Vec<i64>> {
    let mut m = vec![0i64; win.alphabet().len()];
    for (p, w) in fig.iter() {
        m[win.get(p + pos)? as usize] += w;
    }
    Some(m)
}

pub fn abelian_combination(win: &ConfigurationWindow, fig: &WeightedFigure, pos: Point) -> Result<AbelianCombination> {
    let multiplicities = multiplicities(win, fig, pos)
        .ok_or_else(|| Error::InvalidArgument(format!("the translate by {pos} is not inside the window")))?;
    Ok(AbelianCombination { alphabet: win.alphabet().to_vec(), multiplicities })
}

/// Number of distinct combinations over all fully contained translates.
pub fn abelian_pattern_complexity(win: &ConfigurationWindow, fig: &WeightedFigure) -> Result<usize> {
    let pos = translates(win, fig);
    if pos.is_empty() {
        return Err(Error::WindowTooSmall("no translate of the figure fits in the window".into()));
    }
    let classes: BTreeSet<Vec<i64>> = pos
        .into_iter()
        .map(|p| multiplicities(win, fig, p).expect("translate is inside"))
        .collect();
    Ok(classes.len())
}

/// Outcome of a constant-sum check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConstantSum {
    Constant(i64),
    /// Two positions whose weighted sums differ.
    NotConstant { first: Point, first_sum: i64, second: Point, second_sum: i64 },
}

fn first_difference(sums: impl Iterator<Item = (Point, i64)>) -> Option<ConstantSum> {
    let mut first: Option<(Point, i64)> = None;
    for (p, s) in sums {
        match first {
            None => first = Some((p, s)),
            Some((q, t)) if t != s => {
                return Some(ConstantSum::NotConstant { first: q, first_sum: t, second: p, second_sum: s })
            }
            _ => {}
        }
    }
    first.map(|(_, s)| ConstantSum::Constant(s))
}

/// The common value of `Σ g_t · w(x + t)` over all fully contained translates.
pub fn constant_sum_window(win: &ConfigurationWindow, fig: &WeightedFigure) -> Result<ConstantSum> {
    let values = win.integer_alphabet()?;
    let pos = translates(win, fig);
    let sums = pos.iter().map(|&x| {
        let s = fig.iter().map(|(t, g)| g * values[win.get(x + t).expect("inside") as usize]).sum();
        (x, s)
    });
    first_difference(sums).ok_or_else(|| Error::WindowTooSmall("no translate of the figure fits in the window".into()))
}

/// Like [`constant_sum_window`] on the bi-infinite periodic extension; one
/// period of phases covers every position.
pub fn constant_sum_sequence(seq: &PeriodicSequence, fig: &WeightedFigure) -> Result<ConstantSum> {
    let offs = offsets_1d(fig)?;
    let sums = (0..seq.period as i64).map(|x| {
        let s = offs.iter().map(|&(t, g)| g * seq.at(x + t as i64)).sum();
        (Point::new(x, 0), s)
    });
    Ok(first_difference(sums).expect("period is positive"))
}

/// Whether `w(x) = w(x + p)` whenever both points lie in the window.
pub fn is_period(win: &ConfigurationWindow, p: Point) -> bool {
    win.points().all(|x| match win.get(x + p) {
        Some(c) => c == win.get(x).expect("inside"),
        None => true,
    })
}

/// Sign-canonical nonzero vectors of max-norm at most `bound` that are periods
/// of the window, sorted lexicographically. A vector too long to fit is a
/// period vacuously.
pub fn period_vectors(win: &ConfigurationWindow, bound: i64) -> Vec<Point> {
    let mut out = Vec::new();
    let max_y = if win.height() > 1 { bound } else { 0 };
    for x in 0..=bound {
        for y in -max_y..=max_y {
            let p = Point::new(x, y);
            if p.is_zero() || p.sign_canonical() != p {
                continue;
            }
            if is_period(win, p) {
                out.push(p);
            }
        }
    }
    out
}

/// Smallest `p >= 1` with `seq[i] = seq[i + p]` for all valid `i`.
pub fn minimal_period_1d<T: PartialEq>(seq: &[T]) -> usize {
    (1..=seq.len().max(1))
        .find(|&p| seq.iter().zip(&seq[p.min(seq.len())..]).all(|(a, b)| a == b))
        .expect("the length itself is a period")
}

//! Exhaustive searches for words and windows with a single abelian class.
//!
//! Letter renaming is quotiented out by requiring first occurrences, in
//! scanning order, to be increasing. Solutions come out in lexicographic
//! scanning order whatever the number of worker threads.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{canonicalize, Dim, Point, WeightedFigure};
use crate::witness::{offsets_1d, ConfigurationWindow};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// Not serialized, so JSON output stays byte-stable.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult<S> {
    pub parameters: Value,
    pub solutions: Vec<S>,
    pub exhausted: bool,
    pub stats: SearchStats,
}

fn timed<S>(parameters: Value, f: impl FnOnce() -> (Vec<S>, bool, u64)) -> SearchResult<S> {
    let start = Instant::now();
    let (solutions, exhausted, nodes) = f();
    SearchResult { parameters, solutions, exhausted, stats: SearchStats { nodes, wall_time: start.elapsed() } }
}

/// Cyclic 1D constraint: the sum `Σ g_t · letter(x + t mod len)` as a vector
/// over letters must be the same for every `x`.
struct Cyclic<'a> {
    offs: &'a [(usize, i64)],
    diam: usize,
    len: usize,
}

impl Cyclic<'_> {
    fn combination(&self, word: &[u32], x: usize, k: usize) -> Vec<i64> {
        let mut m = vec![0i64; k];
        for &(t, g) in self.offs {
            m[word[(x + t) % self.len] as usize] += g;
        }
        m
    }

    fn weighted_sum(&self, word: &[i64], x: usize) -> i64 {
        self.offs.iter().map(|&(t, g)| g * word[(x + t) % self.len]).sum()
    }

    /// Positions whose window closes when `i` is assigned, without wrapping.
    fn closing(&self, i: usize) -> Option<usize> {
        i.checked_sub(self.diam)
    }

    /// Positions whose window wraps around the end.
    fn wrapping(&self) -> std::ops::Range<usize> {
        self.len.saturating_sub(self.diam)..self.len
    }
}

fn words_of_length(offs: &[(usize, i64)], k: usize, len: usize) -> (Vec<Vec<u32>>, u64) {
    let c = Cyclic { offs, diam: offs.last().map_or(0, |o| o.0), len };
    let mut word = vec![0u32; len];
    let mut out = Vec::new();
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go(
        c: &Cyclic<'_>,
        k: usize,
        i: usize,
        used: u32,
        word: &mut Vec<u32>,
        reference: Option<&Vec<i64>>,
        out: &mut Vec<Vec<u32>>,
        nodes: &mut u64,
    ) {
        if i == c.len {
            let reference = reference.cloned().unwrap_or_else(|| c.combination(word, 0, k));
            if used >= 2 && c.wrapping().all(|x| c.combination(word, x, k) == reference) {
                out.push(word.clone());
            }
            return;
        }
        let top = (used as usize).min(k - 1) as u32;
        for letter in 0..=top {
            *nodes += 1;
            word[i] = letter;
            let used = used.max(letter + 1);
            match c.closing(i) {
                Some(x) if x + c.diam < c.len => {
                    let comb = c.combination(word, x, k);
                    match reference {
                        None => go(c, k, i + 1, used, word, Some(&comb), out, nodes),
                        Some(r) if *r == comb => go(c, k, i + 1, used, word, Some(r), out, nodes),
                        Some(_) => {}
                    }
                }
                _ => go(c, k, i + 1, used, word, reference, out, nodes),
            }
        }
    }

    go(&c, k, 0, 0, &mut word, None, &mut out, &mut nodes);
    (out, nodes)
}

/// All non-unary words of length `1..=max_len`, up to letter renaming, such
/// that the bi-infinite periodic word repeating them has a single abelian
/// class over the 1D figure. Sorted by length, then lexicographically.
///
/// Each word is one period of the infinite word, so factors wrap around.
pub fn search_words_1d(fig: &WeightedFigure, alphabet_size: usize, max_len: usize) -> Result<SearchResult<Vec<u32>>> {
    let offs = offsets_1d(fig)?;
    if alphabet_size == 0 {
        return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
    }
    let params = json!({ "mode": "letters", "alphabet": alphabet_size, "max_len": max_len, "semantics": "cyclic" });
    Ok(timed(params, || {
        let per_len: Vec<(Vec<Vec<u32>>, u64)> =
            (1..=max_len).into_par_iter().map(|len| words_of_length(&offs, alphabet_size, len)).collect();
        let nodes = per_len.iter().map(|r| r.1).sum();
        (per_len.into_iter().flat_map(|r| r.0).collect(), true, nodes)
    }))
}

fn zero_sum_of_length(offs: &[(usize, i64)], lo: i64, hi: i64, len: usize) -> (Vec<Vec<i64>>, u64) {
    let c = Cyclic { offs, diam: offs.last().map_or(0, |o| o.0), len };
    let mut word = vec![0i64; len];
    let mut out = Vec::new();
    let mut nodes = 0u64;

    fn go(c: &Cyclic<'_>, lo: i64, hi: i64, i: usize, word: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, nodes: &mut u64) {
        if i == c.len {
            if word.iter().any(|&v| v != 0) && c.wrapping().all(|x| c.weighted_sum(word, x) == 0) {
                out.push(word.clone());
            }
            return;
        }
        for v in lo..=hi {
            *nodes += 1;
            word[i] = v;
            let ok = match c.closing(i) {
                Some(x) if x + c.diam < c.len => c.weighted_sum(word, x) == 0,
                _ => true,
            };
            if ok {
                go(c, lo, hi, i + 1, word, out, nodes);
            }
        }
    }

    go(&c, lo, hi, 0, &mut word, &mut out, &mut nodes);
    (out, nodes)
}

/// All nonzero integer words with values in `lo..=hi` and length
/// `1..=max_len` whose periodic extension has every weighted translate sum
/// equal to 0. Values are not renamed.
pub fn search_zero_sum_1d(fig: &WeightedFigure, lo: i64, hi: i64, max_len: usize) -> Result<SearchResult<Vec<i64>>> {
    let offs = offsets_1d(fig)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty value range {lo}..{hi}")));
    }
    let params = json!({ "mode": "zero-sum", "values": [lo, hi], "max_len": max_len, "semantics": "cyclic" });
    Ok(timed(params, || {
        let per_len: Vec<(Vec<Vec<i64>>, u64)> =
            (1..=max_len).into_par_iter().map(|len| zero_sum_of_length(&offs, lo, hi, len)).collect();
        let nodes = per_len.iter().map(|r| r.1).sum();
        (per_len.into_iter().flat_map(|r| r.0).collect(), true, nodes)
    }))
}

/// Precomputed constraint structure of a 2D window search.
struct Grid {
    width: usize,
    cells: usize,
    k: usize,
    /// For each translate, its `(cell, weight)` list.
    translates: Vec<Vec<(usize, i64)>>,
    /// Translates that become fully assigned at each cell.
    completes: Vec<Vec<usize>>,
    /// Cell at which the reference translate completes.
    reference_cell: usize,
}

impl Grid {
    fn new(fig: &WeightedFigure, k: usize, width: usize, height: usize) -> Self {
        let (_, hi) = fig.bounding_box();
        let mut translates = Vec::new();
        let mut completes = vec![Vec::new(); width * height];
        for py in 0..height as i64 - hi.y {
            for px in 0..width as i64 - hi.x {
                let cells: Vec<(usize, i64)> = fig
                    .iter()
                    .map(|(p, w)| (((p.y + py) as usize) * width + (p.x + px) as usize, w))
                    .collect();
                let last = cells.iter().map(|c| c.0).max().expect("figure is nonempty");
                completes[last].push(translates.len());
                translates.push(cells);
            }
        }
        let reference_cell = completes.iter().position(|c| !c.is_empty()).expect("a translate fits");
        Grid { width, cells: width * height, k, translates, completes, reference_cell }
    }

    fn combination(&self, t: usize, cells: &[u32]) -> Vec<i64> {
        let mut m = vec![0i64; self.k];
        for &(c, w) in &self.translates[t] {
            m[cells[c] as usize] += w;
        }
        m
    }

    /// Checks the translates completing at `i`. Sets the reference when `i`
    /// is the reference cell.
    fn accept(&self, i: usize, cells: &[u32], reference: &mut Option<Vec<i64>>) -> bool {
        let mut it = self.completes[i].iter();
        if i == self.reference_cell {
            *reference = Some(self.combination(*it.next().expect("reference translate"), cells));
        }
        let r = match reference {
            Some(r) => r,
            None => return true,
        };
        it.all(|&t| self.combination(t, cells) == *r)
    }

    fn used(&self, prefix: &[u32]) -> u32 {
        prefix.iter().map(|&c| c + 1).max().unwrap_or(0)
    }
}

struct Budget {
    limit: u64,
    spent: AtomicU64,
    hit: AtomicBool,
}

impl Budget {
    fn take(&self) -> bool {
        if self.spent.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.hit.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }
}

/// Depth-first search from cell `i` up to (not including) `stop`. Complete
/// assignments of length `stop` are pushed to `out`.
#[allow(clippy::too_many_arguments)]
fn explore(
    g: &Grid,
    budget: &Budget,
    cells: &mut Vec<u32>,
    used: u32,
    reference: Option<Vec<i64>>,
    stop: usize,
    out: &mut Vec<Vec<u32>>,
    nodes: &mut u64,
) {
    let i = cells.len();
    if i == stop {
        out.push(cells.clone());
        return;
    }
    let top = (used as usize).min(g.k - 1) as u32;
    for letter in 0..=top {
        if !budget.take() {
            return;
        }
        *nodes += 1;
        cells.push(letter);
        let mut r = reference.clone();
        if g.accept(i, cells, &mut r) {
            explore(g, budget, cells, used.max(letter + 1), r, stop, out, nodes);
        }
        cells.pop();
    }
}

/// Every `width × height` window over `alphabet_size` letters, up to letter
/// renaming, in which all fully contained translates of the figure share one
/// abelian combination. Cells are scanned row by row from `y = 0`; each
/// solution is returned as rows with `y` ascending.
///
/// When `budget` nodes have been visited the search stops with
/// `exhausted = false`; under parallelism the partial solution set then
/// depends on scheduling.
pub fn search_windows_2d(
    fig: &WeightedFigure,
    alphabet_size: usize,
    width: usize,
    height: usize,
    budget: u64,
) -> Result<SearchResult<Vec<Vec<u32>>>> {
    fig.require_dim(Dim::Two)?;
    if alphabet_size == 0 {
        return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
    }
    let fig = canonicalize(fig);
    let (_, hi) = fig.bounding_box();
    if hi.x as u64 >= width as u64 || hi.y as u64 >= height as u64 {
        return Err(Error::WindowTooSmall(format!(
            "{width}x{height} cannot hold a translate of a figure spanning {}x{}",
            hi.x + 1,
            hi.y + 1
        )));
    }
    let params = json!({ "alphabet": alphabet_size, "width": width, "height": height, "budget": budget });
    let g = Grid::new(&fig, alphabet_size, width, height);
    let budget = Budget { limit: budget, spent: AtomicU64::new(0), hit: AtomicBool::new(false) };

    Ok(timed(params, || {
        // Split on a short prefix so that subtrees can run in parallel.
        let mut depth = 0;
        let mut reach = 1usize;
        while depth < g.cells && reach < 256 {
            reach = reach.saturating_mul(alphabet_size.min(depth + 1));
            depth += 1;
        }
        if alphabet_size == 1 {
            depth = g.cells;
        }
        let mut prefixes = Vec::new();
        let mut nodes = 0u64;
        explore(&g, &budget, &mut Vec::new(), 0, None, depth, &mut prefixes, &mut nodes);

        let parts: Vec<(Vec<Vec<u32>>, u64)> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut cells = prefix.clone();
                let reference = (g.reference_cell < prefix.len())
                    .then(|| g.combination(g.completes[g.reference_cell][0], prefix));
                let mut out = Vec::new();
                let mut n = 0;
                explore(&g, &budget, &mut cells, g.used(prefix), reference, g.cells, &mut out, &mut n);
                (out, n)
            })
            .collect();
        nodes += parts.iter().map(|p| p.1).sum::<u64>();
        let solutions = parts
            .into_iter()
            .flat_map(|p| p.0)
            .map(|cells| cells.chunks(g.width).map(<[u32]>::to_vec).collect())
            .collect();
        (solutions, !budget.hit.load(Ordering::Relaxed), nodes)
    }))
}

/// A search solution as a window at the origin over letters `0..k`.
pub fn solution_window(rows: &[Vec<u32>], alphabet_size: usize) -> Result<ConfigurationWindow> {
    ConfigurationWindow::from_rows(Point::ORIGIN, alphabet_size, rows)
}

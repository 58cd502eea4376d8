use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Point;

/// A finite rectangle of a configuration. Cells hold alphabet indices and are
/// stored row-major with `y` ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConfigurationWindow {
    origin: Point,
    width: usize,
    height: usize,
    alphabet: Vec<String>,
    cells: Vec<u32>,
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == ',' || c == '#')
}

impl ConfigurationWindow {
    pub fn new(origin: Point, width: usize, height: usize, alphabet: Vec<String>, cells: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(format!("window size {width}x{height} must be positive")));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "{} cells given for a {width}x{height} window",
                cells.len()
            )));
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidArgument("alphabet is empty".into()));
        }
        for (i, s) in alphabet.iter().enumerate() {
            if !valid_symbol(s) {
                return Err(Error::InvalidArgument(format!("invalid alphabet symbol {s:?}")));
            }
            if alphabet[..i].contains(s) {
                return Err(Error::InvalidArgument(format!("duplicate alphabet symbol {s:?}")));
            }
        }
        if let Some(&c) = cells.iter().find(|&&c| c as usize >= alphabet.len()) {
            return Err(Error::InvalidArgument(format!(
                "cell index {c} is outside an alphabet of {} symbols",
                alphabet.len()
            )));
        }
        Ok(ConfigurationWindow { origin, width, height, alphabet, cells })
    }

    pub fn from_fn(
        origin: Point,
        width: usize,
        height: usize,
        alphabet: Vec<String>,
        f: impl Fn(Point) -> u32,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(width * height);
        for dy in 0..height as i64 {
            for dx in 0..width as i64 {
                cells.push(f(origin + Point::new(dx, dy)));
            }
        }
        Self::new(origin, width, height, alphabet, cells)
    }

    /// Alphabet `0, 1, ..., k-1` with rows given `y` ascending.
    pub fn from_rows(origin: Point, alphabet_size: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument("rows have different lengths".into()));
        }
        let alphabet = (0..alphabet_size).map(|i| i.to_string()).collect();
        Self::new(origin, width, rows.len(), alphabet, rows.concat())
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// Upper corner, exclusive.
    pub fn end(&self) -> Point {
        self.origin + Point::new(self.width as i64, self.height as i64)
    }

    pub fn contains(&self, p: Point) -> bool {
        let e = self.end();
        p.x >= self.origin.x && p.y >= self.origin.y && p.x < e.x && p.y < e.y
    }

    fn offset(&self, p: Point) -> Option<usize> {
        self.contains(p).then(|| {
            let d = p - self.origin;
            d.y as usize * self.width + d.x as usize
        })
    }

    /// Alphabet index at `p`.
    pub fn get(&self, p: Point) -> Option<u32> {
        self.offset(p).map(|i| self.cells[i])
    }

    pub fn symbol(&self, p: Point) -> Option<&str> {
        self.get(p).map(|c| self.alphabet[c as usize].as_str())
    }

    /// Alphabet symbols read as integers.
    pub fn integer_alphabet(&self) -> Result<Vec<i64>> {
        self.alphabet
            .iter()
            .map(|s| s.parse::<i64>().map_err(|_| Error::NonIntegerSymbol(s.clone())))
            .collect()
    }

    /// Integer value at `p`.
    pub fn value(&self, p: Point) -> Result<i64> {
        let s = self
            .symbol(p)
            .ok_or_else(|| Error::InvalidArgument(format!("{p} is outside the window")))?;
        s.parse::<i64>().map_err(|_| Error::NonIntegerSymbol(s.to_string()))
    }

    /// Integer values of row `dy` (counted from the bottom).
    pub fn int_row(&self, dy: usize) -> Result<Vec<i64>> {
        let values = self.integer_alphabet()?;
        Ok(self.cells[dy * self.width..(dy + 1) * self.width]
            .iter()
            .map(|&c| values[c as usize])
            .collect())
    }

    /// All points, row by row with `y` ascending.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let o = self.origin;
        let w = self.width as i64;
        (0..self.height as i64).flat_map(move |dy| (0..w).map(move |dx| o + Point::new(dx, dy)))
    }

    /// The sub-window at `origin` of the given size, with the same alphabet.
    pub fn crop(&self, origin: Point, width: usize, height: usize) -> Result<Self> {
        let far = origin + Point::new(width as i64 - 1, height as i64 - 1);
        if width == 0 || height == 0 || !self.contains(origin) || !self.contains(far) {
            return Err(Error::InvalidArgument(format!(
                "{width}x{height} at {origin} does not lie inside the window"
            )));
        }
        Self::from_fn(origin, width, height, self.alphabet.clone(), |p| self.get(p).expect("inside"))
    }
}

//! Window and sequence text formats.
//!
//! A window is a header `window <x0> <y0> <width> <height> alphabet=<s0,s1,...>`
//! followed by `height` rows of whitespace-separated symbols, top row first
//! (largest `y`). A sequence is `period <n>` followed by one line of `n`
//! integers. Blank lines and `#` comments are ignored in both.

use super::{ConfigurationWindow, PeriodicSequence};
use crate::error::{Error, Result};
use crate::lattice::Point;

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse::<T>().map_err(|_| Error::parse(line, format!("expected {what}, found {tok:?}")))
}

pub fn parse_window(text: &str) -> Result<ConfigurationWindow> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty window file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [kw, x0, y0, w, h, alpha] = toks.as_slice() else {
        return Err(Error::parse(hline, "expected `window <x0> <y0> <width> <height> alphabet=<symbols>`"));
    };
    if *kw != "window" {
        return Err(Error::parse(hline, format!("expected `window`, found {kw:?}")));
    }
    let origin = Point::new(int(x0, hline, "an integer")?, int(y0, hline, "an integer")?);
    let width: usize = int(w, hline, "a width")?;
    let height: usize = int(h, hline, "a height")?;
    let alphabet: Vec<String> = alpha
        .strip_prefix("alphabet=")
        .ok_or_else(|| Error::parse(hline, "expected `alphabet=<s0,s1,...>`"))?
        .split(',')
        .map(str::to_string)
        .collect();

    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(height);
    for (ln, line) in lines {
        if rows.len() == height {
            return Err(Error::parse(ln, format!("more than {height} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|s| {
                alphabet
                    .iter()
                    .position(|a| a == s)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::parse(ln, format!("symbol {s:?} is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != width {
            return Err(Error::parse(ln, format!("expected {width} symbols, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != height {
        return Err(Error::parse(hline, format!("expected {height} rows, found {}", rows.len())));
    }
    rows.reverse();
    ConfigurationWindow::new(origin, width, height, alphabet, rows.concat())
}

pub fn format_window(win: &ConfigurationWindow) -> String {
    let o = win.origin();
    let mut out = format!(
        "window {} {} {} {} alphabet={}\n",
        o.x,
        o.y,
        win.width(),
        win.height(),
        win.alphabet().join(",")
    );
    for dy in (0..win.height()).rev() {
        let row: Vec<&str> = (0..win.width())
            .map(|dx| win.symbol(o + Point::new(dx as i64, dy as i64)).expect("inside"))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_sequence(text: &str) -> Result<PeriodicSequence> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty sequence file"))?;
    let period: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["period", n] => int(n, hline, "a period")?,
        _ => return Err(Error::parse(hline, "expected `period <n>`")),
    };
    let (vline, body) = lines.next().ok_or_else(|| Error::parse(hline, "missing sequence values"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(Error::parse(extra, "values must be on a single line"));
    }
    let values = body
        .split_whitespace()
        .map(|t| int::<i64>(t, vline, "an integer"))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != period {
        return Err(Error::parse(vline, format!("expected {period} values, found {}", values.len())));
    }
    PeriodicSequence::new(values)
}

pub fn format_sequence(seq: &PeriodicSequence) -> String {
    let vals: Vec<String> = seq.values.iter().map(i64::to_string).collect();
    format!("period {}\n{}\n", seq.period, vals.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_layout() {
        let text = "window 0 0 2 2 alphabet=0,1\n1 0\n0 1\n";
        let w = parse_window(text).unwrap();
        assert_eq!(w.get(Point::new(0, 0)), Some(0));
        assert_eq!(w.get(Point::new(0, 1)), Some(1));
        assert_eq!(format_window(&w), text);
    }

    #[test]
    fn window_errors() {
        assert!(parse_window("").is_err());
        assert!(parse_window("window 0 0 2 1 alphabet=a,b\na c\n").is_err());
        assert!(parse_window("window 0 0 2 2 alphabet=a,b\na b\n").is_err());
        assert!(parse_window("window 0 0 2 1 alphabet=a,b\na b a\n").is_err());
        assert!(parse_window("frame 0 0 1 1 alphabet=a\na\n").is_err());
        assert!(parse_window("window 0 0 1 1 symbols=a\na\n").is_err());
        let err = parse_window("window 0 0 1 1 alphabet=a\n\n# note\nb\n").unwrap_err();
        assert_eq!(err, Error::parse(4, "symbol \"b\" is not in the alphabet"));
    }

    #[test]
    fn sequences() {
        let s = parse_sequence("# witness\nperiod 3\n1 0 -1\n").unwrap();
        assert_eq!(s.values, vec![1, 0, -1]);
        assert_eq!(format_sequence(&s), "period 3\n1 0 -1\n");
        assert!(parse_sequence("period 2\n1 0 -1\n").is_err());
        assert!(parse_sequence("period 0\n\n").is_err());
        assert!(parse_sequence("period 1\n1\n2\n").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn window_round_trip(
                x0 in -5i64..5, y0 in -5i64..5, w in 1usize..6, h in 1usize..6, k in 1usize..4,
                seed in prop::collection::vec(0u32..100, 36),
            ) {
                let alphabet: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
                let cells: Vec<u32> = seed[..w * h].iter().map(|c| c % k as u32).collect();
                let win = ConfigurationWindow::new(Point::new(x0, y0), w, h, alphabet, cells).unwrap();
                prop_assert_eq!(parse_window(&format_window(&win)).unwrap(), win);
            }

            #[test]
            fn sequence_round_trip(values in prop::collection::vec(-50i64..50, 1..10)) {
                let s = PeriodicSequence::new(values).unwrap();
                prop_assert_eq!(parse_sequence(&format_sequence(&s)).unwrap(), s);
            }
        }
    }
}

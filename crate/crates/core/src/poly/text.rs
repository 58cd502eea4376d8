//! Human-readable rendering, e.g. `10 + 2*y - 3*y^3 + x + 4*x*y^2 + x^2*y`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use super::{Exponent, PatternPolynomial};
use crate::error::{Error, Result};

fn write_monomial(f: &mut fmt::Formatter<'_>, e: Exponent) -> fmt::Result {
    let mut first = true;
    for (name, k) in [("x", e[0]), ("y", e[1])] {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        match k {
            1 => f.write_str(name)?,
            k => write!(f, "{name}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for PatternPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.sign() == Sign::Minus;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == [0, 0] {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

/// Parses the rendering produced by `Display`. Whitespace is optional and
/// repeated factors multiply (`x*x` is `x^2`). When `arity` is `None` it is
/// 2 if `y` occurs and 1 otherwise.
pub fn parse_polynomial(text: &str, arity: Option<usize>) -> Result<PatternPolynomial> {
    let err = |m: String| Error::parse(1, format!("polynomial: {m}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input".into()));
    }
    let uses_y = s.contains('y');
    let arity = arity.unwrap_or(if uses_y { 2 } else { 1 });
    if arity == 1 && uses_y {
        return Err(err("`y` in a univariate polynomial".into()));
    }
    if arity != 1 && arity != 2 {
        return Err(err(format!("unsupported arity {arity}")));
    }

    let mut poly = PatternPolynomial::zero(arity);
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i != 0 {
            return Err(err(format!("expected `+` or `-` at offset {i}")));
        }
        let end = s[i..].find(['+', '-']).map_or(s.len(), |k| i + k);
        let term = &s[i..end];
        if term.is_empty() {
            return Err(err(format!("empty term at offset {i}")));
        }
        let mut coeff = sign;
        let mut e: Exponent = [0, 0];
        for factor in term.split('*') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (b, p.parse::<u32>().map_err(|_| err(format!("bad exponent in {factor:?}")))?),
                None => (factor, 1),
            };
            match base {
                "x" => e[0] += power,
                "y" => e[1] += power,
                num => {
                    let n: BigInt = num.parse().map_err(|_| err(format!("bad factor {factor:?}")))?;
                    coeff *= num_traits::pow(n, power as usize);
                }
            }
        }
        poly.add_term(e, coeff);
        i = end;
    }
    Ok(poly)
}

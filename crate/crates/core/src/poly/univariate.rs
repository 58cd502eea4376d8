//! Dense univariate helpers over `Z`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::PatternPolynomial;

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Ascending coefficients in the first variable; the second exponent is ignored.
pub(crate) fn to_dense(p: &PatternPolynomial) -> Vec<BigInt> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut out = vec![BigInt::zero(); deg as usize + 1];
    for (e, c) in p.terms() {
        out[e[0] as usize] += c;
    }
    trim(&mut out);
    out
}

pub(crate) fn from_dense(coeffs: &[BigInt]) -> PatternPolynomial {
    PatternPolynomial::from_terms(1, coeffs.iter().enumerate().map(|(i, c)| ([i as u32, 0], c.clone())))
}

/// Division by a divisor whose leading coefficient is 1, exact over `Z`.
pub(crate) fn div_rem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len().checked_sub(1).expect("nonzero divisor");
    debug_assert!(b[db].is_one());
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[i + db]);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b[..db].iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

#[cfg(test)]
pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::univariate::{div_rem_monic, from_dense, to_dense};
use super::PatternPolynomial;
use crate::error::{Error, Result};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[derive(Default)]
struct Table(HashMap<u64, Vec<BigInt>>);

impl Table {
    /// `x^n - 1` divided by `Φ_d` for every proper divisor `d` of `n`.
    fn get(&mut self, n: u64) -> Vec<BigInt> {
        if let Some(c) = self.0.get(&n) {
            return c.clone();
        }
        let mut acc = vec![BigInt::zero(); n as usize + 1];
        acc[0] = -BigInt::one();
        acc[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = self.get(d);
            let (q, r) = div_rem_monic(&acc, &phi_d);
            debug_assert!(r.is_empty(), "cyclotomic division must be exact");
            acc = q;
        }
        self.0.insert(n, acc.clone());
        acc
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Result<PatternPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be at least 1".into()));
    }
    Ok(from_dense(&Table::default().get(n)))
}

/// Indices `n <= tested_bound` with `Φ_n` dividing the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicReport {
    pub degree: u32,
    pub tested_bound: u64,
    pub divisors: Vec<u64>,
}

/// All cyclotomic factors. Exhaustive: `Φ_n | p` forces `φ(n) <= deg p`, and
/// `φ(n) >= sqrt(n/2)` bounds such `n` by `2·deg²`.
pub fn detect_cyclotomic_factors(p: &PatternPolynomial) -> Result<CyclotomicReport> {
    let deg = p.degree().unwrap_or(0) as u64;
    detect_cyclotomic_factors_up_to(p, 2 * deg * deg)
}

/// Like [`detect_cyclotomic_factors`] with a caller-chosen bound on `n`.
pub fn detect_cyclotomic_factors_up_to(p: &PatternPolynomial, bound: u64) -> Result<CyclotomicReport> {
    p.require_arity(1)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dense = to_dense(p);
    let degree = (dense.len() - 1) as u32;
    let mut table = Table::default();
    let mut found = Vec::new();
    for n in 1..=bound {
        if euler_phi(n) > degree as u64 {
            continue;
        }
        let phi = table.get(n);
        let (_, r) = div_rem_monic(&dense, &phi);
        if r.is_empty() {
            found.push(n);
        }
    }
    Ok(CyclotomicReport { degree, tested_bound: bound, divisors: found })
}

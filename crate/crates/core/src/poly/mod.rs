//! Sparse exact-integer polynomials in one or two variables.
//!
//! Terms live in a `BTreeMap` keyed by `[ex, ey]`, so iteration is
//! lexicographic in (x-exponent, y-exponent). Zero coefficients are never
//! stored; the zero polynomial is the empty map. Univariate polynomials keep
//! `ey = 0`.

mod cyclotomic;
mod linear;
#[cfg(test)]
mod oracle;
mod text;
pub(crate) mod univariate;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{canonicalize, Dim, Point, WeightedFigure};

pub use cyclotomic::{cyclotomic, detect_cyclotomic_factors, detect_cyclotomic_factors_up_to, euler_phi, CyclotomicReport};
pub use linear::{
    divide_by_strongly_linear, find_strongly_linear_divisors, strongly_linear, StronglyLinearDivisor,
};
pub use text::parse_polynomial;

pub type Exponent = [u32; 2];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternPolynomial {
    arity: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl PatternPolynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity == 1 || arity == 2, "arity must be 1 or 2");
        PatternPolynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(arity, [0, 0], BigInt::one())
    }

    pub fn monomial(arity: usize, e: Exponent, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(e, c.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(arity: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(i, &c)| ([i as u32, 0], c)))
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        debug_assert!(self.arity == 2 || e[1] == 0);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: Exponent) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Degree in the first variable; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    pub fn is_monic_univariate(&self) -> bool {
        self.arity == 1 && self.terms.iter().next_back().is_some_and(|(_, c)| c.is_one())
    }

    pub fn require_arity(&self, arity: usize) -> Result<()> {
        if self.arity == arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected: arity, found: self.arity })
        }
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        PatternPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| ([k[0] + e[0], k[1] + e[1]], c.clone())).collect(),
        }
    }

    /// Componentwise minimum exponent over the support.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| [m[0].min(e[0]), m[1].min(e[1])]))
    }

    /// Divides out the largest monomial factor, so every variable has a term
    /// of exponent 0. Returns the removed exponent.
    pub fn normalize_monomial(&self) -> (Self, Exponent) {
        let Some(m) = self.min_exponent() else {
            return (self.clone(), [0, 0]);
        };
        let terms = self.terms.iter().map(|(e, c)| ([e[0] - m[0], e[1] - m[1]], c.clone())).collect();
        (PatternPolynomial { arity: self.arity, terms }, m)
    }

    /// Whether `self = x^e · other` or `other = x^e · self` for some monomial.
    pub fn equals_up_to_monomial(&self, other: &Self) -> bool {
        self.arity == other.arity && self.normalize_monomial().0 == other.normalize_monomial().0
    }

    /// Builds a normalized polynomial from terms with possibly negative
    /// exponents, returning it with the shift that was applied.
    pub(crate) fn from_laurent(arity: usize, terms: impl IntoIterator<Item = (Point, BigInt)>) -> (Self, Point) {
        let mut acc: BTreeMap<Point, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let Some(mx) = acc.keys().map(|e| e.x).min() else {
            return (Self::zero(arity), Point::ORIGIN);
        };
        let my = acc.keys().map(|e| e.y).min().unwrap();
        let p = PatternPolynomial {
            arity,
            terms: acc.into_iter().map(|(e, c)| ([(e.x - mx) as u32, (e.y - my) as u32], c)).collect(),
        };
        (p, Point::new(-mx, -my))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        PatternPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Evaluates at integer arguments (`y` is ignored for univariate input).
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * num_traits::pow(x.clone(), e[0] as usize) * num_traits::pow(y.clone(), e[1] as usize))
            .sum()
    }

    /// JSON form: a list of `[[e1, e2], c]` (or `[[e1], c]` when univariate).
    /// Coefficients that do not fit in `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let exps = if self.arity == 1 { json!([e[0]]) } else { json!([e[0], e[1]]) };
                    let coeff = c.to_i64().map_or_else(|| json!(c.to_string()), |v| json!(v));
                    json!([exps, coeff])
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::parse(1, format!("polynomial JSON: {m}"));
        let entries = value.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut arity = None;
        let mut terms = Vec::new();
        for entry in entries {
            let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("expected [exponents, coefficient]"))?;
            let exps = pair[0].as_array().ok_or_else(|| bad("exponents must be a list"))?;
            let a = *arity.get_or_insert(exps.len());
            if a != exps.len() || !(1..=2).contains(&a) {
                return Err(bad("inconsistent exponent arity"));
            }
            let mut e = [0u32; 2];
            for (slot, v) in e.iter_mut().zip(exps) {
                *slot = v.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(|| bad("exponent"))?;
            }
            let c: BigInt = match &pair[1] {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("coefficient"))?,
                Value::String(s) => s.parse().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("coefficient")),
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(arity.unwrap_or(1), terms))
    }
}

impl Serialize for PatternPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn combine_arity(a: &PatternPolynomial, b: &PatternPolynomial) -> usize {
    assert_eq!(a.arity, b.arity, "polynomial arity mismatch");
    a.arity
}

impl Add for &PatternPolynomial {
    type Output = PatternPolynomial;
    fn add(self, rhs: &PatternPolynomial) -> PatternPolynomial {
        let mut out = PatternPolynomial { arity: combine_arity(self, rhs), terms: self.terms.clone() };
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &PatternPolynomial {
    type Output = PatternPolynomial;
    fn neg(self) -> PatternPolynomial {
        PatternPolynomial { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &PatternPolynomial {
    type Output = PatternPolynomial;
    fn sub(self, rhs: &PatternPolynomial) -> PatternPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &PatternPolynomial {
    type Output = PatternPolynomial;
    fn mul(self, rhs: &PatternPolynomial) -> PatternPolynomial {
        let mut out = PatternPolynomial::zero(combine_arity(self, rhs));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1]], ca * cb);
            }
        }
        out
    }
}

/// The polynomial of the pattern: `Σ g_t x^t` over the canonical figure.
pub fn poly_of_pattern(fig: &WeightedFigure) -> PatternPolynomial {
    let canon = canonicalize(fig);
    let arity = canon.dim().get();
    PatternPolynomial::from_terms(
        arity,
        canon.iter().map(|(p, w)| ([p.x as u32, p.y as u32], w)),
    )
}

/// The weighted figure whose points are the exponents of `p`.
pub fn figure_of_poly(p: &PatternPolynomial) -> Result<WeightedFigure> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dim = if p.arity == 1 { Dim::One } else { Dim::Two };
    let mut points = Vec::with_capacity(p.len());
    for (e, c) in p.terms() {
        let w = c
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument(format!("coefficient {c} does not fit a figure weight")))?;
        points.push((Point::new(e[0] as i64, e[1] as i64), w));
    }
    WeightedFigure::new(dim, points)
}

/// `Σ z_i · p_i`.
pub fn poly_combine(pairs: &[(PatternPolynomial, PatternPolynomial)]) -> Result<PatternPolynomial> {
    let Some((first, _)) = pairs.first() else {
        return Err(Error::InvalidArgument("empty combination".into()));
    };
    let arity = first.arity;
    let mut acc = PatternPolynomial::zero(arity);
    for (z, p) in pairs {
        z.require_arity(arity)?;
        p.require_arity(arity)?;
        acc = &acc + &(z * p);
    }
    Ok(acc)
}

//! Test-only univariate arithmetic over `Q`, independent of the integer
//! division routines it is used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PatternPolynomial;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    fn trimmed(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        RatPoly(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::trimmed(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_poly(p: &PatternPolynomial) -> Self {
        let deg = p.degree().unwrap_or(0) as usize;
        let mut v = vec![BigRational::zero(); deg + 1];
        for (e, c) in p.terms() {
            v[e[0] as usize] += BigRational::from_integer(c.clone());
        }
        Self::trimmed(v)
    }

    pub fn x_pow_minus_one(n: u64) -> Self {
        let mut v = vec![BigRational::zero(); n as usize + 1];
        v[0] = -BigRational::one();
        v[n as usize] = BigRational::one();
        RatPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::trimmed(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
                        - o.0.get(i).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatPoly(Vec::new());
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lead = d.0[dd].clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::trimmed(q), Self::trimmed(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// `(g, s, t)` with `s·self + t·o = g`.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (RatPoly::from_ints(&[1]), RatPoly(Vec::new()));
        let (mut t0, mut t1) = (RatPoly(Vec::new()), RatPoly::from_ints(&[1]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }
}

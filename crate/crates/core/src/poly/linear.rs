//! Strongly linear polynomials `l(v, n) = Σ_{i=0}^{n} x^{i·v}` and exact
//! division by them.
//!
//! Division changes coordinates by the unimodular basis `(u, u')` from
//! [`complete_basis`], where `v = ±k·u`. In those coordinates `l(v, n)` is
//! `1 + X^k + ... + X^{nk}`, monic and free of `Y`, so the dividend splits
//! into independent rows `Y^b · p_b(X)`, each divided separately.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::univariate::div_rem_monic;
use super::{figure_of_poly, PatternPolynomial};
use crate::error::{Error, Result};
use crate::lattice::{complete_basis, line_partition, primitive_directions, Direction, Point};

fn exp_point(e: [u32; 2]) -> Point {
    Point::new(e[0] as i64, e[1] as i64)
}

/// `l(v, n)`, shifted by a monomial so all exponents are nonnegative.
pub fn strongly_linear(v: Point, n: usize) -> Result<PatternPolynomial> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("strongly linear polynomials need n >= 1".into()));
    }
    let (p, _) = PatternPolynomial::from_laurent(2, (0..=n as i64).map(|i| (i * v, BigInt::one())));
    Ok(p)
}

/// Returns the quotient `q` with `q · l(v, n) = p` up to a monomial factor,
/// or `None` when `l(v, n)` does not divide `p`. The quotient is normalized
/// so that each variable has a term of exponent 0.
pub fn divide_by_strongly_linear(p: &PatternPolynomial, v: Point, n: usize) -> Result<Option<PatternPolynomial>> {
    p.require_arity(2)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("strongly linear polynomials need n >= 1".into()));
    }
    let basis = complete_basis(v)?;
    let (u, k, u_prime) = (basis.u.vector(), basis.k as usize, basis.u_prime);

    // Row b collects the terms with second coordinate b, keyed by the first.
    let mut rows: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let z = exp_point(e);
        // det(u, u') = 1, so z = a·u + b·u' with a = det(z, u'), b = det(u, z).
        let a = z.cross(u_prime) as i64;
        let b = u.cross(z) as i64;
        rows.entry(b).or_default().insert(a, c.clone());
    }

    let mut divisor = vec![BigInt::zero(); n * k + 1];
    for i in 0..=n {
        divisor[i * k] = BigInt::one();
    }

    let mut quotient_terms = Vec::new();
    for (b, row) in rows {
        let lo = *row.keys().next().expect("rows are nonempty");
        let hi = *row.keys().next_back().expect("rows are nonempty");
        let mut dense = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (a, c) in row {
            dense[(a - lo) as usize] = c;
        }
        let (q, r) = div_rem_monic(&dense, &divisor);
        if !r.is_empty() || q.is_empty() {
            return Ok(None);
        }
        for (i, c) in q.into_iter().enumerate() {
            if !c.is_zero() {
                let a = lo + i as i64;
                quotient_terms.push((a * u + b * u_prime, c));
            }
        }
    }
    let (q, _) = PatternPolynomial::from_laurent(2, quotient_terms);
    Ok(Some(q))
}

/// A verified factorization `p = l(direction, n) · quotient` (up to a monomial).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StronglyLinearDivisor {
    pub direction: Direction,
    pub n: usize,
    pub quotient: PatternPolynomial,
}

fn divisors_above_one(g: u64) -> Vec<u64> {
    (2..=g).filter(|d| g.is_multiple_of(*d)).collect()
}

/// All `(v, n)` with `l(v, n) | p`, in canonical direction order and
/// increasing `n`.
///
/// Candidate directions are those joining two support points: a divisor along
/// `v` forces some row of `p` to have two terms on one line parallel to `v`.
/// Candidate `n` satisfy `(n + 1) | Σ_line coefficients` for every line
/// parallel to `v` (substitute `x^v -> 1`), which for unit weights is the gcd
/// of line-intersection lengths; `n` is also at most the shortest row span.
/// The candidate set is therefore complete for every input, convex or not.
pub fn find_strongly_linear_divisors(p: &PatternPolynomial) -> Result<Vec<StronglyLinearDivisor>> {
    p.require_arity(2)?;
    let fig = figure_of_poly(p)?;
    let mut out = Vec::new();
    for d in primitive_directions(&fig)? {
        let part = line_partition(&fig, d)?;
        let g = part.runs.iter().fold(0u64, |g, r| g.gcd(&r.weight_sum.unsigned_abs()));
        let max_n = line_spans(&fig, d);
        let candidates: Vec<u64> = if g == 0 {
            (2..=max_n + 1).collect()
        } else {
            divisors_above_one(g).into_iter().filter(|m| m - 1 <= max_n).collect()
        };
        for m in candidates {
            let n = (m - 1) as usize;
            if let Some(quotient) = divide_by_strongly_linear(p, d.vector(), n)? {
                out.push(StronglyLinearDivisor { direction: d, n, quotient });
            }
        }
    }
    Ok(out)
}

/// Shortest extent, in steps of `d`, over the lines parallel to `d`.
fn line_spans(fig: &crate::lattice::WeightedFigure, d: Direction) -> u64 {
    let dv = d.vector();
    let step = dv.dot(dv);
    let mut spans: BTreeMap<i128, (i128, i128)> = BTreeMap::new();
    for pt in fig.points() {
        let pos = dv.dot(pt);
        let e = spans.entry(dv.cross(pt)).or_insert((pos, pos));
        e.0 = e.0.min(pos);
        e.1 = e.1.max(pos);
    }
    spans.values().map(|(lo, hi)| ((hi - lo) / step) as u64).min().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::WeightedFigure;
    use crate::poly::{parse_polynomial, poly_of_pattern};

    fn poly(s: &str) -> PatternPolynomial {
        parse_polynomial(s, Some(2)).unwrap()
    }

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    #[test]
    fn strongly_linear_examples() {
        assert_eq!(strongly_linear(Point::new(1, 0), 1).unwrap(), poly("1 + x"));
        assert_eq!(strongly_linear(Point::new(1, 1), 2).unwrap(), poly("1 + x*y + x^2*y^2"));
        assert_eq!(strongly_linear(Point::new(1, -1), 1).unwrap(), poly("y + x"));
        assert!(strongly_linear(Point::new(1, 0), 0).is_err());
        assert_eq!(strongly_linear(Point::ORIGIN, 1), Err(Error::ZeroVector));
    }

    #[test]
    fn division_examples() {
        let q = divide_by_strongly_linear(&poly("1 + x + y + x*y"), Point::new(1, 0), 1).unwrap();
        assert_eq!(q, Some(poly("1 + y")));
        assert_eq!(divide_by_strongly_linear(&poly("1 + x + y"), Point::new(1, 0), 1).unwrap(), None);

        let product = &poly("1 + x*y + x^2*y^2") * &poly("1 + x");
        let q = divide_by_strongly_linear(&product, Point::new(1, 1), 2).unwrap();
        assert_eq!(q, Some(poly("1 + x")));
    }

    #[test]
    fn division_along_anti_diagonal() {
        // (y + x)(1 + y) = y + x + y^2 + x*y
        let p = &poly("y + x") * &poly("1 + y");
        let q = divide_by_strongly_linear(&p, Point::new(1, -1), 1).unwrap().unwrap();
        assert!((&q * &poly("y + x")).equals_up_to_monomial(&p));
    }

    #[test]
    fn non_primitive_vector() {
        // l((2,0), 1) = 1 + x^2 divides 1 + x^2 + y + x^2*y.
        let p = poly("1 + x^2 + y + x^2*y");
        assert_eq!(divide_by_strongly_linear(&p, Point::new(2, 0), 1).unwrap(), Some(poly("1 + y")));
        assert_eq!(divide_by_strongly_linear(&p, Point::new(1, 0), 1).unwrap(), None);
    }

    #[test]
    fn find_examples() {
        let found = find_strongly_linear_divisors(&poly("1 + x + y + x*y")).unwrap();
        assert_eq!(
            found,
            vec![
                StronglyLinearDivisor { direction: dir(1, 0), n: 1, quotient: poly("1 + y") },
                StronglyLinearDivisor { direction: dir(0, 1), n: 1, quotient: poly("1 + x") },
            ]
        );
        // (1 + xy) does not divide: set xy = -1.
        assert_eq!(divide_by_strongly_linear(&poly("1 + x + y + x*y"), Point::new(1, 1), 1).unwrap(), None);

        assert!(find_strongly_linear_divisors(&poly("1 + x + y")).unwrap().is_empty());
        for d in [(1, 0), (0, 1), (1, -1)] {
            assert_eq!(divide_by_strongly_linear(&poly("1 + x + y"), Point::new(d.0, d.1), 1).unwrap(), None);
        }
    }

    #[test]
    fn hexagon_has_horizontal_divisor() {
        let mut pts = vec![(1, 0), (2, 0)];
        pts.extend((0..=5).map(|x| (x, 1)));
        pts.extend((1..=4).map(|x| (x, 2)));
        pts.extend([(2, 3), (3, 3)]);
        let p = poly_of_pattern(&WeightedFigure::from_coords(&pts).unwrap());
        let found = find_strongly_linear_divisors(&p).unwrap();
        assert!(found.iter().any(|d| d.direction == dir(1, 0) && d.n == 1));
        assert!(found.iter().all(|d| d.direction == dir(1, 0)));
    }

    #[test]
    fn weighted_square_of_binomial() {
        // (1 + x)^2 has three points on its line, yet 1 + x divides it.
        let p = poly("1 + 2*x + x^2");
        let found = find_strongly_linear_divisors(&p).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!((found[0].direction, found[0].n), (dir(1, 0), 1));
        assert_eq!(found[0].quotient, poly("1 + x"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = PatternPolynomial> {
            prop::collection::btree_map((0u32..4, 0u32..4), -3i64..=3, 1..7)
                .prop_map(|m| PatternPolynomial::from_terms(2, m.into_iter().map(|((a, b), c)| ([a, b], c))))
        }

        proptest! {
            #[test]
            fn quotient_reconstructs(p in arb_poly(), vx in -2i64..=2, vy in -2i64..=2, n in 1usize..4) {
                prop_assume!(!p.is_zero() && (vx != 0 || vy != 0));
                let v = Point::new(vx, vy);
                let l = strongly_linear(v, n).unwrap();
                // Divisible case, by construction.
                let prod = &p * &l;
                let q = divide_by_strongly_linear(&prod, v, n).unwrap().unwrap();
                prop_assert!((&q * &l).equals_up_to_monomial(&prod));
                prop_assert!(q.equals_up_to_monomial(&p));
                // Arbitrary case: any quotient must reconstruct.
                if let Some(q) = divide_by_strongly_linear(&p, v, n).unwrap() {
                    prop_assert!((&q * &l).equals_up_to_monomial(&p));
                }
            }

            #[test]
            fn finder_sees_constructed_divisors(p in arb_poly(), vx in -2i64..=2, vy in -2i64..=2, n in 1usize..4) {
                prop_assume!(!p.is_zero() && (vx != 0 || vy != 0));
                let v = Point::new(vx, vy);
                let (d, k) = Direction::from_vector(v).unwrap();
                prop_assume!(k == 1);
                let prod = &p * &strongly_linear(v, n).unwrap();
                let found = find_strongly_linear_divisors(&prod.normalize_monomial().0).unwrap();
                prop_assert!(found.iter().any(|f| f.direction == d && f.n == n));
            }
        }
    }
}

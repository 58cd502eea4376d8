//! Explicit witnesses of non-rigidity.
//!
//! In 1D a cyclotomic factor `Φ_n` of the pattern polynomial yields a nonzero
//! `n`-periodic integer sequence on which every weighted translate sums to 0.
//! In 2D a strongly linear divisor `l(v, n)` yields a non-periodic
//! configuration with a single abelian class.

mod io;
mod window;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{canonicalize, complete_basis, Dim, Direction, Point, WeightedFigure};
use crate::oracle::{abelian_pattern_complexity, constant_sum_sequence, is_period, period_vectors, ConstantSum};
use crate::poly::univariate::{div_rem_monic, to_dense};
use crate::poly::{cyclotomic, divide_by_strongly_linear, poly_of_pattern};

pub use io::{format_sequence, format_window, parse_sequence, parse_window};
pub use window::ConfigurationWindow;

/// One period of an integer sequence: `s(x) = values[x mod period]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSequence {
    pub period: usize,
    pub values: Vec<i64>,
}

impl PeriodicSequence {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a periodic sequence needs at least one value".into()));
        }
        Ok(PeriodicSequence { period: values.len(), values })
    }

    pub fn at(&self, x: i64) -> i64 {
        self.values[x.rem_euclid(self.period as i64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Weights of the canonical 1D figure as `(offset, weight)`.
pub(crate) fn offsets_1d(fig: &WeightedFigure) -> Result<Vec<(usize, i64)>> {
    fig.require_dim(Dim::One)?;
    Ok(canonicalize(fig).iter().map(|(p, w)| (p.x as usize, w)).collect())
}

/// The `n × n` circulant system `Σ_t g_t s(i + t) = 0` (indices mod `n`):
/// entry `(i, j)` is the sum of the `g_t` with `t ≡ j - i`.
pub fn circulant_matrix(fig: &WeightedFigure, n: usize) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    let offs = offsets_1d(fig)?;
    let mut row0 = vec![0i64; n];
    for (t, g) in offs {
        row0[t % n] += g;
    }
    Ok((0..n).map(|i| (0..n).map(|j| row0[(j + n - i) % n]).collect()).collect())
}

/// Kernel basis of an integer matrix over `Q`, one vector per free column,
/// with a 1 in its own free column and 0 in the others.
fn rational_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Dimension of the space of `n`-periodic sequences on which every weighted
/// translate sums to zero.
pub fn circulant_kernel_dim(fig: &WeightedFigure, n: usize) -> Result<usize> {
    Ok(rational_kernel(&circulant_matrix(fig, n)?).len())
}

/// Combinations `Σ t_j b_j` with integer `t` in `[-bound, bound]` are searched
/// exhaustively only below this many candidates.
const KERNEL_SEARCH_LIMIT: u64 = 2_000_000;

/// Integer kernel vector of smallest max-norm; ties go to the
/// lexicographically greatest, which puts a positive entry first.
fn smallest_integer_vector(basis: &[Vec<BigRational>]) -> Vec<i64> {
    let k = basis.len();
    let n = basis[0].len();
    let denom = basis
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| b.iter().map(|q| (q * BigRational::from_integer(denom.clone())).to_integer()).collect())
        .collect();

    // Fallback: first basis vector cleared of denominators and content.
    let fallback = {
        let v = &scaled[0];
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
        if out.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            out.iter_mut().for_each(|c| *c = -&*c);
        }
        out
    };
    let fallback_norm = fallback.iter().map(|c| c.abs()).max().unwrap();

    // The free entries of a kernel vector are its `t` values, so a vector of
    // max-norm `m` has every `|t_j| <= m`.
    let mut m = 1i64;
    while BigInt::from(m) <= fallback_norm && ((2 * m + 1) as u64).checked_pow(k as u32).is_some_and(|c| c <= KERNEL_SEARCH_LIMIT) {
        let mut best: Option<Vec<BigInt>> = None;
        let mut t = vec![-m; k];
        loop {
            if t.iter().any(|&x| x != 0) {
                let mut v = vec![BigInt::zero(); n];
                for (tj, b) in t.iter().zip(&scaled) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += bi * tj;
                    }
                }
                if v.iter().all(|c| (c % &denom).is_zero()) {
                    let v: Vec<BigInt> = v.into_iter().map(|c| c / &denom).collect();
                    if v.iter().all(|c| c.abs() <= BigInt::from(m)) && best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
            // Odometer over [-m, m]^k.
            let mut i = 0;
            while i < k && t[i] == m {
                t[i] = -m;
                i += 1;
            }
            if i == k {
                break;
            }
            t[i] += 1;
        }
        if let Some(b) = best {
            return b.iter().map(|c| c.to_i64().expect("small entry")).collect();
        }
        m += 1;
    }
    fallback.iter().map(|c| c.to_i64().expect("kernel entry fits i64")).collect()
}

/// A nonzero `n`-periodic integer sequence on which every weighted translate
/// of the 1D figure sums to zero. Requires `Φ_n` to divide the pattern
/// polynomial.
pub fn build_witness_1d(fig: &WeightedFigure, n: usize) -> Result<PeriodicSequence> {
    fig.require_dim(Dim::One)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let p = poly_of_pattern(fig);
    let phi = cyclotomic(n as u64)?;
    let (_, rem) = div_rem_monic(&to_dense(&p), &to_dense(&phi));
    if !rem.is_empty() {
        return Err(Error::NoWitness(format!("Φ_{n} = {phi} does not divide {p}")));
    }
    let basis = rational_kernel(&circulant_matrix(fig, n)?);
    if basis.is_empty() {
        return Err(Error::ConsistencyFault(format!("Φ_{n} divides {p} but the circulant kernel is trivial")));
    }
    let seq = PeriodicSequence::new(smallest_integer_vector(&basis))?;
    if seq.is_zero() || constant_sum_sequence(&seq, fig)? != ConstantSum::Constant(0) {
        return Err(Error::ConsistencyFault(format!("kernel vector {:?} fails verification", seq.values)));
    }
    Ok(seq)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The configuration `w(α u + b u') = (⌊α/k⌋ + b + [|b| prime]) mod (n+1)`
/// where `v = ±k·u` and `det(u, u') = 1`.
///
/// Along `v` the value steps through all residues, so every translate of
/// `l(v, n)` sees each letter once. The prime indicator breaks periodicity
/// transversal to `u`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRule {
    pub u: Direction,
    pub k: i64,
    pub u_prime: Point,
    pub n: usize,
}

impl WitnessRule {
    pub fn new(v: Point, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let b = complete_basis(v)?;
        Ok(WitnessRule { u: b.u, k: b.k, u_prime: b.u_prime, n })
    }

    pub fn alphabet(&self) -> Vec<String> {
        (0..=self.n).map(|i| i.to_string()).collect()
    }

    /// Coordinates `(α, b)` of `p` in the basis `(u, u')`.
    pub fn coords(&self, p: Point) -> (i64, i64) {
        (p.cross(self.u_prime) as i64, self.u.vector().cross(p) as i64)
    }

    pub fn value(&self, p: Point) -> u32 {
        let (alpha, b) = self.coords(p);
        let a = alpha.div_euclid(self.k);
        let bump = is_prime(b.unsigned_abs()) as i64;
        (a + b + bump).rem_euclid(self.n as i64 + 1) as u32
    }

    /// The period `(n+1)·k·u`.
    pub fn period(&self) -> Point {
        ((self.n as i64 + 1) * self.k) * self.u.vector()
    }
}

/// Something that can be materialized on a window.
#[derive(Copy, Clone, Debug)]
pub enum WitnessSource<'a> {
    Sequence(&'a PeriodicSequence),
    Rule(&'a WitnessRule),
}

/// Materializes a witness on the window at `origin` of the given size. A
/// sequence is tiled along the x-axis and needs height 1; its alphabet is the
/// sorted set of its values.
pub fn render_window(src: WitnessSource<'_>, origin: Point, size: (usize, usize)) -> Result<ConfigurationWindow> {
    let (w, h) = size;
    if w == 0 || h == 0 {
        return Err(Error::InvalidArgument(format!("window size {w}x{h} must be positive")));
    }
    match src {
        WitnessSource::Sequence(seq) => {
            if h != 1 || origin.y != 0 {
                return Err(Error::DimensionMismatch { expected: 1, found: 2 });
            }
            let mut values = seq.values.clone();
            values.sort_unstable();
            values.dedup();
            let alphabet = values.iter().map(i64::to_string).collect();
            ConfigurationWindow::from_fn(origin, w, 1, alphabet, |p| {
                values.binary_search(&seq.at(p.x)).expect("value is in the alphabet") as u32
            })
        }
        WitnessSource::Rule(rule) => ConfigurationWindow::from_fn(origin, w, h, rule.alphabet(), |p| rule.value(p)),
    }
}

/// The 2D witness for a strongly linear divisor `l(v, n)` of the pattern,
/// rendered on `[0, width) × [0, height)`.
///
/// Before returning, the window is checked to have abelian pattern complexity
/// 1 over the figure, to be periodic along `(n+1)·k·u` when that vector fits,
/// and to have no period vector independent of `u` with max-norm at most
/// `min(width, height) / 4`.
pub fn build_witness_2d(fig: &WeightedFigure, v: Point, n: usize, size: (usize, usize)) -> Result<ConfigurationWindow> {
    fig.require_dim(Dim::Two)?;
    let rule = WitnessRule::new(v, n)?;
    let p = poly_of_pattern(fig);
    if divide_by_strongly_linear(&p, v, n)?.is_none() {
        return Err(Error::NoWitness(format!("l({v}, {n}) does not divide {p}")));
    }
    let (w, h) = size;
    let (lo, hi) = fig.bounding_box();
    let span = hi - lo;
    if span.x as u64 >= w as u64 || span.y as u64 >= h as u64 {
        return Err(Error::WindowTooSmall(format!(
            "{w}x{h} cannot hold a translate of a figure spanning {}x{}",
            span.x + 1,
            span.y + 1
        )));
    }
    let win = render_window(WitnessSource::Rule(&rule), Point::ORIGIN, size)?;

    let classes = abelian_pattern_complexity(&win, fig)?;
    if classes != 1 {
        return Err(Error::ConsistencyFault(format!("witness window has {classes} abelian classes")));
    }
    let per = rule.period();
    if per.x.unsigned_abs() < w as u64 && per.y.unsigned_abs() < h as u64 && !is_period(&win, per) {
        return Err(Error::ConsistencyFault(format!("{per} is not a period of the witness")));
    }
    let bound = w.min(h) / 4;
    if bound >= 1 {
        let u = rule.u.vector();
        if let Some(q) = period_vectors(&win, bound as i64).into_iter().find(|q| q.cross(u) != 0) {
            return Err(Error::WindowTooSmall(format!(
                "window shows period {q}, independent of {u}; enlarge it to exhibit aperiodicity"
            )));
        }
    }
    Ok(win)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq_fig(w: &[i64]) -> WeightedFigure {
        WeightedFigure::from_weights_1d(w).unwrap()
    }

    fn fig(coords: &[(i64, i64)]) -> WeightedFigure {
        WeightedFigure::from_coords(coords).unwrap()
    }

    #[test]
    fn witness_1d_examples() {
        assert_eq!(build_witness_1d(&seq_fig(&[1, 1, 1]), 3).unwrap().values, vec![1, 0, -1]);
        assert_eq!(build_witness_1d(&seq_fig(&[1, -1, 1]), 6).unwrap().values, vec![1, 1, 0, -1, -1, 0]);
        assert_eq!(build_witness_1d(&seq_fig(&[1, 1]), 2).unwrap().values, vec![1, -1]);
    }

    #[test]
    fn witness_1d_needs_the_factor() {
        assert!(matches!(build_witness_1d(&seq_fig(&[1, 1, 1]), 2), Err(Error::NoWitness(_))));
        assert!(matches!(build_witness_1d(&seq_fig(&[2, 1]), 1), Err(Error::NoWitness(_))));
        let two_d = fig(&[(0, 0)]);
        assert!(matches!(build_witness_1d(&two_d, 1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn circulant_layout() {
        // g = (1, 1, 1) reduced mod 2 gives row (2, 1).
        assert_eq!(circulant_matrix(&seq_fig(&[1, 1, 1]), 2).unwrap(), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(circulant_kernel_dim(&seq_fig(&[1, 1, 1]), 3).unwrap(), 2);
        assert_eq!(circulant_kernel_dim(&seq_fig(&[1, 1, 1]), 4).unwrap(), 0);
        // Φ2·Φ3: kernel at n = 6 spans φ(2) + φ(3) = 3 dimensions.
        assert_eq!(circulant_kernel_dim(&seq_fig(&[1, 2, 2, 1]), 6).unwrap(), 3);
    }

    #[test]
    fn integer_vector_clears_denominators() {
        let half = BigRational::new(1.into(), 2.into());
        let basis = vec![vec![half, BigRational::one()]];
        assert_eq!(smallest_integer_vector(&basis), vec![1, 2]);
    }

    #[test]
    fn render_examples() {
        let s = PeriodicSequence::new(vec![1, 0, -1]).unwrap();
        let w = render_window(WitnessSource::Sequence(&s), Point::ORIGIN, (7, 1)).unwrap();
        assert_eq!(w.int_row(0).unwrap(), vec![1, 0, -1, 1, 0, -1, 1]);
        let w = render_window(WitnessSource::Sequence(&s), Point::new(-1, 0), (3, 1)).unwrap();
        assert_eq!(w.int_row(0).unwrap(), vec![-1, 1, 0]);
        assert!(render_window(WitnessSource::Sequence(&s), Point::ORIGIN, (0, 1)).is_err());

        let rule = WitnessRule::new(Point::new(1, 0), 1).unwrap();
        let w = render_window(WitnessSource::Rule(&rule), Point::ORIGIN, (2, 2)).unwrap();
        assert_eq!(w.int_row(0).unwrap(), vec![0, 1]);
        assert_eq!(w.int_row(1).unwrap(), vec![1, 0]);
    }

    #[test]
    fn rule_coordinates() {
        let rule = WitnessRule::new(Point::new(0, 1), 1).unwrap();
        assert_eq!(rule.u_prime, Point::new(-1, 0));
        assert_eq!(rule.coords(Point::new(3, 5)), (5, -3));
        let rule = WitnessRule::new(Point::new(2, 4), 2).unwrap();
        assert_eq!((rule.u.vector(), rule.k), (Point::new(1, 2), 2));
        assert_eq!(rule.period(), Point::new(6, 12));
    }

    #[test]
    fn square_witness() {
        let sq = fig(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let w = build_witness_2d(&sq, Point::new(1, 0), 1, (8, 8)).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let b = y as u64;
                let want = (x + y + is_prime(b) as i64).rem_euclid(2);
                assert_eq!(w.value(Point::new(x, y)).unwrap(), want);
            }
        }
        assert!(is_period(&w, Point::new(2, 0)));
        assert!((1..=6).all(|k| !is_period(&w, Point::new(0, k))));
    }

    #[test]
    fn product_witness_along_y() {
        let sq = fig(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let w = build_witness_2d(&sq, Point::new(0, 1), 1, (8, 8)).unwrap();
        assert_eq!(abelian_pattern_complexity(&w, &sq).unwrap(), 1);
        assert!((1..=6).all(|k| !is_period(&w, Point::new(k, 0))));
    }

    #[test]
    fn witness_2d_errors() {
        let tri = fig(&[(0, 0), (1, 0), (0, 1)]);
        for v in [(1, 0), (0, 1), (1, -1), (1, 1)] {
            assert!(matches!(build_witness_2d(&tri, Point::from(v), 1, (8, 8)), Err(Error::NoWitness(_))));
        }
        let sq = fig(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(matches!(build_witness_2d(&sq, Point::new(1, 0), 1, (1, 8)), Err(Error::WindowTooSmall(_))));
        assert!(build_witness_2d(&sq, Point::new(1, 0), 0, (8, 8)).is_err());
    }

    #[test]
    fn primes() {
        let got: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            /// Any product `Φ_n · q` has a verified witness at period `n`.
            #[test]
            fn witness_for_cyclotomic_multiples(n in 1usize..=12, q in prop::collection::vec(-2i64..=2, 1..4)) {
                prop_assume!(q.iter().any(|&c| c != 0) && *q.last().unwrap() != 0 && q[0] != 0);
                let phi = to_dense(&cyclotomic(n as u64).unwrap());
                let mut prod = vec![0i64; phi.len() + q.len() - 1];
                for (i, a) in phi.iter().enumerate() {
                    for (j, b) in q.iter().enumerate() {
                        prod[i + j] += a.to_i64().unwrap() * b;
                    }
                }
                let pts: Vec<(Point, i64)> = prod.iter().enumerate()
                    .filter(|(_, &w)| w != 0)
                    .map(|(i, &w)| (Point::new(i as i64, 0), w))
                    .collect();
                let f = WeightedFigure::new(Dim::One, pts).unwrap();
                let s = build_witness_1d(&f, n).unwrap();
                prop_assert!(!s.is_zero());
                prop_assert_eq!(s.period, n);
            }

            /// Every witness rule gives one abelian class for `l(v, n)` itself.
            #[test]
            fn rule_has_one_class(vx in -3i64..=3, vy in -3i64..=3, n in 1usize..=3) {
                prop_assume!(vx != 0 || vy != 0);
                let v = Point::new(vx, vy);
                let pts: Vec<Point> = (0..=n as i64).map(|i| i * v).collect();
                let f = WeightedFigure::unweighted(Dim::Two, pts).unwrap();
                let rule = WitnessRule::new(v, n).unwrap();
                let (lo, hi) = f.bounding_box();
                let size = ((hi.x - lo.x) as usize + 6, (hi.y - lo.y) as usize + 6);
                let win = render_window(WitnessSource::Rule(&rule), Point::new(-3, -3), size).unwrap();
                prop_assert_eq!(abelian_pattern_complexity(&win, &f).unwrap(), 1);
            }
        }
    }
}

//! Rigidity decisions with two independent certificates, and the extension
//! bound `N = Δ/δ + diam · |P| · (|A| + 2)`.
//!
//! For convex unweighted figures the geometric route (gcd of line lengths in
//! every direction) and the algebraic route (strongly linear divisors of the
//! pattern polynomial) are both run. They are equivalent, so a disagreement is
//! reported as [`Error::ConsistencyFault`] rather than resolved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{check_convex, convex_hull, line_partition, primitive_directions, Dim, Direction, Point, WeightedFigure};
use crate::poly::{find_strongly_linear_divisors, poly_of_pattern, strongly_linear, StronglyLinearDivisor};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RigidityStatus {
    Rigid,
    NotRigid,
    Unknown,
}

impl fmt::Display for RigidityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RigidityStatus::Rigid => "Rigid",
            RigidityStatus::NotRigid => "NotRigid",
            RigidityStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionEntry {
    pub direction: Direction,
    pub gcd: usize,
    pub contiguous: bool,
}

/// gcd of line-intersection lengths for every primitive direction of the figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricCertificate {
    pub directions: Vec<DirectionEntry>,
}

impl GeometricCertificate {
    pub fn relatively_prime(&self) -> bool {
        self.directions.iter().all(|e| e.gcd == 1)
    }
}

/// `pattern = l(direction, n) · quotient` up to a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicCertificate {
    pub direction: Direction,
    pub n: usize,
    pub divisor: String,
    pub quotient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub status: RigidityStatus,
    pub geometric: Option<GeometricCertificate>,
    pub algebraic: Option<AlgebraicCertificate>,
    pub reason: Option<String>,
}

/// Line-length table over all primitive directions, in canonical order.
pub fn geometric_table(fig: &WeightedFigure) -> Result<GeometricCertificate> {
    let dirs: Vec<Direction> = primitive_directions(fig)?.into_iter().collect();
    // Order-preserving parallel map keeps the table deterministic.
    let directions = dirs
        .par_iter()
        .map(|&d| {
            let part = line_partition(fig, d)?;
            Ok(DirectionEntry { direction: d, gcd: part.gcd(), contiguous: part.all_contiguous() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeometricCertificate { directions })
}

/// Checks that the two routes describe the same directions. For each direction
/// the set of `n + 1` found algebraically must equal the divisors `> 1` of the
/// line gcd.
pub fn cross_check(table: &GeometricCertificate, divisors: &[StronglyLinearDivisor]) -> Result<()> {
    let mut algebraic: BTreeMap<Direction, BTreeSet<usize>> = BTreeMap::new();
    for d in divisors {
        algebraic.entry(d.direction).or_default().insert(d.n + 1);
    }
    let mut geometric: BTreeMap<Direction, BTreeSet<usize>> = BTreeMap::new();
    for e in &table.directions {
        let set: BTreeSet<usize> = (2..=e.gcd).filter(|m| e.gcd % m == 0).collect();
        if !set.is_empty() {
            geometric.insert(e.direction, set);
        }
    }
    if algebraic == geometric {
        return Ok(());
    }
    let show = |m: &BTreeMap<Direction, BTreeSet<usize>>| {
        m.iter()
            .map(|(d, s)| format!("{d}:{s:?}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Err(Error::ConsistencyFault(format!(
        "geometric route gives {{{}}} but algebraic route gives {{{}}}",
        show(&geometric),
        show(&algebraic)
    )))
}

fn certificate(d: &StronglyLinearDivisor) -> Result<AlgebraicCertificate> {
    Ok(AlgebraicCertificate {
        direction: d.direction,
        n: d.n,
        divisor: strongly_linear(d.direction.vector(), d.n)?.to_string(),
        quotient: d.quotient.to_string(),
    })
}

/// Decides abelian rigidity of a 2D figure.
///
/// Convex unweighted figures get a definite answer backed by both routes.
/// Other figures are `NotRigid` when a strongly linear divisor exists and
/// `Unknown` otherwise, since the converse is only known for convex patterns.
pub fn decide_rigidity(fig: &WeightedFigure) -> Result<RigidityVerdict> {
    fig.require_dim(Dim::Two)?;
    let divisors = find_strongly_linear_divisors(&poly_of_pattern(fig))?;
    let algebraic = divisors.first().map(certificate).transpose()?;
    let convex = check_convex(fig)?;
    let unweighted = fig.is_unweighted();

    if convex && unweighted {
        let table = geometric_table(fig)?;
        cross_check(&table, &divisors)?;
        let status = if table.relatively_prime() { RigidityStatus::Rigid } else { RigidityStatus::NotRigid };
        return Ok(RigidityVerdict { status, geometric: Some(table), algebraic, reason: None });
    }

    if algebraic.is_some() {
        return Ok(RigidityVerdict { status: RigidityStatus::NotRigid, geometric: None, algebraic, reason: None });
    }
    let why = match (convex, unweighted) {
        (false, false) => "figure is neither convex nor unweighted",
        (false, true) => "figure is not convex",
        _ => "figure is weighted",
    };
    Ok(RigidityVerdict {
        status: RigidityStatus::Unknown,
        geometric: None,
        algebraic: None,
        reason: Some(format!(
            "{why} and has no strongly linear divisor; rigidity is only characterized for convex unweighted figures"
        )),
    })
}

/// Where Δ came from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaSource {
    Supplied,
    Estimated,
}

/// Terms of `N = Δ/δ + diam · |P| · (|A| + 2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionBound {
    /// Spacing of neighbouring lines along the tightest hull edge.
    pub delta: f64,
    /// Primitive direction of that edge.
    pub delta_edge: Point,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    #[serde(rename = "Delta_source")]
    pub big_delta_source: DeltaSource,
    pub diameter: f64,
    pub size: usize,
    pub alphabet: usize,
    #[serde(rename = "N")]
    pub n: f64,
}

impl ExtensionBound {
    /// Recomputes `N` from the stored fields.
    pub fn compose(&self) -> f64 {
        self.big_delta / self.delta + self.diameter * self.size as f64 * (self.alphabet as f64 + 2.0)
    }
}

fn norm(p: Point) -> f64 {
    (p.dot(p) as f64).sqrt()
}

fn spacing(edge: Point) -> (f64, Point) {
    let (d, _) = Direction::from_vector(edge).expect("hull edges are nonzero");
    (1.0 / norm(d.vector()), d.vector())
}

/// Default Δ: for each hull vertex with edges `e`, `f`, a unit step of one
/// neighbouring line moves the vertex by at most `max(δ_e, δ_f) / sin θ`,
/// where θ is the angle between the edges. Δ is the largest such value.
fn estimate_big_delta(hull: &[Point]) -> f64 {
    let m = hull.len();
    (0..m)
        .map(|i| {
            let e = hull[i] - hull[(i + m - 1) % m];
            let f = hull[(i + 1) % m] - hull[i];
            let sin = e.cross(f).unsigned_abs() as f64 / (norm(e) * norm(f));
            spacing(e).0.max(spacing(f).0) / sin
        })
        .fold(0.0, f64::max)
}

/// The bound `N(|A|, P)` for a convex 2D figure.
pub fn extension_bound(
    fig: &WeightedFigure,
    alphabet_size: usize,
    delta_override: Option<Rational64>,
) -> Result<ExtensionBound> {
    fig.require_dim(Dim::Two)?;
    if alphabet_size == 0 {
        return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
    }
    if !check_convex(fig)? {
        return Err(Error::NotConvex);
    }
    let hull = convex_hull(fig.points());
    if hull.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let m = hull.len();
    let (delta, delta_edge) = (0..m)
        .map(|i| spacing(hull[(i + 1) % m] - hull[i]))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("hull has edges");
    let (big_delta, big_delta_source) = match delta_override {
        Some(q) if q < Rational64::from_integer(0) => {
            return Err(Error::InvalidArgument(format!("Delta must be nonnegative, got {q}")))
        }
        Some(q) => (q.to_f64().expect("finite rational"), DeltaSource::Supplied),
        None => (estimate_big_delta(&hull), DeltaSource::Estimated),
    };
    let diameter = hull
        .iter()
        .flat_map(|&a| hull.iter().map(move |&b| norm(a - b)))
        .fold(0.0, f64::max);
    let mut out = ExtensionBound {
        delta,
        delta_edge,
        big_delta,
        big_delta_source,
        diameter,
        size: fig.len(),
        alphabet: alphabet_size,
        n: 0.0,
    };
    out.n = out.compose();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::convex_closure;
    use crate::poly::parse_polynomial;

    fn fig(coords: &[(i64, i64)]) -> WeightedFigure {
        WeightedFigure::from_coords(coords).unwrap()
    }

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn diamond(r: i64) -> WeightedFigure {
        let mut pts = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if x.abs() + y.abs() <= r {
                    pts.push((x, y));
                }
            }
        }
        fig(&pts)
    }

    fn hexagon() -> WeightedFigure {
        let mut pts = vec![(1, 0), (2, 0)];
        pts.extend((0..=5).map(|x| (x, 1)));
        pts.extend((1..=4).map(|x| (x, 2)));
        pts.extend([(2, 3), (3, 3)]);
        fig(&pts)
    }

    #[test]
    fn triangle_is_rigid() {
        let v = decide_rigidity(&fig(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(v.status, RigidityStatus::Rigid);
        let table = v.geometric.unwrap();
        let got: Vec<_> = table.directions.iter().map(|e| (e.direction, e.gcd)).collect();
        assert_eq!(got, vec![(dir(1, 0), 1), (dir(0, 1), 1), (dir(1, -1), 1)]);
        assert!(v.algebraic.is_none());
    }

    #[test]
    fn square_is_not_rigid() {
        let v = decide_rigidity(&fig(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(v.status, RigidityStatus::NotRigid);
        let cert = v.algebraic.unwrap();
        assert_eq!((cert.direction, cert.n), (dir(1, 0), 1));
        assert_eq!(cert.divisor, "1 + x");
        assert_eq!(cert.quotient, "1 + y");
    }

    #[test]
    fn diamonds_are_rigid() {
        for r in 1..=3 {
            assert_eq!(decide_rigidity(&diamond(r)).unwrap().status, RigidityStatus::Rigid, "radius {r}");
        }
    }

    #[test]
    fn hexagon_fails_along_x() {
        let v = decide_rigidity(&hexagon()).unwrap();
        assert_eq!(v.status, RigidityStatus::NotRigid);
        assert_eq!(v.algebraic.unwrap().direction, dir(1, 0));
        let bad: Vec<_> = v.geometric.unwrap().directions.into_iter().filter(|e| e.gcd > 1).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].direction, bad[0].gcd), (dir(1, 0), 2));
    }

    #[test]
    fn single_point_is_rigid() {
        let v = decide_rigidity(&fig(&[(4, 4)])).unwrap();
        assert_eq!(v.status, RigidityStatus::Rigid);
        assert!(v.geometric.unwrap().directions.is_empty());
    }

    #[test]
    fn outside_hypotheses() {
        // Non-convex with a divisor: (1 + x)(1 + x^2 y^2).
        let nc = fig(&[(0, 0), (1, 0), (2, 2), (3, 2)]);
        assert!(!check_convex(&nc).unwrap());
        let v = decide_rigidity(&nc).unwrap();
        assert_eq!(v.status, RigidityStatus::NotRigid);
        assert_eq!(v.algebraic.unwrap().direction, dir(1, 0));

        let l_shape = fig(&[(0, 0), (1, 0), (0, 1), (0, 2), (2, 0)]);
        assert!(!check_convex(&l_shape).unwrap());
        let v = decide_rigidity(&l_shape).unwrap();
        assert_eq!(v.status, RigidityStatus::Unknown);
        assert!(v.reason.unwrap().contains("not convex"));

        let weighted = WeightedFigure::new(Dim::Two, [(Point::new(0, 0), 2), (Point::new(1, 0), 1)]).unwrap();
        let v = decide_rigidity(&weighted).unwrap();
        assert_eq!(v.status, RigidityStatus::Unknown);
        assert!(v.reason.unwrap().contains("weighted"));
    }

    #[test]
    fn one_dimensional_input_is_rejected() {
        let f = WeightedFigure::from_weights_1d(&[1, 1]).unwrap();
        assert!(matches!(decide_rigidity(&f), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn disagreement_is_a_fault() {
        let table = GeometricCertificate {
            directions: vec![DirectionEntry { direction: dir(1, 0), gcd: 2, contiguous: true }],
        };
        assert!(matches!(cross_check(&table, &[]), Err(Error::ConsistencyFault(_))));
        let found = StronglyLinearDivisor {
            direction: dir(1, 0),
            n: 1,
            quotient: parse_polynomial("1", Some(2)).unwrap(),
        };
        assert!(cross_check(&table, &[found]).is_ok());
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide_rigidity(&fig(&[(0, 0), (1, 0)])).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"status":"NotRigid","geometric":{"directions":[{"direction":[1,0],"gcd":2,"contiguous":true}]},"algebraic":{"direction":[1,0],"n":1,"divisor":"1 + x","quotient":"1"},"reason":null}"#
        );
    }

    #[test]
    fn bound_examples() {
        let tri = fig(&[(0, 0), (1, 0), (0, 1)]);
        let b = extension_bound(&tri, 2, Some(Rational64::from_integer(2))).unwrap();
        assert!((b.delta - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(b.delta_edge, Point::new(1, -1));
        assert!((b.n - 14.0 * 2f64.sqrt()).abs() < 1e-9);

        let sq = fig(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let b = extension_bound(&sq, 1, Some(Rational64::from_integer(0))).unwrap();
        assert!((b.delta - 1.0).abs() < 1e-12);
        assert!((b.n - 12.0 * 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(b.n, b.compose());

        // Square: right angles, unit spacing on every edge.
        let est = extension_bound(&sq, 1, None).unwrap();
        assert_eq!(est.big_delta_source, DeltaSource::Estimated);
        assert!((est.big_delta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bound_errors() {
        let seg = fig(&[(0, 0), (1, 0)]);
        assert_eq!(extension_bound(&seg, 2, None), Err(Error::DegenerateHull));
        let nc = fig(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(extension_bound(&nc, 2, None), Err(Error::NotConvex));
        let tri = fig(&[(0, 0), (1, 0), (0, 1)]);
        assert!(extension_bound(&tri, 0, None).is_err());
        assert!(extension_bound(&tri, 2, Some(Rational64::new(-1, 2))).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn convex_fig(pts: Vec<(i64, i64)>) -> WeightedFigure {
            WeightedFigure::unweighted(Dim::Two, convex_closure(pts.into_iter().map(Point::from))).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn routes_agree_and_certificates_reconstruct(pts in prop::collection::vec((0i64..=6, 0i64..=6), 1..6)) {
                let f = convex_fig(pts);
                let v = decide_rigidity(&f).unwrap();
                let table = v.geometric.as_ref().unwrap();
                prop_assert_eq!(table.directions.len(), primitive_directions(&f).unwrap().len());
                match v.status {
                    RigidityStatus::Rigid => {
                        prop_assert!(table.directions.iter().all(|e| e.gcd == 1));
                        prop_assert!(v.algebraic.is_none());
                    }
                    RigidityStatus::NotRigid => {
                        let c = v.algebraic.as_ref().unwrap();
                        let l = strongly_linear(c.direction.vector(), c.n).unwrap();
                        let q = parse_polynomial(&c.quotient, Some(2)).unwrap();
                        prop_assert!((&l * &q).equals_up_to_monomial(&poly_of_pattern(&f)));
                    }
                    RigidityStatus::Unknown => prop_assert!(false, "convex unweighted input gave Unknown"),
                }
            }

            #[test]
            fn bound_is_monotone(
                pts in prop::collection::vec((0i64..=6, 0i64..=6), 3..6),
                a in 1usize..6, q in 0i64..20,
            ) {
                let f = convex_fig(pts);
                prop_assume!(convex_hull(f.points()).len() >= 3);
                let base = extension_bound(&f, a, Some(Rational64::from_integer(q))).unwrap();
                let more_a = extension_bound(&f, a + 1, Some(Rational64::from_integer(q))).unwrap();
                let more_d = extension_bound(&f, a, Some(Rational64::from_integer(q + 1))).unwrap();
                prop_assert!(more_a.n >= base.n);
                prop_assert!(more_d.n >= base.n);
                prop_assert!((base.n - base.compose()).abs() < 1e-9);
            }
        }
    }
}

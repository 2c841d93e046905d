//! Ground spaces: points, metric rules, and exact metric evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of one of the supported ground sets.
///
/// Coordinates are finite doubles and points compare by exact coordinate
/// equality. `Seq` holds a finitely supported real sequence keyed by index;
/// zero entries are never stored, so two equal sequences have equal maps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Point {
    Scalar(f64),
    Vector(Vec<f64>),
    Seq(BTreeMap<usize, f64>),
}

impl Point {
    pub fn scalar(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidPoint(format!("non-finite scalar {value}")));
        }
        Ok(Point::Scalar(value))
    }

    pub fn vector(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(Error::InvalidPoint("vector of dimension 0".into()));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate {c}")));
        }
        Ok(Point::Vector(coords))
    }

    /// Shorthand for a point of the plane. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Point::vector(vec![x, y]).expect("finite plane point")
    }

    /// Builds a finitely supported sequence, dropping zero entries.
    pub fn seq(entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if !v.is_finite() {
                return Err(Error::InvalidPoint(format!("non-finite entry {v} at {i}")));
            }
            if v != 0.0 {
                map.insert(i, v);
            } else {
                map.remove(&i);
            }
        }
        Ok(Point::Seq(map))
    }

    /// A sequence given by its leading entries, indexed from 1.
    pub fn seq_dense(values: &[f64]) -> Result<Self> {
        Point::seq(values.iter().enumerate().map(|(i, v)| (i + 1, *v)))
    }

    pub fn kind(&self) -> PointKind {
        match self {
            Point::Scalar(_) => PointKind::Scalar,
            Point::Vector(c) => PointKind::Vector(c.len()),
            Point::Seq(_) => PointKind::Seq,
        }
    }

    pub fn origin(kind: PointKind) -> Self {
        match kind {
            PointKind::Scalar => Point::Scalar(0.0),
            PointKind::Vector(d) => Point::Vector(vec![0.0; d]),
            PointKind::Seq => Point::Seq(BTreeMap::new()),
        }
    }

    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            Point::Scalar(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_plane(&self) -> Option<(f64, f64)> {
        match self {
            Point::Vector(c) if c.len() == 2 => Some((c[0], c[1])),
            _ => None,
        }
    }

    fn bits(v: f64) -> u64 {
        // -0.0 and 0.0 are the same point
        if v == 0.0 {
            0
        } else {
            v.to_bits()
        }
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Point::Scalar(a), Point::Scalar(b)) => a == b,
            (Point::Vector(a), Point::Vector(b)) => a == b,
            (Point::Seq(a), Point::Seq(b)) => a == b,
            _ => false,
        }
    }
}

// Points are finite by construction, so equality is reflexive.
impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Point::Scalar(v) => {
                0u8.hash(state);
                Self::bits(*v).hash(state);
            }
            Point::Vector(c) => {
                1u8.hash(state);
                c.len().hash(state);
                for v in c {
                    Self::bits(*v).hash(state);
                }
            }
            Point::Seq(m) => {
                2u8.hash(state);
                for (i, v) in m {
                    i.hash(state);
                    Self::bits(*v).hash(state);
                }
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Scalar(v) => write!(f, "{v}"),
            Point::Vector(c) => {
                write!(f, "(")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Point::Seq(m) => {
                write!(f, "[")?;
                for (k, (i, v)) in m.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{i}:{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Scalar,
    Vector(usize),
    Seq,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::Scalar => write!(f, "scalar"),
            PointKind::Vector(d) => write!(f, "vector[{d}]"),
            PointKind::Seq => write!(f, "finite-support sequence"),
        }
    }
}

/// The named metrics available on ground spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricRule {
    /// `‖x − y‖₂` on ℝᵈ.
    EuclideanNorm,
    /// `|x − y|` on ℝ.
    UsualLine,
    /// The discrete 0-1 metric on any point kind.
    ZeroOne,
    /// Euclidean along rays through the origin, `‖x‖ + ‖y‖` otherwise.
    FrenchMetro,
    /// `sup_n |x_n − y_n|` on finitely supported sequences.
    SupSeq,
}

impl MetricRule {
    pub const ALL: [MetricRule; 5] = [
        MetricRule::EuclideanNorm,
        MetricRule::UsualLine,
        MetricRule::ZeroOne,
        MetricRule::FrenchMetro,
        MetricRule::SupSeq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricRule::EuclideanNorm => "euclidean",
            MetricRule::UsualLine => "usual-line",
            MetricRule::ZeroOne => "zero-one",
            MetricRule::FrenchMetro => "french-metro",
            MetricRule::SupSeq => "sup-seq",
        }
    }
}

impl fmt::Display for MetricRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "metric",
                name: s.to_string(),
            })
    }
}

/// A metric space descriptor: the kind of points and the metric on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSpace {
    kind: PointKind,
    rule: MetricRule,
}

impl GroundSpace {
    pub fn new(kind: PointKind, rule: MetricRule) -> Result<Self> {
        let ok = match rule {
            MetricRule::EuclideanNorm => matches!(kind, PointKind::Vector(d) if d >= 1),
            MetricRule::UsualLine => kind == PointKind::Scalar,
            MetricRule::ZeroOne => !matches!(kind, PointKind::Vector(0)),
            MetricRule::FrenchMetro => kind == PointKind::Vector(2),
            MetricRule::SupSeq => kind == PointKind::Seq,
        };
        if ok {
            Ok(GroundSpace { kind, rule })
        } else {
            Err(Error::IncompatibleSpace { rule, kind })
        }
    }

    pub fn real_line() -> Self {
        GroundSpace {
            kind: PointKind::Scalar,
            rule: MetricRule::UsualLine,
        }
    }

    pub fn euclidean_plane() -> Self {
        GroundSpace {
            kind: PointKind::Vector(2),
            rule: MetricRule::EuclideanNorm,
        }
    }

    pub fn french_metro() -> Self {
        GroundSpace {
            kind: PointKind::Vector(2),
            rule: MetricRule::FrenchMetro,
        }
    }

    /// The reals with the discrete 0-1 metric.
    pub fn discrete_line() -> Self {
        GroundSpace {
            kind: PointKind::Scalar,
            rule: MetricRule::ZeroOne,
        }
    }

    pub fn sup_seq() -> Self {
        GroundSpace {
            kind: PointKind::Seq,
            rule: MetricRule::SupSeq,
        }
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn rule(&self) -> MetricRule {
        self.rule
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.kind() == self.kind {
            Ok(())
        } else {
            Err(Error::PointKind {
                expected: self.kind,
                found: x.kind(),
            })
        }
    }

    pub fn origin(&self) -> Point {
        Point::origin(self.kind)
    }

    /// `d(x, y)` under this space's metric.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(match (self.rule, x, y) {
            (MetricRule::ZeroOne, _, _) => {
                if x == y {
                    0.0
                } else {
                    1.0
                }
            }
            (MetricRule::UsualLine, Point::Scalar(a), Point::Scalar(b)) => (a - b).abs(),
            (MetricRule::EuclideanNorm, Point::Vector(a), Point::Vector(b)) => euclid(a, b),
            (MetricRule::FrenchMetro, Point::Vector(a), Point::Vector(b)) => french_metro(a, b),
            (MetricRule::SupSeq, Point::Seq(a), Point::Seq(b)) => sup_seq(a, b),
            // kinds were checked against the rule at construction
            _ => unreachable!("space {self:?} admitted incompatible points"),
        })
    }

    /// `d(x, 0)`.
    pub fn norm(&self, x: &Point) -> Result<f64> {
        self.distance(x, &self.origin())
    }
}

pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Exact collinearity with the origin: the cross product vanishes.
pub(crate) fn collinear(a: &[f64], b: &[f64]) -> bool {
    a[0] * b[1] - a[1] * b[0] == 0.0
}

fn french_metro(a: &[f64], b: &[f64]) -> f64 {
    if collinear(a, b) {
        euclid(a, b)
    } else {
        norm2(a) + norm2(b)
    }
}

fn sup_seq(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> f64 {
    let mut sup = 0.0f64;
    for (i, v) in a {
        sup = sup.max((v - b.get(i).copied().unwrap_or(0.0)).abs());
    }
    for (i, v) in b {
        if !a.contains_key(i) {
            sup = sup.max(v.abs());
        }
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_pythagorean() {
        let s = GroundSpace::euclidean_plane();
        assert_eq!(
            s.distance(&Point::xy(0.0, 0.0), &Point::xy(3.0, 4.0)).unwrap(),
            5.0
        );
    }

    #[test]
    fn french_metro_cases() {
        let s = GroundSpace::french_metro();
        // off-ray: ‖x‖ + ‖y‖
        assert_eq!(
            s.distance(&Point::xy(1.0, 0.0), &Point::xy(0.0, 1.0)).unwrap(),
            2.0
        );
        // same ray: Euclidean
        let d = s.distance(&Point::xy(1.0, 1.0), &Point::xy(2.0, 2.0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        // opposite rays are still one line through the origin
        let d = s.distance(&Point::xy(1.0, 0.0), &Point::xy(-2.0, 0.0)).unwrap();
        assert_eq!(d, 3.0);
        // origin is collinear with everything
        let d = s.distance(&Point::xy(0.0, 0.0), &Point::xy(3.0, 4.0)).unwrap();
        assert_eq!(d, 5.0);
    }

    #[test]
    fn zero_one_discrete() {
        let s = GroundSpace::discrete_line();
        let three = Point::Scalar(3.0);
        assert_eq!(s.distance(&three, &three).unwrap(), 0.0);
        assert_eq!(
            s.distance(&three, &Point::Scalar(std::f64::consts::PI)).unwrap(),
            1.0
        );
    }

    #[test]
    fn sup_seq_coordinatewise() {
        let s = GroundSpace::sup_seq();
        let x = Point::seq_dense(&[1.0]).unwrap();
        let y = Point::seq_dense(&[0.0, 2.0]).unwrap();
        assert_eq!(s.distance(&x, &y).unwrap(), 2.0);
    }

    #[test]
    fn seq_drops_zero_entries() {
        let x = Point::seq([(1, 0.0), (4, 2.0), (9, 0.0)]).unwrap();
        assert_eq!(x, Point::seq([(4, 2.0)]).unwrap());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let s = GroundSpace::real_line();
        let err = s.distance(&Point::Scalar(1.0), &Point::xy(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::PointKind { .. }));
        assert!(err.to_string().contains("expects scalar"));
    }

    #[test]
    fn incompatible_rule_rejected() {
        assert!(GroundSpace::new(PointKind::Vector(3), MetricRule::FrenchMetro).is_err());
        assert!(GroundSpace::new(PointKind::Scalar, MetricRule::SupSeq).is_err());
        assert!(GroundSpace::new(PointKind::Seq, MetricRule::ZeroOne).is_ok());
        assert!(GroundSpace::new(PointKind::Vector(3), MetricRule::EuclideanNorm).is_ok());
    }

    #[test]
    fn negative_zero_is_the_origin() {
        use std::collections::hash_map::DefaultHasher;
        let a = Point::xy(-0.0, 0.0);
        let b = Point::xy(0.0, 0.0);
        assert_eq!(a, b);
        let h = |p: &Point| {
            let mut s = DefaultHasher::new();
            p.hash(&mut s);
            s.finish()
        };
        assert_eq!(h(&a), h(&b));
    }

    #[test]
    fn parse_rule_names() {
        for r in MetricRule::ALL {
            assert_eq!(r.name().parse::<MetricRule>().unwrap(), r);
        }
        assert!("manhattan".parse::<MetricRule>().is_err());
    }
}

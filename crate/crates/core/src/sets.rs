//! Closed sets given by exact distance functionals, finite probes of
//! (possibly infinite) sets, excess, and ε-enlargement membership.

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Decision;
use crate::metric::{collinear, norm2, GroundSpace, MetricRule, Point, PointKind};
use crate::verdict::{Resolution, Verdict, Witness};

/// Margin around `ε` inside which a non-discrete comparison `d < ε` is
/// reported as undecided.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// A nonempty closed set with an exact distance functional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ClosedSet {
    /// A nonempty, duplicate-free finite set.
    FinitePoints(Vec<Point>),
    /// `[lo, hi]` on the line; endpoints may be infinite.
    Interval {
        lo: f64,
        hi: f64,
    },
    /// `{(x, slope·x)}` in the plane.
    LineThroughOrigin {
        slope: f64,
    },
    /// `ℕ × {0} = {(1,0), (2,0), …}` in the plane.
    AxisLattice,
    /// The closed ball `{x : d(x, 0) ≤ radius}`.
    OriginBall {
        radius: f64,
    },
    WholeSpace,
    UnionOf(Vec<ClosedSet>),
}

impl ClosedSet {
    /// A finite set; duplicates are dropped, first occurrence kept.
    pub fn finite(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut out: Vec<Point> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for p in points {
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidSet("finite set must be nonempty".into()));
        }
        Ok(ClosedSet::FinitePoints(out))
    }

    pub fn scalars(values: &[f64]) -> Result<Self> {
        let pts = values
            .iter()
            .map(|v| Point::scalar(*v))
            .collect::<Result<Vec<_>>>()?;
        Self::finite(pts)
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidSet(format!(
                "interval [{lo}, {hi}] is empty or malformed"
            )));
        }
        Ok(ClosedSet::Interval { lo, hi })
    }

    pub fn line(slope: f64) -> Result<Self> {
        if !slope.is_finite() {
            return Err(Error::InvalidSet(format!("line slope {slope} is not finite")));
        }
        Ok(ClosedSet::LineThroughOrigin { slope })
    }

    pub fn ball(radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidSet(format!("ball radius {radius} is invalid")));
        }
        Ok(ClosedSet::OriginBall { radius })
    }

    pub fn union(members: Vec<ClosedSet>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidSet("union of no sets".into()));
        }
        Ok(ClosedSet::UnionOf(members))
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ClosedSet::FinitePoints(_) => "finite-points",
            ClosedSet::Interval { .. } => "interval",
            ClosedSet::LineThroughOrigin { .. } => "line-through-origin",
            ClosedSet::AxisLattice => "axis-lattice",
            ClosedSet::OriginBall { .. } => "origin-ball",
            ClosedSet::WholeSpace => "whole-space",
            ClosedSet::UnionOf(_) => "union",
        }
    }

    /// Checks that the set lives in `space`.
    pub fn validate(&self, space: &GroundSpace) -> Result<()> {
        let plane = |name: &str| {
            if space.kind() == PointKind::Vector(2) {
                Ok(())
            } else {
                Err(Error::InvalidSet(format!(
                    "{name} needs the plane, space has {} points",
                    space.kind()
                )))
            }
        };
        match self {
            ClosedSet::FinitePoints(pts) => {
                if pts.is_empty() {
                    return Err(Error::InvalidSet("finite set must be nonempty".into()));
                }
                pts.iter().try_for_each(|p| space.check_point(p))
            }
            ClosedSet::Interval { .. } => {
                if space.kind() == PointKind::Scalar {
                    Ok(())
                } else {
                    Err(Error::InvalidSet("interval needs scalar points".into()))
                }
            }
            ClosedSet::LineThroughOrigin { .. } => plane("line"),
            ClosedSet::AxisLattice => plane("axis lattice"),
            ClosedSet::OriginBall { .. } | ClosedSet::WholeSpace => Ok(()),
            ClosedSet::UnionOf(members) => members.iter().try_for_each(|m| m.validate(space)),
        }
    }

    /// Exact membership.
    pub fn contains(&self, space: &GroundSpace, x: &Point) -> Result<bool> {
        space.check_point(x)?;
        Ok(match self {
            ClosedSet::FinitePoints(pts) => pts.contains(x),
            ClosedSet::Interval { lo, hi } => match x {
                Point::Scalar(v) => *lo <= *v && *v <= *hi,
                _ => return Err(self.unsupported(space)),
            },
            ClosedSet::LineThroughOrigin { slope } => match x.as_plane() {
                Some((a, b)) => b == slope * a,
                None => return Err(self.unsupported(space)),
            },
            ClosedSet::AxisLattice => match x.as_plane() {
                Some((a, b)) => b == 0.0 && a >= 1.0 && a.fract() == 0.0,
                None => return Err(self.unsupported(space)),
            },
            ClosedSet::OriginBall { radius } => space.norm(x)? <= *radius,
            ClosedSet::WholeSpace => true,
            ClosedSet::UnionOf(members) => {
                for m in members {
                    if m.contains(space, x)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    fn unsupported(&self, space: &GroundSpace) -> Error {
        Error::Unsupported {
            set: self.variant_name(),
            rule: space.rule(),
        }
    }

    /// `d(x, A) = inf { d(x, a) : a ∈ A }`, evaluated exactly.
    pub fn distance(&self, space: &GroundSpace, x: &Point) -> Result<f64> {
        space.check_point(x)?;
        if space.rule() == MetricRule::ZeroOne {
            return Ok(if self.contains(space, x)? { 0.0 } else { 1.0 });
        }
        let rule = space.rule();
        match self {
            ClosedSet::FinitePoints(pts) => {
                let mut best = f64::INFINITY;
                for p in pts {
                    best = best.min(space.distance(x, p)?);
                }
                Ok(best)
            }
            ClosedSet::Interval { lo, hi } => match (rule, x) {
                (MetricRule::UsualLine, Point::Scalar(v)) => Ok(if v < lo {
                    lo - v
                } else if v > hi {
                    v - hi
                } else {
                    0.0
                }),
                _ => Err(self.unsupported(space)),
            },
            ClosedSet::LineThroughOrigin { slope } => {
                let (a, b) = x.as_plane().ok_or_else(|| self.unsupported(space))?;
                match rule {
                    MetricRule::EuclideanNorm => Ok((b - slope * a).abs() / (1.0 + slope * slope).sqrt()),
                    // off the line only the origin is reachable along a ray
                    MetricRule::FrenchMetro => Ok(if b == slope * a { 0.0 } else { a.hypot(b) }),
                    _ => Err(self.unsupported(space)),
                }
            }
            ClosedSet::AxisLattice => {
                let (a, b) = x.as_plane().ok_or_else(|| self.unsupported(space))?;
                let k = a.round().max(1.0);
                match rule {
                    MetricRule::EuclideanNorm => Ok((a - k).hypot(b)),
                    MetricRule::FrenchMetro => {
                        if collinear(&[a, b], &[1.0, 0.0]) {
                            Ok((a - k).abs())
                        } else {
                            Ok(norm2(&[a, b]) + 1.0)
                        }
                    }
                    _ => Err(self.unsupported(space)),
                }
            }
            // normed spaces and the French Metro metric reach the ball along the ray to 0
            ClosedSet::OriginBall { radius } => Ok((space.norm(x)? - radius).max(0.0)),
            ClosedSet::WholeSpace => Ok(0.0),
            ClosedSet::UnionOf(members) => {
                let mut best = f64::INFINITY;
                for m in members {
                    best = best.min(m.distance(space, x)?);
                }
                Ok(best)
            }
        }
    }

    /// Points where membership can change on the line, if the set is a
    /// finite union of intervals and points.
    fn line_breakpoints(&self, space: &GroundSpace, out: &mut Vec<f64>) -> bool {
        match self {
            ClosedSet::FinitePoints(pts) => pts.iter().all(|p| match p {
                Point::Scalar(v) => {
                    out.push(*v);
                    true
                }
                _ => false,
            }),
            ClosedSet::Interval { lo, hi } => {
                out.extend([*lo, *hi].into_iter().filter(|v| v.is_finite()));
                true
            }
            ClosedSet::OriginBall { radius } => {
                // under the 0-1 metric a ball is {0} or everything
                if space.rule() == MetricRule::ZeroOne && *radius < 1.0 {
                    out.push(0.0);
                    true
                } else if space.rule() == MetricRule::ZeroOne {
                    true
                } else {
                    out.extend([-radius, *radius]);
                    true
                }
            }
            ClosedSet::WholeSpace => true,
            ClosedSet::UnionOf(m) => m.iter().all(|s| s.line_breakpoints(space, out)),
            _ => false,
        }
    }
}

pub fn distance_to_set(space: &GroundSpace, x: &Point, set: &ClosedSet) -> Result<f64> {
    set.distance(space, x)
}

/// Declared exact supremum rule for the set a probe stands for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type", deny_unknown_fields)]
pub enum ExactSup {
    /// Only the sample is known; sampled sups are lower bounds.
    None,
    /// The sample is the whole set.
    Exhaustive,
    /// The set is `{k·(1, slope) : k ∈ ℕ}` in the Euclidean plane.
    PointToLine { slope: f64 },
    /// The set is `[lo, hi]` under the 0-1 metric.
    DiscreteIndicator { lo: f64, hi: f64 },
}

impl ExactSup {
    fn line_coefficient(slope: f64, set: &ClosedSet) -> Option<f64> {
        match set {
            ClosedSet::LineThroughOrigin { slope: m } => Some((slope - m).abs() / (1.0 + m * m).sqrt()),
            ClosedSet::WholeSpace => Some(0.0),
            ClosedSet::AxisLattice if slope == 0.0 => Some(0.0),
            _ => None,
        }
    }

    fn indicator_candidates(lo: f64, hi: f64, space: &GroundSpace, sets: &[&ClosedSet]) -> Option<Vec<f64>> {
        let mut cuts = vec![lo, hi];
        for s in sets {
            if !s.line_breakpoints(space, &mut cuts) {
                return None;
            }
        }
        cuts.retain(|v| *v >= lo && *v <= hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mids: Vec<f64> = cuts.windows(2).map(|w| w[0] + (w[1] - w[0]) / 2.0).collect();
        cuts.extend(mids);
        Some(cuts)
    }

    fn applies(&self, space: &GroundSpace) -> bool {
        match self {
            ExactSup::PointToLine { .. } => {
                space.rule() == MetricRule::EuclideanNorm && space.kind() == PointKind::Vector(2)
            }
            ExactSup::DiscreteIndicator { .. } => {
                space.rule() == MetricRule::ZeroOne && space.kind() == PointKind::Scalar
            }
            _ => false,
        }
    }

    /// Exact `sup_{x ∈ S} |d(x,A) − d(x,C)|`, when the rule covers `(A, C)`.
    pub fn deviation(&self, space: &GroundSpace, a: &ClosedSet, c: &ClosedSet) -> Result<Option<f64>> {
        if !self.applies(space) {
            return Ok(None);
        }
        match *self {
            ExactSup::PointToLine { slope } => {
                // d(k(1,s), L) is linear in k, so the deviation is 0 or unbounded
                Ok(
                    match (Self::line_coefficient(slope, a), Self::line_coefficient(slope, c)) {
                        (Some(ca), Some(cc)) => Some(if ca == cc { 0.0 } else { f64::INFINITY }),
                        _ => None,
                    },
                )
            }
            ExactSup::DiscreteIndicator { lo, hi } => {
                let Some(cands) = Self::indicator_candidates(lo, hi, space, &[a, c]) else {
                    return Ok(None);
                };
                for v in cands {
                    let p = Point::Scalar(v);
                    if a.contains(space, &p)? != c.contains(space, &p)? {
                        return Ok(Some(1.0));
                    }
                }
                Ok(Some(0.0))
            }
            _ => Ok(None),
        }
    }

    /// Exact `sup_{x ∈ S} d(x, A)`, when the rule covers `A`.
    pub fn excess(&self, space: &GroundSpace, a: &ClosedSet) -> Result<Option<f64>> {
        if !self.applies(space) {
            return Ok(None);
        }
        match *self {
            ExactSup::PointToLine { slope } => {
                Ok(Self::line_coefficient(slope, a).map(|c| if c == 0.0 { 0.0 } else { f64::INFINITY }))
            }
            ExactSup::DiscreteIndicator { lo, hi } => {
                let Some(cands) = Self::indicator_candidates(lo, hi, space, &[a]) else {
                    return Ok(None);
                };
                for v in cands {
                    if !a.contains(space, &Point::Scalar(v))? {
                        return Ok(Some(1.0));
                    }
                }
                Ok(Some(0.0))
            }
            _ => Ok(None),
        }
    }
}

/// A finite sample standing for a set `S`, with an optional exact-sup rule
/// and an optional exact description of `S` itself.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSet {
    pub label: String,
    sample: Vec<Point>,
    exact_sup: ExactSup,
    region: Option<ClosedSet>,
}

impl ProbeSet {
    pub fn new(label: impl Into<String>, sample: Vec<Point>) -> Result<Self> {
        let label = label.into();
        if sample.is_empty() {
            return Err(Error::InvalidProbe(format!(
                "probe `{label}` has an empty sample"
            )));
        }
        Ok(ProbeSet {
            label,
            sample,
            exact_sup: ExactSup::None,
            region: None,
        })
    }

    /// A probe whose sample is the entire set.
    pub fn exhaustive(label: impl Into<String>, sample: Vec<Point>) -> Result<Self> {
        Ok(Self::new(label, sample)?.with_exact_sup(ExactSup::Exhaustive))
    }

    pub fn singleton(label: impl Into<String>, point: Point) -> Self {
        Self::exhaustive(label, vec![point]).expect("nonempty")
    }

    pub fn with_exact_sup(mut self, rule: ExactSup) -> Self {
        self.exact_sup = rule;
        self
    }

    pub fn with_region(mut self, region: ClosedSet) -> Self {
        self.region = Some(region);
        self
    }

    pub fn sample(&self) -> &[Point] {
        &self.sample
    }

    pub fn exact_sup(&self) -> ExactSup {
        self.exact_sup
    }

    pub fn region(&self) -> Option<&ClosedSet> {
        self.region.as_ref()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exact_sup == ExactSup::Exhaustive
    }

    pub fn validate(&self, space: &GroundSpace) -> Result<()> {
        self.sample.iter().try_for_each(|p| space.check_point(p))?;
        if let Some(r) = &self.region {
            r.validate(space)?;
        }
        Ok(())
    }

    /// The set `S` as a closed set: the declared region, the set fixed by
    /// the exact-sup rule, or the sample itself.
    pub fn as_set(&self) -> Cow<'_, ClosedSet> {
        if let Some(r) = &self.region {
            return Cow::Borrowed(r);
        }
        match self.exact_sup {
            ExactSup::DiscreteIndicator { lo, hi } => Cow::Owned(ClosedSet::Interval { lo, hi }),
            ExactSup::PointToLine { slope: 0.0 } => Cow::Owned(ClosedSet::AxisLattice),
            _ => Cow::Owned(ClosedSet::FinitePoints(self.sample.clone())),
        }
    }

    /// `d(x, S)` for the set this probe stands for, without cloning it.
    pub fn distance_from(&self, space: &GroundSpace, x: &Point) -> Result<f64> {
        match (&self.region, self.exact_sup) {
            (Some(r), _) => r.distance(space, x),
            (None, ExactSup::DiscreteIndicator { .. } | ExactSup::PointToLine { .. }) => {
                self.as_set().distance(space, x)
            }
            _ => {
                space.check_point(x)?;
                let mut best = f64::INFINITY;
                for p in &self.sample {
                    best = best.min(space.distance(x, p)?);
                    if best == 0.0 {
                        break;
                    }
                }
                Ok(best)
            }
        }
    }

    /// The oracle must dominate what the sample already shows.
    pub fn oracle_consistent(&self, space: &GroundSpace, a: &ClosedSet, c: &ClosedSet) -> Result<bool> {
        let Some(exact) = self.exact_sup.deviation(space, a, c)? else {
            return Ok(true);
        };
        let mut sampled = 0.0f64;
        for x in &self.sample {
            sampled = sampled.max((a.distance(space, x)? - c.distance(space, x)?).abs());
        }
        Ok(exact >= sampled)
    }
}

impl fmt::Display for ProbeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} points)", self.label, self.sample.len())
    }
}

/// A supremum and whether it is exact or only a sampled lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sup {
    pub value: f64,
    pub exact: bool,
}

/// `sup_{x ∈ P} d(x, A)`.
pub fn excess(space: &GroundSpace, probe: &ProbeSet, set: &ClosedSet) -> Result<Sup> {
    if let Some(v) = probe.exact_sup.excess(space, set)? {
        return Ok(Sup {
            value: v,
            exact: true,
        });
    }
    let mut value = 0.0f64;
    for x in &probe.sample {
        value = value.max(set.distance(space, x)?);
    }
    Ok(Sup {
        value,
        exact: probe.is_exhaustive(),
    })
}

/// Decides `d < eps`: exactly under the 0-1 metric, with
/// [`BOUNDARY_MARGIN`] otherwise.
pub fn below(space: &GroundSpace, d: f64, eps: f64) -> Decision {
    if space.rule() == MetricRule::ZeroOne {
        if d < eps {
            Decision::Yes
        } else {
            Decision::No
        }
    } else if d < eps - BOUNDARY_MARGIN {
        Decision::Yes
    } else if d >= eps + BOUNDARY_MARGIN {
        Decision::No
    } else {
        Decision::Undecided
    }
}

pub(crate) fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && !eps.is_nan() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("epsilon must be positive, got {eps}")))
    }
}

/// Is every sampled point of `P` inside the open enlargement `B(C, ε)`?
pub fn inclusion_in_enlargement(
    space: &GroundSpace,
    probe: &ProbeSet,
    set: &ClosedSet,
    eps: f64,
) -> Result<Verdict> {
    check_epsilon(eps)?;
    inclusion_of_points(space, &probe.sample, set, eps, Some(&probe.label))
}

pub(crate) fn inclusion_of_points(
    space: &GroundSpace,
    points: &[Point],
    set: &ClosedSet,
    eps: f64,
    label: Option<&str>,
) -> Result<Verdict> {
    let res = Resolution::epsilon(eps);
    let mut boundary = None;
    for x in points {
        let d = set.distance(space, x)?;
        let mk = || {
            let w = Witness::at_point(x.clone(), d);
            match label {
                Some(l) => w.label(l),
                None => w,
            }
        };
        match below(space, d, eps) {
            Decision::Yes => {}
            Decision::No => return Ok(Verdict::fail(mk(), res)),
            Decision::Undecided => {
                boundary.get_or_insert_with(mk);
            }
        }
    }
    Ok(match boundary {
        Some(w) => Verdict::undecided(w, res),
        None => Verdict::pass(res),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Outcome;

    fn s(v: f64) -> Point {
        Point::Scalar(v)
    }

    #[test]
    fn nearest_point_on_line() {
        let line = GroundSpace::real_line();
        let a = ClosedSet::scalars(&[0.0, 3.0]).unwrap();
        assert_eq!(distance_to_set(&line, &s(5.0), &a).unwrap(), 2.0);
    }

    #[test]
    fn point_to_diagonal_line_matches_dense_sampling() {
        let plane = GroundSpace::euclidean_plane();
        let x = Point::xy(3.0, 0.0);
        let exact = ClosedSet::line(1.0).unwrap().distance(&plane, &x).unwrap();
        // brute force over a fine sample of the line
        let brute = (-40_000..=40_000)
            .map(|i| {
                let t = i as f64 * 1e-4;
                (3.0 - t).hypot(-t)
            })
            .fold(f64::INFINITY, f64::min);
        assert!((exact - 3.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((exact - brute).abs() < 1e-8);
    }

    #[test]
    fn discrete_metric_nonmember() {
        let disc = GroundSpace::discrete_line();
        let a = ClosedSet::interval(-5.0, 5.0).unwrap();
        let x = s(2f64.sqrt() * 7.0);
        assert_eq!(a.distance(&disc, &x).unwrap(), 1.0);
        assert_eq!(a.distance(&disc, &s(4.9)).unwrap(), 0.0);
    }

    #[test]
    fn interval_rejects_plane_points() {
        let plane = GroundSpace::euclidean_plane();
        let a = ClosedSet::interval(0.0, 1.0).unwrap();
        assert!(a.distance(&plane, &Point::xy(0.0, 0.0)).is_err());
        assert!(a.validate(&plane).is_err());
    }

    #[test]
    fn unsupported_pairs_fail_loudly() {
        let metro = GroundSpace::french_metro();
        // no French-Metro rule for intervals: they are not plane sets
        let a = ClosedSet::interval(0.0, 1.0).unwrap();
        assert!(a.distance(&metro, &Point::xy(1.0, 1.0)).is_err());
        let seq = GroundSpace::sup_seq();
        let l = ClosedSet::line(1.0).unwrap();
        assert!(l.distance(&seq, &Point::seq_dense(&[1.0]).unwrap()).is_err());
    }

    #[test]
    fn axis_lattice_distances() {
        let plane = GroundSpace::euclidean_plane();
        let a = ClosedSet::AxisLattice;
        assert_eq!(a.distance(&plane, &Point::xy(-2.0, 0.0)).unwrap(), 3.0);
        assert_eq!(a.distance(&plane, &Point::xy(4.0, 3.0)).unwrap(), 3.0);
        assert_eq!(a.distance(&plane, &Point::xy(4.5, 0.0)).unwrap(), 0.5);
        let metro = GroundSpace::french_metro();
        assert_eq!(a.distance(&metro, &Point::xy(0.0, 2.0)).unwrap(), 3.0);
        assert_eq!(a.distance(&metro, &Point::xy(-1.0, 0.0)).unwrap(), 2.0);
        assert!(a.contains(&plane, &Point::xy(3.0, 0.0)).unwrap());
        assert!(!a.contains(&plane, &Point::xy(0.0, 0.0)).unwrap());
    }

    #[test]
    fn french_metro_line_and_ball() {
        let metro = GroundSpace::french_metro();
        let l = ClosedSet::line(1.0).unwrap();
        assert_eq!(l.distance(&metro, &Point::xy(2.0, 2.0)).unwrap(), 0.0);
        assert_eq!(l.distance(&metro, &Point::xy(3.0, 4.0)).unwrap(), 5.0);
        let b = ClosedSet::ball(2.0).unwrap();
        assert_eq!(b.distance(&metro, &Point::xy(3.0, 4.0)).unwrap(), 3.0);
        assert_eq!(b.distance(&metro, &Point::xy(1.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn union_is_min_of_members() {
        let line = GroundSpace::real_line();
        let u = ClosedSet::union(vec![
            ClosedSet::interval(-1.0, 1.0).unwrap(),
            ClosedSet::scalars(&[10.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(u.distance(&line, &s(8.0)).unwrap(), 2.0);
        assert_eq!(u.distance(&line, &s(3.0)).unwrap(), 2.0);
        assert_eq!(u.distance(&line, &s(0.5)).unwrap(), 0.0);
    }

    #[test]
    fn finite_dedups_and_rejects_empty() {
        let a = ClosedSet::scalars(&[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(a, ClosedSet::FinitePoints(vec![s(1.0), s(2.0)]));
        assert!(ClosedSet::scalars(&[]).is_err());
        assert!(ClosedSet::interval(2.0, 1.0).is_err());
    }

    #[test]
    fn excess_farthest_sample() {
        let line = GroundSpace::real_line();
        let p = ProbeSet::new("P", vec![s(0.0), s(1.0), s(2.0)]).unwrap();
        let a = ClosedSet::scalars(&[0.0]).unwrap();
        let e = excess(&line, &p, &a).unwrap();
        assert_eq!(e.value, 2.0);
        assert!(!e.exact);
    }

    #[test]
    fn excess_discrete_indicator() {
        let disc = GroundSpace::discrete_line();
        let (m, n) = (6.0, 4.0);
        let grid: Vec<Point> = (-60..=60).map(|i| s(i as f64 / 10.0)).collect();
        let p = ProbeSet::new("[-m,m]", grid)
            .unwrap()
            .with_exact_sup(ExactSup::DiscreteIndicator { lo: -m, hi: m });
        let a = ClosedSet::interval(-n, n).unwrap();
        let e = excess(&disc, &p, &a).unwrap();
        assert_eq!(
            e,
            Sup {
                value: 1.0,
                exact: true
            }
        );
        let inner = ClosedSet::interval(-7.0, 7.0).unwrap();
        assert_eq!(excess(&disc, &p, &inner).unwrap().value, 0.0);
    }

    #[test]
    fn excess_lattice_points_against_line() {
        let plane = GroundSpace::euclidean_plane();
        for (big_m, n) in [(10usize, 3.0f64), (25, 7.0)] {
            let pts: Vec<Point> = (1..=big_m).map(|k| Point::xy(k as f64, 0.0)).collect();
            let p = ProbeSet::new("lattice", pts).unwrap();
            let a = ClosedSet::line(1.0 / n).unwrap();
            let got = excess(&plane, &p, &a).unwrap().value;
            let expected = big_m as f64 / (n * n + 1.0).sqrt();
            assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
            // brute-force sampling of the line near the farthest lattice point
            let brute = (0..=400_000)
                .map(|i| {
                    let t = i as f64 * 1e-4;
                    (big_m as f64 - t).hypot(t / n)
                })
                .fold(f64::INFINITY, f64::min);
            assert!((got - brute).abs() < 1e-6);
        }
    }

    #[test]
    fn point_to_line_oracle() {
        let plane = GroundSpace::euclidean_plane();
        let pts: Vec<Point> = (1..=5).map(|k| Point::xy(k as f64, 0.0)).collect();
        let p = ProbeSet::new("N×{0}", pts)
            .unwrap()
            .with_exact_sup(ExactSup::PointToLine { slope: 0.0 });
        let axis = ClosedSet::line(0.0).unwrap();
        let tilted = ClosedSet::line(0.25).unwrap();
        let e = excess(&plane, &p, &tilted).unwrap();
        assert!(e.exact && e.value.is_infinite());
        assert_eq!(excess(&plane, &p, &axis).unwrap().value, 0.0);
        assert!(p.oracle_consistent(&plane, &axis, &tilted).unwrap());
        assert_eq!(p.as_set().as_ref(), &ClosedSet::AxisLattice);
    }

    #[test]
    fn enlargement_membership() {
        let line = GroundSpace::real_line();
        let p = ProbeSet::new("P", vec![s(0.5)]).unwrap();
        let c = ClosedSet::scalars(&[0.0]).unwrap();
        assert!(inclusion_in_enlargement(&line, &p, &c, 1.0).unwrap().is_pass());
        let v = inclusion_in_enlargement(&line, &p, &c, 0.25).unwrap();
        assert_eq!(v.outcome, Outcome::Fail);
        assert_eq!(v.witness().unwrap().point, Some(s(0.5)));
        // exactly on the boundary of the open enlargement
        let v = inclusion_in_enlargement(&line, &p, &c, 0.5).unwrap();
        assert_eq!(v.outcome, Outcome::Undecided);
        assert!(inclusion_in_enlargement(&line, &p, &c, 0.0).is_err());
    }

    #[test]
    fn enlargement_near_rationals() {
        let line = GroundSpace::real_line();
        let p = ProbeSet::new("F", vec![s(std::f64::consts::PI), s(std::f64::consts::E)]).unwrap();
        let c = ClosedSet::scalars(&[22.0 / 7.0, 2.7]).unwrap();
        assert!(inclusion_in_enlargement(&line, &p, &c, 0.1).unwrap().is_pass());
    }

    #[test]
    fn discrete_enlargement_is_exact_at_boundary() {
        let disc = GroundSpace::discrete_line();
        let p = ProbeSet::new("P", vec![s(0.0), s(9.0)]).unwrap();
        let c = ClosedSet::interval(-1.0, 1.0).unwrap();
        assert!(inclusion_in_enlargement(&disc, &p, &c, 1.0).unwrap().is_fail());
        assert!(inclusion_in_enlargement(&disc, &p, &c, 1.5).unwrap().is_pass());
    }

    #[test]
    fn empty_probe_rejected() {
        assert!(ProbeSet::new("P", vec![]).is_err());
    }
}

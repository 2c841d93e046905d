//! Distances between closed sets: uniform deviation of distance
//! functionals over a probe, the entourage `[S, ε]`, the weighted series
//! metric over a countable family, and its Hausdorff and Attouch-Wets
//! specializations.

use crate::bornology::ProbeFamily;
use crate::error::{Error, Result};
use crate::interval::{Certification, IntervalValue};
use crate::metric::{GroundSpace, Point};
use crate::sets::{ClosedSet, ProbeSet, Sup};

/// Deviation together with the sample point that realized it, if any.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Deviation {
    pub sup: Sup,
    pub at: Option<Point>,
}

pub(crate) fn deviation_detail(
    space: &GroundSpace,
    probe: &ProbeSet,
    a: &ClosedSet,
    c: &ClosedSet,
    cap: Option<f64>,
) -> Result<Deviation> {
    if let Some(v) = probe.exact_sup().deviation(space, a, c)? {
        let value = cap.map_or(v, |cap| v.min(cap));
        return Ok(Deviation {
            sup: Sup { value, exact: true },
            at: None,
        });
    }
    let mut best = 0.0f64;
    let mut at = None;
    for x in probe.sample() {
        let d = (a.distance(space, x)? - c.distance(space, x)?).abs();
        if d > best || at.is_none() {
            best = best.max(d);
            at = Some(x);
        }
        if let Some(cap) = cap {
            if best >= cap {
                // the true sup is at least the sampled one, so min(sup, cap) is known
                return Ok(Deviation {
                    sup: Sup {
                        value: cap,
                        exact: true,
                    },
                    at: at.cloned(),
                });
            }
        }
    }
    Ok(Deviation {
        sup: Sup {
            value: best,
            exact: probe.is_exhaustive(),
        },
        at: at.cloned(),
    })
}

/// `sup_{x ∈ S} |d(x,A) − d(x,C)|`, saturating at `cap` when given.
pub fn uniform_deviation(
    space: &GroundSpace,
    probe: &ProbeSet,
    a: &ClosedSet,
    c: &ClosedSet,
    cap: Option<f64>,
) -> Result<Sup> {
    Ok(deviation_detail(space, probe, a, c, cap)?.sup)
}

/// Is `(A, C) ∈ [S, ε]`?
pub fn entourage_test(
    space: &GroundSpace,
    probe: &ProbeSet,
    eps: f64,
    a: &ClosedSet,
    c: &ClosedSet,
) -> Result<bool> {
    crate::sets::check_epsilon(eps)?;
    Ok(uniform_deviation(space, probe, a, c, Some(eps))?.value < eps)
}

/// `Σ_i 2^{-i} min{1, sup_{x ∈ S_i} |d(x,A) − d(x,C)|}` truncated after
/// `min(depth, N)` terms.
///
/// The tail is bounded by `2^{-terms}` since every summand is at most
/// `2^{-i}`; a complete family has no tail once all members are summed.
pub fn dsa(
    space: &GroundSpace,
    family: &ProbeFamily,
    a: &ClosedSet,
    c: &ClosedSet,
    depth: usize,
) -> Result<IntervalValue> {
    if depth < 1 {
        return Err(Error::Parameter("series depth must be at least 1".into()));
    }
    let terms = depth.min(family.len());
    let mut lo = 0.0;
    let mut exact = true;
    let mut weight = 1.0;
    for member in &family.members()[..terms] {
        weight *= 0.5;
        let dev = uniform_deviation(space, member, a, c, Some(1.0))?;
        exact &= dev.exact;
        lo += weight * dev.value;
    }
    let tail = if family.is_complete() && terms == family.len() {
        0.0
    } else {
        weight
    };
    Ok(IntervalValue {
        lo,
        hi: lo + tail,
        depth: terms,
        certification: if exact {
            Certification::Exact
        } else {
            Certification::LowerOnly
        },
    })
}

/// `H_d(A, C) = sup_x |d(x,A) − d(x,C)|` over the probe; exact when the
/// probe exhausts the ground set.
pub fn hausdorff_distance(
    space: &GroundSpace,
    a: &ClosedSet,
    c: &ClosedSet,
    probe: &ProbeSet,
) -> Result<Sup> {
    uniform_deviation(space, probe, a, c, None)
}

/// The series metric over balls `B(x0, n)`, whose topology is Attouch-Wets.
///
/// Member `n` (1-based) must sample the open ball of radius `n` about `x0`.
pub fn aw_distance(
    space: &GroundSpace,
    center: &Point,
    a: &ClosedSet,
    c: &ClosedSet,
    depth: usize,
    balls: &ProbeFamily,
) -> Result<IntervalValue> {
    space.check_point(center)?;
    for (i, m) in balls.members().iter().enumerate().take(depth) {
        let r = (i + 1) as f64;
        for x in m.sample() {
            if space.distance(x, center)? >= r {
                return Err(Error::InvalidProbe(format!(
                    "ball probe `{}` has {x} outside the open ball of radius {r}",
                    m.label
                )));
            }
        }
    }
    dsa(space, balls, a, c, depth)
}

const BALL_SPOKES: usize = 32;
const BALL_EDGE: f64 = 1e-9;

/// Probes of the open balls `B(x0, n)`, `n = 1..=count`.
///
/// Scalar spaces get an evenly spaced grid of `per_unit` points per unit
/// length; the plane gets a polar sample with `per_unit` rings per unit
/// radius and 32 spokes. Both add points at relative radius `1 - 1e-9`.
pub fn ball_probes(
    space: &GroundSpace,
    center: &Point,
    count: usize,
    per_unit: usize,
) -> Result<ProbeFamily> {
    space.check_point(center)?;
    let mut members = Vec::with_capacity(count);
    for n in 1..=count {
        let r = n as f64;
        let edge = r * (1.0 - BALL_EDGE);
        let sample = match center {
            Point::Scalar(c) => {
                let k = (per_unit * n) as i64;
                let mut pts: Vec<Point> = (-k + 1..k)
                    .map(|i| Point::Scalar(c + r * i as f64 / k as f64))
                    .collect();
                pts.extend([Point::Scalar(c - edge), Point::Scalar(c + edge)]);
                pts
            }
            Point::Vector(v) if v.len() == 2 => {
                let mut pts = crate::sampling::disc_sample((v[0], v[1]), r, per_unit * n, BALL_SPOKES);
                for j in 0..BALL_SPOKES {
                    let (s, c) = (2.0 * std::f64::consts::PI * j as f64 / BALL_SPOKES as f64).sin_cos();
                    pts.push(Point::xy(v[0] + edge * c, v[1] + edge * s));
                }
                pts
            }
            _ => {
                return Err(Error::Parameter(format!(
                    "ball probes are available on the line and the plane, not {}",
                    center.kind()
                )))
            }
        };
        members.push(ProbeSet::new(format!("B({center},{n})"), sample)?);
    }
    ProbeFamily::new(format!("balls({center})"), members)
}

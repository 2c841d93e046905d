//! Semi-decision of sequence convergence in the hyperspace.
//!
//! Each checker evaluates indices `n = 1..=horizon` and reads "eventually"
//! off the final run: a pass names the first index of the trailing run of
//! good indices, a fail reports the offending data at the horizon.

use serde::Serialize;

use crate::bornology::ProbeFamily;
use crate::error::{Error, Result};
use crate::hyperdist::{deviation_detail, dsa};
use crate::interval::{Decision, IntervalValue};
use crate::metric::{GroundSpace, Point};
use crate::sets::{below, check_epsilon, inclusion_of_points, ClosedSet, BOUNDARY_MARGIN};
use crate::verdict::{Outcome, Resolution, Verdict, Witness};

/// `n ↦ A_n` for `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "generator")]
pub enum SetSequence {
    /// Lines `y = x/n` in the plane.
    LinesThroughOrigin,
    /// `[-n, n]`.
    GrowingIntervals,
    /// The first `n` points of a list.
    DensePrefix {
        points: Vec<Point>,
    },
    Constant {
        set: ClosedSet,
    },
    /// `A_n` is the `n`-th listed set.
    Explicit {
        sets: Vec<ClosedSet>,
    },
}

impl SetSequence {
    pub fn dense_prefix(points: Vec<Point>) -> Self {
        SetSequence::DensePrefix { points }
    }

    pub fn constant(set: ClosedSet) -> Self {
        SetSequence::Constant { set }
    }

    pub fn explicit(sets: Vec<ClosedSet>) -> Self {
        SetSequence::Explicit { sets }
    }

    /// Singletons `{x_n}`.
    pub fn singletons(points: &[Point]) -> Self {
        SetSequence::Explicit {
            sets: points
                .iter()
                .map(|p| ClosedSet::FinitePoints(vec![p.clone()]))
                .collect(),
        }
    }

    /// Largest index the generator is defined for.
    pub fn max_index(&self) -> Option<usize> {
        match self {
            SetSequence::DensePrefix { points } => Some(points.len()),
            SetSequence::Explicit { sets } => Some(sets.len()),
            _ => None,
        }
    }

    pub fn check_horizon(&self, horizon: usize) -> Result<()> {
        if horizon == 0 {
            return Err(Error::Parameter("horizon must be at least 1".into()));
        }
        match self.max_index() {
            Some(m) if m < horizon => Err(Error::Parameter(format!(
                "sequence is defined up to n={m}, horizon is {horizon}"
            ))),
            _ => Ok(()),
        }
    }

    /// `A_n`, 1-based.
    pub fn set(&self, n: usize) -> Result<ClosedSet> {
        if n == 0 {
            return Err(Error::Parameter("sequence indices start at 1".into()));
        }
        self.check_horizon(n)?;
        Ok(match self {
            SetSequence::LinesThroughOrigin => ClosedSet::LineThroughOrigin {
                slope: 1.0 / n as f64,
            },
            SetSequence::GrowingIntervals => ClosedSet::Interval {
                lo: -(n as f64),
                hi: n as f64,
            },
            SetSequence::DensePrefix { points } => ClosedSet::FinitePoints(points[..n].to_vec()),
            SetSequence::Constant { set } => set.clone(),
            SetSequence::Explicit { sets } => sets[n - 1].clone(),
        })
    }
}

/// The decision at one index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    pub n: usize,
    pub decision: Decision,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalValue>,
}

/// Per-index decisions for `n = 1..=horizon`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub resolution: Resolution,
}

impl Trace {
    /// First index of the trailing run of `Yes` decisions.
    pub fn settled_from(&self) -> Option<usize> {
        let mut start = None;
        for s in self.steps.iter().rev() {
            if s.decision != Decision::Yes {
                break;
            }
            start = Some(s.n);
        }
        start
    }

    pub fn verdict(&self) -> Verdict {
        let res = self.resolution;
        let last = self.steps.last().expect("trace has at least one step");
        match last.decision {
            Decision::Yes => {
                let n0 = self.settled_from().expect("last step is settled");
                Verdict::pass(res).with_witness(Witness {
                    index: Some(n0),
                    ..last.witness.clone()
                })
            }
            Decision::No => Verdict::fail(last.witness.clone(), res),
            Decision::Undecided => Verdict::undecided(last.witness.clone(), res),
        }
    }
}

fn trace<F>(horizon: usize, res: Resolution, mut step: F) -> Result<Trace>
where
    F: FnMut(usize) -> Result<Step>,
{
    let steps = (1..=horizon).map(&mut step).collect::<Result<Vec<_>>>()?;
    Ok(Trace {
        steps,
        resolution: res,
    })
}

fn worse(a: Decision, b: Decision) -> bool {
    let rank = |d: Decision| match d {
        Decision::Yes => 0,
        Decision::Undecided => 1,
        Decision::No => 2,
    };
    rank(a) > rank(b)
}

/// Pointwise convergence of distance functionals on the test points.
pub fn wijsman_trace(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    test_points: &[Point],
    eps: f64,
    horizon: usize,
) -> Result<Trace> {
    check_epsilon(eps)?;
    seq.check_horizon(horizon)?;
    if test_points.is_empty() {
        return Err(Error::InvalidProbe("no Wijsman test points".into()));
    }
    let res = Resolution::epsilon(eps).with_horizon(horizon);
    let target: Vec<f64> = test_points
        .iter()
        .map(|x| limit.distance(space, x))
        .collect::<Result<_>>()?;
    // d(x, A_n) for a prefix sequence is a running minimum
    let mut running = vec![f64::INFINITY; test_points.len()];
    trace(horizon, res, |n| {
        let current: Vec<f64> = match seq {
            SetSequence::DensePrefix { points } => {
                let p = &points[n - 1];
                for (r, x) in running.iter_mut().zip(test_points) {
                    *r = r.min(space.distance(x, p)?);
                }
                running.clone()
            }
            _ => {
                let a_n = seq.set(n)?;
                test_points
                    .iter()
                    .map(|x| a_n.distance(space, x))
                    .collect::<Result<_>>()?
            }
        };
        let (mut worst, mut at) = (-1.0f64, 0usize);
        for (i, (c, t)) in current.iter().zip(&target).enumerate() {
            let d = (c - t).abs();
            if d > worst {
                worst = d;
                at = i;
            }
        }
        Ok(Step {
            n,
            decision: below(space, worst, eps),
            witness: Witness::at_point(test_points[at].clone(), worst).index(n),
            interval: None,
        })
    })
}

pub fn wijsman_check(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    test_points: &[Point],
    eps: f64,
    horizon: usize,
) -> Result<Verdict> {
    Ok(wijsman_trace(space, seq, limit, test_points, eps, horizon)?.verdict())
}

/// Uniform convergence of distance functionals on every family member.
pub fn tau_sd_trace(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
) -> Result<Trace> {
    check_epsilon(eps)?;
    seq.check_horizon(horizon)?;
    let res = Resolution::epsilon(eps).with_horizon(horizon);
    let cap = eps + 2.0 * BOUNDARY_MARGIN;
    trace(horizon, res, |n| {
        let a_n = seq.set(n)?;
        let mut decision = Decision::Yes;
        let mut witness = None;
        for m in family.members() {
            let dev = deviation_detail(space, m, &a_n, limit, Some(cap))?;
            let d = below(space, dev.sup.value, eps);
            if witness.is_none() || worse(d, decision) {
                let w = match dev.at {
                    Some(p) => Witness::at_point(p, dev.sup.value),
                    None => Witness::value(dev.sup.value),
                };
                witness = Some(w.index(n).label(m.label.clone()));
            }
            if worse(d, decision) {
                decision = d;
            }
            if decision == Decision::No {
                break;
            }
        }
        Ok(Step {
            n,
            decision,
            witness: witness.expect("family is nonempty"),
            interval: None,
        })
    })
}

pub fn tau_sd_check(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
) -> Result<Verdict> {
    Ok(tau_sd_trace(space, seq, limit, family, eps, horizon)?.verdict())
}

fn filtered(space: &GroundSpace, points: &[Point], set: &ClosedSet) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for p in points {
        if set.contains(space, p)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Two-sided enlargement inclusion on every family member.
pub fn s_convergence_trace(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
) -> Result<Trace> {
    check_epsilon(eps)?;
    seq.check_horizon(horizon)?;
    let res = Resolution::epsilon(eps).with_horizon(horizon);
    let limit_parts: Vec<Vec<Point>> = family
        .members()
        .iter()
        .map(|m| filtered(space, m.sample(), limit))
        .collect::<Result<_>>()?;
    trace(horizon, res, |n| {
        let a_n = seq.set(n)?;
        let mut decision = Decision::Yes;
        let mut witness = Witness::value(0.0).index(n);
        for (m, in_limit) in family.members().iter().zip(&limit_parts) {
            let in_a_n = filtered(space, m.sample(), &a_n)?;
            let sides = [
                (format!("{}: A_n∩S ⊆ B(A,ε)", m.label), &in_a_n, limit),
                (format!("{}: A∩S ⊆ B(A_n,ε)", m.label), in_limit, &a_n),
            ];
            for (tag, pts, target) in sides {
                let v = inclusion_of_points(space, pts, target, eps, Some(&tag))?;
                let d = match v.outcome {
                    Outcome::Pass => Decision::Yes,
                    Outcome::Fail => Decision::No,
                    Outcome::Undecided => Decision::Undecided,
                };
                if worse(d, decision) {
                    decision = d;
                    witness = v.witness().cloned().expect("non-pass has witness").index(n);
                }
                if decision == Decision::No {
                    break;
                }
            }
            if decision == Decision::No {
                break;
            }
        }
        Ok(Step {
            n,
            decision,
            witness,
            interval: None,
        })
    })
}

pub fn s_convergence_check(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
) -> Result<Verdict> {
    Ok(s_convergence_trace(space, seq, limit, family, eps, horizon)?.verdict())
}

/// `d_S^A(A_n, A) < ε` decided on certified intervals.
pub fn dsa_convergence_trace(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
    depth: usize,
) -> Result<Trace> {
    check_epsilon(eps)?;
    seq.check_horizon(horizon)?;
    let res = Resolution::epsilon(eps).with_horizon(horizon).with_depth(depth);
    trace(horizon, res, |n| {
        let iv = dsa(space, family, &seq.set(n)?, limit, depth)?;
        Ok(Step {
            n,
            decision: iv.less_than(eps),
            witness: Witness::value(iv.lo).index(n),
            interval: Some(iv),
        })
    })
}

pub fn dsa_convergence_check(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
    depth: usize,
) -> Result<Verdict> {
    Ok(dsa_convergence_trace(space, seq, limit, family, eps, horizon, depth)?.verdict())
}

/// `d(x_n, x) < ε` eventually.
pub fn point_convergence_check(
    space: &GroundSpace,
    points: &[Point],
    limit: &Point,
    eps: f64,
    horizon: usize,
) -> Result<Verdict> {
    check_epsilon(eps)?;
    if horizon == 0 || points.len() < horizon {
        return Err(Error::Parameter(format!(
            "point sequence has {} terms, horizon is {horizon}",
            points.len()
        )));
    }
    let res = Resolution::epsilon(eps).with_horizon(horizon);
    let t = trace(horizon, res, |n| {
        let d = space.distance(&points[n - 1], limit)?;
        Ok(Step {
            n,
            decision: below(space, d, eps),
            witness: Witness::at_point(points[n - 1].clone(), d).index(n),
            interval: None,
        })
    })?;
    Ok(t.verdict())
}

/// Point convergence against convergence of the singletons under the
/// series metric. Passes when the two agree; both are reported as parts.
pub fn singleton_embedding_check(
    space: &GroundSpace,
    points: &[Point],
    limit: &Point,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
    depth: usize,
) -> Result<Verdict> {
    let metric = point_convergence_check(space, points, limit, eps, horizon)?;
    let seq = SetSequence::singletons(&points[..horizon]);
    let target = ClosedSet::FinitePoints(vec![limit.clone()]);
    let series = dsa_convergence_check(space, &seq, &target, family, eps, horizon, depth)?;
    let res = Resolution::epsilon(eps).with_horizon(horizon).with_depth(depth);
    let mut out = if metric.outcome == Outcome::Undecided || series.outcome == Outcome::Undecided {
        let w = [&metric, &series]
            .into_iter()
            .find(|v| v.outcome == Outcome::Undecided)
            .and_then(|v| v.witness().cloned())
            .expect("undecided has witness");
        Verdict::undecided(w, res)
    } else if metric.outcome == series.outcome {
        Verdict::pass(res)
    } else {
        let w = metric
            .witness()
            .or(series.witness())
            .cloned()
            .unwrap_or_else(|| Witness::value(f64::NAN));
        Verdict::fail(
            w.label(format!("metric {} vs series {}", metric.outcome, series.outcome)),
            res,
        )
    };
    out.parts.push(("metric".into(), metric));
    out.parts.push(("dsa".into(), series));
    Ok(out)
}

/// Outcome of checking one implication between convergence modes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Implication {
    pub name: String,
    pub premise: Verdict,
    /// Present only when the premise passed.
    pub conclusion: Option<Verdict>,
}

impl Implication {
    pub fn violated(&self) -> bool {
        self.premise.is_pass() && self.conclusion.as_ref().is_some_and(|c| !c.is_pass())
    }
}

/// Series convergence at `ε` forces Wijsman convergence at `4ε` on the
/// samples of the first two members: `2^{-i} min{1, dev_i} < ε` gives
/// `dev_i < 2^i ε` once `2^i ε ≤ 1`.
pub fn dsa_implies_wijsman(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
    depth: usize,
) -> Result<Implication> {
    if eps >= 0.25 {
        return Err(Error::Parameter(format!(
            "the series-to-Wijsman comparison needs ε < 1/4, got {eps}"
        )));
    }
    let premise = dsa_convergence_check(space, seq, limit, family, eps, horizon, depth)?;
    let conclusion = if premise.is_pass() {
        let pts = family.sample_points(2.min(depth));
        Some(wijsman_check(space, seq, limit, &pts, 4.0 * eps, horizon)?)
    } else {
        None
    };
    Ok(Implication {
        name: "dsa => wijsman".into(),
        premise,
        conclusion,
    })
}

/// Uniform deviation below `ε` on `S` forces both enlargement inclusions.
pub fn tau_implies_s(
    space: &GroundSpace,
    seq: &SetSequence,
    limit: &ClosedSet,
    family: &ProbeFamily,
    eps: f64,
    horizon: usize,
) -> Result<Implication> {
    let premise = tau_sd_check(space, seq, limit, family, eps, horizon)?;
    let conclusion = if premise.is_pass() {
        Some(s_convergence_check(space, seq, limit, family, eps, horizon)?)
    } else {
        None
    };
    Ok(Implication {
        name: "tau => s".into(),
        premise,
        conclusion,
    })
}

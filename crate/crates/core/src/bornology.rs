//! Countable generating families and the covering predicates on them.
//!
//! Every predicate here is decided at a declared resolution: a finite prefix
//! `S_1, …, S_N` of the family, finite probes, and explicit `ε` values. A
//! covering member is always searched in the cumulative family
//! `S'_n = S_1 ∪ … ∪ S_n`, so verdicts do not depend on whether the caller
//! normalized the family first.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Decision;
use crate::metric::{GroundSpace, Point};
use crate::sets::{below, check_epsilon, ClosedSet, ExactSup, ProbeSet};
use crate::verdict::{Outcome, Resolution, Verdict, Witness};

/// A finite prefix of a countable collection of probes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeFamily {
    pub label: String,
    members: Vec<ProbeSet>,
    increasing: bool,
    /// The members are the whole collection, not a prefix of a longer one.
    complete: bool,
}

impl ProbeFamily {
    pub fn new(label: impl Into<String>, members: Vec<ProbeSet>) -> Result<Self> {
        let label = label.into();
        if members.is_empty() {
            return Err(Error::InvalidProbe(format!("family `{label}` has no members")));
        }
        let mut seen = HashSet::new();
        for m in &members {
            if !seen.insert(m.label.as_str()) {
                return Err(Error::InvalidProbe(format!(
                    "family `{label}` repeats member label `{}`",
                    m.label
                )));
            }
        }
        let increasing = members
            .windows(2)
            .all(|w| is_superset(w[1].sample(), w[0].sample()));
        Ok(ProbeFamily {
            label,
            members,
            increasing,
            complete: false,
        })
    }

    /// Marks the members as the entire collection (no series tail).
    pub fn complete(mut self) -> Self {
        self.complete = true;
        self
    }

    pub fn members(&self) -> &[ProbeSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn validate(&self, space: &GroundSpace) -> Result<()> {
        self.members.iter().try_for_each(|m| m.validate(space))
    }

    /// All sample points of the first `k` members, deduplicated.
    pub fn sample_points(&self, k: usize) -> Vec<Point> {
        let mut seen = HashSet::new();
        self.members
            .iter()
            .take(k)
            .flat_map(|m| m.sample())
            .filter(|p| seen.insert((*p).clone()))
            .cloned()
            .collect()
    }
}

fn is_superset(big: &[Point], small: &[Point]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let set: HashSet<&Point> = big.iter().collect();
    small.iter().all(|p| set.contains(p))
}

/// Replaces `S_n` by `S_1 ∪ … ∪ S_n`. Already increasing families are
/// returned unchanged, so the operation is idempotent.
pub fn normalize_increasing(family: &ProbeFamily) -> ProbeFamily {
    if family.increasing {
        return family.clone();
    }
    let mut members = Vec::with_capacity(family.members.len());
    let mut acc: Vec<Point> = Vec::new();
    let mut seen: HashSet<Point> = HashSet::new();
    let mut regions: Vec<ClosedSet> = Vec::new();
    let any_region = family.members.iter().any(|m| m.region().is_some());
    let mut all_exhaustive = true;
    for m in &family.members {
        for p in m.sample() {
            if seen.insert(p.clone()) {
                acc.push(p.clone());
            }
        }
        all_exhaustive &= m.is_exhaustive();
        regions.push(m.as_set().into_owned());
        let mut cum = ProbeSet::new(format!("{}'", m.label), acc.clone()).expect("nonempty sample");
        if any_region {
            cum = cum.with_region(ClosedSet::UnionOf(regions.clone()));
        } else if all_exhaustive {
            cum = cum.with_exact_sup(ExactSup::Exhaustive);
        }
        members.push(cum);
    }
    ProbeFamily {
        label: format!("{}'", family.label),
        members,
        increasing: true,
        complete: family.complete,
    }
}

/// Running `d(x, S'_n)` for `n = 1..=N`, stopping at the first covered index.
struct CoverScan {
    /// 1-based index of the first cumulative member covering the point.
    covered_at: Option<usize>,
    final_decision: Decision,
    last_distance: f64,
}

fn scan_point(space: &GroundSpace, family: &ProbeFamily, x: &Point, eps: f64) -> Result<CoverScan> {
    let mut running = f64::INFINITY;
    let mut decision = Decision::No;
    for (i, m) in family.members.iter().enumerate() {
        running = running.min(m.distance_from(space, x)?);
        decision = below(space, running, eps);
        if decision == Decision::Yes {
            return Ok(CoverScan {
                covered_at: Some(i + 1),
                final_decision: decision,
                last_distance: running,
            });
        }
    }
    Ok(CoverScan {
        covered_at: None,
        final_decision: decision,
        last_distance: running,
    })
}

/// Is `A ⊆ B(S'_n, ε)` for some member of the cumulative family?
///
/// A pass names the first covering index. A failure carries, for every
/// member, a point of `A` outside that member's enlargement.
pub fn weakly_s_totally_bounded(
    space: &GroundSpace,
    set: &ProbeSet,
    family: &ProbeFamily,
    eps: f64,
) -> Result<Verdict> {
    check_epsilon(eps)?;
    let res = Resolution::epsilon(eps).with_depth(family.len());
    let mut needed = 0usize;
    let mut undecided: Option<Witness> = None;
    for x in set.sample() {
        let scan = scan_point(space, family, x, eps)?;
        match (scan.covered_at, scan.final_decision) {
            (Some(i), _) => needed = needed.max(i),
            (None, Decision::No) => {
                // this point is outside every cumulative member
                let mut witnesses = Vec::with_capacity(family.len());
                let mut running = f64::INFINITY;
                for (i, m) in family.members.iter().enumerate() {
                    running = running.min(m.distance_from(space, x)?);
                    witnesses.push(
                        Witness::at_point(x.clone(), running)
                            .index(i + 1)
                            .label(m.label.clone()),
                    );
                }
                return Ok(Verdict::fail_with(witnesses, res));
            }
            (None, _) => {
                undecided.get_or_insert_with(|| {
                    Witness::at_point(x.clone(), scan.last_distance).index(family.len())
                });
            }
        }
    }
    if let Some(w) = undecided {
        return Ok(Verdict::undecided(w, res));
    }
    // excess of A over the covering cumulative member
    let mut value = 0.0f64;
    for x in set.sample() {
        let mut running = f64::INFINITY;
        for m in &family.members[..needed] {
            running = running.min(m.distance_from(space, x)?);
        }
        value = value.max(running);
    }
    let label = family.members[needed - 1].label.clone();
    Ok(Verdict::pass(res).with_witness(Witness::value(value).index(needed).label(label)))
}

/// Every test set is ε-covered by a single cumulative member, for every ε.
pub fn totally_bounded_family_check(
    space: &GroundSpace,
    candidates: &ProbeFamily,
    tests: &[ProbeSet],
    eps_grid: &[f64],
) -> Result<Verdict> {
    if eps_grid.is_empty() {
        return Err(Error::Parameter("epsilon grid is empty".into()));
    }
    if tests.is_empty() {
        return Err(Error::Parameter("no test sets".into()));
    }
    eps_grid.iter().try_for_each(|e| check_epsilon(*e))?;
    let min_eps = eps_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let res = Resolution::epsilon(min_eps).with_depth(candidates.len());
    let mut first_undecided: Option<(String, Verdict)> = None;
    let mut worst_index = 0usize;
    for t in tests {
        for &eps in eps_grid {
            let v = weakly_s_totally_bounded(space, t, candidates, eps)?;
            let tag = format!("{}@{eps}", t.label);
            match v.outcome {
                Outcome::Pass => {
                    worst_index = worst_index.max(v.witness().and_then(|w| w.index).unwrap_or(0));
                }
                Outcome::Fail => {
                    let w = v.witness().cloned().expect("fail has witness").label(tag.clone());
                    let mut out = Verdict::fail(w, Resolution::epsilon(eps).with_depth(candidates.len()));
                    out.parts.push((tag, v));
                    return Ok(out);
                }
                Outcome::Undecided => {
                    first_undecided.get_or_insert((tag, v));
                }
            }
        }
    }
    if let Some((tag, v)) = first_undecided {
        let w = v
            .witness()
            .cloned()
            .expect("undecided has witness")
            .label(tag.clone());
        let mut out = Verdict::undecided(w, res);
        out.parts.push((tag, v));
        return Ok(out);
    }
    Ok(Verdict::pass(res).with_witness(Witness::value(0.0).index(worst_index)))
}

/// Every grid point lies within `ε` of `⋃ S_n`.
pub fn s_separable_check(
    space: &GroundSpace,
    family: &ProbeFamily,
    grid: &ProbeSet,
    eps: f64,
) -> Result<Verdict> {
    check_epsilon(eps)?;
    let res = Resolution::epsilon(eps).with_depth(family.len());
    let mut undecided = None;
    for x in grid.sample() {
        let scan = scan_point(space, family, x, eps)?;
        if scan.covered_at.is_some() {
            continue;
        }
        let w = Witness::at_point(x.clone(), scan.last_distance);
        match scan.final_decision {
            Decision::No => return Ok(Verdict::fail(w, res)),
            _ => {
                undecided.get_or_insert(w);
            }
        }
    }
    Ok(match undecided {
        Some(w) => Verdict::undecided(w, res),
        None => Verdict::pass(res),
    })
}

//! Declarative scenarios: named spaces, sets, probes, families and
//! sequences, plus an ordered list of checks with expected outcomes.

mod builtin;
pub mod expr;
mod file;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bornology::{self, ProbeFamily};
use crate::convergence::{self, Implication, SetSequence};
use crate::error::{Error, Result};
use crate::hyperdist;
use crate::interval::IntervalValue;
use crate::metric::{GroundSpace, Point};
use crate::properties;
use crate::sets::{self, ClosedSet, ProbeSet};
use crate::verdict::{Outcome, Verdict};

pub use builtin::{builtin_ids, builtin_scenario, builtin_scenario_with};
pub use file::{load_scenario, parse_scenario};
pub use render::{render, Format};

/// A real number that may be written as an expression in scenario files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num(v)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Expr(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Num(i as f64)),
            Raw::Float(f) => Ok(Num(f)),
            Raw::Expr(s) => expr::eval(&s).map(Num).map_err(serde::de::Error::custom),
        }
    }
}

fn num_f64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Num::deserialize(d).map(|n| n.0)
}

/// Resolution defaults for checks that do not pin their own values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default, deny_unknown_fields)]
pub struct ScenarioResolution {
    #[serde(deserialize_with = "num_f64")]
    pub epsilon: f64,
    pub horizon: usize,
    pub depth: usize,
    #[serde(deserialize_with = "num_f64")]
    pub grid_step: f64,
    pub seed: u64,
}

impl Default for ScenarioResolution {
    fn default() -> Self {
        ScenarioResolution {
            epsilon: 1e-2,
            horizon: 1000,
            depth: 40,
            grid_step: 1e-2,
            seed: 0,
        }
    }
}

/// Command-line replacements for the scenario resolution.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub horizon: Option<usize>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, r: &mut ScenarioResolution) {
        if let Some(e) = self.epsilon {
            r.epsilon = e;
        }
        if let Some(h) = self.horizon {
            r.horizon = h;
        }
        if let Some(d) = self.depth {
            r.depth = d;
        }
        if let Some(s) = self.seed {
            r.seed = s;
        }
    }
}

/// One operation with its arguments given by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "op",
    rename_all = "kebab-case",
    rename_all_fields = "kebab-case",
    deny_unknown_fields
)]
pub enum Op {
    Distance {
        x: String,
        y: String,
    },
    SetDistance {
        point: String,
        set: String,
    },
    Excess {
        probe: String,
        set: String,
    },
    UniformDeviation {
        probe: String,
        a: String,
        c: String,
        cap: Option<Num>,
    },
    Entourage {
        probe: String,
        a: String,
        c: String,
        epsilon: Option<Num>,
    },
    InclusionInEnlargement {
        probe: String,
        set: String,
        epsilon: Option<Num>,
    },
    Dsa {
        family: String,
        a: String,
        c: String,
        depth: Option<usize>,
    },
    Hausdorff {
        probe: String,
        a: String,
        c: String,
    },
    AwDistance {
        center: String,
        balls: String,
        a: String,
        c: String,
        depth: Option<usize>,
    },
    WeaklyTotallyBounded {
        set: String,
        family: String,
        epsilon: Option<Num>,
    },
    TotallyBoundedFamily {
        family: String,
        /// Probe names or probe-group names.
        tests: Vec<String>,
        epsilons: Vec<Num>,
    },
    SSeparable {
        family: String,
        grid: String,
        epsilon: Option<Num>,
    },
    Wijsman {
        sequence: String,
        limit: String,
        test_points: String,
        epsilon: Option<Num>,
        horizon: Option<usize>,
    },
    TauSd {
        sequence: String,
        limit: String,
        family: String,
        epsilon: Option<Num>,
        horizon: Option<usize>,
    },
    SConvergence {
        sequence: String,
        limit: String,
        family: String,
        epsilon: Option<Num>,
        horizon: Option<usize>,
    },
    DsaConvergence {
        sequence: String,
        limit: String,
        family: String,
        epsilon: Option<Num>,
        horizon: Option<usize>,
        depth: Option<usize>,
    },
    SingletonEmbedding {
        points: String,
        limit: String,
        family: String,
        epsilon: Option<Num>,
        horizon: Option<usize>,
        depth: Option<usize>,
    },
    MetricAxioms {
        trials: usize,
    },
    DsaAxioms {
        trials: usize,
        ground_size: usize,
    },
    HausdorffIdentity {
        trials: usize,
        ground_size: usize,
    },
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Distance { .. } => "distance",
            Op::SetDistance { .. } => "set-distance",
            Op::Excess { .. } => "excess",
            Op::UniformDeviation { .. } => "uniform-deviation",
            Op::Entourage { .. } => "entourage",
            Op::InclusionInEnlargement { .. } => "inclusion-in-enlargement",
            Op::Dsa { .. } => "dsa",
            Op::Hausdorff { .. } => "hausdorff",
            Op::AwDistance { .. } => "aw-distance",
            Op::WeaklyTotallyBounded { .. } => "weakly-totally-bounded",
            Op::TotallyBoundedFamily { .. } => "totally-bounded-family",
            Op::SSeparable { .. } => "s-separable",
            Op::Wijsman { .. } => "wijsman",
            Op::TauSd { .. } => "tau-sd",
            Op::SConvergence { .. } => "s-convergence",
            Op::DsaConvergence { .. } => "dsa-convergence",
            Op::SingletonEmbedding { .. } => "singleton-embedding",
            Op::MetricAxioms { .. } => "metric-axioms",
            Op::DsaAxioms { .. } => "dsa-axioms",
            Op::HausdorffIdentity { .. } => "hausdorff-identity",
        }
    }
}

/// What a check is expected to produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expect {
    Pass,
    Fail,
    /// The computed `[lo, hi]` lies inside this interval.
    ValueInterval {
        lo: f64,
        hi: f64,
    },
    Unchecked,
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Pass => f.write_str("pass"),
            Expect::Fail => f.write_str("fail"),
            Expect::ValueInterval { lo, hi } => write!(f, "in [{lo}, {hi}]"),
            Expect::Unchecked => f.write_str("unchecked"),
        }
    }
}

impl Serialize for Expect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Expect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Interval { lo: Num, hi: Num },
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) => match t.as_str() {
                "pass" => Ok(Expect::Pass),
                "fail" => Ok(Expect::Fail),
                "unchecked" => Ok(Expect::Unchecked),
                other => Err(serde::de::Error::custom(format!(
                    "unknown expectation `{other}` (expected pass, fail, unchecked or {{ lo, hi }})"
                ))),
            },
            Raw::Interval { lo, hi } if lo.0 <= hi.0 => Ok(Expect::ValueInterval { lo: lo.0, hi: hi.0 }),
            Raw::Interval { .. } => Err(serde::de::Error::custom("expected interval has lo > hi")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub op: Op,
    pub expect: Expect,
}

/// A fully bound scenario.
#[derive(Debug, Clone, Default)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub space: Option<GroundSpace>,
    pub resolution: ScenarioResolution,
    pub points: BTreeMap<String, Point>,
    pub point_lists: BTreeMap<String, Vec<Point>>,
    pub sets: BTreeMap<String, ClosedSet>,
    pub probes: BTreeMap<String, ProbeSet>,
    pub probe_groups: BTreeMap<String, Vec<ProbeSet>>,
    pub families: BTreeMap<String, ProbeFamily>,
    pub sequences: BTreeMap<String, SetSequence>,
    pub checks: Vec<Check>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName {
        kind,
        name: name.to_string(),
    })
}

/// Parameters of a sequence check after defaults are filled in.
#[derive(Debug, Clone, PartialEq)]
struct SequenceArgs<'a> {
    seq: &'a SetSequence,
    limit: &'a ClosedSet,
    family: &'a ProbeFamily,
    eps: f64,
    horizon: usize,
    depth: usize,
}

impl Scenario {
    pub fn new(name: impl Into<String>, space: GroundSpace) -> Self {
        Scenario {
            name: name.into(),
            space: Some(space),
            ..Default::default()
        }
    }

    pub fn space(&self) -> Result<&GroundSpace> {
        self.space
            .as_ref()
            .ok_or_else(|| Error::Parameter(format!("scenario `{}` has no space", self.name)))
    }

    pub fn point(&self, name: &str) -> Result<&Point> {
        lookup(&self.points, "point", name)
    }

    pub fn set(&self, name: &str) -> Result<&ClosedSet> {
        lookup(&self.sets, "set", name)
    }

    pub fn probe(&self, name: &str) -> Result<&ProbeSet> {
        lookup(&self.probes, "probe", name)
    }

    pub fn family(&self, name: &str) -> Result<&ProbeFamily> {
        lookup(&self.families, "family", name)
    }

    pub fn sequence(&self, name: &str) -> Result<&SetSequence> {
        lookup(&self.sequences, "sequence", name)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn add_check(&mut self, id: impl Into<String>, op: Op, expect: Expect) {
        self.checks.push(Check {
            id: id.into(),
            op,
            expect,
        });
    }

    fn eps(&self, v: Option<Num>) -> f64 {
        v.map_or(self.resolution.epsilon, |n| n.0)
    }

    /// Probes named directly or through a probe group, in order.
    fn probe_list(&self, names: &[String]) -> Result<Vec<ProbeSet>> {
        let mut out = Vec::new();
        for n in names {
            if let Some(g) = self.probe_groups.get(n) {
                out.extend(g.iter().cloned());
            } else {
                out.push(self.probe(n)?.clone());
            }
        }
        Ok(out)
    }

    /// Checks that every name a check uses is defined and every object is
    /// valid in the scenario space.
    pub fn validate(&self) -> Result<()> {
        let space = self.space()?;
        for (n, p) in &self.points {
            space
                .check_point(p)
                .map_err(|e| Error::Parse(format!("point `{n}`: {e}")))?;
        }
        for (n, s) in &self.sets {
            s.validate(space)
                .map_err(|e| Error::Parse(format!("set `{n}`: {e}")))?;
        }
        for (n, p) in &self.probes {
            p.validate(space)
                .map_err(|e| Error::Parse(format!("probe `{n}`: {e}")))?;
        }
        for (n, f) in &self.families {
            f.validate(space)
                .map_err(|e| Error::Parse(format!("family `{n}`: {e}")))?;
        }
        let mut ids = BTreeSet::new();
        for c in &self.checks {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::Parse(format!("duplicate check id `{}`", c.id)));
            }
            self.check_names(&c.op)
                .map_err(|e| Error::Parse(format!("check `{}`: {e}", c.id)))?;
        }
        Ok(())
    }

    fn check_names(&self, op: &Op) -> Result<()> {
        match op {
            Op::Distance { x, y } => self.point(x).and(self.point(y)).map(drop),
            Op::SetDistance { point, set } => self.point(point).and(self.set(set)).map(drop),
            Op::Excess { probe, set } | Op::InclusionInEnlargement { probe, set, .. } => {
                self.probe(probe).and(self.set(set)).map(drop)
            }
            Op::UniformDeviation { probe, a, c, .. }
            | Op::Entourage { probe, a, c, .. }
            | Op::Hausdorff { probe, a, c } => self.probe(probe).and(self.set(a)).and(self.set(c)).map(drop),
            Op::Dsa { family, a, c, .. } => self.family(family).and(self.set(a)).and(self.set(c)).map(drop),
            Op::AwDistance {
                center, balls, a, c, ..
            } => self
                .point(center)
                .and(self.family(balls))
                .and(self.set(a))
                .and(self.set(c))
                .map(drop),
            Op::WeaklyTotallyBounded { set, family, .. } => {
                self.probe(set).and(self.family(family)).map(drop)
            }
            Op::TotallyBoundedFamily { family, tests, .. } => {
                self.family(family)?;
                self.probe_list(tests).map(drop)
            }
            Op::SSeparable { family, grid, .. } => self.family(family).and(self.probe(grid)).map(drop),
            Op::Wijsman {
                sequence,
                limit,
                test_points,
                ..
            } => self
                .sequence(sequence)
                .and(self.set(limit))
                .and(self.probe(test_points))
                .map(drop),
            Op::TauSd {
                sequence,
                limit,
                family,
                ..
            }
            | Op::SConvergence {
                sequence,
                limit,
                family,
                ..
            }
            | Op::DsaConvergence {
                sequence,
                limit,
                family,
                ..
            } => self
                .sequence(sequence)
                .and(self.set(limit))
                .and(self.family(family))
                .map(drop),
            Op::SingletonEmbedding {
                points,
                limit,
                family,
                ..
            } => {
                lookup(&self.point_lists, "point list", points)?;
                self.point(limit).and(self.family(family)).map(drop)
            }
            Op::MetricAxioms { .. } | Op::DsaAxioms { .. } | Op::HausdorffIdentity { .. } => Ok(()),
        }
    }

    fn sequence_args(&self, op: &Op) -> Result<Option<SequenceArgs<'_>>> {
        let r = &self.resolution;
        let (sequence, limit, family, epsilon, horizon, depth) = match op {
            Op::TauSd {
                sequence,
                limit,
                family,
                epsilon,
                horizon,
            }
            | Op::SConvergence {
                sequence,
                limit,
                family,
                epsilon,
                horizon,
            } => (sequence, limit, family, epsilon, horizon, &None),
            Op::DsaConvergence {
                sequence,
                limit,
                family,
                epsilon,
                horizon,
                depth,
            } => (sequence, limit, family, epsilon, horizon, depth),
            _ => return Ok(None),
        };
        Ok(Some(SequenceArgs {
            seq: self.sequence(sequence)?,
            limit: self.set(limit)?,
            family: self.family(family)?,
            eps: self.eps(*epsilon),
            horizon: horizon.unwrap_or(r.horizon),
            depth: depth.unwrap_or(r.depth),
        }))
    }
}

/// What a single check produced.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckValue {
    Verdict(Verdict),
    Scalar { value: f64, exact: bool },
    Interval(IntervalValue),
}

impl CheckValue {
    fn outcome(&self) -> RowOutcome {
        match self {
            CheckValue::Verdict(v) => match v.outcome {
                Outcome::Pass => RowOutcome::Pass,
                Outcome::Fail => RowOutcome::Fail,
                Outcome::Undecided => RowOutcome::Undecided,
            },
            _ => RowOutcome::Value,
        }
    }

    fn bounds(&self) -> (Option<f64>, Option<f64>) {
        match self {
            CheckValue::Scalar { value, .. } => (Some(*value), Some(*value)),
            CheckValue::Interval(iv) => (Some(iv.lo), Some(iv.hi)),
            CheckValue::Verdict(_) => (None, None),
        }
    }

    fn witness(&self) -> String {
        match self {
            CheckValue::Verdict(v) => v.witnesses.first().map(|w| w.to_string()).unwrap_or_default(),
            CheckValue::Scalar { exact, .. } => {
                if *exact {
                    String::new()
                } else {
                    "lower bound only".into()
                }
            }
            CheckValue::Interval(iv) => {
                let mut s = format!("depth={}", iv.depth);
                if !iv.is_exact() {
                    s.push_str(" lower bound only");
                }
                s
            }
        }
    }
}

/// Evaluates one operation against the scenario's definitions.
pub fn evaluate(s: &Scenario, op: &Op) -> Result<CheckValue> {
    let space = s.space()?;
    let r = &s.resolution;
    let verdict = |v: Verdict| Ok(CheckValue::Verdict(v));
    match op {
        Op::Distance { x, y } => Ok(CheckValue::Scalar {
            value: space.distance(s.point(x)?, s.point(y)?)?,
            exact: true,
        }),
        Op::SetDistance { point, set } => Ok(CheckValue::Scalar {
            value: s.set(set)?.distance(space, s.point(point)?)?,
            exact: true,
        }),
        Op::Excess { probe, set } => {
            let e = sets::excess(space, s.probe(probe)?, s.set(set)?)?;
            Ok(CheckValue::Scalar {
                value: e.value,
                exact: e.exact,
            })
        }
        Op::UniformDeviation { probe, a, c, cap } => {
            let d =
                hyperdist::uniform_deviation(space, s.probe(probe)?, s.set(a)?, s.set(c)?, cap.map(|n| n.0))?;
            Ok(CheckValue::Scalar {
                value: d.value,
                exact: d.exact,
            })
        }
        Op::Entourage { probe, a, c, epsilon } => {
            let eps = s.eps(*epsilon);
            let p = s.probe(probe)?;
            let (a, c) = (s.set(a)?, s.set(c)?);
            let inside = hyperdist::entourage_test(space, p, eps, a, c)?;
            let d = hyperdist::uniform_deviation(space, p, a, c, Some(eps))?;
            let res = crate::verdict::Resolution::epsilon(eps);
            let w = crate::verdict::Witness::value(d.value).label(p.label.clone());
            verdict(if inside {
                Verdict::pass(res).with_witness(w)
            } else {
                Verdict::fail(w, res)
            })
        }
        Op::InclusionInEnlargement { probe, set, epsilon } => verdict(sets::inclusion_in_enlargement(
            space,
            s.probe(probe)?,
            s.set(set)?,
            s.eps(*epsilon),
        )?),
        Op::Dsa { family, a, c, depth } => Ok(CheckValue::Interval(hyperdist::dsa(
            space,
            s.family(family)?,
            s.set(a)?,
            s.set(c)?,
            depth.unwrap_or(r.depth),
        )?)),
        Op::Hausdorff { probe, a, c } => {
            let h = hyperdist::hausdorff_distance(space, s.set(a)?, s.set(c)?, s.probe(probe)?)?;
            Ok(CheckValue::Scalar {
                value: h.value,
                exact: h.exact,
            })
        }
        Op::AwDistance {
            center,
            balls,
            a,
            c,
            depth,
        } => Ok(CheckValue::Interval(hyperdist::aw_distance(
            space,
            s.point(center)?,
            s.set(a)?,
            s.set(c)?,
            depth.unwrap_or(r.depth),
            s.family(balls)?,
        )?)),
        Op::WeaklyTotallyBounded { set, family, epsilon } => verdict(bornology::weakly_s_totally_bounded(
            space,
            s.probe(set)?,
            s.family(family)?,
            s.eps(*epsilon),
        )?),
        Op::TotallyBoundedFamily {
            family,
            tests,
            epsilons,
        } => {
            let eps: Vec<f64> = epsilons.iter().map(|n| n.0).collect();
            verdict(bornology::totally_bounded_family_check(
                space,
                s.family(family)?,
                &s.probe_list(tests)?,
                &eps,
            )?)
        }
        Op::SSeparable {
            family,
            grid,
            epsilon,
        } => verdict(bornology::s_separable_check(
            space,
            s.family(family)?,
            s.probe(grid)?,
            s.eps(*epsilon),
        )?),
        Op::Wijsman {
            sequence,
            limit,
            test_points,
            epsilon,
            horizon,
        } => verdict(convergence::wijsman_check(
            space,
            s.sequence(sequence)?,
            s.set(limit)?,
            s.probe(test_points)?.sample(),
            s.eps(*epsilon),
            horizon.unwrap_or(r.horizon),
        )?),
        Op::TauSd { .. } | Op::SConvergence { .. } | Op::DsaConvergence { .. } => {
            let a = s.sequence_args(op)?.expect("sequence op");
            verdict(match op {
                Op::TauSd { .. } => {
                    convergence::tau_sd_check(space, a.seq, a.limit, a.family, a.eps, a.horizon)?
                }
                Op::SConvergence { .. } => {
                    convergence::s_convergence_check(space, a.seq, a.limit, a.family, a.eps, a.horizon)?
                }
                _ => convergence::dsa_convergence_check(
                    space, a.seq, a.limit, a.family, a.eps, a.horizon, a.depth,
                )?,
            })
        }
        Op::SingletonEmbedding {
            points,
            limit,
            family,
            epsilon,
            horizon,
            depth,
        } => verdict(convergence::singleton_embedding_check(
            space,
            lookup(&s.point_lists, "point list", points)?,
            s.point(limit)?,
            s.family(family)?,
            s.eps(*epsilon),
            horizon.unwrap_or(r.horizon),
            depth.unwrap_or(r.depth),
        )?),
        Op::MetricAxioms { trials } => verdict(properties::metric_axioms(space, *trials, r.seed)?),
        Op::DsaAxioms { trials, ground_size } => {
            verdict(properties::dsa_axioms(*trials, *ground_size, r.seed)?)
        }
        Op::HausdorffIdentity { trials, ground_size } => {
            verdict(properties::hausdorff_identity(*trials, *ground_size, r.seed)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowOutcome {
    Pass,
    Fail,
    Undecided,
    Value,
    Error,
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowOutcome::Pass => "pass",
            RowOutcome::Fail => "fail",
            RowOutcome::Undecided => "undecided",
            RowOutcome::Value => "value",
            RowOutcome::Error => "error",
        })
    }
}

// JSON has no infinities
fn bound<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.is_finite() => s.serialize_f64(*x),
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub scenario: String,
    pub check_id: String,
    pub op: String,
    pub outcome: RowOutcome,
    #[serde(serialize_with = "bound")]
    pub lo: Option<f64>,
    #[serde(serialize_with = "bound")]
    pub hi: Option<f64>,
    pub witness: String,
    /// Wall time in milliseconds, recorded only when timing is requested.
    pub ms: Option<f64>,
    pub expected: Expect,
    pub met: bool,
    #[serde(skip)]
    pub value: Option<CheckValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub all_expected_met: bool,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn row(&self, id: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.check_id == id)
    }
}

fn expectation_met(expect: Expect, value: &CheckValue) -> bool {
    match (expect, value) {
        (Expect::Unchecked, _) => true,
        (Expect::Pass, CheckValue::Verdict(v)) => v.outcome == Outcome::Pass,
        (Expect::Fail, CheckValue::Verdict(v)) => v.outcome == Outcome::Fail,
        (Expect::ValueInterval { lo, hi }, v) => match v.bounds() {
            (Some(l), Some(h)) => lo <= l && h <= hi,
            _ => false,
        },
        _ => false,
    }
}

/// Runs every check in declaration order. Errors are reported in their row
/// and never stop later checks.
pub fn run_scenario(s: &Scenario, timing: bool) -> Report {
    let mut rows = Vec::with_capacity(s.checks.len());
    for c in &s.checks {
        let start = Instant::now();
        let result = evaluate(s, &c.op);
        let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let row = match result {
            Ok(v) => {
                let (lo, hi) = v.bounds();
                Row {
                    scenario: s.name.clone(),
                    check_id: c.id.clone(),
                    op: c.op.name().into(),
                    outcome: v.outcome(),
                    lo,
                    hi,
                    witness: v.witness(),
                    ms,
                    expected: c.expect,
                    met: expectation_met(c.expect, &v),
                    value: Some(v),
                }
            }
            Err(e) => Row {
                scenario: s.name.clone(),
                check_id: c.id.clone(),
                op: c.op.name().into(),
                outcome: RowOutcome::Error,
                lo: None,
                hi: None,
                witness: e.to_string(),
                ms,
                expected: c.expect,
                met: false,
                value: None,
            },
        };
        rows.push(row);
    }
    Report {
        scenario: s.name.clone(),
        all_expected_met: rows.iter().all(|r| r.met),
        rows,
    }
}

/// One mode implication checked on the data of a scenario check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub check_id: String,
    pub implication: Implication,
}

/// Checks the implications between convergence modes on every sequence
/// check of the scenario with a family: series convergence at `ε` against
/// Wijsman at `4ε` (when `ε < 1/4`), and uniform against enlargement
/// convergence at `ε`.
pub fn mode_comparisons(s: &Scenario) -> Result<Vec<Comparison>> {
    let space = s.space()?;
    let mut out = Vec::new();
    let mut seen: Vec<SequenceArgs<'_>> = Vec::new();
    for c in &s.checks {
        let Some(a) = s.sequence_args(&c.op)? else {
            continue;
        };
        if seen.contains(&a) {
            continue;
        }
        out.push(Comparison {
            check_id: c.id.clone(),
            implication: convergence::tau_implies_s(space, a.seq, a.limit, a.family, a.eps, a.horizon)?,
        });
        if a.eps < 0.25 {
            out.push(Comparison {
                check_id: c.id.clone(),
                implication: convergence::dsa_implies_wijsman(
                    space, a.seq, a.limit, a.family, a.eps, a.horizon, a.depth,
                )?,
            });
        }
        seen.push(a);
    }
    Ok(out)
}

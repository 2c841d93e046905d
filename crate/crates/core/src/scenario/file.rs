//! TOML scenario files.
//!
//! ```toml
//! name = "growing"
//!
//! [space]
//! rule = "zero-one"
//!
//! [resolution]
//! epsilon = "2^-3"
//!
//! [sets.R]
//! type = "whole-space"
//!
//! [families.A]
//! generator = "intervals"
//! count = 40
//!
//! [sequences.An]
//! generator = "growing-intervals"
//!
//! [[checks]]
//! id = "converges"
//! op = "dsa-convergence"
//! sequence = "An"
//! limit = "R"
//! family = "A"
//! horizon = 20
//! expect = "pass"
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::{expr, Check, Expect, Num, Op, Overrides, Scenario, ScenarioResolution};
use crate::bornology::{normalize_increasing, ProbeFamily};
use crate::convergence::SetSequence;
use crate::error::{Error, Result};
use crate::hyperdist::ball_probes;
use crate::metric::{GroundSpace, MetricRule, Point, PointKind};
use crate::sampling::{disc_sample, grid, rational_pairs, rationals};
use crate::sets::{ClosedSet, ExactSup, ProbeSet};

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileSpec {
    name: String,
    #[serde(default)]
    description: String,
    space: SpaceSpec,
    #[serde(default)]
    resolution: ScenarioResolution,
    #[serde(default)]
    points: BTreeMap<String, PointSpec>,
    #[serde(default)]
    point_lists: BTreeMap<String, PointListSpec>,
    #[serde(default)]
    sets: BTreeMap<String, SetSpec>,
    #[serde(default)]
    probes: BTreeMap<String, ProbeSpec>,
    #[serde(default)]
    probe_groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    sequences: BTreeMap<String, SequenceSpec>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct SpaceSpec {
    rule: String,
    kind: Option<String>,
    dim: Option<usize>,
}

impl SpaceSpec {
    fn build(&self) -> Result<GroundSpace> {
        let rule: MetricRule = self.rule.parse()?;
        let kind = match self.kind.as_deref() {
            Some("scalar") => PointKind::Scalar,
            Some("vector") => PointKind::Vector(self.dim.unwrap_or(2)),
            Some("seq") => PointKind::Seq,
            Some(other) => {
                return Err(Error::UnknownName {
                    kind: "point kind",
                    name: other.into(),
                })
            }
            None => match rule {
                MetricRule::EuclideanNorm => PointKind::Vector(self.dim.unwrap_or(2)),
                MetricRule::FrenchMetro => PointKind::Vector(2),
                MetricRule::SupSeq => PointKind::Seq,
                MetricRule::UsualLine | MetricRule::ZeroOne => PointKind::Scalar,
            },
        };
        GroundSpace::new(kind, rule)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PointSpec {
    Scalar(Num),
    Vector(Vec<Num>),
    /// 1-based index → value.
    Seq(BTreeMap<String, Num>),
}

impl PointSpec {
    fn build(&self, kind: PointKind) -> Result<Point> {
        match (self, kind) {
            (PointSpec::Scalar(v), PointKind::Scalar) => Point::scalar(v.0),
            (PointSpec::Vector(v), PointKind::Vector(_)) => {
                Point::vector(v.iter().map(|n| n.0).collect::<Vec<_>>())
            }
            (PointSpec::Vector(v), PointKind::Seq) => {
                Point::seq_dense(&v.iter().map(|n| n.0).collect::<Vec<_>>())
            }
            (PointSpec::Seq(m), PointKind::Seq) => {
                let mut entries = Vec::with_capacity(m.len());
                for (k, v) in m {
                    let i: usize = k.parse().ok().filter(|i| *i >= 1).ok_or_else(|| {
                        Error::Parse(format!("sequence index `{k}` is not a positive integer"))
                    })?;
                    entries.push((i, v.0));
                }
                Point::seq(entries)
            }
            (spec, kind) => Err(Error::Parse(format!(
                "point {spec:?} does not fit a {kind} space"
            ))),
        }
    }
}

fn build_points(specs: &[PointSpec], kind: PointKind) -> Result<Vec<Point>> {
    specs.iter().map(|p| p.build(kind)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PointListSpec {
    List(Vec<PointSpec>),
    Formula { formula: OneOrMany, count: usize },
}

impl PointListSpec {
    fn build(&self, kind: PointKind) -> Result<Vec<Point>> {
        match self {
            PointListSpec::List(v) => build_points(v, kind),
            PointListSpec::Formula { formula, count } => (1..=*count)
                .map(|n| {
                    let n = Some(n as f64);
                    let spec = match formula {
                        OneOrMany::One(f) => PointSpec::Scalar(Num(expr::eval_with(f, n)?)),
                        OneOrMany::Many(fs) => PointSpec::Vector(
                            fs.iter()
                                .map(|f| expr::eval_with(f, n).map(Num))
                                .collect::<Result<_>>()?,
                        ),
                    };
                    spec.build(kind)
                })
                .collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum SetSpec {
    Finite { points: Vec<PointSpec> },
    Interval { lo: Num, hi: Num },
    Line { slope: Num },
    AxisLattice,
    Ball { radius: Num },
    WholeSpace,
    Union { members: Vec<String> },
}

fn build_set(
    name: &str,
    specs: &BTreeMap<String, SetSpec>,
    kind: PointKind,
    stack: &mut Vec<String>,
) -> Result<ClosedSet> {
    let spec = specs.get(name).ok_or_else(|| Error::UnknownName {
        kind: "set",
        name: name.into(),
    })?;
    if stack.iter().any(|s| s == name) {
        return Err(Error::Parse(format!(
            "set `{name}` is defined in terms of itself"
        )));
    }
    stack.push(name.into());
    let set = match spec {
        SetSpec::Finite { points } => ClosedSet::finite(build_points(points, kind)?),
        SetSpec::Interval { lo, hi } => ClosedSet::interval(lo.0, hi.0),
        SetSpec::Line { slope } => ClosedSet::line(slope.0),
        SetSpec::AxisLattice => Ok(ClosedSet::AxisLattice),
        SetSpec::Ball { radius } => ClosedSet::ball(radius.0),
        SetSpec::WholeSpace => Ok(ClosedSet::WholeSpace),
        SetSpec::Union { members } => members
            .iter()
            .map(|m| build_set(m, specs, kind, stack))
            .collect::<Result<Vec<_>>>()
            .and_then(ClosedSet::union),
    };
    stack.pop();
    set.map_err(|e| Error::Parse(format!("set `{name}`: {e}")))
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct GridSpec {
    lo: Num,
    hi: Num,
    step: Option<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct DiscSpec {
    center: Vec<Num>,
    radius: Num,
    rings: usize,
    spokes: usize,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RandomSpec {
    count: usize,
    lo: Num,
    hi: Num,
}

/// Exactly one sample source must be given.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct ProbeSpec {
    label: Option<String>,
    points: Option<Vec<PointSpec>>,
    grid: Option<GridSpec>,
    /// Square grid in the plane.
    grid2: Option<GridSpec>,
    rationals: Option<usize>,
    rational_pairs: Option<usize>,
    /// The first `k` points of `ℕ × {0}`.
    lattice: Option<usize>,
    disc: Option<DiscSpec>,
    random: Option<RandomSpec>,
    exact_sup: Option<ExactSup>,
    #[serde(default)]
    exhaustive: bool,
    region: Option<String>,
}

fn random_point<R: Rng>(kind: PointKind, lo: f64, hi: f64, rng: &mut R) -> Result<Point> {
    if lo >= hi {
        return Err(Error::Parse(format!("random range [{lo}, {hi}) is empty")));
    }
    Ok(match kind {
        PointKind::Scalar => Point::Scalar(rng.random_range(lo..hi)),
        PointKind::Vector(d) => Point::Vector((0..d).map(|_| rng.random_range(lo..hi)).collect()),
        PointKind::Seq => {
            let k = rng.random_range(1..=5usize);
            Point::seq((0..k).map(|_| (rng.random_range(1..=10usize), rng.random_range(lo..hi))))?
        }
    })
}

struct Ctx<'a> {
    kind: PointKind,
    step: f64,
    sets: &'a BTreeMap<String, ClosedSet>,
}

impl ProbeSpec {
    fn build<R: Rng>(&self, name: &str, ctx: &Ctx<'_>, rng: &mut R) -> Result<ProbeSet> {
        let kind = ctx.kind;
        let mut sources: Vec<Vec<Point>> = Vec::new();
        if let Some(p) = &self.points {
            sources.push(build_points(p, kind)?);
        }
        if let Some(g) = &self.grid {
            let step = g.step.map_or(ctx.step, |s| s.0);
            sources.push(build_points(
                &grid(g.lo.0, g.hi.0, step)
                    .into_iter()
                    .map(|v| PointSpec::Scalar(Num(v)))
                    .collect::<Vec<_>>(),
                kind,
            )?);
        }
        if let Some(g) = &self.grid2 {
            let axis = grid(g.lo.0, g.hi.0, g.step.map_or(ctx.step, |s| s.0));
            let pts = axis
                .iter()
                .flat_map(|&x| axis.iter().map(move |&y| PointSpec::Vector(vec![Num(x), Num(y)])))
                .collect::<Vec<_>>();
            sources.push(build_points(&pts, kind)?);
        }
        if let Some(n) = self.rationals {
            sources.push(build_points(
                &rationals(n)
                    .into_iter()
                    .map(|v| PointSpec::Scalar(Num(v)))
                    .collect::<Vec<_>>(),
                kind,
            )?);
        }
        if let Some(n) = self.rational_pairs {
            sources.push(build_points(
                &rational_pairs(n)
                    .into_iter()
                    .map(|(x, y)| PointSpec::Vector(vec![Num(x), Num(y)]))
                    .collect::<Vec<_>>(),
                kind,
            )?);
        }
        if let Some(m) = self.lattice {
            sources.push(build_points(
                &(1..=m)
                    .map(|k| PointSpec::Vector(vec![Num(k as f64), Num(0.0)]))
                    .collect::<Vec<_>>(),
                kind,
            )?);
        }
        if let Some(d) = &self.disc {
            if d.center.len() != 2 || kind != PointKind::Vector(2) {
                return Err(Error::Parse(
                    "disc samples need a plane space and a 2-d center".into(),
                ));
            }
            sources.push(disc_sample(
                (d.center[0].0, d.center[1].0),
                d.radius.0,
                d.rings,
                d.spokes,
            ));
        }
        if let Some(r) = &self.random {
            sources.push(
                (0..r.count)
                    .map(|_| random_point(kind, r.lo.0, r.hi.0, rng))
                    .collect::<Result<_>>()?,
            );
        }
        if sources.len() != 1 {
            return Err(Error::Parse(format!(
                "probe `{name}` needs exactly one of points, grid, grid2, rationals, rational-pairs, lattice, disc, random"
            )));
        }
        let label = self.label.clone().unwrap_or_else(|| name.to_string());
        let mut p = ProbeSet::new(label, sources.pop().expect("one source"))?;
        if self.exhaustive {
            p = p.with_exact_sup(ExactSup::Exhaustive);
        }
        if let Some(e) = self.exact_sup {
            p = p.with_exact_sup(e);
        }
        if let Some(r) = &self.region {
            let set = ctx.sets.get(r).ok_or_else(|| Error::UnknownName {
                kind: "set",
                name: r.clone(),
            })?;
            p = p.with_region(set.clone());
        }
        Ok(p)
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct GroupSpec {
    members: Option<Vec<String>>,
    random: Option<RandomGroupSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RandomGroupSpec {
    count: usize,
    max_size: usize,
    lo: Num,
    hi: Num,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FamilySpec {
    label: Option<String>,
    members: Option<Vec<String>>,
    generator: Option<String>,
    count: Option<usize>,
    step: Option<Num>,
    center: Option<PointSpec>,
    per_unit: Option<usize>,
    #[serde(default)]
    complete: bool,
    #[serde(default)]
    normalize: bool,
}

impl FamilySpec {
    fn build(
        &self,
        name: &str,
        space: &GroundSpace,
        probes: &BTreeMap<String, ProbeSet>,
    ) -> Result<ProbeFamily> {
        let label = self.label.clone().unwrap_or_else(|| name.to_string());
        let count = || {
            self.count
                .ok_or_else(|| Error::Parse(format!("family `{name}` needs a count")))
        };
        let singles = |pts: Vec<Point>| {
            ProbeFamily::new(
                label.clone(),
                pts.into_iter()
                    .enumerate()
                    .map(|(i, p)| ProbeSet::singleton(format!("{name}{}", i + 1), p))
                    .collect(),
            )
        };
        let mut fam = match (&self.members, self.generator.as_deref()) {
            (Some(m), None) => {
                let members = m
                    .iter()
                    .map(|n| {
                        probes.get(n).cloned().ok_or_else(|| Error::UnknownName {
                            kind: "probe",
                            name: n.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                ProbeFamily::new(label.clone(), members)?
            }
            (None, Some("rational-singletons")) => {
                singles(rationals(count()?).into_iter().map(Point::Scalar).collect())?
            }
            (None, Some("rational-pair-singletons")) => singles(
                rational_pairs(count()?)
                    .into_iter()
                    .map(|(x, y)| Point::xy(x, y))
                    .collect(),
            )?,
            (None, Some("intervals")) => {
                let step = self.step.map_or(0.5, |s| s.0);
                let members = (1..=count()?)
                    .map(|m| {
                        let m = m as f64;
                        let p = ProbeSet::new(
                            format!("[-{m},{m}]"),
                            grid(-m, m, step).into_iter().map(Point::Scalar).collect(),
                        )?;
                        Ok(if space.rule() == MetricRule::ZeroOne {
                            p.with_exact_sup(ExactSup::DiscreteIndicator { lo: -m, hi: m })
                        } else {
                            p.with_region(ClosedSet::interval(-m, m)?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                ProbeFamily::new(label.clone(), members)?
            }
            (None, Some("balls")) => {
                let center = match &self.center {
                    Some(c) => c.build(space.kind())?,
                    None => space.origin(),
                };
                ball_probes(space, &center, count()?, self.per_unit.unwrap_or(2))?
            }
            (None, Some(other)) => {
                return Err(Error::UnknownName {
                    kind: "family generator",
                    name: other.into(),
                })
            }
            _ => {
                return Err(Error::Parse(format!(
                    "family `{name}` needs exactly one of members or generator"
                )))
            }
        };
        if self.normalize {
            fam = normalize_increasing(&fam);
        }
        if self.complete {
            fam = fam.complete();
        }
        Ok(fam)
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case", deny_unknown_fields)]
enum SequenceSpec {
    LinesThroughOrigin,
    GrowingIntervals,
    DensePrefix {
        probe: Option<String>,
        points: Option<Vec<PointSpec>>,
    },
    Constant {
        set: String,
    },
    Explicit {
        sets: Vec<String>,
    },
    Singletons {
        points: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
struct CheckSpec {
    id: String,
    #[serde(default = "unchecked")]
    expect: Expect,
    #[serde(flatten)]
    op: Op,
}

fn unchecked() -> Expect {
    Expect::Unchecked
}

fn named<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName {
        kind,
        name: name.into(),
    })
}

/// Parses a scenario from TOML text.
pub fn parse_scenario(text: &str, overrides: &Overrides) -> Result<Scenario> {
    let spec: FileSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let space = spec.space.build()?;
    let kind = space.kind();
    let mut resolution = spec.resolution;
    overrides.apply(&mut resolution);
    let mut rng = ChaCha8Rng::seed_from_u64(resolution.seed);

    let mut s = Scenario {
        name: spec.name,
        description: spec.description,
        space: Some(space),
        resolution,
        ..Default::default()
    };
    for (n, p) in &spec.points {
        s.points.insert(n.clone(), p.build(kind)?);
    }
    for (n, l) in &spec.point_lists {
        s.point_lists.insert(n.clone(), l.build(kind)?);
    }
    for n in spec.sets.keys() {
        let set = build_set(n, &spec.sets, kind, &mut Vec::new())?;
        s.sets.insert(n.clone(), set);
    }
    let ctx = Ctx {
        kind,
        step: resolution.grid_step,
        sets: &s.sets,
    };
    let mut probes = BTreeMap::new();
    for (n, p) in &spec.probes {
        probes.insert(n.clone(), p.build(n, &ctx, &mut rng)?);
    }
    s.probes = probes;
    for (n, g) in &spec.probe_groups {
        let group = match (&g.members, &g.random) {
            (Some(m), None) => m
                .iter()
                .map(|p| named(&s.probes, "probe", p).cloned())
                .collect::<Result<Vec<_>>>()?,
            (None, Some(r)) => (1..=r.count)
                .map(|i| {
                    let len = rng.random_range(1..=r.max_size.max(1));
                    let pts = (0..len)
                        .map(|_| random_point(kind, r.lo.0, r.hi.0, &mut rng))
                        .collect::<Result<Vec<_>>>()?;
                    ProbeSet::new(format!("{n}{i}"), pts)
                })
                .collect::<Result<Vec<_>>>()?,
            _ => {
                return Err(Error::Parse(format!(
                    "probe group `{n}` needs exactly one of members or random"
                )))
            }
        };
        s.probe_groups.insert(n.clone(), group);
    }
    for (n, f) in &spec.families {
        let fam = f
            .build(n, &space, &s.probes)
            .map_err(|e| Error::Parse(format!("family `{n}`: {e}")))?;
        s.families.insert(n.clone(), fam);
    }
    for (n, q) in &spec.sequences {
        let seq = match q {
            SequenceSpec::LinesThroughOrigin => SetSequence::LinesThroughOrigin,
            SequenceSpec::GrowingIntervals => SetSequence::GrowingIntervals,
            SequenceSpec::DensePrefix { probe, points } => match (probe, points) {
                (Some(p), None) => SetSequence::dense_prefix(named(&s.probes, "probe", p)?.sample().to_vec()),
                (None, Some(pts)) => SetSequence::dense_prefix(build_points(pts, kind)?),
                _ => {
                    return Err(Error::Parse(format!(
                        "sequence `{n}` needs exactly one of probe or points"
                    )))
                }
            },
            SequenceSpec::Constant { set } => SetSequence::constant(named(&s.sets, "set", set)?.clone()),
            SequenceSpec::Explicit { sets } => SetSequence::explicit(
                sets.iter()
                    .map(|x| named(&s.sets, "set", x).cloned())
                    .collect::<Result<_>>()?,
            ),
            SequenceSpec::Singletons { points } => {
                SetSequence::singletons(named(&s.point_lists, "point list", points)?)
            }
        };
        s.sequences.insert(n.clone(), seq);
    }
    s.checks = spec
        .checks
        .into_iter()
        .map(|c| Check {
            id: c.id,
            op: c.op,
            expect: c.expect,
        })
        .collect();
    s.validate()?;
    Ok(s)
}

pub fn load_scenario(path: &Path, overrides: &Overrides) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text, overrides)
}

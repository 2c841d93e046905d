//! Built-in scenarios, one per id in `builtin_ids`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Expect, Num, Op, Overrides, Scenario};
use crate::bornology::ProbeFamily;
use crate::convergence::SetSequence;
use crate::error::{Error, Result};
use crate::hyperdist::ball_probes;
use crate::metric::{GroundSpace, Point};
use crate::sampling::{disc_sample, grid, rational_pairs, rationals, scalar_grid};
use crate::sets::{ClosedSet, ExactSup, ProbeSet};

const IDS: [&str; 8] = [
    "ex-3-4",
    "ex-3-5",
    "ex-3-6",
    "ex-3-7",
    "ex-4-6",
    "ex-4-11",
    "hausdorff-identity",
    "aw-lines",
];

pub fn builtin_ids() -> &'static [&'static str] {
    &IDS
}

pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    builtin_scenario_with(name, &Overrides::default())
}

/// Builds a built-in scenario; random content is drawn from the
/// (possibly overridden) seed.
pub fn builtin_scenario_with(name: &str, overrides: &Overrides) -> Result<Scenario> {
    let build: fn(&mut Scenario, &mut ChaCha8Rng) -> Result<()> = match name {
        "ex-3-4" => ex_3_4,
        "ex-3-5" => ex_3_5,
        "ex-3-6" => ex_3_6,
        "ex-3-7" => ex_3_7,
        "ex-4-6" => ex_4_6,
        "ex-4-11" => ex_4_11,
        "hausdorff-identity" => hausdorff_identity,
        "aw-lines" => aw_lines,
        other => {
            return Err(Error::UnknownScenario {
                name: other.into(),
                known: IDS.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    let mut s = Scenario {
        name: name.into(),
        ..Default::default()
    };
    overrides.apply(&mut s.resolution);
    let mut rng = ChaCha8Rng::seed_from_u64(s.resolution.seed);
    build(&mut s, &mut rng)?;
    s.validate()?;
    Ok(s)
}

fn eps(v: f64) -> Option<Num> {
    Some(Num(v))
}

fn value(lo: f64, hi: f64) -> Expect {
    Expect::ValueInterval { lo, hi }
}

fn singletons(label: &str, points: Vec<Point>) -> Result<ProbeFamily> {
    ProbeFamily::new(
        label,
        points
            .into_iter()
            .enumerate()
            .map(|(i, p)| ProbeSet::singleton(format!("{label}{}", i + 1), p))
            .collect(),
    )
}

fn rational_singletons(count: usize) -> Result<ProbeFamily> {
    singletons("q", rationals(count).into_iter().map(Point::Scalar).collect())
}

fn rational_pair_points(count: usize) -> Vec<Point> {
    rational_pairs(count)
        .into_iter()
        .map(|(x, y)| Point::xy(x, y))
        .collect()
}

/// `{[-m, m]}` for `m = 1..=count` under the 0-1 metric.
fn discrete_intervals(count: usize, step: f64) -> Result<ProbeFamily> {
    let members = (1..=count)
        .map(|m| {
            let m = m as f64;
            Ok(ProbeSet::new(format!("[-{m},{m}]"), scalar_grid(-m, m, step))?
                .with_exact_sup(ExactSup::DiscreteIndicator { lo: -m, hi: m }))
        })
        .collect::<Result<Vec<_>>>()?;
    ProbeFamily::new("intervals", members)
}

fn ex_3_4(s: &mut Scenario, rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "Finite subsets of the real line are totally bounded by rational singletons".into();
    s.space = Some(GroundSpace::real_line());
    let step = s.resolution.grid_step;
    let (pi, e) = (std::f64::consts::PI, std::f64::consts::E);

    #[allow(clippy::approx_constant)]
    s.sets
        .insert("near-rationals".into(), ClosedSet::scalars(&[3.14, 2.72])?);
    s.sets.insert("R".into(), ClosedSet::WholeSpace);
    s.sets.insert("unit".into(), ClosedSet::interval(0.0, 1.0)?);
    s.probes.insert(
        "pi-e".into(),
        ProbeSet::new("{pi, e}", vec![Point::Scalar(pi), Point::Scalar(e)])?,
    );
    s.probes.insert(
        "grid".into(),
        ProbeSet::new("[-10,10] grid", scalar_grid(-10.0, 10.0, step))?,
    );
    s.probes.insert(
        "window".into(),
        ProbeSet::new("[-5,5] grid", scalar_grid(-5.0, 5.0, 0.05))?,
    );
    let unit_grid = scalar_grid(0.0, 1.0, step);
    s.probes.insert(
        "unit-grid".into(),
        ProbeSet::new("[0,1] grid", unit_grid.clone())?,
    );

    let random_sets = (1..=100)
        .map(|i| {
            let len = rng.random_range(1..=5usize);
            let pts = (0..len)
                .map(|_| Point::Scalar(rng.random_range(-2.0..2.0)))
                .collect();
            ProbeSet::new(format!("T{i}"), pts)
        })
        .collect::<Result<Vec<_>>>()?;
    s.probe_groups.insert("random-sets".into(), random_sets);

    let q = rational_singletons(12_500)?;
    s.probe_groups
        .insert("q-members".into(), q.members()[..20].to_vec());
    s.families.insert("Q".into(), q);
    let intervals = (1..=20)
        .map(|n| {
            let n = n as f64;
            ProbeSet::new(format!("[-{n},{n}]"), scalar_grid(-n, n, 0.1))
        })
        .collect::<Result<Vec<_>>>()?;
    s.families
        .insert("intervals".into(), ProbeFamily::new("intervals", intervals)?);
    s.families.insert(
        "unit-probe".into(),
        ProbeFamily::new("{[0,1]}", vec![ProbeSet::new("[0,1]", unit_grid.clone())?])?,
    );

    s.sequences.insert(
        "rational-prefix".into(),
        SetSequence::dense_prefix(rationals(10_000).into_iter().map(Point::Scalar).collect()),
    );
    let unit_len = unit_grid.len();
    s.sequences
        .insert("unit-prefix".into(), SetSequence::dense_prefix(unit_grid));

    let horizon = 1000;
    s.points.insert("zero".into(), Point::Scalar(0.0));
    s.points.insert("half".into(), Point::Scalar(0.5));
    s.point_lists.insert(
        "one-over-n".into(),
        (1..=horizon).map(|n| Point::Scalar(1.0 / n as f64)).collect(),
    );
    s.point_lists.insert(
        "n".into(),
        (1..=horizon).map(|n| Point::Scalar(n as f64)).collect(),
    );
    s.point_lists
        .insert("constant".into(), vec![Point::Scalar(0.5); horizon]);

    s.add_check(
        "pi-e-near-rationals",
        Op::InclusionInEnlargement {
            probe: "pi-e".into(),
            set: "near-rationals".into(),
            epsilon: eps(0.1),
        },
        Expect::Pass,
    );
    s.add_check(
        "pi-e-weakly-totally-bounded",
        Op::WeaklyTotallyBounded {
            set: "pi-e".into(),
            family: "Q".into(),
            epsilon: eps(0.1),
        },
        Expect::Pass,
    );
    s.add_check(
        "finite-sets-totally-bounded",
        Op::TotallyBoundedFamily {
            family: "Q".into(),
            tests: vec!["random-sets".into()],
            epsilons: vec![Num(0.1), Num(0.01)],
        },
        Expect::Pass,
    );
    s.add_check(
        "members-self-cover",
        Op::TotallyBoundedFamily {
            family: "Q".into(),
            tests: vec!["q-members".into()],
            epsilons: vec![Num(1e-6)],
        },
        Expect::Pass,
    );
    s.add_check(
        "intervals-separable",
        Op::SSeparable {
            family: "intervals".into(),
            grid: "grid".into(),
            epsilon: eps(0.1),
        },
        Expect::Pass,
    );
    s.add_check(
        "rational-prefix-wijsman",
        Op::Wijsman {
            sequence: "rational-prefix".into(),
            limit: "R".into(),
            test_points: "window".into(),
            epsilon: eps(0.1),
            horizon: Some(10_000),
        },
        Expect::Pass,
    );
    s.add_check(
        "unit-prefix-tau",
        Op::TauSd {
            sequence: "unit-prefix".into(),
            limit: "unit".into(),
            family: "unit-probe".into(),
            epsilon: eps(0.05),
            horizon: Some(unit_len),
        },
        Expect::Pass,
    );
    for (id, points, limit) in [
        ("embedding-shrinking", "one-over-n", "zero"),
        ("embedding-escaping", "n", "zero"),
        ("embedding-constant", "constant", "half"),
    ] {
        s.add_check(
            id,
            Op::SingletonEmbedding {
                points: points.into(),
                limit: limit.into(),
                family: "Q".into(),
                epsilon: eps(1e-2),
                horizon: Some(horizon),
                depth: None,
            },
            Expect::Pass,
        );
    }
    Ok(())
}

/// Irrational stand-ins for the countable sets `C_n`.
fn c_n(n: usize) -> Vec<Point> {
    let n = n as f64;
    vec![
        Point::Scalar(n * std::f64::consts::PI),
        Point::Scalar(-n * std::f64::consts::E),
    ]
}

fn ex_3_5(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "Under the 0-1 metric the bornology generated by [-n,n] and countable irrational sets is separable but not totally bounded".into();
    s.space = Some(GroundSpace::discrete_line());
    let members = (1..=20)
        .map(|n| {
            let nf = n as f64;
            let mut sample = scalar_grid(-nf, nf, 0.5);
            sample.extend(c_n(n));
            let region = ClosedSet::union(vec![ClosedSet::interval(-nf, nf)?, ClosedSet::finite(c_n(n))?])?;
            Ok(ProbeSet::new(format!("[-{n},{n}]∪C{n}"), sample)?.with_region(region))
        })
        .collect::<Result<Vec<_>>>()?;
    s.families.insert("B".into(), ProbeFamily::new("B", members)?);
    s.sets.insert(
        "B5".into(),
        ClosedSet::union(vec![ClosedSet::interval(-5.0, 5.0)?, ClosedSet::finite(c_n(5))?])?,
    );
    let shift = 2f64.sqrt() - 1.0;
    let witnesses: Vec<Point> = (1..=30)
        .flat_map(|k| {
            let b = k as f64 + shift;
            [Point::Scalar(b), Point::Scalar(-b)]
        })
        .collect();
    s.probes
        .insert("witnesses".into(), ProbeSet::new("±(k+√2-1)", witnesses)?);
    s.probes.insert(
        "grid".into(),
        ProbeSet::new("[-10,10] grid", scalar_grid(-10.0, 10.0, s.resolution.grid_step))?,
    );
    let intervals = (1..=20)
        .map(|n| {
            let nf = n as f64;
            Ok(ProbeSet::new(format!("[-{n},{n}]"), scalar_grid(-nf, nf, 1.0))?
                .with_region(ClosedSet::interval(-nf, nf)?))
        })
        .collect::<Result<Vec<_>>>()?;
    s.families
        .insert("intervals".into(), ProbeFamily::new("intervals", intervals)?);
    s.families.insert(
        "unit-interval".into(),
        ProbeFamily::new(
            "{[-1,1]}",
            vec![ProbeSet::new("[-1,1]", scalar_grid(-1.0, 1.0, 1.0))?
                .with_region(ClosedSet::interval(-1.0, 1.0)?)],
        )?,
    );

    s.add_check(
        "witnesses-outside-B5",
        Op::InclusionInEnlargement {
            probe: "witnesses".into(),
            set: "B5".into(),
            epsilon: eps(0.5),
        },
        Expect::Fail,
    );
    s.add_check(
        "witnesses-not-weakly-totally-bounded",
        Op::WeaklyTotallyBounded {
            set: "witnesses".into(),
            family: "B".into(),
            epsilon: eps(0.5),
        },
        Expect::Fail,
    );
    s.add_check(
        "not-totally-bounded",
        Op::TotallyBoundedFamily {
            family: "B".into(),
            tests: vec!["witnesses".into()],
            epsilons: vec![Num(0.5)],
        },
        Expect::Fail,
    );
    s.add_check(
        "intervals-separable",
        Op::SSeparable {
            family: "intervals".into(),
            grid: "grid".into(),
            epsilon: eps(0.1),
        },
        Expect::Pass,
    );
    s.add_check(
        "unit-interval-not-separable",
        Op::SSeparable {
            family: "unit-interval".into(),
            grid: "grid".into(),
            epsilon: eps(0.5),
        },
        Expect::Fail,
    );
    Ok(())
}

fn ex_3_6(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "French Metro metric: metric axioms, separability by balls, and a bornology that is not totally bounded".into();
    s.space = Some(GroundSpace::french_metro());
    s.points.insert("e1".into(), Point::xy(1.0, 0.0));
    s.points.insert("e2".into(), Point::xy(0.0, 1.0));
    s.points.insert("p".into(), Point::xy(1.0, 1.0));
    s.points.insert("2p".into(), Point::xy(2.0, 2.0));
    s.points.insert("q".into(), Point::xy(3.0, 4.0));
    s.sets.insert("ball-2".into(), ClosedSet::ball(2.0)?);

    // A_n ∪ C_n ∪ F_n: the ball of radius n (its irrational points are dense
    // in it), points of the integer spheres on the positive x-axis, and one
    // extra point
    let members = (1..=20)
        .map(|n| {
            let nf = n as f64;
            let mut extra: Vec<Point> = (1..=n).map(|j| Point::xy(j as f64, 0.0)).collect();
            extra.push(Point::xy(nf, nf));
            let mut sample = disc_sample((0.0, 0.0), nf, 2 * n, 8);
            sample.extend(extra.iter().cloned());
            let region = ClosedSet::union(vec![ClosedSet::ball(nf)?, ClosedSet::finite(extra)?])?;
            Ok(ProbeSet::new(format!("B{n}"), sample)?.with_region(region))
        })
        .collect::<Result<Vec<_>>>()?;
    s.families.insert("B".into(), ProbeFamily::new("B", members)?);

    // x_m on the sphere of radius m at an angle avoiding the x-axis
    let sphere_points: Vec<Point> = (1..=30)
        .map(|m| {
            let (sn, cs) = (m as f64 * 2f64.sqrt()).sin_cos();
            Point::xy(m as f64 * cs, m as f64 * sn)
        })
        .collect();
    s.probes
        .insert("sphere-points".into(), ProbeSet::new("x_m", sphere_points)?);
    let g = grid(-5.0, 5.0, 0.25);
    let plane_grid: Vec<Point> = g
        .iter()
        .flat_map(|&x| g.iter().map(move |&y| Point::xy(x, y)))
        .collect();
    s.probes
        .insert("grid".into(), ProbeSet::new("[-5,5]² grid", plane_grid)?);

    s.add_check(
        "orthogonal-units",
        Op::Distance {
            x: "e1".into(),
            y: "e2".into(),
        },
        value(2.0, 2.0),
    );
    let r2 = 2f64.sqrt();
    s.add_check(
        "collinear-pair",
        Op::Distance {
            x: "p".into(),
            y: "2p".into(),
        },
        value(r2, r2),
    );
    s.add_check(
        "point-to-ball",
        Op::SetDistance {
            point: "q".into(),
            set: "ball-2".into(),
        },
        value(3.0, 3.0),
    );
    s.add_check("metric-axioms", Op::MetricAxioms { trials: 10_000 }, Expect::Pass);
    s.add_check(
        "balls-separable",
        Op::SSeparable {
            family: "B".into(),
            grid: "grid".into(),
            epsilon: eps(0.1),
        },
        Expect::Pass,
    );
    s.add_check(
        "not-totally-bounded",
        Op::TotallyBoundedFamily {
            family: "B".into(),
            tests: vec!["sphere-points".into()],
            epsilons: vec![Num(0.5)],
        },
        Expect::Fail,
    );
    Ok(())
}

fn ex_3_7(s: &mut Scenario, rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "Finitely supported sequences under the sup metric: balls form a countable base, but bounded sets need not be totally bounded".into();
    s.space = Some(GroundSpace::sup_seq());
    s.points.insert("e1".into(), Point::seq_dense(&[1.0])?);
    s.points.insert("2e2".into(), Point::seq_dense(&[0.0, 2.0])?);

    let balls = (1..=20)
        .map(|n| {
            let nf = n as f64;
            let sample = (1..=3)
                .flat_map(|k| grid(-nf, nf, 1.0).into_iter().map(move |v| (k, v)))
                .map(|(k, v)| Point::seq([(k, v)]))
                .collect::<Result<Vec<_>>>()?;
            Ok(ProbeSet::new(format!("B(0,{n})"), sample)?.with_region(ClosedSet::ball(nf)?))
        })
        .collect::<Result<Vec<_>>>()?;
    s.families
        .insert("balls".into(), ProbeFamily::new("balls", balls)?);

    let bounded = (1..=50)
        .map(|i| {
            let len = rng.random_range(1..=5usize);
            let pts = (0..len)
                .map(|_| {
                    let support = rng.random_range(1..=6usize);
                    Point::seq(
                        (0..support).map(|_| (rng.random_range(1..=20usize), rng.random_range(-5.0..5.0))),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            ProbeSet::new(format!("T{i}"), pts)
        })
        .collect::<Result<Vec<_>>>()?;
    s.probe_groups.insert("bounded-sets".into(), bounded);

    let unit = |k: usize| Point::seq([(k, 1.0)]);
    s.probes.insert(
        "unit-vectors".into(),
        ProbeSet::new("e_1..e_30", (1..=30).map(unit).collect::<Result<Vec<_>>>()?)?,
    );
    let prefixes = (1..=20)
        .map(|n| {
            ProbeSet::exhaustive(
                format!("{{e_1..e_{n}}}"),
                (1..=n).map(unit).collect::<Result<Vec<_>>>()?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    s.families.insert(
        "finite-prefixes".into(),
        ProbeFamily::new("finite prefixes", prefixes)?,
    );

    s.add_check(
        "distance",
        Op::Distance {
            x: "e1".into(),
            y: "2e2".into(),
        },
        value(2.0, 2.0),
    );
    s.add_check("metric-axioms", Op::MetricAxioms { trials: 10_000 }, Expect::Pass);
    s.add_check(
        "balls-totally-bounded",
        Op::TotallyBoundedFamily {
            family: "balls".into(),
            tests: vec!["bounded-sets".into()],
            epsilons: vec![Num(0.1), Num(0.5)],
        },
        Expect::Pass,
    );
    s.add_check(
        "unit-vectors-in-ball",
        Op::WeaklyTotallyBounded {
            set: "unit-vectors".into(),
            family: "balls".into(),
            epsilon: eps(0.5),
        },
        Expect::Pass,
    );
    s.add_check(
        "unit-vectors-not-finitely-covered",
        Op::WeaklyTotallyBounded {
            set: "unit-vectors".into(),
            family: "finite-prefixes".into(),
            epsilon: eps(0.5),
        },
        Expect::Fail,
    );
    Ok(())
}

fn lattice_probe(count: usize, oracle: bool) -> Result<ProbeSet> {
    let p = ProbeSet::new("N×{0}", (1..=count).map(|k| Point::xy(k as f64, 0.0)).collect())?;
    Ok(if oracle {
        p.with_exact_sup(ExactSup::PointToLine { slope: 0.0 })
    } else {
        p
    })
}

fn ex_4_6(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description =
        "Lines y = x/n against the x-axis: series metrics over two countable families disagree".into();
    s.space = Some(GroundSpace::euclidean_plane());
    s.sets.insert("axis".into(), ClosedSet::line(0.0)?);
    for n in [1usize, 10, 1000] {
        s.sets
            .insert(format!("line-{n}"), ClosedSet::line(1.0 / n as f64)?);
    }
    s.sequences
        .insert("lines".into(), SetSequence::LinesThroughOrigin);

    let pairs = rational_pair_points(200);
    s.families.insert("A1".into(), singletons("r", pairs.clone())?);
    let mut a2 = vec![lattice_probe(200, true)?];
    a2.extend(singletons("r", pairs[..199].to_vec())?.members().iter().cloned());
    s.families.insert("A2".into(), ProbeFamily::new("A2", a2)?);
    s.families.insert(
        "lattice".into(),
        ProbeFamily::new("{N×{0}}", vec![lattice_probe(200, true)?])?,
    );
    s.probes
        .insert("test-points".into(), ProbeSet::new("Q×Q prefix", pairs)?);
    s.probes.insert("lattice-11".into(), lattice_probe(11, false)?);

    let horizon = Some(10_000);
    s.add_check(
        "A1-converges",
        Op::DsaConvergence {
            sequence: "lines".into(),
            limit: "axis".into(),
            family: "A1".into(),
            epsilon: eps(1e-2),
            horizon,
            depth: Some(40),
        },
        Expect::Pass,
    );
    s.add_check(
        "A2-diverges",
        Op::DsaConvergence {
            sequence: "lines".into(),
            limit: "axis".into(),
            family: "A2".into(),
            epsilon: eps(1e-2),
            horizon,
            depth: Some(40),
        },
        Expect::Fail,
    );
    for n in [1usize, 1000] {
        s.add_check(
            format!("A2-distance-line-{n}"),
            Op::Dsa {
                family: "A2".into(),
                a: "axis".into(),
                c: format!("line-{n}"),
                depth: Some(40),
            },
            value(0.5, 1.0),
        );
    }
    s.add_check(
        "lattice-deviation-saturates",
        Op::UniformDeviation {
            probe: "lattice-11".into(),
            a: "axis".into(),
            c: "line-10".into(),
            cap: Some(Num(1.0)),
        },
        value(1.0, 1.0),
    );
    s.add_check(
        "lattice-tau-fails",
        Op::TauSd {
            sequence: "lines".into(),
            limit: "axis".into(),
            family: "lattice".into(),
            epsilon: eps(0.5),
            horizon: Some(100),
        },
        Expect::Fail,
    );
    s.add_check(
        "wijsman",
        Op::Wijsman {
            sequence: "lines".into(),
            limit: "axis".into(),
            test_points: "test-points".into(),
            epsilon: eps(1e-2),
            horizon,
        },
        Expect::Pass,
    );
    Ok(())
}

fn ex_4_11(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "Under the 0-1 metric, [-n,n] converges to the line in the series metric over {[-m,m]} but not in the enlargement sense".into();
    s.space = Some(GroundSpace::discrete_line());
    s.sets.insert("R".into(), ClosedSet::WholeSpace);
    s.sets.insert("I3".into(), ClosedSet::interval(-3.0, 3.0)?);
    s.sequences
        .insert("intervals".into(), SetSequence::GrowingIntervals);
    s.families.insert("A".into(), discrete_intervals(40, 0.5)?);
    let multiples = (1..=40).map(|k| Point::Scalar(k as f64 * 2f64.sqrt())).collect();
    s.families.insert(
        "S".into(),
        ProbeFamily::new("{k√2}", vec![ProbeSet::exhaustive("k√2", multiples)?])?,
    );

    let eighth = 0.125;
    s.add_check(
        "distance-n-3",
        Op::Dsa {
            family: "A".into(),
            a: "I3".into(),
            c: "R".into(),
            depth: Some(40),
        },
        value(eighth - 2f64.powi(-40), eighth),
    );
    s.add_check(
        "dsa-converges",
        Op::DsaConvergence {
            sequence: "intervals".into(),
            limit: "R".into(),
            family: "A".into(),
            epsilon: eps(eighth),
            horizon: Some(20),
            depth: Some(40),
        },
        Expect::Pass,
    );
    s.add_check(
        "s-convergence-fails",
        Op::SConvergence {
            sequence: "intervals".into(),
            limit: "R".into(),
            family: "S".into(),
            epsilon: eps(0.5),
            horizon: Some(20),
        },
        Expect::Fail,
    );
    s.add_check(
        "tau-fails",
        Op::TauSd {
            sequence: "intervals".into(),
            limit: "R".into(),
            family: "A".into(),
            epsilon: eps(0.5),
            horizon: Some(20),
        },
        Expect::Fail,
    );
    Ok(())
}

fn hausdorff_identity(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description =
        "With the single probe X the series metric is half the truncated Hausdorff distance".into();
    s.space = Some(GroundSpace::euclidean_plane());
    s.add_check(
        "identity",
        Op::HausdorffIdentity {
            trials: 200,
            ground_size: 50,
        },
        Expect::Pass,
    );
    s.add_check(
        "metric-axioms",
        Op::DsaAxioms {
            trials: 200,
            ground_size: 50,
        },
        Expect::Pass,
    );
    Ok(())
}

fn aw_lines(s: &mut Scenario, _rng: &mut ChaCha8Rng) -> Result<()> {
    s.description = "Series metric over balls about the origin on the lines y = x/n".into();
    let space = GroundSpace::euclidean_plane();
    let origin = Point::xy(0.0, 0.0);
    s.families
        .insert("balls".into(), ball_probes(&space, &origin, 40, 2)?);
    s.space = Some(space);
    s.points.insert("origin".into(), origin);
    s.sets.insert("axis".into(), ClosedSet::line(0.0)?);
    for n in [1usize, 10, 100, 1000] {
        s.sets
            .insert(format!("line-{n}"), ClosedSet::line(1.0 / n as f64)?);
    }
    s.sequences
        .insert("lines".into(), SetSequence::LinesThroughOrigin);

    let aw = |c: &str| Op::AwDistance {
        center: "origin".into(),
        balls: "balls".into(),
        a: "axis".into(),
        c: c.into(),
        depth: Some(40),
    };
    s.add_check("self", aw("axis"), value(0.0, 2f64.powi(-40)));
    // on B(0,r) the deviation between y = 0 and y = x/n is r/√(n²+1)
    for n in [1usize, 10, 100, 1000] {
        let sin = 1.0 / ((n * n + 1) as f64).sqrt();
        let closed: f64 = (1..=40).map(|r| 2f64.powi(-r) * (r as f64 * sin).min(1.0)).sum();
        s.add_check(
            format!("line-{n}"),
            aw(&format!("line-{n}")),
            value(closed - 1e-6, closed + 2f64.powi(-40)),
        );
    }
    s.add_check(
        "lines-converge",
        Op::DsaConvergence {
            sequence: "lines".into(),
            limit: "axis".into(),
            family: "balls".into(),
            epsilon: eps(1e-2),
            horizon: Some(300),
            depth: Some(40),
        },
        Expect::Unchecked,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_lists_known() {
        let e = builtin_scenario("ex-9-9").unwrap_err();
        let msg = e.to_string();
        for id in IDS {
            assert!(msg.contains(id), "{msg}");
        }
    }

    #[test]
    fn every_builtin_validates() {
        for id in IDS {
            let s = builtin_scenario(id).unwrap();
            assert_eq!(s.name, id);
            assert!(!s.checks.is_empty());
        }
    }
}

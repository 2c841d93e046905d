//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use hyperspace::convergence::{dsa_convergence_trace, s_convergence_trace};
use hyperspace::hyperdist::{dsa, hausdorff_distance};
use hyperspace::interval::Decision;
use hyperspace::properties::{self, RandomFiniteSpace};
use hyperspace::scenario::{
    builtin_ids, builtin_scenario, evaluate, mode_comparisons, CheckValue, Op, Scenario,
};
use hyperspace::{ClosedSet, GroundSpace, Outcome, Point, ProbeFamily, SetSequence, Verdict};

type Report = Result<String, String>;
type Criterion = (&'static str, fn() -> Report);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn within(limit: Duration, t: Instant) -> Result<(), String> {
    let took = t.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn pts(set: &ClosedSet) -> &[Point] {
    match set {
        ClosedSet::FinitePoints(p) => p,
        other => panic!("expected a finite set, got {other:?}"),
    }
}

fn euclid(p: &Point, q: &Point) -> f64 {
    let (a, b) = (p.as_plane().unwrap(), q.as_plane().unwrap());
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn dist_to(x: &Point, a: &[Point]) -> f64 {
    a.iter().map(|p| euclid(x, p)).fold(f64::INFINITY, f64::min)
}

/// Series metric computed straight from the definition.
fn series_oracle(family: &ProbeFamily, a: &[Point], c: &[Point]) -> f64 {
    let mut w = 1.0;
    let mut sum = 0.0;
    for m in family.members() {
        w *= 0.5;
        let dev = m
            .sample()
            .iter()
            .map(|x| (dist_to(x, a) - dist_to(x, c)).abs())
            .fold(0.0, f64::max);
        sum += w * dev.min(1.0);
    }
    sum
}

/// Classical Hausdorff distance as the larger of the two excesses.
fn hausdorff_oracle(a: &[Point], c: &[Point]) -> f64 {
    let ex = |p: &[Point], q: &[Point]| p.iter().map(|x| dist_to(x, q)).fold(0.0, f64::max);
    ex(a, c).max(ex(c, a))
}

fn verdict_of(s: &Scenario, id: &str) -> Result<(Op, Verdict), String> {
    let check = s
        .check(id)
        .ok_or_else(|| format!("{}: no check `{id}`", s.name))?;
    match evaluate(s, &check.op).map_err(e)? {
        CheckValue::Verdict(v) => Ok((check.op.clone(), v)),
        other => Err(format!("{id}: not a verdict: {other:?}")),
    }
}

fn criterion_1() -> Report {
    let t = Instant::now();
    let mut rng = properties::rng(11);
    let ground = RandomFiniteSpace::new(50, &mut rng);
    let family = ground.family(7, &mut rng);
    let space = &ground.space;
    let d = |a: &ClosedSet, c: &ClosedSet| dsa(space, &family, a, c, family.len()).map_err(e);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let [a, b, c] = [(); 3].map(|_| ground.subset(10, &mut rng));
        let ab = d(&a, &b)?;
        ensure(ab.is_exact() && ab.width() == 0.0, || {
            format!("trial {i}: {ab:?} is not exact")
        })?;
        let oracle = series_oracle(&family, pts(&a), pts(&b));
        ensure((ab.lo - oracle).abs() <= 1e-15, || {
            format!("trial {i}: {} vs oracle {oracle}", ab.lo)
        })?;
        ensure(d(&a, &a)?.lo == 0.0, || format!("trial {i}: d(A,A) != 0"))?;
        ensure(d(&b, &a)?.lo == ab.lo, || format!("trial {i}: asymmetric"))?;
        let excess = d(&a, &c)?.lo - ab.lo - d(&b, &c)?.lo;
        ensure(excess <= 1e-12, || format!("trial {i}: triangle excess {excess}"))?;
        worst = worst.max(excess);
    }
    let v = properties::dsa_axioms(200, 50, 0).map_err(e)?;
    ensure(v.is_pass(), || format!("dsa_axioms: {v:?}"))?;
    within(Duration::from_secs(5), t)?;
    Ok(format!(
        "200 triples, max triangle excess {worst:e}, {:?}",
        t.elapsed()
    ))
}

fn criterion_2() -> Report {
    let mut rng = properties::rng(12);
    let ground = RandomFiniteSpace::new(50, &mut rng);
    let whole = ground.whole();
    let family = ProbeFamily::new("{X}", vec![whole.clone()])
        .map_err(e)?
        .complete();
    let space = &ground.space;
    for i in 0..200 {
        let a = ground.subset(10, &mut rng);
        let c = ground.subset(10, &mut rng);
        let h = hausdorff_distance(space, &a, &c, &whole).map_err(e)?;
        ensure(h.exact, || format!("pair {i}: Hausdorff value not exact"))?;
        let classical = hausdorff_oracle(pts(&a), pts(&c));
        ensure((h.value - classical).abs() <= 1e-12, || {
            format!("pair {i}: H = {} but classical {classical}", h.value)
        })?;
        let v = dsa(space, &family, &a, &c, 40).map_err(e)?;
        let gap = (v.lo - 0.5 * h.value.min(1.0)).abs();
        ensure(gap == 0.0 && v.width() == 0.0, || {
            format!("pair {i}: gap {gap:e}, {v:?}")
        })?;
    }
    let v = properties::hausdorff_identity(200, 50, 0).map_err(e)?;
    ensure(v.is_pass(), || format!("hausdorff_identity: {v:?}"))?;
    Ok("200 pairs, discrepancy exactly 0".into())
}

fn is_sqrt2_multiple(x: f64) -> bool {
    let k = (x / SQRT_2).round();
    k >= 1.0 && (x - k * SQRT_2).abs() < 1e-9
}

fn criterion_3() -> Report {
    let t = Instant::now();
    let s = builtin_scenario("ex-4-11").map_err(e)?;
    let space = s.space().map_err(e)?;
    let family = s.family("A").map_err(e)?;
    let multiples = s.family("S").map_err(e)?;
    let seq = SetSequence::GrowingIntervals;
    let whole = ClosedSet::WholeSpace;
    for n in 1..=20 {
        let v = dsa(space, family, &seq.set(n).map_err(e)?, &whole, 40).map_err(e)?;
        let target = 2f64.powi(-(n as i32));
        ensure(v.contains(target) && v.width() <= 2f64.powi(-40), || {
            format!("n={n}: {v:?} misses 2^-{n}")
        })?;
    }
    let st = s_convergence_trace(space, &seq, &whole, multiples, 0.5, 20).map_err(e)?;
    ensure(st.verdict().is_fail(), || "s-convergence did not fail".into())?;
    for step in &st.steps {
        let x = step.witness.point.as_ref().and_then(Point::as_scalar);
        ensure(step.decision == Decision::No, || {
            format!("n={}: {:?}", step.n, step.decision)
        })?;
        ensure(
            x.is_some_and(|x| x.abs() > step.n as f64 && is_sqrt2_multiple(x.abs())),
            || format!("n={}: witness {x:?} is not an irrational point beyond n", step.n),
        )?;
    }
    let dt = dsa_convergence_trace(space, &seq, &whole, family, 0.125, 20, 40).map_err(e)?;
    let n0 = dt.settled_from();
    ensure(dt.verdict().is_pass() && n0.is_some_and(|n| n <= 4), || {
        format!("dsa settled from {n0:?}")
    })?;
    within(Duration::from_secs(1), t)?;
    Ok(format!(
        "values 2^-n for n ≤ 20, S-fails at every n, dsa settles at n={}",
        n0.unwrap()
    ))
}

fn criterion_4() -> Report {
    let s = builtin_scenario("ex-4-6").map_err(e)?;
    let space = s.space().map_err(e)?;
    let seq = s.sequence("lines").map_err(e)?;
    let axis = s.set("axis").map_err(e)?;
    let a1 =
        dsa_convergence_trace(space, seq, axis, s.family("A1").map_err(e)?, 1e-2, 10_000, 40).map_err(e)?;
    let v1 = a1.verdict();
    ensure(v1.is_pass(), || format!("A1: {:?}", v1.outcome))?;
    let a2 =
        dsa_convergence_trace(space, seq, axis, s.family("A2").map_err(e)?, 1e-2, 10_000, 40).map_err(e)?;
    ensure(a2.verdict().is_fail(), || {
        format!("A2: {:?}", a2.verdict().outcome)
    })?;
    let floor = 0.5 - 2f64.powi(-40);
    for step in &a2.steps {
        let iv = step.interval.as_ref().ok_or("missing interval")?;
        ensure(iv.lo >= floor, || format!("A2 n={}: lo {}", step.n, iv.lo))?;
    }
    Ok(format!(
        "A1 passes from n={}, A2 lo ≥ 1/2 - 2^-40 on n ≤ 10^4",
        a1.settled_from().unwrap()
    ))
}

fn irrational_offset(x: f64) -> bool {
    let frac = x.abs() - x.abs().floor();
    (frac - (SQRT_2 - 1.0)).abs() < 1e-9
}

fn criterion_5() -> Report {
    let s34 = builtin_scenario("ex-3-4").map_err(e)?;
    let (op, v) = verdict_of(&s34, "finite-sets-totally-bounded")?;
    let Op::TotallyBoundedFamily { tests, epsilons, .. } = &op else {
        return Err("unexpected op".into());
    };
    let eps: Vec<f64> = epsilons.iter().map(|n| n.0).collect();
    ensure(eps == [0.1, 0.01], || format!("epsilons {eps:?}"))?;
    let count: usize = tests.iter().map(|g| s34.probe_groups[g].len()).sum();
    ensure(count == 100, || format!("{count} test sets"))?;
    ensure(v.is_pass(), || format!("ex-3-4 totally bounded: {v:?}"))?;

    let s35 = builtin_scenario("ex-3-5").map_err(e)?;
    let (op, v) = verdict_of(&s35, "not-totally-bounded")?;
    ensure(
        matches!(&op, Op::TotallyBoundedFamily { epsilons, .. } if epsilons.iter().map(|n| n.0).eq([0.5])),
        || "ex-3-5 epsilon".into(),
    )?;
    ensure(v.is_fail(), || format!("ex-3-5: {v:?}"))?;
    let w = v
        .witness()
        .and_then(|w| w.point.as_ref())
        .and_then(Point::as_scalar);
    ensure(w.is_some_and(irrational_offset), || {
        format!("ex-3-5 witness {w:?}")
    })?;

    let (op, v) = verdict_of(&s34, "intervals-separable")?;
    let Op::SSeparable { grid, epsilon, .. } = &op else {
        return Err("unexpected op".into());
    };
    let g = s34.probe(grid).map_err(e)?.sample();
    let (lo, hi) = (
        g.first().and_then(Point::as_scalar),
        g.last().and_then(Point::as_scalar),
    );
    ensure(lo == Some(-10.0) && hi == Some(10.0), || {
        format!("grid spans {lo:?}..{hi:?}")
    })?;
    ensure(epsilon.map(|n| n.0) == Some(0.1), || "separable epsilon".into())?;
    ensure(v.is_pass(), || format!("separable: {v:?}"))?;
    Ok(format!("witness {}", w.unwrap()))
}

fn criterion_6() -> Report {
    let (mut checked, mut premises) = (0, 0);
    for id in builtin_ids() {
        let s = builtin_scenario(id).map_err(e)?;
        for c in mode_comparisons(&s).map_err(e)? {
            checked += 1;
            if c.implication.premise.is_pass() {
                premises += 1;
            }
            ensure(!c.implication.violated(), || {
                format!("{id}/{}: {} violated", c.check_id, c.implication.name)
            })?;
        }
    }
    ensure(premises > 0, || "no implication had a passing premise".into())?;
    Ok(format!(
        "{checked} comparisons, {premises} with passing premise, 0 violations"
    ))
}

/// Euclidean along rays through the origin, else through the origin.
fn french_metro_oracle(p: &Point, q: &Point) -> f64 {
    let (a, b) = (p.as_plane().unwrap(), q.as_plane().unwrap());
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    if cross == 0.0 && dot >= 0.0 {
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
    } else {
        (a.0 * a.0 + a.1 * a.1).sqrt() + (b.0 * b.0 + b.1 * b.1).sqrt()
    }
}

fn criterion_7() -> Report {
    let space = GroundSpace::french_metro();
    let v = properties::metric_axioms(&space, 10_000, 7).map_err(e)?;
    ensure(v.is_pass(), || format!("{v:?}"))?;
    let mut rng = properties::rng(8);
    let mut rays = 0;
    for i in 0..10_000 {
        let [x, y, z] = [(); 3].map(|_| properties::random_point(&space, &mut rng));
        let lib = space.distance(&x, &y).map_err(e)?;
        let want = french_metro_oracle(&x, &y);
        ensure((lib - want).abs() <= 1e-12 * want.max(1.0), || {
            format!("trial {i}: {lib} vs {want}")
        })?;
        if want < euclid(&x, &origin()) + euclid(&y, &origin()) {
            rays += 1;
        }
        let excess = french_metro_oracle(&x, &z) - want - french_metro_oracle(&y, &z);
        ensure(excess <= 1e-12, || format!("trial {i}: triangle excess {excess}"))?;
    }
    Ok(format!("10^4 triples, {rays} pairs on a common ray"))
}

fn origin() -> Point {
    Point::xy(0.0, 0.0)
}

fn criterion_8() -> Report {
    let s = builtin_scenario("ex-3-4").map_err(e)?;
    let mut seen = Vec::new();
    for c in &s.checks {
        if !matches!(c.op, Op::SingletonEmbedding { .. }) {
            continue;
        }
        let (_, v) = verdict_of(&s, &c.id)?;
        let (m, d) = (v.part("metric"), v.part("dsa"));
        let (m, d) = m.zip(d).ok_or_else(|| format!("{}: missing parts", c.id))?;
        ensure(
            m.outcome == d.outcome && m.outcome != Outcome::Undecided && v.is_pass(),
            || format!("{}: metric {} vs dsa {}", c.id, m.outcome, d.outcome),
        )?;
        seen.push(format!("{}={}", c.id, m.outcome));
    }
    ensure(seen.len() == 3, || format!("{} embedding checks", seen.len()))?;
    Ok(seen.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("series metric axioms on finite spaces", criterion_1),
        ("Hausdorff specialization", criterion_2),
        ("growing intervals under the discrete metric", criterion_3),
        ("rational singletons versus lattice probe", criterion_4),
        ("bornology predicates", criterion_5),
        ("mode comparisons", criterion_6),
        ("French Metro metric axioms", criterion_7),
        ("singleton embedding", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

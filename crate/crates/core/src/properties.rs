//! Seeded randomized checks of metric identities.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bornology::ProbeFamily;
use crate::error::Result;
use crate::hyperdist::{dsa, hausdorff_distance};
use crate::metric::{GroundSpace, MetricRule, Point, PointKind};
use crate::sets::{ClosedSet, ProbeSet};
use crate::verdict::{Resolution, Verdict, Witness};

pub const TRIANGLE_TOLERANCE: f64 = 1e-12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random point of the space. Coordinates are drawn so that ties and
/// collinear configurations occur with positive probability.
pub fn random_point<R: Rng>(space: &GroundSpace, rng: &mut R) -> Point {
    match (space.kind(), space.rule()) {
        (PointKind::Vector(2), MetricRule::FrenchMetro) => {
            // dyadic multiples of a small integer direction keep collinearity exact
            let dir = (
                rng.random_range(-3i32..=3) as f64,
                rng.random_range(-3i32..=3) as f64,
            );
            if rng.random_bool(0.5) {
                let alpha = rng.random_range(-32i32..=32) as f64 / 8.0;
                Point::xy(alpha * dir.0, alpha * dir.1)
            } else {
                Point::xy(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))
            }
        }
        (PointKind::Vector(d), _) => Point::Vector((0..d).map(|_| rng.random_range(-10.0..10.0)).collect()),
        (PointKind::Scalar, _) => {
            if rng.random_bool(0.3) {
                Point::Scalar(rng.random_range(-3i32..=3) as f64)
            } else {
                Point::Scalar(rng.random_range(-10.0..10.0))
            }
        }
        (PointKind::Seq, _) => {
            let len = rng.random_range(0..=5usize);
            let entries: Vec<(usize, f64)> = (0..len)
                .map(|_| {
                    let v = if rng.random_bool(0.3) {
                        rng.random_range(-2i32..=2) as f64
                    } else {
                        rng.random_range(-5.0..5.0)
                    };
                    (rng.random_range(1..=8usize), v)
                })
                .collect();
            Point::seq(entries).expect("finite entries")
        }
    }
}

/// Identity, symmetry, positivity and the triangle inequality on random
/// triples. A pass reports the largest triangle excess seen.
pub fn metric_axioms(space: &GroundSpace, trials: usize, seed: u64) -> Result<Verdict> {
    let mut rng = rng(seed);
    let res = Resolution::epsilon(TRIANGLE_TOLERANCE).with_horizon(trials);
    let mut worst = f64::NEG_INFINITY;
    for t in 0..trials {
        let [x, y, z] = [(); 3].map(|_| random_point(space, &mut rng));
        let dxy = space.distance(&x, &y)?;
        let fail = |what: &str, p: &Point, v: f64| {
            Ok(Verdict::fail(
                Witness::at_point(p.clone(), v).index(t + 1).label(what),
                res,
            ))
        };
        let dxx = space.distance(&x, &x)?;
        if dxx != 0.0 {
            return fail("identity", &x, dxx);
        }
        if dxy != space.distance(&y, &x)? {
            return fail("symmetry", &x, dxy);
        }
        if (dxy == 0.0) != (x == y) || dxy < 0.0 {
            return fail("positivity", &x, dxy);
        }
        let excess = space.distance(&x, &z)? - dxy - space.distance(&y, &z)?;
        if excess > TRIANGLE_TOLERANCE {
            return fail("triangle", &y, excess);
        }
        worst = worst.max(excess);
    }
    Ok(Verdict::pass(res).with_witness(Witness::value(worst.max(0.0)).label("max triangle excess")))
}

/// A finite metric space given by random points of the plane, with
/// helpers for drawing random nonempty subsets.
#[derive(Debug, Clone)]
pub struct RandomFiniteSpace {
    pub space: GroundSpace,
    pub points: Vec<Point>,
}

impl RandomFiniteSpace {
    pub fn new<R: Rng>(size: usize, rng: &mut R) -> Self {
        let mut points = Vec::with_capacity(size);
        while points.len() < size {
            let p = Point::xy(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0));
            if !points.contains(&p) {
                points.push(p);
            }
        }
        RandomFiniteSpace {
            space: GroundSpace::euclidean_plane(),
            points,
        }
    }

    pub fn subset<R: Rng>(&self, max_len: usize, rng: &mut R) -> ClosedSet {
        let len = rng.random_range(1..=max_len.min(self.points.len()));
        ClosedSet::FinitePoints(
            sample(rng, self.points.len(), len)
                .into_iter()
                .map(|i| self.points[i].clone())
                .collect(),
        )
    }

    pub fn whole(&self) -> ProbeSet {
        ProbeSet::exhaustive("X", self.points.clone()).expect("nonempty ground set")
    }

    /// `X` followed by `extra` random exhaustive subsets; nothing beyond.
    pub fn family<R: Rng>(&self, extra: usize, rng: &mut R) -> ProbeFamily {
        let mut members = vec![self.whole()];
        for i in 0..extra {
            let ClosedSet::FinitePoints(pts) = self.subset(self.points.len() / 2, rng) else {
                unreachable!()
            };
            members.push(ProbeSet::exhaustive(format!("S{}", i + 2), pts).expect("nonempty"));
        }
        ProbeFamily::new("F", members)
            .expect("distinct labels")
            .complete()
    }
}

/// Metric axioms of the series metric on random finite sets of a random
/// finite space, with exhaustive probes so every value is exact.
pub fn dsa_axioms(trials: usize, ground_size: usize, seed: u64) -> Result<Verdict> {
    let mut rng = rng(seed);
    let ground = RandomFiniteSpace::new(ground_size, &mut rng);
    let family = ground.family(7, &mut rng);
    let depth = family.len();
    let space = &ground.space;
    let res = Resolution::epsilon(TRIANGLE_TOLERANCE)
        .with_horizon(trials)
        .with_depth(depth);
    let mut worst = f64::NEG_INFINITY;
    for t in 0..trials {
        let [a, b, c] = [(); 3].map(|_| ground.subset(10, &mut rng));
        let fail = |what: &str, v: f64| Ok(Verdict::fail(Witness::value(v).index(t + 1).label(what), res));
        let ab = dsa(space, &family, &a, &b, depth)?;
        if !ab.is_exact() || ab.lo != ab.hi {
            return fail("exactness", ab.width());
        }
        let aa = dsa(space, &family, &a, &a, depth)?;
        if aa.lo != 0.0 || aa.hi != 0.0 {
            return fail("identity", aa.hi);
        }
        if ab.lo != dsa(space, &family, &b, &a, depth)?.lo {
            return fail("symmetry", ab.lo);
        }
        if (ab.lo == 0.0) != same_set(&a, &b) {
            return fail("positivity", ab.lo);
        }
        let excess = dsa(space, &family, &a, &c, depth)?.lo - ab.lo - dsa(space, &family, &b, &c, depth)?.lo;
        if excess > TRIANGLE_TOLERANCE {
            return fail("triangle", excess);
        }
        worst = worst.max(excess);
    }
    Ok(Verdict::pass(res).with_witness(Witness::value(worst.max(0.0)).label("max triangle excess")))
}

fn same_set(a: &ClosedSet, b: &ClosedSet) -> bool {
    match (a, b) {
        (ClosedSet::FinitePoints(x), ClosedSet::FinitePoints(y)) => {
            x.iter().all(|p| y.contains(p)) && y.iter().all(|p| x.contains(p))
        }
        _ => a == b,
    }
}

/// With the single probe `X`, the series metric is `½·min{1, H}`.
/// A pass reports the largest discrepancy, which must be zero.
pub fn hausdorff_identity(trials: usize, ground_size: usize, seed: u64) -> Result<Verdict> {
    let mut rng = rng(seed);
    let ground = RandomFiniteSpace::new(ground_size, &mut rng);
    let whole = ground.whole();
    let family = ProbeFamily::new("{X}", vec![whole.clone()])?.complete();
    let space = &ground.space;
    let res = Resolution::epsilon(0.0).with_horizon(trials).with_depth(1);
    let mut worst = 0.0f64;
    for t in 0..trials {
        let a = ground.subset(10, &mut rng);
        let c = ground.subset(10, &mut rng);
        let h = hausdorff_distance(space, &a, &c, &whole)?.value;
        let v = dsa(space, &family, &a, &c, 40)?;
        let gap = (v.lo - 0.5 * h.min(1.0)).abs().max(v.width());
        if gap != 0.0 {
            return Ok(Verdict::fail(
                Witness::value(gap).index(t + 1).label("series vs Hausdorff"),
                res,
            ));
        }
        worst = worst.max(gap);
    }
    Ok(Verdict::pass(res).with_witness(Witness::value(worst).label("max discrepancy")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold_for_every_rule() {
        for space in [
            GroundSpace::real_line(),
            GroundSpace::euclidean_plane(),
            GroundSpace::french_metro(),
            GroundSpace::discrete_line(),
            GroundSpace::sup_seq(),
        ] {
            let v = metric_axioms(&space, 2000, 7).unwrap();
            assert!(v.is_pass(), "{:?}: {v}", space.rule());
        }
    }

    #[test]
    fn french_metro_sampler_hits_collinear_pairs() {
        let space = GroundSpace::french_metro();
        let mut r = rng(1);
        let mut along_ray = 0;
        for _ in 0..2000 {
            let x = random_point(&space, &mut r);
            let y = random_point(&space, &mut r);
            let d = space.distance(&x, &y).unwrap();
            if d < space.norm(&x).unwrap() + space.norm(&y).unwrap() {
                along_ray += 1;
            }
        }
        assert!(along_ray > 10, "{along_ray}");
    }

    #[test]
    fn series_metric_axioms() {
        assert!(dsa_axioms(50, 30, 3).unwrap().is_pass());
    }

    #[test]
    fn identity_with_hausdorff() {
        let v = hausdorff_identity(50, 30, 3).unwrap();
        assert!(v.is_pass());
        assert_eq!(v.witness().unwrap().value, 0.0);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = metric_axioms(&GroundSpace::french_metro(), 500, 11).unwrap();
        let b = metric_axioms(&GroundSpace::french_metro(), 500, 11).unwrap();
        assert_eq!(a, b);
    }
}

use proptest::prelude::*;

use hyperspace::bornology::normalize_increasing;
use hyperspace::hyperdist::{dsa, uniform_deviation};
use hyperspace::interval::Decision;
use hyperspace::properties::{random_point, rng};
use hyperspace::{ClosedSet, GroundSpace, IntervalValue, MetricRule, Point, ProbeFamily, ProbeSet};

const TOL: f64 = 1e-12;

fn spaces() -> Vec<GroundSpace> {
    vec![
        GroundSpace::real_line(),
        GroundSpace::euclidean_plane(),
        GroundSpace::french_metro(),
        GroundSpace::discrete_line(),
        GroundSpace::sup_seq(),
    ]
}

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(-20i32..=20).prop_map(|k| k as f64 / 4.0), -10.0..10.0f64]
}

fn plane_point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::xy(x, y))
}

fn plane_set() -> impl Strategy<Value = ClosedSet> {
    prop_oneof![
        prop::collection::vec(plane_point(), 1..6).prop_map(|v| {
            let mut u: Vec<Point> = Vec::new();
            for p in v {
                if !u.contains(&p) {
                    u.push(p);
                }
            }
            ClosedSet::finite(u).unwrap()
        }),
        (-5.0..5.0f64).prop_map(|m| ClosedSet::line(m).unwrap()),
        (0.0..5.0f64).prop_map(|r| ClosedSet::ball(r).unwrap()),
        Just(ClosedSet::AxisLattice),
    ]
}

fn line_set() -> impl Strategy<Value = ClosedSet> {
    prop_oneof![
        prop::collection::hash_set(-40i32..40, 1..6)
            .prop_map(
                |s| ClosedSet::scalars(&s.into_iter().map(|k| k as f64 / 4.0).collect::<Vec<_>>()).unwrap()
            ),
        (coord(), 0.0..5.0f64).prop_map(|(lo, w)| ClosedSet::interval(lo, lo + w).unwrap()),
    ]
}

fn finite_plane_set() -> impl Strategy<Value = ClosedSet> {
    prop::collection::hash_set((-6i32..6, -6i32..6), 1..6)
        .prop_map(|s| ClosedSet::finite(s.into_iter().map(|(x, y)| Point::xy(x as f64, y as f64))).unwrap())
}

fn grid_probe(label: &str, lo: i32, hi: i32) -> ProbeSet {
    let pts = (lo..=hi)
        .flat_map(|x| (lo..=hi).map(move |y| Point::xy(x as f64, y as f64)))
        .collect();
    ProbeSet::exhaustive(label, pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_axioms_hold(seed in any::<u64>(), which in 0usize..5) {
        let space = spaces()[which];
        let mut r = rng(seed);
        let [x, y, z] = [(); 3].map(|_| random_point(&space, &mut r));
        let d = |a: &Point, b: &Point| space.distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &y) >= 0.0);
        prop_assert_eq!(d(&x, &y) == 0.0, x == y);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + TOL);
    }

    #[test]
    fn french_metro_is_euclidean_on_rays(dx in -5i32..=5, dy in -5i32..=5, s in 0u32..80, t in 0u32..80) {
        // dyadic multiples keep the cross product exactly zero
        prop_assume!(dx != 0 || dy != 0);
        let fm = GroundSpace::french_metro();
        let (dx, dy) = (dx as f64, dy as f64);
        let (s, t) = (s as f64 / 8.0, t as f64 / 8.0);
        let p = Point::xy(s * dx, s * dy);
        let q = Point::xy(t * dx, t * dy);
        let eu = GroundSpace::euclidean_plane().distance(&p, &q).unwrap();
        prop_assert!((fm.distance(&p, &q).unwrap() - eu).abs() <= TOL * (1.0 + eu));
        let o = Point::xy(-t * dx, -t * dy);
        if s > 0.0 && t > 0.0 {
            let through = (s + t) * (dx * dx + dy * dy).sqrt();
            prop_assert!((fm.distance(&p, &o).unwrap() - through).abs() <= TOL * (1.0 + through));
        }
    }

    #[test]
    fn distance_functional_is_one_lipschitz(a in plane_set(), x in plane_point(), y in plane_point()) {
        let space = GroundSpace::euclidean_plane();
        let dx = a.distance(&space, &x).unwrap();
        let dy = a.distance(&space, &y).unwrap();
        prop_assert!((dx - dy).abs() <= space.distance(&x, &y).unwrap() + TOL);
    }

    #[test]
    fn distance_functional_on_line_sets(a in line_set(), x in coord(), y in coord()) {
        let space = GroundSpace::real_line();
        let (px, py) = (Point::Scalar(x), Point::Scalar(y));
        let dx = a.distance(&space, &px).unwrap();
        prop_assert!((dx - a.distance(&space, &py).unwrap()).abs() <= (x - y).abs() + TOL);
        prop_assert_eq!(dx == 0.0, a.contains(&space, &px).unwrap());
    }

    #[test]
    fn union_distance_is_min(a in plane_set(), b in plane_set(), x in plane_point()) {
        let space = GroundSpace::euclidean_plane();
        let u = ClosedSet::union(vec![a.clone(), b.clone()]).unwrap();
        let want = a.distance(&space, &x).unwrap().min(b.distance(&space, &x).unwrap());
        prop_assert_eq!(u.distance(&space, &x).unwrap(), want);
    }

    #[test]
    fn enlargements_compose(a in plane_set(), x in plane_point(), y in plane_point(), e1 in 0.01..3.0f64, e2 in 0.01..3.0f64) {
        // x ∈ B(A, e1) and d(x, y) < e2 put y in B(A, e1 + e2)
        let space = GroundSpace::euclidean_plane();
        let dx = a.distance(&space, &x).unwrap();
        let dxy = space.distance(&x, &y).unwrap();
        if dx < e1 && dxy < e2 {
            prop_assert!(a.distance(&space, &y).unwrap() < e1 + e2 + TOL);
        }
    }

    #[test]
    fn deviation_saturates_monotonically(a in finite_plane_set(), c in finite_plane_set(), cap in 0.01..5.0f64) {
        let space = GroundSpace::euclidean_plane();
        let probe = grid_probe("G", -3, 3);
        let full = uniform_deviation(&space, &probe, &a, &c, None).unwrap();
        let capped = uniform_deviation(&space, &probe, &a, &c, Some(cap)).unwrap();
        prop_assert!(full.exact && capped.exact);
        prop_assert_eq!(capped.value, full.value.min(cap));
        let sym = uniform_deviation(&space, &probe, &c, &a, None).unwrap();
        prop_assert_eq!(sym.value, full.value);
    }

    #[test]
    fn series_intervals_shrink_with_depth(a in finite_plane_set(), c in finite_plane_set(), depth in 1usize..8) {
        let space = GroundSpace::euclidean_plane();
        let members: Vec<ProbeSet> = (1..=8).map(|k| grid_probe(&format!("G{k}"), -k, k)).collect();
        let family = ProbeFamily::new("G", members).unwrap();
        let shallow = dsa(&space, &family, &a, &c, depth).unwrap();
        let deep = dsa(&space, &family, &a, &c, depth + 1).unwrap();
        prop_assert!(deep.lo >= shallow.lo);
        prop_assert!(deep.hi <= shallow.hi + TOL);
        prop_assert!(shallow.width() <= 2f64.powi(-(depth as i32)) + TOL);
        let complete = dsa(&space, &family.clone().complete(), &a, &c, 8).unwrap();
        prop_assert_eq!(complete.width(), 0.0);
        prop_assert!(shallow.contains(complete.lo));
    }

    #[test]
    fn normalization_covers_prefixes(sizes in prop::collection::vec(1usize..4, 1..6)) {
        let mut members = Vec::new();
        let mut next = 0;
        for (i, n) in sizes.iter().enumerate() {
            let pts: Vec<Point> = (0..*n).map(|k| Point::Scalar(((next + k) % 7) as f64)).collect();
            next += n;
            let mut uniq: Vec<Point> = Vec::new();
            for p in pts {
                if !uniq.contains(&p) {
                    uniq.push(p);
                }
            }
            members.push(ProbeSet::exhaustive(format!("S{i}"), uniq).unwrap());
        }
        let family = ProbeFamily::new("F", members).unwrap();
        let norm = normalize_increasing(&family);
        prop_assert!(norm.is_increasing());
        prop_assert_eq!(norm.len(), family.len());
        for (i, m) in norm.members().iter().enumerate() {
            for earlier in &family.members()[..=i] {
                for p in earlier.sample() {
                    prop_assert!(m.sample().contains(p));
                }
            }
            for p in m.sample() {
                prop_assert!(family.members()[..=i].iter().any(|e| e.sample().contains(p)));
            }
        }
        prop_assert_eq!(normalize_increasing(&norm), norm);
    }

    #[test]
    fn interval_decisions_are_sound(lo in 0.0..1.0f64, w in 0.0..0.1f64, eps in 0.0001..1.0f64, exact in any::<bool>()) {
        let iv = IntervalValue {
            lo,
            hi: lo + w,
            depth: 1,
            certification: if exact {
                hyperspace::Certification::Exact
            } else {
                hyperspace::Certification::LowerOnly
            },
        };
        match iv.less_than(eps) {
            Decision::Yes => prop_assert!(exact && iv.hi < eps),
            Decision::No => prop_assert!(iv.lo >= eps),
            Decision::Undecided => prop_assert!(iv.lo < eps),
        }
    }
}

#[test]
fn every_rule_has_a_space() {
    let rules: Vec<MetricRule> = spaces().iter().map(|s| s.rule()).collect();
    for r in MetricRule::ALL {
        assert!(rules.contains(&r), "{r:?}");
    }
}

//! Deterministic enumerations and grids used to build probes and families.

use std::f64::consts::PI;

use crate::metric::Point;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Enumerates ℚ without repetition by height: level `H` holds the reduced
/// fractions `p/q` with `max(|p|, q) = H`. Each level is finite, so every
/// rational appears, and a prefix through level `H` is `1/H`-dense near 0.
#[derive(Debug, Clone)]
pub struct Rationals {
    level: u64,
    pending: std::vec::IntoIter<(i64, u64)>,
}

impl Rationals {
    pub fn new() -> Self {
        Rationals {
            level: 0,
            pending: vec![(0, 1)].into_iter(),
        }
    }

    fn fill(&mut self) {
        self.level += 1;
        let h = self.level;
        let mut out = Vec::new();
        let mut push = |p: u64, q: u64| {
            if gcd(p, q) == 1 {
                out.push((p as i64, q));
                out.push((-(p as i64), q));
            }
        };
        // |p| = h over smaller denominators, then q = h over smaller numerators
        for q in 1..h {
            push(h, q);
        }
        for p in 1..h {
            push(p, h);
        }
        if h == 1 {
            push(1, 1);
        }
        self.pending = out.into_iter();
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Rationals {
    /// `(numerator, denominator)` in lowest terms.
    type Item = (i64, u64);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(r) = self.pending.next() {
                return Some(r);
            }
            self.fill();
        }
    }
}

/// The first `count` rationals as doubles.
pub fn rationals(count: usize) -> Vec<f64> {
    Rationals::new()
        .take(count)
        .map(|(p, q)| p as f64 / q as f64)
        .collect()
}

/// The first `count` points of ℚ × ℚ, Cantor-diagonal over [`Rationals`].
pub fn rational_pairs(count: usize) -> Vec<(f64, f64)> {
    let mut diag = 0usize;
    while (diag + 1) * (diag + 2) / 2 < count {
        diag += 1;
    }
    let r = rationals(diag + 1);
    let mut out = Vec::with_capacity(count);
    'outer: for s in 0..=diag {
        for i in 0..=s {
            if out.len() == count {
                break 'outer;
            }
            out.push((r[i], r[s - i]));
        }
    }
    out
}

/// `lo, lo + step, …` up to `hi` inclusive (within half a step).
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0, "grid step must be positive");
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

pub fn scalar_grid(lo: f64, hi: f64, step: f64) -> Vec<Point> {
    grid(lo, hi, step).into_iter().map(Point::Scalar).collect()
}

/// Polar sample of the open disc of radius `radius` about `center`:
/// `rings` radii `radius·k/rings` for `k < rings` and `spokes` angles,
/// the first spoke along the positive x direction.
pub fn disc_sample(center: (f64, f64), radius: f64, rings: usize, spokes: usize) -> Vec<Point> {
    let mut out = vec![Point::xy(center.0, center.1)];
    for k in 1..rings {
        let rho = radius * k as f64 / rings as f64;
        for j in 0..spokes {
            let t = 2.0 * PI * j as f64 / spokes as f64;
            let (s, c) = if j == 0 { (0.0, 1.0) } else { t.sin_cos() };
            out.push(Point::xy(center.0 + rho * c, center.1 + rho * s));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn rationals_start_small_and_never_repeat() {
        let r: Vec<(i64, u64)> = Rationals::new().take(5000).collect();
        assert_eq!(&r[..3], &[(0, 1), (1, 1), (-1, 1)]);
        let set: HashSet<_> = r.iter().collect();
        assert_eq!(set.len(), r.len());
        assert!(r.iter().all(|(p, q)| gcd(p.unsigned_abs(), *q) == 1));
    }

    #[test]
    fn rationals_reach_every_small_fraction() {
        let r: HashSet<(i64, u64)> = Rationals::new().take(20_000).collect();
        for q in 1..=12u64 {
            for p in -30i64..=30 {
                if gcd(p.unsigned_abs(), q) == 1 {
                    assert!(r.contains(&(p, q)), "{p}/{q} missing");
                }
            }
        }
    }

    #[test]
    fn prefix_gaps_near_zero() {
        let mut r: Vec<f64> = rationals(12_500).into_iter().filter(|v| v.abs() <= 2.0).collect();
        r.sort_by(f64::total_cmp);
        let gap = r.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        assert!(gap < 0.02, "{gap}");
        assert_eq!((r[0], r[r.len() - 1]), (-2.0, 2.0));
    }

    #[test]
    fn pairs_follow_diagonals() {
        let p = rational_pairs(6);
        assert_eq!(p[0], (0.0, 0.0));
        assert_eq!(p[1], (0.0, 1.0));
        assert_eq!(p[2], (1.0, 0.0));
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn grid_is_inclusive() {
        let g = grid(-1.0, 1.0, 0.5);
        assert_eq!(g, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(grid(0.0, 1.0, 0.1).len(), 11);
    }

    #[test]
    fn disc_sample_stays_inside() {
        let pts = disc_sample((1.0, -2.0), 3.0, 5, 8);
        assert_eq!(pts.len(), 1 + 4 * 8);
        for p in &pts {
            let (x, y) = p.as_plane().unwrap();
            assert!((x - 1.0).hypot(y + 2.0) < 3.0);
        }
    }
}

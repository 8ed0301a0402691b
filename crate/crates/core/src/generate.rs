//! Seeded random instances in general position.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3};
use crate::rational::Rational;
use crate::sites::{check_general_position, ColoredSiteSet, Metric};

/// Closed integer box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntBox {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl IntBox {
    pub fn square(half: i64) -> Self {
        IntBox { x0: -half, y0: -half, x1: half, y1: half }
    }

    fn width(&self) -> u64 {
        (self.x1 - self.x0 + 1).max(0) as u64
    }

    fn height(&self) -> u64 {
        (self.y1 - self.y0 + 1).max(0) as u64
    }
}

impl Default for IntBox {
    fn default() -> Self {
        IntBox::square(1000)
    }
}

const MAX_ROUNDS: usize = 10_000;

/// `n` sites with integer coordinates in `bx`; the first `m` sites take the
/// colors `0..m` and the rest are colored at random. Sites involved in a
/// general-position violation are redrawn until none remain. L∞ instances
/// draw distinct x and y coordinates.
pub fn random_sites(n: usize, m: usize, metric: Metric, seed: u64, bx: IntBox) -> Result<ColoredSiteSet> {
    if m == 0 || n < m {
        return Err(Error::InvalidSiteSet(format!("need n >= m >= 1, got n = {n}, m = {m}")));
    }
    let cells = bx.width().saturating_mul(bx.height());
    if cells < n as u64 || (metric == Metric::Linf && (bx.width() < n as u64 || bx.height() < n as u64)) {
        return Err(Error::InvalidSiteSet(format!("box too small for {n} sites")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors: Vec<usize> = (0..n).map(|i| if i < m { i } else { rng.gen_range(0..m) }).collect();
    let mut pts: Vec<(i64, i64)> = match metric {
        Metric::Euclidean => {
            let mut seen = BTreeSet::new();
            let mut pts = Vec::with_capacity(n);
            while pts.len() < n {
                let p = (rng.gen_range(bx.x0..=bx.x1), rng.gen_range(bx.y0..=bx.y1));
                if seen.insert(p) {
                    pts.push(p);
                }
            }
            pts
        }
        Metric::Linf => {
            let xs = sample(&mut rng, bx.width() as usize, n);
            let ys = sample(&mut rng, bx.height() as usize, n);
            xs.iter().zip(ys.iter()).map(|(x, y)| (bx.x0 + x as i64, bx.y0 + y as i64)).collect()
        }
    };
    for _ in 0..MAX_ROUNDS {
        let s = build(&pts, &colors, metric)?;
        let report = check_general_position(&s);
        if report.is_ok() {
            return Ok(s);
        }
        let redraw: BTreeSet<usize> = report.violations.iter().filter_map(|v| v.sites().into_iter().max()).collect();
        for i in redraw {
            pts[i] = fresh_point(&mut rng, &pts, metric, bx);
        }
    }
    Err(Error::InvalidSiteSet(format!("no general-position sample after {MAX_ROUNDS} rounds")))
}

fn fresh_point(rng: &mut ChaCha8Rng, pts: &[(i64, i64)], metric: Metric, bx: IntBox) -> (i64, i64) {
    loop {
        let p = (rng.gen_range(bx.x0..=bx.x1), rng.gen_range(bx.y0..=bx.y1));
        let clash = match metric {
            Metric::Euclidean => pts.contains(&p),
            Metric::Linf => pts.iter().any(|q| q.0 == p.0 || q.1 == p.1),
        };
        if !clash {
            return p;
        }
    }
}

fn build(pts: &[(i64, i64)], colors: &[usize], metric: Metric) -> Result<ColoredSiteSet> {
    ColoredSiteSet::new(pts.iter().zip(colors).map(|(&(x, y), &c)| (Point2::from_ints(x, y), c)).collect(), metric)
}

/// Colored points on the unit sphere, in convex position with no four
/// coplanar: inverse stereographic images of a planar general-position set
/// (coplanar points on the sphere come from cocircular or collinear points).
pub fn sphere_points(n: usize, m: usize, seed: u64) -> Result<Vec<(Point3, usize)>> {
    let plane = random_sites(n, m, Metric::Euclidean, seed, IntBox::square(60))?;
    let scale = Rational::from_int(20);
    Ok(plane
        .sites()
        .iter()
        .map(|s| {
            let u = &s.position.x / &scale;
            let v = &s.position.y / &scale;
            let r2 = &u * &u + &v * &v;
            let den = Rational::one() + &r2;
            let two = Rational::from_int(2);
            let p = Point3::new(&(&two * &u) / &den, &(&two * &v) / &den, &(&r2 - &Rational::one()) / &den);
            (p, s.color)
        })
        .collect())
}

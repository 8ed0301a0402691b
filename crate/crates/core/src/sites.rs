use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{circumcircle, orient2d, squares_through_three, Location, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    Euclidean,
    Linf,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "Euclidean",
            Metric::Linf => "L-infinity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    pub id: usize,
    pub position: Point2,
    pub color: usize,
}

/// Sites with a color assignment; colors are exactly `0..m`, each used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredSiteSet {
    sites: Vec<Site>,
    m: usize,
    metric: Metric,
}

impl ColoredSiteSet {
    pub fn new(points: Vec<(Point2, usize)>, metric: Metric) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSiteSet("no sites".into()));
        }
        let m = points.iter().map(|p| p.1).max().unwrap() + 1;
        let mut used = vec![false; m];
        for p in &points {
            used[p.1] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidSiteSet(format!("colors must form 0..{}; color {c} has no site", m - 1)));
        }
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(&p.0) {
                return Err(Error::InvalidSiteSet(format!("site {i} repeats position {}", p.0)));
            }
        }
        let sites =
            points.into_iter().enumerate().map(|(id, (position, color))| Site { id, position, color }).collect();
        Ok(ColoredSiteSet { sites, m, metric })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, id: usize) -> &Site {
        &self.sites[id]
    }

    pub fn pos(&self, id: usize) -> &Point2 {
        &self.sites[id].position
    }

    pub fn color(&self, id: usize) -> usize {
        self.sites[id].color
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn with_metric(&self, metric: Metric) -> Self {
        ColoredSiteSet { metric, ..self.clone() }
    }

    pub fn require_metric(&self, expected: Metric) -> Result<()> {
        if self.metric != expected {
            return Err(Error::MetricMismatch { expected, found: self.metric });
        }
        Ok(())
    }

    /// Sites of one color class.
    pub fn class(&self, color: usize) -> impl Iterator<Item = &Site> {
        self.sites.iter().filter(move |s| s.color == color)
    }

    /// The sub-instance on the given site ids, with colors renumbered densely
    /// in increasing order of the original color.
    pub fn subset(&self, ids: &[usize]) -> Result<Self> {
        let mut colors: Vec<usize> = ids.iter().map(|&i| self.color(i)).collect();
        colors.sort_unstable();
        colors.dedup();
        let points = ids
            .iter()
            .map(|&i| {
                let c = colors.binary_search(&self.color(i)).unwrap();
                (self.pos(i).clone(), c)
            })
            .collect();
        ColoredSiteSet::new(points, self.metric)
    }

    pub fn points(&self) -> Vec<(Point2, usize)> {
        self.sites.iter().map(|s| (s.position.clone(), s.color)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    CollinearTriple([usize; 3]),
    CocircularQuadruple([usize; 4]),
    SharedCoordinate { a: usize, b: usize, axis: char },
    SquareFamily([usize; 3]),
    CosquareQuadruple([usize; 4]),
    SiteAtSquareCorner { triple: [usize; 3], site: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CollinearTriple(t) => write!(f, "collinear triple {t:?}"),
            Violation::CocircularQuadruple(q) => write!(f, "cocircular quadruple {q:?}"),
            Violation::SharedCoordinate { a, b, axis } => {
                write!(f, "sites {a} and {b} share their {axis} coordinate")
            }
            Violation::SquareFamily(t) => write!(f, "triple {t:?} admits a family of squares"),
            Violation::CosquareQuadruple(q) => write!(f, "quadruple {q:?} lies on one square"),
            Violation::SiteAtSquareCorner { triple, site } => {
                write!(f, "site {site} is a corner of a square through {triple:?}")
            }
        }
    }
}

impl Violation {
    /// Sites involved in the violation.
    pub fn sites(&self) -> Vec<usize> {
        match self {
            Violation::CollinearTriple(t) | Violation::SquareFamily(t) => t.to_vec(),
            Violation::CocircularQuadruple(q) | Violation::CosquareQuadruple(q) => q.to_vec(),
            Violation::SharedCoordinate { a, b, .. } => vec![*a, *b],
            Violation::SiteAtSquareCorner { triple, site } => {
                let mut v = triple.to_vec();
                v.push(*site);
                v
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::GeneralPositionViolation(v.to_string())),
        }
    }
}

fn hash_of<T: Hash>(v: &T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

const SMALL: i64 = 1 << 30;

fn small_integer_coordinates(s: &ColoredSiteSet) -> Option<Vec<(i64, i64)>> {
    let int = |r: &crate::rational::Rational| {
        r.is_integer().then(|| r.numer().to_i64()).flatten().filter(|v| v.abs() < SMALL)
    };
    s.sites().iter().map(|x| Some((int(&x.position.x)?, int(&x.position.y)?))).collect()
}

/// Hash of the exact circumcenter in lowest terms, or `None` for a collinear
/// triple. All intermediate values fit in `i128` for coordinates below 2^30.
fn integer_circle_key(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Option<u64> {
    let (bx, by) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
    let (cx, cy) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
    let d = 2 * (bx * cy - by * cx);
    if d == 0 {
        return None;
    }
    let (bb, cc) = (bx * bx + by * by, cx * cx + cy * cy);
    let x = a.0 as i128 * d + (cy * bb - by * cc);
    let y = a.1 as i128 * d + (bx * cc - cx * bb);
    let g = x.gcd(&y).gcd(&d) * d.signum();
    Some(hash_of(&(x / g, y / g, d / g)))
}

/// Scans for degenerate configurations. Euclidean: collinear triples and
/// cocircular quadruples. L∞ additionally: shared coordinates, triples with a
/// one-parameter family of squares, four sites on one square, and sites
/// sitting at a square's corner.
pub fn check_general_position(s: &ColoredSiteSet) -> GeneralPositionReport {
    let mut violations = Vec::new();
    let n = s.n();
    // (hash of circle, triple); equal hashes are re-checked exactly
    let mut circles: Vec<(u64, [u32; 3])> = Vec::new();
    let ints = small_integer_coordinates(s);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let key = match &ints {
                    Some(p) => integer_circle_key(p[a], p[b], p[c]),
                    None => {
                        let (pa, pb, pc) = (s.pos(a), s.pos(b), s.pos(c));
                        (orient2d(pa, pb, pc) != 0).then(|| hash_of(&circumcircle(pa, pb, pc).unwrap()))
                    }
                };
                match key {
                    None => violations.push(Violation::CollinearTriple([a, b, c])),
                    Some(h) => circles.push((h, [a as u32, b as u32, c as u32])),
                }
            }
        }
    }
    circles.sort_unstable();
    let mut reported: HashSet<[usize; 4]> = HashSet::new();
    let mut i = 0;
    while i < circles.len() {
        let mut j = i + 1;
        while j < circles.len() && circles[j].0 == circles[i].0 {
            j += 1;
        }
        for x in i..j {
            for y in x + 1..j {
                let (tx, ty) = (circles[x].1, circles[y].1);
                let cx = circumcircle(s.pos(tx[0] as usize), s.pos(tx[1] as usize), s.pos(tx[2] as usize)).unwrap();
                let cy = circumcircle(s.pos(ty[0] as usize), s.pos(ty[1] as usize), s.pos(ty[2] as usize)).unwrap();
                if cx == cy {
                    let extra = ty.iter().find(|v| !tx.contains(v)).copied().unwrap();
                    let mut q = [tx[0] as usize, tx[1] as usize, tx[2] as usize, extra as usize];
                    q.sort_unstable();
                    if reported.insert(q) {
                        violations.push(Violation::CocircularQuadruple(q));
                    }
                }
            }
        }
        i = j;
    }
    if s.metric() == Metric::Linf {
        linf_violations(s, &mut violations);
    }
    GeneralPositionReport { violations }
}

fn linf_violations(s: &ColoredSiteSet, out: &mut Vec<Violation>) {
    let n = s.n();
    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (s.pos(a), s.pos(b));
            if pa.x == pb.x {
                out.push(Violation::SharedCoordinate { a, b, axis: 'x' });
            }
            if pa.y == pb.y {
                out.push(Violation::SharedCoordinate { a, b, axis: 'y' });
            }
        }
    }
    let mut squares: Vec<(u64, [usize; 3])> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = [a, b, c];
                match squares_through_three(s.pos(a), s.pos(b), s.pos(c)) {
                    Err(_) => out.push(Violation::SquareFamily(t)),
                    Ok(list) => {
                        for sq in list {
                            for &v in &t {
                                let (dx, dy) = s.pos(v).sub(&sq.center);
                                if dx.abs() == sq.radius && dy.abs() == sq.radius {
                                    out.push(Violation::SiteAtSquareCorner { triple: t, site: v });
                                }
                            }
                            squares.push((hash_of(&sq), t));
                        }
                    }
                }
            }
        }
    }
    squares.sort_unstable();
    let mut reported: HashSet<[usize; 4]> = HashSet::new();
    for w in squares.windows(2) {
        if w[0].0 != w[1].0 || w[0].1 == w[1].1 {
            continue;
        }
        // re-derive exactly: is the fourth site on some square through the first triple?
        let t = w[0].1;
        let extra = *w[1].1.iter().find(|v| !t.contains(v)).unwrap();
        let list = squares_through_three(s.pos(t[0]), s.pos(t[1]), s.pos(t[2])).unwrap_or_default();
        if list.iter().any(|sq| sq.classify(s.pos(extra)) == Location::OnBoundary) {
            let mut q = [t[0], t[1], t[2], extra];
            q.sort_unstable();
            if reported.insert(q) {
                out.push(Violation::CosquareQuadruple(q));
            }
        }
    }
}

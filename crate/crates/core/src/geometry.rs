//! Exact predicates and metric balls.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn sub(&self, o: &Point2) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn dist2(&self, o: &Point2) -> Rational {
        let (dx, dy) = self.sub(o);
        &dx * &dx + &dy * &dy
    }

    /// Chebyshev (L∞) distance.
    pub fn dist_inf(&self, o: &Point2) -> Rational {
        let (dx, dy) = self.sub(o);
        dx.abs().max(dy.abs())
    }

    pub fn midpoint(&self, o: &Point2) -> Point2 {
        Point2::new(Rational::midpoint(&self.x, &o.x), Rational::midpoint(&self.y, &o.y))
    }

    /// `self + t * (o - self)`.
    pub fn lerp(&self, o: &Point2, t: &Rational) -> Point2 {
        let (dx, dy) = o.sub(self);
        Point2::new(&self.x + t * &dx, &self.y + t * &dy)
    }
}

impl std::fmt::Display for Point2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(x.into(), y.into(), z.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point2,
    pub radius_squared: Rational,
}

/// Axis-aligned square: the L∞ ball of the given Chebyshev radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareBall {
    pub center: Point2,
    pub radius: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ball {
    Circle(Circle),
    Square(SquareBall),
}

impl Ball {
    pub fn center(&self) -> &Point2 {
        match self {
            Ball::Circle(c) => &c.center,
            Ball::Square(s) => &s.center,
        }
    }

    pub fn classify(&self, p: &Point2) -> Location {
        match self {
            Ball::Circle(c) => c.classify(p),
            Ball::Square(s) => s.classify(p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

fn location_from(ord: Ordering) -> Location {
    match ord {
        Ordering::Less => Location::Inside,
        Ordering::Equal => Location::OnBoundary,
        Ordering::Greater => Location::Outside,
    }
}

impl Circle {
    pub fn classify(&self, p: &Point2) -> Location {
        location_from(p.dist2(&self.center).cmp(&self.radius_squared))
    }
}

impl SquareBall {
    pub fn classify(&self, p: &Point2) -> Location {
        location_from(p.dist_inf(&self.center).cmp(&self.radius))
    }
}

pub fn classify_point(ball: &Ball, p: &Point2) -> Location {
    ball.classify(p)
}

/// Sign of the cross product `(q - p) x (r - p)`; +1 for a counterclockwise turn.
pub fn orient2d(p: &Point2, q: &Point2, r: &Point2) -> i32 {
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    (&ux * &vy).cmp(&(&uy * &vx)) as i32
}

/// Sign of the in-circle determinant: +1 when `d` is strictly inside the
/// circle through the counterclockwise triangle `a, b, c`.
pub fn incircle(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> i32 {
    let row = |p: &Point2| {
        let (x, y) = p.sub(d);
        let w = &x * &x + &y * &y;
        (x, y, w)
    };
    let (ax, ay, aw) = row(a);
    let (bx, by, bw) = row(b);
    let (cx, cy, cw) = row(c);
    let det = &ax * (&by * &cw - &bw * &cy) - &ay * (&bx * &cw - &bw * &cx) + &aw * (&bx * &cy - &by * &cx);
    det.signum()
}

pub fn circumcircle(p: &Point2, q: &Point2, r: &Point2) -> Result<Circle> {
    let (bx, by) = q.sub(p);
    let (cx, cy) = r.sub(p);
    let d = (&bx * &cy - &by * &cx) * Rational::from_int(2);
    if d.is_zero() {
        return Err(Error::CollinearInput);
    }
    let b2 = &bx * &bx + &by * &by;
    let c2 = &cx * &cx + &cy * &cy;
    let ux = (&cy * &b2 - &by * &c2) / &d;
    let uy = (&bx * &c2 - &cx * &b2) / &d;
    let radius_squared = &ux * &ux + &uy * &uy;
    Ok(Circle { center: Point2::new(&p.x + ux, &p.y + uy), radius_squared })
}

/// Lift onto the paraboloid `z = x² + y²`.
pub fn lift(p: &Point2) -> Point3 {
    let z = &p.x * &p.x + &p.y * &p.y;
    Point3::new(p.x.clone(), p.y.clone(), z)
}

/// Sign of `det(b - a, c - a, d - a)`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i32 {
    let diff = |p: &Point3| (&p.x - &a.x, &p.y - &a.y, &p.z - &a.z);
    let (bx, by, bz) = diff(b);
    let (cx, cy, cz) = diff(c);
    let (dx, dy, dz) = diff(d);
    let det = &bx * (&cy * &dz - &cz * &dy) - &by * (&cx * &dz - &cz * &dx) + &bz * (&cx * &dy - &cy * &dx);
    det.signum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

const SIDES: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

impl Side {
    /// Coefficients of `(cx, cy, r)` and which coordinate of the point is pinned.
    fn row(self) -> ([i64; 3], bool) {
        match self {
            Side::Left => ([1, 0, -1], true),
            Side::Right => ([1, 0, 1], true),
            Side::Bottom => ([0, 1, -1], false),
            Side::Top => ([0, 1, 1], false),
        }
    }
}

/// Every axis-aligned square whose boundary passes through `p`, `q` and `r`.
///
/// Each point is assigned to one of the four sides (64 cases); each case is a
/// 3x3 rational linear system for center and radius. A rank-deficient but
/// consistent case means a one-parameter family of squares.
pub fn squares_through_three(p: &Point2, q: &Point2, r: &Point2) -> Result<Vec<SquareBall>> {
    let pts = [p, q, r];
    let mut out: Vec<SquareBall> = Vec::new();
    for &s0 in &SIDES {
        for &s1 in &SIDES {
            for &s2 in &SIDES {
                let sides = [s0, s1, s2];
                let mut m: [[Rational; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
                let mut rhs = [Rational::zero(), Rational::zero(), Rational::zero()];
                for i in 0..3 {
                    let (coef, pin_x) = sides[i].row();
                    for j in 0..3 {
                        m[i][j] = Rational::from_int(coef[j]);
                    }
                    rhs[i] = if pin_x { pts[i].x.clone() } else { pts[i].y.clone() };
                }
                let det = det3(&m);
                if det.is_zero() {
                    if singular_consistent(&sides, &rhs) {
                        return Err(Error::DegenerateConfiguration(format!(
                            "a one-parameter family of squares passes through {p}, {q}, {r}"
                        )));
                    }
                    continue;
                }
                let mut sol = Vec::with_capacity(3);
                for col in 0..3 {
                    let mut mc = m.clone();
                    for row in 0..3 {
                        mc[row][col] = rhs[row].clone();
                    }
                    sol.push(det3(&mc) / &det);
                }
                let radius = sol.pop().unwrap();
                let cy = sol.pop().unwrap();
                let cx = sol.pop().unwrap();
                if radius.signum() <= 0 {
                    continue;
                }
                let sq = SquareBall { center: Point2::new(cx, cy), radius };
                if pts.iter().all(|pt| sq.classify(pt) == Location::OnBoundary) && !out.contains(&sq) {
                    out.push(sq);
                }
            }
        }
    }
    Ok(out)
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// The rows of distinct sides are pairwise independent (any three of the four
/// are), so the system is singular exactly when a side repeats; it is then
/// consistent iff the repeated side pins equal coordinates.
fn singular_consistent(sides: &[Side; 3], rhs: &[Rational; 3]) -> bool {
    for i in 0..3 {
        for j in i + 1..3 {
            if sides[i] == sides[j] && rhs[i] != rhs[j] {
                return false;
            }
        }
    }
    true
}

/// The line `a·x + b·y = c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    /// Bisector of `t` and `u`, oriented so that `side` is negative on the
    /// side of `t`.
    pub fn bisector(t: &Point2, u: &Point2) -> Line {
        let two = Rational::from_int(2);
        let a = (&u.x - &t.x) * &two;
        let b = (&u.y - &t.y) * &two;
        let c = (&u.x * &u.x + &u.y * &u.y) - (&t.x * &t.x + &t.y * &t.y);
        Line { a, b, c }
    }

    pub fn through(p: &Point2, q: &Point2) -> Line {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line { a, b, c }
    }

    pub fn flipped(&self) -> Line {
        Line { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn side(&self, p: &Point2) -> i32 {
        self.eval(p).signum()
    }

    pub fn intersect(&self, o: &Line) -> Option<Point2> {
        let det = &self.a * &o.b - &o.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &o.b - &o.c * &self.b) / &det;
        let y = (&self.a * &o.c - &o.a * &self.c) / &det;
        Some(Point2::new(x, y))
    }
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2(poly: &[&Point2]) -> Rational {
    let n = poly.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        acc = acc + (&p.x * &q.y - &q.x * &p.y);
    }
    acc
}

/// Counterclockwise angular comparison of direction vectors, starting at the
/// positive x axis.
pub fn cmp_direction(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let half = |v: &(Rational, Rational)| {
        let (sx, sy) = (v.0.signum(), v.1.signum());
        if sy > 0 || (sy == 0 && sx > 0) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = &a.0 * &b.1 - &a.1 * &b.0;
    0.cmp(&cross.signum())
}

use std::collections::BTreeSet;

use colorvd::geometry::squares_through_three;
use colorvd::{Point2, Rational};

/// Every square through the triple, found from its corners: one corner of
/// any such square lies on the 3×3 grid of the triple's coordinates.
pub fn corner_grid_squares(pts: [&Point2; 3]) -> BTreeSet<(Point2, Rational)> {
    let mut out = BTreeSet::new();
    for cx in pts {
        for cy in pts {
            let (x0, y0) = (cx.x.clone(), cy.y.clone());
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                for t in pts {
                    for len in [(&t.x - &x0).abs(), (&t.y - &y0).abs()] {
                        if len.is_zero() {
                            continue;
                        }
                        let x1 = &x0 + &(&len * &Rational::from_int(sx));
                        let y1 = &y0 + &(&len * &Rational::from_int(sy));
                        let (lo_x, hi_x) = if x0 < x1 { (&x0, &x1) } else { (&x1, &x0) };
                        let (lo_y, hi_y) = if y0 < y1 { (&y0, &y1) } else { (&y1, &y0) };
                        let on_boundary = |z: &Point2| {
                            let inside = lo_x <= &z.x && &z.x <= hi_x && lo_y <= &z.y && &z.y <= hi_y;
                            inside && (&z.x == lo_x || &z.x == hi_x || &z.y == lo_y || &z.y == hi_y)
                        };
                        if pts.iter().all(|z| on_boundary(z)) {
                            let center = Point2::new(Rational::midpoint(lo_x, hi_x), Rational::midpoint(lo_y, hi_y));
                            out.insert((center, &len / &Rational::from_int(2)));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn library_squares(pts: [&Point2; 3]) -> BTreeSet<(Point2, Rational)> {
    squares_through_three(pts[0], pts[1], pts[2]).unwrap().into_iter().map(|s| (s.center, s.radius)).collect()
}

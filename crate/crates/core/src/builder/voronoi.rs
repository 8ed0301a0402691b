//! Nearest- and farthest-site cells by successive half-plane clipping.

use crate::census::Side;
use crate::geometry::{Line, Point2};
use crate::sites::ColoredSiteSet;

use super::dcel::Rect;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tag {
    Site(usize),
    Bound,
}

/// Edge of a convex cell, from `start` to the next edge's `start`.
#[derive(Clone, Debug)]
pub(crate) struct CellEdge {
    pub start: Point2,
    pub line: Line,
    pub tag: Tag,
}

pub(crate) fn box_polygon(bx: &Rect) -> Vec<CellEdge> {
    let corners = bx.corners();
    let lines = bx.side_lines();
    corners.into_iter().zip(lines).map(|(start, line)| CellEdge { start, line, tag: Tag::Bound }).collect()
}

/// Keeps the part of a convex counterclockwise polygon where `h.eval <= 0`;
/// the cut runs along `h` and is tagged `tag`.
pub(crate) fn clip(poly: &[CellEdge], h: &Line, tag: Tag) -> Vec<CellEdge> {
    let len = poly.len();
    let signs: Vec<i32> = poly.iter().map(|e| h.eval(&e.start).signum()).collect();
    if signs.iter().all(|&s| s <= 0) {
        return poly.to_vec();
    }
    if signs.iter().all(|&s| s >= 0) {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(len + 1);
    for i in 0..len {
        let e = &poly[i];
        let (sp, sq) = (signs[i], signs[(i + 1) % len]);
        match (sp, sq) {
            (0, 1) => out.push(CellEdge { start: e.start.clone(), line: h.clone(), tag }),
            (0, _) => out.push(e.clone()),
            (-1, 1) => {
                out.push(e.clone());
                let x = e.line.intersect(h).expect("edge crosses the cutting line");
                out.push(CellEdge { start: x, line: h.clone(), tag });
            }
            (-1, _) => out.push(e.clone()),
            (1, -1) => {
                let x = e.line.intersect(h).expect("edge crosses the cutting line");
                out.push(CellEdge { start: x, line: e.line.clone(), tag: e.tag });
            }
            _ => {}
        }
    }
    if out.len() < 3 {
        return Vec::new();
    }
    out
}

/// Region of `site` in the nearest (Min) or farthest (Max) site diagram of
/// `site` and `others`, inside the box.
pub(crate) fn cell(s: &ColoredSiteSet, site: usize, others: &[usize], side: Side, bx: &Rect) -> Vec<CellEdge> {
    let p = s.pos(site);
    let mut order: Vec<usize> = others.to_vec();
    // nearby cuts first for nearest cells, distant ones first for farthest cells
    order.sort_by_cached_key(|&t| p.dist2(s.pos(t)));
    if side == Side::Max {
        order.reverse();
    }
    let mut poly = box_polygon(bx);
    for t in order {
        let bis = Line::bisector(p, s.pos(t));
        let h = match side {
            Side::Min => bis,
            Side::Max => bis.flipped(),
        };
        poly = clip(&poly, &h, Tag::Site(t));
        if poly.is_empty() {
            break;
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::Metric;

    fn t3() -> ColoredSiteSet {
        let pts = [(0, 0), (4, 0), (0, 3)];
        ColoredSiteSet::new(
            pts.iter().enumerate().map(|(i, &(x, y))| (Point2::from_ints(x, y), i)).collect(),
            Metric::Euclidean,
        )
        .unwrap()
    }

    fn bx() -> Rect {
        Rect { min: Point2::from_ints(-6, -6), max: Point2::from_ints(10, 10) }
    }

    #[test]
    fn nearest_cells_share_the_circumcenter() {
        let s = t3();
        let center = Point2::new(2.into(), crate::rational::Rational::new(3, 2));
        for site in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&t| t != site).collect();
            let c = cell(&s, site, &others, Side::Min, &bx());
            assert!(c.iter().any(|e| e.start == center), "cell {site}");
        }
    }

    #[test]
    fn farthest_cell_of_interior_point_is_empty() {
        let pts = [(0, 0, 0), (10, 1, 1), (4, 9, 2), (5, 3, 0)];
        let s =
            ColoredSiteSet::new(pts.iter().map(|&(x, y, c)| (Point2::from_ints(x, y), c)).collect(), Metric::Euclidean)
                .unwrap();
        let big = Rect { min: Point2::from_ints(-50, -50), max: Point2::from_ints(60, 60) };
        assert!(cell(&s, 3, &[0, 1, 2], Side::Max, &big).is_empty());
        assert!(!cell(&s, 0, &[1, 2, 3], Side::Max, &big).is_empty());
    }
}

//! Colored j-facets of planar and spatial point sets.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{orient2d, orient3d, Point3};
use crate::sites::{ColoredSiteSet, Metric};

/// `counts[c][j]` is the number of c-chromatic j-facets; row 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetTable {
    pub dimension: usize,
    pub n: usize,
    pub m: usize,
    pub counts: Vec<Vec<i64>>,
}

impl FacetTable {
    pub fn zeros(dimension: usize, n: usize, m: usize) -> Self {
        FacetTable { dimension, n, m, counts: vec![vec![0; m]; dimension + 1] }
    }

    /// Zero outside the table, including negative `j`.
    pub fn get(&self, c: usize, j: i64) -> i64 {
        if j < 0 || c > self.dimension {
            return 0;
        }
        self.counts[c].get(j as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.counts.iter().flatten().sum()
    }
}

/// Marks colors seen in the current scan without clearing between scans.
pub(crate) struct ColorMarks {
    stamp: Vec<u32>,
    epoch: u32,
    count: usize,
}

impl ColorMarks {
    pub(crate) fn new(m: usize) -> Self {
        ColorMarks { stamp: vec![0; m], epoch: 0, count: 0 }
    }

    pub(crate) fn reset(&mut self) {
        self.epoch += 1;
        self.count = 0;
    }

    pub(crate) fn mark(&mut self, c: usize) {
        if self.stamp[c] != self.epoch {
            self.stamp[c] = self.epoch;
            self.count += 1;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}

struct Tally {
    conflict: bool,
    marks: ColorMarks,
}

impl Tally {
    fn new(m: usize) -> Self {
        Tally { conflict: false, marks: ColorMarks::new(m) }
    }

    fn reset(&mut self) {
        self.conflict = false;
        self.marks.reset();
    }

    fn add(&mut self, color: usize, defining: &[usize]) {
        if defining.contains(&color) {
            self.conflict = true;
        } else {
            self.marks.mark(color);
        }
    }

    fn record(&self, table: &mut FacetTable, defining: &[usize]) {
        if self.conflict {
            return;
        }
        let mut d = defining.to_vec();
        d.sort_unstable();
        d.dedup();
        table.counts[d.len()][self.marks.count()] += 1;
    }
}

/// Both orientations of every pair; the positive side of `s -> t` is the open
/// half-plane to its left.
pub fn facets_2d(s: &ColoredSiteSet) -> FacetTable {
    let (n, m) = (s.n(), s.m());
    let mut table = FacetTable::zeros(2, n, m);
    let mut left = Tally::new(m);
    let mut right = Tally::new(m);
    for a in 0..n {
        for b in a + 1..n {
            let defining = [s.color(a), s.color(b)];
            left.reset();
            right.reset();
            for w in 0..n {
                if w == a || w == b {
                    continue;
                }
                match orient2d(s.pos(a), s.pos(b), s.pos(w)) {
                    1 => left.add(s.color(w), &defining),
                    -1 => right.add(s.color(w), &defining),
                    _ => {}
                }
            }
            left.record(&mut table, &defining);
            right.record(&mut table, &defining);
        }
    }
    table
}

/// Both orientations of every triple of colored spatial points.
pub fn facets_3d(points: &[(Point3, usize)], m: usize) -> FacetTable {
    let n = points.len();
    let mut table = FacetTable::zeros(3, n, m);
    let mut above = Tally::new(m);
    let mut below = Tally::new(m);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let defining = [points[a].1, points[b].1, points[c].1];
                above.reset();
                below.reset();
                for (w, (p, color)) in points.iter().enumerate() {
                    if w == a || w == b || w == c {
                        continue;
                    }
                    match orient3d(&points[a].0, &points[b].0, &points[c].0, p) {
                        1 => above.add(*color, &defining),
                        -1 => below.add(*color, &defining),
                        _ => {}
                    }
                }
                above.record(&mut table, &defining);
                below.record(&mut table, &defining);
            }
        }
    }
    table
}

/// Unbounded-edge tables `(u, ū)` of the refined minimal and maximal
/// diagrams; under the Euclidean metric both equal the planar facet table.
pub fn euclid_unbounded_tables(s: &ColoredSiteSet) -> Result<(FacetTable, FacetTable)> {
    s.require_metric(Metric::Euclidean)?;
    let u = facets_2d(s);
    Ok((u.clone(), u))
}

/// `U_j = Σ_{i≤j} (u[2][i] + (j−i+1)·u[1][i])`.
pub fn aggregate_u(t: &FacetTable, j: i64) -> i64 {
    (0..=j).map(|i| t.get(2, i) + (j - i + 1) * t.get(1, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lift, Point2};

    fn t3() -> ColoredSiteSet {
        let pts = [(0, 0), (4, 0), (0, 3)];
        ColoredSiteSet::new(
            pts.iter().enumerate().map(|(i, &(x, y))| (Point2::from_ints(x, y), i)).collect(),
            Metric::Euclidean,
        )
        .unwrap()
    }

    #[test]
    fn triangle_2d() {
        let t = facets_2d(&t3());
        assert_eq!(t.counts[2], vec![3, 3, 0]);
        assert_eq!(t.counts[1], vec![0, 0, 0]);
        assert_eq!(aggregate_u(&t, 0), 3);
        assert_eq!(aggregate_u(&t, 1), 6);
    }

    #[test]
    fn single_color_triangle() {
        let s = t3();
        let mono =
            ColoredSiteSet::new(s.points().into_iter().map(|(p, _)| (p, 0)).collect(), Metric::Euclidean).unwrap();
        let t = facets_2d(&mono);
        assert_eq!(t.counts[1], vec![3]);
        assert_eq!(t.counts[2], vec![0]);
    }

    #[test]
    fn triangle_3d() {
        let s = t3();
        let lifted: Vec<_> = s.sites().iter().map(|x| (lift(&x.position), x.color)).collect();
        let t = facets_3d(&lifted, 3);
        assert_eq!(t.counts[3], vec![2, 0, 0]);
        assert_eq!(t.total(), 2);
    }

    #[test]
    fn linf_is_rejected() {
        let s = t3().with_metric(Metric::Linf);
        assert!(euclid_unbounded_tables(&s).is_err());
    }
}

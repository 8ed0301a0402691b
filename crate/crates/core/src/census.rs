//! Enumeration of candidate diagram vertices: metric balls through site
//! triples, classified by chromaticity and weight.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::facets::ColorMarks;
use crate::geometry::{circumcircle, squares_through_three, Ball, Location};
use crate::sites::{check_general_position, ColoredSiteSet, Metric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Min,
    Max,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Min, Side::Max];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Min => "min",
            Side::Max => "max",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub triple: [usize; 3],
    pub ball: Ball,
    pub side: Side,
    pub chromaticity: usize,
    pub weight: usize,
}

/// `v[c][j]` (min side) and `vbar[c][j]` (max side); row 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub metric: Metric,
    pub n: usize,
    pub m: usize,
    pub v: Vec<Vec<i64>>,
    pub vbar: Vec<Vec<i64>>,
}

impl CensusTable {
    pub fn zeros(metric: Metric, n: usize, m: usize) -> Self {
        CensusTable { metric, n, m, v: vec![vec![0; m]; 4], vbar: vec![vec![0; m]; 4] }
    }

    pub fn from_entries(metric: Metric, n: usize, m: usize, entries: &[CensusEntry]) -> Self {
        let mut t = CensusTable::zeros(metric, n, m);
        for e in entries {
            t.side_mut(e.side)[e.chromaticity][e.weight] += 1;
        }
        t
    }

    pub fn side(&self, side: Side) -> &Vec<Vec<i64>> {
        match side {
            Side::Min => &self.v,
            Side::Max => &self.vbar,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<Vec<i64>> {
        match side {
            Side::Min => &mut self.v,
            Side::Max => &mut self.vbar,
        }
    }

    /// Zero outside the table, including negative `j`.
    pub fn get(&self, side: Side, c: usize, j: i64) -> i64 {
        if j < 0 || c > 3 {
            return 0;
        }
        self.side(side)[c].get(j as usize).copied().unwrap_or(0)
    }
}

fn check_order(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::InvalidOrder { k, m });
    }
    Ok(())
}

/// Vertices of the coarse diagram of order `k`: `v[3][k−1] + v[3][k−2] + v[2][k−1]`.
pub fn diagram_vertex_count(t: &CensusTable, k: usize, side: Side) -> Result<i64> {
    check_order(k, t.m)?;
    let k = k as i64;
    Ok(t.get(side, 3, k - 1) + t.get(side, 3, k - 2) + t.get(side, 2, k - 1))
}

/// Vertices of the refined diagram of order `k`.
pub fn refined_vertex_count(t: &CensusTable, k: usize, side: Side) -> Result<i64> {
    check_order(k, t.m)?;
    let k = k as i64;
    Ok(t.get(side, 3, k - 1)
        + t.get(side, 3, k - 2)
        + t.get(side, 3, k - 3)
        + t.get(side, 2, k - 1)
        + t.get(side, 2, k - 2)
        + t.get(side, 1, k - 1))
}

pub fn census(s: &ColoredSiteSet) -> Result<CensusTable> {
    let entries = census_entries(s)?;
    Ok(CensusTable::from_entries(s.metric(), s.n(), s.m(), &entries))
}

/// Every conflict-free ball through a site triple, for both sides.
pub fn census_entries(s: &ColoredSiteSet) -> Result<Vec<CensusEntry>> {
    check_general_position(s).into_result()?;
    let n = s.n();
    let mut out = Vec::new();
    let mut inside = ColorMarks::new(s.m());
    let mut outside = ColorMarks::new(s.m());
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple = [a, b, c];
                let balls = match s.metric() {
                    Metric::Euclidean => {
                        vec![Ball::Circle(circumcircle(s.pos(a), s.pos(b), s.pos(c))?)]
                    }
                    Metric::Linf => squares_through_three(s.pos(a), s.pos(b), s.pos(c))
                        .map_err(|e| Error::GeneralPositionViolation(e.to_string()))?
                        .into_iter()
                        .map(Ball::Square)
                        .collect(),
                };
                let defining = [s.color(a), s.color(b), s.color(c)];
                let mut chroma = defining.to_vec();
                chroma.sort_unstable();
                chroma.dedup();
                for ball in balls {
                    inside.reset();
                    outside.reset();
                    let (mut min_ok, mut max_ok) = (true, true);
                    for w in 0..n {
                        if triple.contains(&w) {
                            continue;
                        }
                        let color = s.color(w);
                        let own = defining.contains(&color);
                        match ball.classify(s.pos(w)) {
                            Location::Inside if own => min_ok = false,
                            Location::Inside => inside.mark(color),
                            Location::Outside if own => max_ok = false,
                            Location::Outside => outside.mark(color),
                            Location::OnBoundary => {
                                return Err(Error::GeneralPositionViolation(format!(
                                    "site {w} lies on the ball through {triple:?}"
                                )))
                            }
                        }
                        if !min_ok && !max_ok {
                            break;
                        }
                    }
                    if min_ok {
                        out.push(CensusEntry {
                            triple,
                            ball: ball.clone(),
                            side: Side::Min,
                            chromaticity: chroma.len(),
                            weight: inside.count(),
                        });
                    }
                    if max_ok {
                        out.push(CensusEntry {
                            triple,
                            ball,
                            side: Side::Max,
                            chromaticity: chroma.len(),
                            weight: outside.count(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

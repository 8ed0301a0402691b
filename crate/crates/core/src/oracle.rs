//! Brute-force point queries: the ground truth every diagram is audited against.

use serde::{Deserialize, Serialize};

use crate::builder::dcel::PlanarSubdivision;
use crate::census::Side;
use crate::geometry::Point2;
use crate::rational::Rational;
use crate::sites::{ColoredSiteSet, Metric};

/// Distance of a site to `x`: squared for Euclidean, Chebyshev for L∞.
pub fn site_distance(s: &ColoredSiteSet, site: usize, x: &Point2) -> Rational {
    match s.metric() {
        Metric::Euclidean => s.pos(site).dist2(x),
        Metric::Linf => s.pos(site).dist_inf(x),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorDistance {
    pub color: usize,
    pub min: Rational,
    pub min_site: usize,
    pub max: Rational,
    pub max_site: usize,
}

/// Per-color nearest and farthest distances, indexed by color. Ties between
/// sites keep the smaller id as witness.
pub fn profile(x: &Point2, s: &ColoredSiteSet) -> Vec<ColorDistance> {
    let mut out: Vec<Option<ColorDistance>> = vec![None; s.m()];
    for site in s.sites() {
        let d = site_distance(s, site.id, x);
        match &mut out[site.color] {
            slot @ None => {
                *slot = Some(ColorDistance {
                    color: site.color,
                    min: d.clone(),
                    min_site: site.id,
                    max: d,
                    max_site: site.id,
                })
            }
            Some(cd) => {
                if d < cd.min {
                    cd.min = d.clone();
                    cd.min_site = site.id;
                }
                if d > cd.max {
                    cd.max = d;
                    cd.max_site = site.id;
                }
            }
        }
    }
    out.into_iter().map(|c| c.expect("every color has a site")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KSet {
    Region { colors: Vec<usize>, kth_color: usize, witness: usize },
    OnBoundary,
}

/// The `k` nearest (Min) or farthest (Max) colors at `x`.
pub fn k_set(x: &Point2, s: &ColoredSiteSet, k: usize, side: Side) -> KSet {
    assert!(k >= 1 && k <= s.m(), "order {k} outside 1..={}", s.m());
    let prof = profile(x, s);
    let key = |c: &ColorDistance| match side {
        Side::Min => c.min.clone(),
        Side::Max => -&c.max,
    };
    let mut order: Vec<(Rational, usize)> = prof.iter().map(|c| (key(c), c.color)).collect();
    order.sort();
    if k < order.len() && order[k - 1].0 == order[k].0 {
        return KSet::OnBoundary;
    }
    let kth_color = order[k - 1].1;
    let mut colors: Vec<usize> = order[..k].iter().map(|e| e.1).collect();
    colors.sort_unstable();
    let witness = match side {
        Side::Min => prof[kth_color].min_site,
        Side::Max => prof[kth_color].max_site,
    };
    KSet::Region { colors, kth_color, witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub face: usize,
    pub point: Point2,
    pub expected: Vec<usize>,
    pub found: KSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub faces: usize,
    pub samples: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Samples every face at interior points and compares its label with the
/// oracle; refined faces must also match the k-th color's witness site.
pub fn validate_diagram(
    d: &PlanarSubdivision,
    s: &ColoredSiteSet,
    k: usize,
    side: Side,
    samples_per_face: usize,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (fid, face) in d.faces.iter().enumerate() {
        report.faces += 1;
        for x in d.interior_samples(fid, samples_per_face) {
            report.samples += 1;
            let found = k_set(&x, s, k, side);
            let ok = match (&found, face.label.associated_site) {
                (KSet::Region { colors, .. }, None) => *colors == face.label.colors,
                (KSet::Region { colors, witness, .. }, Some(site)) => *colors == face.label.colors && *witness == site,
                (KSet::OnBoundary, _) => false,
            };
            if !ok {
                report.mismatches.push(Mismatch { face: fid, point: x, expected: face.label.colors.clone(), found });
            }
        }
    }
    report
}

//! Exact evaluation of the counting identities and bounds over census and
//! facet tables.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::builder::DiagramSequence;
use crate::census::{census, diagram_vertex_count, refined_vertex_count, CensusEntry, CensusTable, Side};
use crate::error::Result;
use crate::facets::{aggregate_u, facets_2d, facets_3d, FacetTable};
use crate::geometry::{lift, Point2};
use crate::oracle::validate_diagram;
use crate::sites::{ColoredSiteSet, Metric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub identity: String,
    pub params: String,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<Record>,
}

impl VerificationReport {
    pub fn push(&mut self, identity: &str, params: String, lhs: i64, relation: Relation, rhs: i64) {
        let pass = relation.holds(lhs, rhs);
        self.records.push(Record { identity: identity.to_string(), params, lhs, rhs, relation, pass });
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn by_identity<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.identity == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<16} {:<22} {:>10} {:>3} {:<10} result", "identity", "params", "lhs", "", "rhs")?;
        for r in &self.records {
            writeln!(
                f,
                "{:<16} {:<22} {:>10} {:>3} {:<10} {}",
                r.identity,
                r.params,
                r.lhs,
                r.relation,
                r.rhs,
                if r.pass { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Random subsets for the order-1 subset conditions.
    pub subsets: usize,
    pub seed: u64,
    /// Restricts records to orders `k ≤ max_order` (and `j < max_order`).
    pub max_order: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { subsets: 20, seed: 0, max_order: None }
    }
}

/// `Σ_{i≤k−2} 2·t(2,i) + Σ_{i≤k−1} (2k−2i−1)·t(1,i)` for a table accessor `t`.
fn correction(k: i64, t: impl Fn(usize, i64) -> i64) -> i64 {
    let twos: i64 = (0..=k - 2).map(|i| 2 * t(2, i)).sum();
    let ones: i64 = (0..=k - 1).map(|i| (2 * k - 2 * i - 1) * t(1, i)).sum();
    twos + ones
}

/// `V_j = v[3][j] + Σ_{i≤j} (v[2][i] + (j−i+1)·v[1][i])` on one side.
pub fn aggregate_v(t: &CensusTable, side: Side, j: i64) -> i64 {
    t.get(side, 3, j) + (0..=j).map(|i| t.get(side, 2, i) + (j - i + 1) * t.get(side, 1, i)).sum::<i64>()
}

/// The colored facets of the lifted sites.
pub fn lifted_facets(s: &ColoredSiteSet) -> FacetTable {
    let lifted: Vec<_> = s.sites().iter().map(|x| (lift(&x.position), x.color)).collect();
    facets_3d(&lifted, s.m())
}

/// Evaluates every identity and bound that applies to the metric of `s`.
/// Tables must come from the same site set.
pub fn verify_identities(
    s: &ColoredSiteSet,
    census: &CensusTable,
    f2d: &FacetTable,
    f3d: &FacetTable,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let (n, m) = (s.n() as i64, s.m() as i64);
    // orders run over 1..top, weights over 0..top−1
    let top = opts.max_order.map_or(m, |k| (k as i64 + 1).min(m));
    sandwich(&mut report, f2d, n, top);
    match s.metric() {
        Metric::Euclidean => {
            euclidean(&mut report, census, f2d, f3d, n, m, top)?;
            subset_conditions(&mut report, s, opts)?;
        }
        Metric::Linf => linf(&mut report, census, n, top)?,
    }
    Ok(report)
}

/// Computes the tables of `s` and verifies them.
pub fn verify_instance(s: &ColoredSiteSet, opts: VerifyOptions) -> Result<VerificationReport> {
    let t = census(s)?;
    verify_identities(s, &t, &facets_2d(s), &lifted_facets(s), opts)
}

fn sandwich(report: &mut VerificationReport, f2d: &FacetTable, n: i64, top: i64) {
    for k in 0..=top - 2 {
        let u = aggregate_u(f2d, k);
        report.push("facets-2d-lower", format!("k={k}"), u, Relation::Ge, (k + 1) * (k + 2));
        report.push("facets-2d-upper", format!("k={k}"), u, Relation::Le, (k + 1) * (2 * n - k - 2));
    }
}

fn euclidean(
    report: &mut VerificationReport,
    t: &CensusTable,
    f2d: &FacetTable,
    f3d: &FacetTable,
    n: i64,
    m: i64,
    top: i64,
) -> Result<()> {
    for k in 1..top {
        let ku = k as usize;
        let min = diagram_vertex_count(t, ku, Side::Min)?;
        let max = diagram_vertex_count(t, ku, Side::Max)?;
        let rhs = 4 * k * (n - k) - 2 * n - correction(k, |c, i| f3d.get(c, i));
        report.push("total", format!("k={k}"), min + max, Relation::Eq, rhs);

        let u = |j| aggregate_u(f2d, j);
        let rhs_min = 2 * k * (2 * n - k) - 2 * n - correction(k, |c, i| t.get(Side::Min, c, i)) - u(k - 1) - u(k - 2);
        report.push("per-side-min", format!("k={k}"), min, Relation::Eq, rhs_min);
        let rhs_max = u(k - 1) + u(k - 2) - 2 * k * k - correction(k, |c, i| t.get(Side::Max, c, i));
        report.push("per-side-max", format!("k={k}"), max, Relation::Eq, rhs_max);
    }
    for c in 1..=3usize {
        for j in 0..(top.min(m)) {
            let lhs = t.get(Side::Min, c, j) + t.get(Side::Max, c, j);
            report.push("vertex-facet", format!("c={c},j={j}"), lhs, Relation::Eq, f3d.get(c, j));
        }
    }
    for j in 0..=top - 2 {
        let (v, vbar, u) = (aggregate_v(t, Side::Min, j), aggregate_v(t, Side::Max, j), aggregate_u(f2d, j));
        report.push("uv-min", format!("j={j}"), v + u, Relation::Eq, (j + 1) * (2 * n - j - 2));
        report.push("uv-max", format!("j={j}"), vbar - u, Relation::Eq, -(j + 1) * (j + 2));
        let e = f3d.get(3, j) + (0..=j).map(|i| f3d.get(2, i) + (j - i + 1) * f3d.get(1, i)).sum::<i64>();
        report.push("facets-3d", format!("j={j}"), e, Relation::Eq, 2 * (j + 1) * (n - j - 2));
    }
    Ok(())
}

fn linf(report: &mut VerificationReport, t: &CensusTable, n: i64, top: i64) -> Result<()> {
    for k in 1..top {
        let min = diagram_vertex_count(t, k as usize, Side::Min)?;
        let max = diagram_vertex_count(t, k as usize, Side::Max)?;
        let global = 4 * k * (n - k) - 2 * n;
        report.push("linf-min", format!("k={k}"), min, Relation::Le, global.min(4 * (n - k) * (n - k)));
        report.push("linf-max", format!("k={k}"), max, Relation::Le, global.min(2 * k * k));
        report.push("linf-total", format!("k={k}"), min + max, Relation::Le, global);
    }
    Ok(())
}

/// Random site subsets `S'` with `|S'| ≥ 2`, sorted ids, reproducible from `seed`.
pub fn random_subsets(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(2..=n);
            let mut ids = sample(&mut rng, n, size).into_vec();
            ids.sort_unstable();
            ids
        })
        .collect()
}

/// Order-1 conditions on subsets: the nearest diagram has `2|S'| − 2 − u₀`
/// vertices and the farthest diagram has `ū₀ − 2`.
fn subset_conditions(report: &mut VerificationReport, s: &ColoredSiteSet, opts: VerifyOptions) -> Result<()> {
    for (i, ids) in random_subsets(s.n(), opts.subsets, opts.seed).into_iter().enumerate() {
        let sub = s.subset(&ids)?;
        let t = census(&sub)?;
        let f = facets_2d(&sub);
        let u0 = f.get(1, 0) + f.get(2, 0);
        let size = ids.len() as i64;
        let params = format!("subset={i},size={size}");
        report.push("V1", params.clone(), refined_vertex_count(&t, 1, Side::Min)?, Relation::Eq, 2 * size - 2 - u0);
        report.push("V2", params, refined_vertex_count(&t, 1, Side::Max)?, Relation::Eq, u0 - 2);
    }
    Ok(())
}

/// Census centers that are vertices of the coarse diagram of order `k`.
pub fn census_vertex_points(entries: &[CensusEntry], k: usize, side: Side) -> Vec<Point2> {
    let mut pts: Vec<Point2> = entries
        .iter()
        .filter(|e| e.side == side)
        .filter(|e| match e.chromaticity {
            3 => e.weight + 1 == k || e.weight + 2 == k,
            2 => e.weight + 1 == k,
            _ => false,
        })
        .map(|e| e.ball.center().clone())
        .collect();
    pts.sort();
    pts
}

/// Cross-checks built diagrams against the census and the point oracle:
/// exact vertex sets, refined and new-vertex counts, and sampled labels.
/// `samples_per_face = 0` skips the oracle.
pub fn verify_builder(
    s: &ColoredSiteSet,
    entries: &[CensusEntry],
    table: &CensusTable,
    sequences: &[&DiagramSequence],
    samples_per_face: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for seq in sequences {
        let side = seq.side;
        for o in &seq.orders {
            let k = o.order;
            let params = |extra: &str| format!("{side},k={k}{extra}");
            let expected = census_vertex_points(entries, k, side);
            let mut found: Vec<Point2> = o.coarse.interior_vertices().map(|(_, v)| v.point.clone()).collect();
            found.sort();
            let unmatched = symmetric_difference(&expected, &found);
            report.push("builder-points", params(""), unmatched as i64, Relation::Eq, 0);
            report.push(
                "builder-vertices",
                params(""),
                o.stats.vertices as i64,
                Relation::Eq,
                diagram_vertex_count(table, k, side)?,
            );
            report.push(
                "builder-refined",
                params(""),
                o.stats.refined_vertices as i64,
                Relation::Eq,
                refined_vertex_count(table, k, side)?,
            );
            for c in 1..=3 {
                let v = table.get(side, c, k as i64 - 1);
                report.push("builder-new", params(&format!(",c={c}")), o.stats.new_vertices[c] as i64, Relation::Eq, v);
            }
            if samples_per_face > 0 {
                for (name, d) in [("oracle-coarse", &o.coarse), ("oracle-refined", &o.refined)] {
                    let r = validate_diagram(d, s, k, side, samples_per_face);
                    report.push(
                        name,
                        params(&format!(",samples={}", r.samples)),
                        r.mismatches.len() as i64,
                        Relation::Eq,
                        0,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Size of the multiset symmetric difference of two sorted lists.
fn symmetric_difference(a: &[Point2], b: &[Point2]) -> usize {
    let (mut i, mut j, mut diff) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                diff += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                diff += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    diff + (a.len() - i) + (b.len() - j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn set(pts: &[(i64, i64, usize)]) -> ColoredSiteSet {
        ColoredSiteSet::new(pts.iter().map(|&(x, y, c)| (Point2::from_ints(x, y), c)).collect(), Metric::Euclidean)
            .unwrap()
    }

    #[test]
    fn triangle_records() {
        let s = set(&[(0, 0, 0), (4, 0, 1), (0, 3, 2)]);
        let r = verify_instance(&s, VerifyOptions::default()).unwrap();
        assert!(r.all_pass(), "{r}");
        let total: Vec<_> = r.by_identity("total").collect();
        assert_eq!((total[0].lhs, total[0].rhs), (2, 2));
        let ve = r.by_identity("vertex-facet").find(|x| x.params == "c=3,j=0").unwrap();
        assert_eq!((ve.lhs, ve.rhs), (2, 2));
    }

    #[test]
    fn mixed_set_passes() {
        let s = set(&[(0, 0, 0), (7, 1, 0), (3, 6, 1), (9, 8, 2), (2, -5, 2)]);
        let r = verify_instance(&s, VerifyOptions::default()).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.by_identity("total").count(), 2);
    }

    #[test]
    fn builder_agrees_on_mixed_set() {
        let s = set(&[(0, 0, 0), (7, 1, 0), (3, 6, 1), (9, 8, 2), (2, -5, 2)]);
        let entries = crate::census::census_entries(&s).unwrap();
        let table = CensusTable::from_entries(s.metric(), s.n(), s.m(), &entries);
        let (min, max) = crate::builder::build_sequences(&s, 3).unwrap();
        let r = verify_builder(&s, &entries, &table, &[&min, &max], 8).unwrap();
        assert!(r.all_pass(), "{r}");
        assert!(r.by_identity("oracle-refined").count() == 6);
    }

    #[test]
    fn symmetric_difference_counts_multiplicity() {
        let p = |x| Point2::from_ints(x, 0);
        assert_eq!(symmetric_difference(&[p(0), p(1), p(1)], &[p(1), p(2)]), 3);
    }

    #[test]
    fn relation_semantics() {
        assert!(Relation::Le.holds(1, 1) && !Relation::Le.holds(2, 1));
        assert!(Relation::Ge.holds(2, 1) && !Relation::Eq.holds(2, 1));
    }

    #[test]
    fn subsets_are_reproducible() {
        let a = random_subsets(10, 5, 3);
        assert_eq!(a, random_subsets(10, 5, 3));
        assert!(a.iter().all(|s| s.len() >= 2 && s.windows(2).all(|w| w[0] < w[1])));
    }
}

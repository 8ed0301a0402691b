use std::collections::HashSet;

use colorvd::generate::{random_sites, sphere_points, IntBox};
use colorvd::geometry::{incircle, lift, orient2d, Location};
use colorvd::verify::lifted_facets;
use colorvd::{
    aggregate_u, census, census_entries, diagram_vertex_count, euclid_unbounded_tables, facets_2d, facets_3d,
    refined_vertex_count, CensusTable, ColoredSiteSet, Error, Metric, Point2, Rational, Side,
};
use proptest::prelude::*;

fn set(pts: &[(i64, i64, usize)], metric: Metric) -> ColoredSiteSet {
    ColoredSiteSet::new(pts.iter().map(|&(x, y, c)| (Point2::from_ints(x, y), c)).collect(), metric).unwrap()
}

fn t3() -> ColoredSiteSet {
    set(&[(0, 0, 0), (4, 0, 1), (0, 3, 2)], Metric::Euclidean)
}

fn p4() -> ColoredSiteSet {
    set(&[(0, 0, 0), (10, 0, 1), (11, 9, 2), (1, 10, 3)], Metric::Euclidean)
}

fn m5() -> ColoredSiteSet {
    set(&[(0, 0, 0), (7, 1, 0), (3, 6, 1), (9, 8, 2), (2, -5, 2)], Metric::Euclidean)
}

/// Census by the in-circle predicate alone: no circle is ever constructed.
fn incircle_census(s: &ColoredSiteSet) -> CensusTable {
    let mut t = CensusTable::zeros(Metric::Euclidean, s.n(), s.m());
    for a in 0..s.n() {
        for b in a + 1..s.n() {
            for c in b + 1..s.n() {
                let orient = orient2d(s.pos(a), s.pos(b), s.pos(c));
                let defining: HashSet<usize> = [a, b, c].iter().map(|&x| s.color(x)).collect();
                let (mut inside, mut outside) = (HashSet::new(), HashSet::new());
                for w in (0..s.n()).filter(|w| ![a, b, c].contains(w)) {
                    match incircle(s.pos(a), s.pos(b), s.pos(c), s.pos(w)) * orient {
                        1 => inside.insert(s.color(w)),
                        -1 => outside.insert(s.color(w)),
                        _ => panic!("cocircular input"),
                    };
                }
                let chroma = defining.len();
                if inside.is_disjoint(&defining) {
                    t.v[chroma][inside.len()] += 1;
                }
                if outside.is_disjoint(&defining) {
                    t.vbar[chroma][outside.len()] += 1;
                }
            }
        }
    }
    t
}

/// Oriented pairs by brute force over colors, without the library's tally.
fn brute_facets_2d(s: &ColoredSiteSet) -> Vec<Vec<i64>> {
    let mut e = vec![vec![0i64; s.m()]; 3];
    for a in 0..s.n() {
        for b in 0..s.n() {
            if a == b {
                continue;
            }
            let defining: HashSet<usize> = [s.color(a), s.color(b)].into();
            let left: HashSet<usize> =
                (0..s.n()).filter(|&w| orient2d(s.pos(a), s.pos(b), s.pos(w)) > 0).map(|w| s.color(w)).collect();
            if left.is_disjoint(&defining) {
                e[defining.len()][left.len()] += 1;
            }
        }
    }
    e
}

#[test]
fn triangle_tables() {
    let s = t3();
    let t = census(&s).unwrap();
    assert_eq!(t.v[3], vec![1, 0, 0]);
    assert_eq!(t.vbar[3], vec![1, 0, 0]);
    assert!(t.v[1].iter().chain(&t.v[2]).chain(&t.vbar[1]).chain(&t.vbar[2]).all(|&x| x == 0));
    assert_eq!(diagram_vertex_count(&t, 1, Side::Min).unwrap(), 1);
    assert_eq!(diagram_vertex_count(&t, 3, Side::Min).unwrap(), 0);
    assert_eq!(refined_vertex_count(&t, 1, Side::Min).unwrap(), 1);
    assert_eq!(refined_vertex_count(&t, 2, Side::Min).unwrap(), 1);
    assert!(matches!(diagram_vertex_count(&t, 4, Side::Min), Err(Error::InvalidOrder { .. })));

    let f = facets_2d(&s);
    assert_eq!(f.counts[2], vec![3, 3, 0]);
    assert_eq!(aggregate_u(&f, 0), 3);
    assert_eq!(aggregate_u(&f, 1), 6);
    let (u, ubar) = euclid_unbounded_tables(&s).unwrap();
    assert_eq!((u.get(2, 0), ubar.get(2, 0)), (3, 3));
    let f3 = lifted_facets(&s);
    assert_eq!(f3.counts[3], vec![2, 0, 0]);
    assert_eq!(f3.total(), 2);
}

#[test]
fn single_color_triangle_counts_voronoi_vertices() {
    let s = set(&[(0, 0, 0), (4, 0, 0), (0, 3, 0)], Metric::Euclidean);
    let t = census(&s).unwrap();
    assert_eq!((t.v[1][0], t.vbar[1][0]), (1, 1));
    assert!(t.v[2].iter().chain(&t.v[3]).all(|&x| x == 0));
    assert_eq!(facets_2d(&s).counts[1], vec![3]);
}

#[test]
fn four_point_tables_match_the_incircle_oracle() {
    let s = p4();
    let t = census(&s).unwrap();
    assert_eq!(t, incircle_census(&s));
    let totals: Vec<i64> = (1..=3)
        .map(|k| diagram_vertex_count(&t, k, Side::Min).unwrap() + diagram_vertex_count(&t, k, Side::Max).unwrap())
        .collect();
    assert_eq!(totals, vec![4, 8, 4]);
    // convex position in space: e[3][j] = 2(j+1)(n−j−2)
    assert_eq!(lifted_facets(&s).counts[3], vec![4, 4, 0, 0]);
}

#[test]
fn mixed_set_tables_match_the_oracles() {
    let s = m5();
    assert_eq!(census(&s).unwrap(), incircle_census(&s));
    assert_eq!(facets_2d(&s).counts, brute_facets_2d(&s));
    let f3 = lifted_facets(&s);
    assert!(f3.counts[2].iter().chain(&f3.counts[1]).any(|&x| x != 0));
}

#[test]
fn top_weight_cells_are_empty() {
    for seed in 0..5 {
        let s = random_sites(12, 4, Metric::Euclidean, seed, IntBox::square(50)).unwrap();
        let t = census(&s).unwrap();
        let m = s.m();
        for side in Side::BOTH {
            let rows = t.side(side);
            assert_eq!((rows[3][m - 1], rows[3][m - 2], rows[2][m - 1]), (0, 0, 0));
        }
    }
}

#[test]
fn entries_audit_themselves() {
    let s = random_sites(14, 5, Metric::Euclidean, 11, IntBox::square(40)).unwrap();
    let entries = census_entries(&s).unwrap();
    for e in &entries {
        let defining: HashSet<usize> = e.triple.iter().map(|&x| s.color(x)).collect();
        assert_eq!(defining.len(), e.chromaticity);
        let mut conflict = HashSet::new();
        for site in s.sites() {
            let loc = e.ball.classify(&site.position);
            if e.triple.contains(&site.id) {
                assert_eq!(loc, Location::OnBoundary);
                continue;
            }
            assert_ne!(loc, Location::OnBoundary);
            let hit = match e.side {
                Side::Min => loc == Location::Inside,
                Side::Max => loc == Location::Outside,
            };
            if hit {
                assert!(!defining.contains(&site.color));
                conflict.insert(site.color);
            }
        }
        assert_eq!(conflict.len(), e.weight);
    }
}

#[test]
fn degenerate_input_is_rejected() {
    let s = set(&[(1, 0, 0), (0, 1, 1), (-1, 0, 2), (0, -1, 0)], Metric::Euclidean);
    assert!(matches!(census(&s), Err(Error::GeneralPositionViolation(_))));
}

#[test]
fn sphere_sets_satisfy_the_spatial_identity() {
    for seed in 0..4 {
        let pts = sphere_points(9, 4, seed).unwrap();
        let f = facets_3d(&pts, 4);
        let n = pts.len() as i64;
        for j in 0..=2i64 {
            let e = f.get(3, j) + (0..=j).map(|i| f.get(2, i) + (j - i + 1) * f.get(1, i)).sum::<i64>();
            assert_eq!(e, 2 * (j + 1) * (n - j - 2), "seed {seed}, j {j}");
        }
    }
}

#[test]
fn linf_census_counts_each_square() {
    let s = set(&[(0, 0, 0), (4, 1, 1), (2, 3, 2)], Metric::Linf);
    let entries = census_entries(&s).unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| matches!(e.ball, colorvd::geometry::Ball::Square(_))));
    let t = census(&s).unwrap();
    assert_eq!(t.v[3][0] as usize, entries.iter().filter(|e| e.side == Side::Min).count());
}

fn scaled(s: &ColoredSiteSet, f: impl Fn(&Point2) -> Point2) -> ColoredSiteSet {
    ColoredSiteSet::new(s.sites().iter().map(|x| (f(&x.position), x.color)).collect(), s.metric()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distinct_colors_give_every_orientation(seed in 0u64..1000, n in 3usize..10) {
        let s = random_sites(n, n, Metric::Euclidean, seed, IntBox::square(100)).unwrap();
        let f = facets_2d(&s);
        prop_assert_eq!(f.total(), (n * (n - 1)) as i64);
        prop_assert!(f.counts[1].iter().all(|&x| x == 0));
    }

    #[test]
    fn facets_ignore_similarities(seed in 0u64..1000, dx in -50i64..50, dy in -50i64..50, k in 1i64..7) {
        let s = random_sites(9, 4, Metric::Euclidean, seed, IntBox::square(60)).unwrap();
        let base = facets_2d(&s);
        let k = Rational::from_int(k);
        let moved = scaled(&s, |p| Point2::new(&(&p.x * &k) + &Rational::from_int(dx), &(&p.y * &k) + &Rational::from_int(dy)));
        prop_assert_eq!(&facets_2d(&moved).counts, &base.counts);
        let mirrored = scaled(&s, |p| Point2::new(-&p.x, -&p.y));
        prop_assert_eq!(&facets_2d(&mirrored).counts, &base.counts);
    }

    #[test]
    fn census_ignores_order_and_labels(seed in 0u64..1000, rot in 0usize..9, shift in 0usize..4) {
        let s = random_sites(9, 4, Metric::Euclidean, seed, IntBox::square(60)).unwrap();
        let mut pts = s.points();
        pts.rotate_left(rot);
        for p in &mut pts {
            p.1 = (p.1 + shift) % 4;
        }
        let t = ColoredSiteSet::new(pts, Metric::Euclidean).unwrap();
        prop_assert_eq!(census(&s).unwrap(), census(&t).unwrap());
        prop_assert_eq!(facets_2d(&s).counts, facets_2d(&t).counts);
    }

    #[test]
    fn census_matches_the_incircle_oracle(seed in 0u64..1000, n in 4usize..12, m in 1usize..5) {
        prop_assume!(m <= n);
        let s = random_sites(n, m, Metric::Euclidean, seed, IntBox::square(40)).unwrap();
        prop_assert_eq!(census(&s).unwrap(), incircle_census(&s));
        prop_assert_eq!(facets_2d(&s).counts, brute_facets_2d(&s));
    }

    #[test]
    fn planar_sandwich_holds(seed in 0u64..1000, n in 4usize..14, m in 2usize..6) {
        prop_assume!(m <= n);
        let s = random_sites(n, m, Metric::Euclidean, seed, IntBox::square(80)).unwrap();
        let f = facets_2d(&s);
        let n = n as i64;
        for k in 0..=(m as i64 - 2) {
            let u = aggregate_u(&f, k);
            prop_assert!((k + 1) * (k + 2) <= u && u <= (k + 1) * (2 * n - k - 2));
        }
    }

    #[test]
    fn lifted_sets_satisfy_the_spatial_identity(seed in 0u64..1000, n in 4usize..12, m in 2usize..6) {
        prop_assume!(m <= n);
        let s = random_sites(n, m, Metric::Euclidean, seed, IntBox::square(80)).unwrap();
        let lifted: Vec<_> = s.sites().iter().map(|x| (lift(&x.position), x.color)).collect();
        let f = facets_3d(&lifted, m);
        let n = n as i64;
        for j in 0..=(m as i64 - 2) {
            let e = f.get(3, j) + (0..=j).map(|i| f.get(2, i) + (j - i + 1) * f.get(1, i)).sum::<i64>();
            prop_assert_eq!(e, 2 * (j + 1) * (n - j - 2));
        }
    }
}

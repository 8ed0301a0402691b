use std::collections::{BTreeSet, HashSet};

use colorvd::builder::{
    advance_maximal, advance_minimal, boundary_sites, box_diagram, build_sequences, choose_clip_box, coarsen,
    farthest_voronoi_clipped, nearest_voronoi_clipped, FaceLabel, PlanarSubdivision,
};
use colorvd::generate::{random_sites, IntBox};
use colorvd::oracle::validate_diagram;
use colorvd::verify::census_vertex_points;
use colorvd::{
    census, census_entries, diagram_vertex_count, refined_vertex_count, ColoredSiteSet, Metric, Point2, Rational, Side,
};

fn set(pts: &[(i64, i64, usize)]) -> ColoredSiteSet {
    ColoredSiteSet::new(pts.iter().map(|&(x, y, c)| (Point2::from_ints(x, y), c)).collect(), Metric::Euclidean).unwrap()
}

fn t3() -> ColoredSiteSet {
    set(&[(0, 0, 0), (4, 0, 1), (0, 3, 2)])
}

fn m5() -> ColoredSiteSet {
    set(&[(0, 0, 0), (7, 1, 0), (3, 6, 1), (9, 8, 2), (2, -5, 2)])
}

fn p4() -> ColoredSiteSet {
    set(&[(0, 0, 0), (10, 0, 1), (11, 9, 2), (1, 10, 3)])
}

fn box_hits(d: &PlanarSubdivision) -> usize {
    d.vertices.iter().filter(|v| v.on_box).count() - 4
}

fn one_chromatic_edges(d: &PlanarSubdivision) -> usize {
    d.half_edges.iter().filter(|h| h.chromaticity == 1).count() / 2
}

fn pairs(d: &PlanarSubdivision, keep: impl Fn(&colorvd::builder::HalfEdge) -> bool) -> BTreeSet<(usize, usize)> {
    d.half_edges.iter().filter(|h| keep(h)).filter_map(|h| h.pair).collect()
}

#[test]
fn clip_box_contains_every_census_ball() {
    for s in [t3(), m5(), p4()] {
        let b = choose_clip_box(&s);
        for e in census_entries(&s).unwrap() {
            let colorvd::geometry::Ball::Circle(c) = &e.ball else { unreachable!() };
            assert!(b.strictly_contains(&c.center));
            let gap = [&c.center.x - &b.min.x, &b.max.x - &c.center.x, &c.center.y - &b.min.y, &b.max.y - &c.center.y];
            for g in gap {
                assert!(&g * &g > c.radius_squared);
            }
        }
    }
    let single = set(&[(0, 0, 0), (3, 1, 0)]);
    let b = choose_clip_box(&single);
    assert!(b.strictly_contains(single.pos(0)) && b.strictly_contains(single.pos(1)));
}

#[test]
fn nearest_and_farthest_diagrams_of_small_sets() {
    let s = t3();
    let bx = choose_clip_box(&s);
    let center = Point2::new(Rational::from_int(2), Rational::new(3, 2));
    for d in
        [nearest_voronoi_clipped(&s, &[0, 1, 2], &bx).unwrap(), farthest_voronoi_clipped(&s, &[0, 1, 2], &bx).unwrap()]
    {
        assert_eq!(d.faces.len(), 3);
        let inner: Vec<_> = d.interior_vertices().map(|(_, v)| v.point.clone()).collect();
        assert_eq!(inner, vec![center.clone()]);
        assert_eq!(box_hits(&d), 3);
        d.check_invariants().unwrap();
    }

    let one = nearest_voronoi_clipped(&s, &[1], &bx).unwrap();
    assert_eq!((one.faces.len(), one.interior_edge_count()), (1, 0));

    let near = nearest_voronoi_clipped(&s, &[0, 1], &bx).unwrap();
    let far = farthest_voronoi_clipped(&s, &[0, 1], &bx).unwrap();
    assert_eq!((near.faces.len(), near.interior_edge_count()), (2, 1));
    assert_eq!((far.faces.len(), far.interior_edge_count()), (2, 1));
    // the face containing site 0 belongs to 0 in the nearest diagram and to 1 in the farthest
    let owner = |d: &PlanarSubdivision| {
        (0..d.faces.len()).find(|&f| d.face_contains(f, s.pos(0))).map(|f| d.faces[f].label.associated_site)
    };
    assert_eq!(owner(&near), Some(Some(0)));
    assert_eq!(owner(&far), Some(Some(1)));
}

#[test]
fn interior_point_owns_no_farthest_region() {
    let s = set(&[(0, 0, 0), (10, 1, 1), (4, 9, 2), (5, 3, 3)]);
    let bx = choose_clip_box(&s);
    let d = farthest_voronoi_clipped(&s, &[0, 1, 2, 3], &bx).unwrap();
    assert_eq!(d.faces.len(), 3);
    assert!(d.faces.iter().all(|f| f.label.associated_site != Some(3)));
}

#[test]
fn coarsening_drops_one_chromatic_edges() {
    let s = random_sites(9, 4, Metric::Euclidean, 5, IntBox::square(50)).unwrap();
    let bx = choose_clip_box(&s);
    let all: Vec<usize> = (0..9).collect();
    let refined = nearest_voronoi_clipped(&s, &all, &bx).unwrap();
    let ones = one_chromatic_edges(&refined);
    assert!(ones > 0);
    let coarse = coarsen(&refined).unwrap();
    assert_eq!(coarse.interior_edge_count(), refined.interior_edge_count() - ones);
    assert_eq!(one_chromatic_edges(&coarse), 0);
    coarse.check_invariants().unwrap();

    let distinct = random_sites(8, 8, Metric::Euclidean, 5, IntBox::square(50)).unwrap();
    let bx = choose_clip_box(&distinct);
    let refined = nearest_voronoi_clipped(&distinct, &(0..8).collect::<Vec<_>>(), &bx).unwrap();
    let coarse = coarsen(&refined).unwrap();
    assert_eq!(
        (coarse.faces.len(), coarse.interior_edge_count(), coarse.interior_vertex_count()),
        (refined.faces.len(), refined.interior_edge_count(), refined.interior_vertex_count())
    );
}

#[test]
fn boundary_sites_of_triangle_faces() {
    let s = t3();
    let bx = choose_clip_box(&s);
    let base = box_diagram(&bx, FaceLabel { colors: vec![], associated_site: None });
    let first = advance_minimal(&s, &base, 0).unwrap();
    let f0 = (0..first.coarse.faces.len()).find(|&f| first.coarse.faces[f].label.colors == vec![0]).unwrap();
    assert_eq!(boundary_sites(&first.coarse, f0, &s).unwrap(), vec![1, 2]);
    for f in 0..first.coarse.faces.len() {
        let edges = first.coarse.face_half_edges(f).iter().filter(|&&e| !first.coarse.half_edges[e].is_box()).count();
        assert!(boundary_sites(&first.coarse, f, &s).unwrap().len() <= edges);
    }
    assert!(boundary_sites(&base, 0, &s).unwrap().is_empty());
}

#[test]
fn triangle_sequences() {
    let s = t3();
    let (min, max) = build_sequences(&s, 3).unwrap();
    let counts = |q: &colorvd::DiagramSequence| q.orders.iter().map(|o| o.stats.vertices).collect::<Vec<_>>();
    assert_eq!(counts(&min), vec![1, 1, 0]);
    assert_eq!(counts(&max), vec![1, 1, 0]);
    for q in [&min, &max] {
        let top = &q.order(3).coarse;
        assert_eq!(top.faces.len(), 1);
        assert_eq!(top.faces[0].label.colors, vec![0, 1, 2]);
    }
    assert_eq!(min.order(2).stats.vertices + max.order(2).stats.vertices, 2);
}

#[test]
fn step_functions_compose() {
    let s = m5();
    let bx = choose_clip_box(&s);
    let t = census(&s).unwrap();
    let base = box_diagram(&bx, FaceLabel { colors: vec![], associated_site: None });
    let mut min = vec![advance_minimal(&s, &base, 0).unwrap()];
    for i in 1..3 {
        let next = advance_minimal(&s, &min[i - 1].coarse, i).unwrap();
        min.push(next);
    }
    let mut max = vec![advance_maximal(&s, &base, &min[0].refined, 0).unwrap()];
    for i in 1..3 {
        let next = advance_maximal(&s, &max[i - 1].coarse, &min[i].refined, i).unwrap();
        max.push(next);
    }
    for k in 1..=3 {
        for (side, o) in [(Side::Min, &min[k - 1]), (Side::Max, &max[k - 1])] {
            o.refined.check_invariants().unwrap();
            o.coarse.check_invariants().unwrap();
            assert_eq!(o.stats.refined_vertices as i64, refined_vertex_count(&t, k, side).unwrap());
            assert_eq!(o.stats.vertices as i64, diagram_vertex_count(&t, k, side).unwrap());
        }
    }
}

#[test]
fn new_vertices_follow_the_census_when_colors_are_distinct() {
    let s = random_sites(8, 8, Metric::Euclidean, 21, IntBox::square(60)).unwrap();
    let t = census(&s).unwrap();
    let (min, max) = build_sequences(&s, 7).unwrap();
    for k in 1..=7 {
        assert_eq!(min.order(k).stats.new_vertices[3] as i64, t.v[3][k - 1]);
        assert_eq!(max.order(k).stats.new_vertices[3] as i64, t.vbar[3][k - 1]);
    }
}

#[test]
fn distinct_colors_reach_the_closed_form() {
    let s = random_sites(12, 12, Metric::Euclidean, 4, IntBox::square(200)).unwrap();
    let (min, max) = build_sequences(&s, 11).unwrap();
    for k in 1..=11 {
        let total = (min.order(k).stats.vertices + max.order(k).stats.vertices) as i64;
        assert_eq!(total, 4 * k as i64 * (12 - k as i64) - 24, "k = {k}");
    }
}

#[test]
fn extra_sites_appear_in_some_unbounded_maximal_face() {
    // seed found by scanning n = 9, m = 4 instances
    let s = random_sites(9, 4, Metric::Euclidean, 0, IntBox::square(100)).unwrap();
    let (_, max) = build_sequences(&s, 4).unwrap();
    let exceeding = max
        .orders
        .iter()
        .flat_map(|o| &o.face_sites)
        .filter(|f| f.extra.iter().any(|x| !f.boundary.contains(x)))
        .count();
    assert!(exceeding > 0);
    for o in &max.orders[1..] {
        let prev = &max.order(o.order - 1).coarse;
        for fs in &o.face_sites {
            let bounded = prev.face_half_edges(fs.face).iter().all(|&e| !prev.half_edges[e].is_box());
            if bounded {
                assert!(fs.extra.is_empty());
            }
        }
    }
}

#[test]
fn builder_matches_census_points_and_oracle() {
    for seed in 0..4 {
        let s = random_sites(10, 4, Metric::Euclidean, seed, IntBox::square(80)).unwrap();
        let entries = census_entries(&s).unwrap();
        let (min, max) = build_sequences(&s, 4).unwrap();
        for q in [&min, &max] {
            for o in &q.orders {
                let mut built: Vec<Point2> = o.coarse.interior_vertices().map(|(_, v)| v.point.clone()).collect();
                built.sort();
                assert_eq!(built, census_vertex_points(&entries, o.order, q.side));
                for d in [&o.coarse, &o.refined] {
                    let r = validate_diagram(d, &s, o.order, q.side, 8);
                    assert!(r.is_ok(), "seed {seed} {} k={}: {:?}", q.side, o.order, r.mismatches.first());
                    assert!(r.samples >= 8 * d.faces.len());
                    for (_, v) in d.interior_vertices() {
                        assert!(d.clip_box.strictly_contains(&v.point));
                    }
                }
            }
        }
    }
}

#[test]
fn coarse_edges_are_new_then_old() {
    let s = random_sites(11, 5, Metric::Euclidean, 8, IntBox::square(80)).unwrap();
    let (min, max) = build_sequences(&s, 5).unwrap();
    for q in [&min, &max] {
        for k in 1..5 {
            let coarse = pairs(&q.order(k).coarse, |h| !h.is_box());
            let fresh = pairs(&q.order(k).refined, |h| h.chromaticity == 2 && h.is_new);
            let old_next = pairs(&q.order(k + 1).refined, |h| !h.is_box() && !h.is_new);
            assert_eq!(coarse, fresh, "{} k={k}", q.side);
            assert_eq!(coarse, old_next, "{} k={k}", q.side);
        }
    }
}

#[test]
fn corrupted_labels_are_caught() {
    let s = p4();
    let (min, _) = build_sequences(&s, 3).unwrap();
    for k in 1..=3 {
        assert!(validate_diagram(&min.order(k).refined, &s, k, Side::Min, 8).is_ok());
    }
    let mut d = min.order(2).coarse.clone();
    let (a, b) = (d.faces[0].label.clone(), d.faces[1].label.clone());
    assert_ne!(a, b);
    d.faces[0].label = b;
    d.faces[1].label = a;
    assert!(!validate_diagram(&d, &s, 2, Side::Min, 8).is_ok());
}

#[test]
fn each_vertex_is_equidistant_from_its_sites() {
    let s = m5();
    let (min, max) = build_sequences(&s, 3).unwrap();
    for q in [&min, &max] {
        for o in &q.orders {
            for (_, v) in o.refined.interior_vertices() {
                assert!(v.sites.len() >= 3);
                let d: HashSet<Rational> = v.sites.iter().map(|&x| s.pos(x).dist2(&v.point)).collect();
                assert_eq!(d.len(), 1);
            }
        }
    }
}

#[test]
fn linf_sets_are_rejected() {
    let s = t3().with_metric(Metric::Linf);
    assert!(build_sequences(&s, 1).is_err());
}

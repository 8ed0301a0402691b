//! Iterative construction of the minimal and maximal diagram sequences.
//!
//! Order `i + 1` is obtained face by face from the coarse diagram of order
//! `i`: inside a face `f` the refined diagram is the nearest (or farthest)
//! site diagram of the sites bordering `f`, intersected with `f`. Coarsening
//! then drops every edge whose two sides carry the same color set.

pub mod dcel;
pub mod schema;
mod voronoi;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::census::Side;
use crate::error::{Error, Result};
use crate::geometry::{circumcircle, orient2d, Line, Point2};
use crate::rational::Rational;
use crate::sites::{check_general_position, ColoredSiteSet, Metric};

pub use dcel::{box_diagram, Face, FaceLabel, HalfEdge, PlanarSubdivision, Rect, Segment, Vertex, EXTERIOR};

use dcel::crossing_parity;
use voronoi::{cell, Tag};

/// A box around every site and every circle through three sites, widened
/// by the largest such radius. All diagram vertices of every order lie
/// strictly inside.
pub fn choose_clip_box(s: &ColoredSiteSet) -> Rect {
    let mut lo = s.pos(0).clone();
    let mut hi = s.pos(0).clone();
    let widen = |p: &Point2, lo: &mut Point2, hi: &mut Point2| {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    };
    for site in s.sites() {
        widen(&site.position, &mut lo, &mut hi);
    }
    let mut r2 = Rational::zero();
    let n = s.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if orient2d(s.pos(a), s.pos(b), s.pos(c)) == 0 {
                    continue;
                }
                let circle = circumcircle(s.pos(a), s.pos(b), s.pos(c)).expect("non-collinear");
                widen(&circle.center, &mut lo, &mut hi);
                if circle.radius_squared > r2 {
                    r2 = circle.radius_squared;
                }
            }
        }
    }
    let bound = r2.ceil();
    let mut root = bound.sqrt();
    if &root * &root < bound {
        root += 1;
    }
    let margin = Rational::from(root) + Rational::one();
    Rect {
        min: Point2::new(Rational::from(lo.x.floor()) - &margin, Rational::from(lo.y.floor()) - &margin),
        max: Point2::new(Rational::from(hi.x.ceil()) + &margin, Rational::from(hi.y.ceil()) + &margin),
    }
}

fn empty_label() -> FaceLabel {
    FaceLabel { colors: vec![], associated_site: None }
}

/// Nearest-site Voronoi diagram of `ids`, clipped to the box.
pub fn nearest_voronoi_clipped(s: &ColoredSiteSet, ids: &[usize], bx: &Rect) -> Result<PlanarSubdivision> {
    refine(s, &box_diagram(bx, empty_label()), Side::Min, &[ids.to_vec()])
}

/// Farthest-site Voronoi diagram of `ids`, clipped to the box.
pub fn farthest_voronoi_clipped(s: &ColoredSiteSet, ids: &[usize], bx: &Rect) -> Result<PlanarSubdivision> {
    refine(s, &box_diagram(bx, empty_label()), Side::Max, &[ids.to_vec()])
}

fn chromaticity(s: &ColoredSiteSet, p: usize, q: usize) -> u8 {
    if s.color(p) == s.color(q) {
        1
    } else {
        2
    }
}

/// The site of `sites` nearest to (Min) or farthest from (Max) `x`.
fn pick(s: &ColoredSiteSet, sites: &[usize], x: &Point2, side: Side) -> usize {
    let mut best = sites[0];
    for &t in &sites[1..] {
        let sgn = Line::bisector(s.pos(best), s.pos(t)).side(x);
        let better = match side {
            Side::Min => sgn > 0,
            Side::Max => sgn < 0,
        };
        if better {
            best = t;
        }
    }
    best
}

struct Labels<'a> {
    s: &'a ColoredSiteSet,
    coarse: &'a PlanarSubdivision,
    table: Vec<FaceLabel>,
    index: HashMap<(usize, usize), u32>,
}

impl Labels<'_> {
    fn get(&mut self, face: usize, site: usize) -> u32 {
        if let Some(&i) = self.index.get(&(face, site)) {
            return i;
        }
        let mut colors = self.coarse.faces[face].label.colors.clone();
        let c = self.s.color(site);
        if let Err(pos) = colors.binary_search(&c) {
            colors.insert(pos, c);
        }
        self.table.push(FaceLabel { colors, associated_site: Some(site) });
        let i = (self.table.len() - 1) as u32;
        self.index.insert((face, site), i);
        i
    }
}

fn bounding(points: impl Iterator<Item = Point2>) -> (Point2, Point2) {
    let mut it = points;
    let first = it.next().expect("non-empty");
    let (mut lo, mut hi) = (first.clone(), first);
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y;
        }
    }
    (lo, hi)
}

fn along(line: &Line, p: &Point2) -> Rational {
    &p.y * &line.a - &p.x * &line.b
}

fn within(p: &Point2, a: &Point2, b: &Point2) -> bool {
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

/// Refines every face `f` of `coarse` by the nearest (Min) or farthest
/// (Max) site diagram of `face_sites[f]`.
fn refine(
    s: &ColoredSiteSet,
    coarse: &PlanarSubdivision,
    side: Side,
    face_sites: &[Vec<usize>],
) -> Result<PlanarSubdivision> {
    let bx = &coarse.clip_box;
    let mut labels = Labels { s, coarse, table: Vec::new(), index: HashMap::new() };
    let mut segments: Vec<Segment> = Vec::new();
    let mut splits: HashMap<usize, Vec<Point2>> = HashMap::new();

    for (f, sites) in face_sites.iter().enumerate() {
        if sites.is_empty() {
            return Err(Error::GeometryMismatch(format!("face {f} has no bordering sites")));
        }
        if sites.len() == 1 {
            continue;
        }
        let hs = coarse.face_half_edges(f);
        let (flo, fhi) = bounding(hs.iter().map(|&e| coarse.point(coarse.half_edges[e].origin).clone()));
        for &site in sites {
            let others: Vec<usize> = sites.iter().copied().filter(|&t| t != site).collect();
            let poly = cell(s, site, &others, side, bx);
            for i in 0..poly.len() {
                let Tag::Site(t) = poly[i].tag else { continue };
                if t < site {
                    continue;
                }
                let a = &poly[i].start;
                let b = &poly[(i + 1) % poly.len()].start;
                let (slo, shi) = bounding([a.clone(), b.clone()].into_iter());
                if shi.x < flo.x || slo.x > fhi.x || shi.y < flo.y || slo.y > fhi.y {
                    continue;
                }
                let line = &poly[i].line;
                let mut pts = vec![a.clone(), b.clone()];
                for &e in &hs {
                    let h = &coarse.half_edges[e];
                    let Some(x) = line.intersect(&h.line) else { continue };
                    if !within(&x, a, b) {
                        continue;
                    }
                    let (o, d) = (coarse.point(h.origin), coarse.point(coarse.dest(e)));
                    if !within(&x, o, d) {
                        continue;
                    }
                    if &x != o && &x != d {
                        splits.entry(e.min(h.twin)).or_default().push(x.clone());
                    }
                    pts.push(x);
                }
                pts.sort_by_cached_key(|p| along(line, p));
                pts.dedup();
                let (left, right) = (labels.get(f, site), labels.get(f, t));
                for w in pts.windows(2) {
                    let mid = w[0].midpoint(&w[1]);
                    if !crossing_parity(coarse, &hs, &mid) {
                        continue;
                    }
                    segments.push(Segment {
                        a: w[0].clone(),
                        b: w[1].clone(),
                        line: line.clone(),
                        pair: Some((site, t)),
                        chromaticity: chromaticity(s, site, t),
                        is_new: true,
                        left,
                        right,
                    });
                }
            }
        }
    }

    // the coarse edges survive as old edges, cut where new edges meet them
    for (e, h) in coarse.half_edges.iter().enumerate() {
        if e > h.twin {
            continue;
        }
        let mut pts = vec![coarse.point(h.origin).clone(), coarse.point(coarse.dest(e)).clone()];
        if let Some(extra) = splits.remove(&e) {
            pts.extend(extra);
        }
        pts.sort_by_cached_key(|p| along(&h.line, p));
        pts.dedup();
        let twin_face = coarse.half_edges[h.twin].face;
        for w in pts.windows(2) {
            let mid = w[0].midpoint(&w[1]);
            let mut side_label = |face: Option<usize>| match face {
                None => EXTERIOR,
                Some(f) => {
                    let site = pick(s, &face_sites[f], &mid, side);
                    labels.get(f, site)
                }
            };
            let left = side_label(h.face);
            let right = side_label(twin_face);
            segments.push(Segment {
                a: w[0].clone(),
                b: w[1].clone(),
                line: h.line.clone(),
                pair: h.pair,
                chromaticity: h.chromaticity,
                is_new: false,
                left,
                right,
            });
        }
    }
    let table = labels.table;
    PlanarSubdivision::from_segments(segments, &table, bx.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Support {
    Pair(usize, usize),
    BoxSide(u8),
}

fn support(d: &PlanarSubdivision, e: usize) -> Support {
    let h = &d.half_edges[e];
    if let Some((p, q)) = h.pair {
        return Support::Pair(p, q);
    }
    let (a, b) = (d.point(h.origin), d.point(d.dest(e)));
    let bx = &d.clip_box;
    let side = if a.y == b.y && a.y == bx.min.y {
        0
    } else if a.x == b.x && a.x == bx.max.x {
        1
    } else if a.y == b.y && a.y == bx.max.y {
        2
    } else {
        3
    };
    Support::BoxSide(side)
}

/// Removes every edge whose two sides carry equal color sets and merges
/// the pieces left collinear. Only 1-chromatic edges and old edges may
/// disappear; any other equal-label edge, or a surviving 1-chromatic or old
/// edge, is reported as inconsistent.
pub fn coarsen(refined: &PlanarSubdivision) -> Result<PlanarSubdivision> {
    let colors_of = |face: Option<usize>| face.map(|f| &refined.faces[f].label.colors);
    let mut kept: Vec<usize> = Vec::new();
    for (e, h) in refined.half_edges.iter().enumerate() {
        if e > h.twin {
            continue;
        }
        if h.is_box() {
            kept.push(e);
            continue;
        }
        let (l, r) = (colors_of(h.face), colors_of(refined.half_edges[h.twin].face));
        let removable = h.chromaticity == 1 || !h.is_new;
        if l == r {
            if !removable {
                return Err(Error::InconsistentLabels(format!(
                    "new 2-chromatic edge of pair {:?} has equal labels {:?} on both sides",
                    h.pair, l
                )));
            }
            continue;
        }
        if removable {
            return Err(Error::InconsistentLabels(format!("edge of pair {:?} separates {:?} from {:?}", h.pair, l, r)));
        }
        kept.push(e);
    }

    // merge collinear pieces of one support through degree-2 vertices
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); refined.vertices.len()];
    for (k, &e) in kept.iter().enumerate() {
        incident[refined.half_edges[e].origin].push(k);
        incident[refined.dest(e)].push(k);
    }
    let mut parent: Vec<usize> = (0..kept.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for inc in &incident {
        if let [k1, k2] = inc[..] {
            if support(refined, kept[k1]) == support(refined, kept[k2]) {
                let (a, b) = (find(&mut parent, k1), find(&mut parent, k2));
                parent[a] = b;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..kept.len() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }

    let mut table: Vec<FaceLabel> = Vec::new();
    let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut label = |face: Option<usize>| -> u32 {
        match face {
            None => EXTERIOR,
            Some(f) => {
                let colors = refined.faces[f].label.colors.clone();
                *index.entry(colors.clone()).or_insert_with(|| {
                    table.push(FaceLabel { colors, associated_site: None });
                    (table.len() - 1) as u32
                })
            }
        }
    };
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    let mut segments = Vec::with_capacity(roots.len());
    for r in roots {
        let members = &groups[&r];
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &k in members {
            let e = kept[k];
            *count.entry(refined.half_edges[e].origin).or_default() += 1;
            *count.entry(refined.dest(e)).or_default() += 1;
        }
        let mut ends: Vec<usize> = count.into_iter().filter(|&(_, c)| c == 1).map(|(v, _)| v).collect();
        if ends.len() != 2 {
            return Err(Error::GeometryMismatch("closed chain of collinear edges".into()));
        }
        ends.sort_unstable();
        let (a, b) = (refined.point(ends[0]).clone(), refined.point(ends[1]).clone());
        let e = kept[members[0]];
        let h = &refined.half_edges[e];
        let ab = b.sub(&a);
        let (dx, dy) = h.direction();
        let forward = (&dx * &ab.0 + &dy * &ab.1).signum() > 0;
        let (lf, rf) =
            if forward { (h.face, refined.half_edges[h.twin].face) } else { (refined.half_edges[h.twin].face, h.face) };
        segments.push(Segment {
            a,
            b,
            line: h.line.clone(),
            pair: h.pair,
            chromaticity: h.chromaticity,
            is_new: h.is_new,
            left: label(lf),
            right: label(rf),
        });
    }
    let mut out = PlanarSubdivision::from_segments(segments, &table, refined.clip_box.clone())?;
    let fresh: HashMap<&Point2, bool> = refined.vertices.iter().map(|v| (&v.point, v.is_new)).collect();
    for v in &mut out.vertices {
        v.is_new = fresh.get(&v.point).copied().unwrap_or(false);
    }
    Ok(out)
}

/// Outer defining sites of the edges bounding face `f` of a coarse diagram.
pub fn boundary_sites(d: &PlanarSubdivision, f: usize, s: &ColoredSiteSet) -> Result<Vec<usize>> {
    let h_colors = &d.faces[f].label.colors;
    let in_h = |site: usize| h_colors.binary_search(&s.color(site)).is_ok();
    let mut out = Vec::new();
    for e in d.face_half_edges(f) {
        let Some((p, q)) = d.half_edges[e].pair else { continue };
        match (in_h(p), in_h(q)) {
            (true, false) => out.push(q),
            (false, true) => out.push(p),
            (true, true) => return Err(Error::ColorLeak { face: f, site: q }),
            (false, false) => {
                return Err(Error::InconsistentLabels(format!(
                    "neither site of pair ({p}, {q}) has a color of face {f}"
                )))
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Which end of the bisector of `p < q` the point `x` lies towards.
fn end_sign(s: &ColoredSiteSet, p: usize, q: usize, x: &Point2) -> i32 {
    let (pp, qq) = (s.pos(p), s.pos(q));
    let (wx, wy) = qq.sub(pp);
    let two = Rational::from_int(2);
    let vx = &x.x * &two - &pp.x - &qq.x;
    let vy = &x.y * &two - &pp.y - &qq.y;
    (&wx * &vy - &wy * &vx).signum()
}

/// Box ring of a refined minimal diagram: unbounded edge ends keyed by
/// (pair, end) and the inner box half-edge leaving each box vertex.
struct Ring<'a> {
    d: &'a PlanarSubdivision,
    ends: HashMap<(usize, usize, i32), usize>,
    step: HashMap<usize, usize>,
}

impl<'a> Ring<'a> {
    fn new(d: &'a PlanarSubdivision, s: &ColoredSiteSet) -> Self {
        let mut ends = HashMap::new();
        let mut step = HashMap::new();
        for (e, h) in d.half_edges.iter().enumerate() {
            if !d.vertices[h.origin].on_box {
                continue;
            }
            match h.pair {
                Some((p, q)) => {
                    let sign = end_sign(s, p, q, d.point(h.origin));
                    ends.insert((p, q, sign), h.origin);
                }
                None if h.face.is_some() => {
                    step.insert(h.origin, e);
                }
                None => {}
            }
        }
        Ring { d, ends, step }
    }

    fn corresponding(&self, s: &ColoredSiteSet, pair: (usize, usize), at: &Point2) -> Result<usize> {
        let (p, q) = pair;
        let sign = -end_sign(s, p, q, at);
        self.ends.get(&(p, q, sign)).copied().ok_or_else(|| {
            Error::CorrespondenceFailure(format!("no unbounded minimal edge of pair ({p}, {q}) opposite {at}"))
        })
    }

    /// Associated sites of the faces met walking the box counterclockwise.
    fn walk(&self, from: usize, to: Option<usize>) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = from;
        for _ in 0..=self.step.len() {
            let e = self.step[&cur];
            let f = self.d.half_edges[e].face.expect("inner side");
            out.extend(self.d.faces[f].label.associated_site);
            cur = self.d.dest(e);
            if Some(cur) == to || (to.is_none() && cur == from) {
                return Ok(out);
            }
        }
        Err(Error::CorrespondenceFailure("box walk did not terminate".into()))
    }
}

/// Extra sites owning unbounded refined faces inside an unbounded face of a
/// coarse maximal diagram, read off the refined minimal diagram one order
/// up in the opposite directions.
fn extra_sites(max_coarse: &PlanarSubdivision, f: usize, ring: &Ring, s: &ColoredSiteSet) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for cyc in max_coarse.face_cycles(f) {
        let is_box = |e: usize| max_coarse.half_edges[e].is_box();
        if cyc.iter().all(|&e| is_box(e)) {
            let start = *ring.step.keys().min().expect("box has vertices");
            out.extend(ring.walk(start, None)?);
            continue;
        }
        let len = cyc.len();
        for i in 0..len {
            // start of a run of box edges
            if !is_box(cyc[i]) || is_box(cyc[(i + len - 1) % len]) {
                continue;
            }
            let e_in = cyc[(i + len - 1) % len];
            let mut j = i;
            while is_box(cyc[j % len]) {
                j += 1;
            }
            let e_out = cyc[j % len];
            let x_in = max_coarse.point(max_coarse.dest(e_in));
            let x_out = max_coarse.point(max_coarse.half_edges[e_out].origin);
            let from = ring.corresponding(s, max_coarse.half_edges[e_in].pair.unwrap(), x_in)?;
            let to = ring.corresponding(s, max_coarse.half_edges[e_out].pair.unwrap(), x_out)?;
            out.extend(ring.walk(from, Some(to))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStats {
    pub order: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub refined_vertices: usize,
    pub refined_edges: usize,
    pub refined_faces: usize,
    /// New vertices of the refined diagram by chromaticity (index 1..=3).
    pub new_vertices: [usize; 4],
}

/// Sites used to refine one face of the previous coarse diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSites {
    pub face: usize,
    pub boundary: Vec<usize>,
    pub extra: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDiagrams {
    pub order: usize,
    pub coarse: PlanarSubdivision,
    pub refined: PlanarSubdivision,
    pub stats: OrderStats,
    pub face_sites: Vec<FaceSites>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSequence {
    pub side: Side,
    pub orders: Vec<OrderDiagrams>,
}

impl DiagramSequence {
    pub fn order(&self, k: usize) -> &OrderDiagrams {
        &self.orders[k - 1]
    }
}

fn finish(
    s: &ColoredSiteSet,
    order: usize,
    refined: PlanarSubdivision,
    face_sites: Vec<FaceSites>,
) -> Result<OrderDiagrams> {
    let coarse = coarsen(&refined)?;
    let mut new_vertices = [0; 4];
    for (_, v) in refined.interior_vertices() {
        if v.is_new {
            let mut colors: Vec<usize> = v.sites.iter().map(|&x| s.color(x)).collect();
            colors.sort_unstable();
            colors.dedup();
            new_vertices[colors.len().min(3)] += 1;
        }
    }
    let stats = OrderStats {
        order,
        vertices: coarse.interior_vertex_count(),
        edges: coarse.interior_edge_count(),
        faces: coarse.faces.len(),
        refined_vertices: refined.interior_vertex_count(),
        refined_edges: refined.interior_edge_count(),
        refined_faces: refined.faces.len(),
        new_vertices,
    };
    Ok(OrderDiagrams { order, coarse, refined, stats, face_sites })
}

/// Order `i + 1` minimal diagrams from the coarse minimal diagram of order
/// `i` (the bare clip box for `i = 0`).
pub fn advance_minimal(s: &ColoredSiteSet, coarse: &PlanarSubdivision, i: usize) -> Result<OrderDiagrams> {
    let mut sets = Vec::with_capacity(coarse.faces.len());
    let mut record = Vec::with_capacity(coarse.faces.len());
    for f in 0..coarse.faces.len() {
        let sf = if i == 0 { (0..s.n()).collect() } else { boundary_sites(coarse, f, s)? };
        record.push(FaceSites { face: f, boundary: sf.clone(), extra: vec![] });
        sets.push(sf);
    }
    let refined = refine(s, coarse, Side::Min, &sets)?;
    finish(s, i + 1, refined, record)
}

/// Order `i + 1` maximal diagrams from the coarse maximal diagram of order
/// `i` and the refined minimal diagram of order `i + 1`.
pub fn advance_maximal(
    s: &ColoredSiteSet,
    coarse: &PlanarSubdivision,
    min_refined_next: &PlanarSubdivision,
    i: usize,
) -> Result<OrderDiagrams> {
    let ring = Ring::new(min_refined_next, s);
    let mut sets = Vec::with_capacity(coarse.faces.len());
    let mut record = Vec::with_capacity(coarse.faces.len());
    for f in 0..coarse.faces.len() {
        if i == 0 {
            sets.push((0..s.n()).collect());
            record.push(FaceSites { face: f, boundary: (0..s.n()).collect(), extra: vec![] });
            continue;
        }
        let sf = boundary_sites(coarse, f, s)?;
        let bounded = coarse.face_half_edges(f).iter().all(|&e| !coarse.half_edges[e].is_box());
        let extra = if bounded { Vec::new() } else { extra_sites(coarse, f, &ring, s)? };
        let mut all: Vec<usize> = sf.iter().chain(extra.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        record.push(FaceSites { face: f, boundary: sf, extra });
        sets.push(all);
    }
    let refined = refine(s, coarse, Side::Max, &sets)?;
    finish(s, i + 1, refined, record)
}

/// Minimal and maximal sequences of orders `1..=k`.
pub fn build_sequences(s: &ColoredSiteSet, k: usize) -> Result<(DiagramSequence, DiagramSequence)> {
    s.require_metric(Metric::Euclidean)?;
    if k == 0 || k > s.m() {
        return Err(Error::InvalidOrder { k, m: s.m() });
    }
    check_general_position(s).into_result()?;
    let bx = choose_clip_box(s);
    let base = box_diagram(&bx, empty_label());

    let mut min_orders: Vec<OrderDiagrams> = Vec::with_capacity(k);
    for i in 0..k {
        let prev = if i == 0 { &base } else { &min_orders[i - 1].coarse };
        let next = advance_minimal(s, prev, i)?;
        min_orders.push(next);
    }
    let mut max_orders: Vec<OrderDiagrams> = Vec::with_capacity(k);
    for i in 0..k {
        let prev = if i == 0 { &base } else { &max_orders[i - 1].coarse };
        let next = advance_maximal(s, prev, &min_orders[i].refined, i)?;
        max_orders.push(next);
    }
    Ok((
        DiagramSequence { side: Side::Min, orders: min_orders },
        DiagramSequence { side: Side::Max, orders: max_orders },
    ))
}

/// Interior vertex points of a subdivision.
pub fn vertex_points(d: &PlanarSubdivision) -> HashSet<Point2> {
    d.interior_vertices().map(|(_, v)| v.point.clone()).collect()
}

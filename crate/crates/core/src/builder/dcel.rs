//! Half-edge planar subdivisions built from labeled segments.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cmp_direction, Line, Point2};
use crate::rational::Rational;

/// Axis-aligned rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point2,
    pub max: Point2,
}

impl Rect {
    pub fn corners(&self) -> [Point2; 4] {
        [
            self.min.clone(),
            Point2::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point2::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    /// Supporting lines of the four sides, counterclockwise from the bottom.
    pub fn side_lines(&self) -> [Line; 4] {
        let c = self.corners();
        [
            Line::through(&c[0], &c[1]),
            Line::through(&c[1], &c[2]),
            Line::through(&c[2], &c[3]),
            Line::through(&c[3], &c[0]),
        ]
    }

    pub fn on_boundary(&self, p: &Point2) -> bool {
        p.x == self.min.x || p.x == self.max.x || p.y == self.min.y || p.y == self.max.y
    }

    pub fn strictly_contains(&self, p: &Point2) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceLabel {
    pub colors: Vec<usize>,
    pub associated_site: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: Point2,
    pub on_box: bool,
    pub is_new: bool,
    /// Sites defining the incident edges, sorted.
    pub sites: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    pub prev: usize,
    /// `None` on the outside of the clip box.
    pub face: Option<usize>,
    /// 0 for pieces of the clip box.
    pub chromaticity: u8,
    pub is_new: bool,
    /// Defining site pair `(p, q)` with `p < q`; `None` on the clip box.
    pub pair: Option<(usize, usize)>,
    /// Supporting line, oriented so that `(-b, a)` points from origin to destination.
    pub line: Line,
}

impl HalfEdge {
    pub fn is_box(&self) -> bool {
        self.pair.is_none()
    }

    pub fn direction(&self) -> (Rational, Rational) {
        (-&self.line.b, self.line.a.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub label: FaceLabel,
    /// A half-edge of the outer boundary.
    pub half_edge: usize,
    /// One half-edge per inner boundary component.
    pub holes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarSubdivision {
    pub vertices: Vec<Vertex>,
    pub half_edges: Vec<HalfEdge>,
    pub faces: Vec<Face>,
    pub clip_box: Rect,
}

pub const EXTERIOR: u32 = u32::MAX;

/// Input to [`PlanarSubdivision::from_segments`]; `left`/`right` index the
/// label table or are [`EXTERIOR`].
#[derive(Clone, Debug)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
    pub line: Line,
    pub pair: Option<(usize, usize)>,
    pub chromaticity: u8,
    pub is_new: bool,
    pub left: u32,
    pub right: u32,
}

fn dot(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.0 + &u.1 * &v.1
}

fn cross(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.1 - &u.1 * &v.0
}

impl PlanarSubdivision {
    /// Links segments that meet only at endpoints into a subdivision. Every
    /// boundary cycle must carry one label; faces are the counterclockwise
    /// cycles, and clockwise cycles become holes of the smallest enclosing
    /// face with the same label.
    pub fn from_segments(segments: Vec<Segment>, labels: &[FaceLabel], clip_box: Rect) -> Result<Self> {
        let mut index: HashMap<Point2, usize> = HashMap::new();
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut intern = |p: Point2, vertices: &mut Vec<Vertex>| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                vertices.push(Vertex { on_box: clip_box.on_boundary(&p), point: p, is_new: false, sites: vec![] });
                vertices.len() - 1
            })
        };
        let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(2 * segments.len());
        let mut he_label: Vec<u32> = Vec::with_capacity(2 * segments.len());
        for seg in segments {
            if seg.a == seg.b {
                return Err(Error::GeometryMismatch(format!("zero-length segment at {}", seg.a)));
            }
            let ab = seg.b.sub(&seg.a);
            let line =
                if dot(&(-&seg.line.b, seg.line.a.clone()), &ab).signum() > 0 { seg.line } else { seg.line.flipped() };
            let u = intern(seg.a, &mut vertices);
            let v = intern(seg.b, &mut vertices);
            let e = half_edges.len();
            let twin_line = line.flipped();
            for (origin, twin, line, label) in [(u, e + 1, line, seg.left), (v, e, twin_line, seg.right)] {
                half_edges.push(HalfEdge {
                    origin,
                    twin,
                    next: usize::MAX,
                    prev: usize::MAX,
                    face: None,
                    chromaticity: seg.chromaticity,
                    is_new: seg.is_new,
                    pair: seg.pair,
                    line,
                });
                he_label.push(label);
            }
        }

        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (e, h) in half_edges.iter().enumerate() {
            outgoing[h.origin].push(e);
        }
        for list in &mut outgoing {
            let dirs: HashMap<usize, (Rational, Rational)> =
                list.iter().map(|&e| (e, half_edges[e].direction())).collect();
            list.sort_by(|a, b| cmp_direction(&dirs[a], &dirs[b]));
            for w in list.windows(2) {
                if cmp_direction(&dirs[&w[0]], &dirs[&w[1]]).is_eq() {
                    return Err(Error::GeometryMismatch("overlapping edges at a vertex".into()));
                }
            }
        }
        for list in &outgoing {
            let len = list.len();
            for (i, &e) in list.iter().enumerate() {
                let incoming = half_edges[e].twin;
                let nx = list[(i + len - 1) % len];
                half_edges[incoming].next = nx;
                half_edges[nx].prev = incoming;
            }
        }

        // boundary cycles
        let mut cycle_of = vec![usize::MAX; half_edges.len()];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..half_edges.len() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut e = start;
            loop {
                cycle_of[e] = id;
                cyc.push(e);
                e = half_edges[e].next;
                if e == start {
                    break;
                }
                if cyc.len() > half_edges.len() {
                    return Err(Error::GeometryMismatch("unterminated boundary cycle".into()));
                }
            }
            let label = he_label[start];
            if let Some(&bad) = cyc.iter().find(|&&e| he_label[e] != label) {
                return Err(Error::GeometryMismatch(format!(
                    "boundary cycle through {} mixes face labels",
                    vertices[half_edges[bad].origin].point
                )));
            }
            cycles.push(cyc);
        }

        let mut faces: Vec<Face> = Vec::new();
        let mut face_of_cycle = vec![None; cycles.len()];
        let mut holes = Vec::new();
        for (ci, cyc) in cycles.iter().enumerate() {
            let label = he_label[cyc[0]];
            let ccw = cycle_is_ccw(cyc, &half_edges, &vertices)?;
            match (ccw, label == EXTERIOR) {
                (true, true) => {
                    return Err(Error::GeometryMismatch("exterior label on a bounded cycle".into()));
                }
                (true, false) => {
                    face_of_cycle[ci] = Some(faces.len());
                    faces.push(Face { label: labels[label as usize].clone(), half_edge: cyc[0], holes: vec![] });
                }
                (false, true) => {}
                (false, false) => holes.push(ci),
            }
        }
        let mut sub = PlanarSubdivision { vertices, half_edges, faces, clip_box };
        for ci in holes {
            let cyc = &cycles[ci];
            let label = he_label[cyc[0]];
            let probe = sub.vertices[sub.half_edges[cyc[0]].origin].point.clone();
            let mut best: Option<(f64, usize)> = None;
            for (fi, face) in sub.faces.iter().enumerate() {
                if he_label[face.half_edge] != label {
                    continue;
                }
                let outer = sub.cycle(face.half_edge);
                if crossing_parity(&sub, &outer, &probe) {
                    let area = sub.cycle_area_f64(&outer).abs();
                    if best.is_none_or(|(a, _)| area < a) {
                        best = Some((area, fi));
                    }
                }
            }
            let (_, fi) = best
                .ok_or_else(|| Error::GeometryMismatch(format!("inner boundary at {probe} has no enclosing face")))?;
            sub.faces[fi].holes.push(cyc[0]);
            face_of_cycle[ci] = Some(fi);
        }
        for (ci, cyc) in cycles.iter().enumerate() {
            for &e in cyc {
                sub.half_edges[e].face = face_of_cycle[ci];
            }
        }
        sub.refresh_vertex_data();
        Ok(sub)
    }

    fn refresh_vertex_data(&mut self) {
        let mut sites: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        let mut old = vec![false; self.vertices.len()];
        for h in &self.half_edges {
            if let Some((p, q)) = h.pair {
                sites[h.origin].extend([p, q]);
                if !h.is_new {
                    old[h.origin] = true;
                }
            }
        }
        for (v, mut s) in sites.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            let vert = &mut self.vertices[v];
            vert.is_new = !vert.on_box && !old[v];
            vert.sites = s;
        }
    }

    pub fn dest(&self, e: usize) -> usize {
        self.half_edges[self.half_edges[e].twin].origin
    }

    pub fn point(&self, v: usize) -> &Point2 {
        &self.vertices[v].point
    }

    pub fn cycle(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut e = self.half_edges[start].next;
        while e != start {
            out.push(e);
            e = self.half_edges[e].next;
        }
        out
    }

    /// Half-edges of every boundary component of a face.
    pub fn face_half_edges(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        let mut out = self.cycle(face.half_edge);
        for &h in &face.holes {
            out.extend(self.cycle(h));
        }
        out
    }

    pub fn face_cycles(&self, f: usize) -> Vec<Vec<usize>> {
        let face = &self.faces[f];
        std::iter::once(face.half_edge).chain(face.holes.iter().copied()).map(|h| self.cycle(h)).collect()
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = (usize, &Vertex)> {
        self.vertices.iter().enumerate().filter(|(_, v)| !v.on_box)
    }

    pub fn interior_vertex_count(&self) -> usize {
        self.interior_vertices().count()
    }

    /// Undirected edges that are not pieces of the clip box.
    pub fn interior_edge_count(&self) -> usize {
        self.half_edges.iter().filter(|h| !h.is_box()).count() / 2
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    fn cycle_area_f64(&self, cyc: &[usize]) -> f64 {
        let mut acc = 0.0;
        for &e in cyc {
            let p = self.point(self.half_edges[e].origin);
            let q = self.point(self.dest(e));
            acc += p.x.to_f64() * q.y.to_f64() - q.x.to_f64() * p.y.to_f64();
        }
        acc / 2.0
    }

    /// Strict interior test for a face, holes included. Points on the
    /// face's boundary report `false`.
    pub fn face_contains(&self, f: usize, p: &Point2) -> bool {
        let hs = self.face_half_edges(f);
        if hs.iter().any(|&e| self.on_half_edge(e, p)) {
            return false;
        }
        crossing_parity(self, &hs, p)
    }

    pub fn on_half_edge(&self, e: usize, p: &Point2) -> bool {
        let h = &self.half_edges[e];
        if !h.line.eval(p).is_zero() {
            return false;
        }
        within_box(p, self.point(h.origin), self.point(self.dest(e)))
    }

    /// Points strictly inside face `f`: for each outer boundary edge, a few
    /// points along it pushed inward until they land inside the face.
    pub fn interior_samples(&self, f: usize, wanted: usize) -> Vec<Point2> {
        let outer = self.cycle(self.faces[f].half_edge);
        let per_edge = wanted.div_ceil(outer.len()).max(1);
        let mut out = Vec::new();
        for &e in &outer {
            let a = self.point(self.half_edges[e].origin);
            let b = self.point(self.dest(e));
            let (dx, dy) = self.half_edges[e].direction();
            let normal = (-dy, dx);
            for i in 1..=per_edge {
                let t = Rational::new(i as i128, per_edge as i128 + 1);
                let base = a.lerp(b, &t);
                let mut eps = Rational::one();
                for _ in 0..200 {
                    let x = Point2::new(&base.x + &eps * &normal.0, &base.y + &eps * &normal.1);
                    if self.face_contains(f, &x) {
                        out.push(x);
                        break;
                    }
                    eps = eps * Rational::new(1, 2);
                }
            }
        }
        out
    }

    /// Twin involution, next/prev inverses, consistent faces, and Euler's
    /// relation `V − E + F = 1 + C` with the outside of the box counted.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (e, h) in self.half_edges.iter().enumerate() {
            if self.half_edges[h.twin].twin != e || h.twin == e {
                return Err(format!("twin of {e} is not an involution"));
            }
            if self.half_edges[h.next].prev != e {
                return Err(format!("prev(next({e})) != {e}"));
            }
            if self.half_edges[h.next].origin != self.dest(e) {
                return Err(format!("next({e}) does not start where {e} ends"));
            }
            if self.half_edges[h.next].face != h.face {
                return Err(format!("face changes along the cycle of {e}"));
            }
        }
        for (fi, face) in self.faces.iter().enumerate() {
            if self.half_edges[face.half_edge].face != Some(fi) {
                return Err(format!("face {fi} points at a foreign half-edge"));
            }
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
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
        for h in &self.half_edges {
            let (a, b) = (find(&mut parent, h.origin), find(&mut parent, self.half_edges[h.twin].origin));
            parent[a] = b;
        }
        let components = (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count() as i64;
        let (v, e, f) = (self.vertices.len() as i64, self.edge_count() as i64, self.faces.len() as i64 + 1);
        if v - e + f != 1 + components {
            return Err(format!("Euler relation fails: V={v} E={e} F={f} C={components}"));
        }
        Ok(())
    }
}

fn within_box(p: &Point2, a: &Point2, b: &Point2) -> bool {
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

/// Ray-casting parity of `p` against the given half-edges. Uses each edge's
/// supporting line for the crossing side, which keeps operands small.
pub(crate) fn crossing_parity(sub: &PlanarSubdivision, hs: &[usize], p: &Point2) -> bool {
    let mut inside = false;
    for &e in hs {
        let a = sub.point(sub.half_edges[e].origin);
        let b = sub.point(sub.dest(e));
        if (a.y > p.y) == (b.y > p.y) {
            continue;
        }
        let line = &sub.half_edges[e].line;
        // crossing abscissa x* satisfies a·(p.x − x*) = eval(p)
        if line.eval(p).signum() * line.a.signum() < 0 {
            inside = !inside;
        }
    }
    inside
}

fn cycle_is_ccw(cyc: &[usize], hes: &[HalfEdge], vertices: &[Vertex]) -> Result<bool> {
    let (pos, _) = cyc
        .iter()
        .enumerate()
        .min_by(|a, b| vertices[hes[*a.1].origin].point.cmp(&vertices[hes[*b.1].origin].point))
        .unwrap();
    let out = &hes[cyc[pos]];
    let inc = &hes[cyc[(pos + cyc.len() - 1) % cyc.len()]];
    match cross(&inc.direction(), &out.direction()).signum() {
        0 => Err(Error::GeometryMismatch(format!("dangling edge at {}", vertices[out.origin].point))),
        s => Ok(s > 0),
    }
}

/// A subdivision consisting of the clip box alone, as one face.
pub fn box_diagram(clip_box: &Rect, label: FaceLabel) -> PlanarSubdivision {
    let c = clip_box.corners();
    let lines = clip_box.side_lines();
    let segs = (0..4)
        .map(|i| Segment {
            a: c[i].clone(),
            b: c[(i + 1) % 4].clone(),
            line: lines[i].clone(),
            pair: None,
            chromaticity: 0,
            is_new: false,
            left: 0,
            right: EXTERIOR,
        })
        .collect();
    PlanarSubdivision::from_segments(segs, &[label], clip_box.clone()).expect("a rectangle is a valid subdivision")
}

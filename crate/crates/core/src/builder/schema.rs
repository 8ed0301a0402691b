//! Deterministic text serialization of diagram sequences.
//!
//! Vertices are numbered in lexicographic `(x, y)` order, half-edges by
//! `(origin, twin origin)`, and faces by the smallest half-edge id on their
//! outer boundary. Coordinates are exact rational strings.

use serde::{Deserialize, Serialize};

use crate::census::Side;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sites::ColoredSiteSet;

use super::{DiagramSequence, OrderStats, PlanarSubdivision, Rect};

pub const FORMAT: &str = "colorvd-diagram/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteRecord {
    pub id: usize,
    pub x: Rational,
    pub y: Rational,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub x: Rational,
    pub y: Rational,
    pub on_box: bool,
    pub is_new: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdgeRecord {
    pub id: usize,
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    pub prev: usize,
    pub face: Option<usize>,
    pub chromaticity: u8,
    pub is_new: bool,
    pub pair: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: usize,
    pub colors: Vec<usize>,
    pub associated_site: Option<usize>,
    pub half_edge: usize,
    pub holes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionRecord {
    pub vertices: Vec<VertexRecord>,
    pub half_edges: Vec<HalfEdgeRecord>,
    pub faces: Vec<FaceRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub order: usize,
    pub stats: OrderStats,
    pub coarse: SubdivisionRecord,
    pub refined: SubdivisionRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub side: Side,
    pub orders: Vec<OrderRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub format: String,
    pub n: usize,
    pub m: usize,
    pub sites: Vec<SiteRecord>,
    pub clip_box: Rect,
    pub sequences: Vec<SequenceRecord>,
}

impl SubdivisionRecord {
    pub fn from_subdivision(d: &PlanarSubdivision) -> Self {
        let mut vorder: Vec<usize> = (0..d.vertices.len()).collect();
        vorder.sort_by(|&a, &b| d.vertices[a].point.cmp(&d.vertices[b].point));
        let vid = inverse(&vorder);

        let he = &d.half_edges;
        let mut eorder: Vec<usize> = (0..he.len()).collect();
        eorder.sort_by_key(|&e| (vid[he[e].origin], vid[he[he[e].twin].origin]));
        let eid = inverse(&eorder);

        let outer_key = |f: usize| d.cycle(d.faces[f].half_edge).into_iter().map(|e| eid[e]).min().unwrap();
        let mut forder: Vec<usize> = (0..d.faces.len()).collect();
        forder.sort_by_key(|&f| outer_key(f));
        let fid = inverse(&forder);

        let vertices = vorder
            .iter()
            .enumerate()
            .map(|(id, &v)| {
                let x = &d.vertices[v];
                VertexRecord { id, x: x.point.x.clone(), y: x.point.y.clone(), on_box: x.on_box, is_new: x.is_new }
            })
            .collect();
        let half_edges = eorder
            .iter()
            .enumerate()
            .map(|(id, &e)| {
                let h = &he[e];
                HalfEdgeRecord {
                    id,
                    origin: vid[h.origin],
                    twin: eid[h.twin],
                    next: eid[h.next],
                    prev: eid[h.prev],
                    face: h.face.map(|f| fid[f]),
                    chromaticity: h.chromaticity,
                    is_new: h.is_new,
                    pair: h.pair.map(|(p, q)| [p, q]),
                }
            })
            .collect();
        let faces = forder
            .iter()
            .enumerate()
            .map(|(id, &f)| {
                let face = &d.faces[f];
                let mut holes: Vec<usize> =
                    face.holes.iter().map(|&h| d.cycle(h).into_iter().map(|e| eid[e]).min().unwrap()).collect();
                holes.sort_unstable();
                FaceRecord {
                    id,
                    colors: face.label.colors.clone(),
                    associated_site: face.label.associated_site,
                    half_edge: outer_key(f),
                    holes,
                }
            })
            .collect();
        SubdivisionRecord { vertices, half_edges, faces }
    }

    /// Index ranges and the twin, next/prev and face links.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Schema(msg));
        let (nv, ne, nf) = (self.vertices.len(), self.half_edges.len(), self.faces.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return bad(format!("vertex at position {i} has id {}", v.id));
            }
        }
        for (i, h) in self.half_edges.iter().enumerate() {
            if h.id != i {
                return bad(format!("half-edge at position {i} has id {}", h.id));
            }
            if h.origin >= nv || h.twin >= ne || h.next >= ne || h.prev >= ne {
                return bad(format!("half-edge {i} refers past the end of a table"));
            }
            if h.face.is_some_and(|f| f >= nf) {
                return bad(format!("half-edge {i} refers to a missing face"));
            }
            if h.chromaticity > 2 {
                return bad(format!("half-edge {i} has chromaticity {}", h.chromaticity));
            }
        }
        for (i, h) in self.half_edges.iter().enumerate() {
            let t = &self.half_edges[h.twin];
            if h.twin == i || t.twin != i {
                return bad(format!("half-edge {i} has a broken twin"));
            }
            if self.half_edges[h.next].prev != i || self.half_edges[h.prev].next != i {
                return bad(format!("half-edge {i} has broken next/prev links"));
            }
            if self.half_edges[h.next].origin != t.origin {
                return bad(format!("half-edge {i} is not followed at its destination"));
            }
            if self.half_edges[h.next].face != h.face {
                return bad(format!("half-edge {i} and its successor bound different faces"));
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            if f.id != i {
                return bad(format!("face at position {i} has id {}", f.id));
            }
            for &e in std::iter::once(&f.half_edge).chain(&f.holes) {
                if e >= ne || self.half_edges[e].face != Some(i) {
                    return bad(format!("face {i} lists half-edge {e}, which does not bound it"));
                }
            }
        }
        Ok(())
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = &VertexRecord> {
        self.vertices.iter().filter(|v| !v.on_box)
    }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

impl DiagramDocument {
    pub fn new(s: &ColoredSiteSet, sequences: &[&DiagramSequence]) -> Self {
        let clip_box = sequences
            .first()
            .and_then(|q| q.orders.first())
            .map(|o| o.coarse.clip_box.clone())
            .unwrap_or_else(|| super::choose_clip_box(s));
        DiagramDocument {
            format: FORMAT.to_string(),
            n: s.n(),
            m: s.m(),
            sites: s
                .sites()
                .iter()
                .map(|x| SiteRecord { id: x.id, x: x.position.x.clone(), y: x.position.y.clone(), color: x.color })
                .collect(),
            clip_box,
            sequences: sequences
                .iter()
                .map(|q| SequenceRecord {
                    side: q.side,
                    orders: q
                        .orders
                        .iter()
                        .map(|o| OrderRecord {
                            order: o.order,
                            stats: o.stats.clone(),
                            coarse: SubdivisionRecord::from_subdivision(&o.coarse),
                            refined: SubdivisionRecord::from_subdivision(&o.refined),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DiagramDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.format != FORMAT {
            return Err(Error::Schema(format!("unknown format `{}`", self.format)));
        }
        if self.sites.len() != self.n {
            return Err(Error::Schema(format!("{} sites listed, n = {}", self.sites.len(), self.n)));
        }
        for (i, s) in self.sites.iter().enumerate() {
            if s.id != i || s.color >= self.m {
                return Err(Error::Schema(format!("site record {i} is out of range")));
            }
        }
        for seq in &self.sequences {
            for o in &seq.orders {
                if o.order == 0 || o.order > self.m {
                    return Err(Error::Schema(format!("order {} outside 1..={}", o.order, self.m)));
                }
                o.coarse.validate()?;
                o.refined.validate()?;
            }
        }
        Ok(())
    }
}

//! Faces of a triangulation, flips, and the flip graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arc::{Arc, MarkedStrip};
use crate::cover::Cover;
use crate::enumeration::{all_compatible, enumerate_triangulations, Triangulation, BRUTE_FORCE_CEILING};
use crate::error::{domain, Error, Result};

/// A side of a face: an arc of the triangulation or a boundary segment.
/// Boundary segment `k` joins marked points `k` and `k + 1 (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRef {
    Arc(Arc),
    Boundary(usize),
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Arc(a) => write!(f, "{a}"),
            EdgeRef::Boundary(k) => write!(f, "boundary({k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    Triangle,
    QuasiTriangle,
    AntiSelfFolded,
}

/// A complementary region of a triangulation.
///
/// Triangles list their three sides in cyclic order. An anti-self-folded
/// triangle lists its doubled side twice. A quasi-triangle lists its monogon
/// (the boundary segment when `n = 1`) followed by the core curve twice, since
/// the region runs along both sides of it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub kind: FaceKind,
    pub sides: Vec<EdgeRef>,
}

fn check_strip(strip: &MarkedStrip, t: &Triangulation) -> Result<()> {
    if strip.n() != t.n() {
        return domain(format!("triangulation of M_{} used with M_{}", t.n(), strip.n()));
    }
    t.validate()
}

/// The faces of `t`: `n` regions, each triangle or quasi-triangle.
pub fn faces(strip: &MarkedStrip, t: &Triangulation) -> Result<Vec<Face>> {
    check_strip(strip, t)?;
    let cover = Cover::new(t);
    let mut out: Vec<Face> = cover
        .triangles()
        .into_iter()
        .map(|sides| {
            let doubled = (0..3).any(|i| sides[i] == sides[(i + 1) % 3]);
            let kind = if doubled { FaceKind::AntiSelfFolded } else { FaceKind::Triangle };
            Face { kind, sides }
        })
        .collect();
    if t.contains_core() {
        out.push(Face {
            kind: FaceKind::QuasiTriangle,
            sides: vec![monogon_side(t), EdgeRef::Arc(Arc::Core), EdgeRef::Arc(Arc::Core)],
        });
    }
    out.sort();
    Ok(out)
}

/// The side enclosing the cross-cap next to the core: the monogon of `t`,
/// or the boundary itself when `n = 1`.
pub(crate) fn monogon_side(t: &Triangulation) -> EdgeRef {
    t.arcs().iter().find(|a| a.monogon_point().is_some()).map(|a| EdgeRef::Arc(*a)).unwrap_or(EdgeRef::Boundary(0))
}

/// Replaces `arc` by the unique other arc that completes `t \ {arc}`.
pub fn flip(strip: &MarkedStrip, t: &Triangulation, arc: &Arc) -> Result<(Triangulation, Arc)> {
    check_strip(strip, t)?;
    flip_unchecked(strip, t, arc)
}

pub(crate) fn flip_unchecked(strip: &MarkedStrip, t: &Triangulation, arc: &Arc) -> Result<(Triangulation, Arc)> {
    if !t.contains(arc) {
        return domain(format!("{arc} is not in the triangulation {t}"));
    }
    let rest: Vec<Arc> = t.arcs().iter().filter(|a| *a != arc).copied().collect();
    let candidates: Vec<Arc> = strip
        .all_arcs()
        .into_iter()
        .filter(|c| c != arc && !rest.contains(c) && all_compatible(strip, c, &rest))
        .collect();
    match candidates.as_slice() {
        [c] => {
            let mut arcs = rest;
            arcs.push(*c);
            Ok((Triangulation::new_unchecked(strip.n(), arcs), *c))
        }
        _ => Err(Error::ModelViolation(format!("flipping {arc} in {t} has {} completions", candidates.len()))),
    }
}

/// An edge of the flip graph; `removed` belongs to the source vertex and
/// `added` to the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlipEdge {
    pub source: usize,
    pub target: usize,
    pub removed: Arc,
    pub added: Arc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipGraph {
    pub n: usize,
    pub vertices: Vec<Triangulation>,
    pub edges: Vec<FlipEdge>,
}

impl FlipGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.source] += 1;
            d[e.target] += 1;
        }
        d
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    pub fn is_connected(&self) -> bool {
        let k = self.vertices.len();
        if k == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); k];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn flip_graph(n: usize) -> Result<FlipGraph> {
    flip_graph_with_ceiling(n, BRUTE_FORCE_CEILING)
}

pub fn flip_graph_with_ceiling(n: usize, ceiling: usize) -> Result<FlipGraph> {
    if n > ceiling {
        return Err(Error::Resource(format!("flip graph of M_{n} exceeds the ceiling {ceiling}")));
    }
    let strip = MarkedStrip::new(n)?;
    let vertices = enumerate_triangulations(&strip);
    let index: BTreeMap<&Triangulation, usize> = vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    for (s, t) in vertices.iter().enumerate() {
        for arc in t.arcs() {
            let (u, added) = flip_unchecked(&strip, t, arc)?;
            let target = *index
                .get(&u)
                .ok_or_else(|| Error::ModelViolation(format!("flip produced unknown triangulation {u}")))?;
            if s < target {
                edges.insert(FlipEdge { source: s, target, removed: *arc, added });
            }
        }
    }
    Ok(FlipGraph { n, vertices, edges: edges.into_iter().collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::Usage(format!("unknown graph format '{other}' (expected dot or json)"))),
        }
    }
}

fn label(t: &Triangulation) -> String {
    t.arcs().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

/// Serializes the graph. Vertices are `v0..v{k-1}` in canonical order.
pub fn export_graph(g: &FlipGraph, format: GraphFormat) -> Result<Vec<u8>> {
    match format {
        GraphFormat::Dot => {
            let mut s = format!("graph flips_m{} {{\n", g.n);
            for (i, t) in g.vertices.iter().enumerate() {
                s.push_str(&format!("  v{i} [label=\"{}\"];\n", label(t)));
            }
            for e in &g.edges {
                s.push_str(&format!("  v{} -- v{} [label=\"{} -> {}\"];\n", e.source, e.target, e.removed, e.added));
            }
            s.push_str("}\n");
            Ok(s.into_bytes())
        }
        GraphFormat::Json => {
            #[derive(Serialize)]
            struct Vert<'a> {
                id: String,
                arcs: &'a [Arc],
            }
            #[derive(Serialize)]
            struct Edge<'a> {
                source: String,
                target: String,
                removed: &'a Arc,
                added: &'a Arc,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                n: usize,
                vertices: Vec<Vert<'a>>,
                edges: Vec<Edge<'a>>,
            }
            let doc = Doc {
                n: g.n,
                vertices: g
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(i, t)| Vert { id: format!("v{i}"), arcs: t.arcs() })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| Edge {
                        source: format!("v{}", e.source),
                        target: format!("v{}", e.target),
                        removed: &e.removed,
                        added: &e.added,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec_pretty(&doc).expect("graph serializes");
            out.push(b'\n');
            Ok(out)
        }
    }
}

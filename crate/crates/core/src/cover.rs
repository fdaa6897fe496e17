//! Lifted triangulations in the universal cover of the double cover.
//!
//! The universal cover is the strip `ℝ × [-1, 1]`. Marked points sit at
//! even bottom positions and at top positions congruent to `n` mod 2, and the
//! deck group is generated by `(x, y) ↦ (x + n, -y)`. A triangulation without
//! the core curve lifts to a triangulation of this strip with all vertices on
//! its boundary, so its faces are exactly the 3-cycles of lifted edges. With
//! the core present, the region between the monogon lifts and the middle
//! line is not a triangle and contains no 3-cycle.

use std::collections::{BTreeMap, BTreeSet};

use crate::arc::{Arc, Circle, LiftedCurve, MarkedStrip};
use crate::enumeration::Triangulation;
use crate::flips::EdgeRef;

/// A marked point of the universal cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Vertex {
    pub circle: Circle,
    pub x: i64,
}

impl Vertex {
    fn new(circle: Circle, x: i64) -> Self {
        Vertex { circle, x }
    }

    /// Position along the boundary of the strip: bottom left to right, then
    /// top right to left. Sorting by this key gives the cyclic order.
    fn boundary_key(&self) -> (u8, i64) {
        match self.circle {
            Circle::Bottom => (0, self.x),
            Circle::Top => (1, -self.x),
        }
    }

    fn deck(&self, n: i64, k: i64) -> Vertex {
        let circle = if k.rem_euclid(2) == 0 { self.circle } else { self.circle.other() };
        Vertex::new(circle, self.x + n * k)
    }
}

fn cyclic(mut vs: Vec<Vertex>) -> Vec<Vertex> {
    vs.sort_by_key(Vertex::boundary_key);
    vs
}

const WINDOW: i64 = 3;

pub(crate) struct Cover {
    n: i64,
    edges: BTreeMap<(Vertex, Vertex), EdgeRef>,
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Endpoints of a lifted curve in the universal cover, for the lift that
/// starts in the fundamental window.
fn endpoints(strip: &MarkedStrip, c: &LiftedCurve) -> (Vertex, Vertex) {
    let len = strip.circumference();
    match *c {
        LiftedCurve::Chord { circle, u, v } => {
            (Vertex::new(circle, u), Vertex::new(circle, u + (v - u).rem_euclid(len)))
        }
        LiftedCurve::BasedLoop { circle, base } => (Vertex::new(circle, base), Vertex::new(circle, base + len)),
        LiftedCurve::Spanning { p, q } => (Vertex::new(Circle::Bottom, p), Vertex::new(Circle::Top, q)),
        LiftedCurve::CoreCircle => unreachable!("the core circle has no endpoints"),
    }
}

impl Cover {
    pub fn new(t: &Triangulation) -> Self {
        let strip = t.strip();
        let n = strip.n() as i64;
        let len = strip.circumference();
        let mut cover = Cover { n, edges: BTreeMap::new(), adj: BTreeMap::new() };
        let mut segments = Vec::new();
        for k in 0..strip.n() {
            let b = strip.bottom_pos(k);
            let top = strip.top_pos(k);
            segments.push((Vertex::new(Circle::Bottom, b), Vertex::new(Circle::Bottom, b + 2), EdgeRef::Boundary(k)));
            segments.push((Vertex::new(Circle::Top, top), Vertex::new(Circle::Top, top + 2), EdgeRef::Boundary(k)));
        }
        for a in t.arcs().iter().filter(|a| !a.is_core()) {
            for c in strip.lifts(a).expect("triangulation arcs are valid") {
                let (u, v) = endpoints(&strip, &c);
                segments.push((u, v, EdgeRef::Arc(*a)));
            }
        }
        for m in -WINDOW..=WINDOW {
            for &(u, v, e) in &segments {
                let (u, v) = (u.deck(n, 2 * m), v.deck(n, 2 * m));
                debug_assert_eq!(u.deck(n, 2).x - u.x, len);
                cover.edges.insert(key(u, v), e);
                cover.adj.entry(u).or_default().insert(v);
                cover.adj.entry(v).or_default().insert(u);
            }
        }
        cover
    }

    fn edge(&self, a: Vertex, b: Vertex) -> Option<EdgeRef> {
        self.edges.get(&key(a, b)).copied()
    }

    fn common_neighbours(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        match (self.adj.get(&a), self.adj.get(&b)) {
            (Some(x), Some(y)) => x.intersection(y).copied().collect(),
            _ => Vec::new(),
        }
    }

    /// Canonical member of the deck orbit of a triangle.
    fn normalize(&self, tri: &[Vertex]) -> Vec<Vertex> {
        let len = 2 * self.n;
        (-12..=12)
            .map(|k| cyclic(tri.iter().map(|v| v.deck(self.n, k)).collect()))
            .filter(|vs| {
                vs.iter()
                    .filter(|v| v.circle == Circle::Bottom)
                    .map(|v| v.x)
                    .min()
                    .is_some_and(|x| (0..len).contains(&x))
            })
            .min()
            .expect("some deck image has a bottom vertex in the window")
    }

    /// Downstairs triangles, each given by the cyclic list of its sides.
    pub fn triangles(&self) -> Vec<Vec<EdgeRef>> {
        let len = 2 * self.n;
        let mut reps = BTreeSet::new();
        for (&v, nbrs) in &self.adj {
            if v.circle != Circle::Bottom || !(0..len).contains(&v.x) {
                continue;
            }
            let nb: Vec<Vertex> = nbrs.iter().copied().collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if self.edge(a, b).is_some() {
                        reps.insert(self.normalize(&[v, a, b]));
                    }
                }
            }
        }
        reps.into_iter().map(|vs| self.sides(&vs)).collect()
    }

    fn sides(&self, vs: &[Vertex]) -> Vec<EdgeRef> {
        (0..vs.len()).map(|i| self.edge(vs[i], vs[(i + 1) % vs.len()]).expect("polygon side is an edge")).collect()
    }

    /// The quadrilateral around a lift of `arc`, as its four sides in cyclic
    /// order, starting after the first endpoint. `None` when the lift does
    /// not have a triangle on both sides.
    pub fn quadrilateral(&self, strip: &MarkedStrip, arc: &Arc) -> Option<Vec<EdgeRef>> {
        let lift = strip.lifts(arc).ok()?[0];
        let (u, v) = endpoints(strip, &lift);
        let apexes = self.common_neighbours(u, v);
        if apexes.len() != 2 {
            return None;
        }
        let quad = cyclic(vec![u, v, apexes[0], apexes[1]]);
        Some(self.sides(&quad))
    }

    /// The sides other than `arc` of the triangle on one side of its first
    /// lift, in cyclic order. Used for the monogon next to the core, where
    /// only one side is a triangle.
    pub fn outer_triangle(&self, strip: &MarkedStrip, arc: &Arc) -> Option<(EdgeRef, EdgeRef)> {
        let lift = strip.lifts(arc).ok()?[0];
        let (u, v) = endpoints(strip, &lift);
        let apexes = self.common_neighbours(u, v);
        let &[w] = apexes.as_slice() else {
            return None;
        };
        // u < w < v along the boundary
        Some((self.edge(u, w)?, self.edge(w, v)?))
    }
}

//! Seeds over triangulations and quasi-cluster mutation.
//!
//! A seed attaches one rational function to each arc of a triangulation.
//! Mutating at an arc flips it and computes the new variable from one of
//! four exchange relations, chosen from the local picture around the arc:
//!
//! * `ptolemy`: the arc is the diagonal of a quadrilateral with sides
//!   `a, b, c, d` in cyclic order, and `x_t x_t' = x_a x_c + x_b x_d`.
//! * `anti_self_folded`: the arc is the doubled side of a folded triangle
//!   whose third side is `a`, and `x_t x_t' = x_a`.
//! * `one_sided_curve`: the arc is the core curve inside the monogon `a`,
//!   and `x_t x_t' = x_a`.
//! * `crosscap_quad`: the arc is the monogon around the core curve `a`,
//!   with outer triangle sides `b, c`, and
//!   `x_t x_t' = (x_b + x_c)^2 + x_a^2 x_b x_c`.
//!
//! Boundary segment `k` carries the frozen coefficient `y_{k+1}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::algebra::{RationalFunction, Var};
use crate::arc::{Arc, MarkedStrip};
use crate::cover::Cover;
use crate::enumeration::{enumerate_triangulations, first_triangulation, Triangulation};
use crate::error::{domain, Error, Result};
use crate::flips::{faces, flip_unchecked, monogon_side, EdgeRef, FaceKind};

/// Largest `n` accepted by [`cluster_census`] unless a ceiling is given.
pub const CENSUS_CEILING: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Ptolemy,
    AntiSelfFolded,
    OneSidedCurve,
    CrosscapQuad,
}

impl RelationKind {
    pub fn roles(&self) -> &'static [Role] {
        match self {
            RelationKind::Ptolemy => &[Role::A, Role::B, Role::C, Role::D],
            RelationKind::AntiSelfFolded | RelationKind::OneSidedCurve => &[Role::A],
            RelationKind::CrosscapQuad => &[Role::A, Role::B, Role::C],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::Ptolemy => "ptolemy",
            RelationKind::AntiSelfFolded => "anti_self_folded",
            RelationKind::OneSidedCurve => "one_sided_curve",
            RelationKind::CrosscapQuad => "crosscap_quad",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    A,
    B,
    C,
    D,
}

/// An exchange relation with its roles bound to sides (`T = EdgeRef`) or to
/// values (`T = RationalFunction`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation<T> {
    pub kind: RelationKind,
    pub bindings: BTreeMap<Role, T>,
}

impl<T> Relation<T> {
    pub fn new(kind: RelationKind, bindings: impl IntoIterator<Item = (Role, T)>) -> Self {
        Relation { kind, bindings: bindings.into_iter().collect() }
    }

    pub fn get(&self, role: Role) -> Result<&T> {
        self.bindings
            .get(&role)
            .ok_or_else(|| Error::Domain(format!("{} relation is missing role {role:?}", self.kind)))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Relation<U> {
        Relation { kind: self.kind, bindings: self.bindings.iter().map(|(r, v)| (*r, f(v))).collect() }
    }
}

/// Picks the exchange relation for mutating `t` at `arc`.
pub fn classify_mutation(strip: &MarkedStrip, t: &Triangulation, arc: &Arc) -> Result<Relation<EdgeRef>> {
    let fs = faces(strip, t)?;
    if !t.contains(arc) {
        return domain(format!("{arc} is not in the triangulation {t}"));
    }
    classify_unchecked(strip, t, arc, &fs)
}

fn classify_unchecked(
    strip: &MarkedStrip,
    t: &Triangulation,
    arc: &Arc,
    fs: &[crate::flips::Face],
) -> Result<Relation<EdgeRef>> {
    use Role::*;
    let side = EdgeRef::Arc(*arc);
    if arc.is_core() {
        return Ok(Relation::new(RelationKind::OneSidedCurve, [(A, monogon_side(t))]));
    }
    let cover = Cover::new(t);
    if t.contains_core() && arc.monogon_point().is_some() {
        let (b, c) = cover
            .outer_triangle(strip, arc)
            .ok_or_else(|| Error::ModelViolation(format!("no triangle outside the monogon {arc} in {t}")))?;
        return Ok(Relation::new(RelationKind::CrosscapQuad, [(A, EdgeRef::Arc(Arc::Core)), (B, b), (C, c)]));
    }
    for f in fs.iter().filter(|f| f.kind == FaceKind::AntiSelfFolded) {
        if f.sides.iter().filter(|s| **s == side).count() == 2 {
            let third = *f.sides.iter().find(|s| **s != side).expect("folded triangle has a third side");
            return Ok(Relation::new(RelationKind::AntiSelfFolded, [(A, third)]));
        }
    }
    let quad = cover
        .quadrilateral(strip, arc)
        .ok_or_else(|| Error::ModelViolation(format!("{arc} in {t} is not the diagonal of a quadrilateral")))?;
    Ok(Relation::new(RelationKind::Ptolemy, [(A, quad[0]), (B, quad[1]), (C, quad[2]), (D, quad[3])]))
}

/// `x_t' = rhs / x_t` for a relation bound to values.
pub fn apply_relation(rel: &Relation<RationalFunction>, x_t: &RationalFunction) -> Result<RationalFunction> {
    use Role::*;
    let rhs = match rel.kind {
        RelationKind::Ptolemy => &(rel.get(A)? * rel.get(C)?) + &(rel.get(B)? * rel.get(D)?),
        RelationKind::AntiSelfFolded | RelationKind::OneSidedCurve => rel.get(A)?.clone(),
        RelationKind::CrosscapQuad => {
            let (a, b, c) = (rel.get(A)?, rel.get(B)?, rel.get(C)?);
            &(b + c).pow(2) + &(&a.pow(2) * &(b * c))
        }
    };
    rhs.checked_div(x_t)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub arc: Arc,
    pub variable: RationalFunction,
}

/// A triangulation with one variable per arc, kept in slot order. Mutation
/// replaces a slot's arc and variable in place, so slot `k` of the initial
/// seed holds `x_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Seed {
    n: usize,
    slots: Vec<Slot>,
    #[serde(skip)]
    triangulation: Triangulation,
}

impl Seed {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn slot_of(&self, arc: &Arc) -> Option<usize> {
        self.slots.iter().position(|s| s.arc == *arc)
    }

    pub fn variable(&self, arc: &Arc) -> Option<&RationalFunction> {
        self.slots.iter().find(|s| s.arc == *arc).map(|s| &s.variable)
    }

    /// The cluster as an unordered set of variables.
    pub fn cluster(&self) -> BTreeSet<RationalFunction> {
        self.slots.iter().map(|s| s.variable.clone()).collect()
    }

    /// Value of a side: the arc's variable or the segment's coefficient.
    pub fn value(&self, side: &EdgeRef) -> Option<RationalFunction> {
        match side {
            EdgeRef::Arc(a) => self.variable(a).cloned(),
            EdgeRef::Boundary(k) => Some(RationalFunction::var(Var::Y(*k as u16))),
        }
    }

    /// The initial cluster variables `x1..xn`.
    pub fn initial_vars(&self) -> BTreeSet<Var> {
        (0..self.n as u16).map(Var::X).collect()
    }
}

/// Seed with `arc_k ↦ x_{k+1}` in canonical arc order.
pub fn initial_seed(strip: &MarkedStrip, t: &Triangulation) -> Result<Seed> {
    if strip.n() != t.n() {
        return domain(format!("triangulation of M_{} used with M_{}", t.n(), strip.n()));
    }
    t.validate()?;
    let slots = t
        .arcs()
        .iter()
        .enumerate()
        .map(|(k, a)| Slot { arc: *a, variable: RationalFunction::var(Var::X(k as u16)) })
        .collect();
    Ok(Seed { n: t.n(), slots, triangulation: t.clone() })
}

/// The seed of the lexicographically first triangulation.
pub fn canonical_seed(strip: &MarkedStrip) -> Seed {
    initial_seed(strip, &first_triangulation(strip)).expect("greedy triangulation is valid")
}

/// One mutation, with the data needed to report it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub slot: usize,
    pub removed: Arc,
    pub added: Arc,
    pub relation: Relation<EdgeRef>,
    pub seed: Seed,
}

pub fn mutate(seed: &Seed, arc: &Arc) -> Result<Seed> {
    mutate_traced(seed, arc).map(|m| m.seed)
}

pub fn mutate_traced(seed: &Seed, arc: &Arc) -> Result<Mutation> {
    let slot = seed
        .slot_of(arc)
        .ok_or_else(|| Error::Domain(format!("{arc} is not in the triangulation {}", seed.triangulation)))?;
    let strip = MarkedStrip::new(seed.n)?;
    let t = &seed.triangulation;
    let fs = faces(&strip, t)?;
    let relation = classify_unchecked(&strip, t, arc, &fs)?;
    let values = relation.map(|side| seed.value(side).expect("faces only use arcs of the triangulation"));
    let variable = apply_relation(&values, &seed.slots[slot].variable)?;
    let (next, added) = flip_unchecked(&strip, t, arc)?;
    let mut slots = seed.slots.clone();
    slots[slot] = Slot { arc: added, variable };
    Ok(Mutation { slot, removed: *arc, added, relation, seed: Seed { n: seed.n, slots, triangulation: next } })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// 0-based slot index.
    Slot(usize),
    Arc(Arc),
}

/// Left fold of [`mutate`]; returns each mutation in order.
pub fn mutation_walk(seed: &Seed, steps: &[Step]) -> Result<Vec<Mutation>> {
    let mut current = seed.clone();
    let mut out = Vec::with_capacity(steps.len());
    for (pos, step) in steps.iter().enumerate() {
        let arc = match *step {
            Step::Slot(k) => match current.slots.get(k) {
                Some(s) => s.arc,
                None => {
                    return Err(Error::Usage(format!(
                        "step {}: slot {k} out of range for {} slots",
                        pos + 1,
                        current.slots.len()
                    )))
                }
            },
            Step::Arc(a) => {
                if current.slot_of(&a).is_none() {
                    return Err(Error::Usage(format!("step {}: {a} is not in the current triangulation", pos + 1)));
                }
                a
            }
        };
        let m = mutate_traced(&current, &arc)?;
        current = m.seed.clone();
        out.push(m);
    }
    Ok(out)
}

/// Final seed of a walk.
pub fn walk_end(seed: &Seed, steps: &[Step]) -> Result<Seed> {
    Ok(mutation_walk(seed, steps)?.pop().map_or_else(|| seed.clone(), |m| m.seed))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    /// Distinct triangulations reached.
    pub num_seeds: usize,
    /// Distinct clusters, as unordered variable sets.
    pub num_clusters: usize,
    pub num_variables: usize,
    pub all_laurent: bool,
    pub all_positive: bool,
    /// Every arc carries one variable and every variable one arc.
    pub arc_variable_bijection: bool,
    /// Clusters correspond one-to-one to triangulations and mutations to
    /// flips of the independently enumerated flip graph.
    pub exchange_graph_matches_flips: bool,
    /// Only checked in exhaustive mode; `true` otherwise.
    pub involutive: bool,
}

pub fn cluster_census(strip: &MarkedStrip, exhaustive: bool) -> Result<CensusReport> {
    cluster_census_with_ceiling(strip, exhaustive, CENSUS_CEILING)
}

/// Breadth-first closure of mutation from the canonical seed.
///
/// Every seed is mutated at every arc. In exhaustive mode each of those
/// mutations is also undone and compared with its source, and a seed
/// reached again is checked to carry the same cluster as before.
pub fn cluster_census_with_ceiling(strip: &MarkedStrip, exhaustive: bool, ceiling: usize) -> Result<CensusReport> {
    let n = strip.n();
    if n > ceiling {
        return Err(Error::Resource(format!("census at n = {n} exceeds the ceiling {ceiling}")));
    }
    let start = canonical_seed(strip);
    let allowed = start.initial_vars();
    let mut seeds: BTreeMap<Triangulation, Seed> = BTreeMap::new();
    let mut clusters: BTreeMap<BTreeSet<RationalFunction>, BTreeSet<Triangulation>> = BTreeMap::new();
    let mut arc_vars: BTreeMap<Arc, BTreeSet<RationalFunction>> = BTreeMap::new();
    let mut var_arcs: BTreeMap<RationalFunction, BTreeSet<Arc>> = BTreeMap::new();
    let mut exchange: BTreeSet<(BTreeSet<RationalFunction>, BTreeSet<RationalFunction>)> = BTreeSet::new();
    let mut involutive = true;

    let mut record = |s: &Seed| {
        for slot in &s.slots {
            arc_vars.entry(slot.arc).or_default().insert(slot.variable.clone());
            var_arcs.entry(slot.variable.clone()).or_default().insert(slot.arc);
        }
        clusters.entry(s.cluster()).or_default().insert(s.triangulation.clone());
    };
    record(&start);
    seeds.insert(start.triangulation.clone(), start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for slot in &s.slots {
            let m = mutate_traced(&s, &slot.arc)?;
            if exhaustive {
                involutive &= mutate(&m.seed, &m.added)? == s;
            }
            let (c1, c2) = (s.cluster(), m.seed.cluster());
            exchange.insert(if c1 <= c2 { (c1, c2) } else { (c2, c1) });
            if !seeds.contains_key(&m.seed.triangulation) {
                record(&m.seed);
                seeds.insert(m.seed.triangulation.clone(), m.seed.clone());
                queue.push_back(m.seed);
            } else if exhaustive {
                record(&m.seed);
            }
        }
    }

    let vars: Vec<&RationalFunction> = var_arcs.keys().collect();
    let arc_variable_bijection = arc_vars.values().all(|v| v.len() == 1) && var_arcs.values().all(|a| a.len() == 1);

    let graph_ok = 'graph: {
        if clusters.values().any(|ts| ts.len() != 1) || clusters.len() != seeds.len() {
            break 'graph false;
        }
        let tri_of = |c: &BTreeSet<RationalFunction>| clusters[c].iter().next().expect("non-empty").clone();
        let mapped: BTreeSet<(Triangulation, Triangulation)> = exchange
            .iter()
            .map(|(a, b)| {
                let (x, y) = (tri_of(a), tri_of(b));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        let all = enumerate_triangulations(strip);
        if all.len() != seeds.len() || all.iter().any(|t| !seeds.contains_key(t)) {
            break 'graph false;
        }
        let mut flips = BTreeSet::new();
        for t in &all {
            for a in t.arcs() {
                let (u, _) = flip_unchecked(strip, t, a)?;
                flips.insert(if *t <= u { (t.clone(), u) } else { (u, t.clone()) });
            }
        }
        mapped == flips
    };

    Ok(CensusReport {
        n,
        num_seeds: seeds.len(),
        num_clusters: clusters.len(),
        num_variables: vars.len(),
        all_laurent: vars.iter().all(|v| v.is_laurent_in(&allowed)),
        all_positive: vars.iter().all(|v| v.has_positive_expansion()),
        arc_variable_bijection,
        exchange_graph_matches_flips: graph_ok,
        involutive,
    })
}

//! Triangulations of the Möbius strip with `n` marked boundary points.
//!
//! The crate enumerates and counts triangulations of the strip, cross-checks
//! the counting recurrence and closed form against brute-force clique search,
//! and runs quasi-cluster mutation on the resulting seeds.
//!
//! Arcs are modelled on the orientation double cover of the strip, a flat
//! cylinder whose two boundary circles are swapped by the deck involution.
//! Compatibility of arcs is decided there with exact integer arithmetic.

pub mod algebra;
pub mod arc;
pub mod catalan;
pub mod cli;
pub mod cover;
pub mod enumeration;
mod error;
pub mod flips;
pub mod quasicluster;

pub use algebra::{Monomial, Poly, RationalFunction, Var};
pub use arc::{Arc, Circle, LiftedCurve, MarkedStrip};
pub use enumeration::{
    count_closed_form, count_recurrence, enumerate_triangulations, verify_counts, Triangulation, VerifyReport,
};
pub use error::{Error, Result};
pub use flips::{export_graph, faces, flip, flip_graph, EdgeRef, Face, FaceKind, FlipGraph, GraphFormat};
pub use quasicluster::{
    apply_relation, canonical_seed, classify_mutation, cluster_census, initial_seed, mutate, mutation_walk,
    CensusReport, Mutation, Relation, RelationKind, Role, Seed, Slot, Step,
};

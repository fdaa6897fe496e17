//! Acceptance checks, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mobius_core::catalan::{catalan, polygon_triangulations};
use mobius_core::enumeration::enumerate_triangulations;
use mobius_core::quasicluster::cluster_census;
use mobius_core::{
    apply_relation, count_closed_form, count_recurrence, flip_graph, initial_seed, mutation_walk, Arc, MarkedStrip,
    RationalFunction, Relation, RelationKind, Role, Step, Triangulation,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COUNT_BUDGET: Duration = Duration::from_secs(1);
const BRUTE_BUDGET: Duration = Duration::from_secs(60);
const CENSUS_BUDGET: Duration = Duration::from_secs(300);
const COUNT_RANGE: std::ops::RangeInclusive<u32> = 1..=10;
/// Brute force beyond the n <= 6 criterion, as a second oracle for the
/// larger counts.
const EXTRA_BRUTE: std::ops::RangeInclusive<usize> = 7..=9;
const RANDOM_WALKS: usize = 100;
const WALK_LENGTH: usize = 12;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn strip(n: usize) -> MarkedStrip {
    MarkedStrip::new(n).unwrap()
}

/// `4^(n-1) + binom(2n-2, n-1)` in machine integers, independent of the
/// big-integer code under test.
fn oracle_count(n: u32) -> u128 {
    let k = (n - 1) as u128;
    let binom = (1..=k).fold(1u128, |acc, i| acc * (k + i) / i);
    4u128.pow(n - 1) + binom
}

fn counting() -> Outcome {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mut seq = Vec::new();
    for n in COUNT_RANGE {
        let want = oracle_count(n);
        let closed = count_closed_form(n as i64).unwrap();
        let rec = count_recurrence(n as i64).unwrap();
        if closed != BigUint::from(want) || rec != closed {
            bad.push(format!("n={n}: closed {closed}, recurrence {rec}, expected {want}"));
        }
        seq.push(closed.to_string());
    }
    let dt = t0.elapsed();
    for n in EXTRA_BRUTE {
        let found = enumerate_triangulations(&strip(n)).len() as u128;
        if found != oracle_count(n as u32) {
            bad.push(format!("brute force n={n}: {found}"));
        }
    }
    outcome(
        bad.is_empty() && dt < COUNT_BUDGET,
        format!("{} in {dt:?}, brute force agrees for n={EXTRA_BRUTE:?} {}", seq.join(", "), bad.join("; ")),
    )
}

fn brute_force(all: &[Vec<Triangulation>], dt: Duration) -> Outcome {
    let mut bad = Vec::new();
    for (k, ts) in all.iter().enumerate() {
        let n = k as i64 + 1;
        let want = count_closed_form(n).unwrap();
        if BigUint::from(ts.len()) != want {
            bad.push(format!("n={n}: {} vs {want}", ts.len()));
        }
    }
    let sizes: Vec<usize> = all.iter().map(Vec::len).collect();
    outcome(bad.is_empty() && dt < BRUTE_BUDGET, format!("counts {sizes:?} in {dt:?} {}", bad.join("; ")))
}

fn structure(all: &[Vec<Triangulation>]) -> Outcome {
    let wrong: usize =
        all.iter().enumerate().map(|(k, ts)| ts.iter().filter(|t| t.arcs().len() != k + 1).count()).sum();
    let total: usize = all.iter().map(Vec::len).sum();
    outcome(wrong == 0, format!("{total} maximal sets for n<=6, {wrong} of the wrong size"))
}

fn catalan_identity() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=12i64 {
        let sum: BigUint = (0..=n - 2).map(|i| catalan(i).unwrap() * count_closed_form(n - i - 1).unwrap()).sum();
        let lhs = sum * 2u32;
        let rhs = BigUint::from(4u32).pow((n - 1) as u32);
        if lhs != rhs {
            bad.push(format!("n={n}: {lhs} vs {rhs}"));
        }
    }
    outcome(bad.is_empty(), format!("n=2..12 {}", bad.join("; ")))
}

fn polygons() -> Outcome {
    let mut bad = Vec::new();
    for m in 3..=12i64 {
        let ts = polygon_triangulations(m).unwrap();
        let want = catalan(m - 2).unwrap();
        let distinct: BTreeSet<_> = ts.iter().map(|t| t.diagonals.clone()).collect();
        if BigUint::from(ts.len()) != want || distinct.len() != ts.len() || !ts.iter().all(|t| t.is_valid()) {
            bad.push(format!("m={m}: {} vs {want}", ts.len()));
        }
    }
    let pentagon = polygon_triangulations(5).unwrap().len();
    outcome(bad.is_empty() && pentagon == 5, format!("m=3..12, pentagon {pentagon} {}", bad.join("; ")))
}

/// Counts completions directly from pairwise compatibility, independently of
/// the flip routine, then checks the flip graph.
fn flip_uniqueness(all: &[Vec<Triangulation>]) -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let s = strip(n);
        let inventory = s.all_arcs();
        for t in &all[n - 1] {
            for gone in t.arcs() {
                let rest: Vec<&Arc> = t.arcs().iter().filter(|a| *a != gone).collect();
                let completions = inventory
                    .iter()
                    .filter(|c| *c != gone && !rest.contains(c))
                    .filter(|c| rest.iter().all(|r| s.compatible(c, r).unwrap()))
                    .count();
                if completions != 1 {
                    bad.push(format!("{t} at {gone}: {completions}"));
                }
            }
        }
        let g = flip_graph(n).unwrap();
        let want = count_closed_form(n as i64).unwrap();
        if !g.is_regular(n) || !g.is_connected() || BigUint::from(g.vertices.len()) != want {
            bad.push(format!("flip graph n={n}"));
        }
    }
    bad.truncate(5);
    outcome(bad.is_empty(), format!("n<=5 {}", bad.join("; ")))
}

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

/// The walk on M₂ from the triangulation by the two one-sided arcs through
/// the marked point 0, mutating slots 1, 2, 1, 2.
fn m2_vectors() -> Outcome {
    let s = strip(2);
    let t =
        Triangulation::from_arcs(&s, [Arc::OneSided { i: 0, j: 0, w: 0 }, Arc::OneSided { i: 0, j: 1, w: 0 }]).unwrap();
    let seed = initial_seed(&s, &t).unwrap();
    let walk = mutation_walk(&seed, &[Step::Slot(0), Step::Slot(1), Step::Slot(0), Step::Slot(1)]).unwrap();
    let expected = [
        ("x1'", "(x2^2 + y1*y2)/x1"),
        ("x2'", "x1*(y1^2*y2 + y1*y2^2 + x2^2*y1 + x2^2*y2)/x2"),
        ("x1''", "x1^2*(y1 + y2)/x2"),
        ("x2''", "(y1 + y2)*(x1^4*y1*y2 + x2^2)/(x1*x2*(y1*y2 + x2^2))"),
    ];
    let mut mismatches = Vec::new();
    for (m, (name, want)) in walk.iter().zip(expected) {
        let got = &m.seed.slots()[m.slot].variable;
        if *got != rf(want) {
            mismatches.push(format!("{name} = {got}, expected {want}"));
        }
    }

    // each displayed value from its displayed predecessors
    let rel = |kind, b: &[(Role, &str)]| Relation::new(kind, b.iter().map(|&(r, v)| (r, rf(v))));
    let x1p = rf(expected[0].1);
    let x2p = rf(expected[1].1);
    let stepwise = [
        apply_relation(
            &rel(RelationKind::Ptolemy, &[(Role::A, "x2"), (Role::B, "y1"), (Role::C, "x2"), (Role::D, "y2")]),
            &rf("x1"),
        ),
        apply_relation(&rel(RelationKind::AntiSelfFolded, &[(Role::A, expected[1].1)]), &x1p),
        apply_relation(
            &rel(RelationKind::CrosscapQuad, &[(Role::A, expected[2].1), (Role::B, "y1"), (Role::C, "y2")]),
            &x2p,
        ),
    ];
    let relation_level = stepwise.iter().zip([0, 2, 3]).all(|(r, k)| r.as_ref().ok() == Some(&rf(expected[k].1)));
    outcome(
        mismatches.is_empty(),
        format!(
            "walk: {}; relations applied to the displayed predecessors: {}",
            if mismatches.is_empty() { "all four match".to_string() } else { mismatches.join("; ") },
            if relation_level { "match" } else { "differ" }
        ),
    )
}

fn mutation_properties() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3 {
        let r = cluster_census(&strip(n), true).unwrap();
        if !(r.involutive && r.all_laurent && r.all_positive) {
            bad.push(format!("closure n={n}: {r:?}"));
        }
    }
    let s = strip(4);
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_015);
    let mut checked = 0usize;
    for start in enumerate_triangulations(&s).iter().cycle().take(RANDOM_WALKS) {
        let seed = initial_seed(&s, start).unwrap();
        let allowed = seed.initial_vars();
        let steps: Vec<Step> = (0..WALK_LENGTH).map(|_| Step::Slot(rng.random_range(0..4))).collect();
        for m in mutation_walk(&seed, &steps).unwrap() {
            let v = &m.seed.slots()[m.slot].variable;
            checked += 1;
            if !v.is_laurent_in(&allowed) || !v.has_positive_expansion() {
                bad.push(format!("n=4 walk from {start}: {v}"));
            }
        }
    }
    bad.truncate(5);
    outcome(
        bad.is_empty(),
        format!(
            "closures n=1..3, {RANDOM_WALKS} walks of length {WALK_LENGTH} at n=4 ({checked} variables) {}",
            bad.join("; ")
        ),
    )
}

fn census() -> Outcome {
    let t0 = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 2..=3 {
        let r = cluster_census(&strip(n), true).unwrap();
        let want = count_closed_form(n as i64).unwrap();
        ok &= BigUint::from(r.num_clusters) == want
            && r.num_seeds == r.num_clusters
            && r.exchange_graph_matches_flips
            && r.arc_variable_bijection;
        parts.push(format!(
            "n={n}: {} clusters, {} variables, graph {}",
            r.num_clusters,
            r.num_variables,
            if r.exchange_graph_matches_flips { "matches" } else { "differs" }
        ));
    }
    let dt = t0.elapsed();
    outcome(ok && dt < CENSUS_BUDGET, format!("{} in {dt:?}", parts.join(", ")))
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let all: Vec<Vec<Triangulation>> = (1..=6).map(|n| enumerate_triangulations(&strip(n))).collect();
    let brute_time = t0.elapsed();

    let results = [
        ("counting", counting()),
        ("brute force", brute_force(&all, brute_time)),
        ("structure", structure(&all)),
        ("catalan identity", catalan_identity()),
        ("polygons", polygons()),
        ("flip uniqueness", flip_uniqueness(&all)),
        ("M2 vectors", m2_vectors()),
        ("mutation properties", mutation_properties()),
        ("census", census()),
    ];
    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        println!("{} {}. {name}: {}", if o.passed { "PASS" } else { "FAIL" }, k + 1, o.detail.trim_end());
        failed += usize::from(!o.passed);
    }
    println!("{} criteria, {failed} failed", results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

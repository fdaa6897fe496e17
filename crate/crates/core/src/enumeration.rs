//! Triangulations of `M_n`: brute-force enumeration and the two counting
//! formulas.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arc::{Arc, MarkedStrip};
use crate::catalan::{binomial, catalan_u};
use crate::error::{domain, Error, Result};

/// Default largest `n` for which brute-force enumeration is run.
pub const BRUTE_FORCE_CEILING: usize = 6;

/// A maximal set of pairwise compatible arcs, stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangulation {
    n: usize,
    arcs: Vec<Arc>,
}

impl Triangulation {
    /// Builds a triangulation, checking compatibility and maximality
    /// against the full arc inventory.
    pub fn from_arcs(strip: &MarkedStrip, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut v = Vec::new();
        for a in arcs {
            v.push(strip.canonicalize(&a)?);
        }
        v.sort();
        v.dedup();
        for (x, a) in v.iter().enumerate() {
            for b in &v[x + 1..] {
                if !strip.compatible(a, b)? {
                    return domain(format!("arcs {a} and {b} cross"));
                }
            }
        }
        for c in strip.all_arcs() {
            if v.binary_search(&c).is_err() && all_compatible(strip, &c, &v) {
                return domain(format!("not maximal: {c} can be added"));
            }
        }
        Ok(Triangulation { n: strip.n(), arcs: v })
    }

    /// Re-checks a triangulation obtained from outside (e.g. deserialized).
    pub fn validate(&self) -> Result<()> {
        let strip = MarkedStrip::new(self.n)?;
        let rebuilt = Triangulation::from_arcs(&strip, self.arcs.iter().copied())?;
        if rebuilt.arcs != self.arcs {
            return domain(format!("arcs of {self} are not in canonical form"));
        }
        Ok(())
    }

    pub(crate) fn new_unchecked(n: usize, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        Triangulation { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strip(&self) -> MarkedStrip {
        MarkedStrip::new(self.n).expect("n >= 1")
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    pub fn contains_core(&self) -> bool {
        self.arcs.last() == Some(&Arc::Core)
    }

    /// Position of `arc` in canonical order.
    pub fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.arcs.binary_search(arc).ok()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn all_compatible(strip: &MarkedStrip, c: &Arc, set: &[Arc]) -> bool {
    set.iter().all(|a| a != c && strip.compatible(a, c).expect("valid arcs"))
}

/// Bron–Kerbosch with pivoting over a bitset adjacency.
fn maximal_cliques(adj: &[FixedBitSet]) -> Vec<Vec<usize>> {
    fn expand(adj: &[FixedBitSet], r: &mut Vec<usize>, p: FixedBitSet, x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_clear() && x.is_clear() {
            out.push(r.clone());
            return;
        }
        let pivot =
            p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(&adj[u]).count()).expect("p or x is non-empty");
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
        for v in candidates {
            let mut np = p.clone();
            np.intersect_with(&adj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&adj[v]);
            r.push(v);
            expand(adj, r, np, nx, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
    let k = adj.len();
    let mut p = FixedBitSet::with_capacity(k);
    p.insert_range(..);
    let mut out = Vec::new();
    expand(adj, &mut Vec::new(), p, FixedBitSet::with_capacity(k), &mut out);
    out
}

/// Every triangulation of the strip, in canonical order.
pub fn enumerate_triangulations(strip: &MarkedStrip) -> Vec<Triangulation> {
    let arcs = strip.all_arcs();
    let compat = strip.compatibility_matrix(&arcs);
    let adj: Vec<FixedBitSet> = compat
        .iter()
        .map(|row| {
            let mut b = FixedBitSet::with_capacity(arcs.len());
            for (y, &c) in row.iter().enumerate() {
                b.set(y, c);
            }
            b
        })
        .collect();
    let mut out: Vec<Triangulation> = maximal_cliques(&adj)
        .into_iter()
        .map(|c| Triangulation::new_unchecked(strip.n(), c.into_iter().map(|i| arcs[i]).collect()))
        .collect();
    out.sort();
    out
}

/// The lexicographically smallest triangulation, built greedily.
pub fn first_triangulation(strip: &MarkedStrip) -> Triangulation {
    let mut chosen: Vec<Arc> = Vec::new();
    for a in strip.all_arcs() {
        if all_compatible(strip, &a, &chosen) {
            chosen.push(a);
        }
    }
    Triangulation::new_unchecked(strip.n(), chosen)
}

fn check_n(n: i64, what: &str) -> Result<usize> {
    if n <= 0 {
        return domain(format!("{what}: n must be positive, got {n}"));
    }
    Ok(n as usize)
}

fn recurrence_table() -> &'static RwLock<Vec<BigUint>> {
    static TABLE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    // index 0 is a placeholder so that t[n] = T_n
    TABLE.get_or_init(|| RwLock::new(vec![BigUint::zero(), BigUint::from(2u32)]))
}

/// `2 Σ_{i=0}^{n-2} C_i T_{n-i-1}`, the contribution of the two mirror
/// families of boundary triangles.
fn mirror_sum(t: &[BigUint], n: usize) -> BigUint {
    (0..=n.saturating_sub(2)).map(|i| catalan_u(i) * &t[n - i - 1]).sum::<BigUint>() * 2u32
}

/// `T_n` through the recurrence `T_n = 2 Σ C_i T_{n-i-1} + n C_{n-1}`,
/// `T_1 = 2`.
pub fn count_recurrence(n: i64) -> Result<BigUint> {
    let n = check_n(n, "count_recurrence")?;
    {
        let t = recurrence_table().read().expect("table poisoned");
        if let Some(v) = t.get(n) {
            return Ok(v.clone());
        }
    }
    let mut t = recurrence_table().write().expect("table poisoned");
    while t.len() <= n {
        let m = t.len();
        let through_crosscap = catalan_u(m - 1) * m;
        let next = mirror_sum(&t, m) + through_crosscap;
        t.push(next);
    }
    Ok(t[n].clone())
}

/// `T_n = 4^{n-1} + binomial(2n-2, n-1)`.
pub fn count_closed_form(n: i64) -> Result<BigUint> {
    let n = check_n(n, "count_closed_form")? as u64;
    let pow = BigUint::one() << (2 * (n - 1));
    Ok(pow + binomial(2 * n - 2, n - 1))
}

/// `2 Σ_{i=0}^{n-2} C_i T_{n-i-1}` evaluated from the recurrence values.
pub fn mirror_partial_sum(n: i64) -> Result<BigUint> {
    let n = check_n(n, "mirror_partial_sum")?;
    count_recurrence(n as i64)?;
    let t = recurrence_table().read().expect("table poisoned");
    Ok(if n < 2 { BigUint::zero() } else { mirror_sum(&t, n) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub n: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_counts`]; failures are entries, not errors.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, n: usize, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { n, name, passed, detail });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} n={} {}: {}", c.n, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Cross-checks recurrence, closed form, the mirror-sum identity and, up to
/// `brute_ceiling`, the brute-force enumeration.
pub fn verify_counts(n_max: usize, brute_ceiling: usize) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(Error::Domain("verify_counts: n_max must be at least 1".into()));
    }
    let mut report = VerifyReport::default();
    for n in 1..=n_max {
        let rec = count_recurrence(n as i64)?;
        let closed = count_closed_form(n as i64)?;
        report.push(n, "recurrence = closed form", rec == closed, format!("{rec} vs {closed}"));
        if n >= 2 {
            let sum = mirror_partial_sum(n as i64)?;
            let pow = BigUint::one() << (2 * (n - 1));
            report.push(n, "2·Σ C_i T_(n-i-1) = 4^(n-1)", sum == pow, format!("{sum} vs {pow}"));
        }
        if n <= brute_ceiling {
            let strip = MarkedStrip::new(n)?;
            let all = enumerate_triangulations(&strip);
            let brute = BigUint::from(all.len());
            report.push(
                n,
                "brute force = closed form",
                brute == closed,
                format!("{brute} enumerated over {} arcs", strip.all_arcs().len()),
            );
            let bad = all.iter().filter(|t| t.arcs().len() != n).count();
            report.push(n, "every triangulation has n arcs", bad == 0, format!("{bad} exceptions"));
        }
    }
    Ok(report)
}

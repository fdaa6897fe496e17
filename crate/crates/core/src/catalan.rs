//! Catalan numbers and triangulations of convex polygons.

use std::collections::BTreeSet;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

fn table() -> &'static RwLock<Vec<BigUint>> {
    static TABLE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

/// Binomial coefficient `n choose k`, exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn catalan_by_binomial(k: u64) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

/// The Catalan number `C_k`.
///
/// Values are memoized in a shared table filled by the convolution
/// recurrence; every new entry is checked against the binomial formula.
pub fn catalan(k: i64) -> Result<BigUint> {
    if k < 0 {
        return domain(format!("catalan: k must be non-negative, got {k}"));
    }
    let k = k as usize;
    {
        let t = table().read().expect("catalan table poisoned");
        if let Some(c) = t.get(k) {
            return Ok(c.clone());
        }
    }
    let mut t = table().write().expect("catalan table poisoned");
    while t.len() <= k {
        let m = t.len();
        let next: BigUint = (0..m).map(|i| &t[i] * &t[m - 1 - i]).sum();
        assert_eq!(next, catalan_by_binomial(m as u64), "Catalan paths disagree at {m}");
        t.push(next);
    }
    Ok(t[k].clone())
}

pub(crate) fn catalan_u(k: usize) -> BigUint {
    catalan(k as i64).expect("non-negative index")
}

/// Number of triangulations of a convex `m`-gon, `C_{m-2}`.
pub fn polygon_count(m: i64) -> Result<BigUint> {
    if m < 3 {
        return domain(format!("polygon_count: need at least 3 vertices, got {m}"));
    }
    catalan(m - 2)
}

/// A triangulation of a convex polygon with vertices labelled `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonTriangulation {
    pub m: usize,
    /// Diagonals `(i, j)` with `i < j`.
    pub diagonals: BTreeSet<(usize, usize)>,
}

impl PolygonTriangulation {
    /// Checks the diagonal count, that no diagonal is a side, and that no
    /// two diagonals cross.
    pub fn is_valid(&self) -> bool {
        let m = self.m;
        if m < 3 || self.diagonals.len() != m - 3 {
            return false;
        }
        let side = |i: usize, j: usize| j - i == 1 || (i == 1 && j == m);
        if self.diagonals.iter().any(|&(i, j)| i >= j || i < 1 || j > m || side(i, j)) {
            return false;
        }
        let d: Vec<_> = self.diagonals.iter().copied().collect();
        for (x, &(a, b)) in d.iter().enumerate() {
            for &(c, e) in &d[x + 1..] {
                let interleave = (a < c && c < b && b < e) || (c < a && a < e && e < b);
                if interleave {
                    return false;
                }
            }
        }
        true
    }
}

fn fill(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in lo + 1..hi {
        let left = fill(lo, i);
        let right = fill(i, hi);
        for l in &left {
            for r in &right {
                let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                if i - lo >= 2 {
                    d.push((lo, i));
                }
                if hi - i >= 2 {
                    d.push((i, hi));
                }
                d.extend_from_slice(l);
                d.extend_from_slice(r);
                out.push(d);
            }
        }
    }
    out
}

/// All triangulations of the convex `m`-gon.
///
/// Output order follows the decomposition on the triangle containing the
/// side `(1, m)`, with its apex ascending.
pub fn polygon_triangulations(m: i64) -> Result<Vec<PolygonTriangulation>> {
    if m < 3 {
        return domain(format!("polygon_triangulations: need at least 3 vertices, got {m}"));
    }
    let m = m as usize;
    Ok(fill(1, m).into_iter().map(|d| PolygonTriangulation { m, diagonals: d.into_iter().collect() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: count by the same split, but in machine integers
    fn catalan_oracle(k: usize) -> u128 {
        let mut c = vec![1u128];
        for m in 1..=k {
            c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
        }
        c[k]
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0).unwrap(), BigUint::from(1u32));
        assert_eq!(catalan(3).unwrap(), BigUint::from(5u32));
        assert_eq!(catalan(5).unwrap(), BigUint::from(42u32));
        assert_eq!(catalan_oracle(5), 42);
        assert!(catalan(-1).is_err());
    }

    #[test]
    fn catalan_ratio_recurrence() {
        for k in 1..=30u64 {
            let lhs = catalan(k as i64).unwrap() * (k + 1);
            let rhs = catalan(k as i64 - 1).unwrap() * (4 * k - 2);
            assert_eq!(lhs, rhs, "k = {k}");
            assert_eq!(catalan(k as i64).unwrap(), BigUint::from(catalan_oracle(k as usize)));
        }
    }

    #[test]
    fn catalan_is_exact_beyond_u64() {
        // C_40 = 2622127042276492108820 > u64::MAX
        assert_eq!(catalan(40).unwrap().to_string(), "2622127042276492108820");
    }

    #[test]
    fn polygon_counts() {
        assert_eq!(polygon_count(3).unwrap(), BigUint::from(1u32));
        assert_eq!(polygon_count(5).unwrap(), BigUint::from(5u32));
        assert_eq!(polygon_count(12).unwrap(), BigUint::from(16796u32));
        assert_eq!(catalan_oracle(10), 16796);
        assert!(polygon_count(2).is_err());
        assert!(polygon_triangulations(2).is_err());
    }

    #[test]
    fn square_has_two() {
        let t = polygon_triangulations(4).unwrap();
        let sets: Vec<Vec<(usize, usize)>> = t.iter().map(|p| p.diagonals.iter().copied().collect()).collect();
        assert_eq!(sets, vec![vec![(2, 4)], vec![(1, 3)]]);
    }

    #[test]
    fn octagon_has_132() {
        let t = polygon_triangulations(8).unwrap();
        assert_eq!(t.len(), 132);
        assert_eq!(catalan_oracle(6), 132);
    }

    #[test]
    fn enumeration_matches_count_and_is_valid() {
        for m in 3..=12i64 {
            let t = polygon_triangulations(m).unwrap();
            assert_eq!(BigUint::from(t.len()), polygon_count(m).unwrap(), "m = {m}");
            let distinct: BTreeSet<_> = t.iter().collect();
            assert_eq!(distinct.len(), t.len());
            assert!(t.iter().all(PolygonTriangulation::is_valid));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(100, 49).to_string(), "98913082887808032681188722800");
    }
}

//! Arcs of the Möbius strip and their compatibility.
//!
//! The strip `M_n` is the quotient of a flat cylinder by the deck involution
//! `σ`, which swaps the two boundary circles and rotates by half a turn. Each
//! boundary circle has circumference `2n`; marked point `k` lifts to position
//! `2k` on the bottom circle and to `(2k + n) mod 2n` on the top circle.
//!
//! Every arc lifts to a σ-orbit of curves on the cylinder, and two arcs are
//! compatible exactly when their lifts can be drawn disjointly. The crossing
//! count between two lifted curves is given by a small case table over
//! integer coordinates, so the whole model is exact.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// One isotopy class of arcs on `M_n`.
///
/// The derived order (two-sided, then one-sided, then the core curve, each
/// lexicographic in its fields) is the canonical arc order used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Arc {
    /// Cuts off the clockwise-open run of marked points strictly between `a`
    /// and `b` into a disk. `a == b` is the monogon around the cross-cap.
    TwoSided { a: usize, b: usize },
    /// Passes once through the cross-cap, from `i` to `j`, with winding `w`
    /// of its lift.
    OneSided { i: usize, j: usize, w: i64 },
    /// The one-sided closed curve.
    Core,
}

impl Arc {
    pub fn is_core(&self) -> bool {
        matches!(self, Arc::Core)
    }

    /// `Some(a)` for the monogon `TwoSided(a, a)`.
    pub fn monogon_point(&self) -> Option<usize> {
        match *self {
            Arc::TwoSided { a, b } if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::TwoSided { a, b } => write!(f, "two_sided({a},{b})"),
            Arc::OneSided { i, j, w } => write!(f, "one_sided({i},{j},{w})"),
            Arc::Core => write!(f, "core"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Circle {
    Bottom,
    Top,
}

impl Circle {
    pub fn other(self) -> Circle {
        match self {
            Circle::Bottom => Circle::Top,
            Circle::Top => Circle::Bottom,
        }
    }
}

/// A curve on the double-cover cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftedCurve {
    /// Cuts off the open interval `(u, v)` (clockwise) of one circle.
    Chord { circle: Circle, u: i64, v: i64 },
    /// An essential loop attached to one boundary point.
    BasedLoop { circle: Circle, base: i64 },
    /// Runs from bottom position `p` to the top; `q` is the top endpoint
    /// lifted to the universal cover, so `q - p` records the winding.
    /// Normalized with `0 <= p < 2n`.
    Spanning { p: i64, q: i64 },
    /// The middle circle, the lift of the core curve.
    CoreCircle,
}

/// The Möbius strip with `n` marked points on its boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MarkedStrip {
    n: usize,
}

fn strictly_inside(x: i64, u: i64, v: i64, len: i64) -> bool {
    let off = (x - u).rem_euclid(len);
    off > 0 && off < (v - u).rem_euclid(len)
}

impl MarkedStrip {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("a Möbius strip needs at least one marked point");
        }
        Ok(MarkedStrip { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Circumference of each boundary circle of the cylinder.
    pub fn circumference(&self) -> i64 {
        2 * self.n as i64
    }

    pub fn bottom_pos(&self, k: usize) -> i64 {
        2 * k as i64
    }

    pub fn top_pos(&self, k: usize) -> i64 {
        (2 * k as i64 + self.n as i64).rem_euclid(self.circumference())
    }

    fn point_of_top(&self, pos: i64) -> usize {
        ((pos - self.n as i64).rem_euclid(self.circumference()) / 2) as usize
    }

    fn spanning(&self, p: i64, q: i64) -> LiftedCurve {
        let shift = p.div_euclid(self.circumference()) * self.circumference();
        LiftedCurve::Spanning { p: p - shift, q: q - shift }
    }

    /// The deck involution.
    pub fn sigma(&self, c: &LiftedCurve) -> LiftedCurve {
        let n = self.n as i64;
        let len = self.circumference();
        match *c {
            LiftedCurve::Chord { circle, u, v } => {
                LiftedCurve::Chord { circle: circle.other(), u: (u + n).rem_euclid(len), v: (v + n).rem_euclid(len) }
            }
            LiftedCurve::BasedLoop { circle, base } => {
                LiftedCurve::BasedLoop { circle: circle.other(), base: (base + n).rem_euclid(len) }
            }
            LiftedCurve::Spanning { p, q } => self.spanning(q + n, p + n),
            LiftedCurve::CoreCircle => LiftedCurve::CoreCircle,
        }
    }

    fn check_point(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return domain(format!("marked point {k} out of range for n = {}", self.n));
        }
        Ok(())
    }

    fn one_sided_lift(&self, i: usize, j: usize, w: i64) -> LiftedCurve {
        LiftedCurve::Spanning { p: self.bottom_pos(i), q: self.top_pos(j) + self.circumference() * w }
    }

    fn one_sided_from_lift(&self, c: &LiftedCurve) -> Arc {
        let LiftedCurve::Spanning { p, q } = *c else {
            unreachable!("not a spanning curve");
        };
        let len = self.circumference();
        let i = (p / 2) as usize;
        let j = self.point_of_top(q);
        let w = (q - self.top_pos(j)).div_euclid(len);
        Arc::OneSided { i, j, w }
    }

    /// Checks that `arc` describes an arc of this strip.
    pub fn validate(&self, arc: &Arc) -> Result<()> {
        match *arc {
            Arc::TwoSided { a, b } => {
                self.check_point(a)?;
                self.check_point(b)?;
                let gap = if a == b { self.n } else { (b + self.n - a) % self.n };
                if gap < 2 {
                    return domain(format!("{arc} cuts off no marked point"));
                }
                Ok(())
            }
            Arc::OneSided { i, j, w } => {
                self.check_point(i)?;
                self.check_point(j)?;
                let lift = self.one_sided_lift(i, j, w);
                if self.lifted_crossing(&lift, &self.sigma(&lift))? != 0 {
                    return domain(format!("{arc} is not simple on the strip"));
                }
                Ok(())
            }
            Arc::Core => Ok(()),
        }
    }

    /// Unique representative of the isotopy class of `arc`.
    ///
    /// One-sided arcs have two descriptions, one per lift; the one with the
    /// smallest `(i, j, |w|, w)` is kept.
    pub fn canonicalize(&self, arc: &Arc) -> Result<Arc> {
        self.validate(arc)?;
        match *arc {
            Arc::OneSided { i, j, w } => {
                let lift = self.one_sided_lift(i, j, w);
                let other = self.one_sided_from_lift(&self.sigma(&lift));
                let key = |a: &Arc| match *a {
                    Arc::OneSided { i, j, w } => (i, j, w.abs(), w),
                    _ => unreachable!(),
                };
                Ok(if key(&other) < key(arc) { other } else { *arc })
            }
            _ => Ok(*arc),
        }
    }

    /// The full arc inventory in canonical order.
    pub fn all_arcs(&self) -> Vec<Arc> {
        let n = self.n;
        let mut arcs = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let arc = Arc::TwoSided { a, b };
                if self.validate(&arc).is_ok() {
                    arcs.insert(arc);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for w in -3..=3i64 {
                    let arc = Arc::OneSided { i, j, w };
                    if self.validate(&arc).is_ok() {
                        assert!(w.abs() <= 1, "unexpected valid winding {arc}");
                        arcs.insert(self.canonicalize(&arc).expect("validated"));
                    }
                }
            }
        }
        arcs.insert(Arc::Core);
        arcs.into_iter().collect()
    }

    /// The lifts of `arc`: a σ-pair, or the single middle circle for the core.
    pub fn lifts(&self, arc: &Arc) -> Result<Vec<LiftedCurve>> {
        self.validate(arc)?;
        let first = match *arc {
            Arc::TwoSided { a, b } if a == b => {
                LiftedCurve::BasedLoop { circle: Circle::Bottom, base: self.bottom_pos(a) }
            }
            Arc::TwoSided { a, b } => {
                LiftedCurve::Chord { circle: Circle::Bottom, u: self.bottom_pos(a), v: self.bottom_pos(b) }
            }
            Arc::OneSided { i, j, w } => self.one_sided_lift(i, j, w),
            Arc::Core => return Ok(vec![LiftedCurve::CoreCircle]),
        };
        Ok(vec![first, self.sigma(&first)])
    }

    fn endpoint_on(&self, c: Circle, p: i64, q: i64) -> i64 {
        match c {
            Circle::Bottom => p.rem_euclid(self.circumference()),
            Circle::Top => q.rem_euclid(self.circumference()),
        }
    }

    /// Minimal number of crossings between two curves on the cylinder.
    ///
    /// Shared endpoints never count. Asking for two copies of the middle
    /// circle is an error.
    pub fn lifted_crossing(&self, c1: &LiftedCurve, c2: &LiftedCurve) -> Result<u32> {
        use LiftedCurve::*;
        let len = self.circumference();
        let rank = |c: &LiftedCurve| match c {
            Chord { .. } => 0,
            BasedLoop { .. } => 1,
            Spanning { .. } => 2,
            CoreCircle => 3,
        };
        let (c1, c2) = if rank(c1) <= rank(c2) { (c1, c2) } else { (c2, c1) };
        let x = match (*c1, *c2) {
            (Chord { circle: k1, u: u1, v: v1 }, Chord { circle: k2, u: u2, v: v2 }) => {
                if k1 != k2 {
                    0
                } else {
                    // cut-off intervals must be nested or disjoint
                    let l1 = (v1 - u1).rem_euclid(len);
                    let l2 = (v2 - u2).rem_euclid(len);
                    let o12 = (u2 - u1).rem_euclid(len);
                    let o21 = (u1 - u2).rem_euclid(len);
                    let first_in_second = o21 + l1 <= l2;
                    let second_in_first = o12 + l2 <= l1;
                    let disjoint = o12 >= l1 && o21 >= l2;
                    if first_in_second || second_in_first || disjoint {
                        0
                    } else {
                        1
                    }
                }
            }
            (Chord { circle, u, v }, BasedLoop { circle: lc, base }) => {
                if circle == lc && strictly_inside(base, u, v, len) {
                    2
                } else {
                    0
                }
            }
            (Chord { circle, u, v }, Spanning { p, q }) => {
                u32::from(strictly_inside(self.endpoint_on(circle, p, q), u, v, len))
            }
            (Chord { .. }, CoreCircle) | (BasedLoop { .. }, CoreCircle) => 0,
            (BasedLoop { circle: k1, base: b1 }, BasedLoop { circle: k2, base: b2 }) => {
                if k1 == k2 && b1.rem_euclid(len) != b2.rem_euclid(len) {
                    2
                } else {
                    0
                }
            }
            (BasedLoop { circle, base }, Spanning { p, q }) => {
                u32::from(self.endpoint_on(circle, p, q) != base.rem_euclid(len))
            }
            (Spanning { p, q }, Spanning { p: r, q: s }) => {
                // translates r + len*k whose endpoints strictly interleave
                let (d1, d2) = (p - r, q - s);
                let (lo, hi) = (d1.min(d2), d1.max(d2));
                if hi > lo {
                    ((hi - 1).div_euclid(len) - lo.div_euclid(len)) as u32
                } else {
                    0
                }
            }
            (Spanning { .. }, CoreCircle) => 1,
            (CoreCircle, CoreCircle) => {
                return domain("crossing of the core circle with itself is undefined");
            }
            _ => unreachable!("pairs are ordered by rank"),
        };
        Ok(x)
    }

    /// Minimal number of crossings between two distinct arcs on the strip.
    pub fn crossing_number(&self, a: &Arc, b: &Arc) -> Result<u32> {
        if a == b {
            return domain(format!("crossing_number of {a} with itself"));
        }
        let (a, b) = if a.is_core() { (b, a) } else { (a, b) };
        let alpha = self.lifts(a)?[0];
        if b.is_core() {
            return self.lifted_crossing(&alpha, &LiftedCurve::CoreCircle);
        }
        let mut total = 0;
        for beta in self.lifts(b)? {
            total += self.lifted_crossing(&alpha, &beta)?;
        }
        Ok(total)
    }

    pub fn compatible(&self, a: &Arc, b: &Arc) -> Result<bool> {
        Ok(self.crossing_number(a, b)? == 0)
    }

    /// Image of `arc` under the reflection `k ↦ n - 1 - k` of the marked points.
    pub fn mirror(&self, arc: &Arc) -> Result<Arc> {
        self.validate(arc)?;
        let m = |k: usize| self.n - 1 - k;
        match *arc {
            Arc::TwoSided { a, b } => Ok(Arc::TwoSided { a: m(b), b: m(a) }),
            Arc::OneSided { i, j, w } => {
                let LiftedCurve::Spanning { p, q } = self.one_sided_lift(i, j, w) else { unreachable!() };
                let c = 2 * (self.n as i64 - 1);
                let image = self.spanning(c - p, c - q);
                self.canonicalize(&self.one_sided_from_lift(&image))
            }
            Arc::Core => Ok(Arc::Core),
        }
    }

    /// Dense compatibility matrix over `arcs`.
    pub(crate) fn compatibility_matrix(&self, arcs: &[Arc]) -> Vec<Vec<bool>> {
        let k = arcs.len();
        let mut m = vec![vec![false; k]; k];
        for x in 0..k {
            for y in x + 1..k {
                let c = self.compatible(&arcs[x], &arcs[y]).expect("inventory arcs are valid");
                m[x][y] = c;
                m[y][x] = c;
            }
        }
        m
    }
}

impl TryFrom<usize> for MarkedStrip {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        MarkedStrip::new(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strip(n: usize) -> MarkedStrip {
        MarkedStrip::new(n).unwrap()
    }

    fn two(a: usize, b: usize) -> Arc {
        Arc::TwoSided { a, b }
    }

    fn one(i: usize, j: usize, w: i64) -> Arc {
        Arc::OneSided { i, j, w }
    }

    #[test]
    fn inventory_small() {
        assert_eq!(strip(1).all_arcs(), vec![one(0, 0, 0), Arc::Core]);
        assert_eq!(
            strip(2).all_arcs(),
            vec![two(0, 0), two(1, 1), one(0, 0, 0), one(0, 1, 0), one(1, 1, 0), Arc::Core]
        );
        assert_eq!(strip(3).all_arcs().len(), 13);
    }

    #[test]
    fn inventory_size_formula() {
        for n in 1..=6 {
            let arcs = strip(n).all_arcs();
            assert_eq!(arcs.len(), (3 * n * n - n) / 2 + 1, "n = {n}");
            let one_sided = arcs.iter().filter(|a| matches!(a, Arc::OneSided { .. })).count();
            assert_eq!(one_sided, n * (n + 1) / 2);
        }
    }

    #[test]
    fn no_two_sided_arcs_for_one_point() {
        let s = strip(1);
        assert!(s.validate(&two(0, 0)).is_err());
        assert!(s.all_arcs().iter().all(|a| !matches!(a, Arc::TwoSided { .. })));
        assert!(MarkedStrip::new(0).is_err());
    }

    #[test]
    fn lifts_examples() {
        let s = strip(2);
        assert_eq!(
            s.lifts(&two(0, 0)).unwrap(),
            vec![
                LiftedCurve::BasedLoop { circle: Circle::Bottom, base: 0 },
                LiftedCurve::BasedLoop { circle: Circle::Top, base: 2 },
            ]
        );
        assert_eq!(
            s.lifts(&one(0, 0, 0)).unwrap(),
            vec![LiftedCurve::Spanning { p: 0, q: 2 }, LiftedCurve::Spanning { p: 0, q: -2 }]
        );
        let s3 = strip(3);
        assert_eq!(
            s3.lifts(&two(0, 2)).unwrap(),
            vec![
                LiftedCurve::Chord { circle: Circle::Bottom, u: 0, v: 4 },
                LiftedCurve::Chord { circle: Circle::Top, u: 3, v: 1 },
            ]
        );
        assert_eq!(s3.lifts(&Arc::Core).unwrap(), vec![LiftedCurve::CoreCircle]);
        assert!(s3.lifts(&two(0, 1)).is_err());
    }

    #[test]
    fn lifted_crossing_examples() {
        let s = strip(2);
        let sp = LiftedCurve::Spanning { p: 0, q: 2 };
        assert_eq!(s.lifted_crossing(&sp, &LiftedCurve::CoreCircle).unwrap(), 1);
        let l0 = LiftedCurve::BasedLoop { circle: Circle::Bottom, base: 0 };
        let l2 = LiftedCurve::BasedLoop { circle: Circle::Bottom, base: 2 };
        assert_eq!(s.lifted_crossing(&l0, &l2).unwrap(), 2);
        assert_eq!(s.lifted_crossing(&sp, &s.sigma(&sp)).unwrap(), 0);
        assert!(s.lifted_crossing(&LiftedCurve::CoreCircle, &LiftedCurve::CoreCircle).is_err());
    }

    #[test]
    fn chords_sharing_an_endpoint_can_cross() {
        // (0,2) cuts off point 1, (1,0) cuts off point 2: overlapping, not nested
        let s = strip(3);
        assert_eq!(s.crossing_number(&two(0, 2), &two(1, 0)).unwrap(), 1);
        // complementary cut-offs with the same endpoints coexist
        let s4 = strip(4);
        assert!(s4.compatible(&two(0, 2), &two(2, 0)).unwrap());
        assert!(s4.compatible(&two(0, 3), &two(0, 2)).unwrap());
    }

    #[test]
    fn crossing_number_examples() {
        let s = strip(2);
        assert_eq!(s.crossing_number(&two(0, 0), &one(0, 0, 0)).unwrap(), 0);
        assert_eq!(s.crossing_number(&two(0, 0), &two(1, 1)).unwrap(), 2);
        assert!(s.crossing_number(&Arc::Core, &Arc::Core).is_err());
        assert!(s.compatible(&two(0, 0), &Arc::Core).unwrap());
        assert!(!s.compatible(&two(0, 0), &one(1, 1, 0)).unwrap());
        for n in 1..=5 {
            let s = strip(n);
            for a in s.all_arcs() {
                if let Arc::OneSided { .. } = a {
                    assert_eq!(s.crossing_number(&Arc::Core, &a).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let s = strip(2);
        assert_eq!(s.canonicalize(&one(0, 0, -1)).unwrap(), one(0, 0, 0));
        assert_eq!(s.canonicalize(&one(1, 0, 0)).unwrap(), one(0, 1, 0));
        assert_eq!(s.canonicalize(&two(0, 0)).unwrap(), two(0, 0));
        assert!(s.canonicalize(&one(0, 0, 2)).is_err());
        for n in 1..=4 {
            let s = strip(n);
            for a in s.all_arcs() {
                let c = s.canonicalize(&a).unwrap();
                assert_eq!(c, a);
                assert_eq!(s.canonicalize(&c).unwrap(), c);
            }
        }
    }

    #[test]
    fn symmetric_crossings() {
        for n in 1..=5 {
            let s = strip(n);
            let arcs = s.all_arcs();
            for a in &arcs {
                for b in &arcs {
                    if a != b {
                        assert_eq!(s.crossing_number(a, b).unwrap(), s.crossing_number(b, a).unwrap(), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn core_compatibility() {
        for n in 1..=5 {
            let s = strip(n);
            for a in s.all_arcs() {
                match a {
                    Arc::OneSided { .. } => assert!(!s.compatible(&a, &Arc::Core).unwrap()),
                    Arc::TwoSided { .. } => assert!(s.compatible(&a, &Arc::Core).unwrap()),
                    Arc::Core => {}
                }
            }
        }
    }

    #[test]
    fn inventory_one_sided_lifts_are_simple() {
        for n in 1..=6 {
            let s = strip(n);
            for a in s.all_arcs() {
                if let Arc::OneSided { .. } = a {
                    let l = s.lifts(&a).unwrap();
                    assert_eq!(s.lifted_crossing(&l[0], &l[1]).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn mirror_is_an_involution_preserving_crossings() {
        for n in 1..=5 {
            let s = strip(n);
            let arcs = s.all_arcs();
            let image: BTreeSet<_> = arcs.iter().map(|a| s.mirror(a).unwrap()).collect();
            assert_eq!(image.len(), arcs.len());
            for a in &arcs {
                assert_eq!(s.mirror(&s.mirror(a).unwrap()).unwrap(), *a);
                for b in &arcs {
                    if a != b {
                        let (ma, mb) = (s.mirror(a).unwrap(), s.mirror(b).unwrap());
                        assert_eq!(s.crossing_number(a, b).unwrap(), s.crossing_number(&ma, &mb).unwrap());
                    }
                }
            }
        }
    }

    fn curves(s: &MarkedStrip) -> Vec<LiftedCurve> {
        s.all_arcs().iter().flat_map(|a| s.lifts(a).unwrap()).collect()
    }

    #[test]
    fn sigma_preserves_lifted_crossings() {
        for n in 1..=4 {
            let s = strip(n);
            let cs = curves(&s);
            for c1 in &cs {
                assert_eq!(s.sigma(&s.sigma(c1)), *c1);
                for c2 in &cs {
                    if *c1 == LiftedCurve::CoreCircle && *c2 == LiftedCurve::CoreCircle {
                        continue;
                    }
                    assert_eq!(
                        s.lifted_crossing(c1, c2).unwrap(),
                        s.lifted_crossing(&s.sigma(c1), &s.sigma(c2)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn json_encoding() {
        let j = serde_json::to_string(&two(0, 2)).unwrap();
        assert_eq!(j, r#"{"type":"two_sided","a":0,"b":2}"#);
        assert_eq!(serde_json::to_string(&one(0, 1, 0)).unwrap(), r#"{"type":"one_sided","i":0,"j":1,"w":0}"#);
        assert_eq!(serde_json::to_string(&Arc::Core).unwrap(), r#"{"type":"core"}"#);
        let back: Arc = serde_json::from_str(r#"{"type":"one_sided","i":0,"j":1,"w":0}"#).unwrap();
        assert_eq!(back, one(0, 1, 0));
    }

    proptest! {
        #[test]
        fn spanning_count_matches_brute_force(p in 0i64..12, q in -20i64..20, r in 0i64..12, s in -20i64..20) {
            let st = strip(6);
            let len = st.circumference();
            let brute = (-10..=10)
                .filter(|k| (p - r - len * k) * (q - s - len * k) < 0)
                .count() as u32;
            let got = st
                .lifted_crossing(&LiftedCurve::Spanning { p, q }, &LiftedCurve::Spanning { p: r, q: s })
                .unwrap();
            prop_assert_eq!(got, brute);
        }
    }
}

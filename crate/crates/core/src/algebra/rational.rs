use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{gcd, Monomial, Poly, Var};
use crate::error::{domain, Result};

/// A reduced quotient of polynomials.
///
/// Canonical form: numerator and denominator have non-negative exponents
/// and no common factor, and the denominator has a positive leading
/// coefficient. Equal functions therefore compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return domain("zero denominator");
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        Self::from(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from(Poly::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from(Poly::var(v))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        // clear negative exponents on both sides at once
        let lift = Monomial::from_exponents(
            num.monomial_content()
                .meet(&Monomial::one())
                .exponents()
                .iter()
                .chain(den.monomial_content().meet(&Monomial::one()).exponents())
                .map(|&(v, e)| (v, -e)),
        );
        if !lift.is_one() {
            num = num.mul_monomial(&lift);
            den = den.mul_monomial(&lift);
        }
        let common = num.monomial_content().meet(&den.monomial_content());
        if !common.is_one() {
            let inv = Monomial::one().div(&common);
            num = num.mul_monomial(&inv);
            den = den.mul_monomial(&inv);
        }
        let k: BigInt = num.integer_content().gcd(&den.integer_content());
        if !k.is_one() {
            num = num.div_integer(&k);
            den = den.div_integer(&k);
        }
        if den.as_monomial().is_none() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = Poly::one();
            } else {
                let g = gcd(&num, &den);
                if !g.is_constant() {
                    num = num.exact_div(&g).expect("gcd divides numerator");
                    den = den.exact_div(&g).expect("gcd divides denominator");
                }
            }
        }
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    /// True when the denominator is a single monomial whose variables all
    /// lie in `allowed` or are coefficients.
    pub fn is_laurent_in(&self, allowed: &BTreeSet<Var>) -> bool {
        match self.den.as_monomial() {
            Some((m, _)) => m.vars().all(|v| v.is_coefficient() || allowed.contains(&v)),
            None => false,
        }
    }

    /// Laurent with all numerator coefficients positive (the denominator of a
    /// Laurent form is then a positive monomial by normalization).
    pub fn has_positive_expansion(&self) -> bool {
        self.den.as_monomial().is_some_and(|(_, c)| c.is_one()) && self.num.all_coefficients_positive()
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return domain("division by zero");
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Parses expressions such as `(x2^2 + y1*y2)*(y1 + y2)/(x1*x2)`.
    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse(s)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::reduce(p, Poly::one())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let bare = self.den.as_monomial().is_some_and(|(m, c)| c.is_one() && m.exponents().len() == 1);
        if bare {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs.clone()
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(rf("(x1^2 - y1^2)/(x1 + y1)"), rf("x1 - y1"));
        assert_eq!(rf("(2*x1)/(-4*x2)").to_string(), "-x1/(2*x2)");
        assert_eq!(rf("x1/x1"), RationalFunction::one());
        assert_eq!(rf("x1^(-1)"), rf("1/x1"));
        assert_eq!(rf("(x1*x2 + x2*y1)/(x1*y2 + y1*y2)"), rf("x2/y2"));
        assert_eq!(rf("1/x1 + 1/x2").to_string(), "(x1 + x2)/(x1*x2)");
        assert!(RationalFunction::new(Poly::one(), Poly::zero()).is_err());
        let x1x2 = &Poly::x(0) * &Poly::x(1);
        assert_eq!(RationalFunction::new(x1x2, Poly::x(0)).unwrap(), rf("x2"));
        assert_eq!(RationalFunction::new(Poly::y(0), Poly::one()).unwrap().to_string(), "y1");
    }

    #[test]
    fn laurent_and_positivity() {
        let allowed: BTreeSet<Var> = [Var::X(0), Var::X(1)].into();
        let a = rf("(x2^2 + y1*y2)/x1");
        assert!(a.is_laurent_in(&allowed));
        assert!(a.has_positive_expansion());
        assert!(!rf("x1/(x1 + x2)").is_laurent_in(&allowed));
        assert!(!rf("(x1 - y1)/x2").has_positive_expansion());
        assert!(!rf("x1/x3").is_laurent_in(&allowed));
        assert!(rf("x1/y2").is_laurent_in(&allowed));
        assert!(rf("(y1 + y2)/x1").is_laurent_in(&allowed));
        assert!(!rf("1/(x1 + x2)").is_laurent_in(&allowed));
    }

    #[test]
    fn gcd_reduction_needed() {
        let a = rf("(x1*x2 + y1)*(x2 + y2)");
        let b = rf("(x1*x2 + y1)*(x1 + y1)");
        assert_eq!(&a / &b, rf("(x2 + y2)/(x1 + y1)"));
    }

    fn small() -> impl Strategy<Value = RationalFunction> {
        let term = (1i32..=3, 0i32..2, 0i32..2, 0i32..2);
        (prop::collection::vec(term.clone(), 1..3), prop::collection::vec(term, 1..3)).prop_map(|(n, d)| {
            let mk = |ts: Vec<(i32, i32, i32, i32)>| {
                Poly::from_terms(ts.into_iter().map(|(c, a, b, e)| {
                    (Monomial::from_exponents([(Var::X(0), a), (Var::X(1), b), (Var::Y(0), e)]), c.into())
                }))
            };
            RationalFunction::new(mk(n), mk(d)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(p in small(), q in small(), r in small()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p * &q) / &q, p.clone());
            prop_assert!((&p - &p).is_zero());
        }
    }
}

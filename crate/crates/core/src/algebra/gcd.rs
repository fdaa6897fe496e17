//! Multivariate gcd over ℤ by recursive primitive pseudo-remainder sequences.

use num_integer::Integer;

use super::{Monomial, Poly, Var};

/// Greatest common divisor of two polynomials with non-negative exponents,
/// normalized to a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    debug_assert!(!a.has_negative_exponents() && !b.has_negative_exponents());
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.integer_content().gcd(&b.integer_content()));
    }
    let v = *a.vars().union(&b.vars()).next().expect("non-constant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 { Poly::one() } else { primitive_prs(pa, pb, v) };
    (&c * &g).normalize_sign()
}

/// gcd of the coefficients of `p` as a polynomial in `v`.
fn content_in(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coefficients_in(v).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Poly, v: Var) -> Poly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").normalize_sign()
}

fn leading_coefficient_in(p: &Poly, v: Var) -> (i32, Poly) {
    let mut cs = p.coefficients_in(v);
    cs.pop_last().expect("non-zero polynomial")
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (db, lcb) = leading_coefficient_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lcr) = leading_coefficient_in(&r, v);
        if dr < db {
            break;
        }
        let shift = Monomial::from_exponents([(v, dr - db)]);
        r = &(&r * &lcb) - &(&lcr * &b.mul_monomial(&shift));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn x(k: u16) -> Poly {
        Poly::x(k)
    }
    fn y(k: u16) -> Poly {
        Poly::y(k)
    }

    #[test]
    fn recovers_common_factor() {
        let f = &(&x(0) * &x(1)) + &y(0);
        let a = &f * &(&x(0) + &y(1));
        let b = &f * &(&x(1) - &Poly::constant(2));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_and_degenerate() {
        assert!(gcd(&(&x(0) + &y(0)), &(&x(0) - &y(0))).is_one());
        assert_eq!(gcd(&Poly::zero(), &-x(1)), x(1));
        assert_eq!(gcd(&Poly::constant(6), &Poly::constant(-4)), Poly::constant(2));
        assert_eq!(gcd(&(&x(0) * &y(0)), &x(0)), x(0));
        let s = &y(0) + &y(1);
        assert_eq!(gcd(&s.pow(3), &s.pow(2).scale(&6.into())), s.pow(2));
    }
}

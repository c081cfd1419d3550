//! Multivariate gcd over Q by content/primitive-part recursion.
//!
//! The main variable at each level is the smallest symbol occurring in either
//! argument; coefficients in the remaining symbols are handled recursively and
//! the univariate part runs a primitive pseudo-remainder sequence.

use std::collections::BTreeMap;

use num::One;

use super::poly::{Monom, MultiPoly, Q};
use super::Symbol;

/// Greatest common divisor, normalized to a lexicographic leading coefficient of 1.
/// `gcd(0, 0)` is 0.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    monic(gcd_rec(a, b))
}

fn monic(p: MultiPoly) -> MultiPoly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => {
            let inv = c.recip();
            p.scale(&inv)
        }
        _ => p,
    }
}

fn monomial_gcd(single: &Monom, other: &MultiPoly) -> MultiPoly {
    let mut g = single.clone();
    for (m, _) in other.terms() {
        g = g.gcd(m);
        if g.is_one() {
            break;
        }
    }
    MultiPoly::monomial(g, Q::one())
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.clone();
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a.terms().next().unwrap().0, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b.terms().next().unwrap().0, a);
    }
    let va = a.vars();
    let vb = b.vars();
    let v = *va.iter().chain(vb.iter()).min().unwrap();
    if !va.contains(&v) {
        return gcd_rec(a, &content(&b.coefficients_in(v)));
    }
    if !vb.contains(&v) {
        return gcd_rec(&content(&a.coefficients_in(v)), b);
    }
    let ca = content(&a.coefficients_in(v));
    let cb = content(&b.coefficients_in(v));
    let c = gcd_rec(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree(v) < q.degree(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree(v) == 0 {
            q = MultiPoly::one();
            break;
        }
        let r = primitive_part(&r, v);
        p = q;
        q = r;
    }
    &c * &monic(q)
}

fn content(coeffs: &BTreeMap<u32, MultiPoly>) -> MultiPoly {
    let mut it = coeffs.values();
    let mut g = match it.next() {
        Some(c) => c.clone(),
        None => return MultiPoly::zero(),
    };
    for c in it {
        if g.is_constant() {
            return MultiPoly::one();
        }
        g = gcd_rec(&g, c);
    }
    if g.is_constant() {
        MultiPoly::one()
    } else {
        monic(g)
    }
}

fn primitive_part(p: &MultiPoly, v: Symbol) -> MultiPoly {
    let c = content(&p.coefficients_in(v));
    let pp = p.exact_div(&c).expect("content divides");
    let k = pp.integer_normalizer();
    pp.scale(&k)
}

/// Pseudo-remainder of `p` by `q` with respect to `v`.
pub(crate) fn prem(p: &MultiPoly, q: &MultiPoly, v: Symbol) -> MultiPoly {
    let dq = q.degree(v);
    let lcq = q.coefficients_in(v).remove(&dq).unwrap_or_default();
    let mut r = p.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree(v);
        if dr < dq {
            return r;
        }
        let lcr = r.coefficients_in(v).remove(&dr).unwrap_or_default();
        let shift = MultiPoly::monomial(Monom::var(v, dr - dq), Q::one());
        r = &(&lcq * &r) - &(&(&lcr * &shift) * q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(Symbol::new(n))
    }
    fn k(n: i64) -> MultiPoly {
        MultiPoly::integer(n)
    }

    #[test]
    fn univariate_gcd() {
        let x = v("x");
        let a = &(&x * &x) - &k(1);
        let b = &x + &k(1);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn multivariate_gcd_recovers_common_factor() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let common = &(&(&x * &y) + &z) - &k(2);
        let a = &common * &(&(&x * &x) + &y);
        let b = &common * &(&(&y * &z) - &x);
        let g = gcd(&a, &b);
        assert!(g.exact_div(&common).is_some());
        assert!(common.exact_div(&g).is_some());
    }

    #[test]
    fn coprime_inputs() {
        let (x, y) = (v("x"), v("y"));
        assert!(gcd(&(&x + &y), &(&x - &y)).is_one());
    }
}

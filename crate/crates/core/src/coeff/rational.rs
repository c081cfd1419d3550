use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{MultiPoly, Q};
use super::Symbol;
use crate::error::{Error, Result};

/// An element of Q(symbols): a reduced quotient of polynomials.
///
/// The denominator has coprime integer coefficients and a positive
/// lexicographic leading coefficient, so equal values are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_poly(MultiPoly::integer(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::constant(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_poly(MultiPoly::var(s))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        RationalFunction {
            num,
            den: MultiPoly::one(),
        }
    }

    /// Builds `num / den`, reducing to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            return Ok(Self::from_poly(num.scale(&c.recip())));
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_coprime(num, den));
        }
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        Ok(Self::from_coprime(num, den))
    }

    fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            return Self::from_poly(num.scale(&c.recip()));
        }
        let k = den.integer_normalizer();
        if k.is_one() {
            return RationalFunction { num, den };
        }
        RationalFunction {
            num: num.scale(&k),
            den: den.scale(&k),
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .renormalized()
    }

    fn renormalized(self) -> Self {
        Self::from_coprime(self.num, self.den)
    }

    /// Substitutes `s -> value` exactly.
    pub fn substitute(&self, s: Symbol, value: &MultiPoly) -> Self {
        if !self.contains(s) {
            return self.clone();
        }
        let num = self.num.substitute(s, value);
        let den = self.den.substitute(s, value);
        Self::new(num, den).expect("substitution produced a zero denominator")
    }

    /// Partial derivative with respect to `s`.
    pub fn derivative(&self, s: Symbol) -> Self {
        if !self.contains(s) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(s));
        }
        let n = &(&self.num.derivative(s) * &self.den) - &(&self.num * &self.den.derivative(s));
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn eval_f64(&self, value: &dyn Fn(Symbol) -> f64) -> f64 {
        self.num.eval_f64(value) / self.den.eval_f64(value)
    }

    /// Equality by cross-multiplication.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFunction::from_poly(&self.num + &rhs.num);
            }
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let g = gcd(&self.den, &rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.exact_div(&g).unwrap(), rhs.den.exact_div(&g).unwrap())
        };
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        let den = &self.den * &db;
        RationalFunction::new(num, den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &MultiPoly, g: &MultiPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).unwrap()
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RationalFunction::from_coprime(num, den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // an integer or a single power prints without operators
        let atom = |p: &MultiPoly| {
            p.num_terms() == 1
                && p.terms().all(|(m, c)| {
                    (m.is_one() && c.is_integer() && !c.is_negative()) || (c.is_one() && m.pairs().len() == 1)
                })
        };
        let wrap = |p: &MultiPoly| if atom(p) { p.to_string() } else { format!("({p})") };
        // clear fractions in the numerator into the denominator: 1/(2*h), not (1/2)/h
        let l = self
            .num
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| num::integer::lcm(acc, c.denom().clone()));
        if l.is_one() {
            return write!(f, "{}/{}", wrap(&self.num), wrap(&self.den));
        }
        let l = Q::from_integer(l);
        write!(f, "{}/{}", wrap(&self.num.scale(&l)), wrap(&self.den.scale(&l)))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var(Symbol::new("x"))
    }
    fn k(n: i64) -> RationalFunction {
        RationalFunction::integer(n)
    }

    #[test]
    fn additive_inverse() {
        let a = &k(1) / &x();
        let b = &k(-1) / &x();
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn multiplicative_identity() {
        let a = &(&x() + &k(2)) / &x();
        assert!((&a / &a).is_one());
    }

    #[test]
    fn normalization_cancels_common_factor() {
        let num = &(&x() * &x()) - &k(1);
        let a = &num / &(&x() + &k(1));
        assert_eq!(a, &x() - &k(1));
        assert!(a.is_polynomial());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(x().checked_div(&RationalFunction::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominator_sign_and_content_are_canonical() {
        let a = &k(3) / &(&k(-4) * &x());
        let b = &RationalFunction::rational(-3, 4) / &x();
        assert_eq!(a, b);
        assert!(a.denom().terms().all(|(_, c)| c.is_integer()));
    }
}

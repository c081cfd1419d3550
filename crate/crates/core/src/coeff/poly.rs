use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use super::Symbol;

pub type Q = BigRational;

/// A power product of symbols, sorted by symbol with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monom(SmallVec<[(Symbol, u32); 4]>);

impl Monom {
    pub fn one() -> Self {
        Monom(SmallVec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monom(smallvec::smallvec![(s, e)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut acc: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *acc.entry(s).or_default() += e;
        }
        Monom(acc.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self, s: Symbol) -> u32 {
        self.0.iter().find(|(t, _)| *t == s).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monom) -> Monom {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monom(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monom) -> Option<Monom> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((s, e - f)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monom(out))
    }

    pub fn gcd(&self, other: &Monom) -> Monom {
        Monom(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = other.degree(s);
                    (f > 0).then(|| (s, e.min(f)))
                })
                .collect(),
        )
    }

    /// Splits off the power of `s`.
    pub fn split(&self, s: Symbol) -> (u32, Monom) {
        let mut rest = self.clone();
        let mut e = 0;
        rest.0.retain(|(t, f)| {
            if *t == s {
                e = *f;
                false
            } else {
                true
            }
        });
        (e, rest)
    }

    /// Pure lexicographic comparison; the symbol that interned first is the
    /// most significant.
    pub fn lex_cmp(&self, other: &Monom) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Debug for Monom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monom, Q>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(Monom::one(), c);
        p
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(n)))
    }

    pub fn var(s: Symbol) -> Self {
        Self::monomial(Monom::var(s, 1), Q::one())
    }

    pub fn monomial(m: Monom, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monom, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monom, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monom, &Q)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(s, _)| *s))
            .collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.degree(s) > 0)
    }

    pub fn degree(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree(s)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `s`, keyed by the power of `s`.
    pub fn coefficients_in(&self, s: Symbol) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monom, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `s -> value`.
    pub fn substitute(&self, s: Symbol, value: &MultiPoly) -> MultiPoly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(s);
        let top = *coeffs.keys().next_back().unwrap();
        let mut acc = MultiPoly::zero();
        for d in (0..=top).rev() {
            acc = &acc * value;
            if let Some(c) = coeffs.get(&d) {
                acc = &acc + c;
            }
        }
        acc
    }

    pub fn derivative(&self, s: Symbol) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            if e > 0 {
                out.add_term(rest.mul(&Monom::var(s, e - 1)), c * Q::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn eval_f64(&self, value: &dyn Fn(Symbol) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = q_to_f64(c);
                for &(s, e) in m.pairs() {
                    t *= value(s).powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "exact_div by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = r.leading_term() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            r = &r - &d.mul_term(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Factor `k` such that `k * self` has coprime integer coefficients and a
    /// positive lexicographic leading coefficient.
    pub fn integer_normalizer(&self) -> Q {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
            num_gcd = num::integer::gcd(num_gcd, c.numer().clone());
        }
        if num_gcd.is_zero() {
            return Q::one();
        }
        let mut k = Q::new(den_lcm, num_gcd);
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            k = -k;
        }
        k
    }
}

pub(crate) fn q_to_f64(c: &Q) -> f64 {
    use num::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(m.clone(), -c);
        }
        acc
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                acc.add_term(m.mul(n), c * d);
            }
        }
        acc
    }
}

pub(crate) fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.lex_cmp(a.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Symbol::new("x"))
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Symbol::new("y"))
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = &(&x() + &y()) * &(&x() - &MultiPoly::integer(3));
        let b = &x() + &y();
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, &x() - &MultiPoly::integer(3));
        assert!(a.exact_div(&(&x() + &MultiPoly::integer(7))).is_none());
    }

    #[test]
    fn substitution_and_derivative() {
        let s = Symbol::new("x");
        let p = &(&x() * &x()) + &y();
        let shifted = p.substitute(s, &(&x() + &MultiPoly::one()));
        let expect = &(&(&x() * &x()) + &x().scale(&Q::from_integer(2.into()))) + &(&MultiPoly::one() + &y());
        assert_eq!(shifted, expect);
        assert_eq!(p.derivative(s), x().scale(&Q::from_integer(2.into())));
    }

    #[test]
    fn monomial_division() {
        let m = Monom::from_pairs([(Symbol::new("x"), 2), (Symbol::new("y"), 1)]);
        let n = Monom::var(Symbol::new("x"), 1);
        assert_eq!(
            m.div(&n).unwrap(),
            Monom::from_pairs([(Symbol::new("x"), 1), (Symbol::new("y"), 1)])
        );
        assert!(n.div(&m).is_none());
    }
}

//! Sparse polynomials in indexed variables with rational-function
//! coefficients, shared by the difference and the differential ring.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{Grid, RationalFunction};
use crate::diffring::DiffOrdering;
use crate::monomial::{IndexedVar, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: IndexedVar) -> Self {
        Self::term(RationalFunction::one(), Monomial::var(v))
    }

    pub fn term(c: RationalFunction, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, RationalFunction)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&RationalFunction> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn leading_term(&self, o: &DiffOrdering) -> Option<(&Monomial, &RationalFunction)> {
        self.terms.iter().max_by(|a, b| o.cmp_monomials(a.0, b.0))
    }

    pub fn lm(&self, o: &DiffOrdering) -> Option<&Monomial> {
        self.leading_term(o).map(|t| t.0)
    }

    pub fn lc(&self, o: &DiffOrdering) -> Option<&RationalFunction> {
        self.leading_term(o).map(|t| t.1)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, o: &DiffOrdering) -> Polynomial {
        match self.lc(o) {
            Some(c) if !c.is_one() => {
                let inv = c.inv().expect("stored coefficients are nonzero");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self, o: &DiffOrdering) -> bool {
        self.lc(o).is_none_or(|c| c.is_one())
    }

    pub fn scale(&self, c: &RationalFunction) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &RationalFunction, t: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.mul(t), a * c)).collect(),
        }
    }

    /// Applies the shift operator with multi-index `theta` to monomials and
    /// coefficients alike (difference ring only).
    pub fn shift(&self, grid: &Grid, theta: &[u32]) -> Polynomial {
        if theta.iter().all(|&t| t == 0) {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(theta), grid.shift_all(c, theta)))
                .collect(),
        }
    }

    /// Largest total shift among all factors.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|m| m.max_order()).max().unwrap_or(0)
    }

    /// Smallest shift per axis over all factors (zero for a constant).
    pub fn min_shift(&self, axes: usize) -> Vec<u32> {
        let mut out: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                let cur = out.get_or_insert_with(|| v.index.to_vec());
                for (c, s) in cur.iter_mut().zip(&v.index) {
                    *c = (*c).min(*s);
                }
            }
        }
        out.unwrap_or_else(|| vec![0; axes])
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(RationalFunction::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

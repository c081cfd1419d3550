use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{RationalFunction, Symbol};
use crate::diffring::{write_term, DiffOrdering};
use crate::monomial::{IndexedVar, Monomial};
use crate::polynomial::Polynomial;
use crate::ranking::Ranking;

pub type DerivVar = IndexedVar;
pub type DiffrlPoly = Polynomial;
pub type DiffrlRanking = Ranking;

/// Context of one differential polynomial ring: the independent variables
/// (derivations act on coefficients through them), the ranking and names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffrlRing {
    pub axes: Vec<Symbol>,
    pub ranking: DiffrlRanking,
    pub indet_names: Vec<String>,
}

impl DiffrlRing {
    pub fn new(axes: &[&str], ranking: DiffrlRanking, indet_names: &[&str]) -> Self {
        assert_eq!(axes.len(), ranking.num_axes());
        assert_eq!(indet_names.len(), ranking.num_indets());
        DiffrlRing {
            axes: axes.iter().map(|a| Symbol::new(a)).collect(),
            ranking,
            indet_names: indet_names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn num_axes(&self) -> usize {
        self.axes.len()
    }

    pub fn ordering(&self) -> DiffOrdering {
        DiffOrdering::new(self.ranking.clone())
    }

    pub fn indet_index(&self, name: &str) -> Option<usize> {
        self.indet_names.iter().position(|n| n == name)
    }

    /// The derivative of dependent variable `name` with orders `deriv`.
    pub fn var(&self, name: &str, deriv: &[u32]) -> DiffrlPoly {
        let i = self
            .indet_index(name)
            .unwrap_or_else(|| panic!("unknown dependent variable `{name}`"));
        assert_eq!(deriv.len(), self.num_axes());
        DiffrlPoly::var(IndexedVar::new(i, deriv))
    }

    pub fn cmp_vars(&self, a: &DerivVar, b: &DerivVar) -> std::cmp::Ordering {
        self.ranking.cmp((a.indet, &a.index), (b.indet, &b.index))
    }

    /// Total derivative with respect to axis `i`, including coefficients.
    pub fn derivative(&self, p: &DiffrlPoly, i: usize) -> DiffrlPoly {
        let mut unit = vec![0u32; self.num_axes()];
        unit[i] = 1;
        let mut out = DiffrlPoly::zero();
        for (m, c) in p.terms() {
            let dc = c.derivative(self.axes[i]);
            if !dc.is_zero() {
                out.add_term(m.clone(), dc);
            }
            for (v, e) in m.factors() {
                let rest = m.div(&Monomial::var(v.clone())).expect("factor divides");
                let term = rest.mul(&Monomial::var(v.shifted(&unit)));
                out.add_term(term, c.scale(&crate::coeff::Q::from_integer((*e).into())));
            }
        }
        out
    }

    /// Applies `∂^theta`.
    pub fn prolong(&self, p: &DiffrlPoly, theta: &[u32]) -> DiffrlPoly {
        let mut out = p.clone();
        for (i, &k) in theta.iter().enumerate() {
            for _ in 0..k {
                out = self.derivative(&out, i);
            }
        }
        out
    }

    /// Highest-ranked variable occurring in `p`.
    pub fn leader(&self, p: &DiffrlPoly) -> Option<DerivVar> {
        p.terms()
            .flat_map(|(m, _)| m.factors().iter().map(|f| &f.0))
            .max_by(|a, b| self.cmp_vars(a, b))
            .cloned()
    }

    /// All variables of `p`, highest first.
    pub fn vars_desc(&self, p: &DiffrlPoly) -> Vec<DerivVar> {
        let mut vs: Vec<DerivVar> = p
            .terms()
            .flat_map(|(m, _)| m.factors().iter().map(|f| f.0.clone()))
            .collect();
        vs.sort_by(|a, b| self.cmp_vars(b, a));
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, p: &DiffrlPoly, v: &DerivVar) -> u32 {
        p.terms().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients of `p` as a univariate polynomial in `v`.
    pub fn coefficients_in(&self, p: &DiffrlPoly, v: &DerivVar) -> BTreeMap<u32, DiffrlPoly> {
        let mut out: BTreeMap<u32, DiffrlPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.exponent(v);
            let rest = if e == 0 {
                m.clone()
            } else {
                m.div(&Monomial::from_factors([(v.clone(), e)])).expect("power divides")
            };
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of the highest power of the leader.
    pub fn initial(&self, p: &DiffrlPoly) -> Option<DiffrlPoly> {
        let v = self.leader(p)?;
        self.coefficients_in(p, &v).into_iter().next_back().map(|(_, c)| c)
    }

    /// Partial derivative of `p` with respect to its leader.
    pub fn separant(&self, p: &DiffrlPoly) -> Option<DiffrlPoly> {
        let v = self.leader(p)?;
        let mut out = DiffrlPoly::zero();
        for (k, c) in self.coefficients_in(p, &v) {
            if k > 0 {
                let pw = Monomial::from_factors([(v.clone(), k - 1)]);
                out = &out + &c.mul_term(&RationalFunction::integer(k as i64), &pw);
            }
        }
        Some(out)
    }

    /// Whether every axis name is a single character, so `u_xy` is unambiguous.
    fn short_axis_names(&self) -> bool {
        self.axes.iter().all(|a| a.name().chars().count() == 1)
    }

    pub fn display_var(&self, v: &DerivVar) -> String {
        let name = &self.indet_names[v.indet];
        if v.order() == 0 {
            return name.clone();
        }
        if self.short_axis_names() {
            let mut s = format!("{name}_");
            for (a, &k) in self.axes.iter().zip(&v.index) {
                for _ in 0..k {
                    s.push_str(&a.name());
                }
            }
            return s;
        }
        let parts: Vec<String> = self
            .axes
            .iter()
            .zip(&v.index)
            .filter(|(_, &k)| k > 0)
            .map(|(a, k)| format!("{}, {k}", a.name()))
            .collect();
        format!("D({name}, {})", parts.join(", "))
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        self.ordering()
            .sorted_factors(m)
            .into_iter()
            .map(|(v, e)| {
                if *e == 1 {
                    self.display_var(v)
                } else {
                    format!("{}^{e}", self.display_var(v))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn display<'a>(&'a self, p: &'a DiffrlPoly) -> impl fmt::Display + 'a {
        DisplayPoly { ring: self, p }
    }
}

struct DisplayPoly<'a> {
    ring: &'a DiffrlRing,
    p: &'a DiffrlPoly,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let o = self.ring.ordering();
        let mut terms: Vec<_> = self.p.terms().collect();
        terms.sort_by(|a, b| o.cmp_monomials(b.0, a.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let body = if m.is_one() {
                String::new()
            } else {
                self.ring.display_monomial(m)
            };
            write_term(f, i == 0, c, &body)?;
        }
        Ok(())
    }
}

//! The difference polynomial ring: shifted variables, admissible orderings,
//! reduction, S-polynomials and standard bases of σ-ideals.

mod basis;
mod ordering;
mod reduce;
mod spoly;

use std::fmt;

use num::Signed;

pub use crate::monomial::{IndexedVar as ShiftedVar, Monomial as DiffMonomial, MultiIndex};
pub use crate::polynomial::Polynomial as DiffPoly;
pub use basis::{
    standard_basis, BasisOutcome, BasisStats, BasisStatus, Bounds, Control, Derivation, HistoryEntry, NewElement,
    DEFAULT_MAX_ORDER, DEFAULT_MAX_PASSES, DEFAULT_MAX_TERMS,
};
pub use ordering::DiffOrdering;
pub use reduce::{
    divides, interreduce, normal_form, normal_form_bounded, normal_form_until, AbortFlag, Interrupted, NormalForm,
    ReductionMode, ReductionStep,
};
pub use spoly::{s_pairs, SPolynomial};

use crate::coeff::{fmt_q, Grid, RationalFunction};

/// Everything needed to compute in one difference ring: the grid (for
/// shifting coefficients), the ordering, and names for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRing {
    pub grid: Grid,
    pub ordering: DiffOrdering,
    pub indet_names: Vec<String>,
    /// Grid index names used when printing shifted variables, one per axis.
    pub index_names: Vec<String>,
}

impl DiffRing {
    /// Index names default to the axis variable names.
    pub fn new(grid: Grid, ordering: DiffOrdering, indet_names: &[&str]) -> Self {
        let index_names = grid.axes().iter().map(|a| a.var.name().to_string()).collect();
        DiffRing {
            grid,
            ordering,
            indet_names: indet_names.iter().map(|s| s.to_string()).collect(),
            index_names,
        }
    }

    pub fn with_index_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.grid.dim(), "one index name per axis");
        self.index_names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn num_axes(&self) -> usize {
        self.grid.dim()
    }

    pub fn indet_index(&self, name: &str) -> Option<usize> {
        self.indet_names.iter().position(|n| n == name)
    }

    /// The variable `name` shifted by `shift`.
    pub fn var(&self, name: &str, shift: &[u32]) -> DiffPoly {
        let i = self
            .indet_index(name)
            .unwrap_or_else(|| panic!("unknown dependent variable `{name}`"));
        assert_eq!(shift.len(), self.num_axes());
        DiffPoly::var(ShiftedVar::new(i, shift))
    }

    pub fn display<'a>(&'a self, p: &'a DiffPoly) -> impl fmt::Display + 'a {
        DisplayPoly { ring: self, p }
    }

    pub fn display_var(&self, v: &ShiftedVar) -> String {
        let idx: Vec<String> = self
            .index_names
            .iter()
            .zip(&v.index)
            .map(|(n, &s)| if s == 0 { n.clone() } else { format!("{n}+{s}") })
            .collect();
        format!("{}[{}]", self.indet_names[v.indet], idx.join(","))
    }

    pub fn display_monomial(&self, m: &DiffMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        self.ordering
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
}

struct DisplayPoly<'a> {
    ring: &'a DiffRing,
    p: &'a DiffPoly,
}

/// Writes `c * body` as a signed term; `body` is empty for a bare coefficient.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &RationalFunction, body: &str) -> fmt::Result {
    let neg = c.numer().leading_term().is_some_and(|(_, q)| q.is_negative());
    let mag = if neg { -c } else { c.clone() };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    match mag.constant_value() {
        Some(q) if body.is_empty() => f.write_str(&fmt_q(&q)),
        Some(q) if num::One::is_one(&q) => f.write_str(body),
        Some(q) => write!(f, "{}*{body}", fmt_q(&q)),
        None => {
            let text = mag.to_string();
            let bare = text.chars().all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '^');
            match (bare, body.is_empty()) {
                (true, true) => f.write_str(&text),
                (true, false) => write!(f, "{text}*{body}"),
                (false, true) => write!(f, "({text})"),
                (false, false) => write!(f, "({text})*{body}"),
            }
        }
    }
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let o = &self.ring.ordering;
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

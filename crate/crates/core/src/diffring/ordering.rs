use std::cmp::Ordering;

use crate::monomial::{IndexedVar as ShiftedVar, Monomial as DiffMonomial};
use crate::ranking::{OperatorOrder, Ranking, RankingKind};

/// Admissible monomial ordering: the lexicographic extension of a ranking on
/// shifted variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOrdering {
    pub ranking: Ranking,
}

/// Sort key whose lexicographic order equals the monomial order.
pub(crate) type MonoKey = Vec<u32>;

impl DiffOrdering {
    pub fn new(ranking: Ranking) -> Self {
        DiffOrdering { ranking }
    }

    pub fn cmp_vars(&self, a: &ShiftedVar, b: &ShiftedVar) -> Ordering {
        self.ranking.cmp((a.indet, &a.index), (b.indet, &b.index))
    }

    /// Factors sorted from highest to lowest under the ranking.
    pub fn sorted_factors<'a>(&self, m: &'a DiffMonomial) -> Vec<&'a (ShiftedVar, u32)> {
        let mut f: Vec<_> = m.factors().iter().collect();
        f.sort_by(|a, b| self.cmp_vars(&b.0, &a.0));
        f
    }

    pub fn cmp_monomials(&self, a: &DiffMonomial, b: &DiffMonomial) -> Ordering {
        let fa = self.sorted_factors(a);
        let fb = self.sorted_factors(b);
        for (x, y) in fa.iter().zip(&fb) {
            let o = self.cmp_vars(&x.0, &y.0).then(x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        fa.len().cmp(&fb.len())
    }

    fn push_var_key(&self, v: &ShiftedVar, out: &mut Vec<u32>) {
        let r = &self.ranking;
        let indet = (r.num_indets() - r.indet_precedence().iter().position(|&i| i == v.indet).unwrap()) as u32;
        let total = match r.operator_order() {
            OperatorOrder::Graded => v.order(),
            OperatorOrder::Lex => 0,
        };
        if r.kind() == RankingKind::Elimination {
            out.push(indet);
        }
        out.push(total);
        out.extend(r.axis_precedence().iter().map(|&i| v.index[i]));
        if r.kind() == RankingKind::Orderly {
            out.push(indet);
        }
    }

    /// Encodes `m` so that comparing keys lexicographically agrees with
    /// [`DiffOrdering::cmp_monomials`].
    pub(crate) fn key(&self, m: &DiffMonomial) -> MonoKey {
        let mut out = Vec::with_capacity(m.factors().len() * (self.ranking.num_axes() + 3));
        for (v, e) in self.sorted_factors(m) {
            self.push_var_key(v, &mut out);
            out.push(*e);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex1() -> DiffOrdering {
        DiffOrdering::new(Ranking::orderly(1, 1))
    }

    fn u(k: u32) -> ShiftedVar {
        ShiftedVar::new(0, &[k])
    }

    #[test]
    fn higher_shift_dominates_in_one_axis() {
        let o = lex1();
        let a = DiffMonomial::from_factors([(u(1), 1), (u(4), 1)]);
        let b = DiffMonomial::from_factors([(u(0), 1), (u(3), 2)]);
        assert_eq!(o.cmp_monomials(&a, &b), Ordering::Greater);
        assert_eq!(o.cmp_monomials(&a, &a), Ordering::Equal);
        assert!(o.key(&a) > o.key(&b));
    }

    #[test]
    fn time_shift_beats_space_shift() {
        // axes (t, x, y), indets (p, u, v)
        let o = DiffOrdering::new(Ranking::orderly(3, 3));
        let ut = DiffMonomial::var(ShiftedVar::new(1, &[1, 0, 0]));
        let ux = DiffMonomial::var(ShiftedVar::new(1, &[0, 1, 0]));
        assert_eq!(o.cmp_monomials(&ut, &ux), Ordering::Greater);
    }

    #[test]
    fn proper_multiple_is_larger() {
        let o = lex1();
        let a = DiffMonomial::var(u(2));
        let b = DiffMonomial::from_factors([(u(2), 1), (u(0), 1)]);
        assert_eq!(o.cmp_monomials(&b, &a), Ordering::Greater);
        assert_eq!(o.cmp_monomials(&a, &DiffMonomial::one()), Ordering::Greater);
    }
}

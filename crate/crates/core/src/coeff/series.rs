use std::collections::BTreeMap;

use super::poly::{Monom, MultiPoly};
use super::{RationalFunction, Symbol};
use crate::error::{Error, Result};

/// Spacing-exponent vector, aligned with [`TruncatedSeries::spacings`].
/// Entries may be negative when the expanded function has a pole of monomial
/// type at the origin (e.g. `1/h`).
pub type SpacingExps = Vec<i32>;

/// Expansion of a rational function in the spacing symbols about zero,
/// truncated below weighted order `order_bound`. Components are free of
/// spacing symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub spacings: Vec<Symbol>,
    pub weights: Vec<u32>,
    pub order_bound: i64,
    pub components: BTreeMap<SpacingExps, RationalFunction>,
}

pub(crate) fn weight_of(exps: &[i32], weights: &[u32]) -> i64 {
    exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
}

impl TruncatedSeries {
    pub fn weight(&self, exps: &[i32]) -> i64 {
        weight_of(exps, &self.weights)
    }

    /// Sum of components times their spacing monomials, as one rational function.
    pub fn reconstruct(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (e, c) in &self.components {
            acc = &acc + &(c * &spacing_monomial(&self.spacings, e));
        }
        acc
    }

    /// Lowest weighted order carrying a nonzero component.
    pub fn valuation(&self) -> Option<i64> {
        self.components.keys().map(|e| self.weight(e)).min()
    }
}

pub(crate) fn spacing_monomial(spacings: &[Symbol], exps: &[i32]) -> RationalFunction {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (&s, &e) in spacings.iter().zip(exps) {
        if e > 0 {
            pos.push((s, e as u32));
        } else if e < 0 {
            neg.push((s, (-e) as u32));
        }
    }
    let num = MultiPoly::monomial(Monom::from_pairs(pos), num::One::one());
    let den = MultiPoly::monomial(Monom::from_pairs(neg), num::One::one());
    RationalFunction::new(num, den).expect("monomial denominator")
}

/// Splits `p` by its exponents in `spacings`.
fn by_spacing(p: &MultiPoly, spacings: &[Symbol]) -> BTreeMap<Vec<i32>, MultiPoly> {
    let mut out: BTreeMap<Vec<i32>, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut exps = vec![0i32; spacings.len()];
        let mut rest = Vec::new();
        for &(s, e) in m.pairs() {
            match spacings.iter().position(|t| *t == s) {
                Some(i) => exps[i] = e as i32,
                None => rest.push((s, e)),
            }
        }
        out.entry(exps)
            .or_default()
            .add_term(Monom::from_pairs(rest), c.clone());
    }
    out
}

pub(crate) fn series_mul(
    a: &BTreeMap<SpacingExps, RationalFunction>,
    b: &BTreeMap<SpacingExps, RationalFunction>,
    weights: &[u32],
    bound: i64,
) -> BTreeMap<SpacingExps, RationalFunction> {
    let mut out: BTreeMap<SpacingExps, RationalFunction> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if weight_of(&e, weights) >= bound {
                continue;
            }
            let v = ca * cb;
            let slot = out.entry(e).or_default();
            *slot = &*slot + &v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Taylor (Laurent, for monomial poles) expansion of `a` in the spacing
/// symbols of `weights`, keeping components of weighted order `< order`.
pub fn rf_series(a: &RationalFunction, weights: &BTreeMap<Symbol, u32>, order: i64) -> Result<TruncatedSeries> {
    let spacings: Vec<Symbol> = weights.keys().copied().collect();
    let w: Vec<u32> = weights.values().copied().collect();
    let num_parts = by_spacing(a.numer(), &spacings);
    let den_parts = by_spacing(a.denom(), &spacings);
    let pole: Vec<i32> = (0..spacings.len())
        .map(|i| den_parts.keys().map(|e| e[i]).min().unwrap_or(0))
        .collect();
    let zero = vec![0i32; spacings.len()];
    let d0 = den_parts.get(&pole).cloned().ok_or_else(|| Error::SingularExpansion {
        denominator: a.denom().to_string(),
    })?;
    let d0 = RationalFunction::from_poly(d0);
    // den / (s^pole * d0) = 1 + e
    let mut e: BTreeMap<SpacingExps, RationalFunction> = BTreeMap::new();
    for (ex, p) in &den_parts {
        if *ex == pole {
            continue;
        }
        let rel: Vec<i32> = ex.iter().zip(&pole).map(|(x, y)| x - y).collect();
        e.insert(rel, &RationalFunction::from_poly(p.clone()) / &d0);
    }
    let bound = order + weight_of(&pole, &w);
    let neg_e: BTreeMap<_, _> = e.iter().map(|(k, v)| (k.clone(), -v)).collect();
    // (1 + e)^-1 = sum_k (-e)^k; every term of e has weight >= 1.
    let mut inv: BTreeMap<SpacingExps, RationalFunction> = BTreeMap::new();
    if bound > 0 {
        inv.insert(zero.clone(), RationalFunction::one());
        let mut power = inv.clone();
        loop {
            power = series_mul(&power, &neg_e, &w, bound);
            if power.is_empty() {
                break;
            }
            for (k, v) in &power {
                let slot = inv.entry(k.clone()).or_default();
                *slot = &*slot + v;
            }
        }
        inv.retain(|_, c| !c.is_zero());
    }
    let num: BTreeMap<SpacingExps, RationalFunction> = num_parts
        .into_iter()
        .map(|(k, p)| (k, RationalFunction::from_poly(p)))
        .collect();
    let prod = series_mul(&num, &inv, &w, bound);
    let components = prod
        .into_iter()
        .map(|(k, v)| {
            let shifted: Vec<i32> = k.iter().zip(&pole).map(|(x, y)| x - y).collect();
            (shifted, &v / &d0)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(TruncatedSeries {
        spacings,
        weights: w,
        order_bound: order,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: &str) -> RationalFunction {
        RationalFunction::var(Symbol::new(n))
    }

    fn weights() -> BTreeMap<Symbol, u32> {
        BTreeMap::from([(Symbol::new("h"), 1)])
    }

    #[test]
    fn geometric_series() {
        let a = &RationalFunction::one() / &(&sym("x") + &sym("h"));
        let s = rf_series(&a, &weights(), 2).unwrap();
        let x = sym("x");
        assert_eq!(s.components[&vec![0]], &RationalFunction::one() / &x);
        assert_eq!(s.components[&vec![1]], -&(&RationalFunction::one() / &(&x * &x)));
        assert_eq!(s.components.len(), 2);
    }

    #[test]
    fn polynomial_is_its_own_series() {
        let a = &sym("x") + &sym("h");
        let s = rf_series(&a, &weights(), 2).unwrap();
        assert_eq!(s.reconstruct(), a);
    }

    #[test]
    fn shifted_quotient() {
        // (x+2+h)/(x+h) -> (x+2)/x - 2/x^2 h; derivative of the closed form at h=0
        let x = sym("x");
        let two = RationalFunction::integer(2);
        let a = &(&(&x + &two) + &sym("h")) / &(&x + &sym("h"));
        let s = rf_series(&a, &weights(), 2).unwrap();
        assert_eq!(s.components[&vec![0]], &(&x + &two) / &x);
        assert_eq!(s.components[&vec![1]], &RationalFunction::integer(-2) / &(&x * &x));
    }

    #[test]
    fn monomial_pole_gives_negative_exponent() {
        let a = &RationalFunction::one() / &(&RationalFunction::integer(2) * &sym("h"));
        let s = rf_series(&a, &weights(), 1).unwrap();
        assert_eq!(s.components[&vec![-1]], RationalFunction::rational(1, 2));
    }

    #[test]
    fn singular_point_is_reported() {
        let mut w = weights();
        w.insert(Symbol::new("tau"), 1);
        let a = &RationalFunction::one() / &(&sym("h") + &sym("tau"));
        assert!(matches!(rf_series(&a, &w, 2), Err(Error::SingularExpansion { .. })));
    }
}

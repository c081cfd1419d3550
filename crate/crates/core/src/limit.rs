//! Continuous limits of difference polynomials: Taylor expansion in the grid
//! spacings about a grid point, graded by weighted spacing degree.

use std::collections::BTreeMap;

use num::{BigInt, One};

use crate::coeff::{rf_series, weight_of, RationalFunction, SpacingExps, Step, Symbol, Q};
use crate::diffring::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::monomial::{IndexedVar, Monomial};
use crate::pdering::DiffrlPoly;

/// Taylor components keyed by spacing exponents. Each component is the
/// coefficient of the corresponding spacing monomial.
pub type Expansion = BTreeMap<SpacingExps, DiffrlPoly>;

/// The relation `p ▷ leading`: `p = leading·(spacings of weight order) + higher order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitResult {
    /// Weighted spacing degree of the lowest nonzero component. Negative
    /// when the difference polynomial carries spacing poles, e.g. `1/h`.
    pub order: i64,
    /// Sum of the components of weight `order`.
    pub leading: DiffrlPoly,
    /// The components of weight `order`, one per spacing monomial.
    pub components: Expansion,
    pub weights: BTreeMap<Symbol, u32>,
}

struct Spacings {
    symbols: Vec<Symbol>,
    weights: Vec<u32>,
    // spacing slot of each axis; None for numeric steps
    axis_slot: Vec<Option<usize>>,
    axis_names: Vec<String>,
}

impl Spacings {
    fn of(ring: &DiffRing) -> Self {
        let symbols: Vec<Symbol> = ring.grid.weights().keys().copied().collect();
        let weights = ring.grid.weights().values().copied().collect();
        let axis_slot = ring
            .grid
            .axes()
            .iter()
            .map(|a| match a.step {
                Step::Spacing(s) => symbols.iter().position(|t| *t == s),
                Step::Fixed(_) => None,
            })
            .collect();
        let axis_names = ring.grid.axes().iter().map(|a| a.var.name().to_string()).collect();
        Spacings {
            symbols,
            weights,
            axis_slot,
            axis_names,
        }
    }

    fn weight(&self, e: &[i32]) -> i64 {
        weight_of(e, &self.weights)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Series of `σ^μ∘u` truncated below weight `bound`:
/// `Σ_ν Π_i (μ_i s_i)^{ν_i}/ν_i! · ∂^ν u`.
fn var_series(v: &IndexedVar, sp: &Spacings, bound: i64) -> Result<Expansion> {
    let n = v.index.len();
    let mut out = Expansion::new();
    if bound <= 0 {
        return Ok(out);
    }
    for (i, &mu) in v.index.iter().enumerate() {
        if mu > 0 && sp.axis_slot[i].is_none() {
            return Err(Error::NoSpacingSymbol(sp.axis_names[i].clone()));
        }
    }
    let mut nu = vec![0u32; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        nu: &mut Vec<u32>,
        exps: &mut Vec<i32>,
        coeff: Q,
        v: &IndexedVar,
        sp: &Spacings,
        bound: i64,
        out: &mut Expansion,
    ) {
        if i == nu.len() {
            let term = DiffrlPoly::term(
                RationalFunction::constant(coeff),
                Monomial::var(IndexedVar::new(v.indet, nu)),
            );
            let slot = out.entry(exps.clone()).or_default();
            *slot = &*slot + &term;
            return;
        }
        let mu = v.index[i];
        let Some(s) = sp.axis_slot[i].filter(|_| mu > 0) else {
            return rec(i + 1, nu, exps, coeff, v, sp, bound, out);
        };
        let mut k = 0u32;
        loop {
            if sp.weight(exps) >= bound {
                break;
            }
            let c = &coeff * Q::new(BigInt::from(mu).pow(k), factorial(k));
            nu[i] = k;
            rec(i + 1, nu, exps, c, v, sp, bound, out);
            exps[s] += 1;
            k += 1;
        }
        exps[s] -= k as i32;
        nu[i] = 0;
    }
    let mut exps = vec![0i32; sp.symbols.len()];
    rec(0, &mut nu, &mut exps, Q::one(), v, sp, bound, &mut out);
    Ok(out)
}

fn mul_expansions(a: &Expansion, b: &Expansion, sp: &Spacings, bound: i64) -> Expansion {
    let mut out = Expansion::new();
    for (ea, pa) in a {
        for (eb, pb) in b {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if sp.weight(&e) >= bound {
                continue;
            }
            let prod = pa * pb;
            let slot = out.entry(e).or_default();
            *slot = &*slot + &prod;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Expands `p` about the unshifted grid point, keeping every component of
/// weighted spacing degree below `order`. Components are exact.
pub fn taylor_expand(p: &DiffPoly, ring: &DiffRing, order: i64) -> Result<Expansion> {
    let sp = Spacings::of(ring);
    let zero = vec![0i32; sp.symbols.len()];
    let mut out = Expansion::new();
    for (m, c) in p.terms() {
        let cs = rf_series(c, ring.grid.weights(), order)?;
        let Some(cmin) = cs.valuation() else { continue };
        let bound = order - cmin;
        let mut acc = Expansion::from([(zero.clone(), DiffrlPoly::constant(RationalFunction::one()))]);
        for (v, e) in m.factors() {
            let s = var_series(v, &sp, bound)?;
            for _ in 0..*e {
                acc = mul_expansions(&acc, &s, &sp, bound);
            }
        }
        for (ce, cc) in &cs.components {
            for (ve, vp) in &acc {
                let e: Vec<i32> = ce.iter().zip(ve).map(|(x, y)| x + y).collect();
                if sp.weight(&e) >= order {
                    continue;
                }
                let slot = out.entry(e).or_default();
                *slot = &*slot + &vp.scale(cc);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Finds the lowest nonzero weighted component of the expansion of `p`,
/// starting the truncation at `initial_order` and widening as needed.
pub fn continuous_limit(p: &DiffPoly, ring: &DiffRing, initial_order: i64) -> Result<LimitResult> {
    const MAX_ORDER: i64 = 64;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sp = Spacings::of(ring);
    let mut order = initial_order.max(1);
    loop {
        let exp = taylor_expand(p, ring, order)?;
        if let Some(k) = exp.keys().map(|e| sp.weight(e)).min() {
            let components: Expansion = exp.into_iter().filter(|(e, _)| sp.weight(e) == k).collect();
            let leading = components.values().fold(DiffrlPoly::zero(), |acc, c| &acc + c);
            if leading.is_zero() {
                return Err(Error::Input(format!(
                    "spacing monomials of weight {k} cancel in the aggregated limit"
                )));
            }
            return Ok(LimitResult {
                order: k,
                leading,
                components,
                weights: ring.grid.weights().clone(),
            });
        }
        if order >= MAX_ORDER {
            return Err(Error::LimitNotFound(order));
        }
        order = (order * 2).min(MAX_ORDER);
    }
}

/// Evaluates the spacing monomial with exponents `e` (aligned with the
/// sorted spacing symbols of `weights`) as a rational function.
pub fn spacing_factor(weights: &BTreeMap<Symbol, u32>, e: &[i32]) -> RationalFunction {
    let symbols: Vec<Symbol> = weights.keys().copied().collect();
    crate::coeff::spacing_monomial(&symbols, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Grid;
    use crate::diffring::DiffOrdering;
    use crate::ranking::Ranking;

    fn ring() -> DiffRing {
        DiffRing::new(
            Grid::with_spacings(&[("x", "h")]),
            DiffOrdering::new(Ranking::orderly(1, 1)),
            &["u"],
        )
    }

    fn d(k: u32) -> DiffrlPoly {
        DiffrlPoly::var(IndexedVar::new(0, &[k]))
    }

    fn h() -> RationalFunction {
        RationalFunction::var(Symbol::new("h"))
    }

    #[test]
    fn scalar_taylor_series() {
        let r = ring();
        let e = taylor_expand(&r.var("u", &[1]), &r, 3).unwrap();
        assert_eq!(e[&vec![0]], d(0));
        assert_eq!(e[&vec![1]], d(1));
        assert_eq!(e[&vec![2]], d(2).scale(&RationalFunction::rational(1, 2)));
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn symmetric_difference() {
        // (u(x+2h) - u(x)) / (2h) about the shifted centre is u_x + h u_xx + ...
        let r = ring();
        let p = (&r.var("u", &[2]) - &r.var("u", &[0]))
            .scale(&(&RationalFunction::one() / &(&RationalFunction::integer(2) * &h())));
        let e = taylor_expand(&p, &r, 2).unwrap();
        assert_eq!(e[&vec![0]], d(1));
        assert_eq!(e[&vec![1]], d(2));
    }

    #[test]
    fn forward_difference_limit() {
        let r = ring();
        let p = (&r.var("u", &[1]) - &r.var("u", &[0])).scale(&h().inv().unwrap());
        let l = continuous_limit(&p, &r, 1).unwrap();
        assert_eq!(l.order, 0);
        assert_eq!(l.leading, d(1));
    }

    #[test]
    fn limit_widens_the_truncation() {
        let r = ring();
        let p = r.var("u", &[0]).scale(&h().pow(5));
        let l = continuous_limit(&p, &r, 1).unwrap();
        assert_eq!(l.order, 5);
        assert_eq!(l.leading, d(0));
    }

    #[test]
    fn numeric_step_has_no_limit() {
        let r = DiffRing::new(Grid::unit(&["x"]), DiffOrdering::new(Ranking::orderly(1, 1)), &["u"]);
        assert!(matches!(
            taylor_expand(&r.var("u", &[1]), &r, 2),
            Err(Error::NoSpacingSymbol(_))
        ));
    }
}

use std::collections::BTreeSet;

use super::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::monomial::{Monomial as DiffMonomial, MultiIndex};

/// `poly = m1·(θ1∘p) − m2·(θ2∘q)` where both products have leading monomial `lcm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPolynomial {
    pub poly: DiffPoly,
    pub theta1: MultiIndex,
    pub theta2: MultiIndex,
    pub m1: DiffMonomial,
    pub m2: DiffMonomial,
    pub lcm: DiffMonomial,
}

/// All S-polynomials of the monic normalizations of `p` and `q` at minimal
/// shift overlaps of their leading monomials. Overlaps sharing no shifted
/// variable are skipped, as are S-polynomials that vanish identically. For
/// `p == q` the zero overlap is excluded and each pair of opposite relative
/// shifts is taken once.
pub fn s_pairs(p: &DiffPoly, q: &DiffPoly, ring: &DiffRing) -> Result<Vec<SPolynomial>> {
    let o = &ring.ordering;
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let same = p == q;
    let (p, q) = (p.monic(o), q.monic(o));
    let (lp, lq) = (p.lm(o).unwrap(), q.lm(o).unwrap());
    let mut deltas: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (a, _) in lp.factors() {
        for (b, _) in lq.factors() {
            if a.indet != b.indet {
                continue;
            }
            let d: Vec<i64> = b
                .index
                .iter()
                .zip(&a.index)
                .map(|(&x, &y)| x as i64 - y as i64)
                .collect();
            if same && d.iter().all(|&x| x == 0) {
                continue;
            }
            deltas.insert(d);
        }
    }
    let mut out = Vec::new();
    for d in &deltas {
        let theta1: MultiIndex = d.iter().map(|&x| x.max(0) as u32).collect();
        let theta2: MultiIndex = d.iter().map(|&x| (-x).max(0) as u32).collect();
        if same && o.ranking.cmp_axes_lex(&theta1, &theta2) == std::cmp::Ordering::Greater {
            let neg: Vec<i64> = d.iter().map(|x| -x).collect();
            if deltas.contains(&neg) {
                continue;
            }
        }
        let a = lp.shifted(&theta1);
        let b = lq.shifted(&theta2);
        let lcm = a.lcm(&b);
        let m1 = lcm.div(&a).expect("lcm is a multiple");
        let m2 = lcm.div(&b).expect("lcm is a multiple");
        let pa = p.shift(&ring.grid, &theta1);
        let qb = q.shift(&ring.grid, &theta2);
        let one = crate::coeff::RationalFunction::one();
        let poly = &pa.mul_term(&one, &m1) - &qb.mul_term(&one, &m2);
        if poly.is_zero() {
            continue;
        }
        out.push(SPolynomial {
            poly,
            theta1,
            theta2,
            m1,
            m2,
            lcm,
        });
    }
    Ok(out)
}

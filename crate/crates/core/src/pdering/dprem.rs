use rayon::prelude::*;

use super::janet::{in_cone, janet_assign};
use super::ring::{DerivVar, DiffrlPoly, DiffrlRing};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// One involutive subsystem of a differential decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    pub equations: Vec<DiffrlPoly>,
    pub inequations: Vec<DiffrlPoly>,
    pub leaders: Vec<DerivVar>,
    /// Janet-multiplicative axes of each equation.
    pub mult_vars: Vec<Vec<usize>>,
}

impl SimpleSystem {
    /// Computes leaders and the Janet assignment. Fails on a constant or
    /// zero equation, duplicate leaders, or a vanishing initial or separant.
    pub fn new(equations: Vec<DiffrlPoly>, inequations: Vec<DiffrlPoly>, ring: &DiffrlRing) -> Result<Self> {
        let mut leaders = Vec::with_capacity(equations.len());
        for (index, e) in equations.iter().enumerate() {
            let l = ring
                .leader(e)
                .ok_or_else(|| Error::Input(format!("equation {index} has no dependent variable")))?;
            let init = ring.initial(e).unwrap_or_default();
            let sep = ring.separant(e).unwrap_or_default();
            if init.is_zero() || sep.is_zero() {
                return Err(Error::ZeroInitial { index });
            }
            leaders.push(l);
        }
        let mult_vars = janet_assign(&leaders, &ring.ranking).map_err(|e| match e {
            Error::DuplicateLeader(_) => {
                let i = (0..leaders.len())
                    .find(|&i| leaders[..i].contains(&leaders[i]))
                    .unwrap();
                Error::DuplicateLeader(ring.display_var(&leaders[i]))
            }
            other => other,
        })?;
        Ok(SimpleSystem {
            equations,
            inequations,
            leaders,
            mult_vars,
        })
    }

    /// Like [`SimpleSystem::new`], additionally checking declared
    /// multiplicative axes against the computed assignment.
    pub fn with_declared_mult_vars(
        equations: Vec<DiffrlPoly>,
        inequations: Vec<DiffrlPoly>,
        declared: &[Vec<usize>],
        ring: &DiffrlRing,
    ) -> Result<Self> {
        let s = Self::new(equations, inequations, ring)?;
        for (i, (d, c)) in declared.iter().zip(&s.mult_vars).enumerate() {
            let mut d = d.clone();
            d.sort_unstable();
            if d != *c {
                return Err(Error::Input(format!(
                    "declared multiplicative variables of equation {i} disagree with the Janet assignment"
                )));
            }
        }
        Ok(s)
    }

    /// The equation and prolongation whose Janet cone contains `v`.
    pub fn reducer_for(&self, v: &DerivVar) -> Option<(usize, Vec<u32>)> {
        self.leaders
            .iter()
            .zip(&self.mult_vars)
            .enumerate()
            .find_map(|(i, (l, m))| in_cone(v, l, m).map(|t| (i, t)))
    }
}

/// One pseudo-division: `multiplier·r_before − quotient·(∂^theta eq) = r_after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpremStep {
    pub equation: usize,
    pub theta: Vec<u32>,
    pub multiplier: DiffrlPoly,
    pub quotient: DiffrlPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dprem {
    pub remainder: DiffrlPoly,
    /// Product of the initial and separant powers applied to the input.
    pub multiplier: DiffrlPoly,
    pub steps: Vec<DpremStep>,
}

impl Dprem {
    /// Checks `multiplier·f − remainder = Σ quotients·prolongations` exactly.
    pub fn verify(&self, f: &DiffrlPoly, system: &SimpleSystem, ring: &DiffrlRing) -> bool {
        let mut m = DiffrlPoly::constant(RationalFunction::one());
        let mut comb = DiffrlPoly::zero();
        for s in &self.steps {
            let g = ring.prolong(&system.equations[s.equation], &s.theta);
            m = &m * &s.multiplier;
            comb = &(&comb * &s.multiplier) + &(&s.quotient * &g);
        }
        m == self.multiplier && &(&m * f) - &self.remainder == comb
    }
}

fn power(v: &DerivVar, e: u32) -> DiffrlPoly {
    DiffrlPoly::term(RationalFunction::one(), Monomial::from_factors([(v.clone(), e)]))
}

/// Janet pseudo-remainder of `f` modulo the equations of `system`: the highest
/// Janet-reducible variable is eliminated first, by the prolonged equation
/// (multiplier: a power of its separant) or, for the leader itself, by the
/// equation (multiplier: a power of its initial).
pub fn dprem(f: &DiffrlPoly, system: &SimpleSystem, ring: &DiffrlRing) -> Result<Dprem> {
    let mut r = f.clone();
    let mut multiplier = DiffrlPoly::constant(RationalFunction::one());
    let mut steps = Vec::new();
    loop {
        let target = ring.vars_desc(&r).into_iter().find_map(|v| {
            let (i, theta) = system.reducer_for(&v)?;
            let proper = theta.iter().any(|&t| t > 0);
            if proper || ring.degree_in(&r, &v) >= ring.degree_in(&system.equations[i], &v) {
                Some((v, i, theta))
            } else {
                None
            }
        });
        let Some((v, i, theta)) = target else {
            break;
        };
        let g = ring.prolong(&system.equations[i], &theta);
        let coeffs = ring.coefficients_in(&g, &v);
        let (&dg, lc) = coeffs.iter().next_back().expect("prolongation contains its leader");
        if lc.is_zero() {
            return Err(Error::ZeroInitial { index: i });
        }
        let mut step_mult = DiffrlPoly::constant(RationalFunction::one());
        let mut quotient = DiffrlPoly::zero();
        loop {
            let dr = ring.degree_in(&r, &v);
            if r.is_zero() || dr < dg {
                break;
            }
            let lr = ring.coefficients_in(&r, &v).remove(&dr).unwrap_or_default();
            let w = &lr * &power(&v, dr - dg);
            r = &(lc * &r) - &(&w * &g);
            quotient = &(lc * &quotient) + &w;
            step_mult = &step_mult * lc;
        }
        multiplier = &multiplier * &step_mult;
        steps.push(DpremStep {
            equation: i,
            theta,
            multiplier: step_mult,
            quotient,
        });
    }
    Ok(Dprem {
        remainder: r,
        multiplier,
        steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consequence {
    Yes,
    No { subsystem: usize, residual: Dprem },
}

/// `f` is a consequence when its Janet pseudo-remainder vanishes modulo every
/// subsystem; otherwise the first failing subsystem is reported.
pub fn is_consequence(f: &DiffrlPoly, decomposition: &[SimpleSystem], ring: &DiffrlRing) -> Result<Consequence> {
    if decomposition.is_empty() {
        return Err(Error::Input("empty decomposition".into()));
    }
    let results: Vec<Result<Dprem>> = decomposition.par_iter().map(|s| dprem(f, s, ring)).collect();
    for (subsystem, r) in results.into_iter().enumerate() {
        let r = r?;
        if !r.remainder.is_zero() {
            return Ok(Consequence::No { subsystem, residual: r });
        }
    }
    Ok(Consequence::Yes)
}

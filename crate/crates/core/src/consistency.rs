//! Verdicts: weak consistency (every difference equation tends to a
//! consequence of the PDE system) and strong consistency (every element of a
//! standard basis of the difference ideal does).

use serde::{Deserialize, Serialize};

use crate::coeff::RationalFunction;
use crate::diffring::{standard_basis, BasisOutcome, BasisStats, BasisStatus, Bounds, Control, DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::limit::{continuous_limit, LimitResult};
use crate::pdering::{is_consequence, Consequence, DiffrlPoly, DiffrlRing, Dprem, SimpleSystem};

/// Truncation order used for the first expansion attempt of each limit.
pub const DEFAULT_SERIES_ORDER: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Weak,
    Strong,
}

/// How a limit is matched against the PDE system in the weak check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeakMode {
    /// The limit must be a nonzero multiple of an equation of the system.
    Exact,
    /// The limit must be a consequence of the decomposition.
    #[default]
    Ideal,
}

/// A difference polynomial whose limit is not accepted.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub poly: DiffPoly,
    /// Index of the difference equation (weak check) or history entry of the
    /// basis computation (strong check).
    pub source: usize,
    pub limit: LimitResult,
    /// Failing subsystem and its residual; absent for exact-mode mismatches.
    pub subsystem: Option<usize>,
    pub residual: Option<Dprem>,
}

/// Per-equation outcome of the weak check.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationLimit {
    pub limit: LimitResult,
    /// Exact mode: the matched equation and the factor `c` with `limit = c·F[i]`.
    pub matched: Option<(usize, RationalFunction)>,
    /// Ideal mode: whether the limit is a consequence of the decomposition.
    pub consequence: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub kind: CheckKind,
    pub weak_mode: Option<WeakMode>,
    pub witnesses: Vec<Witness>,
    pub equations: Vec<EquationLimit>,
    /// Strong check only.
    pub basis: Option<BasisOutcome>,
}

impl ConsistencyReport {
    pub fn basis_status(&self) -> Option<BasisStatus> {
        self.basis.as_ref().map(|b| b.status)
    }

    pub fn stats(&self) -> BasisStats {
        self.basis.as_ref().map(|b| b.stats).unwrap_or_default()
    }
}

/// Returns `c` with `p = c·q`, if any.
pub fn proportional(p: &DiffrlPoly, q: &DiffrlPoly) -> Option<RationalFunction> {
    let (m, qc) = q.terms().next()?;
    let c = p.coefficient(m)? / qc;
    (q.scale(&c) == *p).then_some(c)
}

fn limit_of(p: &DiffPoly, ring: &DiffRing, series_order: i64) -> Result<LimitResult> {
    continuous_limit(p, ring, series_order)
}

fn consequence_witness(
    poly: &DiffPoly,
    source: usize,
    limit: LimitResult,
    decomposition: &[SimpleSystem],
    diffrl: &DiffrlRing,
) -> Result<Option<Witness>> {
    Ok(match is_consequence(&limit.leading, decomposition, diffrl)? {
        Consequence::Yes => None,
        Consequence::No { subsystem, residual } => Some(Witness {
            poly: poly.clone(),
            source,
            limit,
            subsystem: Some(subsystem),
            residual: Some(residual),
        }),
    })
}

/// Weak consistency: the continuous limit of every difference equation is
/// matched against `f` (exact mode) or the decomposition (ideal mode).
#[allow(clippy::too_many_arguments)]
pub fn w_check(
    ftilde: &[DiffPoly],
    f: &[DiffrlPoly],
    decomposition: &[SimpleSystem],
    ring: &DiffRing,
    diffrl: &DiffrlRing,
    mode: WeakMode,
    series_order: i64,
) -> Result<ConsistencyReport> {
    if mode == WeakMode::Ideal && decomposition.is_empty() {
        return Err(Error::Input("ideal mode needs a decomposition".into()));
    }
    let mut equations = Vec::new();
    let mut witnesses = Vec::new();
    for (i, p) in ftilde.iter().enumerate() {
        let limit = limit_of(p, ring, series_order)?;
        let entry = match mode {
            WeakMode::Exact => {
                let matched = f
                    .iter()
                    .enumerate()
                    .find_map(|(j, q)| proportional(&limit.leading, q).map(|c| (j, c)));
                if matched.is_none() {
                    witnesses.push(Witness {
                        poly: p.clone(),
                        source: i,
                        limit: limit.clone(),
                        subsystem: None,
                        residual: None,
                    });
                }
                EquationLimit {
                    limit,
                    matched,
                    consequence: None,
                }
            }
            WeakMode::Ideal => {
                let w = consequence_witness(p, i, limit.clone(), decomposition, diffrl)?;
                let ok = w.is_none();
                witnesses.extend(w);
                EquationLimit {
                    limit,
                    matched: None,
                    consequence: Some(ok),
                }
            }
        };
        equations.push(entry);
    }
    Ok(ConsistencyReport {
        verdict: if witnesses.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        },
        kind: CheckKind::Weak,
        weak_mode: Some(mode),
        witnesses,
        equations,
        basis: None,
    })
}

/// Strong consistency: completes `ftilde` to a standard basis and checks the
/// limit of every adjoined element as soon as it appears, stopping at the
/// first one that is not a consequence of the decomposition. On completion
/// every element of the final basis is checked as well.
pub fn s_check(
    ftilde: &[DiffPoly],
    decomposition: &[SimpleSystem],
    ring: &DiffRing,
    diffrl: &DiffrlRing,
    bounds: Bounds,
    series_order: i64,
) -> Result<ConsistencyReport> {
    if decomposition.is_empty() {
        return Err(Error::Input("the strong check needs a decomposition".into()));
    }
    let mut equations = Vec::new();
    for (i, p) in ftilde.iter().enumerate() {
        let limit = limit_of(p, ring, series_order)?;
        if let Some(w) = consequence_witness(p, i, limit.clone(), decomposition, diffrl)? {
            // Inputs are elements of the ideal too; history ids of inputs equal
            // their positions.
            return Ok(ConsistencyReport {
                verdict: Verdict::Inconsistent,
                kind: CheckKind::Strong,
                weak_mode: None,
                witnesses: vec![w],
                equations,
                basis: None,
            });
        }
        equations.push(EquationLimit {
            limit,
            matched: None,
            consequence: Some(true),
        });
    }
    let mut failure: Option<Result<Witness>> = None;
    let outcome = standard_basis(ftilde, ring, bounds, None, |e| {
        let checked = limit_of(e.poly, ring, series_order)
            .and_then(|l| consequence_witness(e.poly, e.id, l, decomposition, diffrl));
        match checked {
            Ok(None) => Control::Continue,
            Ok(Some(w)) => {
                failure = Some(Ok(w));
                Control::Abort
            }
            Err(err) => {
                failure = Some(Err(err));
                Control::Abort
            }
        }
    })?;
    let mut witnesses = Vec::new();
    if let Some(f) = failure {
        witnesses.push(f?);
    } else if outcome.status == BasisStatus::Complete {
        for (p, &id) in outcome.basis.iter().zip(&outcome.basis_ids) {
            let limit = limit_of(p, ring, series_order)?;
            if let Some(w) = consequence_witness(p, id, limit, decomposition, diffrl)? {
                witnesses.push(w);
                break;
            }
        }
    }
    let verdict = if !witnesses.is_empty() {
        Verdict::Inconsistent
    } else if outcome.status == BasisStatus::Complete {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    };
    Ok(ConsistencyReport {
        verdict,
        kind: CheckKind::Strong,
        weak_mode: None,
        witnesses,
        equations,
        basis: Some(outcome),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Grid, Symbol};
    use crate::diffring::DiffOrdering;
    use crate::ranking::Ranking;

    fn rings(axes: &[(&str, &str)], deps: &[&str]) -> (DiffRing, DiffrlRing) {
        let names: Vec<&str> = axes.iter().map(|a| a.0).collect();
        let diff = DiffRing::new(
            Grid::with_spacings(axes),
            DiffOrdering::new(Ranking::orderly(axes.len(), deps.len())),
            deps,
        );
        let diffrl = DiffrlRing::new(&names, Ranking::orderly(axes.len(), deps.len()), deps);
        (diff, diffrl)
    }

    fn inv(s: &str) -> RationalFunction {
        RationalFunction::var(Symbol::new(s)).inv().unwrap()
    }

    #[test]
    fn forward_difference_is_exactly_consistent() {
        let (d, r) = rings(&[("x", "h")], &["u", "v"]);
        let ft = &(&d.var("u", &[1]) - &d.var("u", &[0])).scale(&inv("h")) - &d.var("v", &[0]);
        let f = &r.var("u", &[1]) - &r.var("v", &[0]);
        let sys = SimpleSystem::new(vec![f.clone()], vec![], &r).unwrap();
        let rep = w_check(
            std::slice::from_ref(&ft),
            std::slice::from_ref(&f),
            std::slice::from_ref(&sys),
            &d,
            &r,
            WeakMode::Exact,
            2,
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert_eq!(rep.equations[0].matched.as_ref().map(|m| m.0), Some(0));
        let rep = w_check(&[ft], &[f], &[sys], &d, &r, WeakMode::Ideal, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert_eq!(rep.equations[0].consequence, Some(true));
    }

    #[test]
    fn wrong_sign_is_a_weak_witness() {
        let (d, r) = rings(&[("x", "h")], &["u", "v"]);
        let ft = &(&d.var("u", &[1]) - &d.var("u", &[0])).scale(&inv("h")) - &d.var("v", &[0]);
        let f = &r.var("u", &[1]) + &r.var("v", &[0]);
        let sys = SimpleSystem::new(vec![f.clone()], vec![], &r).unwrap();
        let rep = w_check(&[ft], &[f], std::slice::from_ref(&sys), &d, &r, WeakMode::Ideal, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconsistent);
        let w = &rep.witnesses[0];
        let res = w.residual.as_ref().unwrap();
        // u_x - v reduces to -2v modulo u_x + v
        assert_eq!(res.remainder, r.var("v", &[0]).scale(&RationalFunction::integer(-2)));
        assert!(res.verify(&w.limit.leading, &sys, &r));
    }

    #[test]
    fn single_linear_scheme_is_strongly_consistent() {
        let (d, r) = rings(&[("x", "h"), ("t", "tau")], &["u"]);
        let ut = (&d.var("u", &[0, 1]) - &d.var("u", &[0, 0])).scale(&inv("tau"));
        let ux = (&d.var("u", &[1, 0]) - &d.var("u", &[0, 0])).scale(&inv("h"));
        let f = &r.var("u", &[0, 1]) - &r.var("u", &[1, 0]);
        let sys = SimpleSystem::new(vec![f], vec![], &r).unwrap();
        let rep = s_check(&[&ut - &ux], &[sys], &d, &r, Bounds::default(), 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert_eq!(rep.basis_status(), Some(BasisStatus::Complete));
        assert_eq!(rep.basis.unwrap().basis.len(), 1);
    }

    #[test]
    fn inconsistent_input_is_reported_before_completion() {
        let (d, r) = rings(&[("x", "h")], &["u"]);
        let ft = (&d.var("u", &[1]) - &d.var("u", &[0])).scale(&inv("h"));
        let sys = SimpleSystem::new(vec![r.var("u", &[2])], vec![], &r).unwrap();
        let rep = s_check(&[ft], &[sys], &d, &r, Bounds::default(), 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconsistent);
        assert!(rep.basis.is_none());
        assert_eq!(rep.witnesses[0].source, 0);
    }

    #[test]
    fn proportional_finds_the_factor() {
        let (_, r) = rings(&[("x", "h")], &["u", "v"]);
        let f = &r.var("u", &[1]) - &r.var("v", &[0]);
        let c = RationalFunction::var(Symbol::new("x"));
        assert_eq!(proportional(&f.scale(&c), &f), Some(c));
        assert_eq!(proportional(&r.var("u", &[1]), &f), None);
    }

    #[test]
    fn strong_check_needs_a_decomposition() {
        let (d, r) = rings(&[("x", "h")], &["u"]);
        assert!(s_check(&[d.var("u", &[0])], &[], &d, &r, Bounds::default(), 2).is_err());
    }
}

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduce::{
    interreduce_tracked, normal_form_bounded, AbortFlag, Interrupted, NormalForm, ReductionMode, ReductionStep,
};
use super::spoly::{s_pairs, SPolynomial};
use super::{DiffPoly, DiffRing};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::monomial::{Monomial as DiffMonomial, MultiIndex};

pub const DEFAULT_MAX_PASSES: usize = 16;
pub const DEFAULT_MAX_ORDER: u32 = 32;
pub const DEFAULT_MAX_TERMS: usize = 20_000;

/// Limits that keep a possibly infinite completion finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_passes: usize,
    /// Largest total shift allowed in an adjoined element.
    pub max_monomial_order: u32,
    /// Largest intermediate polynomial a single reduction may build.
    pub max_terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_passes: DEFAULT_MAX_PASSES,
            max_monomial_order: DEFAULT_MAX_ORDER,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisStatus {
    Complete,
    Truncated,
    Aborted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisStats {
    pub passes: usize,
    pub s_pairs: usize,
    pub reductions: usize,
}

/// Returned by the `on_new` callback of [`standard_basis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    Abort,
}

/// How an element of the computation history was obtained. Indices refer to
/// earlier history entries; reduction steps use history indices as reducers.
// one per history entry, so the inline operator and monomial storage is cheap
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// `inputs[index] = lc · poly`.
    Input { index: usize, lc: RationalFunction },
    /// `m1·(θ1∘left) − m2·(θ2∘right) = Σ steps + scale · poly`.
    SPolynomial {
        left: usize,
        right: usize,
        theta1: MultiIndex,
        theta2: MultiIndex,
        m1: DiffMonomial,
        m2: DiffMonomial,
        steps: Vec<ReductionStep>,
        scale: RationalFunction,
    },
    /// `source = Σ steps + scale · poly`.
    Reduced {
        source: usize,
        steps: Vec<ReductionStep>,
        scale: RationalFunction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryEntry {
    pub poly: DiffPoly,
    pub derivation: Derivation,
}

/// An element adjoined during completion, as passed to the callback.
#[derive(Clone, Copy, Debug)]
pub struct NewElement<'a> {
    pub id: usize,
    pub poly: &'a DiffPoly,
    pub pass: usize,
}

#[derive(Clone, Debug)]
pub struct BasisOutcome {
    pub basis: Vec<DiffPoly>,
    /// History indices of the basis elements.
    pub basis_ids: Vec<usize>,
    pub status: BasisStatus,
    pub stats: BasisStats,
    pub history: Vec<HistoryEntry>,
}

fn replay_steps(steps: &[ReductionStep], history: &[HistoryEntry], ring: &DiffRing) -> DiffPoly {
    let mut acc = DiffPoly::zero();
    for s in steps {
        let shifted = history[s.reducer].poly.shift(&ring.grid, &s.theta);
        acc = &acc + &shifted.mul_term(&s.coeff, &s.monomial);
    }
    acc
}

impl BasisOutcome {
    /// Checks that entry `id` is exactly what its derivation claims, in terms of
    /// the inputs and earlier entries.
    pub fn verify_entry(&self, id: usize, inputs: &[DiffPoly], ring: &DiffRing) -> bool {
        let e = &self.history[id];
        let one = RationalFunction::one();
        match &e.derivation {
            Derivation::Input { index, lc } => inputs.get(*index).is_some_and(|f| e.poly.scale(lc) == *f),
            Derivation::SPolynomial {
                left,
                right,
                theta1,
                theta2,
                m1,
                m2,
                steps,
                scale,
            } => {
                if left >= &id || right >= &id {
                    return false;
                }
                let a = self.history[*left].poly.shift(&ring.grid, theta1).mul_term(&one, m1);
                let b = self.history[*right].poly.shift(&ring.grid, theta2).mul_term(&one, m2);
                let s = &a - &b;
                let rebuilt = &replay_steps(steps, &self.history, ring) + &e.poly.scale(scale);
                steps.iter().all(|st| st.reducer < id) && s == rebuilt
            }
            Derivation::Reduced { source, steps, scale } => {
                if source >= &id {
                    return false;
                }
                let rebuilt = &replay_steps(steps, &self.history, ring) + &e.poly.scale(scale);
                steps.iter().all(|st| st.reducer < id) && self.history[*source].poly == rebuilt
            }
        }
    }

    /// Verifies the whole history, so every entry is a combination of shifted
    /// inputs.
    pub fn verify_history(&self, inputs: &[DiffPoly], ring: &DiffRing) -> bool {
        (0..self.history.len()).all(|id| self.verify_entry(id, inputs, ring))
    }

    /// History indices that entry `id` was built from, transitively, including `id`.
    pub fn ancestry(&self, id: usize) -> Vec<usize> {
        let mut seen = vec![false; self.history.len()];
        let mut stack = vec![id];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            match &self.history[i].derivation {
                Derivation::Input { .. } => {}
                Derivation::SPolynomial { left, right, steps, .. } => {
                    stack.extend([*left, *right]);
                    stack.extend(steps.iter().map(|s| s.reducer));
                }
                Derivation::Reduced { source, steps, .. } => {
                    stack.push(*source);
                    stack.extend(steps.iter().map(|s| s.reducer));
                }
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }
}

fn interreduce_history(
    history: &mut Vec<HistoryEntry>,
    ids: &[usize],
    ring: &DiffRing,
    max_terms: usize,
) -> Vec<usize> {
    let items = ids.iter().map(|&i| (history[i].poly.clone(), i)).collect();
    let (reduced, _) = interreduce_tracked(items, ring, Some(max_terms), |source, tags, nf| {
        history.push(HistoryEntry {
            poly: nf.remainder.clone(),
            derivation: Derivation::Reduced {
                source,
                steps: remap(nf, tags),
                scale: nf.scale.clone(),
            },
        });
        history.len() - 1
    });
    reduced.into_iter().map(|(_, id)| id).collect()
}

fn remap(nf: &NormalForm, ids: &[usize]) -> Vec<ReductionStep> {
    nf.steps
        .iter()
        .map(|s| ReductionStep {
            reducer: ids[s.reducer],
            ..s.clone()
        })
        .collect()
}

/// Completion of `fs` to an interreduced standard basis of the σ-ideal it
/// generates. Each pass forms the S-polynomials of pairs not seen before,
/// reduces them in parallel against the elements present at the start of the
/// pass and adjoins the nonzero normal forms in order of their overlap
/// monomial. `on_new` sees every adjoined element and may stop the run.
pub fn standard_basis<F>(
    fs: &[DiffPoly],
    ring: &DiffRing,
    bounds: Bounds,
    abort: Option<&AbortFlag>,
    mut on_new: F,
) -> Result<BasisOutcome>
where
    F: FnMut(NewElement<'_>) -> Control,
{
    if fs.is_empty() {
        return Err(Error::Input("empty generating set".into()));
    }
    if fs.iter().any(DiffPoly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let o = &ring.ordering;
    let local_abort = AbortFlag::new();
    let abort = abort.unwrap_or(&local_abort);
    let mut history: Vec<HistoryEntry> = Vec::new();
    let mut g_ids: Vec<usize> = Vec::new();
    for (index, f) in fs.iter().enumerate() {
        let lc = f.lc(o).unwrap().clone();
        let poly = f.monic(o);
        let dup = g_ids.iter().any(|&i| history[i].poly == poly);
        history.push(HistoryEntry {
            poly,
            derivation: Derivation::Input { index, lc },
        });
        if !dup {
            g_ids.push(history.len() - 1);
        }
    }
    let mut stats = BasisStats::default();
    let mut processed: HashSet<(usize, usize)> = HashSet::new();
    let finish = |history: Vec<HistoryEntry>, ids: Vec<usize>, status, stats| BasisOutcome {
        basis: ids.iter().map(|&i| history[i].poly.clone()).collect(),
        basis_ids: ids,
        status,
        stats,
        history,
    };
    let status = loop {
        let h_ids = g_ids.clone();
        let h: Vec<DiffPoly> = h_ids.iter().map(|&i| history[i].poly.clone()).collect();
        let mut tasks: Vec<(usize, usize, SPolynomial)> = Vec::new();
        for a in 0..h.len() {
            for b in a..h.len() {
                if !processed.contains(&(h_ids[a], h_ids[b])) {
                    for s in s_pairs(&h[a], &h[b], ring)? {
                        tasks.push((h_ids[a], h_ids[b], s));
                    }
                }
            }
        }
        if tasks.is_empty() {
            break BasisStatus::Complete;
        }
        if stats.passes >= bounds.max_passes {
            break BasisStatus::Truncated;
        }
        stats.passes += 1;
        for a in 0..h.len() {
            for b in a..h.len() {
                processed.insert((h_ids[a], h_ids[b]));
            }
        }
        let mut keyed: Vec<_> = tasks.into_iter().map(|t| (o.key(&t.2.lcm), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let tasks: Vec<_> = keyed.into_iter().map(|(_, t)| t).collect();
        stats.s_pairs += tasks.len();
        // reduce against the frozen snapshot in parallel ...
        let limit = Some(bounds.max_terms);
        let nfs: std::result::Result<Vec<NormalForm>, Interrupted> = tasks
            .par_iter()
            .map(|(_, _, s)| normal_form_bounded(&s.poly, &h, ring, ReductionMode::Full, Some(abort), limit))
            .collect();
        let nfs = match nfs {
            Ok(nfs) => nfs,
            Err(Interrupted::Aborted) => return Ok(finish(history, g_ids, BasisStatus::Aborted, stats)),
            Err(Interrupted::TooLarge) => break BasisStatus::Truncated,
        };
        // ... then merge in order, finishing each reduction against what has
        // been adjoined so far in this pass
        let mut too_deep = false;
        let mut too_large = false;
        for ((left, right, s), nf) in tasks.into_iter().zip(nfs) {
            stats.reductions += nf.steps.len();
            if nf.remainder.is_zero() {
                continue;
            }
            let mut steps = remap(&nf, &h_ids);
            let mut scale = nf.scale;
            let mut remainder = nf.remainder;
            if g_ids.len() > h_ids.len() {
                let g: Vec<DiffPoly> = g_ids.iter().map(|&i| history[i].poly.clone()).collect();
                let more = match normal_form_bounded(&remainder, &g, ring, ReductionMode::Full, Some(abort), limit) {
                    Ok(nf) => nf,
                    Err(Interrupted::Aborted) => return Ok(finish(history, g_ids, BasisStatus::Aborted, stats)),
                    Err(Interrupted::TooLarge) => {
                        too_large = true;
                        break;
                    }
                };
                stats.reductions += more.steps.len();
                steps.extend(remap(&more, &g_ids).into_iter().map(|st| ReductionStep {
                    coeff: &st.coeff * &scale,
                    ..st
                }));
                scale = &scale * &more.scale;
                remainder = more.remainder;
            }
            if remainder.is_zero() {
                continue;
            }
            too_deep |= remainder.max_order() > bounds.max_monomial_order;
            history.push(HistoryEntry {
                poly: remainder,
                derivation: Derivation::SPolynomial {
                    left,
                    right,
                    theta1: s.theta1,
                    theta2: s.theta2,
                    m1: s.m1,
                    m2: s.m2,
                    steps,
                    scale,
                },
            });
            let id = history.len() - 1;
            g_ids.push(id);
            let event = NewElement {
                id,
                poly: &history[id].poly,
                pass: stats.passes,
            };
            if on_new(event) == Control::Abort || abort.is_raised() {
                return Ok(finish(history, g_ids, BasisStatus::Aborted, stats));
            }
        }
        if too_deep || too_large {
            break BasisStatus::Truncated;
        }
        if g_ids.len() > h_ids.len() {
            g_ids = interreduce_history(&mut history, &g_ids, ring, bounds.max_terms);
        }
    };
    if status == BasisStatus::Complete {
        g_ids = interreduce_history(&mut history, &g_ids, ring, bounds.max_terms);
    }
    Ok(finish(history, g_ids, status, stats))
}

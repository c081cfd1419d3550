use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use super::ordering::MonoKey;
use super::{DiffOrdering, DiffPoly, DiffRing};
use crate::coeff::RationalFunction;
use crate::monomial::{Monomial as DiffMonomial, MultiIndex};

/// Cooperative cancellation signal shared between a computation and its caller.
#[derive(Clone, Debug, Default)]
pub struct AbortFlag(Arc<AtomicBool>);

impl AbortFlag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn raise(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_raised(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

/// Finds `θ` and `t` with `w = t·(θ∘v)`, choosing the lexicographically
/// smallest `θ` under the axis precedence of `o`.
pub fn divides(v: &DiffMonomial, w: &DiffMonomial, o: &DiffOrdering) -> Option<(MultiIndex, DiffMonomial)> {
    let n = o.ranking.num_axes();
    let Some((first, e0)) = v.factors().first() else {
        return Some((smallvec::smallvec![0; n], w.clone()));
    };
    let mut best: Option<(MultiIndex, DiffMonomial)> = None;
    for (cand, e) in w.factors() {
        if cand.indet != first.indet || *e < *e0 {
            continue;
        }
        if cand.index.iter().zip(&first.index).any(|(a, b)| a < b) {
            continue;
        }
        let theta: MultiIndex = cand.index.iter().zip(&first.index).map(|(a, b)| a - b).collect();
        if let Some((b, _)) = &best {
            if o.ranking.cmp_axes_lex(&theta, b) != std::cmp::Ordering::Less {
                continue;
            }
        }
        if let Some(t) = w.div(&v.shifted(&theta)) {
            best = Some((theta, t));
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionMode {
    /// Reduce only while the leading monomial is reducible.
    Head,
    /// Reduce every monomial.
    Full,
}

/// One elementary reduction `p := p − coeff·monomial·(θ∘F[reducer])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub reducer: usize,
    pub coeff: RationalFunction,
    pub monomial: DiffMonomial,
    pub theta: MultiIndex,
}

/// Result of a normal-form computation, with the reductions that produced it.
///
/// The input equals `Σ coeff·monomial·(θ∘F[reducer]) + scale·remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub remainder: DiffPoly,
    pub scale: RationalFunction,
    pub steps: Vec<ReductionStep>,
}

impl NormalForm {
    /// Rebuilds the input polynomial from the trace.
    pub fn replay(&self, fs: &[DiffPoly], ring: &DiffRing) -> DiffPoly {
        let mut acc = self.remainder.scale(&self.scale);
        for s in &self.steps {
            let shifted = fs[s.reducer].shift(&ring.grid, &s.theta);
            acc = &acc + &shifted.mul_term(&s.coeff, &s.monomial);
        }
        acc
    }
}

struct Reducer {
    lm: DiffMonomial,
    lc: RationalFunction,
    tail: Vec<(DiffMonomial, RationalFunction)>,
}

impl Reducer {
    fn new(p: &DiffPoly, o: &DiffOrdering) -> Self {
        let (lm, lc) = p.leading_term(o).expect("reducers are nonzero");
        Reducer {
            lm: lm.clone(),
            lc: lc.clone(),
            tail: p
                .terms()
                .filter(|(m, _)| *m != lm)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

type Work = BTreeMap<MonoKey, (DiffMonomial, RationalFunction)>;

fn work_add(w: &mut Work, o: &DiffOrdering, m: DiffMonomial, c: RationalFunction) {
    let k = o.key(&m);
    match w.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert((m, c));
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = &e.get().1 + &c;
            if s.is_zero() {
                e.remove();
            } else {
                e.get_mut().1 = s;
            }
        }
    }
}

/// Normal form of `p` modulo `fs`. The reducer is the first element of `fs`
/// whose leading monomial divides, with the shift chosen by [`divides`].
pub fn normal_form(p: &DiffPoly, fs: &[DiffPoly], ring: &DiffRing, mode: ReductionMode) -> NormalForm {
    normal_form_until(p, fs, ring, mode, None).expect("no abort flag supplied")
}

/// Like [`normal_form`], but returns `None` as soon as `abort` is raised.
pub fn normal_form_until(
    p: &DiffPoly,
    fs: &[DiffPoly],
    ring: &DiffRing,
    mode: ReductionMode,
    abort: Option<&AbortFlag>,
) -> Option<NormalForm> {
    normal_form_bounded(p, fs, ring, mode, abort, None).ok()
}

/// Why a bounded reduction stopped before reaching a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interrupted {
    Aborted,
    /// The intermediate polynomial exceeded the term limit.
    TooLarge,
}

/// Like [`normal_form_until`], additionally giving up once the intermediate
/// polynomial has more than `max_terms` terms.
pub fn normal_form_bounded(
    p: &DiffPoly,
    fs: &[DiffPoly],
    ring: &DiffRing,
    mode: ReductionMode,
    abort: Option<&AbortFlag>,
    max_terms: Option<usize>,
) -> Result<NormalForm, Interrupted> {
    let o = &ring.ordering;
    let reducers: Vec<Reducer> = fs.iter().map(|f| Reducer::new(f, o)).collect();
    let mut shifted_cache: HashMap<(usize, MultiIndex), Arc<Reducer>> = HashMap::new();
    let mut work: Work = BTreeMap::new();
    for (m, c) in p.terms() {
        work.insert(o.key(m), (m.clone(), c.clone()));
    }
    let mut done: Vec<(DiffMonomial, RationalFunction)> = Vec::new();
    let mut steps = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        if abort.is_some_and(|a| a.is_raised()) {
            return Err(Interrupted::Aborted);
        }
        if max_terms.is_some_and(|n| work.len() + done.len() > n) {
            return Err(Interrupted::TooLarge);
        }
        let found = reducers
            .iter()
            .enumerate()
            .find_map(|(i, r)| divides(&r.lm, &m, o).map(|(theta, t)| (i, theta, t)));
        let Some((i, theta, t)) = found else {
            done.push((m, c));
            if mode == ReductionMode::Head {
                break;
            }
            continue;
        };
        let shifted = shifted_cache
            .entry((i, theta.clone()))
            .or_insert_with(|| {
                let r = &reducers[i];
                Arc::new(Reducer {
                    lm: r.lm.shifted(&theta),
                    lc: ring.grid.shift_all(&r.lc, &theta),
                    tail: r
                        .tail
                        .iter()
                        .map(|(m, c)| (m.shifted(&theta), ring.grid.shift_all(c, &theta)))
                        .collect(),
                })
            })
            .clone();
        let factor = &c / &shifted.lc;
        for (tm, tc) in &shifted.tail {
            work_add(&mut work, o, tm.mul(&t), -&(&factor * tc));
        }
        steps.push(ReductionStep {
            reducer: i,
            coeff: factor,
            monomial: t,
            theta,
        });
    }
    let raw = DiffPoly::from_terms(done.into_iter().chain(work.into_values()));
    let (remainder, scale) = match raw.lc(o) {
        Some(lc) => (raw.monic(o), lc.clone()),
        None => (raw, RationalFunction::one()),
    };
    Ok(NormalForm {
        remainder,
        scale,
        steps,
    })
}

/// Mutual interreduction: each result equals its full normal form modulo the
/// others; zero results are dropped and all results are monic.
pub fn interreduce(fs: &[DiffPoly], ring: &DiffRing) -> Vec<DiffPoly> {
    let items = fs.iter().map(|f| (f.clone(), 0)).collect();
    interreduce_tracked(items, ring, None, |_, _, _| 0)
        .0
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// Interreduction over tagged polynomials. `record(source, reducers, nf)` is
/// called for every replacement and returns the tag of the new element;
/// `reducers` are the tags the trace's reducer indices refer to. Elements
/// whose reduction exceeds `max_terms` are kept as they are; the flag in the
/// result reports whether that happened.
pub(crate) fn interreduce_tracked<F>(
    items: Vec<(DiffPoly, usize)>,
    ring: &DiffRing,
    max_terms: Option<usize>,
    mut record: F,
) -> (Vec<(DiffPoly, usize)>, bool)
where
    F: FnMut(usize, &[usize], &NormalForm) -> usize,
{
    let o = &ring.ordering;
    let mut cur: Vec<(DiffPoly, usize)> = Vec::new();
    for (p, tag) in items {
        if p.is_zero() {
            continue;
        }
        let m = p.monic(o);
        if !cur.iter().any(|(q, _)| *q == m) {
            cur.push((m, tag));
        }
    }
    let mut stuck: HashSet<DiffPoly> = HashSet::new();
    'outer: loop {
        for i in 0..cur.len() {
            if stuck.contains(&cur[i].0) {
                continue;
            }
            let others: Vec<DiffPoly> = cur
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (q, _))| q.clone())
                .collect();
            let Ok(nf) = normal_form_bounded(&cur[i].0, &others, ring, ReductionMode::Full, None, max_terms) else {
                stuck.insert(cur[i].0.clone());
                continue;
            };
            if nf.steps.is_empty() {
                continue;
            }
            let tags: Vec<usize> = cur
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (_, t))| *t)
                .collect();
            let tag = record(cur[i].1, &tags, &nf);
            if nf.remainder.is_zero() {
                cur.remove(i);
            } else {
                cur[i] = (nf.remainder, tag);
            }
            continue 'outer;
        }
        break;
    }
    (cur, !stuck.is_empty())
}

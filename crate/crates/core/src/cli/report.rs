use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coeff::RationalFunction;
use crate::consistency::{CheckKind, ConsistencyReport, EquationLimit, Verdict, WeakMode, Witness};
use crate::diffring::{
    BasisOutcome, BasisStats, BasisStatus, Bounds, Derivation, DiffOrdering, DiffPoly, DiffRing, NormalForm,
};
use crate::limit::LimitResult;
use crate::pdering::{DiffrlPoly, DiffrlRing, Dprem, SimpleSystem};
use crate::polynomial::Polynomial;

/// A rational function as numerator and denominator polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCoeff {
    pub num: String,
    pub den: String,
}

impl JsonCoeff {
    pub fn of(c: &RationalFunction) -> Self {
        JsonCoeff {
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        }
    }
}

/// One factor `var[index]^power` (difference) or `∂^index var` (differential).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFactor {
    pub var: String,
    pub index: Vec<u32>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: JsonCoeff,
    pub factors: Vec<JsonFactor>,
}

/// A polynomial, both as parseable text and term by term. Terms are listed
/// in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPoly {
    pub text: String,
    pub terms: Vec<JsonTerm>,
}

fn poly_json(p: &Polynomial, o: &DiffOrdering, names: &[String], text: String) -> JsonPoly {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| o.cmp_monomials(b.0, a.0));
    let terms = terms
        .into_iter()
        .map(|(m, c)| JsonTerm {
            coeff: JsonCoeff::of(c),
            factors: o
                .sorted_factors(m)
                .into_iter()
                .map(|(v, e)| JsonFactor {
                    var: names[v.indet].clone(),
                    index: v.index.to_vec(),
                    power: *e,
                })
                .collect(),
        })
        .collect();
    JsonPoly { text, terms }
}

pub fn difference_json(p: &DiffPoly, ring: &DiffRing) -> JsonPoly {
    poly_json(p, &ring.ordering, &ring.indet_names, ring.display(p).to_string())
}

pub fn differential_json(p: &DiffrlPoly, ring: &DiffrlRing) -> JsonPoly {
    poly_json(p, &ring.ordering(), &ring.indet_names, ring.display(p).to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitComponent {
    /// Spacing exponents; zero exponents are omitted.
    pub spacings: BTreeMap<String, i32>,
    pub poly: JsonPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub order: i64,
    pub leading: JsonPoly,
    pub components: Vec<LimitComponent>,
}

impl LimitReport {
    pub fn of(l: &LimitResult, ring: &DiffrlRing) -> Self {
        let names: Vec<String> = l.weights.keys().map(|s| s.name().to_string()).collect();
        LimitReport {
            order: l.order,
            leading: differential_json(&l.leading, ring),
            components: l
                .components
                .iter()
                .map(|(e, p)| LimitComponent {
                    spacings: names
                        .iter()
                        .zip(e)
                        .filter(|(_, &k)| k != 0)
                        .map(|(n, &k)| (n.clone(), k))
                        .collect(),
                    poly: differential_json(p, ring),
                })
                .collect(),
        }
    }
}

/// One equation of the fda block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputReport {
    pub index: usize,
    /// As written in the session file.
    pub source: String,
    pub poly: JsonPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub equation: usize,
    pub factor: JsonCoeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationReport {
    pub index: usize,
    pub limit: LimitReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matched: Option<MatchReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub consequence: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpremStepReport {
    pub equation: usize,
    pub theta: Vec<u32>,
    pub multiplier: JsonPoly,
    pub quotient: JsonPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpremReport {
    pub system: usize,
    pub input: JsonPoly,
    pub remainder: JsonPoly,
    pub multiplier: JsonPoly,
    /// Whether the certificate was replayed successfully.
    pub verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub steps: Vec<DpremStepReport>,
}

impl DpremReport {
    pub fn of(f: &DiffrlPoly, d: &Dprem, system: usize, s: &SimpleSystem, ring: &DiffrlRing, steps: bool) -> Self {
        DpremReport {
            system,
            input: differential_json(f, ring),
            remainder: differential_json(&d.remainder, ring),
            multiplier: differential_json(&d.multiplier, ring),
            verified: d.verify(f, s, ring),
            steps: if steps {
                d.steps
                    .iter()
                    .map(|st| DpremStepReport {
                        equation: st.equation,
                        theta: st.theta.clone(),
                        multiplier: differential_json(&st.multiplier, ring),
                        quotient: differential_json(&st.quotient, ring),
                    })
                    .collect()
            } else {
                Vec::new()
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Fda equation index (weak check) or history id (strong check).
    pub source: usize,
    pub poly: JsonPoly,
    pub limit: LimitReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<DpremReport>,
    /// Strong check: whether the element's derivation from the inputs was
    /// replayed successfully.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub replayed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStepReport {
    pub reducer: usize,
    pub theta: Vec<u32>,
    pub coeff: JsonCoeff,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub input: JsonPoly,
    pub remainder: JsonPoly,
    /// `input = Σ steps + scale·remainder`.
    pub scale: JsonCoeff,
    pub reductions: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub steps: Vec<ReductionStepReport>,
}

/// One entry of a standard basis computation history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub id: usize,
    pub derivation: String,
    pub poly: JsonPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub status: BasisStatus,
    pub stats: BasisStats,
    pub bounds: Bounds,
    /// History ids of the elements.
    pub ids: Vec<usize>,
    pub elements: Vec<JsonPoly>,
}

/// Everything a subcommand prints, in one document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub session: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<CheckKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<WeakMode>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub inputs: Vec<InputReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub equations: Vec<EquationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<BasisReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_form: Option<NormalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dprem: Option<DpremReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<TraceEntry>,
}

impl Report {
    pub fn new(command: &str, session: &str) -> Self {
        Report {
            command: command.into(),
            session: session.into(),
            verdict: None,
            kind: None,
            mode: None,
            inputs: Vec::new(),
            equations: Vec::new(),
            basis: None,
            witnesses: Vec::new(),
            normal_form: None,
            dprem: None,
            trace: Vec::new(),
        }
    }

    /// Exit status: 0 success or consistent, 1 inconsistent, 2 inconclusive
    /// or truncated.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(Verdict::Consistent) => 0,
            Some(Verdict::Inconsistent) => 1,
            Some(Verdict::Inconclusive) => 2,
            None => match self.basis.as_ref().map(|b| b.status) {
                Some(BasisStatus::Truncated | BasisStatus::Aborted) => 2,
                _ => 0,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

pub fn equation_report(index: usize, e: &EquationLimit, ring: &DiffrlRing) -> EquationReport {
    EquationReport {
        index,
        limit: LimitReport::of(&e.limit, ring),
        matched: e.matched.as_ref().map(|(i, c)| MatchReport {
            equation: *i,
            factor: JsonCoeff::of(c),
        }),
        consequence: e.consequence,
    }
}

pub fn basis_report(b: &BasisOutcome, bounds: Bounds, ring: &DiffRing) -> BasisReport {
    BasisReport {
        status: b.status,
        stats: b.stats,
        bounds,
        ids: b.basis_ids.clone(),
        elements: b.basis.iter().map(|p| difference_json(p, ring)).collect(),
    }
}

fn multi_index(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn describe(d: &Derivation, ring: &DiffRing) -> String {
    match d {
        Derivation::Input { index, lc } => format!("input {index}, leading coefficient {lc}"),
        Derivation::SPolynomial {
            left,
            right,
            theta1,
            theta2,
            m1,
            m2,
            steps,
            ..
        } => format!(
            "S({left}, {right}) with shifts {} {} and cofactors {} {}, {} reduction steps",
            multi_index(theta1),
            multi_index(theta2),
            ring.display_monomial(m1),
            ring.display_monomial(m2),
            steps.len()
        ),
        Derivation::Reduced { source, steps, .. } => {
            format!("{source} reduced in {} steps", steps.len())
        }
    }
}

/// History entries `ids` as trace lines.
pub fn trace(b: &BasisOutcome, ids: &[usize], ring: &DiffRing) -> Vec<TraceEntry> {
    ids.iter()
        .map(|&id| TraceEntry {
            id,
            derivation: describe(&b.history[id].derivation, ring),
            poly: difference_json(&b.history[id].poly, ring),
        })
        .collect()
}

pub fn nf_report(input: &DiffPoly, nf: &NormalForm, ring: &DiffRing, steps: bool) -> NormalFormReport {
    NormalFormReport {
        input: difference_json(input, ring),
        remainder: difference_json(&nf.remainder, ring),
        scale: JsonCoeff::of(&nf.scale),
        reductions: nf.steps.len(),
        steps: if steps {
            nf.steps
                .iter()
                .map(|s| ReductionStepReport {
                    reducer: s.reducer,
                    theta: s.theta.to_vec(),
                    coeff: JsonCoeff::of(&s.coeff),
                    monomial: ring.display_monomial(&s.monomial),
                })
                .collect()
        } else {
            Vec::new()
        },
    }
}

pub fn witness_report(
    w: &Witness,
    decomposition: &[SimpleSystem],
    ring: &DiffRing,
    diffrl: &DiffrlRing,
    steps: bool,
) -> WitnessReport {
    WitnessReport {
        source: w.source,
        poly: difference_json(&w.poly, ring),
        limit: LimitReport::of(&w.limit, diffrl),
        residual: w
            .subsystem
            .zip(w.residual.as_ref())
            .map(|(i, d)| DpremReport::of(&w.limit.leading, d, i, &decomposition[i], diffrl, steps)),
        replayed: None,
    }
}

/// Fills the verdict, equations and witnesses of a consistency report.
pub fn add_consistency(
    r: &mut Report,
    c: &ConsistencyReport,
    decomposition: &[SimpleSystem],
    ring: &DiffRing,
    diffrl: &DiffrlRing,
    steps: bool,
) {
    r.verdict = Some(c.verdict);
    r.kind = Some(c.kind);
    r.mode = c.weak_mode;
    r.equations = c
        .equations
        .iter()
        .enumerate()
        .map(|(i, e)| equation_report(i, e, diffrl))
        .collect();
    r.witnesses = c
        .witnesses
        .iter()
        .map(|w| witness_report(w, decomposition, ring, diffrl, steps))
        .collect();
}

fn coeff_text(c: &JsonCoeff) -> String {
    if c.den == "1" {
        c.num.clone()
    } else {
        format!("({})/({})", c.num, c.den)
    }
}

fn lower<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn spacing_text(s: &BTreeMap<String, i32>) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter()
        .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_limit(out: &mut String, l: &LimitReport, indent: &str) {
    let _ = writeln!(out, "{indent}limit (order {}): {}", l.order, l.leading.text);
    if l.components.len() > 1 {
        for c in &l.components {
            let _ = writeln!(out, "{indent}  [{}] {}", spacing_text(&c.spacings), c.poly.text);
        }
    }
}

fn render_dprem(out: &mut String, d: &DpremReport, indent: &str) {
    let _ = writeln!(out, "{indent}subsystem: {}", d.system);
    let _ = writeln!(out, "{indent}residual: {}", d.remainder.text);
    let _ = writeln!(out, "{indent}multiplier: {}", d.multiplier.text);
    let _ = writeln!(out, "{indent}certificate verified: {}", d.verified);
    for (i, s) in d.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "{indent}  step {i}: equation {} prolonged by {}, multiplier {}, quotient {}",
            s.equation,
            multi_index(&s.theta),
            s.multiplier.text,
            s.quotient.text
        );
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command);
    let _ = writeln!(out, "session: {}", r.session);
    if let Some(v) = r.verdict {
        let kind = r.kind.map(|k| lower(&k)).unwrap_or_default();
        match r.mode {
            Some(m) => {
                let _ = writeln!(out, "verdict: {} ({kind}, {} mode)", lower(&v), lower(&m));
            }
            None => {
                let _ = writeln!(out, "verdict: {} ({kind})", lower(&v));
            }
        }
    }
    if !r.inputs.is_empty() {
        let _ = writeln!(out, "equations:");
        for e in &r.inputs {
            let _ = writeln!(out, "  [{}] {}", e.index, e.poly.text);
        }
    }
    if !r.equations.is_empty() {
        let _ = writeln!(out, "limits:");
        for e in &r.equations {
            let _ = writeln!(out, "  [{}] order {}: {}", e.index, e.limit.order, e.limit.leading.text);
            if let Some(m) = &e.matched {
                let _ = writeln!(out, "      = {} * F[{}]", coeff_text(&m.factor), m.equation);
            }
            if let Some(c) = e.consequence {
                let _ = writeln!(out, "      consequence: {}", if c { "yes" } else { "no" });
            }
        }
    }
    if let Some(b) = &r.basis {
        let _ = writeln!(
            out,
            "basis status: {} (passes {}, s-pairs {}, reductions {})",
            lower(&b.status),
            b.stats.passes,
            b.stats.s_pairs,
            b.stats.reductions
        );
        let _ = writeln!(out, "basis ({} elements):", b.elements.len());
        for (id, p) in b.ids.iter().zip(&b.elements) {
            let _ = writeln!(out, "  #{id}: {}", p.text);
        }
    }
    if let Some(nf) = &r.normal_form {
        let _ = writeln!(out, "input: {}", nf.input.text);
        let _ = writeln!(out, "normal form: {}", nf.remainder.text);
        let _ = writeln!(out, "scale: {}", coeff_text(&nf.scale));
        let _ = writeln!(out, "reductions: {}", nf.reductions);
        for (i, s) in nf.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "  step {i}: {} * {} * shift {} of F[{}]",
                coeff_text(&s.coeff),
                s.monomial,
                multi_index(&s.theta),
                s.reducer
            );
        }
    }
    if let Some(d) = &r.dprem {
        let _ = writeln!(out, "input: {}", d.input.text);
        render_dprem(&mut out, d, "");
    }
    for w in &r.witnesses {
        let _ = writeln!(out, "witness (source {}):", w.source);
        let _ = writeln!(out, "  element: {}", w.poly.text);
        render_limit(&mut out, &w.limit, "  ");
        if let Some(d) = &w.residual {
            render_dprem(&mut out, d, "  ");
        }
        if let Some(ok) = w.replayed {
            let _ = writeln!(out, "  derivation replayed: {ok}");
        }
    }
    if !r.trace.is_empty() {
        let _ = writeln!(out, "trace:");
        for t in &r.trace {
            let _ = writeln!(out, "  #{} [{}]: {}", t.id, t.derivation, t.poly.text);
        }
    }
    out
}

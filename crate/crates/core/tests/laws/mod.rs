//! Randomized laws of the arithmetic, orderings, reduction, limits and
//! reports. Every strategy is seeded by proptest's deterministic runner, so
//! each law panics on failure with the same counterexample on every run.

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use sconsist::cli::{parse_session, Report};
use sconsist::coeff::{rf_series, Grid, RationalFunction, Symbol};
use sconsist::diffring::{
    divides, normal_form, DiffMonomial, DiffOrdering, DiffPoly, DiffRing, ReductionMode, ShiftedVar,
};
use sconsist::limit::continuous_limit;
use sconsist::pdering::{dprem, in_cone, janet_assign, DerivVar};
use sconsist::ranking::{OperatorOrder, Ranking, RankingKind};

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(config(cases), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

// ---------- coefficients ----------

fn sym(n: &str) -> RationalFunction {
    RationalFunction::var(Symbol::new(n))
}

/// Small polynomials in x and y with integer coefficients.
fn poly_xy() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RationalFunction::zero(), |acc, (c, a, b)| {
            &acc + &(&RationalFunction::integer(c) * &(&sym("x").pow(a) * &sym("y").pow(b)))
        })
    })
}

fn rational_xy() -> impl Strategy<Value = RationalFunction> {
    (poly_xy(), poly_xy()).prop_filter_map(
        "zero denominator",
        |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(&n / &d)
            }
        },
    )
}

#[allow(clippy::eq_op)] // a - a = 0 is one of the laws
pub fn field_axioms() {
    runner(128)
        .run(&(rational_xy(), rational_xy(), rational_xy()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert!((&a * &b).cross_eq(&(&b * &a)));
            Ok(())
        })
        .unwrap();
}

pub fn shifts_compose_and_commute() {
    let g = Grid::with_spacings(&[("x", "h"), ("y", "k")]);
    let (x, y) = (Symbol::new("x"), Symbol::new("y"));
    runner(128)
        .run(&(rational_xy(), -2i64..=2, -2i64..=2), |(a, m, n)| {
            let twice = g.shift(&g.shift(&a, x, m).unwrap(), x, n).unwrap();
            prop_assert_eq!(twice, g.shift(&a, x, m + n).unwrap());
            let xy = g.shift(&g.shift(&a, x, m).unwrap(), y, n).unwrap();
            let yx = g.shift(&g.shift(&a, y, n).unwrap(), x, m).unwrap();
            prop_assert_eq!(xy, yx);
            Ok(())
        })
        .unwrap();
}

/// Truncating below order N leaves an error of order h^N: halving h divides
/// the error by about 2^N.
pub fn series_converges_at_the_truncation_order() {
    let weights = [(Symbol::new("h"), 1)].into_iter().collect();
    let strat = (
        prop::collection::vec(-3i64..=3, 3),
        prop::collection::vec(-3i64..=3, 2),
        1i64..=3,
        1u32..=9,
    );
    runner(96)
        .run(&strat, |(num, den, order, xi)| {
            // (n0 + n1 x h + n2 h^2) / (4 + x^2 + d0 h + d1 x h^2): regular at h = 0
            let (x, h) = (sym("x"), sym("h"));
            let n = &(&RationalFunction::integer(num[0]) + &(&RationalFunction::integer(num[1]) * &(&x * &h)))
                + &(&RationalFunction::integer(num[2]) * &h.pow(2));
            let d = &(&(&RationalFunction::integer(4) + &x.pow(2)) + &(&RationalFunction::integer(den[0]) * &h))
                + &(&RationalFunction::integer(den[1]) * &(&x * &h.pow(2)));
            let a = &n / &d;
            let s = rf_series(&a, &weights, order).unwrap();
            for e in s.components.keys() {
                prop_assert!(s.weight(e) < order);
            }
            let approx = s.reconstruct();
            let xv = xi as f64 / 8.0;
            let err = |hv: f64| {
                let at = |sy: Symbol| if sy == Symbol::new("x") { xv } else { hv };
                (a.eval_f64(&at) - approx.eval_f64(&at)).abs()
            };
            let (coarse, fine) = (err(1.0 / 64.0), err(1.0 / 128.0));
            prop_assume!(coarse > 1e-12);
            let ratio = coarse / fine;
            prop_assert!(
                ratio >= 2f64.powf(order as f64 - 0.5),
                "order {} ratio {}",
                order,
                ratio
            );
            Ok(())
        })
        .unwrap();
}

// ---------- difference monomials and orderings ----------

const AXES: usize = 2;
const INDETS: usize = 2;

fn ranking() -> impl Strategy<Value = Ranking> {
    (
        prop_oneof![Just(RankingKind::Orderly), Just(RankingKind::Elimination)],
        prop_oneof![Just(OperatorOrder::Graded), Just(OperatorOrder::Lex)],
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(k, op, swap_axes, swap_indets)| {
            let axes = if swap_axes { vec![1, 0] } else { vec![0, 1] };
            let indets = if swap_indets { vec![1, 0] } else { vec![0, 1] };
            Ranking::new(k, op, axes, indets).unwrap()
        })
}

fn shifted_var(max_shift: u32) -> impl Strategy<Value = ShiftedVar> {
    (0..INDETS, prop::collection::vec(0..=max_shift, AXES)).prop_map(|(i, s)| ShiftedVar::new(i, &s))
}

fn monomial(max_shift: u32, max_factors: usize) -> impl Strategy<Value = DiffMonomial> {
    prop::collection::vec((shifted_var(max_shift), 1u32..=2), 0..=max_factors).prop_map(DiffMonomial::from_factors)
}

fn theta(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, AXES)
}

pub fn ordering_is_admissible() {
    let strat = (
        ranking(),
        monomial(3, 3),
        monomial(3, 3),
        monomial(3, 3),
        theta(2),
        shifted_var(3),
        0..AXES,
    );
    runner(256)
        .run(&strat, |(rk, a, b, c, th, v, axis)| {
            let o = DiffOrdering::new(rk);
            let one = DiffMonomial::one();
            // totality and antisymmetry
            prop_assert_eq!(o.cmp_monomials(&a, &b), o.cmp_monomials(&b, &a).reverse());
            prop_assert_eq!(o.cmp_monomials(&a, &b) == Ordering::Equal, a == b);
            // t ≻ 1
            if !a.is_one() {
                prop_assert_eq!(o.cmp_monomials(&a, &one), Ordering::Greater);
            }
            // compatible with multiplication and shifts
            let ab = o.cmp_monomials(&a, &b);
            prop_assert_eq!(o.cmp_monomials(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_eq!(o.cmp_monomials(&a.shifted(&th), &b.shifted(&th)), ab);
            // σ_i∘θ∘u ≻ θ∘u
            let mut e = vec![0; AXES];
            e[axis] = 1;
            prop_assert_eq!(o.cmp_vars(&v.shifted(&e), &v), Ordering::Greater);
            // transitivity
            if ab == Ordering::Greater && o.cmp_monomials(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.cmp_monomials(&a, &c), Ordering::Greater);
            }
            Ok(())
        })
        .unwrap();
}

/// `divides` agrees with trying every shift exhaustively.
pub fn divisibility_matches_exhaustive_search() {
    let strat = (ranking(), monomial(4, 2), monomial(4, 3));
    runner(512)
        .run(&strat, |(rk, v, w)| {
            let o = DiffOrdering::new(rk);
            let mut found = false;
            for a in 0..=4u32 {
                for b in 0..=4u32 {
                    if w.div(&v.shifted(&[a, b])).is_some() {
                        found = true;
                    }
                }
            }
            let got = divides(&v, &w, &o);
            prop_assert_eq!(got.is_some(), found);
            if let Some((th, t)) = got {
                prop_assert_eq!(t.mul(&v.shifted(&th)), w);
            }
            Ok(())
        })
        .unwrap();
}

// ---------- reduction ----------

fn grid() -> Grid {
    Grid::with_spacings(&[("x", "h"), ("y", "k")])
}

fn diff_poly(max_shift: u32, max_terms: usize) -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((monomial(max_shift, 2), -3i64..=3, 0u32..=1), 1..=max_terms).prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (m, c, xdeg) in terms {
            let coeff = &RationalFunction::integer(c) * &sym("x").pow(xdeg);
            p = &p + &DiffPoly::term(coeff, m);
        }
        p
    })
}

pub fn normal_form_is_irreducible_and_idempotent() {
    let strat = (
        ranking(),
        diff_poly(3, 4),
        prop::collection::vec(diff_poly(2, 2), 1..=2),
    );
    runner(64)
        .run(&strat, |(rk, p, fs)| {
            let fs: Vec<DiffPoly> = fs.into_iter().filter(|f| !f.is_zero()).collect();
            prop_assume!(!fs.is_empty());
            let ring = DiffRing::new(grid(), DiffOrdering::new(rk), &["u", "v"]);
            let o = &ring.ordering;
            let nf = normal_form(&p, &fs, &ring, ReductionMode::Full);
            prop_assert_eq!(nf.replay(&fs, &ring), p);
            for (m, _) in nf.remainder.terms() {
                for f in &fs {
                    prop_assert!(divides(f.lm(o).unwrap(), m, o).is_none());
                }
            }
            let again = normal_form(&nf.remainder, &fs, &ring, ReductionMode::Full);
            prop_assert!(again.steps.is_empty());
            prop_assert_eq!(again.remainder, nf.remainder);
            Ok(())
        })
        .unwrap();
}

// ---------- continuous limits ----------

/// Difference polynomials with spacing powers in their coefficients.
fn scheme_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((monomial(2, 2), -3i64..=3, -1i32..=1, 0u32..=1), 1..=4).prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (m, c, he, ke) in terms {
            let hp = if he < 0 {
                sym("h").inv().unwrap()
            } else {
                sym("h").pow(he as u32)
            };
            let coeff = &(&RationalFunction::integer(c) * &hp) * &sym("k").pow(ke);
            p = &p + &DiffPoly::term(coeff, m);
        }
        p
    })
}

fn limit_ring() -> DiffRing {
    DiffRing::new(grid(), DiffOrdering::new(Ranking::orderly(AXES, INDETS)), &["u", "v"])
}

pub fn limits_multiply() {
    let ring = limit_ring();
    runner(100)
        .run(&(scheme_poly(), scheme_poly()), |(p, q)| {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let (Ok(lp), Ok(lq)) = (continuous_limit(&p, &ring, 2), continuous_limit(&q, &ring, 2)) else {
                // leading components cancelled; nothing to compare
                return Ok(());
            };
            let lpq = continuous_limit(&(&p * &q), &ring, 2).unwrap();
            prop_assert_eq!(lpq.order, lp.order + lq.order);
            prop_assert_eq!(lpq.leading, &lp.leading * &lq.leading);
            Ok(())
        })
        .unwrap();
}

pub fn limits_are_linear() {
    let ring = limit_ring();
    runner(100)
        .run(&(scheme_poly(), scheme_poly(), -3i64..=3), |(p, q, c)| {
            prop_assume!(c != 0);
            let Ok(lp) = continuous_limit(&p, &ring, 2) else {
                return Ok(());
            };
            let c = RationalFunction::integer(c);
            let lc = continuous_limit(&p.scale(&c), &ring, 2).unwrap();
            prop_assert_eq!(lc.order, lp.order);
            prop_assert_eq!(lc.leading, lp.leading.scale(&c));
            if let Ok(lq) = continuous_limit(&q, &ring, 2) {
                if lq.order == lp.order {
                    let sum = &lp.leading + &lq.leading;
                    if let Ok(ls) = continuous_limit(&(&p + &q), &ring, 2) {
                        if !sum.is_zero() {
                            prop_assert_eq!(ls.order, lp.order);
                            prop_assert_eq!(ls.leading, sum);
                        }
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

// ---------- Janet division and pseudo-remainders ----------

pub fn janet_cones_are_disjoint() {
    let leaders = prop::collection::btree_set(prop::collection::vec(0u32..=3, 3), 1..=5);
    let rk = (any::<bool>(), 0usize..6);
    runner(128)
        .run(&(leaders, rk), |(ls, (elim, perm))| {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let kind = if elim {
                RankingKind::Elimination
            } else {
                RankingKind::Orderly
            };
            let r = Ranking::new(kind, OperatorOrder::Graded, perms[perm].to_vec(), vec![0]).unwrap();
            let ls: Vec<DerivVar> = ls.into_iter().map(|i| DerivVar::new(0, &i)).collect();
            let mult = janet_assign(&ls, &r).unwrap();
            for a in 0..=5u32 {
                for b in 0..=5u32 {
                    for c in 0..=5u32 {
                        let v = DerivVar::new(0, &[a, b, c]);
                        let hits = ls
                            .iter()
                            .zip(&mult)
                            .filter(|(l, m)| in_cone(&v, l, m).is_some())
                            .count();
                        prop_assert!(hits <= 1, "{:?} lies in {} cones", v, hits);
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

const NS: &str = include_str!("../../corpus/ns_5x5.sess");

pub fn pseudo_remainder_certificates_replay() {
    let s = parse_session(NS).unwrap();
    let vars = [
        "u", "v", "p", "u_x", "u_y", "u_t", "v_x", "v_y", "p_x", "p_y", "u_xy", "p_xx", "v_yy", "Re",
    ];
    let term = (
        prop::sample::select(vars.to_vec()),
        prop::sample::select(vars.to_vec()),
        -2i64..=2,
    );
    runner(48)
        .run(&prop::collection::vec(term, 1..=3), |terms| {
            let text = terms
                .iter()
                .map(|(a, b, c)| format!("({c})*{a}*{b}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let f = s.parse_differential(&text).unwrap();
            let sys = &s.decomposition[0];
            let d = dprem(&f, sys, &s.diffrl).unwrap();
            prop_assert!(d.verify(&f, sys, &s.diffrl));
            // the remainder has no variable in any Janet cone above the leader's degree
            for v in s.diffrl.vars_desc(&d.remainder) {
                if let Some((i, th)) = sys.reducer_for(&v) {
                    prop_assert!(th.iter().all(|&t| t == 0));
                    prop_assert!(s.diffrl.degree_in(&d.remainder, &v) < s.diffrl.degree_in(&sys.equations[i], &v));
                }
            }
            Ok(())
        })
        .unwrap();
}

// ---------- reports ----------

pub fn rendered_polynomials_parse_back() {
    let s = parse_session(NS).unwrap();
    let ring = &s.diff;
    let coeff = (-4i64..=4, 1i64..=4, 0u32..=2, 0u32..=1, 0u32..=1);
    let mono = prop::collection::vec(((0usize..3), prop::collection::vec(0u32..=3, 3), 1u32..=2), 0..=2);
    let strat = prop::collection::vec((coeff, mono), 1..=4);
    runner(128)
        .run(&strat, |terms| {
            let mut p = DiffPoly::zero();
            let mut q = sconsist::pdering::DiffrlPoly::zero();
            for ((n, d, hx, re, x), m) in terms {
                let c = &(&(&RationalFunction::rational(n, d) * &sym("h").pow(hx))
                    / &(&sym("Re").pow(re) + &RationalFunction::integer(1)))
                    * &sym("x").pow(x);
                let mono = DiffMonomial::from_factors(m.iter().map(|(i, s, e)| (ShiftedVar::new(*i, s), *e)));
                p = &p + &DiffPoly::term(c.clone(), mono.clone());
                q = &q + &DiffPoly::term(c, mono);
            }
            let text = ring.display(&p).to_string();
            prop_assert_eq!(s.parse_difference(&text).unwrap(), p, "{}", text);
            let text = s.diffrl.display(&q).to_string();
            prop_assert_eq!(s.parse_differential(&text).unwrap(), q, "{}", text);
            Ok(())
        })
        .unwrap();
}

pub fn json_reports_round_trip() {
    let s = parse_session(NS).unwrap();
    let mut r = Report::new("limit", "ns_5x5.sess");
    for (i, e) in s.fda.iter().enumerate() {
        let l = continuous_limit(&e.poly, &s.diff, 2).unwrap();
        r.equations.push(sconsist::cli::EquationReport {
            index: i,
            limit: sconsist::cli::LimitReport::of(&l, &s.diffrl),
            matched: None,
            consequence: Some(true),
        });
        // the text field of every serialized polynomial parses back exactly
        let back = s.parse_differential(&r.equations[i].limit.leading.text).unwrap();
        assert_eq!(back, l.leading);
    }
    let json = r.to_json();
    let parsed: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, r);
}

/// Every law with its name, in the order the acceptance runner reports them.
#[allow(dead_code)] // the per-law test target calls the functions directly
pub const ALL: &[(&str, fn())] = &[
    ("field_axioms", field_axioms),
    ("shifts_compose_and_commute", shifts_compose_and_commute),
    (
        "series_converges_at_the_truncation_order",
        series_converges_at_the_truncation_order,
    ),
    ("ordering_is_admissible", ordering_is_admissible),
    (
        "divisibility_matches_exhaustive_search",
        divisibility_matches_exhaustive_search,
    ),
    (
        "normal_form_is_irreducible_and_idempotent",
        normal_form_is_irreducible_and_idempotent,
    ),
    ("limits_multiply", limits_multiply),
    ("limits_are_linear", limits_are_linear),
    ("janet_cones_are_disjoint", janet_cones_are_disjoint),
    (
        "pseudo_remainder_certificates_replay",
        pseudo_remainder_certificates_replay,
    ),
    ("rendered_polynomials_parse_back", rendered_polynomials_parse_back),
    ("json_reports_round_trip", json_reports_round_trip),
];

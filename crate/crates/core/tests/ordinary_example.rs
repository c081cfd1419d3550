//! The principal σ-ideal generated by u(x)u(x+2) − x·u(x+1) under the pure
//! lexicographic ordering u(x) ≺ u(x+1) ≺ ….

use sconsist::coeff::{Grid, RationalFunction, Symbol};
use sconsist::diffring::{
    interreduce, normal_form, s_pairs, standard_basis, BasisStatus, Bounds, Control, DiffOrdering, DiffPoly, DiffRing,
    ReductionMode,
};
use sconsist::ranking::Ranking;

fn ring() -> DiffRing {
    DiffRing::new(Grid::unit(&["x"]), DiffOrdering::new(Ranking::orderly(1, 1)), &["u"])
}

fn u(k: u32) -> DiffPoly {
    ring().var("u", &[k])
}

fn x(c: i64) -> RationalFunction {
    &RationalFunction::var(Symbol::new("x")) + &RationalFunction::integer(c)
}

fn g() -> [DiffPoly; 5] {
    let g1 = &(&u(0) * &u(2)) - &u(1).scale(&x(0));
    let g2 = &(&u(1) * &u(4)) - &(&u(0) * &u(3)).scale(&(&x(2) / &x(0)));
    let g3 = &(&u(0) * &u(3).pow(2)) - &u(3).scale(&(&x(0) * &x(1)));
    let g4 = &(&(&u(0) * &u(3)) * &u(4)) - &u(4).scale(&(&x(0) * &x(1)));
    let g5 = &u(5) - &(&u(0) * &u(4)).scale(&(&x(3) / &(&x(0) * &x(1))));
    [g1, g2, g3, g4, g5]
}

fn sigma(p: &DiffPoly, k: u32) -> DiffPoly {
    p.shift(&ring().grid, &[k])
}

#[test]
fn s1_is_a_self_overlap_of_g1() {
    let r = ring();
    let [g1, ..] = g();
    let s1 = &(&u(4) * &g1) - &(&u(0) * &sigma(&g1, 2));
    let pairs = s_pairs(&g1, &g1, &r).unwrap();
    assert!(pairs.iter().any(|s| s.poly == s1 || s.poly == -&s1));
}

#[test]
fn s2_is_an_overlap_of_shifted_g1_and_g2() {
    let r = ring();
    let [g1, g2, ..] = g();
    let sg1 = sigma(&g1, 1);
    let s2 = &(&u(4) * &sg1) - &(&u(3) * &g2);
    let pairs = s_pairs(&sg1, &g2, &r).unwrap();
    assert!(pairs.iter().any(|s| s.poly == s2 || s.poly == -&s2));
}

#[test]
fn intermediate_normal_forms() {
    let r = ring();
    let [g1, g2, g3, g4, g5] = g();
    let nf = |p: &DiffPoly, fs: &[DiffPoly]| normal_form(p, fs, &r, ReductionMode::Full).remainder;
    let s1 = &(&u(4) * &g1) - &(&u(0) * &sigma(&g1, 2));
    assert_eq!(nf(&s1, std::slice::from_ref(&g1)), g2);
    let s2 = &(&u(4) * &sigma(&g1, 1)) - &(&u(3) * &g2);
    assert_eq!(nf(&s2, &[g1.clone(), g2.clone()]), g3);
    let s3 = &sigma(&g3, 1) - &(&u(4) * &g2);
    assert_eq!(nf(&s3, &[g1.clone(), g2.clone(), g3.clone()]), g4);
    let s4 = &(&u(5) * &g3) - &sigma(&g4, 1);
    assert_eq!(nf(&s4, &[g1.clone(), g2.clone(), g3.clone(), g4.clone()]), g5);
}

#[test]
fn normal_form_trace_replays() {
    let r = ring();
    let [g1, g2, ..] = g();
    let s2 = &(&u(4) * &sigma(&g1, 1)) - &(&u(3) * &g2);
    let fs = [g1, g2];
    let nf = normal_form(&s2, &fs, &r, ReductionMode::Full);
    assert_eq!(nf.replay(&fs, &r), s2);
}

#[test]
fn standard_basis_is_the_five_printed_polynomials() {
    let r = ring();
    let [g1, ..] = g();
    let mut seen = 0;
    let out = standard_basis(std::slice::from_ref(&g1), &r, Bounds::default(), None, |_| {
        seen += 1;
        Control::Continue
    })
    .unwrap();
    assert_eq!(out.status, BasisStatus::Complete);
    let expected = g();
    assert_eq!(
        out.basis.len(),
        5,
        "{:?}",
        out.basis.iter().map(|p| r.display(p).to_string()).collect::<Vec<_>>()
    );
    for e in &expected {
        assert!(out.basis.contains(e), "missing {}", r.display(e));
    }
    assert!(seen >= 4);
    assert!(out.verify_history(&[g1], &r));
}

#[test]
fn printed_basis_is_interreduced() {
    let r = ring();
    let got = interreduce(&g(), &r);
    assert_eq!(got, g().to_vec());
}

#[test]
fn interreduce_removes_scalar_duplicates() {
    let r = ring();
    let [g1, ..] = g();
    let got = interreduce(&[g1.clone(), g1.scale(&RationalFunction::integer(2))], &r);
    assert_eq!(got, vec![g1]);
}

#[test]
fn linear_generator_is_its_own_basis() {
    let r = ring();
    let f = &u(1) - &u(0);
    let out = standard_basis(std::slice::from_ref(&f), &r, Bounds::default(), None, |_| {
        Control::Continue
    })
    .unwrap();
    assert_eq!(out.status, BasisStatus::Complete);
    assert_eq!(out.basis, vec![f]);
}

//! Standard basis of the principal difference ideal generated by
//! u(x)u(x+2) - x u(x+1), watching elements as they are adjoined.
//!
//!     cargo run --example standard_basis

use sconsist::coeff::{Grid, RationalFunction, Symbol};
use sconsist::diffring::{standard_basis, Bounds, Control, DiffOrdering, DiffRing};
use sconsist::ranking::Ranking;

fn main() -> sconsist::Result<()> {
    let ring =
        DiffRing::new(Grid::unit(&["x"]), DiffOrdering::new(Ranking::orderly(1, 1)), &["u"]).with_index_names(&["j"]);
    let x = RationalFunction::var(Symbol::new("x"));
    let g1 = &(&ring.var("u", &[0]) * &ring.var("u", &[2])) - &ring.var("u", &[1]).scale(&x);

    let out = standard_basis(std::slice::from_ref(&g1), &ring, Bounds::default(), None, |e| {
        println!("pass {}: adjoined #{}: {}", e.pass, e.id, ring.display(e.poly));
        Control::Continue
    })?;

    println!("status: {:?}, {:?}", out.status, out.stats);
    for (p, id) in out.basis.iter().zip(&out.basis_ids) {
        println!("  #{id}: {}", ring.display(p));
    }
    // every history entry replays from the input
    assert!(out.verify_history(&[g1], &ring));
    Ok(())
}

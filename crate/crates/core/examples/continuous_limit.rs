//! Continuous limits of the 5x5 Navier-Stokes scheme, with the spacing
//! monomial each leading component belongs to.
//!
//!     cargo run --example continuous_limit

use sconsist::cli::parse_session;
use sconsist::limit::{continuous_limit, spacing_factor};

fn main() -> sconsist::Result<()> {
    let s = parse_session(include_str!("../corpus/ns_5x5.sess"))?;
    for (i, p) in s.fda_polys().iter().enumerate() {
        let l = continuous_limit(p, &s.diff, 2)?;
        println!(
            "f{} |> {}   (weighted order {})",
            i + 1,
            s.diffrl.display(&l.leading),
            l.order
        );
        for (exps, c) in &l.components {
            println!("    {} * ({})", spacing_factor(&l.weights, exps), s.diffrl.display(c));
        }
    }

    // a one-sided difference keeps an O(h) error term
    let p = s.parse_difference("(u[j+1,k,n] - u[j,k,n])/h")?;
    let series = sconsist::limit::taylor_expand(&p, &s.diff, 2)?;
    for (exps, c) in &series {
        println!(
            "forward difference: {} * ({})",
            spacing_factor(s.diff.grid.weights(), exps),
            s.diffrl.display(c)
        );
    }
    Ok(())
}

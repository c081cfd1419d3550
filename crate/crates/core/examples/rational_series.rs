//! Exact rational-function coefficients: field arithmetic, grid shifts and
//! Laurent expansion in the spacings.
//!
//!     cargo run --example rational_series

use sconsist::coeff::{rf_series, Grid, RationalFunction, Symbol};

fn main() -> sconsist::Result<()> {
    let x = RationalFunction::var(Symbol::new("x"));
    let h = RationalFunction::var(Symbol::new("h"));
    let one = RationalFunction::one();

    // (x + 2)/x - 2/x cancels back to 1 after gcd normalization
    let a = &(&x + &RationalFunction::integer(2)) / &x;
    let b = &RationalFunction::integer(2) / &x;
    println!("(x + 2)/x - 2/x = {}", &a - &b);

    // shifting x by one grid step on a grid with spacing h
    let grid = Grid::with_spacings(&[("x", "h")]);
    let shifted = grid.shift(&a, Symbol::new("x"), 1)?;
    println!("sigma_x((x + 2)/x) = {shifted}");

    // 1/(h + h^2) = 1/h - 1 + h - h^2 + ...
    let f = &one / &(&h + &h.pow(2));
    let series = rf_series(&f, grid.weights(), 3)?;
    for (exps, c) in &series.components {
        println!("  h^{}: {c}", exps[0]);
    }
    println!("valuation: {:?}", series.valuation());
    Ok(())
}

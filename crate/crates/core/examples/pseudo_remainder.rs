//! Janet pseudo-remainders modulo the simple subsystems of a Thomas
//! decomposition, with the certificate that replays each one.
//!
//!     cargo run --example pseudo_remainder

use sconsist::cli::parse_session;
use sconsist::pdering::{dprem, is_consequence, Consequence};

fn main() -> sconsist::Result<()> {
    let s = parse_session(include_str!("../corpus/thomas_sec3.sess"))?;
    for (i, sys) in s.decomposition.iter().enumerate() {
        let leaders: Vec<String> = sys.leaders.iter().map(|v| s.diffrl.display_var(v)).collect();
        println!(
            "system {i}: leaders {leaders:?}, multiplicative axes {:?}",
            sys.mult_vars
        );
    }

    let f = s.parse_differential("u_x*u_y + v_xy")?;
    for (i, sys) in s.decomposition.iter().enumerate() {
        let d = dprem(&f, sys, &s.diffrl)?;
        println!(
            "dprem modulo system {i}: {}   (multiplier {}, {} steps, verified {})",
            s.diffrl.display(&d.remainder),
            s.diffrl.display(&d.multiplier),
            d.steps.len(),
            d.verify(&f, sys, &s.diffrl)
        );
    }

    // the second input equation belongs to the radical ideal of the system
    match is_consequence(&s.pde[1], &s.decomposition, &s.diffrl)? {
        Consequence::Yes => println!("the second equation is a consequence"),
        Consequence::No { subsystem, .. } => println!("not a consequence modulo system {subsystem}"),
    }
    Ok(())
}

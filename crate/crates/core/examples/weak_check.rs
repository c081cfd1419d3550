//! Weak consistency of both Navier-Stokes schemes. Exact mode wants each
//! limit to be a multiple of a PDE equation; ideal mode accepts any
//! consequence of the involutive system.
//!
//!     cargo run --example weak_check

use sconsist::cli::parse_session;
use sconsist::consistency::{w_check, WeakMode};

fn main() -> sconsist::Result<()> {
    for (name, text) in [
        ("ns_5x5", include_str!("../corpus/ns_5x5.sess")),
        ("ns_3x3", include_str!("../corpus/ns_3x3.sess")),
    ] {
        let s = parse_session(text)?;
        let fda = s.fda_polys();
        for mode in [WeakMode::Exact, WeakMode::Ideal] {
            let r = w_check(&fda, &s.pde, &s.decomposition, &s.diff, &s.diffrl, mode, 2)?;
            println!("{name} {mode:?}: {:?}", r.verdict);
            for w in &r.witnesses {
                println!("    f{} |> {}", w.source + 1, s.diffrl.display(&w.limit.leading));
            }
        }
    }
    Ok(())
}

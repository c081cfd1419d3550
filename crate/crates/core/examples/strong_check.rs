//! Strong consistency: complete the scheme to a standard basis and test the
//! limit of every element against the PDE system. Completion can be
//! infinite, so it runs under explicit bounds.
//!
//!     cargo run --release --example strong_check

use sconsist::cli::parse_session;
use sconsist::consistency::s_check;
use sconsist::diffring::Bounds;

fn main() -> sconsist::Result<()> {
    let bounds = Bounds {
        max_passes: 8,
        ..Bounds::default()
    };
    for (name, text) in [
        ("ns_5x5", include_str!("../corpus/ns_5x5.sess")),
        ("ns_3x3", include_str!("../corpus/ns_3x3.sess")),
    ] {
        let s = parse_session(text)?;
        let r = s_check(&s.fda_polys(), &s.decomposition, &s.diff, &s.diffrl, bounds, 2)?;
        println!("{name}: {:?}, basis {:?}, {:?}", r.verdict, r.basis_status(), r.stats());
        for w in &r.witnesses {
            println!("    element #{} |> {}", w.source, s.diffrl.display(&w.limit.leading));
        }
    }
    Ok(())
}

//! Normal forms with a replayable reduction trace.
//!
//!     cargo run --example normal_form

use sconsist::cli::parse_session;
use sconsist::diffring::{normal_form, ReductionMode};

const SESSION: &str = "
vars x;
spacings 1;
grid j;
deps u;
ordering orderly lex;
fda { eq u[j]*u[j+2] - x*u[j+1]; }
";

fn main() -> sconsist::Result<()> {
    let s = parse_session(SESSION)?;
    let fs = s.fda_polys();
    let p = s.parse_difference("u[j+4]*u[j+2]*u[j] + u[j+3]*u[j+1]")?;

    for mode in [ReductionMode::Head, ReductionMode::Full] {
        let nf = normal_form(&p, &fs, &s.diff, mode);
        println!("{mode:?}: {}", s.diff.display(&nf.remainder));
        for step in &nf.steps {
            println!(
                "  - ({})*{} * sigma^{:?} f{}",
                step.coeff,
                s.diff.display_monomial(&step.monomial),
                step.theta,
                step.reducer
            );
        }
        // scale*p - remainder is the sum of the recorded steps
        assert_eq!(nf.replay(&fs, &s.diff), p);
    }
    Ok(())
}

//! Drives the command-line front end in-process on an inline session and
//! reads the JSON report back.
//!
//!     cargo run --example session_report

use sconsist::cli::{run, Report};

const SESSION: &str = "
# heat equation, forward Euler in time and central differences in space
vars x t;
spacings h tau:2;   # tau ~ h^2
grid j n;
deps u;
ranking orderly axes t x;
ordering orderly lex axes t x;
pde { eq u_t - u_xx; system { eq u_t - u_xx; } }
fda { eq (u[j,n+1] - u[j,n])/tau - (u[j+1,n] - 2*u[j,n] + u[j-1,n])/h^2; }
";

fn main() {
    let path = std::env::temp_dir().join("sconsist-heat.sess");
    std::fs::write(&path, SESSION).unwrap();
    let path = path.to_str().unwrap();

    for cmd in ["limit", "wcheck", "scheck"] {
        let mut out = Vec::new();
        let code = run(["sconsist", cmd, path], &mut out, &mut std::io::stderr());
        print!("$ sconsist {cmd} (exit {code})\n{}", String::from_utf8_lossy(&out));
    }

    let mut out = Vec::new();
    run(
        ["sconsist", "--format", "json", "wcheck", path],
        &mut out,
        &mut std::io::stderr(),
    );
    let report: Report = serde_json::from_slice(&out).unwrap();
    println!(
        "verdict from JSON: {:?}, exit code {}",
        report.verdict,
        report.exit_code()
    );
}

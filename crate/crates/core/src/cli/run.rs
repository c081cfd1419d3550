use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::report::{
    add_consistency, basis_report, difference_json, nf_report, trace, DpremReport, EquationReport, InputReport,
    LimitReport, Report,
};
use super::session::{parse_session, Session};
use crate::consistency::{s_check, w_check, WeakMode, DEFAULT_SERIES_ORDER};
use crate::diffring::{
    normal_form, standard_basis, Bounds, Control, ReductionMode, DEFAULT_MAX_ORDER, DEFAULT_MAX_PASSES,
    DEFAULT_MAX_TERMS,
};
use crate::error::{Error, Result};
use crate::limit::continuous_limit;
use crate::pdering::dprem;

#[derive(Parser, Debug)]
#[command(
    name = "sconsist",
    version,
    about = "Weak and strong consistency of finite difference schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Pass limit of the standard basis computation.
    #[arg(long, global = true, env = "SCONSIST_MAX_PASSES", default_value_t = DEFAULT_MAX_PASSES)]
    max_passes: usize,
    /// Largest total shift of an adjoined basis element.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u32,
    /// Largest intermediate polynomial (in terms) during a reduction.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    /// Initial truncation order of Taylor expansions.
    #[arg(long, global = true, default_value_t = DEFAULT_SERIES_ORDER)]
    series_order: i64,
    /// Print full traces: reduction steps, derivations and remainder certificates.
    #[arg(long, global = true)]
    witness: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression modulo the fda equations.
    Nf {
        session: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Standard basis of the fda equations.
    Sb { session: PathBuf },
    /// Continuous limit of each fda equation.
    Limit { session: PathBuf },
    /// Weak consistency.
    Wcheck {
        session: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Ideal)]
        mode: Mode,
    },
    /// Strong consistency.
    Scheck { session: PathBuf },
    /// Differential pseudo-remainder of an expression modulo one subsystem.
    Dprem {
        session: PathBuf,
        #[arg(long)]
        expr: String,
        /// Subsystem index in the pde block.
        #[arg(long, default_value_t = 0)]
        system: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Ideal,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::Sb { .. } => "sb",
            Command::Limit { .. } => "limit",
            Command::Wcheck { .. } => "wcheck",
            Command::Scheck { .. } => "scheck",
            Command::Dprem { .. } => "dprem",
        }
    }

    fn session(&self) -> &PathBuf {
        match self {
            Command::Nf { session, .. }
            | Command::Sb { session }
            | Command::Limit { session }
            | Command::Wcheck { session, .. }
            | Command::Scheck { session }
            | Command::Dprem { session, .. } => session,
        }
    }
}

fn load(path: &PathBuf) -> Result<Session> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_session(&text).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Input(format!("{}:{line}:{col}: {msg}", path.display())),
        other => other,
    })
}

fn inputs(s: &Session) -> Vec<InputReport> {
    s.fda
        .iter()
        .enumerate()
        .map(|(index, e)| InputReport {
            index,
            source: e.text.clone(),
            poly: difference_json(&e.poly, &s.diff),
        })
        .collect()
}

fn execute(cmd: &Command, o: &Opts) -> Result<Report> {
    let path = cmd.session();
    let s = load(path)?;
    let mut r = Report::new(cmd.name(), &path.display().to_string());
    let bounds = Bounds {
        max_passes: o.max_passes,
        max_monomial_order: o.max_order,
        max_terms: o.max_terms,
    };
    let fda = s.fda_polys();
    let need_fda = || {
        if fda.is_empty() {
            Err(Error::Input("the session has no fda equations".into()))
        } else {
            Ok(())
        }
    };
    match cmd {
        Command::Nf { expr, .. } => {
            need_fda()?;
            let p = s.parse_difference(expr)?;
            let nf = normal_form(&p, &fda, &s.diff, ReductionMode::Full);
            r.inputs = inputs(&s);
            r.normal_form = Some(nf_report(&p, &nf, &s.diff, o.witness));
        }
        Command::Sb { .. } => {
            need_fda()?;
            let b = standard_basis(&fda, &s.diff, bounds, None, |_| Control::Continue)?;
            r.inputs = inputs(&s);
            if o.witness {
                let all: Vec<usize> = (0..b.history.len()).collect();
                r.trace = trace(&b, &all, &s.diff);
            }
            r.basis = Some(basis_report(&b, bounds, &s.diff));
        }
        Command::Limit { .. } => {
            need_fda()?;
            r.inputs = inputs(&s);
            for (index, p) in fda.iter().enumerate() {
                let l = continuous_limit(p, &s.diff, o.series_order)?;
                r.equations.push(EquationReport {
                    index,
                    limit: LimitReport::of(&l, &s.diffrl),
                    matched: None,
                    consequence: None,
                });
            }
        }
        Command::Wcheck { mode, .. } => {
            need_fda()?;
            let mode = match mode {
                Mode::Exact => WeakMode::Exact,
                Mode::Ideal => WeakMode::Ideal,
            };
            let c = w_check(&fda, &s.pde, &s.decomposition, &s.diff, &s.diffrl, mode, o.series_order)?;
            r.inputs = inputs(&s);
            add_consistency(&mut r, &c, &s.decomposition, &s.diff, &s.diffrl, o.witness);
        }
        Command::Scheck { .. } => {
            need_fda()?;
            let c = s_check(&fda, &s.decomposition, &s.diff, &s.diffrl, bounds, o.series_order)?;
            r.inputs = inputs(&s);
            add_consistency(&mut r, &c, &s.decomposition, &s.diff, &s.diffrl, o.witness);
            if let Some(b) = &c.basis {
                r.basis = Some(basis_report(b, bounds, &s.diff));
                for w in &mut r.witnesses {
                    let ancestry = b.ancestry(w.source);
                    w.replayed = Some(ancestry.iter().all(|&id| b.verify_entry(id, &fda, &s.diff)));
                    if o.witness {
                        r.trace = trace(b, &ancestry, &s.diff);
                    }
                }
            }
        }
        Command::Dprem { expr, system, .. } => {
            let sys = s.decomposition.get(*system).ok_or_else(|| {
                Error::Input(format!(
                    "no subsystem {system}; the pde block has {}",
                    s.decomposition.len()
                ))
            })?;
            let f = s.parse_differential(expr)?;
            let d = dprem(&f, sys, &s.diffrl)?;
            r.dprem = Some(DpremReport::of(&f, &d, *system, sys, &s.diffrl, o.witness));
        }
    }
    Ok(r)
}

/// Runs one command line (including the program name) and returns the exit
/// code: 0 success or consistent, 1 inconsistent, 2 inconclusive or
/// truncated, 3 input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, &cli.opts) {
        Ok(r) => {
            let text = match cli.opts.format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            r.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}

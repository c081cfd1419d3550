//! Session files, reports and the `sconsist` command line.

mod lexer;
mod report;
mod run;
mod session;

pub use report::{
    difference_json, differential_json, BasisReport, DpremReport, DpremStepReport, EquationReport, InputReport,
    JsonCoeff, JsonFactor, JsonPoly, JsonTerm, LimitComponent, LimitReport, MatchReport, NormalFormReport,
    ReductionStepReport, Report, TraceEntry, WitnessReport,
};
pub use run::run;
pub use session::{parse_session, FdaEquation, Session};

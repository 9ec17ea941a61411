//! Zero forcing and failed zero forcing numbers of small graphs under the
//! standard and positive semidefinite color-change rules.

pub mod checks;
pub mod error;
pub mod family;
pub mod forcing;
pub mod formulas;
pub mod graph;
pub mod linalg;
pub mod report;
pub mod search;
pub mod suites;
pub mod tables;

pub use checks::{Params, TheoremReport, Value};
pub use error::{Error, Result};
pub use family::FamilySpec;
pub use forcing::{closure, is_failed_set, is_forcing_set, is_stalled, step, ForcingTrace, Rule};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use report::{analyze, ParamReport};
pub use search::{
    brute_failed_number, enumerate_maximal_failed, failed_number, min_fort, zero_forcing_number,
    ExtremalKind, ExtremalResult, Method, SearchBudget,
};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};

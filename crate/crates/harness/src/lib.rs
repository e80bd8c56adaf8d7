//! Exhaustive verification over an enumerated universe of small rings,
//! modules and algebras, plus an analytic adapter for modules over `Z`.

pub mod search;
pub mod statements;
pub mod universe;
pub mod witness;
pub mod zadapter;

pub use search::{parse_expr, search_counterexample, Expr, Hit, Predicate, SearchReport, VOCABULARY};
pub use statements::{
    registry, run_statement, run_suite, select, Bounds, Ctx, Finding, Kind, Statement, StatementReport, SuiteReport,
    EXPECTED_IDS,
};
pub use universe::{generate_universe, Universe, UniverseLimits};
pub use witness::{revalidate, revalidate_integers, Claim, Subject, WitnessRecord, WitnessValue, INTEGERS};
pub use zadapter::{z_adapter_check, ZCheck, ZModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown statement: {0}")]
    UnknownStatement(String),
    #[error("bad suite pattern: {0}")]
    Pattern(String),
    #[error("cannot parse '{text}' at offset {at}: {message}")]
    Expression { text: String, at: usize, message: String },
    #[error("unknown integer case: {0} (registered: 0 for Z, 1 to 30 for Z/n)")]
    UnknownCase(u64),
}

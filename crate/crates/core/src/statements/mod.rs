//! The statement registry, the evaluation engine, identity checks and
//! parameter sweeps.

mod eval;
mod identities;
pub mod registry;
mod report;
mod sweep;

pub use eval::{
    active_terms, evaluate_statement, evaluate_statement_cached, power_integrand, sides, term_integral,
    term_monte_carlo, EvalOptions, IntegralCache,
};
pub use identities::{
    corollary5_compare, default_profiles, lemma2_profile, verify_identity, ConstantComparison, Identity,
    IdentityInputs, IdentityReport, LogDerivativeProfile,
};
pub use registry::{layout, resolve, Exponents, Resolved, Side, StatementId, SubjectKind, TermSpec};
pub use report::{InequalityReport, ReportParams, TermValue, Verdict, RELATIVE_FLOOR};
pub use sweep::{
    default_battery, default_cells, default_sweep, expand_grid, format_number, parameter_sweep, McCheck, RowStatus, SubjectSpec,
    SweepCell, SweepOptions, SweepReport, SweepRow, DEFAULT_MC_SAMPLES, DOMAIN_STATEMENTS, ONE_DIMENSIONAL,
    OWN_PROFILE,
};

//! Parametric Lamb constants and numerical checks of Hardy-type
//! inequalities with remainder terms.
//!
//! The Lamb constant `c_ν(m, λ)` is the first positive root of
//! `(1 − 2λ)J_ν(2c/m) + 2c J'_ν(2c/m) = 0`. The crate computes it, builds
//! the coefficient sets of a family of one-dimensional and convex-domain
//! inequalities from it, and evaluates both sides of each inequality on
//! concrete test functions by quadrature.
//!
//! ```
//! use hardylamb::{solve_lamb, LambParams};
//!
//! let root = solve_lamb(&LambParams::new(0.5, 2.0, 0.0)).unwrap();
//! assert!((root.c - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
//! ```

// `!(x > 0.0)` style guards deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod error;
pub mod lamb;
pub mod quadrature;
mod roots;
pub mod statements;
pub mod subjects;

pub use error::{Error, Result};
pub use lamb::{
    classical_lamb, closed_form_lamb, solve_lamb, solve_lamb_with, statement_constants, LambMethod, LambParams, LambRoot,
    SolveMethod,
};
pub use statements::{evaluate_statement, InequalityReport, StatementId, Verdict};

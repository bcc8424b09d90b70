//! Hadamard products, operator fitting and coefficient formulas.

mod fit;
pub mod formula;
mod hadamard;
mod linalg;
mod verify;

pub use fit::{fit_operator, FitError, FitSpec};
pub use formula::{Evaluator, Expr, Formula, FormulaError};
pub use hadamard::hadamard_series;
pub use linalg::nullspace;
pub use verify::{verify_entry, Mismatch, VerifyError, VerifyOutcome};

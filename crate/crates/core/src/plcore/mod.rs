//! Piecewise-linear expressions over the extended reals, polyhedral cells
//! with exact feasibility, and a case-splitting identity prover.

mod affine;
mod cell;
mod expr;
mod prove;

pub use affine::{AffineForm, Ext};
pub use cell::{Cell, Constraint, Rel};
pub use expr::{pl_eval, PLExpr};
pub use prove::{forms_agree_on, pl_case_split, pl_prove_equal, CellFailure, CellReport};

use crate::novikov::NovikovError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlError {
    #[error("variable {0} is not assigned")]
    Unassigned(String),
    #[error("indeterminate form: {0}")]
    Indeterminate(NovikovError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("median needs exactly three arguments, got {0}")]
    MedianArity(usize),
}

/// Exact feasibility of a cell.
pub fn cell_feasible(c: &Cell) -> bool {
    c.feasible()
}

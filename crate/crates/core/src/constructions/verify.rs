//! Formula-versus-operator agreement.

use thiserror::Error;

use super::formula::{Evaluator, Formula, FormulaError};
use crate::exact::Rat;
use crate::frobenius::{holomorphic_coeffs, FrobeniusError};
use crate::operator::ThetaOperator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error("formula at n = {n}: {err}")]
    Formula { n: usize, err: FormulaError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub formula: Rat,
    pub operator: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the formula with `A_n` for `n < count`; `base` overrides the
/// formula at listed indices.
pub fn verify_entry(
    d: &ThetaOperator,
    formula: &Formula,
    base: &[(usize, Rat)],
    count: usize,
) -> Result<VerifyOutcome, VerifyError> {
    let a = holomorphic_coeffs(d, count)?;
    let mut ev = Evaluator::new();
    for n in 0..count {
        let value = match base.iter().find(|(k, _)| *k == n) {
            Some((_, v)) => v.clone(),
            None => ev.eval(formula.expr(), n as u64).map_err(|err| VerifyError::Formula { n, err })?,
        };
        if &value != a.coeff(n) {
            return Ok(VerifyOutcome {
                checked: n + 1,
                first_mismatch: Some(Mismatch { n, formula: value, operator: a.coeff(n).clone() }),
            });
        }
    }
    Ok(VerifyOutcome { checked: count, first_mismatch: None })
}

//! Frobenius solutions at a MUM point, mirror map, instanton numbers and
//! power detection.

mod instantons;
mod powers;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{PowerSeries, Rat, SeriesError};
use crate::operator::ThetaOperator;

pub use instantons::{
    kq_equivalent, lambert_inverse, lambert_sum, yukawa_instantons, Fingerprint, InstantonReport,
    KqRelation,
};
pub use powers::{power_exponents, root_exponent, PowerExponent, PowerExponents};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("operator does not have maximal unipotent monodromy at 0")]
    NotMum,
    #[error("P_0 vanishes at positive integer {0}")]
    VanishingP0AtPositiveInteger(usize),
    #[error("operator fails the self-duality condition")]
    NotSelfDual,
    #[error("operation needs an order-4 operator, got order {0}")]
    WrongOrder(usize),
    #[error("a_3 - 6/z is not holomorphic at 0")]
    BadLeadingSingularity,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `y_0 = Σ A_n z^n` and `y_1 = y_0 log z + Σ B_n z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPair {
    pub a: PowerSeries,
    pub b: PowerSeries,
}

impl FrobeniusPair {
    pub fn new(d: &ThetaOperator, n: usize) -> Result<Self, FrobeniusError> {
        let a = holomorphic_coeffs(d, n)?;
        let b = log_coeffs(d, &a)?;
        Ok(FrobeniusPair { a, b })
    }
}

/// `true` when `P_0 = α θ^order` with `α ≠ 0`.
pub fn is_mum(d: &ThetaOperator) -> bool {
    let p0 = d.term(0);
    d.order() > 0
        && p0.degree() == Some(d.order())
        && p0.coeffs()[..d.order()].iter().all(Zero::is_zero)
}

/// `A_0 = 1`, `P_0(n) A_n = -Σ_{i≥1} P_i(n-i) A_{n-i}`.
pub fn holomorphic_coeffs(d: &ThetaOperator, n: usize) -> Result<PowerSeries, FrobeniusError> {
    Ok(holomorphic_coeffs_while(d, n, |_, _| true)?.expect("always accepted"))
}

/// As [`holomorphic_coeffs`], stopping with `None` as soon as `accept(n, A_n)`
/// is false.
pub fn holomorphic_coeffs_while(
    d: &ThetaOperator,
    n: usize,
    mut accept: impl FnMut(usize, &Rat) -> bool,
) -> Result<Option<PowerSeries>, FrobeniusError> {
    if !is_mum(d) {
        return Err(FrobeniusError::NotMum);
    }
    let mut a: Vec<Rat> = Vec::with_capacity(n);
    if n > 0 {
        a.push(Rat::from_integer(1.into()));
    }
    for m in 1..n {
        let p0 = d.term(0).eval_i64(m as i64);
        if p0.is_zero() {
            return Err(FrobeniusError::VanishingP0AtPositiveInteger(m));
        }
        let mut acc = Rat::zero();
        for (i, p) in d.terms().iter().enumerate().skip(1).take(m) {
            let prev = &a[m - i];
            if !prev.is_zero() && !p.is_zero() {
                acc += p.eval_i64((m - i) as i64) * prev;
            }
        }
        let next = -acc / p0;
        if !accept(m, &next) {
            return Ok(None);
        }
        a.push(next);
    }
    Ok(Some(PowerSeries::new(a)))
}

/// `B_0 = 0`, `P_0(n) B_n = -Σ_{i≥1} P_i(n-i) B_{n-i} - Σ_{i≥0} P_i'(n-i) A_{n-i}`.
pub fn log_coeffs(d: &ThetaOperator, a: &PowerSeries) -> Result<PowerSeries, FrobeniusError> {
    if !is_mum(d) {
        return Err(FrobeniusError::NotMum);
    }
    let derivs: Vec<_> = d.terms().iter().map(|p| p.derivative()).collect();
    let n = a.trunc();
    let mut b: Vec<Rat> = Vec::with_capacity(n);
    if n > 0 {
        b.push(Rat::zero());
    }
    for m in 1..n {
        let p0 = d.term(0).eval_i64(m as i64);
        if p0.is_zero() {
            return Err(FrobeniusError::VanishingP0AtPositiveInteger(m));
        }
        let mut acc = Rat::zero();
        for (i, p) in d.terms().iter().enumerate().take(m + 1) {
            let x = (m - i) as i64;
            if i > 0 && !b[m - i].is_zero() {
                acc += p.eval_i64(x) * &b[m - i];
            }
            let ai = a.coeff(m - i);
            if !ai.is_zero() && !derivs[i].is_zero() {
                acc += derivs[i].eval_i64(x) * ai;
            }
        }
        b.push(-acc / p0);
    }
    Ok(PowerSeries::new(b))
}

/// `q/z = exp(g / y_0)` with `g = Σ B_n z^n`.
pub fn mirror_map(pair: &FrobeniusPair) -> Result<PowerSeries, FrobeniusError> {
    Ok(pair.b.div(&pair.a)?.exp()?)
}
